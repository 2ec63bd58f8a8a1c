#ifndef SUPTOP_COMPLEX_IO_HPP
#define SUPTOP_COMPLEX_IO_HPP

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "suptop/simplicial_complex.hpp"

namespace suptop {

/// Complex file format: one top-dimensional simplex per line as
/// whitespace-separated vertex indices; '#' starts a comment.
inline std::vector<std::vector<int>> parse_top_simplices(std::istream& in,
                                                         const std::string& source) {
    std::vector<std::vector<int>> top;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<int> simplex;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
                simplex.push_back(static_cast<int>(v));
            } catch (const std::exception&) {
                throw InputError(source + ":" + std::to_string(lineno) +
                                 ": expected a non-negative vertex index, got '" + tok + "'");
            }
        }
        if (simplex.empty()) continue;
        std::vector<int> sorted = simplex;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError(source + ":" + std::to_string(lineno) + ": repeated vertex in simplex");
        top.push_back(std::move(simplex));
    }
    return top;
}

inline SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open complex file: " + path);
    return SimplicialComplex::from_top_simplices(parse_top_simplices(in, path));
}

inline void save_complex(const SimplicialComplex& k, std::ostream& out) {
    // maximal simplices only
    for (int d = k.dim(); d >= 0; --d)
        for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
            const auto& s = k.simplex(d, i);
            bool maximal = true;
            if (d < k.dim())
                for (std::size_t j = 0; maximal && j < k.n_simplices(d + 1); ++j) {
                    const auto& t = k.simplex(d + 1, j);
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) maximal = false;
                }
            if (!maximal) continue;
            for (std::size_t v = 0; v < s.size(); ++v) out << (v ? " " : "") << s[v];
            out << "\n";
        }
}

} // namespace suptop

#endif
