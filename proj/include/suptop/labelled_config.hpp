#ifndef SUPTOP_LABELLED_CONFIG_HPP
#define SUPTOP_LABELLED_CONFIG_HPP

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "suptop/errors.hpp"

namespace suptop {

/// A finite configuration of distinct points, each optionally labelled.
/// Degenerate configurations (a point in the collapsed subspace, or carrying
/// the basepoint label) are canonicalized to the empty configuration, which
/// is the basepoint: every operation then treats them as the wedge point.
class LabelledConfig {
public:
    static constexpr int basepoint_label = 0;

    LabelledConfig() = default;

    explicit LabelledConfig(std::vector<int> points,
                            std::vector<std::pair<int, int>> labels = {},
                            const std::vector<int>& points_in_m0 = {}) {
        std::sort(points.begin(), points.end());
        if (std::adjacent_find(points.begin(), points.end()) != points.end())
            throw InputError("LabelledConfig: repeated point identifier");
        bool degenerate = !points_in_m0.empty();
        for (const auto& [p, l] : labels) {
            if (!std::binary_search(points.begin(), points.end(), p))
                throw InputError("LabelledConfig: label on absent point");
            if (l == basepoint_label) degenerate = true;
        }
        if (degenerate) return; // canonical basepoint: empty
        points_ = std::move(points);
        labels_ = std::move(labels);
        std::sort(labels_.begin(), labels_.end());
    }

    LabelledConfig(std::initializer_list<int> points)
        : LabelledConfig(std::vector<int>(points)) {}

    static LabelledConfig basepoint() { return LabelledConfig(); }

    bool is_basepoint() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<int>& points() const { return points_; }

    int label_of(int point) const {
        for (const auto& [p, l] : labels_)
            if (p == point) return l;
        return -1; // unlabelled
    }

    /// Sub-configuration on the points selected by `keep` (bitmask over the
    /// sorted point list); labels restrict along.
    LabelledConfig subconfig(unsigned long long keep) const {
        std::vector<int> pts;
        std::vector<std::pair<int, int>> labs;
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (keep >> i & 1ULL) pts.push_back(points_[i]);
        for (const auto& [p, l] : labels_)
            if (std::binary_search(pts.begin(), pts.end(), p)) labs.emplace_back(p, l);
        return LabelledConfig(std::move(pts), std::move(labs));
    }

    LabelledConfig restrict_to(const std::vector<int>& pts) const {
        std::vector<int> chosen;
        std::vector<std::pair<int, int>> labs;
        for (int p : pts)
            if (std::binary_search(points_.begin(), points_.end(), p)) chosen.push_back(p);
        for (const auto& [p, l] : labels_)
            if (std::find(chosen.begin(), chosen.end(), p) != chosen.end()) labs.emplace_back(p, l);
        return LabelledConfig(std::move(chosen), std::move(labs));
    }

    bool operator==(const LabelledConfig& o) const {
        return points_ == o.points_ && labels_ == o.labels_;
    }
    bool operator<(const LabelledConfig& o) const {
        if (points_ != o.points_) return points_ < o.points_;
        return labels_ < o.labels_;
    }

    std::string to_string() const {
        if (is_basepoint()) return "*";
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i) os << ",";
            os << points_[i];
            int l = label_of(points_[i]);
            if (l >= 0) os << ":" << l;
        }
        os << "}";
        return os.str();
    }

private:
    std::vector<int> points_;                  // sorted, distinct
    std::vector<std::pair<int, int>> labels_;  // (point, label), sorted
};

inline bool is_basepoint(const LabelledConfig& c) { return c.is_basepoint(); }

/// Point in the smash C ∧ C.
using ConfigPair = std::pair<LabelledConfig, LabelledConfig>;

inline std::string to_string(const ConfigPair& p) {
    return "(" + p.first.to_string() + "," + p.second.to_string() + ")";
}

} // namespace suptop

#endif
