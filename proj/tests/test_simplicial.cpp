#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "suptop/complex_io.hpp"
#include "suptop/cup.hpp"
#include "suptop/homology.hpp"
#include "suptop/simplicial_complex.hpp"

using namespace suptop;

namespace {

SimplicialComplex circle() {
    return SimplicialComplex::from_top_simplices({{0, 1}, {1, 2}, {0, 2}});
}
SimplicialComplex disk() { return SimplicialComplex::from_top_simplices({{0, 1, 2}}); }
SimplicialComplex interval() { return SimplicialComplex::from_top_simplices({{0, 1}}); }

// standard 6-vertex triangulation of the projective plane
SimplicialComplex rp2() {
    return SimplicialComplex::from_top_simplices({{0, 1, 2},
                                                  {0, 2, 3},
                                                  {0, 3, 4},
                                                  {0, 4, 5},
                                                  {0, 1, 5},
                                                  {1, 2, 4},
                                                  {2, 3, 5},
                                                  {3, 4, 1},
                                                  {4, 5, 2},
                                                  {5, 1, 3}});
}

// 7-vertex (Moebius-Kantor) triangulation of the torus
SimplicialComplex torus() {
    std::vector<std::vector<int>> tops;
    for (int i = 0; i < 7; ++i) {
        tops.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tops.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::from_top_simplices(tops);
}

} // namespace

TEST_CASE("complex construction") {
    SECTION("circle: 3 vertices, 3 edges") {
        auto k = circle();
        CHECK(k.n_simplices(0) == 3);
        CHECK(k.n_simplices(1) == 3);
        CHECK(k.dim() == 1);
        k.chain_complex().validate();
    }
    SECTION("disk: one triangle, face closure") {
        auto k = disk();
        CHECK(k.n_simplices(0) == 3);
        CHECK(k.n_simplices(1) == 3);
        CHECK(k.n_simplices(2) == 1);
        k.chain_complex().validate();
    }
    SECTION("empty complex") {
        auto k = SimplicialComplex::from_top_simplices({});
        CHECK(k.dim() == -1);
        CHECK(k.total_simplices() == 0);
    }
    SECTION("repeated vertex is an input error") {
        CHECK_THROWS_AS(SimplicialComplex::from_top_simplices({{1, 1}}), InputError);
    }
    SECTION("boundary squared vanishes on every fixture") {
        for (const auto& k : {circle(), disk(), rp2(), torus()}) k.chain_complex().validate();
    }
}

TEST_CASE("integer homology of classic spaces") {
    SECTION("circle") {
        auto k = circle();
        CHECK(homology(k.chain_complex(), 0) == HomologyGroup{1, {}});
        CHECK(homology(k.chain_complex(), 1) == HomologyGroup{1, {}});
    }
    SECTION("disk is contractible") {
        auto k = disk();
        CHECK(homology(k.chain_complex(), 0) == HomologyGroup{1, {}});
        CHECK(homology(k.chain_complex(), 1) == HomologyGroup{0, {}});
        CHECK(homology(k.chain_complex(), 2) == HomologyGroup{0, {}});
    }
    SECTION("projective plane: H1 = Z/2") {
        auto k = rp2();
        CHECK(k.n_simplices(0) == 6);
        CHECK(k.n_simplices(1) == 15);
        CHECK(k.n_simplices(2) == 10);
        CHECK(homology(k.chain_complex(), 0) == HomologyGroup{1, {}});
        CHECK(homology(k.chain_complex(), 1) == HomologyGroup{0, {Int(2)}});
        CHECK(homology(k.chain_complex(), 2) == HomologyGroup{0, {}});
    }
    SECTION("torus: Betti 1,2,1") {
        auto k = torus();
        CHECK(betti_numbers(k.chain_complex()) == std::vector<long long>{1, 2, 1});
        CHECK(homology(k.chain_complex(), 1).torsion.empty());
    }
    SECTION("euler characteristic equals alternating Betti sum") {
        for (const auto& k : {circle(), disk(), rp2(), torus()}) {
            auto b = betti_numbers(k.chain_complex());
            long long chi = 0;
            for (std::size_t d = 0; d < b.size(); ++d) chi += (d % 2 ? -1 : 1) * b[d];
            // torsion contributes no Euler characteristic
            CHECK(chi == k.chain_complex().euler_characteristic());
        }
    }
}

TEST_CASE("cohomology bases") {
    SECTION("circle has one degree-1 generator") {
        auto k = circle();
        CohomologyBasis b1(k.chain_complex(), 1);
        CHECK(b1.group() == HomologyGroup{1, {}});
        CHECK(b1.is_cocycle(b1.generator(0)));
    }
    SECTION("point in degree 0") {
        auto k = SimplicialComplex::from_top_simplices({{0}});
        CohomologyBasis b0(k.chain_complex(), 0);
        CHECK(b0.group() == HomologyGroup{1, {}});
    }
    SECTION("projective plane: H^2 = Z/2") {
        auto k = rp2();
        CHECK(cohomology_group(k.chain_complex(), 2) == HomologyGroup{0, {Int(2)}});
        CHECK(cohomology_group(k.chain_complex(), 1) == HomologyGroup{0, {}});
        CHECK(cohomology_group(k.chain_complex(), 0) == HomologyGroup{1, {}});
    }
    SECTION("coordinates separate classes and detect coboundaries") {
        auto k = circle();
        CohomologyBasis b1(k.chain_complex(), 1);
        auto gen = b1.generator(0);
        // a coboundary: delta of a 0-cochain
        std::vector<Int> z(k.n_simplices(0), Int(0));
        z[0] = 3;
        auto cb = k.chain_complex().coboundary(0, z);
        CHECK(b1.is_coboundary(cb));
        std::vector<Int> shifted(gen);
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += cb[i];
        CHECK(b1.class_equal(gen, shifted));
        CHECK_FALSE(b1.is_coboundary(gen));
    }
}

TEST_CASE("cup products") {
    SECTION("unit law at the cochain level") {
        auto k = torus();
        auto unit = unit_cochain(k.chain_complex());
        CohomologyBasis b1(k.chain_complex(), 1);
        auto g = b1.generator(0);
        CHECK(cup_cochain(k, 0, unit, 1, g) == g);
        CHECK(cup_cochain(k, 1, g, 0, unit) == g);
    }
    SECTION("torus: product of the degree-1 generators spans H^2") {
        auto k = torus();
        CohomologyBasis b1(k.chain_complex(), 1);
        REQUIRE(b1.size() == 2);
        CohomologyBasis b2(k.chain_complex(), 2);
        REQUIRE(b2.size() == 1);
        auto g12 = cup_cochain(k, 1, b1.generator(0), 1, b1.generator(1));
        REQUIRE(b2.is_cocycle(g12));
        auto c = b2.coords(g12);
        CHECK((c[0] == 1 || c[0] == -1)); // generates H^2 exactly
    }
    SECTION("graded commutativity at class level on the torus basis") {
        auto k = torus();
        CohomologyBasis b1(k.chain_complex(), 1);
        CohomologyBasis b2(k.chain_complex(), 2);
        for (std::size_t i = 0; i < b1.size(); ++i)
            for (std::size_t j = 0; j < b1.size(); ++j) {
                auto ab = cup_cochain(k, 1, b1.generator(i), 1, b1.generator(j));
                auto ba = cup_cochain(k, 1, b1.generator(j), 1, b1.generator(i));
                // degree 1 * degree 1: a⌣b = -b⌣a up to coboundary
                auto ca = b2.coords(ab);
                auto cb = b2.coords(ba);
                REQUIRE(ca.size() == cb.size());
                for (std::size_t t = 0; t < ca.size(); ++t) CHECK(ca[t] == -cb[t]);
            }
    }
    SECTION("associativity at the cochain level") {
        auto k = torus();
        CohomologyBasis b1(k.chain_complex(), 1);
        auto unit = unit_cochain(k.chain_complex());
        auto left = cup_cochain(k, 1, cup_cochain(k, 0, unit, 1, b1.generator(0)), 1, b1.generator(1));
        auto right = cup_cochain(k, 1, b1.generator(0), 1, b1.generator(1));
        CHECK(left == right);
    }
}

TEST_CASE("cross products on cell products") {
    SECTION("chi is multiplicative") {
        auto a = circle().chain_complex();
        auto b = torus().chain_complex();
        auto p = product(a, b);
        p.complex.validate();
        CHECK(p.complex.euler_characteristic() ==
              a.euler_characteristic() * b.euler_characteristic());
    }
    SECTION("Kuenneth ranks for circle x circle") {
        auto c = circle().chain_complex();
        auto p = product(c, c);
        p.complex.validate();
        CHECK(betti_numbers(p.complex) == std::vector<long long>{1, 2, 1});
    }
    SECTION("product with a point preserves Betti numbers") {
        auto pt = SimplicialComplex::from_top_simplices({{0}}).chain_complex();
        auto t = torus().chain_complex();
        auto p = product(t, pt);
        CHECK(betti_numbers(p.complex) == betti_numbers(t));
    }
    SECTION("cross of generators generates H^2 of the product of circles") {
        auto k = circle();
        const auto& c = k.chain_complex();
        auto p = product(c, c);
        CohomologyBasis b1(c, 1);
        auto g = b1.generator(0);
        auto gg = cross_cochain(p, 1, g, 1, g);
        CohomologyBasis pb2(p.complex, 2);
        REQUIRE(pb2.group() == HomologyGroup{1, {}});
        REQUIRE(pb2.is_cocycle(gg));
        auto coords = pb2.coords(gg);
        CHECK((coords[0] == 1 || coords[0] == -1));
    }
    SECTION("cross with the zero cochain vanishes") {
        auto k = circle();
        const auto& c = k.chain_complex();
        auto p = product(c, c);
        std::vector<Int> zero(c.n_cells(1), Int(0));
        CohomologyBasis b1(c, 1);
        auto gg = cross_cochain(p, 1, b1.generator(0), 1, zero);
        for (const auto& v : gg) CHECK(v == 0);
    }
    SECTION("unit cross unit is the unit") {
        auto k = interval();
        const auto& c = k.chain_complex();
        auto p = product(c, c);
        auto u = cross_cochain(p, 0, unit_cochain(c), 0, unit_cochain(c));
        CHECK(u == unit_cochain(p.complex));
    }
}

TEST_CASE("relative cohomology of pairs") {
    SECTION("(disk, boundary circle): H^2 = Z") {
        auto k = disk();
        auto pair = relative_pair(k.chain_complex(), k.subcomplex_mask(circle()));
        CHECK(cohomology_group(pair.complex, 2) == HomologyGroup{1, {}});
        CHECK(cohomology_group(pair.complex, 1) == HomologyGroup{0, {}});
        CHECK(cohomology_group(pair.complex, 0) == HomologyGroup{0, {}});
    }
    SECTION("(K, empty) is absolute cohomology") {
        auto k = torus();
        auto pair = relative_pair(k.chain_complex(), {});
        for (int d = 0; d <= 2; ++d)
            CHECK(cohomology_group(pair.complex, d) == cohomology_group(k.chain_complex(), d));
    }
    SECTION("(interval, endpoints): H^1 = Z") {
        auto k = interval();
        auto ends = SimplicialComplex::from_top_simplices({{0}, {1}});
        auto pair = relative_pair(k.chain_complex(), k.subcomplex_mask(ends));
        CHECK(cohomology_group(pair.complex, 1) == HomologyGroup{1, {}});
        CHECK(cohomology_group(pair.complex, 0) == HomologyGroup{0, {}});
    }
    SECTION("a non-subcomplex is rejected") {
        auto k = circle();
        CHECK_THROWS_AS(k.subcomplex_mask(disk()), InputError);
    }
}

TEST_CASE("barycentric subdivision") {
    SECTION("1-simplex: 3 vertices, 2 edges") {
        auto sd = barycentric_subdivide(interval());
        CHECK(sd.complex.n_simplices(0) == 3);
        CHECK(sd.complex.n_simplices(1) == 2);
    }
    SECTION("triangle boundary becomes a hexagon") {
        auto sd = barycentric_subdivide(circle());
        CHECK(sd.complex.n_simplices(0) == 6);
        CHECK(sd.complex.n_simplices(1) == 6);
    }
    SECTION("disk f-vector after two subdivisions") {
        auto sd2 = barycentric_subdivide(barycentric_subdivide(disk()).complex);
        CHECK(sd2.complex.n_simplices(0) == 25);
        CHECK(sd2.complex.n_simplices(1) == 60);
        CHECK(sd2.complex.n_simplices(2) == 36);
    }
    SECTION("Betti numbers are invariant") {
        for (const auto& k : {circle(), disk(), rp2(), torus()}) {
            auto sd = barycentric_subdivide(k);
            CHECK(betti_numbers(sd.complex.chain_complex()) == betti_numbers(k.chain_complex()));
        }
        // torsion too
        auto sd = barycentric_subdivide(rp2());
        CHECK(homology(sd.complex.chain_complex(), 1) == HomologyGroup{0, {Int(2)}});
    }
    SECTION("the subdivision chain map is a chain map") {
        for (const auto& k : {circle(), disk(), rp2(), torus()}) {
            auto sd = barycentric_subdivide(k);
            const auto& kc = k.chain_complex();
            const auto& sc = sd.complex.chain_complex();
            for (int d = 1; d <= k.dim(); ++d) {
                for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
                    // sd(boundary(sigma))
                    std::map<std::size_t, Int> lhs;
                    for (const auto& [f, eps] : kc.boundary(d).row(i))
                        for (const auto& [cell, sgn] : sd.chain_map[d - 1][f]) lhs[cell] += Int(eps) * sgn;
                    // boundary(sd(sigma))
                    std::map<std::size_t, Int> rhs;
                    for (const auto& [cell, sgn] : sd.chain_map[d][i])
                        for (const auto& [f, eps] : sc.boundary(d).row(cell)) rhs[f] += Int(sgn) * eps;
                    for (auto& [c, v] : lhs)
                        if (v != 0) {
                            REQUIRE(rhs.count(c));
                            REQUIRE(rhs[c] == v);
                        }
                    for (auto& [c, v] : rhs)
                        if (v != 0) REQUIRE(lhs[c] == v);
                }
            }
        }
    }
    SECTION("subdivided fundamental cycle is still a cycle generating H_2") {
        // push the torus fundamental class through the chain map
        auto k = torus();
        auto sd = barycentric_subdivide(k);
        // fundamental cycle: all 2-simplices coherently oriented; find it as
        // the kernel of boundary(2)
        SNFOptions opts;
        opts.with_right = true;
        auto snf = smith_normal_form(k.chain_complex().boundary(2).transpose(), opts);
        auto ker = snf.kernel_basis();
        REQUIRE(ker.size() == 1);
        std::vector<Int> image(sd.complex.n_simplices(2), Int(0));
        for (std::size_t i = 0; i < k.n_simplices(2); ++i)
            for (const auto& [cell, sgn] : sd.chain_map[2][i]) image[cell] += Int(sgn) * ker[0][i];
        // boundary of the image vanishes
        auto bnd = sd.complex.chain_complex().boundary(2).apply_transpose(image);
        bool all_zero = true;
        for (const auto& v : bnd) all_zero &= (v == 0);
        CHECK(all_zero);
        // each original triangle contributes 6 small triangles
        Int total(0);
        for (const auto& v : image) total += (v < 0 ? -v : v);
        CHECK(total == Int(6 * 14));
    }
}

TEST_CASE("staircase simplicial products") {
    SECTION("interval x interval is a square disk") {
        auto p = simplicial_product(interval(), interval());
        CHECK(p.complex.n_simplices(0) == 4);
        CHECK(p.complex.n_simplices(2) == 2);
        CHECK(betti_numbers(p.complex.chain_complex()) == std::vector<long long>{1, 0, 0});
    }
    SECTION("circle x interval is an annulus") {
        auto p = simplicial_product(circle(), interval());
        CHECK(betti_numbers(p.complex.chain_complex()) == std::vector<long long>{1, 1, 0});
        CHECK(p.complex.chain_complex().euler_characteristic() == 0);
    }
    SECTION("circle x circle is a torus") {
        auto p = simplicial_product(circle(), circle());
        CHECK(betti_numbers(p.complex.chain_complex()) == std::vector<long long>{1, 2, 1});
    }
}

TEST_CASE("complex file parsing") {
    SECTION("round trip") {
        std::istringstream in("# a disk\n0 1 2\n\n# lower simplex kept if maximal\n3 4\n");
        auto tops = parse_top_simplices(in, "test");
        auto k = SimplicialComplex::from_top_simplices(tops);
        CHECK(k.n_simplices(0) == 5);
        CHECK(k.n_simplices(1) == 4);
        CHECK(k.n_simplices(2) == 1);
        std::ostringstream out;
        save_complex(k, out);
        std::istringstream back(out.str());
        auto k2 = SimplicialComplex::from_top_simplices(parse_top_simplices(back, "back"));
        CHECK(k2.total_simplices() == k.total_simplices());
    }
    SECTION("parse errors carry line numbers") {
        std::istringstream bad1("0 1\nx 2\n");
        CHECK_THROWS_WITH(parse_top_simplices(bad1, "f"), Catch::Matchers::ContainsSubstring("f:2"));
        std::istringstream bad2("0 0\n");
        CHECK_THROWS_WITH(parse_top_simplices(bad2, "g"), Catch::Matchers::ContainsSubstring("g:1"));
    }
}
