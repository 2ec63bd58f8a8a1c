#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "suptop/scanning.hpp"

using namespace suptop;

namespace {

LabelledConfig plain(std::initializer_list<int> pts) { return LabelledConfig(pts); }

FormalSum<LabelledConfig> single(const LabelledConfig& c) {
    FormalSum<LabelledConfig> s;
    s.add(c);
    return s;
}

} // namespace

TEST_CASE("formal sum monoid laws") {
    FormalSum<LabelledConfig> empty;
    auto x = single(plain({1}));
    auto y = single(plain({2}));

    SECTION("identity") {
        CHECK(empty + empty == empty);
        CHECK(x + empty == x);
        CHECK(empty + x == x);
    }
    SECTION("multiplicities merge") {
        FormalSum<LabelledConfig> a, b, expect;
        a.add(plain({1}), 1);
        b.add(plain({1}), 2);
        expect.add(plain({1}), 3);
        CHECK(a + b == expect);
    }
    SECTION("commutative and associative on random sums") {
        std::mt19937 rng(20240817);
        for (int trial = 0; trial < 50; ++trial) {
            FormalSum<LabelledConfig> a, b, c;
            auto rnd = [&](FormalSum<LabelledConfig>& s) {
                int k = rng() % 4;
                for (int i = 0; i < k; ++i)
                    s.add(plain({static_cast<int>(rng() % 5 + 1)}), 1 + rng() % 3);
            };
            rnd(a);
            rnd(b);
            rnd(c);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
        }
    }
    SECTION("basepoint terms are absorbed") {
        FormalSum<LabelledConfig> a;
        a.add(LabelledConfig::basepoint(), 1);
        a.add(plain({3}), 1);
        CHECK(a == single(plain({3})));
        CHECK(a.distinct_terms() == 1);
    }
    SECTION("negative multiplicities are rejected: monoid, not group") {
        FormalSum<LabelledConfig> a;
        CHECK_THROWS_AS(a.add(plain({1}), -1), InputError);
    }
}

TEST_CASE("degenerate configurations collapse to the basepoint") {
    CHECK(LabelledConfig({1, 2}, {{1, LabelledConfig::basepoint_label}}).is_basepoint());
    CHECK(LabelledConfig({1, 2}, {}, {2}).is_basepoint());
    CHECK(LabelledConfig().is_basepoint());
    CHECK(LabelledConfig({1, 2}, {{1, 3}}) == LabelledConfig({2, 1}, {{1, 3}}));
    CHECK_THROWS_AS(LabelledConfig({1, 1}), InputError);
    CHECK_THROWS_AS(LabelledConfig({1}, {{2, 5}}), InputError);
}

TEST_CASE("scanning map") {
    SECTION("empty input gives the empty sum") { CHECK(scan(LabelledConfig()).empty()); }
    SECTION("singleton") { CHECK(scan(plain({1})) == single(plain({1}))); }
    SECTION("two points") {
        FormalSum<LabelledConfig> expect;
        expect.add(plain({1}));
        expect.add(plain({2}));
        expect.add(plain({1, 2}));
        CHECK(scan(plain({1, 2})) == expect);
    }
    SECTION("term count is 2^n - 1 on plain configurations") {
        for (int n = 0; n <= 5; ++n) {
            std::vector<int> pts(n);
            for (int i = 0; i < n; ++i) pts[i] = i + 1;
            CHECK(scan(LabelledConfig(pts)).total_multiplicity() == (1LL << n) - 1);
        }
    }
    SECTION("labels ride along") {
        LabelledConfig xi({1, 2}, {{2, 7}});
        auto s = scan(xi);
        CHECK(s.multiplicity(LabelledConfig({2}, {{2, 7}})) == 1);
        CHECK(s.multiplicity(plain({2})) == 0);
    }
}

TEST_CASE("diagonal") {
    CHECK(diag(plain({1})) == ConfigPair{plain({1}), plain({1})});
    CHECK(is_basepoint(diag(LabelledConfig())));
    CHECK(diag(plain({1, 2})) == ConfigPair{plain({1, 2}), plain({1, 2})});
}

TEST_CASE("phi: ordered disjoint decompositions") {
    SECTION("singleton vanishes") { CHECK(phi(plain({1})).empty()); }
    SECTION("two points") {
        FormalSum<ConfigPair> expect;
        expect.add({plain({1}), plain({2})});
        expect.add({plain({2}), plain({1})});
        CHECK(phi(plain({1, 2})) == expect);
    }
    SECTION("three points: six ordered nontrivial partitions") {
        auto s = phi(plain({1, 2, 3}));
        CHECK(s.total_multiplicity() == 6);
        CHECK(s.multiplicity({plain({1}), plain({2, 3})}) == 1);
        CHECK(s.multiplicity({plain({2, 3}), plain({1})}) == 1);
    }
    SECTION("term count is 2^n - 2") {
        for (int n = 1; n <= 6; ++n) {
            std::vector<int> pts(n);
            for (int i = 0; i < n; ++i) pts[i] = i + 1;
            CHECK(phi(LabelledConfig(pts)).total_multiplicity() == (1LL << n) - 2);
        }
    }
}

TEST_CASE("psi: ordered covers") {
    SECTION("singleton") {
        FormalSum<ConfigPair> expect;
        expect.add({plain({1}), plain({1})});
        CHECK(psi(plain({1})) == expect);
    }
    SECTION("empty") { CHECK(psi(LabelledConfig()).empty()); }
    SECTION("two points: 7 covering pairs") {
        auto s = psi(plain({1, 2}));
        CHECK(s.total_multiplicity() == 7);
        // brute-force oracle: all ordered pairs of nonempty subsets that cover
        long long count = 0;
        for (int a = 1; a < 4; ++a)
            for (int b = 1; b < 4; ++b)
                if ((a | b) == 3) ++count;
        CHECK(s.total_multiplicity() == count);
    }
    SECTION("term count is 3^n - 2 against enumeration") {
        for (int n = 1; n <= 6; ++n) {
            std::vector<int> pts(n);
            for (int i = 0; i < n; ++i) pts[i] = i + 1;
            long long expect = 1;
            for (int i = 0; i < n; ++i) expect *= 3;
            expect -= 2;
            // independent brute force over subset pairs
            long long brute = 0;
            for (unsigned a = 1; a < (1u << n); ++a)
                for (unsigned b = 1; b < (1u << n); ++b)
                    if ((a | b) == (1u << n) - 1) ++brute;
            CHECK(brute == expect);
            CHECK(psi(LabelledConfig(pts)).total_multiplicity() == expect);
        }
    }
}

TEST_CASE("phi and psi components") {
    SECTION("p = q + r: equal to phi component") {
        CHECK(psi_component(2, 1, 1, plain({1, 2})) == phi_component(2, 1, 1, plain({1, 2})));
        auto s = phi_component(2, 1, 1, plain({1, 2}));
        CHECK(s.total_multiplicity() == 2);
    }
    SECTION("q + r < p: both vanish") {
        CHECK(phi_component(3, 1, 1, plain({1, 2, 3})).empty());
        CHECK(psi_component(3, 1, 1, plain({1, 2, 3})).empty());
    }
    SECTION("phi vanishes whenever p != q + r") {
        CHECK(phi_component(2, 2, 1, plain({1, 2})).empty());
        CHECK(phi_component(4, 2, 2, plain({1, 2, 3, 4})).total_multiplicity() == 6);
    }
    SECTION("psi component with q + r > p") {
        auto s = psi_component(2, 2, 1, plain({1, 2}));
        FormalSum<ConfigPair> expect;
        expect.add({plain({1, 2}), plain({1})});
        expect.add({plain({1, 2}), plain({2})});
        CHECK(s == expect);
    }
    SECTION("components reassemble phi and psi, sizes <= 6") {
        for (int n = 1; n <= 6; ++n) {
            std::vector<int> pts(n);
            for (int i = 0; i < n; ++i) pts[i] = i + 1;
            LabelledConfig xi(pts);
            FormalSum<ConfigPair> phi_sum, psi_sum;
            for (int q = 1; q <= n; ++q)
                for (int r = 1; q + r <= 2 * n; ++r) {
                    if (q + r == n) phi_sum += phi_component(n, q, r, xi);
                    if (q + r >= n && q <= n && r <= n) psi_sum += psi_component(n, q, r, xi);
                }
            CHECK(phi_sum == phi(xi));
            CHECK(psi_sum == psi(xi));
        }
    }
    SECTION("pointwise equality phi == psi components for p = q + r <= 6") {
        for (int p = 2; p <= 6; ++p) {
            std::vector<int> pts(p);
            for (int i = 0; i < p; ++i) pts[i] = i + 1;
            LabelledConfig xi(pts);
            for (int q = 1; q < p; ++q)
                CHECK(phi_component(p, q, p - q, xi) == psi_component(p, q, p - q, xi));
        }
    }
}

TEST_CASE("triangle product") {
    using Pair = std::pair<LabelledConfig, LabelledConfig>;
    MultiMap<LabelledConfig, LabelledConfig> two_x{[](const LabelledConfig& c) {
        FormalSum<LabelledConfig> s;
        s.add(c, 2);
        return s;
    }};
    MultiMap<LabelledConfig, LabelledConfig> split{[](const LabelledConfig& c) {
        // c -> sum of its singletons
        FormalSum<LabelledConfig> s;
        for (std::size_t i = 0; i < c.size(); ++i) s.add(c.subconfig(1ULL << i));
        return s;
    }};
    auto prod = triangle(two_x, split);

    SECTION("empty side kills the product") {
        CHECK(prod(Pair{LabelledConfig(), plain({1})}).empty());
        CHECK(prod(Pair{plain({1}), LabelledConfig()}).empty());
    }
    SECTION("multiplicities multiply over the index product") {
        auto out = prod(Pair{plain({1}), plain({2, 3})});
        CHECK(out.total_multiplicity() == 4);
        CHECK(out.multiplicity({plain({1}), plain({2})}) == 2);
        CHECK(out.multiplicity({plain({1}), plain({3})}) == 2);
    }
    SECTION("singleton case") {
        MultiMap<LabelledConfig, LabelledConfig> id{[](const LabelledConfig& c) {
            FormalSum<LabelledConfig> s;
            s.add(c);
            return s;
        }};
        auto p = triangle(id, id);
        auto out = p(Pair{plain({1}), plain({2})});
        CHECK(out.total_multiplicity() == 1);
        CHECK(out.multiplicity({plain({1}), plain({2})}) == 1);
    }
}

TEST_CASE("cover inverse") {
    SECTION("identity cover") {
        CoverPresentation<LabelledConfig, LabelledConfig> idc{
            1, [](const LabelledConfig& c) { return std::vector<LabelledConfig>{c}; },
            [](const LabelledConfig& c) { return c; }};
        auto inv = cover_inverse(idc);
        CHECK(inv(plain({1})) == single(plain({1})));
        CHECK(cover_roundtrip(idc, plain({1})) == single(plain({1})));
    }
    SECTION("colour-forgetting cover on two-point configurations") {
        // total: configurations with one point labelled 1 (blue), one labelled 2 (red)
        CoverPresentation<LabelledConfig, LabelledConfig> forget{
            2,
            [](const LabelledConfig& c) {
                auto pts = c.points();
                std::vector<LabelledConfig> fib;
                fib.emplace_back(pts, std::vector<std::pair<int, int>>{{pts[0], 1}, {pts[1], 2}});
                fib.emplace_back(pts, std::vector<std::pair<int, int>>{{pts[0], 2}, {pts[1], 1}});
                return fib;
            },
            [](const LabelledConfig& c) { return LabelledConfig(c.points()); }};
        auto inv = cover_inverse(forget);
        auto out = inv(plain({4, 9}));
        CHECK(out.total_multiplicity() == 2);
        CHECK(out.multiplicity(LabelledConfig({4, 9}, {{4, 1}, {9, 2}})) == 1);
        CHECK(out.multiplicity(LabelledConfig({4, 9}, {{4, 2}, {9, 1}})) == 1);
        auto rt = cover_roundtrip(forget, plain({4, 9}));
        CHECK(rt == single(plain({4, 9})).scaled(2));
    }
    SECTION("fiber size mismatch is a malformed cover") {
        CoverPresentation<LabelledConfig, LabelledConfig> bad{
            2, [](const LabelledConfig& c) { return std::vector<LabelledConfig>{c}; },
            [](const LabelledConfig& c) { return c; }};
        auto inv = cover_inverse(bad);
        CHECK_THROWS_AS(inv(plain({1})), ModelError);
    }
}

TEST_CASE("scanning square identity") {
    SECTION("trivial sizes") {
        auto r = verify_psi_sigma_identity(0);
        CHECK(r.pass);
    }
    SECTION("both sides have 9 pre-absorption terms at size 2") {
        // all subset pairs (A,B) of {1,2}: 16 pairs, 7 with an empty side absorbed
        LabelledConfig xi({1, 2});
        MultiMap<LabelledConfig, LabelledConfig> sigma{[](const LabelledConfig& c) { return scan(c); }};
        auto rhs = triangle(sigma, sigma)(diag(xi));
        CHECK(rhs.total_multiplicity() == 9);
    }
    SECTION("exhaustive through size 4") {
        auto r = verify_psi_sigma_identity(4);
        INFO(r.counterexample);
        CHECK(r.pass);
        CHECK(r.cases == 5);
    }
}
