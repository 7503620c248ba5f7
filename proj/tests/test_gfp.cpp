#include "burnside/gfp.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

using namespace burnside;
using namespace burnside::gfp;

namespace {

// Brute-force oracle, deliberately independent of the echelon machinery in the
// library: every k-subset of nonzero vectors is closed under span by repeated
// addition, and distinct spans of the right size are collected as sorted
// element-code sets.
using Code = long long;

std::vector<int> oracle_decode(Code code, int m, int p) {
    std::vector<int> v(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = static_cast<int>(code % p);
        code /= p;
    }
    return v;
}

Code oracle_encode(const std::vector<int>& v, int p) {
    Code c = 0;
    for (int x : v) c = c * p + x;
    return c;
}

std::set<Code> oracle_span(const std::vector<Code>& gens, int m, int p) {
    std::set<Code> span{0};
    for (Code g : gens) {
        std::vector<int> gv = oracle_decode(g, m, p);
        std::set<Code> next;
        for (Code u : span) {
            std::vector<int> uv = oracle_decode(u, m, p);
            for (int c = 0; c < p; ++c) {
                std::vector<int> w(uv);
                for (int i = 0; i < m; ++i)
                    w[static_cast<std::size_t>(i)] =
                        (w[static_cast<std::size_t>(i)] + c * gv[static_cast<std::size_t>(i)]) % p;
                next.insert(oracle_encode(w, p));
            }
        }
        span = std::move(next);
    }
    return span;
}

std::set<std::set<Code>> oracle_grade(int m, int k, int p) {
    Code total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    Code expected_size = 1;
    for (int i = 0; i < k; ++i) expected_size *= p;

    std::set<std::set<Code>> grade;
    std::vector<Code> pick(static_cast<std::size_t>(k));
    // iterate strictly increasing k-tuples of nonzero codes
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
    if (k == 0) {
        grade.insert(std::set<Code>{0});
        return grade;
    }
    while (true) {
        auto span = oracle_span(pick, m, p);
        if (static_cast<Code>(span.size()) == expected_size) grade.insert(span);
        int i = k - 1;
        while (i >= 0 &&
               pick[static_cast<std::size_t>(i)] == total - 1 - (k - 1 - i)) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return grade;
}

std::set<Code> code_set(const Subspace& S) {
    auto codes = element_codes(S);
    return std::set<Code>(codes.begin(), codes.end());
}

}  // namespace

TEST_CASE("prime detection") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(9));
    CHECK_THROWS_AS(PrimeField(6), domain_error);
}

TEST_CASE("field arithmetic round trips") {
    PrimeField F(7);
    for (int a = 1; a < 7; ++a) {
        CHECK(F.mul(a, F.inv(a)) == 1);
        CHECK(F.add(a, F.neg(a)) == 0);
    }
    CHECK(F.reduce(-1) == 6);
    CHECK(F.sub(2, 5) == 4);
}

TEST_CASE("enumeration agrees with brute-force span closure") {
    struct Case { int m, k, p; };
    const Case cases[] = {
        {2, 1, 2}, {3, 1, 2}, {3, 2, 2}, {4, 2, 2}, {4, 3, 2},
        {2, 1, 3}, {3, 1, 3}, {3, 2, 3}, {4, 2, 3},
        {2, 1, 5},
    };
    for (const auto& c : cases) {
        CAPTURE(c.m, c.k, c.p);
        auto expect = oracle_grade(c.m, c.k, c.p);
        const auto& got = enumerate_subspaces(c.m, c.k, c.p);
        REQUIRE(got.size() == expect.size());
        std::set<std::set<Code>> got_sets;
        for (const auto& S : got) got_sets.insert(code_set(S));
        CHECK(got_sets == expect);
        CHECK(gaussian_binomial(c.k, c.m, c.p) == Int(expect.size()));
    }
    // two counts pinned from the oracle run
    CHECK(gaussian_binomial(1, 3, 2) == 7);
    CHECK(gaussian_binomial(2, 4, 3) == 130);
}

TEST_CASE("enumeration count matches gaussian binomial across the cap grid") {
    for (int p : {2, 3, 5})
        for (int m = 0; m <= 5; ++m)
            for (int k = 0; k <= m; ++k) {
                if (p == 5 && m >= 5 && k >= 2 && k <= 3) continue;  // covered below
                CAPTURE(p, m, k);
                CHECK(Int(enumerate_subspaces(m, k, p).size()) ==
                      gaussian_binomial(k, m, p));
            }
    // the two heavyweight grades of GF(5)^5, checked once
    CHECK(Int(enumerate_subspaces(5, 2, 5).size()) == gaussian_binomial(2, 5, 5));
    CHECK(Int(enumerate_subspaces(5, 3, 5).size()) == gaussian_binomial(3, 5, 5));
}

TEST_CASE("gaussian binomial symmetry and edge cases") {
    for (int p : {2, 3, 5, 7, 13})
        for (int n = 0; n <= 6; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(gaussian_binomial(k, n, p) == gaussian_binomial(n - k, n, p));
    CHECK(gaussian_binomial(0, 0, 2) == 1);
    CHECK(gaussian_binomial(2, 1, 3) == 0);
    CHECK(gaussian_binomial(-1, 3, 3) == 0);
    CHECK(gaussian_binomial(1, 4, 2) == 15);
}

TEST_CASE("canonicalize is generator-order and scaling invariant") {
    PrimeField F(3);
    Subspace a = canonicalize(F, 3, {{1, 1, 0}, {0, 1, 1}});
    Subspace b = canonicalize(F, 3, {{0, 2, 2}, {2, 2, 0}, {1, 0, 2}});
    CHECK(a == b);
    CHECK(a.dim() == 2);

    for (int k = 0; k <= 3; ++k)
        for (const auto& S : enumerate_subspaces(3, k, 3))
            CHECK(canonicalize(F, 3, S.basis()) == S);
}

TEST_CASE("canonical order of lines and planes in GF(2)^3") {
    const auto& lines = enumerate_subspaces(3, 1, 2);
    REQUIRE(lines.size() == 7);
    const std::vector<FpVector> expected = {
        {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        REQUIRE(lines[i].dim() == 1);
        CHECK(lines[i].basis()[0] == expected[i]);
    }

    const auto& planes = enumerate_subspaces(3, 2, 2);
    REQUIRE(planes.size() == 7);
    // first plane holds the two lex-smallest nonzero vectors
    CHECK(code_set(planes[0]) == std::set<Code>{0, 1, 2, 3});
    // the plane of vectors with last coordinate zero sits fourth
    CHECK(code_set(planes[3]) == std::set<Code>{0, 2, 4, 6});

    for (int k = 0; k <= 3; ++k) {
        const auto& grade = enumerate_subspaces(3, k, 2);
        for (std::size_t i = 0; i + 1 < grade.size(); ++i)
            CHECK(canonical_less(grade[i], grade[i + 1]));
    }
}

TEST_CASE("membership and subspace containment") {
    PrimeField F(2);
    Subspace plane = canonicalize(F, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK(contains(plane, FpVector{1, 1, 0}));
    CHECK_FALSE(contains(plane, FpVector{0, 0, 1}));
    CHECK(contains_subspace(plane, canonicalize(F, 3, {{1, 1, 0}})));
    CHECK_FALSE(contains_subspace(canonicalize(F, 3, {{1, 1, 0}}), plane));
    CHECK(contains_subspace(plane, Subspace::zero(2, 3)));
    CHECK(contains_subspace(Subspace::full(2, 3), plane));
}

TEST_CASE("annihilator is a dimension-complementing involution") {
    for (int p : {2, 3})
        for (int k = 0; k <= 3; ++k)
            for (const auto& S : enumerate_subspaces(3, k, p)) {
                Subspace A = annihilator(S);
                CHECK(A.dim() == 3 - S.dim());
                CHECK(annihilator(A) == S);
                for (const auto& a : A.basis())
                    for (const auto& s : S.basis())
                        CHECK(dot(PrimeField(p), a, s) == 0);
            }
}

TEST_CASE("sum and intersection satisfy the modular dimension law") {
    std::vector<Subspace> all = enumerate_all_subspaces(3, 3);
    REQUIRE(all.size() == 28);
    for (const auto& S : all)
        for (const auto& T : all) {
            auto [sum, inter] = sum_intersect(S, T);
            CHECK(sum.dim() + inter.dim() == S.dim() + T.dim());
            CHECK(contains_subspace(sum, S));
            CHECK(contains_subspace(sum, T));
            CHECK(contains_subspace(S, inter));
            CHECK(contains_subspace(T, inter));
            // annihilator swaps sums and intersections
            auto [asum, ainter] = sum_intersect(annihilator(S), annihilator(T));
            CHECK(asum == annihilator(inter));
            CHECK(ainter == annihilator(sum));
        }
}

TEST_CASE("express_in_span inverts membership") {
    PrimeField F(3);
    for (const auto& S : enumerate_subspaces(3, 2, 3)) {
        for (const auto& v : elements(S)) {
            auto coeffs = express_in_span(F, S.basis(), v);
            REQUIRE(coeffs.has_value());
            FpVector rebuilt(3);
            for (std::size_t i = 0; i < coeffs->size(); ++i)
                rebuilt = add(F, rebuilt, scale(F, (*coeffs)[i], S.basis()[i]));
            CHECK(rebuilt == v);
        }
        int outside = 0;
        for (Code c = 0; c < 27; ++c)
            if (!contains(S, decode(c, 3, 3))) {
                CHECK_FALSE(express_in_span(F, S.basis(), decode(c, 3, 3)).has_value());
                ++outside;
            }
        CHECK(outside == 27 - 9);
    }
}

TEST_CASE("projective points are normalized and lex ascending") {
    for (int p : {2, 3, 5})
        for (int m = 1; m <= 4; ++m) {
            auto pts = projective_points(m, p);
            Int expect = gaussian_binomial(1, m, p);
            CHECK(Int(pts.size()) == expect);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::size_t first = 0;
                while (pts[i].rep[first] == 0) ++first;
                CHECK(pts[i].rep[first] == 1);
                if (i + 1 < pts.size()) CHECK(pts[i].rep < pts[i + 1].rep);
            }
        }

    auto p32 = projective_points(2, 3);
    REQUIRE(p32.size() == 4);
    CHECK(p32[0].rep == FpVector{0, 1});
    CHECK(p32[1].rep == FpVector{1, 0});
    CHECK(p32[2].rep == FpVector{1, 1});
    CHECK(p32[3].rep == FpVector{1, 2});

    PrimeField F(5);
    CHECK(normalize_point(F, FpVector{0, 3, 1}).rep == FpVector{0, 1, 2});
}

TEST_CASE("enumeration respects the configured caps") {
    CHECK_THROWS_AS(enumerate_subspaces(7, 1, 2), resource_error);
    CHECK_THROWS_AS(enumerate_subspaces(3, 1, 17), resource_error);
    CHECK_THROWS_AS(enumerate_subspaces(3, 1, 4), domain_error);
    CHECK_THROWS_AS(enumerate_subspaces(3, 4, 2), domain_error);
    Limits loose;
    loose.max_prime = 17;
    CHECK(Int(projective_points(2, 17, loose).size()) == 18);
}
