#pragma once

#include "burnside/config.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Linear algebra over the prime field GF(p): subspaces in reduced row echelon
// form, exhaustive grade-by-grade enumeration, annihilators under the standard
// dot pairing, and projective points. Everything downstream (subgroup lattices,
// character orbits) reduces to these primitives.

namespace burnside::gfp {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Arithmetic on residues in [0, p).
class PrimeField {
public:
    explicit PrimeField(int p) : p_(p) {
        if (!is_prime(p))
            throw domain_error("PrimeField: " + std::to_string(p) + " is not prime");
    }

    int p() const { return p_; }

    int reduce(long long a) const {
        long long r = a % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const {
        return static_cast<int>(static_cast<long long>(a) * b % p_);
    }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }

    int inv(int a) const {
        a = reduce(a);
        if (a == 0) throw domain_error("PrimeField::inv: zero has no inverse");
        int old_r = a, r = p_;
        int old_s = 1, s = 0;
        while (r != 0) {
            int q = old_r / r;
            int tr = old_r - q * r; old_r = r; r = tr;
            int ts = old_s - q * s; old_s = s; s = ts;
        }
        return reduce(old_s);
    }

private:
    int p_;
};

// Coordinate vector with entries kept reduced into [0, p).
struct FpVector {
    std::vector<int> c;

    FpVector() = default;
    explicit FpVector(std::size_t n) : c(n, 0) {}
    FpVector(std::initializer_list<int> init) : c(init) {}

    std::size_t size() const { return c.size(); }
    int operator[](std::size_t i) const { return c[i]; }
    int& operator[](std::size_t i) { return c[i]; }

    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
    }

    friend bool operator==(const FpVector&, const FpVector&) = default;
    friend auto operator<=>(const FpVector&, const FpVector&) = default;
};

inline FpVector add(const PrimeField& F, const FpVector& a, const FpVector& b) {
    if (a.size() != b.size()) throw domain_error("gfp::add: size mismatch");
    FpVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

inline FpVector scale(const PrimeField& F, int s, const FpVector& a) {
    FpVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(F.reduce(s), a[i]);
    return r;
}

inline int dot(const PrimeField& F, const FpVector& a, const FpVector& b) {
    if (a.size() != b.size()) throw domain_error("gfp::dot: size mismatch");
    long long acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long long>(a[i]) * b[i];
    return F.reduce(acc);
}

inline FpVector unit_vector(std::size_t m, std::size_t i) {
    FpVector v(m);
    v[i] = 1;
    return v;
}

// Base-p encoding with the first coordinate most significant, so integer
// comparison of codes agrees with lexicographic comparison of vectors.
inline std::int64_t encode(const FpVector& v, int p) {
    std::int64_t code = 0;
    for (std::size_t i = 0; i < v.size(); ++i) code = code * p + v[i];
    return code;
}

inline FpVector decode(std::int64_t code, int m, int p) {
    FpVector v(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = static_cast<int>(code % p);
        code /= p;
    }
    return v;
}

namespace detail {
// In-place reduced row echelon form; returns the nonzero rows.
inline std::vector<FpVector> rref(const PrimeField& F, std::vector<FpVector> rows) {
    if (rows.empty()) return rows;
    const std::size_t m = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = F.inv(rows[rank][col]);
        rows[rank] = scale(F, inv, rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            rows[i] = add(F, rows[i], scale(F, F.neg(rows[i][col]), rows[rank]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}
}  // namespace detail

// A linear subspace of GF(p)^m held by its unique RREF basis, so structural
// equality coincides with equality of subspaces. Instances are only minted by
// canonicalize() and the enumeration below, which keeps the invariant airtight.
class Subspace {
public:
    static Subspace zero(int p, int ambient_dim) {
        return Subspace(p, ambient_dim, {});
    }
    static Subspace full(int p, int ambient_dim) {
        std::vector<FpVector> rows;
        for (int i = 0; i < ambient_dim; ++i)
            rows.push_back(unit_vector(static_cast<std::size_t>(ambient_dim),
                                       static_cast<std::size_t>(i)));
        return Subspace(p, ambient_dim, std::move(rows));
    }

    int p() const { return p_; }
    int ambient_dim() const { return m_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<FpVector>& basis() const { return rows_; }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return dim() == m_; }

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    Subspace(int p, int m, std::vector<FpVector> rref_rows)
        : p_(p), m_(m), rows_(std::move(rref_rows)) {}

    int p_;
    int m_;
    std::vector<FpVector> rows_;  // RREF, pivots strictly increasing

    friend Subspace canonicalize(const PrimeField&, int, const std::vector<FpVector>&);
};

inline Subspace canonicalize(const PrimeField& F, int ambient_dim,
                             const std::vector<FpVector>& generators) {
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != ambient_dim)
            throw domain_error("canonicalize: generator has wrong length");
    return Subspace(F.p(), ambient_dim, detail::rref(F, generators));
}

inline bool contains(const Subspace& S, const FpVector& v) {
    if (static_cast<int>(v.size()) != S.ambient_dim())
        throw domain_error("contains: vector has wrong length");
    PrimeField F(S.p());
    FpVector r = v;
    for (const auto& row : S.basis()) {
        std::size_t piv = 0;
        while (row[piv] == 0) ++piv;
        if (r[piv] != 0) r = add(F, r, scale(F, F.neg(r[piv]), row));
    }
    return r.is_zero();
}

inline bool contains_subspace(const Subspace& outer, const Subspace& inner) {
    if (outer.p() != inner.p() || outer.ambient_dim() != inner.ambient_dim())
        throw domain_error("contains_subspace: mismatched ambients");
    for (const auto& row : inner.basis())
        if (!contains(outer, row)) return false;
    return true;
}

// Coefficients of target over the given spanning rows, if it lies in their
// span. Used when rewriting vectors through a chosen section of a quotient.
inline std::optional<std::vector<int>> express_in_span(const PrimeField& F,
                                                       const std::vector<FpVector>& rows,
                                                       const FpVector& target) {
    if (rows.empty()) {
        if (target.is_zero()) return std::vector<int>{};
        return std::nullopt;
    }
    const std::size_t m = rows[0].size();
    // Augment each row with indicator coordinates and eliminate.
    std::vector<FpVector> work;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        FpVector w(m + rows.size());
        std::copy(rows[i].c.begin(), rows[i].c.end(), w.c.begin());
        w[m + i] = 1;
        work.push_back(std::move(w));
    }
    std::size_t rank = 0;
    FpVector r(m + rows.size());
    std::copy(target.c.begin(), target.c.end(), r.c.begin());
    for (std::size_t col = 0; col < m && rank < work.size(); ++col) {
        std::size_t piv = rank;
        while (piv < work.size() && work[piv][col] == 0) ++piv;
        if (piv == work.size()) continue;
        std::swap(work[rank], work[piv]);
        work[rank] = scale(F, F.inv(work[rank][col]), work[rank]);
        for (std::size_t i = 0; i < work.size(); ++i)
            if (i != rank && work[i][col] != 0)
                work[i] = add(F, work[i], scale(F, F.neg(work[i][col]), work[rank]));
        if (r[col] != 0) r = add(F, r, scale(F, F.neg(r[col]), work[rank]));
        ++rank;
    }
    for (std::size_t col = 0; col < m; ++col)
        if (r[col] != 0) return std::nullopt;
    std::vector<int> coeffs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) coeffs[i] = F.neg(r[m + i]);
    return coeffs;
}

// Number of k-dimensional subspaces of GF(p)^n. Computed by the telescoping
// product whose partial quotients are themselves such counts, so every
// intermediate division is exact (and checked).
inline Int gaussian_binomial(int k, int n, int p) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int acc = 1;
    for (int i = 1; i <= k; ++i) {
        Int num = Int(1);
        for (int e = 0; e < n - i + 1; ++e) num *= p;
        num -= 1;
        Int den = Int(1);
        for (int e = 0; e < i; ++e) den *= p;
        den -= 1;
        acc *= num;
        if (acc % den != 0)
            throw consistency_error("gaussian_binomial: non-exact partial quotient");
        acc /= den;
    }
    return acc;
}

// All p^dim elements of a subspace.
inline std::vector<FpVector> elements(const Subspace& S) {
    PrimeField F(S.p());
    std::vector<FpVector> out;
    const int k = S.dim();
    std::vector<int> coeff(static_cast<std::size_t>(k), 0);
    while (true) {
        FpVector v(static_cast<std::size_t>(S.ambient_dim()));
        for (int i = 0; i < k; ++i)
            if (coeff[static_cast<std::size_t>(i)] != 0)
                v = add(F, v, scale(F, coeff[static_cast<std::size_t>(i)],
                                    S.basis()[static_cast<std::size_t>(i)]));
        out.push_back(std::move(v));
        int pos = k - 1;
        while (pos >= 0 && coeff[static_cast<std::size_t>(pos)] == S.p() - 1)
            coeff[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++coeff[static_cast<std::size_t>(pos)];
    }
    return out;
}

// Sorted encodings of all elements; the sort key behind the canonical order.
inline std::vector<std::int64_t> element_codes(const Subspace& S) {
    std::vector<std::int64_t> codes;
    for (const auto& v : elements(S)) codes.push_back(encode(v, S.p()));
    std::sort(codes.begin(), codes.end());
    return codes;
}

// The order everything downstream indexes by: dimension first, then
// lexicographic comparison of the sorted element lists.
inline bool canonical_less(const Subspace& a, const Subspace& b) {
    if (a.p() != b.p() || a.ambient_dim() != b.ambient_dim())
        throw domain_error("canonical_less: mismatched ambients");
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return element_codes(a) < element_codes(b);
}

namespace detail {

inline void check_caps(int ambient_dim, int p, const Limits& lim) {
    if (ambient_dim < 0) throw domain_error("negative ambient dimension");
    if (p > lim.max_prime)
        throw resource_error("p = " + std::to_string(p) + " exceeds cap " +
                             std::to_string(lim.max_prime));
    if (ambient_dim > lim.max_ambient_dim)
        throw resource_error("ambient dimension " + std::to_string(ambient_dim) +
                             " exceeds cap " + std::to_string(lim.max_ambient_dim));
}

inline std::vector<Subspace> build_grade(int m, int k, int p) {
    PrimeField F(p);
    std::vector<std::pair<std::vector<std::int64_t>, Subspace>> keyed;

    // Walk over pivot column sets; within one set the free cells (entries to
    // the right of a pivot, off the other pivot columns) range over GF(p).
    std::vector<int> pivots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
    bool more = k <= m;
    if (k == 0) {
        keyed.emplace_back(element_codes(Subspace::zero(p, m)), Subspace::zero(p, m));
        more = false;
    }
    while (more) {
        std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
        for (int j : pivots) is_pivot[static_cast<std::size_t>(j)] = true;
        std::vector<std::pair<int, int>> cells;  // (row, col) free entries
        for (int i = 0; i < k; ++i)
            for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < m; ++c)
                if (!is_pivot[static_cast<std::size_t>(c)]) cells.emplace_back(i, c);

        std::vector<int> assign(cells.size(), 0);
        while (true) {
            std::vector<FpVector> rows;
            for (int i = 0; i < k; ++i) {
                FpVector row(static_cast<std::size_t>(m));
                row[static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;
                rows.push_back(std::move(row));
            }
            for (std::size_t t = 0; t < cells.size(); ++t)
                rows[static_cast<std::size_t>(cells[t].first)]
                    [static_cast<std::size_t>(cells[t].second)] = assign[t];
            Subspace S = canonicalize(F, m, rows);
            keyed.emplace_back(element_codes(S), std::move(S));

            std::size_t pos = cells.size();
            while (pos > 0 && assign[pos - 1] == p - 1) assign[--pos] = 0;
            if (pos == 0) break;
            ++assign[pos - 1];
        }

        // next pivot combination
        int i = k - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }

    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Subspace> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

}  // namespace detail

// All k-dimensional subspaces of GF(p)^m in canonical order. Results are
// cached for the lifetime of the process; the returned reference stays valid.
inline const std::vector<Subspace>& enumerate_subspaces(int ambient_dim, int k, int p,
                                                        const Limits& lim = {}) {
    detail::check_caps(ambient_dim, p, lim);
    if (!is_prime(p)) throw domain_error("enumerate_subspaces: p must be prime");
    if (k < 0 || k > ambient_dim)
        throw domain_error("enumerate_subspaces: grade out of range");

    static std::map<std::tuple<int, int, int>, std::unique_ptr<std::vector<Subspace>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(ambient_dim, k, p);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto built = std::make_unique<std::vector<Subspace>>(
            detail::build_grade(ambient_dim, k, p));
        it = cache.emplace(key, std::move(built)).first;
    }
    return *it->second;
}

// Every subspace of GF(p)^m, grades ascending, canonical within each grade.
inline std::vector<Subspace> enumerate_all_subspaces(int ambient_dim, int p,
                                                     const Limits& lim = {}) {
    std::vector<Subspace> out;
    for (int k = 0; k <= ambient_dim; ++k) {
        const auto& grade = enumerate_subspaces(ambient_dim, k, p, lim);
        out.insert(out.end(), grade.begin(), grade.end());
    }
    return out;
}

// (S + T, S ∩ T) in one call. The intersection is computed through
// annihilators, which keeps both outputs canonical by construction.
inline std::pair<Subspace, Subspace> sum_intersect(const Subspace& S, const Subspace& T);

// Orthogonal complement under the standard dot pairing.
inline Subspace annihilator(const Subspace& S) {
    PrimeField F(S.p());
    const int m = S.ambient_dim();
    const int k = S.dim();
    std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
    std::vector<int> pivot_of_row(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        std::size_t piv = 0;
        while (S.basis()[static_cast<std::size_t>(i)][piv] == 0) ++piv;
        is_pivot[piv] = true;
        pivot_of_row[static_cast<std::size_t>(i)] = static_cast<int>(piv);
    }
    std::vector<FpVector> gens;
    for (int f = 0; f < m; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        FpVector y(static_cast<std::size_t>(m));
        y[static_cast<std::size_t>(f)] = 1;
        for (int i = 0; i < k; ++i)
            y[static_cast<std::size_t>(pivot_of_row[static_cast<std::size_t>(i)])] =
                F.neg(S.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)]);
        gens.push_back(std::move(y));
    }
    return canonicalize(F, m, gens);
}

inline std::pair<Subspace, Subspace> sum_intersect(const Subspace& S, const Subspace& T) {
    if (S.p() != T.p() || S.ambient_dim() != T.ambient_dim())
        throw domain_error("sum_intersect: mismatched ambients");
    PrimeField F(S.p());
    std::vector<FpVector> gens = S.basis();
    gens.insert(gens.end(), T.basis().begin(), T.basis().end());
    Subspace sum = canonicalize(F, S.ambient_dim(), gens);

    std::vector<FpVector> ann_gens = annihilator(S).basis();
    const Subspace annT = annihilator(T);
    ann_gens.insert(ann_gens.end(), annT.basis().begin(), annT.basis().end());
    Subspace inter = annihilator(canonicalize(F, S.ambient_dim(), ann_gens));
    return {std::move(sum), std::move(inter)};
}

// A point of projective space, held by the representative scaled so its first
// nonzero coordinate is 1. Ordering is lexicographic on that representative.
struct ProjectivePoint {
    FpVector rep;

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
    friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
};

inline ProjectivePoint normalize_point(const PrimeField& F, const FpVector& v) {
    if (v.is_zero()) throw domain_error("normalize_point: zero vector");
    std::size_t first = 0;
    while (v[first] == 0) ++first;
    return ProjectivePoint{scale(F, F.inv(v[first]), v)};
}

// All points of P(GF(p)^m), ascending in the lexicographic order of their
// normalized representatives.
inline std::vector<ProjectivePoint> projective_points(int ambient_dim, int p,
                                                      const Limits& lim = {}) {
    detail::check_caps(ambient_dim, p, lim);
    if (!is_prime(p)) throw domain_error("projective_points: p must be prime");
    std::vector<ProjectivePoint> out;
    for (int pos = ambient_dim - 1; pos >= 0; --pos) {
        // first nonzero coordinate at pos, normalized to 1; later entries free
        std::vector<int> suffix(static_cast<std::size_t>(ambient_dim - pos - 1), 0);
        while (true) {
            FpVector v(static_cast<std::size_t>(ambient_dim));
            v[static_cast<std::size_t>(pos)] = 1;
            for (std::size_t i = 0; i < suffix.size(); ++i)
                v[static_cast<std::size_t>(pos) + 1 + i] = suffix[i];
            out.push_back(ProjectivePoint{std::move(v)});
            std::size_t t = suffix.size();
            while (t > 0 && suffix[t - 1] == p - 1) suffix[--t] = 0;
            if (t == 0) break;
            ++suffix[t - 1];
        }
    }
    return out;
}

}  // namespace burnside::gfp
