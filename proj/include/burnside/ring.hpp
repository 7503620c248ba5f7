#pragma once

#include "burnside/config.hpp"
#include "burnside/family.hpp"
#include "burnside/gfp.hpp"
#include "burnside/intlat.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <variant>
#include <vector>

// The Burnside module of a family member: transitive-set basis labels, the
// relative (H-free) basis, induction and restriction between subquotients,
// and the grade-raising map t whose image realizes the kernel of
// linearization. Everything is indexed by the canonical subspace order.

namespace burnside::ring {

using gfp::FpVector;
using gfp::PrimeField;
using gfp::Subspace;

// Label of a relative basis element for the cyclic family: the graph subgroup
// of Z_{p^k} x Z_p generated by (p^(k-nu), rho). nu = rho = 0 is the trivial
// subgroup; otherwise 1 <= nu <= k and 0 <= rho < p. These are exactly the
// subgroups meeting the distinguished Z_p factor trivially.
struct TwistPair {
    int nu = 0;
    int rho = 0;

    friend bool operator==(const TwistPair&, const TwistPair&) = default;
    friend auto operator<=>(const TwistPair&, const TwistPair&) = default;
};

using BasisElement = std::variant<Subspace, TwistPair>;

inline void validate_twist(const GroupFamily& fam, const TwistPair& t) {
    if (fam.kind() != FamilyKind::cyclic_cross_zp)
        throw domain_error("twist labels only exist for the cyclic family");
    const bool trivial = t.nu == 0 && t.rho == 0;
    const bool graph = t.nu >= 1 && t.nu <= fam.k() && t.rho >= 0 && t.rho < fam.p();
    if (!trivial && !graph) throw domain_error("invalid twist label");
}

inline std::vector<TwistPair> twist_pairs(const GroupFamily& fam) {
    if (fam.kind() != FamilyKind::cyclic_cross_zp)
        throw domain_error("twist_pairs: cyclic family required");
    std::vector<TwistPair> out{{0, 0}};
    for (int nu = 1; nu <= fam.k(); ++nu)
        for (int rho = 0; rho < fam.p(); ++rho) out.push_back({nu, rho});
    return out;
}

inline std::size_t twist_index(const GroupFamily& fam, const TwistPair& t) {
    validate_twist(fam, t);
    if (t.nu == 0) return 0;
    return 1 + static_cast<std::size_t>((t.nu - 1) * fam.p() + t.rho);
}

// All subgroups of the elementary G~ in canonical order, cached per (p, m).
inline const std::vector<Subspace>& full_subspace_basis(const GroupFamily& fam,
                                                        const Limits& lim = {}) {
    const int m = fam.ambient_dim();  // throws for the cyclic family
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Subspace>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(fam.p(), m);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto built = std::make_unique<std::vector<Subspace>>(
            gfp::enumerate_all_subspaces(m, fam.p(), lim));
        it = cache.emplace(key, std::move(built)).first;
    }
    return *it->second;
}

// Position of a subgroup in the canonical order: grade offset plus a binary
// search within the grade.
inline std::size_t subspace_index(const GroupFamily& fam, const Subspace& L) {
    const int m = fam.ambient_dim();
    if (L.p() != fam.p() || L.ambient_dim() != m)
        throw domain_error("subspace_index: subspace not in this ambient group");
    std::size_t offset = 0;
    for (int d = 0; d < L.dim(); ++d)
        offset += gfp::enumerate_subspaces(m, d, fam.p()).size();
    const auto& grade = gfp::enumerate_subspaces(m, L.dim(), fam.p());
    const auto key = gfp::element_codes(L);
    std::size_t lo = 0, hi = grade.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (gfp::element_codes(grade[mid]) < key) lo = mid + 1;
        else hi = mid;
    }
    if (lo == grade.size() || !(grade[lo] == L))
        throw consistency_error("subspace_index: subspace missing from enumeration");
    return offset + lo;
}

inline std::vector<Subspace> relative_subspaces(const GroupFamily& fam,
                                                const Limits& lim = {}) {
    const FpVector e = fam.distinguished_e();
    std::vector<Subspace> out;
    for (const auto& S : full_subspace_basis(fam, lim))
        if (!gfp::contains(S, e)) out.push_back(S);
    return out;
}

inline std::vector<BasisElement> burnside_basis(const GroupFamily& fam,
                                                const Limits& lim = {}) {
    if (fam.kind() == FamilyKind::cyclic_cross_zp)
        throw domain_error(
            "burnside_basis: only the relative basis is provided for the cyclic family");
    std::vector<BasisElement> out;
    for (const auto& S : full_subspace_basis(fam, lim)) out.emplace_back(S);
    return out;
}

inline std::vector<BasisElement> relative_basis(const GroupFamily& fam,
                                                const Limits& lim = {}) {
    std::vector<BasisElement> out;
    if (fam.kind() == FamilyKind::cyclic_cross_zp) {
        for (const auto& t : twist_pairs(fam)) out.emplace_back(t);
    } else {
        for (const auto& S : relative_subspaces(fam, lim)) out.emplace_back(S);
    }
    return out;
}

// full-basis position of each relative label, and the partial inverse
struct RelativeIndexing {
    std::vector<std::size_t> to_full;
    std::vector<std::ptrdiff_t> from_full;  // -1 on labels containing e
};

inline RelativeIndexing relative_indexing(const GroupFamily& fam, const Limits& lim = {}) {
    const auto& full = full_subspace_basis(fam, lim);
    const FpVector e = fam.distinguished_e();
    RelativeIndexing idx;
    idx.from_full.assign(full.size(), -1);
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (gfp::contains(full[i], e)) continue;
        idx.from_full[i] = static_cast<std::ptrdiff_t>(idx.to_full.size());
        idx.to_full.push_back(i);
    }
    return idx;
}

// An integer combination of transitive G~-sets, coefficients over the full
// canonical basis. Only meaningful for the elementary family.
struct Element {
    GroupFamily family;
    std::vector<Int> coeffs;
};

inline Element zero_element(const GroupFamily& fam) {
    return Element{fam, std::vector<Int>(full_subspace_basis(fam).size())};
}

inline Element unit_element(const GroupFamily& fam, const Subspace& L) {
    Element x = zero_element(fam);
    x.coeffs[subspace_index(fam, L)] = 1;
    return x;
}

// Bijection between subgroups avoiding the distinguished factor and pairs
// (K <= Z_p^n, linear functional rho on K): L is the graph of rho.
inline Subspace pair_to_subspace(const GroupFamily& fam, const Subspace& K,
                                 const std::vector<int>& rho) {
    const int n = fam.n();
    if (K.p() != fam.p() || K.ambient_dim() != n)
        throw domain_error("pair_to_subspace: K must live in the base group");
    if (rho.size() != static_cast<std::size_t>(K.dim()))
        throw domain_error("pair_to_subspace: one functional value per basis row");
    PrimeField F(fam.p());
    std::vector<FpVector> rows;
    for (std::size_t i = 0; i < K.basis().size(); ++i) {
        FpVector row(static_cast<std::size_t>(n + 1));
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = K.basis()[i][static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n)] = F.reduce(rho[i]);
        rows.push_back(std::move(row));
    }
    return gfp::canonicalize(F, n + 1, rows);
}

inline std::pair<Subspace, std::vector<int>> subspace_to_pair(const GroupFamily& fam,
                                                              const Subspace& L) {
    const int n = fam.n();
    if (L.p() != fam.p() || L.ambient_dim() != n + 1)
        throw domain_error("subspace_to_pair: wrong ambient");
    if (gfp::contains(L, fam.distinguished_e()))
        throw domain_error("subspace_to_pair: subgroup meets the distinguished factor");
    PrimeField F(fam.p());
    std::vector<FpVector> projected;
    for (const auto& row : L.basis()) {
        FpVector pr(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) pr[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
        projected.push_back(std::move(pr));
    }
    Subspace K = gfp::canonicalize(F, n, projected);
    if (K.dim() != L.dim())
        throw consistency_error("subspace_to_pair: projection collapsed a graph subgroup");

    std::vector<int> rho;
    for (const auto& r : K.basis()) {
        auto coeffs = gfp::express_in_span(F, projected, r);
        if (!coeffs)
            throw consistency_error("subspace_to_pair: canonical row escaped the projection");
        int value = 0;
        for (std::size_t i = 0; i < coeffs->size(); ++i)
            value = F.add(value, F.mul((*coeffs)[i], L.basis()[i][static_cast<std::size_t>(n)]));
        rho.push_back(value);
    }
    return {std::move(K), std::move(rho)};
}

// A pair C <= L of subgroups; the quotient L/C is the group acted through.
struct Subquotient {
    Subspace bottom;
    Subspace top;
};

inline void validate_subquotient(const GroupFamily& fam, const Subquotient& sq) {
    const int m = fam.ambient_dim();
    if (sq.bottom.p() != fam.p() || sq.top.p() != fam.p() ||
        sq.bottom.ambient_dim() != m || sq.top.ambient_dim() != m)
        throw domain_error("subquotient: wrong ambient group");
    if (!gfp::contains_subspace(sq.top, sq.bottom))
        throw domain_error("subquotient: bottom not contained in top");
}

// All D with C <= D <= L, in canonical order.
inline std::vector<Subspace> intermediate_subspaces(const GroupFamily& fam,
                                                    const Subquotient& sq) {
    validate_subquotient(fam, sq);
    std::vector<Subspace> out;
    for (const auto& D : full_subspace_basis(fam)) {
        if (D.dim() < sq.bottom.dim() || D.dim() > sq.top.dim()) continue;
        if (gfp::contains_subspace(D, sq.bottom) && gfp::contains_subspace(sq.top, D))
            out.push_back(D);
    }
    return out;
}

inline std::vector<Subspace> subspaces_of(const GroupFamily& fam, const Subspace& L) {
    return intermediate_subspaces(
        fam, Subquotient{Subspace::zero(fam.p(), fam.ambient_dim()), L});
}

// Identification of L/C with GF(p)^q through a fixed section: the rows of L's
// canonical basis that are independent of C, in order. Moving subgroups and
// characters across the quotient reduces to coordinate bookkeeping here.
class QuotientPresentation {
public:
    QuotientPresentation(const GroupFamily& fam, Subquotient sq)
        : fam_(fam), sq_(std::move(sq)) {
        validate_subquotient(fam_, sq_);
        PrimeField F(fam_.p());
        std::vector<FpVector> span = sq_.bottom.basis();
        for (const auto& row : sq_.top.basis()) {
            if (gfp::express_in_span(F, span, row)) continue;
            span.push_back(row);
            section_.push_back(row);
        }
        q_ = static_cast<int>(section_.size());
        intermediates_ = intermediate_subspaces(fam_, sq_);
        Int expected = 0;
        for (int j = 0; j <= q_; ++j) expected += gfp::gaussian_binomial(j, q_, fam_.p());
        if (Int(intermediates_.size()) != expected)
            throw consistency_error("quotient: intermediate count mismatch");
    }

    const GroupFamily& family() const { return fam_; }
    const Subquotient& subquotient() const { return sq_; }
    int rank() const { return q_; }
    const std::vector<FpVector>& section() const { return section_; }
    const std::vector<Subspace>& intermediates() const { return intermediates_; }

    // image of an intermediate subgroup in GF(p)^q coordinates
    Subspace to_quotient(const Subspace& D) const {
        PrimeField F(fam_.p());
        std::vector<FpVector> span = sq_.bottom.basis();
        span.insert(span.end(), section_.begin(), section_.end());
        std::vector<FpVector> rows;
        for (const auto& d : D.basis()) {
            auto coeffs = gfp::express_in_span(F, span, d);
            if (!coeffs) throw domain_error("to_quotient: subgroup not inside top");
            FpVector img(static_cast<std::size_t>(q_));
            for (int j = 0; j < q_; ++j)
                img[static_cast<std::size_t>(j)] =
                    (*coeffs)[sq_.bottom.basis().size() + static_cast<std::size_t>(j)];
            rows.push_back(std::move(img));
        }
        return gfp::canonicalize(F, q_, rows);
    }

    // preimage in the ambient group (always contains the bottom)
    Subspace from_quotient(const Subspace& dbar) const {
        if (dbar.ambient_dim() != q_)
            throw domain_error("from_quotient: wrong quotient ambient");
        PrimeField F(fam_.p());
        std::vector<FpVector> rows = sq_.bottom.basis();
        for (const auto& rb : dbar.basis()) {
            FpVector lift(static_cast<std::size_t>(fam_.ambient_dim()));
            for (int j = 0; j < q_; ++j)
                if (rb[static_cast<std::size_t>(j)] != 0)
                    lift = gfp::add(F, lift,
                                    gfp::scale(F, rb[static_cast<std::size_t>(j)],
                                               section_[static_cast<std::size_t>(j)]));
            rows.push_back(std::move(lift));
        }
        return gfp::canonicalize(F, fam_.ambient_dim(), rows);
    }

private:
    GroupFamily fam_;
    Subquotient sq_;
    int q_ = 0;
    std::vector<FpVector> section_;
    std::vector<Subspace> intermediates_;
};

// A(L/C) -> A(G~): the class of D goes to the transitive set G~/D.
inline Element induce(const GroupFamily& fam, const Subquotient& sq,
                      const std::vector<Int>& x) {
    auto inter = intermediate_subspaces(fam, sq);
    if (x.size() != inter.size())
        throw domain_error("induce: coefficient count does not match the subquotient basis");
    Element out = zero_element(fam);
    for (std::size_t i = 0; i < inter.size(); ++i)
        if (x[i] != 0) out.coeffs[subspace_index(fam, inter[i])] += x[i];
    return out;
}

// A(G~) -> A(Lsub) by orbit counting: G~/D splits over Lsub into
// [G~ : Lsub + D] copies of Lsub/(Lsub ∩ D).
inline std::vector<Int> restrict_to(const GroupFamily& fam, const Subspace& lsub,
                                    const Element& x) {
    if (!(x.family == fam)) throw domain_error("restrict_to: element of a different family");
    const auto& full = full_subspace_basis(fam);
    auto target = subspaces_of(fam, lsub);
    auto position = [&](const Subspace& S) {
        std::size_t lo = 0, hi = target.size();
        const auto key = gfp::element_codes(S);
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (target[mid].dim() < S.dim() ||
                (target[mid].dim() == S.dim() && gfp::element_codes(target[mid]) < key))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == target.size() || !(target[lo] == S))
            throw consistency_error("restrict_to: intersection missing from sublattice");
        return lo;
    };
    std::vector<Int> out(target.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (x.coeffs[i] == 0) continue;
        auto [sum, inter] = gfp::sum_intersect(lsub, full[i]);
        Int multiplier = 1;
        for (int j = 0; j < fam.ambient_dim() - sum.dim(); ++j) multiplier *= fam.p();
        out[position(inter)] += x.coeffs[i] * multiplier;
    }
    return out;
}

// The canonically least overgroup of L by two grades, avoiding the
// distinguished factor whenever the codimension leaves room to do so. At
// codimension exactly 2 the only candidate is the whole group.
inline Subspace choose_Lstar(const GroupFamily& fam, const Subspace& L) {
    const int m = fam.ambient_dim();
    if (L.p() != fam.p() || L.ambient_dim() != m)
        throw domain_error("choose_Lstar: wrong ambient");
    const int codim = m - L.dim();
    if (codim < 2) throw domain_error("choose_Lstar: codimension at least 2 required");
    const FpVector e = fam.distinguished_e();
    const bool must_avoid_e = !gfp::contains(L, e) && codim >= 3;
    for (const auto& cand : gfp::enumerate_subspaces(m, L.dim() + 2, fam.p())) {
        if (!gfp::contains_subspace(cand, L)) continue;
        if (must_avoid_e && gfp::contains(cand, e)) continue;
        return cand;
    }
    throw consistency_error("choose_Lstar: no candidate found");
}

// t(L) = (L) - sum of (C) over the grade-(dim L + 1) subgroups strictly
// between L and L*, plus p(L*); extended linearly. Defined on elements
// supported in grades 0..n-1.
inline Element t_map(const GroupFamily& fam, const Element& x) {
    if (!(x.family == fam)) throw domain_error("t_map: element of a different family");
    const auto& full = full_subspace_basis(fam);
    if (x.coeffs.size() != full.size()) throw domain_error("t_map: coefficient length");
    Element out = zero_element(fam);
    for (std::size_t i = 0; i < full.size(); ++i) {
        const Int& c = x.coeffs[i];
        if (c == 0) continue;
        const Subspace& L = full[i];
        if (L.dim() > fam.n() - 1)
            throw domain_error("t_map: support must have codimension at least 2");
        Subspace lstar = choose_Lstar(fam, L);
        out.coeffs[i] += c;
        out.coeffs[subspace_index(fam, lstar)] += c * fam.p();
        for (const auto& mid : gfp::enumerate_subspaces(fam.ambient_dim(), L.dim() + 1, fam.p()))
            if (gfp::contains_subspace(mid, L) && gfp::contains_subspace(lstar, mid))
                out.coeffs[subspace_index(fam, mid)] -= c;
    }
    return out;
}

inline std::vector<Subspace> t_domain_subspaces(const GroupFamily& fam) {
    std::vector<Subspace> out;
    for (const auto& S : full_subspace_basis(fam))
        if (S.dim() <= fam.n() - 1) out.push_back(S);
    return out;
}

// Matrix of t on its graded domain: rows are the grade-(<= n-1) labels (a
// prefix of the canonical order), columns the full basis.
inline intlat::IntMatrix t_matrix(const GroupFamily& fam) {
    auto domain = t_domain_subspaces(fam);
    const auto& full = full_subspace_basis(fam);
    intlat::IntMatrix t(domain.size(), full.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        Element img = t_map(fam, unit_element(fam, domain[i]));
        for (std::size_t j = 0; j < full.size(); ++j) t.at(i, j) = img.coeffs[j];
    }
    return t;
}

// Differences spanning the grade-(n-1) relation module: the e-avoiding
// grade-(n-1) subgroups fall into classes with common L + <e>, and within
// each class every member pairs against the canonically least one.
inline std::vector<std::pair<Subspace, Subspace>> a_double_prime_basis(
    const GroupFamily& fam) {
    const int n = fam.n();
    PrimeField F(fam.p());
    const FpVector e = fam.distinguished_e();
    std::map<std::size_t, Subspace> least_of_class;  // keyed by index of L + <e>
    std::vector<std::pair<Subspace, Subspace>> pairs;
    for (const auto& L : full_subspace_basis(fam)) {
        if (L.dim() != n - 1 || gfp::contains(L, e)) continue;
        std::vector<FpVector> gens = L.basis();
        gens.push_back(e);
        std::size_t cls = subspace_index(fam, gfp::canonicalize(F, n + 1, gens));
        auto it = least_of_class.find(cls);
        if (it == least_of_class.end())
            least_of_class.emplace(cls, L);  // first member seen is least
        else
            pairs.emplace_back(L, it->second);
    }
    return pairs;
}

// Domain of the relative boundary map: the e-avoiding labels of grade at
// most n-2 (a prefix of the relative basis), then the grade-(n-1) difference
// pairs. On the low part the map is t itself; on a pair it is the difference
// of the two t-images, which cancels both the one-point class and the unique
// e-containing overgroup.
struct TPrimeDomain {
    std::vector<Subspace> low;
    std::vector<std::pair<Subspace, Subspace>> pairs;
    std::size_t size() const { return low.size() + pairs.size(); }
};

inline TPrimeDomain t_prime_domain(const GroupFamily& fam) {
    TPrimeDomain d;
    for (const auto& L : relative_subspaces(fam))
        if (L.dim() <= fam.n() - 2) d.low.push_back(L);
    d.pairs = a_double_prime_basis(fam);
    return d;
}

// Images in full A(G~) coordinates. Restriction to relative coordinates is
// only legal once the support is checked to avoid e; the verifier owns that
// check, so it stays out of here.
inline Element t_prime_image_full(const GroupFamily& fam, const Subspace& L) {
    return t_map(fam, unit_element(fam, L));
}

inline Element t_prime_image_full(const GroupFamily& fam,
                                  const std::pair<Subspace, Subspace>& pr) {
    Element plus = t_map(fam, unit_element(fam, pr.first));
    Element minus = t_map(fam, unit_element(fam, pr.second));
    for (std::size_t i = 0; i < plus.coeffs.size(); ++i)
        plus.coeffs[i] -= minus.coeffs[i];
    return plus;
}

// The rank-one kernel generator of the linearization on Z_p x Z_p:
// the free class minus all classes through the proper cyclic subgroups,
// plus p times the one-point class.
inline Element classical_kernel_generator(int p, const Limits& lim = {}) {
    GroupFamily fam = GroupFamily::elementary_abelian(p, 1, lim);
    const auto& full = full_subspace_basis(fam);
    Element x = zero_element(fam);
    x.coeffs.front() = 1;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (full[i].dim() == 1) x.coeffs[i] = -1;
    x.coeffs.back() = p;
    return x;
}

}  // namespace burnside::ring
