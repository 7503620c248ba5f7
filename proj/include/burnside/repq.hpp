#pragma once

#include "burnside/config.hpp"
#include "burnside/family.hpp"
#include "burnside/gfp.hpp"
#include "burnside/intlat.hpp"
#include "burnside/ring.hpp"

#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

// Rational representation rings. Irreducibles are Galois orbits of complex
// characters; permutation modules decompose by an annihilator rule, guarded
// by an independent cyclotomic-arithmetic oracle. The relative subring is cut
// out as the kernel of an explicit defect functional, which turns every
// question downstream into integer linear algebra.

namespace burnside::repq {

using gfp::FpVector;
using gfp::ProjectivePoint;
using gfp::Subspace;
using ring::TwistPair;

// A rational irreducible of G~. For the elementary family these are the
// trivial module and one orbit per projective point of the dual; for the
// cyclic family the labels are (nu, phi) with the identifications
// F(0,0) = trivial and F(0,phi) = F(0,1).
struct Irreducible {
    enum class Kind { trivial, orbit_point, orbit_nuphi };
    Kind kind = Kind::trivial;
    ProjectivePoint point{};  // orbit_point only
    int nu = 0, phi = 0;      // orbit_nuphi only

    static Irreducible make_trivial() { return {}; }
    static Irreducible make_point(ProjectivePoint pt) {
        Irreducible i;
        i.kind = Kind::orbit_point;
        i.point = std::move(pt);
        return i;
    }
    static Irreducible make_nuphi(int nu, int phi) {
        Irreducible i;
        i.kind = Kind::orbit_nuphi;
        i.nu = nu;
        i.phi = phi;
        return i;
    }

    friend bool operator==(const Irreducible&, const Irreducible&) = default;
};

inline std::vector<Irreducible> irreducibles(const GroupFamily& fam) {
    std::vector<Irreducible> out{Irreducible::make_trivial()};
    if (fam.kind() == FamilyKind::elementary_abelian) {
        for (auto& pt : gfp::projective_points(fam.ambient_dim(), fam.p()))
            out.push_back(Irreducible::make_point(std::move(pt)));
    } else {
        out.push_back(Irreducible::make_nuphi(0, 1));
        for (int nu = 1; nu <= fam.k(); ++nu)
            for (int phi = 0; phi < fam.p(); ++phi)
                out.push_back(Irreducible::make_nuphi(nu, phi));
    }
    return out;
}

inline Int irreducible_dim(const GroupFamily& fam, const Irreducible& irr) {
    switch (irr.kind) {
        case Irreducible::Kind::trivial: return 1;
        case Irreducible::Kind::orbit_point: return fam.p() - 1;
        case Irreducible::Kind::orbit_nuphi: {
            if (irr.nu == 0) return fam.p() - 1;
            Int d = fam.p() - 1;
            for (int i = 1; i < irr.nu; ++i) d *= fam.p();
            return d;
        }
    }
    throw consistency_error("irreducible_dim: unreachable");
}

// Multiplicities of the irreducibles of Z_p^m in the permutation module on
// the cosets of L: the trivial module once, plus one copy of the orbit of s
// for every projective point s annihilating L. Written against (p, ambient)
// rather than a family so quotient groups of any rank can reuse it.
inline std::vector<Int> perm_decomposition(int p, const Subspace& L) {
    Subspace ann = gfp::annihilator(L);
    auto pts = gfp::projective_points(L.ambient_dim(), p);
    std::vector<Int> out(1 + pts.size());
    out[0] = 1;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (gfp::contains(ann, pts[i].rep)) out[1 + i] = 1;
    return out;
}

// Is the character (a, b) of Z_{p^k} x Z_p trivial on the graph subgroup
// (nu, rho)? Test on the generator (p^(k-nu), rho).
inline bool cyclic_char_trivial_on(const GroupFamily& fam, int a, int b,
                                   const TwistPair& t) {
    const int pk = fam.exponent();
    const int pk1 = pk / fam.p();  // p^(k-1)
    int gen_first = 1;
    for (int i = 0; i < fam.k() - t.nu; ++i) gen_first *= fam.p();
    long long e = static_cast<long long>(a) * gen_first +
                  static_cast<long long>(b) * t.rho % fam.p() * pk1;
    return e % pk == 0;
}

inline std::vector<Int> decompose_perm(const GroupFamily& fam,
                                       const ring::BasisElement& label) {
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const auto* L = std::get_if<Subspace>(&label);
        if (!L) throw domain_error("decompose_perm: subspace label expected");
        if (L->ambient_dim() != fam.ambient_dim() || L->p() != fam.p())
            throw domain_error("decompose_perm: label from a different group");
        return perm_decomposition(fam.p(), *L);
    }
    const auto* t = std::get_if<TwistPair>(&label);
    if (!t) throw domain_error("decompose_perm: twist label expected");
    ring::validate_twist(fam, *t);
    auto irr = irreducibles(fam);
    std::vector<Int> out(irr.size());
    out[0] = 1;
    for (std::size_t i = 1; i < irr.size(); ++i) {
        // one representative decides for the whole Galois orbit
        int a, b;
        if (irr[i].nu == 0) {
            a = 0;
            b = 1;
        } else {
            a = 1;
            for (int j = 0; j < fam.k() - irr[i].nu; ++j) a *= fam.p();
            b = irr[i].phi;
        }
        if (cyclic_char_trivial_on(fam, a, b, *t)) out[i] = 1;
    }
    return out;
}

// All characters in the Galois orbit of an irreducible, as exponent labels:
// an FpVector s for the elementary family, a pair (a, b) for the cyclic one.
using CharacterLabel = std::variant<FpVector, std::pair<int, int>>;

inline std::vector<CharacterLabel> orbit_members(const GroupFamily& fam,
                                                 const Irreducible& irr) {
    std::vector<CharacterLabel> out;
    if (fam.kind() == FamilyKind::elementary_abelian) {
        if (irr.kind == Irreducible::Kind::trivial) {
            out.emplace_back(FpVector(static_cast<std::size_t>(fam.ambient_dim())));
            return out;
        }
        gfp::PrimeField F(fam.p());
        for (int u = 1; u < fam.p(); ++u)
            out.emplace_back(gfp::scale(F, u, irr.point.rep));
        return out;
    }
    const int pk = fam.exponent();
    if (irr.kind == Irreducible::Kind::trivial) {
        out.emplace_back(std::make_pair(0, 0));
        return out;
    }
    if (irr.nu == 0) {
        for (int b = 1; b < fam.p(); ++b) out.emplace_back(std::make_pair(0, b));
        return out;
    }
    int a0 = 1;
    for (int j = 0; j < fam.k() - irr.nu; ++j) a0 *= fam.p();
    std::set<std::pair<int, int>> seen;
    for (int u = 1; u < pk; ++u) {
        if (u % fam.p() == 0) continue;  // not a unit
        seen.insert({static_cast<int>((static_cast<long long>(u) * a0) % pk),
                     (u * irr.phi) % fam.p()});
    }
    for (const auto& ab : seen) out.emplace_back(ab);
    return out;
}

namespace detail {

// Does the group element lie in the labelled subgroup?
inline bool label_contains(const GroupFamily& fam, const ring::BasisElement& label,
                           const std::vector<int>& g) {
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const auto& L = std::get<Subspace>(label);
        FpVector v;
        v.c = g;
        return gfp::contains(L, v);
    }
    const auto& t = std::get<TwistPair>(label);
    if (t.nu == 0) return g[0] == 0 && g[1] == 0;
    int step = 1;
    for (int i = 0; i < fam.k() - t.nu; ++i) step *= fam.p();
    if (g[0] % step != 0) return false;
    return (g[0] / step) % fam.p() * t.rho % fam.p() == g[1] % fam.p();
}

inline Int label_index(const GroupFamily& fam, const ring::BasisElement& label) {
    // |G~ / L|
    int log_size = fam.kind() == FamilyKind::elementary_abelian
                       ? std::get<Subspace>(label).dim()
                       : std::get<TwistPair>(label).nu;
    Int idx = fam.group_order();
    for (int i = 0; i < log_size; ++i) idx /= fam.p();
    return idx;
}

// character exponent of the label at g, modulo the exponent of the group
inline int char_exponent(const GroupFamily& fam, const CharacterLabel& chi,
                         const std::vector<int>& g) {
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const auto& s = std::get<FpVector>(chi);
        long long e = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            e += static_cast<long long>(s[i]) * g[i];
        return static_cast<int>(e % fam.p());
    }
    const auto [a, b] = std::get<std::pair<int, int>>(chi);
    const int pk = fam.exponent();
    long long e = static_cast<long long>(a) * g[0] +
                  static_cast<long long>(b) * g[1] % fam.p() * (pk / fam.p());
    return static_cast<int>(e % pk);
}

}  // namespace detail

// Independent multiplicity computation: the inner product of the permutation
// character with the orbit character, evaluated in Z[x]/Phi_m(x) with m the
// exponent of G~. Both final divisions (by |G~| and by the orbit size) must
// be exact and the cyclotomic reduction must collapse to a constant; anything
// else is a hard internal error, never a return value.
inline Int character_oracle(const GroupFamily& fam, const ring::BasisElement& label,
                            const Irreducible& irr) {
    const int m = fam.exponent();
    const int p = fam.p();
    const int phi_deg = (m / p) * (p - 1);  // degree of Phi_m

    auto orbit = orbit_members(fam, irr);
    const Int index = detail::label_index(fam, label);

    std::vector<Int> poly(static_cast<std::size_t>(m));

    // iterate over every group element
    std::vector<int> radix;
    if (fam.kind() == FamilyKind::elementary_abelian)
        radix.assign(static_cast<std::size_t>(fam.ambient_dim()), p);
    else
        radix = {m, p};
    std::vector<int> g(radix.size(), 0);
    while (true) {
        if (detail::label_contains(fam, label, g)) {
            std::vector<int> neg(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                neg[i] = (radix[i] - g[i]) % radix[i];
            for (const auto& chi : orbit)
                poly[static_cast<std::size_t>(detail::char_exponent(fam, chi, neg))] +=
                    index;
        }
        std::size_t pos = g.size();
        while (pos > 0 && g[pos - 1] == radix[pos - 1] - 1) g[--pos] = 0;
        if (pos == 0) break;
        ++g[pos - 1];
    }

    // reduce modulo Phi_m(x) = sum_{i<p} x^(i*m/p)
    const int block = m / p;
    for (int pos = m - 1; pos >= phi_deg; --pos) {
        Int c = poly[static_cast<std::size_t>(pos)];
        if (c == 0) continue;
        poly[static_cast<std::size_t>(pos)] = 0;
        for (int i = 0; i + 1 < p; ++i)
            poly[static_cast<std::size_t>(pos - phi_deg + i * block)] -= c;
    }
    for (int j = 1; j < phi_deg; ++j)
        if (poly[static_cast<std::size_t>(j)] != 0)
            throw consistency_error("character_oracle: inner product not rational");

    Int total = poly[0];
    const Int order = fam.group_order();
    if (total % order != 0)
        throw consistency_error("character_oracle: inner product not integral");
    total /= order;
    const Int orbit_size = Int(orbit.size());
    if (total % orbit_size != 0)
        throw consistency_error("character_oracle: orbit multiplicity not integral");
    total /= orbit_size;
    if (total < 0)
        throw consistency_error("character_oracle: negative multiplicity");
    return total;
}

// The defect functional cutting out the relative representation module: zero
// exactly on the virtual modules that are free over the distinguished Z_p.
inline Int delta_value(const GroupFamily& fam, const Irreducible& irr) {
    switch (irr.kind) {
        case Irreducible::Kind::trivial: return 1;
        case Irreducible::Kind::orbit_point: {
            const auto& rep = irr.point.rep;
            return rep[rep.size() - 1] != 0 ? Int(-1) : Int(fam.p() - 1);
        }
        case Irreducible::Kind::orbit_nuphi: {
            if (irr.nu == 0) return -1;
            Int scale = 1;
            for (int i = 1; i < irr.nu; ++i) scale *= fam.p();
            return irr.phi != 0 ? Int(-scale) : Int(scale * (fam.p() - 1));
        }
    }
    throw consistency_error("delta_value: unreachable");
}

// A virtual rational representation in irreducible coordinates.
struct RepElement {
    GroupFamily family;
    std::vector<Int> coeffs;
};

inline Int delta_defect(const GroupFamily& fam, const std::vector<Int>& coeffs) {
    auto irr = irreducibles(fam);
    if (coeffs.size() != irr.size())
        throw domain_error("delta_defect: coefficient length mismatch");
    Int d = 0;
    for (std::size_t i = 0; i < irr.size(); ++i)
        if (coeffs[i] != 0) d += coeffs[i] * delta_value(fam, irr[i]);
    return d;
}

inline Int delta_defect(const RepElement& x) { return delta_defect(x.family, x.coeffs); }

inline Int virtual_dimension(const GroupFamily& fam, const std::vector<Int>& coeffs) {
    auto irr = irreducibles(fam);
    Int d = 0;
    for (std::size_t i = 0; i < irr.size(); ++i)
        d += coeffs[i] * irreducible_dim(fam, irr[i]);
    return d;
}

// Z-basis of the kernel of the defect functional. Elementary family: the
// orbit of (s', 1) plus trivial for each s' in the base group (lex order),
// then the orbit of (t, 0) minus (p-1) trivial for each projective t of the
// base. Cyclic family: the analogous corrections by powers of p, in (nu, phi)
// order.
inline std::vector<RepElement> relative_rep_basis(const GroupFamily& fam) {
    auto irr = irreducibles(fam);
    auto index_of_point = [&](const ProjectivePoint& pt) {
        // irreducibles holds points in ascending order after the trivial slot
        std::size_t lo = 1, hi = irr.size();
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (irr[mid].point < pt) lo = mid + 1;
            else hi = mid;
        }
        if (lo == irr.size() || !(irr[lo].point == pt))
            throw consistency_error("relative_rep_basis: orbit missing");
        return lo;
    };

    std::vector<RepElement> out;
    gfp::PrimeField F(fam.p());
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const int n = fam.n();
        std::int64_t count = 1;
        for (int i = 0; i < n; ++i) count *= fam.p();
        for (std::int64_t code = 0; code < count; ++code) {
            FpVector s = gfp::decode(code, n, fam.p());
            s.c.push_back(1);
            std::vector<Int> c(irr.size());
            c[index_of_point(gfp::normalize_point(F, s))] = 1;
            c[0] += 1;
            out.push_back({fam, std::move(c)});
        }
        for (const auto& t : gfp::projective_points(n, fam.p())) {
            FpVector s = t.rep;
            s.c.push_back(0);
            std::vector<Int> c(irr.size());
            c[index_of_point(gfp::normalize_point(F, s))] = 1;
            c[0] -= fam.p() - 1;
            out.push_back({fam, std::move(c)});
        }
        return out;
    }

    for (std::size_t i = 1; i < irr.size(); ++i) {
        std::vector<Int> c(irr.size());
        c[i] = 1;
        if (irr[i].nu == 0) {
            c[0] += 1;
        } else {
            Int scale = 1;
            for (int j = 1; j < irr[i].nu; ++j) scale *= fam.p();
            if (irr[i].phi != 0) c[0] += scale;
            else c[0] -= scale * (fam.p() - 1);
        }
        out.push_back({fam, std::move(c)});
    }
    return out;
}

inline intlat::IntMatrix rep_basis_matrix(const GroupFamily& fam) {
    auto basis = relative_rep_basis(fam);
    const std::size_t r = irreducibles(fam).size();
    intlat::IntMatrix b(basis.size(), r);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) b.at(i, j) = basis[i].coeffs[j];
    return b;
}

// Linearization in irreducible coordinates: rows are Burnside basis labels
// (the full subgroup basis for the elementary family, the relative twist
// basis for the cyclic one), columns the irreducibles.
inline intlat::IntMatrix f_matrix(const GroupFamily& fam) {
    const std::size_t r = irreducibles(fam).size();
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const auto& full = ring::full_subspace_basis(fam);
        intlat::IntMatrix f(full.size(), r);
        for (std::size_t i = 0; i < full.size(); ++i) {
            auto row = perm_decomposition(fam.p(), full[i]);
            for (std::size_t j = 0; j < r; ++j) f.at(i, j) = row[j];
        }
        return f;
    }
    auto pairs = ring::twist_pairs(fam);
    intlat::IntMatrix f(pairs.size(), r);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto row = decompose_perm(fam, ring::BasisElement{pairs[i]});
        for (std::size_t j = 0; j < r; ++j) f.at(i, j) = row[j];
    }
    return f;
}

// The relative linearization: decompositions of the relative basis labels,
// re-expressed over relative_rep_basis by an exact integer solve. Both the
// zero defect of each row and the integrality of the solve are consistency
// requirements, not user-facing failure modes.
inline intlat::IntMatrix f_prime_matrix(const GroupFamily& fam) {
    intlat::IntMatrix rep_basis = rep_basis_matrix(fam);
    std::vector<ring::BasisElement> labels = ring::relative_basis(fam);
    intlat::IntMatrix fp(labels.size(), rep_basis.rows());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::vector<Int> d = decompose_perm(fam, labels[i]);
        if (delta_defect(fam, d) != 0)
            throw consistency_error("f_prime_matrix: image has nonzero defect");
        auto sol = intlat::solve_row_system(rep_basis, d);
        if (!sol)
            throw consistency_error("f_prime_matrix: image not integral over the relative basis");
        for (std::size_t j = 0; j < rep_basis.rows(); ++j) fp.at(i, j) = (*sol)[j];
    }
    return fp;
}

// Column transport of induction to the representation side, for a rank-q
// elementary subquotient: the orbit of s contributes to the quotient orbit of
// its restriction (through the section), or to the trivial row when the
// restriction dies. Rows are the quotient irreducibles (trivial, then the
// projective points of GF(p)^q), columns the ambient irreducibles.
inline intlat::IntMatrix induce_rep_matrix(const GroupFamily& fam,
                                           const ring::QuotientPresentation& q) {
    const int p = fam.p();
    gfp::PrimeField F(p);
    auto ambient_pts = gfp::projective_points(fam.ambient_dim(), p);
    auto quotient_pts = gfp::projective_points(q.rank(), p);
    Subspace annC = gfp::annihilator(q.subquotient().bottom);

    auto quotient_row = [&](const FpVector& tbar) -> std::size_t {
        ProjectivePoint key = gfp::normalize_point(F, tbar);
        std::size_t lo = 0, hi = quotient_pts.size();
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (quotient_pts[mid] < key) lo = mid + 1;
            else hi = mid;
        }
        if (lo == quotient_pts.size() || !(quotient_pts[lo] == key))
            throw consistency_error("induce_rep_matrix: restricted orbit missing");
        return 1 + lo;
    };

    intlat::IntMatrix m(1 + quotient_pts.size(), 1 + ambient_pts.size());
    m.at(0, 0) = 1;  // trivial restricts to trivial
    for (std::size_t j = 0; j < ambient_pts.size(); ++j) {
        const FpVector& s = ambient_pts[j].rep;
        if (!gfp::contains(annC, s)) continue;  // does not factor through L/C
        FpVector tbar(static_cast<std::size_t>(q.rank()));
        for (int t = 0; t < q.rank(); ++t)
            tbar[static_cast<std::size_t>(t)] =
                gfp::dot(F, s, q.section()[static_cast<std::size_t>(t)]);
        if (tbar.is_zero()) m.at(0, 1 + j) = 1;
        else m.at(quotient_row(tbar), 1 + j) = 1;
    }
    return m;
}

}  // namespace burnside::repq
