#pragma once

#include "burnside/config.hpp"
#include "burnside/gfp.hpp"

#include <string>

namespace burnside {

enum class FamilyKind { elementary_abelian, cyclic_cross_zp };

// The two group families handled here, each an extension of a base group G by
// one distinguished Z_p factor H:
//   elementary_abelian(p, n): G~ = Z_p^(n+1) = Z_p^n x Z_p
//   cyclic_cross_zp(p, k):    G~ = Z_{p^k} x Z_p
// For the elementary family every subgroup is a subspace of GF(p)^(n+1) and
// the H factor is the last coordinate axis.
class GroupFamily {
public:
    static GroupFamily elementary_abelian(int p, int n, const Limits& lim = {}) {
        validate(p, n, n + 1, lim);
        return GroupFamily(FamilyKind::elementary_abelian, p, n);
    }

    static GroupFamily cyclic_cross_zp(int p, int k, const Limits& lim = {}) {
        validate(p, k, k + 1, lim);
        return GroupFamily(FamilyKind::cyclic_cross_zp, p, k);
    }

    FamilyKind kind() const { return kind_; }
    int p() const { return p_; }

    int n() const {
        require(FamilyKind::elementary_abelian, "n()");
        return param_;
    }
    int k() const {
        require(FamilyKind::cyclic_cross_zp, "k()");
        return param_;
    }

    // GF(p)-dimension of the ambient vector space G~ (elementary family only).
    int ambient_dim() const {
        require(FamilyKind::elementary_abelian, "ambient_dim()");
        return param_ + 1;
    }

    // The generator of the distinguished H factor.
    gfp::FpVector distinguished_e() const {
        return gfp::unit_vector(static_cast<std::size_t>(ambient_dim()),
                                static_cast<std::size_t>(param_));
    }

    Int group_order() const {
        Int order = 1;
        for (int i = 0; i < param_ + 1; ++i) order *= p_;
        return order;
    }

    // Exponent of G~: p for the elementary family, p^k for the cyclic one.
    int exponent() const {
        if (kind_ == FamilyKind::elementary_abelian) return p_;
        int e = 1;
        for (int i = 0; i < param_; ++i) e *= p_;
        return e;
    }

    std::string describe() const {
        if (kind_ == FamilyKind::elementary_abelian)
            return "elementary p=" + std::to_string(p_) + " n=" + std::to_string(param_);
        return "cyclic p=" + std::to_string(p_) + " k=" + std::to_string(param_);
    }

    friend bool operator==(const GroupFamily&, const GroupFamily&) = default;

private:
    GroupFamily(FamilyKind kind, int p, int param)
        : kind_(kind), p_(p), param_(param) {}

    static void validate(int p, int param, int ambient, const Limits& lim) {
        if (!gfp::is_prime(p))
            throw domain_error("GroupFamily: p = " + std::to_string(p) + " is not prime");
        if (param < 1)
            throw domain_error("GroupFamily: family parameter must be at least 1");
        if (p > lim.max_prime)
            throw resource_error("GroupFamily: p = " + std::to_string(p) +
                                 " exceeds cap " + std::to_string(lim.max_prime));
        if (ambient > lim.max_ambient_dim)
            throw resource_error("GroupFamily: ambient rank " + std::to_string(ambient) +
                                 " exceeds cap " + std::to_string(lim.max_ambient_dim));
    }

    void require(FamilyKind expected, const char* what) const {
        if (kind_ != expected)
            throw domain_error(std::string("GroupFamily::") + what +
                               " not defined for this family");
    }

    FamilyKind kind_;
    int p_;
    int param_;  // n for elementary, k for cyclic
};

}  // namespace burnside
