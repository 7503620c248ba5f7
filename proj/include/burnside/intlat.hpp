#pragma once

#include "burnside/config.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Exact linear algebra over the integers: Hermite and Smith normal forms with
// unimodular transforms, saturated kernel lattices, and the lattice operations
// (membership, sum, intersection, saturation) the verification layer leans on.
// Row convention throughout: vectors are rows, a lattice is the row span of
// its basis matrix, and maps act on the right.

namespace burnside::intlat {

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows,
                               std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw domain_error("IntMatrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const {
        return std::vector<Int>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
    }

    IntMatrix rows_slice(std::size_t from, std::size_t to) const {
        IntMatrix m(to - from, cols_);
        for (std::size_t i = from; i < to; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i - from, j) = at(i, j);
        return m;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_)
            throw domain_error("IntMatrix: product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a.at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

inline IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.cols() != bottom.cols())
        throw domain_error("stack: column mismatch");
    IntMatrix m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) m.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j)
            m.at(top.rows() + i, j) = bottom.at(i, j);
    return m;
}

inline std::vector<Int> apply_row(const std::vector<Int>& x, const IntMatrix& m) {
    if (x.size() != m.rows()) throw domain_error("apply_row: shape mismatch");
    std::vector<Int> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m.at(i, j);
    }
    return out;
}

// Floor division; cpp_int's built-in / truncates toward zero.
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// u * input = h with u unimodular; the nonzero rows of h (pivot entries
// positive, entries above a pivot reduced into [0, pivot), pivot columns
// strictly increasing) are the Hermite normal form, and zero rows sink to the
// bottom so the trailing rows of u span the left kernel.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
};

inline HnfResult hnf_decompose(IntMatrix h) {
    const std::size_t r = h.rows(), c = h.cols();
    IntMatrix u = IntMatrix::identity(r);

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(h.at(a, j), h.at(b, j));
        for (std::size_t j = 0; j < r; ++j) std::swap(u.at(a, j), u.at(b, j));
    };
    auto sub_scaled = [&](std::size_t dst, const Int& q, std::size_t src) {
        if (q == 0) return;
        for (std::size_t j = 0; j < c; ++j) h.at(dst, j) -= q * h.at(src, j);
        for (std::size_t j = 0; j < r; ++j) u.at(dst, j) -= q * u.at(src, j);
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < c; ++j) h.at(i, j) = -h.at(i, j);
        for (std::size_t j = 0; j < r; ++j) u.at(i, j) = -u.at(i, j);
    };

    std::size_t pr = 0;
    for (std::size_t col = 0; col < c && pr < r; ++col) {
        while (true) {
            std::size_t best = r;
            for (std::size_t i = pr; i < r; ++i) {
                if (h.at(i, col) == 0) continue;
                if (best == r || abs(h.at(i, col)) < abs(h.at(best, col))) best = i;
            }
            if (best == r) break;
            swap_rows(pr, best);
            bool cleared = true;
            for (std::size_t i = pr + 1; i < r; ++i) {
                if (h.at(i, col) == 0) continue;
                sub_scaled(i, fdiv(h.at(i, col), h.at(pr, col)), pr);
                if (h.at(i, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h.at(pr, col) == 0) continue;
        if (h.at(pr, col) < 0) negate_row(pr);
        for (std::size_t i = 0; i < pr; ++i)
            sub_scaled(i, fdiv(h.at(i, col), h.at(pr, col)), pr);
        ++pr;
    }
    return HnfResult{std::move(h), std::move(u), pr};
}

inline std::size_t matrix_rank(const IntMatrix& m) { return hnf_decompose(m).rank; }

// A subgroup of Z^ambient, held by its Hermite basis so that structural
// equality is equality of lattices.
class IntegerLattice {
public:
    static IntegerLattice zero(std::size_t ambient) {
        return IntegerLattice(ambient, IntMatrix(0, ambient));
    }
    static IntegerLattice full(std::size_t ambient) {
        return IntegerLattice(ambient, IntMatrix::identity(ambient));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }

    friend bool operator==(const IntegerLattice&, const IntegerLattice&) = default;

private:
    IntegerLattice(std::size_t ambient, IntMatrix hnf_basis)
        : ambient_(ambient), basis_(std::move(hnf_basis)) {}

    std::size_t ambient_;
    IntMatrix basis_;  // rank x ambient, Hermite form, no zero rows

    friend IntegerLattice hnf(const IntMatrix&);
};

// Row span of the generators as a lattice.
inline IntegerLattice hnf(const IntMatrix& generators) {
    HnfResult d = hnf_decompose(generators);
    return IntegerLattice(generators.cols(), d.h.rows_slice(0, d.rank));
}

inline bool lattice_equal(const IntegerLattice& a, const IntegerLattice& b) {
    return a == b;
}

// left * input * right = diag(diagonal), both transforms unimodular,
// d_i >= 0 and d_i | d_{i+1}.
struct SmithForm {
    std::vector<Int> diagonal;
    IntMatrix left;
    IntMatrix right;
};

inline SmithForm snf(IntMatrix s) {
    const std::size_t r = s.rows(), c = s.cols();
    IntMatrix left = IntMatrix::identity(r);
    IntMatrix right = IntMatrix::identity(c);

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(s.at(a, j), s.at(b, j));
        for (std::size_t j = 0; j < r; ++j) std::swap(left.at(a, j), left.at(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < r; ++i) std::swap(s.at(i, a), s.at(i, b));
        for (std::size_t i = 0; i < c; ++i) std::swap(right.at(i, a), right.at(i, b));
    };
    auto row_sub = [&](std::size_t dst, const Int& q, std::size_t src) {
        if (q == 0) return;
        for (std::size_t j = 0; j < c; ++j) s.at(dst, j) -= q * s.at(src, j);
        for (std::size_t j = 0; j < r; ++j) left.at(dst, j) -= q * left.at(src, j);
    };
    auto col_sub = [&](std::size_t dst, const Int& q, std::size_t src) {
        if (q == 0) return;
        for (std::size_t i = 0; i < r; ++i) s.at(i, dst) -= q * s.at(i, src);
        for (std::size_t i = 0; i < c; ++i) right.at(i, dst) -= q * right.at(i, src);
    };

    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing submatrix into (t, t)
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (s.at(i, j) == 0) continue;
                    if (bi == r || abs(s.at(i, j)) < abs(s.at(bi, bj))) { bi = i; bj = j; }
                }
            if (bi == r) break;  // trailing submatrix all zero
            swap_rows(t, bi);
            swap_cols(t, bj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i)
                if (s.at(i, t) != 0) {
                    row_sub(i, fdiv(s.at(i, t), s.at(t, t)), t);
                    if (s.at(i, t) != 0) dirty = true;
                }
            for (std::size_t j = t + 1; j < c; ++j)
                if (s.at(t, j) != 0) {
                    col_sub(j, fdiv(s.at(t, j), s.at(t, t)), t);
                    if (s.at(t, j) != 0) dirty = true;
                }
            if (dirty) continue;

            // pivot row and column clear; enforce divisibility into the rest
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_sub(t, Int(-1), i);  // pulls row i into row t
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s.at(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j) s.at(t, j) = -s.at(t, j);
            for (std::size_t j = 0; j < r; ++j) left.at(t, j) = -left.at(t, j);
        }
    }

    SmithForm out;
    out.diagonal.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = s.at(t, t);
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

// Left kernel {x : x * m = 0}, always saturated: the kernel rows of the
// unimodular transform from the Hermite pass generate it exactly.
inline IntegerLattice kernel_lattice(const IntMatrix& m) {
    HnfResult d = hnf_decompose(m);
    IntMatrix gens(m.rows() - d.rank, m.rows());
    for (std::size_t i = d.rank; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            gens.at(i - d.rank, j) = d.u.at(i, j);
    return hnf(gens);
}

// Integer x with x * b = target, if one exists. Back-substitution through the
// Hermite form; any failure of exact divisibility means no integer solution.
inline std::optional<std::vector<Int>> solve_row_system(const IntMatrix& b,
                                                        const std::vector<Int>& target) {
    if (target.size() != b.cols())
        throw domain_error("solve_row_system: target length mismatch");
    HnfResult d = hnf_decompose(b);
    std::vector<Int> residual = target;
    std::vector<Int> y(b.rows());
    for (std::size_t i = 0; i < d.rank; ++i) {
        std::size_t piv = 0;
        while (d.h.at(i, piv) == 0) ++piv;
        if (residual[piv] % d.h.at(i, piv) != 0) return std::nullopt;
        Int q = residual[piv] / d.h.at(i, piv);
        if (q != 0)
            for (std::size_t j = 0; j < b.cols(); ++j) residual[j] -= q * d.h.at(i, j);
        y[i] = q;
    }
    for (const Int& v : residual)
        if (v != 0) return std::nullopt;
    std::vector<Int> x(b.rows());
    for (std::size_t i = 0; i < d.rank; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < b.rows(); ++j) x[j] += y[i] * d.u.at(i, j);
    }
    return x;
}

inline bool member(const std::vector<Int>& v, const IntegerLattice& lat) {
    if (v.size() != lat.ambient_dim())
        throw domain_error("member: vector length mismatch");
    std::vector<Int> r = v;
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        std::size_t piv = 0;
        while (lat.basis().at(i, piv) == 0) ++piv;
        const Int& d = lat.basis().at(i, piv);
        if (r[piv] % d != 0) return false;
        Int q = r[piv] / d;
        if (q != 0)
            for (std::size_t j = 0; j < lat.ambient_dim(); ++j)
                r[j] -= q * lat.basis().at(i, j);
    }
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

inline bool lattice_contains(const IntegerLattice& outer, const IntegerLattice& inner) {
    if (outer.ambient_dim() != inner.ambient_dim())
        throw domain_error("lattice_contains: ambient mismatch");
    for (std::size_t i = 0; i < inner.rank(); ++i)
        if (!member(inner.basis().row(i), outer)) return false;
    return true;
}

inline IntegerLattice lattice_sum(std::size_t ambient,
                                  const std::vector<IntegerLattice>& parts) {
    std::size_t total = 0;
    for (const auto& l : parts) {
        if (l.ambient_dim() != ambient)
            throw domain_error("lattice_sum: ambient mismatch");
        total += l.rank();
    }
    IntMatrix gens(total, ambient);
    std::size_t at = 0;
    for (const auto& l : parts)
        for (std::size_t i = 0; i < l.rank(); ++i, ++at)
            for (std::size_t j = 0; j < ambient; ++j)
                gens.at(at, j) = l.basis().at(i, j);
    return hnf(gens);
}

// Rows (x, y) of the kernel of [B1; -B2] satisfy x*B1 = y*B2, so the x-parts
// pushed through B1 sweep out exactly the intersection.
inline IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw domain_error("lattice_intersect: ambient mismatch");
    if (a.rank() == 0 || b.rank() == 0) return IntegerLattice::zero(a.ambient_dim());
    IntMatrix neg_b(b.rank(), b.ambient_dim());
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.ambient_dim(); ++j)
            neg_b.at(i, j) = -b.basis().at(i, j);
    IntegerLattice ker = kernel_lattice(stack(a.basis(), neg_b));
    IntMatrix gens(ker.rank(), a.ambient_dim());
    for (std::size_t i = 0; i < ker.rank(); ++i) {
        std::vector<Int> x(a.rank());
        for (std::size_t j = 0; j < a.rank(); ++j) x[j] = ker.basis().at(i, j);
        std::vector<Int> v = apply_row(x, a.basis());
        for (std::size_t j = 0; j < a.ambient_dim(); ++j) gens.at(i, j) = v[j];
    }
    return hnf(gens);
}

// Smallest lattice of the same rank whose quotient in Z^n is torsion-free:
// the double orthogonal complement.
inline IntegerLattice saturate(const IntegerLattice& lat) {
    IntegerLattice ortho = kernel_lattice(lat.basis().transpose());
    return kernel_lattice(ortho.basis().transpose());
}

// Fraction-free Bareiss elimination; every interior division is exact.
inline Int determinant(IntMatrix a) {
    if (a.rows() != a.cols()) throw domain_error("determinant: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

// Criteria for exactness of  A --alpha--> B --beta--> C  at B over Z.
// image_equals_kernel is the direct verdict; the other flags are the cheap
// hypotheses that together force it, so agreement between the two routes is
// itself a checkable invariant.
struct ExactnessReport {
    bool composite_zero = false;
    bool alpha_injective = false;
    bool cokernel_alpha_torsion_free = false;
    bool rank_additive = false;
    bool image_equals_kernel = false;

    bool hypotheses_hold() const {
        return composite_zero && alpha_injective &&
               cokernel_alpha_torsion_free && rank_additive;
    }
    // hypotheses must never hold while the direct comparison fails
    bool consistent() const { return !hypotheses_hold() || image_equals_kernel; }
};

inline ExactnessReport check_short_exact(const IntMatrix& alpha, const IntMatrix& beta) {
    if (alpha.cols() != beta.rows())
        throw domain_error("check_short_exact: alpha codomain != beta domain");
    ExactnessReport rep;
    rep.composite_zero = (alpha * beta).is_zero();
    rep.alpha_injective = matrix_rank(alpha) == alpha.rows();

    SmithForm s = snf(alpha);
    rep.cokernel_alpha_torsion_free = true;
    for (const Int& d : s.diagonal)
        if (d != 0 && d != 1) rep.cokernel_alpha_torsion_free = false;

    rep.rank_additive =
        matrix_rank(alpha) + matrix_rank(beta) == beta.rows();
    rep.image_equals_kernel = hnf(alpha) == kernel_lattice(beta);
    return rep;
}

}  // namespace burnside::intlat
