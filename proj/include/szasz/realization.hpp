#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "szasz/conditions.hpp"
#include "szasz/matrix.hpp"

namespace szasz {

struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// System realization P(x) = I + x C (I - x A)^{-1} B of a matrix polynomial
/// with a complete rank-one factorization P(x) = prod_j (I + x u_j v_j*).
/// B stacks the rows v_j*, C collects the columns u_j, and A is the strict
/// upper triangle of BC (A[j][k] = v_j* u_k for j < k), which makes A - BC
/// lower-triangular and A nilpotent: A^d = 0.
struct Realization {
    std::size_t n = 0;  // polynomial size
    std::size_t d = 0;  // factor count
    Matrix A;           // d x d, strictly upper-triangular
    Matrix B;           // d x n
    Matrix C;           // n x d
};

inline Realization build_realization(std::span<const std::vector<cxd>> u,
                                     std::span<const std::vector<cxd>> v) {
    if (u.empty() || u.size() != v.size())
        throw std::invalid_argument("build_realization: need equally many u and v vectors");
    const std::size_t d = u.size();
    const std::size_t n = u.front().size();
    for (std::size_t j = 0; j < d; ++j)
        if (u[j].size() != n || v[j].size() != n)
            throw dimension_error("build_realization: vector length mismatch");

    Realization r;
    r.n = n;
    r.d = d;
    r.B = Matrix(d, n);
    r.C = Matrix(n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            r.B(j, i) = std::conj(v[j][i]);
            r.C(i, j) = u[j][i];
        }
    r.A = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) r.A(j, k) = dot(v[j], u[k]);
    return r;
}

namespace detail {

inline double strict_upper_residual(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i && j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

inline double strict_upper_mismatch(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace detail

/// Validating factory for externally supplied (A, B, C) triples.  Reads the
/// factor vectors off B and C and rejects any A that is not the strict upper
/// triangle of BC.
inline Realization realization_from_parts(std::size_t n, std::size_t d, Matrix a, Matrix b,
                                          Matrix c, double tol = 1e-10) {
    if (n == 0 || d == 0) throw std::invalid_argument("realization_from_parts: empty system");
    if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != n || c.rows() != n ||
        c.cols() != d)
        throw dimension_error("realization_from_parts: shape mismatch");
    const double scale = 1.0 + frobenius_norm(b) * frobenius_norm(c);
    if (detail::strict_upper_residual(a) > tol * (1.0 + frobenius_norm(a)))
        throw structural_error("realization: A is not strictly upper-triangular");
    if (detail::strict_upper_mismatch(a, b * c) > tol * scale)
        throw structural_error("realization: A - BC is not lower-triangular");
    Realization r;
    r.n = n;
    r.d = d;
    r.A = std::move(a);
    r.B = std::move(b);
    r.C = std::move(c);
    return r;
}

/// The rank-one factors u_j v_j* encoded by the realization.
inline std::vector<Matrix> realization_factors(const Realization& r) {
    std::vector<Matrix> factors;
    factors.reserve(r.d);
    for (std::size_t j = 0; j < r.d; ++j) {
        Matrix f(r.n, r.n);
        for (std::size_t i = 0; i < r.n; ++i)
            for (std::size_t k = 0; k < r.n; ++k) f(i, k) = r.C(i, j) * r.B(j, k);
        factors.push_back(f);
    }
    return factors;
}

/// P(x) = I + x C (I - x A)^{-1} B through the finite Neumann series
/// (I - x A)^{-1} = sum_{m<d} (x A)^m, exact because A is nilpotent.
inline Matrix eval_realization(const Realization& r, cxd x) {
    if (detail::strict_upper_residual(r.A) > 1e-10 * (1.0 + frobenius_norm(r.A)) ||
        detail::strict_upper_mismatch(r.A, r.B * r.C) >
            1e-10 * (1.0 + frobenius_norm(r.B) * frobenius_norm(r.C)))
        throw structural_error("eval_realization: structural invariants violated");

    Matrix series = Matrix::identity(r.d);
    Matrix power = Matrix::identity(r.d);
    for (std::size_t m = 1; m < r.d; ++m) {
        power = x * (power * r.A);
        series += power;
    }
    return Matrix::identity(r.n) + x * (r.C * (series * r.B));
}

/// Structural diagnostics plus the two sufficient-condition flags (C close to
/// iB*, entrywise nonnegative B and iC).  Either flag forces the positivity
/// condition; sufficiency_consistent records that the implication held.
struct StructureReport {
    double strict_upper_residual = 0.0;  // mass of A on or below the diagonal
    double lower_shift_residual = 0.0;   // Frobenius mass of strict upper part of A - BC
    double entry_residual = 0.0;         // max |A[j][k] - (BC)[j][k]| over j < k
    double delta_distance = 0.0;         // ||C - iB*||_F
    bool nonneg_B = false;
    bool nonneg_iC = false;
    ConditionVerdict elementary_pos;
    bool sufficiency_consistent = true;
};

inline StructureReport check_structure(const Realization& r, double tol = 1e-12) {
    StructureReport rep;
    rep.strict_upper_residual = detail::strict_upper_residual(r.A);

    const Matrix bc = r.B * r.C;
    rep.entry_residual = detail::strict_upper_mismatch(r.A, bc);
    double upper_mass = 0.0;
    const Matrix shift = r.A - bc;
    for (std::size_t i = 0; i < r.d; ++i)
        for (std::size_t j = i + 1; j < r.d; ++j) upper_mass += std::norm(shift(i, j));
    rep.lower_shift_residual = std::sqrt(upper_mass);

    rep.delta_distance = frobenius_norm(r.C - imag_unit * r.B.adjoint());

    const auto entry_nonneg = [tol](cxd z) {
        return std::abs(z.imag()) <= tol && z.real() >= -tol;
    };
    rep.nonneg_B = true;
    for (const cxd z : r.B.data()) rep.nonneg_B = rep.nonneg_B && entry_nonneg(z);
    rep.nonneg_iC = true;
    for (const cxd z : r.C.data()) rep.nonneg_iC = rep.nonneg_iC && entry_nonneg(imag_unit * z);

    rep.elementary_pos = elementary_pos_check(r.B, r.C);

    const bool sufficient = rep.delta_distance <= tol || (rep.nonneg_B && rep.nonneg_iC);
    rep.sufficiency_consistent = !sufficient || rep.elementary_pos.holds;
    return rep;
}

}  // namespace szasz
