#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "szasz/matrix.hpp"

namespace szasz {

inline constexpr double kVerdictSlack = 1e-10;

/// Signed quantity whose non-negativity gates a bound, plus the verdict.
/// Boundary instances (value exactly 0 up to rounding) count as holding.
struct ConditionVerdict {
    double value = 0.0;
    bool holds = false;
    double slack = kVerdictSlack;
};

inline ConditionVerdict make_verdict(double value, double slack = kVerdictSlack) {
    return {value, value >= -slack, slack};
}

/// sum_{j<k} Im b_j Im b_k; empty (value 0) for a single factor.
inline ConditionVerdict scalar_location_sum(std::span<const cxd> b,
                                            double slack = kVerdictSlack) {
    if (b.empty()) throw std::invalid_argument("scalar_location_sum: empty factor list");
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < b.size(); ++j)
        for (std::size_t k = j + 1; k < b.size(); ++k) total += b[j].imag() * b[k].imag();
    return make_verdict(total, slack);
}

/// (d-1) (mean Im)^2 - var Im with the population variance; same sign as
/// scalar_location_sum (they differ by the positive factor d/2).
inline ConditionVerdict var_semis_check(std::span<const cxd> b, double slack = kVerdictSlack) {
    if (b.empty()) throw std::invalid_argument("var_semis_check: empty factor list");
    const double d = double(b.size());
    double mean = 0.0;
    for (const cxd z : b) mean += z.imag();
    mean /= d;
    double var = 0.0;
    for (const cxd z : b) var += (z.imag() - mean) * (z.imag() - mean);
    var /= d;
    return make_verdict((d - 1.0) * mean * mean - var, slack);
}

/// sum_{j<k} tr(Im B_j Im B_k); the imaginary residue of each trace is
/// discarded (it is zero in exact arithmetic for Hermitian factors).
inline ConditionVerdict matrix_location_sum(std::span<const Matrix> b,
                                            double slack = kVerdictSlack) {
    if (b.empty()) throw std::invalid_argument("matrix_location_sum: empty factor list");
    std::vector<Matrix> ims;
    ims.reserve(b.size());
    for (const Matrix& m : b) ims.push_back(skew_part(m));
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < ims.size(); ++j)
        for (std::size_t k = j + 1; k < ims.size(); ++k)
            total += std::real((ims[j] * ims[k]).trace());
    return make_verdict(total, slack);
}

struct ImIdentitySides {
    double lhs = 0.0;  // 2 sum_{j<k} tr(Im B_j Im B_k)
    double rhs = 0.0;  // ||sum Im B_j||_F^2 - sum ||Im B_j||_F^2
};

/// Both sides of 2 sum tr(Im B_j Im B_k) = ||sum Im B_j||_F^2 - sum ||Im B_j||_F^2,
/// computed independently.
inline ImIdentitySides im_identity_check(std::span<const Matrix> b) {
    if (b.empty()) throw std::invalid_argument("im_identity_check: empty factor list");
    ImIdentitySides sides;
    sides.lhs = 2.0 * matrix_location_sum(b, 0.0).value;

    Matrix total = Matrix::zero(b.front().rows(), b.front().cols());
    double sum_sq = 0.0;
    for (const Matrix& m : b) {
        const Matrix im = skew_part(m);
        total += im;
        const double f = frobenius_norm(im);
        sum_sq += f * f;
    }
    const double tf = frobenius_norm(total);
    sides.rhs = tf * tf - sum_sq;
    return sides;
}

/// Hadamard-trace form ||CB||_F^2 + Re tr((BC).(BC)) - tr((C*C).(BB*))
/// - Re tr((BC)^2), writing . for the entrywise product.  Non-negative
/// exactly when the rank-one factor system read off B and C satisfies the
/// matrix location condition (it equals four times that pairwise sum).
inline ConditionVerdict elementary_pos_check(const Matrix& b, const Matrix& c,
                                             double slack = kVerdictSlack) {
    if (c.rows() != b.cols() || c.cols() != b.rows())
        throw dimension_error("elementary_pos_check: B must be d x n and C must be n x d");
    const Matrix bc = b * c;
    const double cb_f = frobenius_norm(c * b);
    const double lhs = cb_f * cb_f + std::real(hadamard(bc, bc).trace());
    const double rhs = std::real(hadamard(c.adjoint() * c, b * b.adjoint()).trace()) +
                       std::real((bc * bc).trace());
    return make_verdict(lhs - rhs, slack);
}

/// True when every Im B_j is negative semi-definite (within tol); this forces
/// the matrix location sum to be non-negative.
inline bool minus_semis_predicate(std::span<const Matrix> b, double tol = kVerdictSlack) {
    for (const Matrix& m : b)
        if (hermitian_top_eigenvalue(skew_part(m)) > tol) return false;
    return true;
}

/// Re((u_j*u_k)(v_k*v_j) - (v_j*u_k)(v_k*u_j)), which equals
/// 2 tr(Im(u_j v_j*) Im(u_k v_k*)).
inline double rank_one_trace(std::span<const cxd> uj, std::span<const cxd> vj,
                             std::span<const cxd> uk, std::span<const cxd> vk) {
    if (uj.size() != vj.size() || uk.size() != vk.size() || uj.size() != uk.size())
        throw dimension_error("rank_one_trace: vector length mismatch");
    return std::real(dot(uj, uk) * dot(vk, vj) - dot(vj, uk) * dot(vk, uj));
}

}  // namespace szasz
