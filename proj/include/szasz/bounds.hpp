#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "szasz/conditions.hpp"
#include "szasz/matrix.hpp"
#include "szasz/poly.hpp"
#include "szasz/realization.hpp"

namespace szasz {

enum class BoundId {
    szasz1943,
    debranges,
    lh,
    factored,
    realization,
    e1,
    e2,
    e3,
    intermediate,
    vn_sup,
    complete,
    mlak,
    hartz,
};

inline constexpr std::array<std::pair<BoundId, std::string_view>, 13> kBoundNames{{
    {BoundId::szasz1943, "szasz1943"},
    {BoundId::debranges, "debranges"},
    {BoundId::lh, "lh"},
    {BoundId::factored, "factored"},
    {BoundId::realization, "realization"},
    {BoundId::e1, "e1"},
    {BoundId::e2, "e2"},
    {BoundId::e3, "e3"},
    {BoundId::intermediate, "intermediate"},
    {BoundId::vn_sup, "vn_sup"},
    {BoundId::complete, "complete"},
    {BoundId::mlak, "mlak"},
    {BoundId::hartz, "hartz"},
}};

inline std::string_view to_string(BoundId id) {
    for (const auto& [k, name] : kBoundNames)
        if (k == id) return name;
    return "unknown";
}

inline std::optional<BoundId> bound_id_from_string(std::string_view name) {
    for (const auto& [k, n] : kBoundNames)
        if (n == name) return k;
    return std::nullopt;
}

enum class HypothesisStatus { verified, violated, unchecked };

inline std::string_view to_string(HypothesisStatus s) {
    switch (s) {
        case HypothesisStatus::verified: return "verified";
        case HypothesisStatus::violated: return "violated";
        default: return "unchecked";
    }
}

inline HypothesisStatus status_of(const ConditionVerdict& v) {
    return v.holds ? HypothesisStatus::verified : HypothesisStatus::violated;
}

/// Where a bound was evaluated: a scalar point, or a matrix argument
/// summarized by its shape and Frobenius norm.
struct EvalPoint {
    bool matrix_arg = false;
    cxd lambda{};
    std::size_t rows = 0;
    std::size_t cols = 0;
    double norm_f = 0.0;

    static EvalPoint at(cxd lambda) {
        EvalPoint p;
        p.lambda = lambda;
        return p;
    }
    static EvalPoint at_matrix(const Matrix& m) {
        EvalPoint p;
        p.matrix_arg = true;
        p.rows = m.rows();
        p.cols = m.cols();
        p.norm_f = frobenius_norm(m);
        return p;
    }
};

struct BoundReport {
    BoundId id{};
    double value = 0.0;
    HypothesisStatus hypothesis = HypothesisStatus::unchecked;
    EvalPoint point;
};

// ---------------------------------------------------------------------------
// scalar bounds
// ---------------------------------------------------------------------------

/// exp(|a_1||x| + 3(|a_1|^2 + |a_2|)|x|^2); hypothesis is classical stability
/// (all Im b_j <= 0), checked only when a factorization is stored.
inline BoundReport szasz_original(const ScalarPoly& p, cxd x) {
    const double a1 = std::abs(p.a1());
    const double a2 = std::abs(p.a2());
    const double r = std::abs(x);
    BoundReport rep{BoundId::szasz1943, std::exp(a1 * r + 3.0 * (a1 * a1 + a2) * r * r),
                    HypothesisStatus::unchecked, EvalPoint::at(x)};
    if (p.has_factors()) {
        bool stable = true;
        for (const cxd b : p.factors()) stable = stable && b.imag() <= kVerdictSlack;
        rep.hypothesis = stable ? HypothesisStatus::verified : HypothesisStatus::violated;
    }
    return rep;
}

/// exp(Re(a_1 x) + (|a_1|^2 - 2 Re a_2)|x|^2 / 2); valid under the variance
/// location condition on the inverse roots.
inline BoundReport de_branges(const ScalarPoly& p, cxd x) {
    const cxd a1 = p.a1();
    const double q = std::norm(a1) - 2.0 * p.a2().real();
    const double r2 = std::norm(x);
    BoundReport rep{BoundId::debranges, std::exp(std::real(a1 * x) + 0.5 * q * r2),
                    HypothesisStatus::unchecked, EvalPoint::at(x)};
    if (p.has_factors()) rep.hypothesis = status_of(var_semis_check(p.factors()));
    return rep;
}

// ---------------------------------------------------------------------------
// numerical-range half-plane certificate (sampled)
// ---------------------------------------------------------------------------

namespace detail {

/// Roots of c[0] + c[1] x + c[2] x^2 + c[3] x^3 by closed form (degree <= 3).
inline std::vector<cxd> poly_roots_upto3(std::vector<cxd> c) {
    double scale = 0.0;
    for (const cxd z : c) scale = std::max(scale, std::abs(z));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-13 * scale) c.pop_back();
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) return {-c[0] / c[1]};
    if (deg == 2) {
        const cxd a = c[2], b = c[1], c0 = c[0];
        const cxd disc = std::sqrt(b * b - 4.0 * a * c0);
        const cxd q = -0.5 * (b + (std::real(std::conj(b) * disc) >= 0.0 ? disc : -disc));
        if (std::abs(q) <= 1e-300) {
            const cxd r0 = std::sqrt(-c0 / a);
            return {r0, -r0};
        }
        return {q / a, c0 / q};
    }
    const cxd p = c[2] / c[3];
    const cxd q = c[1] / c[3];
    const cxd r = c[0] / c[3];
    const cxd shift = -p / 3.0;
    const cxd aa = q - p * p / 3.0;
    const cxd bb = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    const double thr = 1e-13 * (1.0 + std::norm(p) + std::abs(q) + std::abs(r));
    if (std::abs(aa) <= thr && std::abs(bb) <= thr) return {shift, shift, shift};
    const cxd s = std::sqrt(bb * bb / 4.0 + aa * aa * aa / 27.0);
    cxd u3 = -bb / 2.0 + s;
    if (std::abs(u3) < std::abs(-bb / 2.0 - s)) u3 = -bb / 2.0 - s;
    const cxd u = std::pow(u3, 1.0 / 3.0);
    const cxd omega{-0.5, std::sqrt(3.0) / 2.0};
    std::vector<cxd> roots;
    cxd w = u;
    for (int k = 0; k < 3; ++k) {
        roots.push_back(w - aa / (3.0 * w) + shift);
        w *= omega;
    }
    return roots;
}

/// True when all points lie in some closed half-plane whose boundary passes
/// through the origin, i.e. their directions fit in a closed half-circle.
inline bool fits_closed_halfplane(std::span<const cxd> points, double angle_tol = 1e-9) {
    std::vector<double> angles;
    angles.reserve(points.size());
    for (const cxd z : points)
        if (std::abs(z) > 0.0) angles.push_back(std::arg(z));
    if (angles.size() <= 1) return true;
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 6.283185307179586 - angles.back();
    for (std::size_t m = 0; m + 1 < angles.size(); ++m)
        max_gap = std::max(max_gap, angles[m + 1] - angles[m]);
    return max_gap >= 3.141592653589793 - angle_tol;
}

inline std::vector<std::vector<cxd>> certificate_directions(std::size_t n, int extra_samples) {
    std::vector<std::vector<cxd>> xs;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cxd> e(n);
        e[i] = 1.0;
        xs.push_back(e);
        for (std::size_t j = i + 1; j < n; ++j) {
            for (const cxd w : {cxd{1.0, 0.0}, cxd{-1.0, 0.0}, imag_unit, -imag_unit}) {
                std::vector<cxd> m(n);
                m[i] = inv_sqrt2;
                m[j] = w * inv_sqrt2;
                xs.push_back(m);
            }
        }
    }
    std::mt19937_64 gen(0x63657274ULL);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int s = 0; s < extra_samples; ++s) {
        std::vector<cxd> x(n);
        double nrm = 0.0;
        for (cxd& z : x) {
            z = cxd(g(gen), g(gen));
            nrm += std::norm(z);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) continue;
        for (cxd& z : x) z /= nrm;
        xs.push_back(x);
    }
    return xs;
}

}  // namespace detail

/// Samples x*P(x)x root locations over unit vectors and tests whether all of
/// them fit in a closed half-plane through the origin.  Exact only up to
/// sampling; degrees above 3 are not root-solved and report unchecked.
inline HypothesisStatus numerical_range_halfplane_certificate(const MatrixPoly& p,
                                                              int samples = 64) {
    if (p.degree() == 0) return HypothesisStatus::verified;
    if (p.degree() > 3) return HypothesisStatus::unchecked;
    std::vector<cxd> roots;
    for (const auto& x : detail::certificate_directions(p.size(), samples)) {
        std::vector<cxd> coeffs{cxd{1.0, 0.0}};
        for (std::size_t j = 1; j <= p.degree(); ++j)
            coeffs.push_back(dot(x, mat_vec(p.coeff(j), x)));
        for (const cxd root : detail::poly_roots_upto3(coeffs)) roots.push_back(root);
    }
    return detail::fits_closed_halfplane(roots) ? HypothesisStatus::verified
                                                : HypothesisStatus::violated;
}

// ---------------------------------------------------------------------------
// matrix polynomial bounds
// ---------------------------------------------------------------------------

/// 2 exp(top-Re-eigenvalue(x A_1 - |x|^2 A_2) + |x|^2 ||A_1||^2 / 2); sound
/// when the numerical range of P sits in a half-plane.  The hypothesis is
/// only sampled (certificate_samples > 0) and otherwise left unchecked.
inline BoundReport lh_bound(const MatrixPoly& p, cxd x, int certificate_samples = 0) {
    const Matrix a1 = p.A1();
    const Matrix a2 = p.A2();
    const double r2 = std::norm(x);
    const Matrix arg = x * a1 - r2 * a2;
    const double top = frobenius_norm(arg) == 0.0 ? 0.0 : hermitian_part_top_eigenvalue(arg);
    const double a1_op = operator_norm(a1);
    BoundReport rep{BoundId::lh, 2.0 * std::exp(top + 0.5 * r2 * a1_op * a1_op),
                    HypothesisStatus::unchecked, EvalPoint::at(x)};
    if (certificate_samples > 0)
        rep.hypothesis = numerical_range_halfplane_certificate(p, certificate_samples);
    return rep;
}

/// n^{d/2} exp(tr Re(x A_1)/n + (||A_1||_F^2 - 2 tr Re A_2)|x|^2 / (2n)).
/// d is the stored factor count unless supplied explicitly.
inline BoundReport matrix_factored_bound(const MatrixPoly& p, cxd x,
                                         std::optional<std::size_t> factor_count = {}) {
    if (!factor_count && !p.has_factors())
        throw std::invalid_argument("matrix_factored_bound: factor count required");
    const std::size_t d = factor_count ? *factor_count : p.factor_count();
    const double n = double(p.size());
    const double q =
        std::pow(frobenius_norm(p.A1()), 2) - 2.0 * std::real(p.A2().trace());
    const double expo =
        std::real(x * p.A1().trace()) / n + q * std::norm(x) / (2.0 * n);
    BoundReport rep{BoundId::factored, std::pow(n, 0.5 * double(d)) * std::exp(expo),
                    HypothesisStatus::unchecked, EvalPoint::at(x)};
    if (p.has_factors()) rep.hypothesis = status_of(matrix_location_sum(p.factors()));
    return rep;
}

/// The factored bound written on the realization data: CB plays A_1 and CAB
/// plays A_2, so the exponent is tr Re(x CB)/n + (||CB||_F^2 - 2 tr Re(CAB))
/// |x|^2/(2n).  Hypothesis is the realization positivity condition.
inline BoundReport realization_bound(const Realization& r, cxd x) {
    if (detail::strict_upper_residual(r.A) > 1e-10 * (1.0 + frobenius_norm(r.A)) ||
        detail::strict_upper_mismatch(r.A, r.B * r.C) >
            1e-10 * (1.0 + frobenius_norm(r.B) * frobenius_norm(r.C)))
        throw structural_error("realization_bound: structural invariants violated");
    const Matrix cb = r.C * r.B;
    const Matrix cab = r.C * (r.A * r.B);
    const double n = double(r.n);
    const double q = std::pow(frobenius_norm(cb), 2) - 2.0 * std::real(cab.trace());
    const double expo = std::real(x * cb.trace()) / n + q * std::norm(x) / (2.0 * n);
    return {BoundId::realization, std::pow(n, 0.5 * double(r.d)) * std::exp(expo),
            status_of(elementary_pos_check(r.B, r.C)), EvalPoint::at(x)};
}

// ---------------------------------------------------------------------------
// functional-calculus bounds
// ---------------------------------------------------------------------------

struct FunctionalBounds {
    BoundReport e1, e2, e3;
    bool exp0 = false;  // exponent-free regime: ||p(A)||_F <= n^{d/2}
};

/// The three independent estimates for p(A) under the variance location
/// condition, plus the flag for the absolute bound n^{d/2}.
inline FunctionalBounds functional_bounds(const ScalarPoly& p, const Matrix& a) {
    if (!p.has_factors())
        throw std::invalid_argument("functional_bounds: factorization required");
    if (!a.is_square()) throw dimension_error("functional_bounds: matrix not square");
    const double n = double(a.rows());
    const double d = double(p.factor_count());
    const cxd a1 = p.a1();
    const double q = std::norm(a1) - 2.0 * p.a2().real();
    const double fr = frobenius_norm(a);
    const double op = operator_norm(a);
    const HypothesisStatus hyp = status_of(var_semis_check(p.factors()));
    if (q < 0.0 && hyp == HypothesisStatus::verified)
        throw std::logic_error(
            "functional_bounds: |a1|^2 - 2 Re a2 < 0 under a verified location condition");
    const EvalPoint pt = EvalPoint::at_matrix(a);

    FunctionalBounds out;
    const double tr_re = std::real(a1 * a.trace());
    out.e1 = {BoundId::e1,
              std::pow(n, 0.5 * d) * std::exp(tr_re / n + q * fr * fr / (2.0 * n)), hyp, pt};
    out.e2 = {BoundId::e2, std::exp(op * std::sqrt(d * std::max(q, 0.0))), hyp, pt};
    out.e3 = {BoundId::e3, std::exp(std::abs(a1) * op + 0.5 * q * op * op), hyp, pt};
    const double exp0_lhs = std::norm(a1) * fr * fr + 2.0 * (tr_re - p.a2().real() * fr * fr);
    out.exp0 = exp0_lhs <= kVerdictSlack * (1.0 + std::abs(exp0_lhs));
    return out;
}

/// exp(||A|| sum |b_j|), the factor-wise estimate the mean inequality turns
/// into e2.
inline BoundReport intermediate_bound(const ScalarPoly& p, const Matrix& a) {
    if (!p.has_factors())
        throw std::invalid_argument("intermediate_bound: factorization required");
    if (!a.is_square()) throw dimension_error("intermediate_bound: matrix not square");
    double sum = 0.0;
    for (const cxd b : p.factors()) sum += std::abs(b);
    return {BoundId::intermediate, std::exp(operator_norm(a) * sum),
            status_of(var_semis_check(p.factors())), EvalPoint::at_matrix(a)};
}

// ---------------------------------------------------------------------------
// von Neumann supremum
// ---------------------------------------------------------------------------

/// Maximum of a magnitude function over the circle |z| = r: uniform samples
/// plus golden-section refinement around the best one.  By the maximum
/// principle this is the supremum over the closed disc for |p| and ||P||.
inline double von_neumann_sup(const std::function<double(cxd)>& magnitude, double radius,
                              int samples = 4096, int refine_steps = 40) {
    if (radius < 0.0) throw std::invalid_argument("von_neumann_sup: radius must be >= 0");
    if (samples < 16) throw std::invalid_argument("von_neumann_sup: need at least 16 samples");
    if (radius == 0.0) return magnitude(cxd{});

    constexpr double two_pi = 6.283185307179586;
    const auto at = [&](double theta) { return magnitude(std::polar(radius, theta)); };

    double best_theta = 0.0;
    double best = at(0.0);
    for (int k = 1; k < samples; ++k) {
        const double theta = two_pi * double(k) / double(samples);
        const double v = at(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }

    const double step = two_pi / double(samples);
    double lo = best_theta - step;
    double hi = best_theta + step;
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = at(x1);
    double f2 = at(x2);
    for (int it = 0; it < refine_steps; ++it) {
        best = std::max(best, std::max(f1, f2));
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = at(x1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

inline double von_neumann_sup(const ScalarPoly& p, double radius, int samples = 4096) {
    return von_neumann_sup([&](cxd z) { return std::abs(p.eval(z)); }, radius, samples);
}

inline double von_neumann_sup(const MatrixPoly& p, double radius, int samples = 4096) {
    return von_neumann_sup([&](cxd z) { return operator_norm(p.eval(z)); }, radius, samples);
}

/// Raw form for polynomials without the constant-term normalization:
/// coeffs = (c_0, c_1, ..., c_m) for c_0 + c_1 z + ... + c_m z^m.
inline double von_neumann_sup_raw(std::vector<cxd> coeffs, double radius, int samples = 4096) {
    return von_neumann_sup(
        [c = std::move(coeffs)](cxd z) {
            cxd v = 0.0;
            for (std::size_t j = c.size(); j-- > 0;) v = v * z + c[j];
            return std::abs(v);
        },
        radius, samples);
}

// ---------------------------------------------------------------------------
// lifted bounds for a matrix argument
// ---------------------------------------------------------------------------

struct LiftedBounds {
    BoundReport complete;  // Kronecker lift, any square T
    BoundReport mlak;      // P(T) for a doubly-commuting contraction
    BoundReport hartz;     // P(T) for any contraction, sqrt(N+1) prefactor
};

/// Shared exponent |tr A_1| ||T||/n + (||A_1||_F^2 - 2 tr Re A_2) ||T||^2/(2n)
/// with the three prefactors and per-bound applicability flags.  Values are
/// always computed; failed hypotheses only flip the flag.
inline LiftedBounds lifted_bounds(const MatrixPoly& p, const Matrix& t) {
    if (!p.has_factors()) throw std::invalid_argument("lifted_bounds: factorization required");
    if (!t.is_square()) throw dimension_error("lifted_bounds: argument must be square");
    const double n = double(p.size());
    const double d = double(p.factor_count());
    const double tn = operator_norm(t);
    const double q = std::pow(frobenius_norm(p.A1()), 2) - 2.0 * std::real(p.A2().trace());
    const double expo = std::abs(p.A1().trace()) * tn / n + q * tn * tn / (2.0 * n);
    const bool msemis = matrix_location_sum(p.factors()).holds;
    const bool contraction = tn <= 1.0 + 1e-12;
    const bool commuting = t.rows() == p.size() && p.doubly_commutes(t);
    const EvalPoint pt = EvalPoint::at_matrix(t);

    const auto flag = [](bool ok) {
        return ok ? HypothesisStatus::verified : HypothesisStatus::violated;
    };
    LiftedBounds out;
    const double base = std::pow(n, 0.5 * d) * std::exp(expo);
    out.complete = {BoundId::complete, base, flag(msemis), pt};
    out.mlak = {BoundId::mlak, base, flag(msemis && contraction && commuting), pt};
    out.hartz = {BoundId::hartz,
                 std::sqrt(std::pow(n, d) * double(p.degree() + 1)) * std::exp(expo),
                 flag(msemis && contraction), pt};
    return out;
}

}  // namespace szasz
