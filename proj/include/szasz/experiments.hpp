#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "szasz/bounds.hpp"
#include "szasz/conditions.hpp"
#include "szasz/matrix.hpp"
#include "szasz/poly.hpp"
#include "szasz/realization.hpp"

namespace szasz {

// ---------------------------------------------------------------------------
// deterministic randomness
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Independent generator for (seed, index); parallel and serial trial loops
/// see identical streams.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(index)));
}

/// Gaussian on the plane: mean + N(0, stddev^2) + i N(0, stddev^2).
inline cxd complex_gaussian(std::mt19937_64& gen, cxd mean, double stddev) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(gen);
    const double im = g(gen);
    return mean + stddev * cxd(re, im);
}

struct RandomModel {
    cxd mean;
    double stddev = 1.0;
    std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// instance generators shared by the fuzzer and the property suites
// ---------------------------------------------------------------------------

inline Matrix random_complex_matrix(std::mt19937_64& gen, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cxd(g(gen), g(gen));
    return m;
}

/// Inverse-root parameters in the closed lower half-plane (stable tuples).
inline std::vector<cxd> random_stable_tuple(std::mt19937_64& gen, std::size_t d,
                                            double scale = 0.8) {
    std::normal_distribution<double> g(0.0, scale);
    std::uniform_real_distribution<double> neg(0.0, 1.2 * scale);
    std::vector<cxd> b(d);
    for (cxd& z : b) z = cxd(g(gen), -neg(gen));
    return b;
}

/// Boundary tuple: k imaginary parts 1 and k imaginary parts
/// -(k + sqrt(2k-1))/(k-1); the pairwise location sum vanishes exactly, so
/// the instance sits on the hypothesis boundary.  Real parts are free.
inline std::vector<cxd> boundary_location_tuple(std::mt19937_64& gen, std::size_t k,
                                                double re_scale = 0.5) {
    if (k < 2) throw std::invalid_argument("boundary_location_tuple: k must be >= 2");
    std::normal_distribution<double> g(0.0, re_scale);
    const double neg = -(double(k) + std::sqrt(2.0 * double(k) - 1.0)) / (double(k) - 1.0);
    std::vector<cxd> b;
    for (std::size_t j = 0; j < k; ++j) b.emplace_back(g(gen), 1.0);
    for (std::size_t j = 0; j < k; ++j) b.emplace_back(g(gen), neg);
    return b;
}

/// Admissible scalar tuple: stable most of the time, boundary-engineered
/// otherwise, so the fuzzer exercises the edge where the bound is tightest.
inline std::vector<cxd> random_admissible_tuple(std::mt19937_64& gen, std::size_t d_max = 8) {
    std::uniform_int_distribution<std::size_t> pick_d(1, d_max);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(gen) < 0.25) {
        std::uniform_int_distribution<std::size_t> pick_k(2, std::max<std::size_t>(2, d_max / 2));
        return boundary_location_tuple(gen, pick_k(gen));
    }
    return random_stable_tuple(gen, pick_d(gen));
}

/// Matrix factor with negative semi-definite skew part (Hermitian - i PSD).
inline Matrix random_nsd_skew_factor(std::mt19937_64& gen, std::size_t n, double scale = 0.5) {
    const Matrix h = random_complex_matrix(gen, n, scale);
    const Matrix g = random_complex_matrix(gen, n, scale);
    return h + h.adjoint() - imag_unit * (g.adjoint() * g);
}

/// The 25-point evaluation grid |x| <= 4 used by the soundness suites.
inline const std::vector<cxd>& fuzz_lambda_grid() {
    static const std::vector<cxd> grid = [] {
        std::vector<cxd> g;
        for (const double r : {0.25, 0.5, 1.0, 2.0, 4.0})
            for (int k = 0; k < 5; ++k)
                g.push_back(std::polar(r, 6.283185307179586 * (double(k) + 0.37) / 5.0));
        return g;
    }();
    return grid;
}

// ---------------------------------------------------------------------------
// worked examples
// ---------------------------------------------------------------------------

struct ExampleCheck {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;  // absolute unless relative is noted in the name
    bool relative = false;
    bool pass = false;
};

struct ExampleReport {
    std::string id;
    std::vector<ExampleCheck> checks;
    bool pass = true;

    void add(std::string name, double computed, double expected, double tol,
             bool relative = false) {
        const double err = relative ? std::abs(computed - expected) /
                                          std::max(std::abs(expected), 1e-300)
                                    : std::abs(computed - expected);
        const bool ok = err <= tol;
        checks.push_back({std::move(name), computed, expected, tol, relative, ok});
        pass = pass && ok;
    }

    void add_flag(std::string name, bool ok) {
        checks.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, false, ok});
        pass = pass && ok;
    }
};

struct ExampleOptions {
    int c = 50;                       // semis1: checks c = 1..c
    int k = 20;                       // semis2: checks k = 2..k
    int n = 2;                        // cmv size
    double y = 1.0;                   // cmv evaluation point iy
    int d = 6;                        // hyperstable: checks d = 3..d
    std::vector<int> ks{10, 100, 1000};  // cmv truncation ladder
};

/// Inverse-root parameters of the degree-(2c+1) polynomial that is stable
/// with respect to no half-plane yet satisfies the location condition.
inline std::vector<cxd> semis1_factors(int c) {
    if (c < 1) throw std::invalid_argument("semis1_factors: c must be >= 1");
    std::vector<cxd> b{cxd{0.0, 1.0 / double(c + 1)}};
    for (int j = 0; j < c; ++j) b.push_back(cxd{-1.0 / double(c), -1.0 / double(c)});
    for (int j = 0; j < c; ++j) b.push_back(cxd{1.0 / double(c), -1.0 / double(c)});
    return b;
}

inline ExampleReport run_semis1(int c_max) {
    ExampleReport rep;
    rep.id = "semis1";
    for (int c = 1; c <= c_max; ++c) {
        const auto b = semis1_factors(c);
        const auto p = ScalarPoly::from_factors(b);
        const double cc = double(c);
        const double expected = (2.0 * cc * cc - cc - 1.0) / (cc * cc + cc);
        const std::string tag = "c=" + std::to_string(c);
        rep.add(tag + " location sum", scalar_location_sum(b).value, expected, 1e-12);
        rep.add(tag + " a1", std::abs(p.a1() - cxd{0.0, 1.0 / (cc + 1.0) - 2.0}), 0.0, 1e-12);
        rep.add(tag + " a2", std::abs(p.a2() - cxd{-2.0 * cc / (cc + 1.0), 0.0}), 0.0, 1e-12);
        rep.add_flag(tag + " verdict holds", scalar_location_sum(b).holds);
        // the point of the family: admissible yet stable for no half-plane
        const std::vector<cxd> roots{cxd{0.0, cc + 1.0}, cxd{cc / 2.0, -cc / 2.0},
                                     cxd{-cc / 2.0, -cc / 2.0}};
        rep.add_flag(tag + " roots fit no half-plane",
                     !detail::fits_closed_halfplane(roots));
    }
    return rep;
}

inline ExampleReport run_semis2(int k_max) {
    ExampleReport rep;
    rep.id = "semis2";
    std::mt19937_64 gen(0x73656d32ULL);
    for (int k = 2; k <= k_max; ++k) {
        const auto b = boundary_location_tuple(gen, std::size_t(k));
        const auto verdict = scalar_location_sum(b);
        rep.add("k=" + std::to_string(k) + " location sum", verdict.value, 0.0, 1e-9);
        rep.add_flag("k=" + std::to_string(k) + " verdict holds", verdict.holds);
    }
    return rep;
}

/// The 2x2 cell [[1, x^d],[0,1]]: hyperstable with identically zero low-order
/// coefficients, so no bound in A_1 and A_2 alone can cap its growth.
inline MatrixPoly hyperstable_poly(int d) {
    if (d < 1) throw std::invalid_argument("hyperstable_poly: degree must be >= 1");
    std::vector<Matrix> coeffs(std::size_t(d), Matrix::zero(2, 2));
    coeffs.back()(0, 1) = 1.0;
    return MatrixPoly::from_coeffs(2, coeffs);
}

inline ExampleReport run_hyperstable(int d_max) {
    ExampleReport rep;
    rep.id = "hyperstable";
    for (int d = 3; d <= d_max; ++d) {
        const auto p = hyperstable_poly(d);
        const std::string tag = "d=" + std::to_string(d);
        for (const double r : {0.5, 1.0, 2.0, 4.0}) {
            for (const double th : {0.0, 1.1, 2.9, 4.4}) {
                const cxd x = std::polar(r, th);
                const double exact = frobenius_norm(p.eval(x));
                const double closed = std::sqrt(2.0 + std::pow(r, 2.0 * d));
                rep.add(tag + " |x|=" + std::to_string(r) + " frobenius", exact, closed, 1e-12,
                        true);
                rep.add_flag(tag + " operator lower bound",
                             operator_norm(p.eval(x)) >=
                                 std::sqrt(1.0 + std::pow(r, 2.0 * d) / 2.0) - 1e-9);
            }
        }
        rep.add_flag(tag + " growth beats n^{d/2}",
                     frobenius_norm(p.eval(4.0)) > std::pow(2.0, 0.5 * double(d)));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// increasing-degree family with bounded size
// ---------------------------------------------------------------------------

/// ||P_k(iy)||_F for the degree-3k family built from the all-ones matrix J:
/// P_k(x) = (I + xJ/k)^k (I + x sqrt(D_k)/sqrt(k))^k (I - x sqrt(D_k)/sqrt(k))^k,
/// D_k = I + (n(k-1)/2k) J.  sqrt(D_k) has the closed rank-one-update form
/// I + ((sqrt(1+cn)-1)/n) J.
inline double cmv_sequence(int n, double y, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("cmv_sequence: need n >= 1 and k >= 1");
    const double nn = double(n);
    const double kk = double(k);
    const Matrix ones = Matrix::constant(std::size_t(n), std::size_t(n), 1.0);
    const Matrix id = Matrix::identity(std::size_t(n));
    const double c = nn * (kk - 1.0) / (2.0 * kk);
    const Matrix sqrt_d = id + ((std::sqrt(1.0 + c * nn) - 1.0) / nn) * ones;
    const cxd iy{0.0, y};
    const Matrix f1 = id + (iy / kk) * ones;
    const Matrix f2 = id + (iy / std::sqrt(kk)) * sqrt_d;
    const Matrix f3 = id - (iy / std::sqrt(kk)) * sqrt_d;
    const Matrix p =
        matrix_power(f1, std::size_t(k)) * matrix_power(f2, std::size_t(k)) *
        matrix_power(f3, std::size_t(k));
    return frobenius_norm(p);
}

/// Limit of the family: e^{y^2} (e^{n^2 y^2} + n - 1)^{1/2}.
inline double cmv_limit(int n, double y) {
    const double nn = double(n);
    return std::exp(y * y) * std::sqrt(std::exp(nn * nn * y * y) + nn - 1.0);
}

struct CnLowerBound {
    double ratio = 0.0;  // limit value over the would-be bound with constant c(n)
    double floor_value = 0.0;  // e^{y^2 + ny - (n/2+1)y^2}; e^{n/2} at y = 1
    bool ok = false;           // ratio >= floor (true for n >= 2 at y = 1)
};

inline CnLowerBound cn_lower_bound_check(int n, double y) {
    if (n < 1 || y <= 0.0)
        throw std::invalid_argument("cn_lower_bound_check: need n >= 1 and y > 0");
    const double nn = double(n);
    CnLowerBound out;
    out.ratio = cmv_limit(n, y) / std::exp((nn / 2.0 + 1.0) * y * y);
    out.floor_value = std::exp(y * y + nn * y - (nn / 2.0 + 1.0) * y * y);
    out.ok = out.ratio >= out.floor_value * (1.0 - 1e-12);
    return out;
}

inline ExampleReport run_cmv(const ExampleOptions& opt) {
    ExampleReport rep;
    rep.id = "cmv";
    const double limit = cmv_limit(opt.n, opt.y);
    double prev_err = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double last_err = prev_err;
    for (const int k : opt.ks) {
        const double val = cmv_sequence(opt.n, opt.y, k);
        const double err = std::abs(val - limit) / limit;
        rep.add("k=" + std::to_string(k) + " norm", val, limit, 1.0, true);  // informational
        decreasing = decreasing && err < prev_err;
        prev_err = err;
        last_err = err;
    }
    rep.add_flag("relative error decreasing", decreasing);
    rep.add("final relative error", last_err, 0.0, 0.02);
    rep.add("value at y=0 is sqrt(n)", cmv_sequence(opt.n, 0.0, opt.ks.back()),
            std::sqrt(double(opt.n)), 1e-12);
    for (int nn = 2; nn <= 5; ++nn) {
        const auto cn = cn_lower_bound_check(nn, 1.0);
        rep.add("c(" + std::to_string(nn) + ") floor", cn.floor_value,
                std::exp(double(nn) / 2.0), 0.0);
        rep.add_flag("c(" + std::to_string(nn) + ") ratio >= floor", cn.ok);
    }
    return rep;
}

inline ExampleReport run_comparison() {
    ExampleReport rep;
    rep.id = "comparison";
    const auto p1 = ScalarPoly::from_factors({-1.0, -1.0, -1.0});
    const auto p2 = ScalarPoly::from_factors({-1.0, -1.0, 1.0});
    const double s2 = std::sqrt(2.0);

    const auto fa = functional_bounds(p1, Matrix{{2.0, 0.0}, {0.0, 0.0}});
    rep.add("case a e1", fa.e1.value, 2.0 * s2, 1e-12, true);
    rep.add("case a e2", fa.e2.value, std::exp(6.0), 1e-12, true);
    rep.add("case a e3", fa.e3.value, std::exp(12.0), 1e-12, true);
    rep.add_flag("case a ordering", fa.e1.value < fa.e2.value && fa.e2.value < fa.e3.value);

    const auto fb = functional_bounds(p1, Matrix{{-2.0, 0.0}, {0.0, 0.0}});
    rep.add("case b e1", fb.e1.value, 2.0 * s2 * std::exp(6.0), 1e-12, true);
    rep.add("case b e2", fb.e2.value, std::exp(6.0), 1e-12, true);
    rep.add("case b e3", fb.e3.value, std::exp(12.0), 1e-12, true);
    rep.add_flag("case b ordering",
                 s2 * fb.e2.value < fb.e1.value && fb.e1.value < fb.e3.value);

    const auto fc = functional_bounds(p2, -Matrix::identity(2));
    rep.add("case c e1", fc.e1.value, 2.0 * s2 * std::exp(2.5), 1e-12, true);
    rep.add("case c e2", fc.e2.value, std::exp(3.0), 1e-12, true);
    rep.add("case c e3", fc.e3.value, std::exp(2.5), 1e-12, true);
    rep.add_flag("case c ordering",
                 s2 * fc.e3.value < s2 * fc.e2.value && s2 * fc.e2.value < fc.e1.value);
    return rep;
}

inline ExampleReport run_vn_comparison() {
    ExampleReport rep;
    rep.id = "vn-comparison";
    const auto p = ScalarPoly::from_factors({-1.0, -1.0, -1.0});
    const Matrix a{{2.0, 0.0}, {0.0, 0.0}};
    const double sup = von_neumann_sup(p, operator_norm(a));
    rep.add("disc supremum at radius 2", sup, 27.0, 1e-6);
    const auto fbs = functional_bounds(p, a);
    rep.add("e1", fbs.e1.value, 2.0 * std::sqrt(2.0), 1e-12, true);
    rep.add_flag("e1 beats the disc supremum", fbs.e1.value < sup);
    return rep;
}

inline ExampleReport run_example(std::string_view id, const ExampleOptions& opt = {}) {
    if (id == "semis1") return run_semis1(opt.c);
    if (id == "semis2") return run_semis2(opt.k);
    if (id == "hyperstable") return run_hyperstable(opt.d);
    if (id == "cmv") return run_cmv(opt);
    if (id == "comparison") return run_comparison();
    if (id == "vn-comparison") return run_vn_comparison();
    throw std::invalid_argument("run_example: unknown id '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Monte Carlo first-admissible-degree experiment
// ---------------------------------------------------------------------------

struct MonteCarloReport {
    std::uint64_t trials = 0;
    std::size_t d_max = 0;
    std::vector<std::uint64_t> histogram;  // histogram[d] = trials whose first admissible degree is d
    std::uint64_t overflow = 0;            // no admissible degree up to d_max
    double success_fraction = 0.0;
};

/// Grows an i.i.d. factor tuple per trial and records the smallest d whose
/// variance location condition holds.  Almost-sure eventual admissibility
/// needs a non-real mean; a real mean is a precondition violation.
inline MonteCarloReport montecarlo_random_d(const RandomModel& model, std::uint64_t trials,
                                            std::size_t d_max) {
    if (model.mean.imag() == 0.0)
        throw std::invalid_argument("montecarlo_random_d: the model mean must be non-real");
    if (trials < 1 || d_max < 1)
        throw std::invalid_argument("montecarlo_random_d: need trials >= 1 and d_max >= 1");
    if (!std::isfinite(model.stddev) || model.stddev < 0.0)
        throw std::invalid_argument("montecarlo_random_d: invalid stddev");

    MonteCarloReport rep;
    rep.trials = trials;
    rep.d_max = d_max;
    rep.histogram.assign(d_max + 1, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto gen = substream(model.seed, t);
        double sum_im = 0.0;
        double sum_im_sq = 0.0;
        bool found = false;
        for (std::size_t d = 1; d <= d_max; ++d) {
            const cxd b = complex_gaussian(gen, model.mean, model.stddev);
            sum_im += b.imag();
            sum_im_sq += b.imag() * b.imag();
            const double dd = double(d);
            const double mean = sum_im / dd;
            const double var = sum_im_sq / dd - mean * mean;
            if ((dd - 1.0) * mean * mean - var >= -kVerdictSlack) {
                ++rep.histogram[d];
                found = true;
                break;
            }
        }
        if (!found) ++rep.overflow;
    }
    rep.success_fraction = double(trials - rep.overflow) / double(trials);
    return rep;
}

// ---------------------------------------------------------------------------
// inequality fuzzer
// ---------------------------------------------------------------------------

enum class FuzzMode { scalar, matrix, functional };

inline std::string_view to_string(FuzzMode m) {
    switch (m) {
        case FuzzMode::scalar: return "scalar";
        case FuzzMode::matrix: return "matrix";
        default: return "functional";
    }
}

inline std::optional<FuzzMode> fuzz_mode_from_string(std::string_view s) {
    if (s == "scalar") return FuzzMode::scalar;
    if (s == "matrix") return FuzzMode::matrix;
    if (s == "functional") return FuzzMode::functional;
    return std::nullopt;
}

struct FuzzViolation {
    std::uint64_t trial = 0;
    cxd lambda{};
    BoundId bound{};
    double exact = 0.0;
    double bound_value = 0.0;
    double excess = 0.0;
};

struct FuzzReport {
    FuzzMode mode{};
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t checks = 0;
    std::vector<FuzzViolation> violations;
};

namespace detail {

inline void record_if_violated(FuzzReport& rep, std::uint64_t trial, cxd lambda, BoundId id,
                               double exact, double bound) {
    ++rep.checks;
    const double slack = 1e-9 * std::max(1.0, bound);
    if (exact > bound + slack)
        rep.violations.push_back({trial, lambda, id, exact, bound, exact - bound});
}

}  // namespace detail

/// Random admissible instances per mode, exact norms against every applicable
/// bound over the 25-point grid; any excess beyond the 1e-9 slack is reported.
inline FuzzReport fuzz(FuzzMode mode, std::uint64_t trials, std::uint64_t seed) {
    FuzzReport rep;
    rep.mode = mode;
    rep.trials = trials;
    rep.seed = seed;
    const auto& grid = fuzz_lambda_grid();

    for (std::uint64_t t = 0; t < trials; ++t) {
        auto gen = substream(seed, t);
        if (mode == FuzzMode::scalar) {
            const auto b = random_admissible_tuple(gen);
            const auto p = ScalarPoly::from_factors(b);
            const bool stable = [&] {
                for (const cxd z : b)
                    if (z.imag() > kVerdictSlack) return false;
                return true;
            }();
            for (const cxd x : grid) {
                const double exact = std::abs(p.eval(x));
                detail::record_if_violated(rep, t, x, BoundId::debranges, exact,
                                           de_branges(p, x).value);
                if (stable)
                    detail::record_if_violated(rep, t, x, BoundId::szasz1943, exact,
                                               szasz_original(p, x).value);
            }
        } else if (mode == FuzzMode::matrix) {
            std::uniform_int_distribution<std::size_t> pick_n(1, 4);
            std::uniform_int_distribution<std::size_t> pick_d(1, 5);
            const std::size_t n = pick_n(gen);
            const std::size_t d = pick_d(gen);
            std::vector<Matrix> factors;
            for (std::size_t j = 0; j < d; ++j)
                factors.push_back(random_nsd_skew_factor(gen, n, 0.35));
            const auto p = MatrixPoly::from_factors(factors);
            for (const cxd x : grid) {
                const double exact = frobenius_norm(p.eval(x));
                detail::record_if_violated(rep, t, x, BoundId::factored, exact,
                                           matrix_factored_bound(p, x).value);
            }
        } else {
            std::uniform_int_distribution<std::size_t> pick_n(1, 4);
            const std::size_t n = pick_n(gen);
            const auto b = random_admissible_tuple(gen);
            const auto p = ScalarPoly::from_factors(b);
            const Matrix base = random_complex_matrix(gen, n, 0.2 / std::sqrt(double(n)));
            for (const cxd x : grid) {
                const Matrix arg = x * base;
                const auto fb = functional_bounds(p, arg);
                const Matrix pa = p.eval_at(arg);
                detail::record_if_violated(rep, t, x, BoundId::e1, frobenius_norm(pa),
                                           fb.e1.value);
                const double op = operator_norm(pa);
                detail::record_if_violated(rep, t, x, BoundId::e2, op, fb.e2.value);
                detail::record_if_violated(rep, t, x, BoundId::e3, op, fb.e3.value);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

using SweepSubject = std::variant<std::pair<ScalarPoly, Matrix>, MatrixPoly, Realization>;

struct SweepRow {
    cxd lambda{};
    double exact_f = 0.0;
    double exact_op = 0.0;
    std::vector<BoundReport> bounds;
};

inline bool bound_applicable(const SweepSubject& subject, BoundId id) {
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, std::pair<ScalarPoly, Matrix>>) {
                switch (id) {
                    case BoundId::szasz1943:
                    case BoundId::debranges:
                    case BoundId::vn_sup: return true;
                    case BoundId::e1:
                    case BoundId::e2:
                    case BoundId::e3:
                    case BoundId::intermediate: return s.first.has_factors();
                    default: return false;
                }
            } else if constexpr (std::is_same_v<T, MatrixPoly>) {
                switch (id) {
                    case BoundId::lh:
                    case BoundId::vn_sup: return true;
                    case BoundId::factored: return s.has_factors();
                    default: return false;
                }
            } else {
                switch (id) {
                    case BoundId::realization:
                    case BoundId::factored:
                    case BoundId::lh:
                    case BoundId::vn_sup: return true;
                    default: return false;
                }
            }
        },
        subject);
}

/// One row per grid point with exact norms and the requested bounds.  For a
/// scalar polynomial with a fixed matrix argument the exact norms and the
/// functional bounds do not depend on the grid point.
inline std::vector<SweepRow> sweep(const SweepSubject& subject, std::span<const cxd> grid,
                                   std::span<const BoundId> ids) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (const BoundId id : ids)
        if (!bound_applicable(subject, id))
            throw std::invalid_argument("sweep: bound '" + std::string(to_string(id)) +
                                        "' does not apply to this subject");

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());

    if (const auto* sp = std::get_if<std::pair<ScalarPoly, Matrix>>(&subject)) {
        const auto& [p, a] = *sp;
        const Matrix pa = p.eval_at(a);
        const double exact_f = frobenius_norm(pa);
        const double exact_op = operator_norm(pa);
        for (const cxd x : grid) {
            SweepRow row{x, exact_f, exact_op, {}};
            for (const BoundId id : ids) {
                switch (id) {
                    case BoundId::szasz1943: row.bounds.push_back(szasz_original(p, x)); break;
                    case BoundId::debranges: row.bounds.push_back(de_branges(p, x)); break;
                    case BoundId::e1: row.bounds.push_back(functional_bounds(p, a).e1); break;
                    case BoundId::e2: row.bounds.push_back(functional_bounds(p, a).e2); break;
                    case BoundId::e3: row.bounds.push_back(functional_bounds(p, a).e3); break;
                    case BoundId::intermediate:
                        row.bounds.push_back(intermediate_bound(p, a));
                        break;
                    default:
                        row.bounds.push_back({BoundId::vn_sup,
                                              von_neumann_sup(p, operator_norm(a)),
                                              HypothesisStatus::verified,
                                              EvalPoint::at_matrix(a)});
                }
            }
            rows.push_back(std::move(row));
        }
        return rows;
    }

    const MatrixPoly p = [&] {
        if (const auto* mp = std::get_if<MatrixPoly>(&subject)) return *mp;
        const auto& r = std::get<Realization>(subject);
        return MatrixPoly::from_factors(realization_factors(r));
    }();
    const Realization* realization_ptr = std::get_if<Realization>(&subject);

    for (const cxd x : grid) {
        const Matrix value = p.eval(x);
        SweepRow row{x, frobenius_norm(value), operator_norm(value), {}};
        for (const BoundId id : ids) {
            switch (id) {
                case BoundId::lh: row.bounds.push_back(lh_bound(p, x)); break;
                case BoundId::factored: row.bounds.push_back(matrix_factored_bound(p, x)); break;
                case BoundId::realization:
                    row.bounds.push_back(realization_bound(*realization_ptr, x));
                    break;
                default:
                    row.bounds.push_back({BoundId::vn_sup, von_neumann_sup(p, std::abs(x)),
                                          HypothesisStatus::verified, EvalPoint::at(x)});
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace szasz
