#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "szasz/poly.hpp"
#include "szasz/realization.hpp"

using namespace szasz;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<cxd> random_vector(std::mt19937_64& gen, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cxd> v(n);
    for (cxd& z : v) z = cxd(g(gen), g(gen));
    return v;
}

struct FactorSet {
    std::vector<std::vector<cxd>> u, v;
};

FactorSet random_factor_set(std::mt19937_64& gen, std::size_t d, std::size_t n) {
    FactorSet f;
    for (std::size_t j = 0; j < d; ++j) {
        f.u.push_back(random_vector(gen, n));
        f.v.push_back(random_vector(gen, n));
    }
    return f;
}

// oracle: the ordered product of the degree-one factors
Matrix product_oracle(const FactorSet& f, cxd x) {
    const std::size_t n = f.u.front().size();
    Matrix p = Matrix::identity(n);
    for (std::size_t j = 0; j < f.u.size(); ++j)
        p = p * (Matrix::identity(n) + x * outer(f.u[j], f.v[j]));
    return p;
}

}  // namespace

TEST_CASE("building the realization") {
    SECTION("canonical rank-one resolution of I + x I") {
        const std::vector<std::vector<cxd>> e{{1.0, 0.0}, {0.0, 1.0}};
        const Realization r = build_realization(e, e);
        REQUIRE(r.n == 2);
        REQUIRE(r.d == 2);
        REQUIRE(frobenius_norm(r.A) == 0.0);
        REQUIRE(frobenius_norm(r.B - Matrix::identity(2)) == 0.0);
        REQUIRE(frobenius_norm(r.C - Matrix::identity(2)) == 0.0);
        REQUIRE(frobenius_norm(eval_realization(r, 3.0) - 4.0 * Matrix::identity(2)) < 1e-14);
    }
    SECTION("swapped canonical pair fills one coupling entry") {
        const std::vector<std::vector<cxd>> u{{1.0, 0.0}, {0.0, 1.0}};
        const std::vector<std::vector<cxd>> v{{0.0, 1.0}, {1.0, 0.0}};
        const Realization r = build_realization(u, v);
        REQUIRE(std::abs(r.A(0, 1) - cxd{1.0, 0.0}) < 1e-15);
        REQUIRE(std::abs(r.A(1, 0)) == 0.0);
    }
    SECTION("single factor has the 1x1 zero coupling matrix") {
        const std::vector<std::vector<cxd>> u{{cxd{1.0, 2.0}, 0.5}};
        const std::vector<std::vector<cxd>> v{{0.25, cxd{0.0, -1.0}}};
        const Realization r = build_realization(u, v);
        REQUIRE(r.d == 1);
        REQUIRE(r.A.rows() == 1);
        REQUIRE(r.A(0, 0) == cxd{});
    }
    SECTION("length mismatch rejected") {
        const std::vector<std::vector<cxd>> u{{1.0, 0.0}};
        const std::vector<std::vector<cxd>> v{{1.0, 0.0, 0.0}};
        REQUIRE_THROWS_AS(build_realization(u, v), dimension_error);
    }
}

TEST_CASE("realization evaluation") {
    std::mt19937_64 gen(101);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> radius(0.0, 2.0);

    SECTION("x = 0 gives the identity") {
        const auto f = random_factor_set(gen, 3, 2);
        const Realization r = build_realization(f.u, f.v);
        REQUIRE(frobenius_norm(eval_realization(r, 0.0) - Matrix::identity(2)) == 0.0);
    }
    SECTION("matches the ordered factor product") {
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t d = 1 + rep % 5;
            const std::size_t n = 1 + rep % 4;
            const auto f = random_factor_set(gen, d, n);
            const Realization r = build_realization(f.u, f.v);
            for (int k = 0; k < 20; ++k) {
                const cxd x = std::polar(radius(gen), angle(gen));
                const Matrix lhs = eval_realization(r, x);
                const Matrix rhs = product_oracle(f, x);
                REQUIRE(frobenius_norm(lhs - rhs) <= 1e-11 * (1.0 + frobenius_norm(rhs)));
            }
        }
    }
    SECTION("corrupted coupling matrix is rejected") {
        const auto f = random_factor_set(gen, 3, 2);
        Realization r = build_realization(f.u, f.v);
        r.A(2, 0) = 1.0;
        REQUIRE_THROWS_AS(eval_realization(r, 1.0), structural_error);
        Realization r2 = build_realization(f.u, f.v);
        r2.A(0, 2) += 0.5;
        REQUIRE_THROWS_AS(eval_realization(r2, 1.0), structural_error);
    }
}

TEST_CASE("nilpotency of the coupling matrix") {
    std::mt19937_64 gen(103);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 1 + rep % 6;
        const auto f = random_factor_set(gen, d, 3);
        const Realization r = build_realization(f.u, f.v);
        Matrix power = Matrix::identity(d);
        for (std::size_t m = 0; m < d; ++m) power = power * r.A;
        REQUIRE(frobenius_norm(power) <= 1e-12 * (1.0 + std::pow(frobenius_norm(r.A), d)));
    }
}

TEST_CASE("factor count dominates the expanded degree") {
    std::mt19937_64 gen(107);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 1 + rep % 6;
        const auto f = random_factor_set(gen, d, 3);
        const Realization r = build_realization(f.u, f.v);
        const auto p = MatrixPoly::from_factors(realization_factors(r));
        REQUIRE(p.degree() <= r.d);
    }
}

TEST_CASE("structure diagnostics") {
    std::mt19937_64 gen(109);

    SECTION("built realizations have vanishing residuals") {
        const auto f = random_factor_set(gen, 4, 3);
        const Realization r = build_realization(f.u, f.v);
        const auto rep = check_structure(r);
        REQUIRE(rep.strict_upper_residual <= 1e-13);
        REQUIRE(rep.lower_shift_residual <= 1e-13);
        REQUIRE(rep.entry_residual <= 1e-13);
        REQUIRE(rep.sufficiency_consistent);
    }
    SECTION("C = iB* has zero delta distance and strict positivity") {
        for (int rep = 0; rep < 30; ++rep) {
            const std::size_t d = 2 + rep % 3;
            std::vector<std::vector<cxd>> u, v;
            for (std::size_t j = 0; j < d; ++j) {
                const auto vj = random_vector(gen, 3);
                v.push_back(vj);
                auto uj = vj;
                for (cxd& z : uj) z *= imag_unit;
                u.push_back(uj);
            }
            const Realization r = build_realization(u, v);
            const auto report = check_structure(r);
            REQUIRE(report.delta_distance <= 1e-12);
            REQUIRE(report.elementary_pos.holds);
            REQUIRE(report.elementary_pos.value > 0.0);
            REQUIRE(report.sufficiency_consistent);
        }
    }
    SECTION("entrywise nonnegative B and iC force positivity") {
        const std::vector<std::vector<cxd>> v{{1.0, 0.0}, {0.0, 1.0}};
        std::vector<std::vector<cxd>> u;
        for (const auto& e : v) {
            auto uj = e;
            for (cxd& z : uj) z *= -imag_unit;
            u.push_back(uj);
        }
        const Realization r = build_realization(u, v);
        const auto report = check_structure(r);
        REQUIRE(report.nonneg_B);
        REQUIRE(report.nonneg_iC);
        REQUIRE(report.elementary_pos.holds);
        REQUIRE(report.sufficiency_consistent);
    }
}

TEST_CASE("validating factory for externally supplied parts") {
    std::mt19937_64 gen(113);
    const auto f = random_factor_set(gen, 3, 2);
    const Realization r = build_realization(f.u, f.v);

    SECTION("faithful parts are accepted and evaluate identically") {
        const Realization r2 = realization_from_parts(r.n, r.d, r.A, r.B, r.C);
        REQUIRE(frobenius_norm(eval_realization(r2, cxd{0.5, 0.5}) -
                               eval_realization(r, cxd{0.5, 0.5})) < 1e-13);
    }
    SECTION("perturbed coupling entries are rejected") {
        Matrix bad = r.A;
        bad(0, 2) += 1.0;
        REQUIRE_THROWS_AS(realization_from_parts(r.n, r.d, bad, r.B, r.C), structural_error);
        Matrix lower = r.A;
        lower(2, 1) = 0.25;
        REQUIRE_THROWS_AS(realization_from_parts(r.n, r.d, lower, r.B, r.C), structural_error);
    }
    SECTION("shape mismatch is rejected") {
        REQUIRE_THROWS_AS(realization_from_parts(r.n, r.d + 1, r.A, r.B, r.C), dimension_error);
    }
}
