#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "szasz/experiments.hpp"

using namespace szasz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mixed half-plane example report") {
    const auto rep = run_example("semis1", {.c = 10});
    REQUIRE(rep.pass);
    REQUIRE(rep.checks.size() == 50);
}

TEST_CASE("boundary example report") {
    const auto rep = run_example("semis2", {.k = 10});
    REQUIRE(rep.pass);
}

TEST_CASE("hyperstable example report") {
    const auto rep = run_example("hyperstable", {.d = 5});
    REQUIRE(rep.pass);
}

TEST_CASE("comparison and supremum example reports") {
    REQUIRE(run_example("comparison").pass);
    REQUIRE(run_example("vn-comparison").pass);
    REQUIRE_THROWS_AS(run_example("nope"), std::invalid_argument);
}

TEST_CASE("increasing-degree family") {
    SECTION("scalar oracle at n = 1, k = 1") {
        for (const double y : {0.3, 1.0, 1.7}) {
            // (1 + iy)(1 + iy)(1 - iy) has modulus |1+iy| (1+y^2)
            const double expected = std::sqrt(1.0 + y * y) * (1.0 + y * y);
            REQUIRE_THAT(cmv_sequence(1, y, 1), WithinRel(expected, 1e-13));
        }
    }
    SECTION("y = 0 collapses to sqrt(n)") {
        for (const int n : {1, 2, 4}) {
            REQUIRE_THAT(cmv_sequence(n, 0.0, 7), WithinRel(std::sqrt(double(n)), 1e-14));
        }
    }
    SECTION("converges to the closed-form limit") {
        for (const int n : {2, 3}) {
            for (const double y : {0.5, 1.0}) {
                const double limit = cmv_limit(n, y);
                double prev = std::numeric_limits<double>::infinity();
                for (const int k : {10, 100, 1000}) {
                    const double err = std::abs(cmv_sequence(n, y, k) - limit) / limit;
                    REQUIRE(err < prev);
                    prev = err;
                }
                REQUIRE(prev < 0.02);
            }
        }
    }
    SECTION("n = 2, y = 1 limit value") {
        REQUIRE_THAT(cmv_limit(2, 1.0),
                     WithinRel(std::exp(1.0) * std::sqrt(std::exp(4.0) + 1.0), 1e-15));
    }
    SECTION("report") {
        REQUIRE(run_example("cmv").pass);
    }
}

TEST_CASE("prefactor lower-bound audit") {
    SECTION("floor is exactly e^{n/2} at y = 1") {
        for (int n = 2; n <= 5; ++n) {
            const auto cn = cn_lower_bound_check(n, 1.0);
            REQUIRE(cn.floor_value == std::exp(double(n) / 2.0));
            REQUIRE(cn.ok);
        }
    }
    SECTION("both quantities tend to 1 as y -> 0+ for n = 1") {
        const auto tiny = cn_lower_bound_check(1, 1e-6);
        REQUIRE_THAT(tiny.ratio, WithinAbs(1.0, 1e-5));
        REQUIRE_THAT(tiny.floor_value, WithinAbs(1.0, 1e-5));
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(cn_lower_bound_check(0, 1.0), std::invalid_argument);
        REQUIRE_THROWS_AS(cn_lower_bound_check(2, 0.0), std::invalid_argument);
    }
}

TEST_CASE("Monte Carlo first admissible degree") {
    SECTION("point mass at i always succeeds at d = 1") {
        const auto rep = montecarlo_random_d({cxd{0.0, 1.0}, 0.0, 42}, 100, 50);
        REQUIRE(rep.success_fraction == 1.0);
        REQUIRE(rep.histogram[1] == 100);
    }
    SECTION("gaussian around i") {
        const auto rep = montecarlo_random_d({cxd{0.0, 1.0}, 1.0, 7}, 2000, 200);
        REQUIRE(rep.success_fraction >= 0.99);
    }
    SECTION("real mean violates the hypothesis") {
        REQUIRE_THROWS_AS(montecarlo_random_d({cxd{1.0, 0.0}, 1.0, 1}, 10, 10),
                          std::invalid_argument);
    }
    SECTION("determinism") {
        const auto a = montecarlo_random_d({cxd{0.5, 0.8}, 1.3, 99}, 500, 64);
        const auto b = montecarlo_random_d({cxd{0.5, 0.8}, 1.3, 99}, 500, 64);
        REQUIRE(a.histogram == b.histogram);
        REQUIRE(a.overflow == b.overflow);
    }
}

TEST_CASE("inequality fuzzer") {
    SECTION("zero trials produce an empty report") {
        const auto rep = fuzz(FuzzMode::scalar, 0, 1);
        REQUIRE(rep.violations.empty());
        REQUIRE(rep.checks == 0);
    }
    SECTION("seeded runs are identical") {
        const auto a = fuzz(FuzzMode::scalar, 50, 1234);
        const auto b = fuzz(FuzzMode::scalar, 50, 1234);
        REQUIRE(a.checks == b.checks);
        REQUIRE(a.violations.size() == b.violations.size());
    }
    SECTION("scalar suite is violation-free") {
        const auto rep = fuzz(FuzzMode::scalar, 500, 2024);
        REQUIRE(rep.violations.empty());
        REQUIRE(rep.checks >= 500 * 25);
    }
    SECTION("matrix suite is violation-free") {
        const auto rep = fuzz(FuzzMode::matrix, 100, 2025);
        REQUIRE(rep.violations.empty());
    }
    SECTION("functional suite is violation-free") {
        const auto rep = fuzz(FuzzMode::functional, 100, 2026);
        REQUIRE(rep.violations.empty());
    }
}

TEST_CASE("sweeps") {
    const auto p = ScalarPoly::from_factors({-1.0, -1.0, -1.0});
    const Matrix a{{2.0, 0.0}, {0.0, 0.0}};

    SECTION("functional subject at the origin matches the worked values") {
        const std::vector<cxd> grid{cxd{}};
        const std::vector<BoundId> ids{BoundId::e1};
        const auto rows = sweep(SweepSubject{std::pair{p, a}}, grid, ids);
        REQUIRE(rows.size() == 1);
        REQUIRE_THAT(rows[0].exact_f, WithinRel(std::sqrt(2.0), 1e-12));
        REQUIRE_THAT(rows[0].bounds.at(0).value, WithinRel(2.0 * std::sqrt(2.0), 1e-12));
    }
    SECTION("empty bound list still reports exact norms") {
        const std::vector<cxd> grid{cxd{1.0, 0.0}, cxd{0.0, 1.0}};
        const auto rows = sweep(SweepSubject{std::pair{p, a}}, grid, {});
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[0].bounds.empty());
        REQUIRE(rows[0].exact_f > 0.0);
    }
    SECTION("matrix polynomial rows vary over the grid") {
        const auto mp = MatrixPoly::from_factors(
            {-imag_unit * Matrix::identity(2), Matrix{{0.0, 1.0}, {0.0, 0.0}}});
        std::vector<cxd> grid;
        for (int k = 0; k < 8; ++k) grid.push_back(std::polar(2.0, 0.785398163 * k));
        const std::vector<BoundId> ids{BoundId::factored, BoundId::lh, BoundId::vn_sup};
        const auto rows = sweep(SweepSubject{mp}, grid, ids);
        REQUIRE(rows.size() == grid.size());
        for (const auto& row : rows) {
            REQUIRE(row.bounds.size() == 3);
            // the disc supremum dominates the pointwise norm
            REQUIRE(row.exact_op <= row.bounds.at(2).value * (1.0 + 1e-9));
        }
    }
    SECTION("maximum of the cubic over |x| = 2 is found on the grid sweep") {
        std::vector<cxd> grid;
        for (int k = 0; k < 64; ++k) grid.push_back(std::polar(2.0, 0.09817477 * k));
        const auto rows = sweep(SweepSubject{std::pair{p, a}}, grid, {});
        double best = 0.0;
        for (const auto& row : rows) best = std::max(best, std::abs(p.eval(row.lambda)));
        REQUIRE_THAT(best, WithinAbs(27.0, 1e-2));
    }
    SECTION("realization subject") {
        const std::vector<std::vector<cxd>> e{{1.0, 0.0}, {0.0, 1.0}};
        const Realization r = build_realization(e, e);
        const std::vector<cxd> grid{cxd{1.0, 0.0}};
        const std::vector<BoundId> ids{BoundId::realization, BoundId::factored};
        const auto rows = sweep(SweepSubject{r}, grid, ids);
        REQUIRE_THAT(rows[0].bounds.at(0).value, WithinRel(2.0 * std::exp(1.5), 1e-12));
        REQUIRE_THAT(rows[0].bounds.at(0).value, WithinRel(rows[0].bounds.at(1).value, 1e-12));
        REQUIRE_THAT(rows[0].exact_f, WithinRel(2.0 * std::sqrt(2.0), 1e-13));
    }
    SECTION("inapplicable bounds are rejected") {
        const std::vector<cxd> grid{cxd{1.0, 0.0}};
        const std::vector<BoundId> ids{BoundId::factored};
        REQUIRE_THROWS_AS(sweep(SweepSubject{std::pair{p, a}}, grid, ids),
                          std::invalid_argument);
        const auto unfactored = MatrixPoly::from_coeffs(2, {Matrix::identity(2)});
        REQUIRE_THROWS_AS(sweep(SweepSubject{unfactored}, grid, ids), std::invalid_argument);
        REQUIRE_THROWS_AS(sweep(SweepSubject{unfactored}, {}, {}), std::invalid_argument);
    }
}

TEST_CASE("deterministic substreams") {
    auto g1 = substream(7, 3);
    auto g2 = substream(7, 3);
    auto g3 = substream(7, 4);
    REQUIRE(g1() == g2());
    REQUIRE(g1() != g3());

    auto gen = substream(11, 0);
    const cxd z = complex_gaussian(gen, cxd{1.0, 2.0}, 0.0);
    REQUIRE(z == cxd{1.0, 2.0});
}
