#pragma once

#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "szasz/bounds.hpp"
#include "szasz/experiments.hpp"
#include "szasz/matrix.hpp"
#include "szasz/poly.hpp"
#include "szasz/realization.hpp"

namespace szasz {

using nlohmann::json;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// complex numbers and matrices: [re, im] pairs, row-major nesting
// ---------------------------------------------------------------------------

inline json complex_to_json(cxd z) { return json::array({z.real(), z.imag()}); }

inline cxd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error("expected a [re, im] pair");
    const cxd z{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw parse_error("complex entry is not finite");
    return z;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw parse_error("matrix: expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw parse_error("matrix: rows must be arrays");
    const std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw parse_error("matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

inline json scalar_poly_to_json(const ScalarPoly& p) {
    json out;
    json coeffs = json::array();
    for (const cxd a : p.coeffs()) coeffs.push_back(complex_to_json(a));
    out["coeffs"] = std::move(coeffs);
    if (p.has_factors()) {
        json factors = json::array();
        for (const cxd b : p.factors()) factors.push_back(complex_to_json(b));
        out["factors"] = std::move(factors);
    }
    return out;
}

inline ScalarPoly scalar_poly_from_json(const json& j) {
    const bool has_coeffs = j.contains("coeffs");
    const bool has_factors = j.contains("factors");
    if (!has_coeffs && !has_factors)
        throw parse_error("scalar polynomial: need 'coeffs' or 'factors'");

    std::optional<ScalarPoly> from_factors;
    if (has_factors) {
        std::vector<cxd> b;
        for (const auto& e : j.at("factors")) b.push_back(complex_from_json(e));
        from_factors = ScalarPoly::from_factors(std::move(b));
    }
    if (!has_coeffs) return *from_factors;

    std::vector<cxd> coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.push_back(complex_from_json(e));
    if (from_factors) {
        if (coeffs.size() != from_factors->degree())
            throw parse_error("scalar polynomial: coeffs and factors disagree in degree");
        double scale = 1.0;
        for (const cxd a : coeffs) scale = std::max(scale, std::abs(a));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (std::abs(coeffs[k] - from_factors->a(k + 1)) > 1e-12 * scale)
                throw parse_error("scalar polynomial: factors do not expand to coeffs");
        return *from_factors;
    }
    return ScalarPoly::from_coeffs(std::move(coeffs));
}

inline json matrix_poly_to_json(const MatrixPoly& p) {
    json out;
    out["n"] = p.size();
    json coeffs = json::array();
    for (const Matrix& a : p.coeffs()) coeffs.push_back(matrix_to_json(a));
    out["coeffs"] = std::move(coeffs);
    if (p.has_factors()) {
        json factors = json::array();
        for (const Matrix& b : p.factors()) factors.push_back(matrix_to_json(b));
        out["factors"] = std::move(factors);
    }
    return out;
}

inline MatrixPoly matrix_poly_from_json(const json& j) {
    if (!j.contains("n") || !j.at("n").is_number_unsigned())
        throw parse_error("matrix polynomial: missing positive 'n'");
    const std::size_t n = j.at("n").get<std::size_t>();
    const bool has_coeffs = j.contains("coeffs");
    const bool has_factors = j.contains("factors");
    if (!has_coeffs && !has_factors)
        throw parse_error("matrix polynomial: need 'coeffs' or 'factors'");

    std::optional<MatrixPoly> from_factors;
    if (has_factors) {
        std::vector<Matrix> b;
        for (const auto& e : j.at("factors")) b.push_back(matrix_from_json(e));
        from_factors = MatrixPoly::from_factors(std::move(b));
        if (from_factors->size() != n)
            throw parse_error("matrix polynomial: factor size does not match 'n'");
    }
    if (!has_coeffs) return *from_factors;

    std::vector<Matrix> coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.push_back(matrix_from_json(e));
    if (from_factors) {
        double scale = 1.0;
        for (const Matrix& a : coeffs) scale = std::max(scale, a.max_abs());
        if (coeffs.size() < from_factors->degree())
            throw parse_error("matrix polynomial: factors do not expand to coeffs");
        for (std::size_t k = 1; k <= coeffs.size(); ++k) {
            const Matrix given = coeffs[k - 1];
            if (frobenius_norm(given - from_factors->coeff(k)) > 1e-12 * scale * double(n))
                throw parse_error("matrix polynomial: factors do not expand to coeffs");
        }
        return *from_factors;
    }
    return MatrixPoly::from_coeffs(n, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// realizations
// ---------------------------------------------------------------------------

inline json realization_to_json(const Realization& r) {
    json out;
    out["n"] = r.n;
    out["d"] = r.d;
    out["A"] = matrix_to_json(r.A);
    out["B"] = matrix_to_json(r.B);
    out["C"] = matrix_to_json(r.C);
    return out;
}

inline Realization realization_from_json(const json& j) {
    for (const char* key : {"n", "d", "A", "B", "C"})
        if (!j.contains(key)) throw parse_error(std::string("realization: missing '") + key + "'");
    return realization_from_parts(j.at("n").get<std::size_t>(), j.at("d").get<std::size_t>(),
                                  matrix_from_json(j.at("A")), matrix_from_json(j.at("B")),
                                  matrix_from_json(j.at("C")));
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline json eval_point_to_json(const EvalPoint& p) {
    if (!p.matrix_arg) return json{{"lambda", complex_to_json(p.lambda)}};
    return json{{"matrix",
                 json{{"rows", p.rows}, {"cols", p.cols}, {"frobenius_norm", p.norm_f}}}};
}

inline json bound_report_to_json(const BoundReport& r) {
    return json{{"bound_id", std::string(to_string(r.id))},
                {"value", r.value},
                {"hypothesis", std::string(to_string(r.hypothesis))},
                {"point", eval_point_to_json(r.point)}};
}

inline json example_report_to_json(const ExampleReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name},
                              {"computed", c.computed},
                              {"expected", c.expected},
                              {"tolerance", c.tolerance},
                              {"relative", c.relative},
                              {"pass", c.pass}});
    return json{{"id", rep.id}, {"pass", rep.pass}, {"checks", std::move(checks)}};
}

inline std::string example_report_to_csv(const ExampleReport& rep) {
    std::ostringstream out;
    out << "name,computed,expected,tolerance,relative,pass\n";
    out.precision(17);
    for (const auto& c : rep.checks)
        out << '"' << c.name << "\"," << c.computed << ',' << c.expected << ',' << c.tolerance
            << ',' << (c.relative ? 1 : 0) << ',' << (c.pass ? 1 : 0) << '\n';
    return out.str();
}

inline json montecarlo_report_to_json(const MonteCarloReport& rep) {
    json hist = json::object();
    for (std::size_t d = 1; d < rep.histogram.size(); ++d)
        if (rep.histogram[d] > 0) hist[std::to_string(d)] = rep.histogram[d];
    return json{{"trials", rep.trials},
                {"d_max", rep.d_max},
                {"histogram", std::move(hist)},
                {"overflow", rep.overflow},
                {"success_fraction", rep.success_fraction}};
}

inline std::string montecarlo_report_to_csv(const MonteCarloReport& rep) {
    std::ostringstream out;
    out << "d,count\n";
    for (std::size_t d = 1; d < rep.histogram.size(); ++d)
        if (rep.histogram[d] > 0) out << d << ',' << rep.histogram[d] << '\n';
    out << "overflow," << rep.overflow << '\n';
    return out.str();
}

inline json fuzz_report_to_json(const FuzzReport& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back(json{{"trial", v.trial},
                                  {"lambda", complex_to_json(v.lambda)},
                                  {"bound_id", std::string(to_string(v.bound))},
                                  {"exact", v.exact},
                                  {"bound", v.bound_value},
                                  {"excess", v.excess}});
    return json{{"mode", std::string(to_string(rep.mode))},
                {"trials", rep.trials},
                {"seed", rep.seed},
                {"checks", rep.checks},
                {"violations", std::move(violations)}};
}

// ---------------------------------------------------------------------------
// sweep rows
// ---------------------------------------------------------------------------

inline json sweep_to_json(std::span<const SweepRow> rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json bounds = json::array();
        for (const auto& b : row.bounds) bounds.push_back(bound_report_to_json(b));
        out.push_back(json{{"lambda", complex_to_json(row.lambda)},
                           {"exact_f", row.exact_f},
                           {"exact_op", row.exact_op},
                           {"bounds", std::move(bounds)}});
    }
    return out;
}

/// Columns: lambda_re, lambda_im, exact_f, exact_op, one value column per
/// bound id, then one hypothesis column per bound id.
inline std::string sweep_to_csv(std::span<const SweepRow> rows, std::span<const BoundId> ids) {
    std::ostringstream out;
    out.precision(17);
    out << "lambda_re,lambda_im,exact_f,exact_op";
    for (const BoundId id : ids) out << ',' << to_string(id);
    for (const BoundId id : ids) out << ',' << to_string(id) << "_hypothesis";
    out << '\n';
    for (const auto& row : rows) {
        out << row.lambda.real() << ',' << row.lambda.imag() << ',' << row.exact_f << ','
            << row.exact_op;
        for (const auto& b : row.bounds) out << ',' << b.value;
        for (const auto& b : row.bounds) out << ',' << to_string(b.hypothesis);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// sweep/bounds subjects
// ---------------------------------------------------------------------------

/// Tagged subject schema: {"type": "scalar_poly", "poly": {...}, "matrix": M?}
/// | {"type": "matrix_poly", "poly": {...}} | {"type": "realization",
/// "realization": {...}}.
inline SweepSubject subject_from_json(const json& j) {
    if (!j.contains("type") || !j.at("type").is_string())
        throw parse_error("subject: missing 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "scalar_poly") {
        if (!j.contains("poly")) throw parse_error("subject: missing 'poly'");
        ScalarPoly p = scalar_poly_from_json(j.at("poly"));
        if (!j.contains("matrix"))
            throw parse_error("subject: scalar_poly subjects need a 'matrix' argument");
        Matrix a = matrix_from_json(j.at("matrix"));
        if (!a.is_square()) throw parse_error("subject: 'matrix' must be square");
        return SweepSubject{std::pair{std::move(p), std::move(a)}};
    }
    if (type == "matrix_poly") {
        if (!j.contains("poly")) throw parse_error("subject: missing 'poly'");
        return SweepSubject{matrix_poly_from_json(j.at("poly"))};
    }
    if (type == "realization") {
        if (!j.contains("realization")) throw parse_error("subject: missing 'realization'");
        return SweepSubject{realization_from_json(j.at("realization"))};
    }
    throw parse_error("subject: unknown type '" + type + "'");
}

}  // namespace szasz
