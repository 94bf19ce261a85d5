// Command-line front end: worked examples, inequality fuzzing, the Monte
// Carlo admissibility experiment, bound sweeps over evaluation grids, and
// one-shot bound evaluation for subjects stored as JSON.
//
// Exit code 0 means every requested check passed; 1 signals a violation or
// mismatch; 2 signals a usage or input error.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "szasz/serialization.hpp"
#include "szasz/szasz.hpp"

namespace {

using namespace szasz;

cxd parse_complex_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("expected RE,IM, got '" + text + "'");
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

// grid specs: "circle:R:N", "segment:re0,im0:re1,im1:N", "points:re,im;re,im;..."
std::vector<cxd> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ':')) parts.push_back(token);
    if (parts.empty()) throw CLI::ValidationError("empty grid spec");

    std::vector<cxd> grid;
    if (parts[0] == "circle" && parts.size() == 3) {
        const double r = std::stod(parts[1]);
        const int n = std::stoi(parts[2]);
        if (n < 1) throw CLI::ValidationError("circle grid needs at least one point");
        for (int k = 0; k < n; ++k)
            grid.push_back(std::polar(r, 6.283185307179586 * double(k) / double(n)));
        return grid;
    }
    if (parts[0] == "segment" && parts.size() == 4) {
        const cxd a = parse_complex_pair(parts[1]);
        const cxd b = parse_complex_pair(parts[2]);
        const int n = std::stoi(parts[3]);
        if (n < 1) throw CLI::ValidationError("segment grid needs at least one point");
        for (int k = 0; k < n; ++k) {
            const double t = n == 1 ? 0.0 : double(k) / double(n - 1);
            grid.push_back(a + t * (b - a));
        }
        return grid;
    }
    if (parts[0] == "points" && parts.size() == 2) {
        std::istringstream pts(parts[1]);
        while (std::getline(pts, token, ';'))
            if (!token.empty()) grid.push_back(parse_complex_pair(token));
        if (grid.empty()) throw CLI::ValidationError("points grid is empty");
        return grid;
    }
    throw CLI::ValidationError("unrecognized grid spec '" + spec + "'");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

std::string fuzz_report_to_csv(const FuzzReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "trial,lambda_re,lambda_im,bound_id,exact,bound,excess\n";
    for (const auto& v : rep.violations)
        out << v.trial << ',' << v.lambda.real() << ',' << v.lambda.imag() << ','
            << to_string(v.bound) << ',' << v.exact << ',' << v.bound_value << ',' << v.excess
            << '\n';
    return out.str();
}

// exact quantity each bound caps, for the pass/fail audit in `bounds eval`
double exact_for(BoundId id, const SweepSubject& subject, cxd lambda) {
    if (const auto* sp = std::get_if<std::pair<ScalarPoly, Matrix>>(&subject)) {
        const auto& [p, a] = *sp;
        switch (id) {
            case BoundId::szasz1943:
            case BoundId::debranges: return std::abs(p.eval(lambda));
            case BoundId::e1: return frobenius_norm(p.eval_at(a));
            default: return operator_norm(p.eval_at(a));
        }
    }
    const MatrixPoly p = [&] {
        if (const auto* mp = std::get_if<MatrixPoly>(&subject)) return *mp;
        return MatrixPoly::from_factors(realization_factors(std::get<Realization>(subject)));
    }();
    switch (id) {
        case BoundId::lh:
        case BoundId::vn_sup: return operator_norm(p.eval(lambda));
        default: return frobenius_norm(p.eval(lambda));
    }
}

std::vector<BoundId> default_bounds(const SweepSubject& subject) {
    std::vector<BoundId> ids;
    for (const auto& [id, name] : kBoundNames)
        if (bound_applicable(subject, id)) ids.push_back(id);
    return ids;
}

int run_example_command(const std::string& id, const ExampleOptions& opt,
                        const std::string& format, const std::string& out_path) {
    const ExampleReport rep = run_example(id, opt);
    if (format == "csv")
        write_output(example_report_to_csv(rep), out_path);
    else
        write_output(example_report_to_json(rep).dump(2), out_path);
    std::cerr << "example " << rep.id << ": " << (rep.pass ? "pass" : "FAIL") << " ("
              << rep.checks.size() << " checks)\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szasz-type inequality laboratory"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // example
    auto* example = app.add_subcommand("example", "reproduce a worked example");
    std::string example_id;
    ExampleOptions opt;
    int cmv_k = 1000;
    std::string example_out;
    example->add_option("id", example_id, "one of semis1, semis2, hyperstable, cmv, comparison, vn-comparison")
        ->required();
    example->add_option("--c", opt.c, "semis1: check c = 1..C");
    auto* k_option =
        example->add_option("--k", cmv_k, "semis2: check k = 2..K; cmv: truncation ladder up to K");
    example->add_option("--n", opt.n, "cmv: matrix size");
    example->add_option("--y", opt.y, "cmv: evaluation point iy");
    example->add_option("--d", opt.d, "hyperstable: check degrees 3..D");
    example->add_option("--out", example_out, "write the report here instead of stdout");

    // fuzz
    auto* fz = app.add_subcommand("fuzz", "stress the bounds on random admissible instances");
    std::string fuzz_mode = "scalar";
    std::uint64_t fuzz_trials = 1000;
    std::uint64_t fuzz_seed = 0;
    std::string fuzz_out;
    fz->add_option("--mode", fuzz_mode, "scalar | matrix | functional")
        ->check(CLI::IsMember({"scalar", "matrix", "functional"}));
    fz->add_option("--trials", fuzz_trials, "number of random instances");
    fz->add_option("--seed", fuzz_seed, "RNG seed");
    fz->add_option("--out", fuzz_out, "write the report here instead of stdout");

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "first admissible degree of random factor tuples");
    std::string mc_mean = "0,1";
    double mc_stddev = 1.0;
    std::uint64_t mc_trials = 10000;
    std::size_t mc_dmax = 200;
    std::uint64_t mc_seed = 0;
    double mc_min_success = 0.0;
    std::string mc_out;
    mc->add_option("--mean", mc_mean, "complex mean RE,IM (must be non-real)");
    mc->add_option("--stddev", mc_stddev, "per-component standard deviation");
    mc->add_option("--trials", mc_trials, "number of trials");
    mc->add_option("--dmax", mc_dmax, "largest degree scanned per trial");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--min-success", mc_min_success, "fail when the success fraction drops below");
    mc->add_option("--out", mc_out, "write the report here instead of stdout");

    // sweep
    auto* sw = app.add_subcommand("sweep", "evaluate exact norms and bounds over a grid");
    std::string sweep_input, sweep_grid, sweep_bounds, sweep_out;
    sw->add_option("--input", sweep_input, "subject JSON file")->required();
    sw->add_option("--grid", sweep_grid,
                   "circle:R:N | segment:re,im:re,im:N | points:re,im;re,im;...")
        ->required();
    sw->add_option("--bounds", sweep_bounds, "comma-separated bound ids (default: all applicable)");
    sw->add_option("--out", sweep_out, "output file (default stdout)");

    // bounds eval
    auto* bounds_cmd = app.add_subcommand("bounds", "bound evaluation");
    auto* eval_cmd = bounds_cmd->add_subcommand("eval", "evaluate all applicable bounds at a point");
    std::string eval_input, eval_lambda = "0,0", eval_out;
    int eval_certify = 0;
    eval_cmd->add_option("--input", eval_input, "subject JSON file")->required();
    eval_cmd->add_option("--lambda", eval_lambda, "evaluation point RE,IM");
    eval_cmd->add_option("--certify", eval_certify,
                         "sample count for the numerical-range half-plane certificate "
                         "(degree <= 3 subjects; 0 leaves the hypothesis unchecked)");
    eval_cmd->add_option("--out", eval_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (example->parsed()) {
            if (example_id == "cmv") {
                opt.ks.clear();
                for (const int k : {cmv_k / 100, cmv_k / 10, cmv_k})
                    if (k >= 1 && (opt.ks.empty() || k > opt.ks.back())) opt.ks.push_back(k);
            } else if (k_option->count() > 0) {
                opt.k = cmv_k;
            }
            return run_example_command(example_id, opt, format, example_out);
        }

        if (fz->parsed()) {
            const auto mode = fuzz_mode_from_string(fuzz_mode);
            const FuzzReport rep = fuzz(*mode, fuzz_trials, fuzz_seed);
            write_output(format == "csv" ? fuzz_report_to_csv(rep)
                                         : fuzz_report_to_json(rep).dump(2),
                         fuzz_out);
            std::cerr << "fuzz " << fuzz_mode << ": " << rep.checks << " checks, "
                      << rep.violations.size() << " violations\n";
            return rep.violations.empty() ? 0 : 1;
        }

        if (mc->parsed()) {
            const RandomModel model{parse_complex_pair(mc_mean), mc_stddev, mc_seed};
            const MonteCarloReport rep = montecarlo_random_d(model, mc_trials, mc_dmax);
            write_output(format == "csv" ? montecarlo_report_to_csv(rep)
                                         : montecarlo_report_to_json(rep).dump(2),
                         mc_out);
            std::cerr << "montecarlo: success fraction " << rep.success_fraction << "\n";
            return rep.success_fraction >= mc_min_success ? 0 : 1;
        }

        if (sw->parsed()) {
            const SweepSubject subject = subject_from_json(load_json_file(sweep_input));
            const std::vector<cxd> grid = parse_grid(sweep_grid);
            std::vector<BoundId> ids;
            if (sweep_bounds.empty()) {
                ids = default_bounds(subject);
            } else {
                std::istringstream in(sweep_bounds);
                std::string name;
                while (std::getline(in, name, ',')) {
                    const auto id = bound_id_from_string(name);
                    if (!id) throw std::runtime_error("unknown bound id '" + name + "'");
                    ids.push_back(*id);
                }
            }
            const auto rows = sweep(subject, grid, ids);
            write_output(format == "csv" ? sweep_to_csv(rows, ids) : sweep_to_json(rows).dump(2),
                         sweep_out);
            bool ok = true;
            for (const auto& row : rows)
                for (const auto& b : row.bounds)
                    if (b.hypothesis == HypothesisStatus::verified) {
                        const double exact = exact_for(b.id, subject, row.lambda);
                        ok = ok && exact <= b.value + 1e-9 * std::max(1.0, b.value);
                    }
            std::cerr << "sweep: " << rows.size() << " rows, "
                      << (ok ? "no verified bound violated" : "VERIFIED BOUND VIOLATED") << "\n";
            return ok ? 0 : 1;
        }

        if (bounds_cmd->parsed() && eval_cmd->parsed()) {
            const SweepSubject subject = subject_from_json(load_json_file(eval_input));
            const cxd lambda = parse_complex_pair(eval_lambda);
            const std::vector<BoundId> ids = default_bounds(subject);
            const std::vector<cxd> grid{lambda};
            auto rows = sweep(subject, grid, ids);
            if (eval_certify > 0 && !std::holds_alternative<std::pair<ScalarPoly, Matrix>>(subject)) {
                const MatrixPoly p =
                    std::holds_alternative<MatrixPoly>(subject)
                        ? std::get<MatrixPoly>(subject)
                        : MatrixPoly::from_factors(
                              realization_factors(std::get<Realization>(subject)));
                for (auto& b : rows[0].bounds)
                    if (b.id == BoundId::lh) b = lh_bound(p, lambda, eval_certify);
            }

            bool ok = true;
            json out;
            out["lambda"] = complex_to_json(lambda);
            out["exact_f"] = rows[0].exact_f;
            out["exact_op"] = rows[0].exact_op;
            json breports = json::array();
            std::ostringstream csv;
            csv.precision(17);
            csv << "bound_id,value,hypothesis,exact,pass\n";
            for (const auto& b : rows[0].bounds) {
                const double exact = exact_for(b.id, subject, lambda);
                const bool pass = b.hypothesis != HypothesisStatus::verified ||
                                  exact <= b.value + 1e-9 * std::max(1.0, b.value);
                ok = ok && pass;
                json jb = bound_report_to_json(b);
                jb["exact"] = exact;
                jb["pass"] = pass;
                breports.push_back(std::move(jb));
                csv << to_string(b.id) << ',' << b.value << ',' << to_string(b.hypothesis) << ','
                    << exact << ',' << (pass ? 1 : 0) << '\n';
            }
            out["bounds"] = std::move(breports);
            write_output(format == "csv" ? csv.str() : out.dump(2), eval_out);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
