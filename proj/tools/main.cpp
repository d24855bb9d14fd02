// bellscope: d-outcome Bell inequality laboratory for two-mode squeezed states.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellscope/asymptotics.hpp"
#include "bellscope/lhv_oracle.hpp"
#include "bellscope/optimizer.hpp"
#include "bellscope/settings_io.hpp"

using namespace bellscope;

namespace {

// All emitted numbers carry 9 significant digits so identical configurations
// produce byte-identical output.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double round9(double v) {
    return std::stod(num(v));
}

struct OutputSink {
    std::string path;
    std::string format = "csv";  // csv | json

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path);
            if (!out) {
                throw std::runtime_error("cannot open output file " + path);
            }
            out << text;
        }
    }
};

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i) {
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
        }
    }
    return out.str();
}

nlohmann::json json_doc(const std::string& command) {
    nlohmann::json doc;
    doc["schema"] = "bellscope/1";
    doc["command"] = command;
    return doc;
}

Scheme parse_scheme(const std::string& name) {
    if (name == "full") return Scheme::Full;
    if (name == "phase-fourier") return Scheme::PhaseFourier;
    throw CLI::ValidationError("--scheme must be full or phase-fourier");
}

Scheme default_scheme_for(int d) {
    return d > 10 ? Scheme::PhaseFourier : Scheme::Full;
}

nlohmann::json result_to_json(const OptimizationResult& res) {
    nlohmann::json j;
    j["best_bell"] = round9(res.best_bell);
    if (res.best_r) {
        j["best_r"] = round9(*res.best_r);
    }
    j["converged"] = res.converged;
    for (const auto& diag : res.per_restart) {
        j["per_restart"].push_back({{"seed", diag.seed},
                                    {"value", round9(diag.value)},
                                    {"iterations", diag.iterations}});
    }
    for (int s = 0; s < 4; ++s) {
        nlohmann::json p;
        p["scheme"] = res.best_params[s].scheme == Scheme::Full ? "full" : "phase-fourier";
        for (double v : res.best_params[s].params) {
            p["params"].push_back(round9(v));
        }
        j["best_params"].push_back(p);
    }
    return j;
}

struct CommonOpts {
    std::string scheme;
    int restarts = 0;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scheme", opts.scheme, "full|phase-fourier");
    cmd->add_option("--restarts", opts.restarts, "Optimizer restarts (0 = scheme default)");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--tolerance", opts.tolerance, "Convergence threshold on the Bell value");
}

OptimizationProblem make_problem(int d, const std::string& mode,
                                 std::optional<double> r, double r_min, double r_max,
                                 const CommonOpts& opts) {
    OptimizationProblem problem;
    problem.d = d;
    if (mode == "epr") {
        problem.state = StateSpec::EprLimit;
    } else if (r.has_value()) {
        problem.state = StateSpec::NopaFixedR;
        problem.r = *r;
    } else {
        problem.state = StateSpec::NopaFreeR;
        problem.r_min = r_min;
        problem.r_max = r_max;
    }
    problem.scheme = opts.scheme.empty() ? default_scheme_for(d) : parse_scheme(opts.scheme);
    problem.restarts = opts.restarts;
    problem.seed = opts.seed;
    problem.tolerance = opts.tolerance;
    return problem;
}

int run(int argc, char** argv) {
    CLI::App app{"d-outcome Bell inequality laboratory for continuous-variable states"};
    app.require_subcommand(1);

    // vectors
    auto* vectors_cmd = app.add_subcommand("vectors", "Print the d simplex outcome vectors");
    int vec_d = 0;
    OutputSink vec_sink;
    vectors_cmd->add_option("--d", vec_d, "Outcome count")->required();
    vectors_cmd->add_option("--output", vec_sink.path, "Output file (default stdout)");
    vectors_cmd->add_option("--format", vec_sink.format, "csv|json");

    // table
    auto* table_cmd = app.add_subcommand("table", "Violation table over a list of d");
    std::vector<int> table_dlist;
    std::string table_mode = "epr";
    CommonOpts table_opts;
    OutputSink table_sink;
    table_cmd->add_option("--d-list", table_dlist, "Comma-separated d values")
        ->required()
        ->delimiter(',');
    table_cmd->add_option("--mode", table_mode, "epr|nopa");
    add_common(table_cmd, table_opts);
    table_cmd->add_option("--output", table_sink.path, "Output file");
    table_cmd->add_option("--format", table_sink.format, "csv|json");

    // scan
    auto* scan_cmd = app.add_subcommand(
        "scan", "Bell value vs r at fixed d, or vs d at per-d optimal r (--d-list)");
    int scan_d = 0;
    std::vector<int> scan_dlist;
    double scan_rmin = 0.0, scan_rmax = 3.0;
    int scan_steps = 0;
    CommonOpts scan_opts;
    OutputSink scan_sink;
    scan_cmd->add_option("--d", scan_d, "Dimension for an r sweep");
    scan_cmd->add_option("--d-list", scan_dlist, "Dimensions for the optimal-r curve")
        ->delimiter(',');
    scan_cmd->add_option("--r-min", scan_rmin, "Sweep start");
    scan_cmd->add_option("--r-max", scan_rmax, "Sweep end");
    scan_cmd->add_option("--steps", scan_steps, "Number of grid points (>= 2)");
    add_common(scan_cmd, scan_opts);
    scan_cmd->add_option("--output", scan_sink.path, "Output file");
    scan_cmd->add_option("--format", scan_sink.format, "csv|json");

    // limit
    auto* limit_cmd = app.add_subcommand("limit", "Closed-form EPR-limit values");
    int limit_d = 0;
    bool limit_asymptote = false;
    OutputSink limit_sink;
    limit_cmd->add_option("--d", limit_d, "Evaluate the closed form at this d");
    limit_cmd->add_flag("--asymptote", limit_asymptote, "Print the d -> infinity series limit");
    limit_cmd->add_option("--output", limit_sink.path, "Output file");
    limit_cmd->add_option("--format", limit_sink.format, "csv|json");

    // lhv-bounds
    auto* lhv_cmd = app.add_subcommand("lhv-bounds", "Local-hidden-variable bounds");
    int lhv_d = 0;
    bool lhv_enumerate = false;
    OutputSink lhv_sink;
    lhv_cmd->add_option("--d", lhv_d, "Outcome count")->required();
    lhv_cmd->add_flag("--enumerate", lhv_enumerate,
                      "Verify by exhaustive enumeration of deterministic strategies");
    lhv_cmd->add_option("--output", lhv_sink.path, "Output file");
    lhv_cmd->add_option("--format", lhv_sink.format, "csv|json");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "Maximize the Bell quantity");
    int opt_d = 0;
    std::string opt_mode = "epr";
    double opt_r = -1.0, opt_rmin = 0.1, opt_rmax = 4.0;
    std::string opt_input;
    CommonOpts opt_opts;
    OutputSink opt_sink;
    opt_sink.format = "json";
    opt_cmd->add_option("--d", opt_d, "Outcome count")->required();
    opt_cmd->add_option("--mode", opt_mode, "epr|nopa");
    opt_cmd->add_option("--r", opt_r, "Fixed squeezing parameter (nopa mode)");
    opt_cmd->add_option("--r-min", opt_rmin, "Free-r lower bound");
    opt_cmd->add_option("--r-max", opt_rmax, "Free-r upper bound");
    opt_cmd->add_option("--input", opt_input,
                        "Settings document to evaluate instead of optimizing");
    add_common(opt_cmd, opt_opts);
    opt_cmd->add_option("--output", opt_sink.path, "Output file");
    opt_cmd->add_option("--format", opt_sink.format, "csv|json");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit a + b/d + c/d^2 + e*exp(-d) to (d, B) points");
    std::string fit_input;
    OutputSink fit_sink;
    fit_cmd->add_option("--input", fit_input, "CSV file with d,bell rows")->required();
    fit_cmd->add_option("--output", fit_sink.path, "Output file");
    fit_cmd->add_option("--format", fit_sink.format, "csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1
    }

    if (vectors_cmd->parsed()) {
        const OutcomeVectorSet V = build_outcome_vectors(vec_d);
        if (vec_sink.format == "json") {
            auto doc = json_doc("vectors");
            doc["d"] = vec_d;
            for (int j = 0; j < vec_d; ++j) {
                nlohmann::json row;
                for (int i = 0; i < vec_d - 1; ++i) {
                    row.push_back(round9(V.vectors(j, i)));
                }
                doc["vectors"].push_back(row);
            }
            vec_sink.write(doc.dump(2) + "\n");
        } else {
            std::vector<std::string> header;
            for (int i = 0; i < vec_d - 1; ++i) {
                header.push_back("v" + std::to_string(i));
            }
            std::vector<std::vector<std::string>> rows;
            for (int j = 0; j < vec_d; ++j) {
                std::vector<std::string> row;
                for (int i = 0; i < vec_d - 1; ++i) {
                    row.push_back(num(V.vectors(j, i)));
                }
                rows.push_back(std::move(row));
            }
            vec_sink.write(csv_table(header, rows));
        }
        return 0;
    }

    if (table_cmd->parsed()) {
        if (table_mode != "epr" && table_mode != "nopa") {
            throw CLI::ValidationError("--mode must be epr or nopa");
        }
        std::vector<std::vector<std::string>> rows;
        auto json = json_doc("table");
        for (int d : table_dlist) {
            std::string bell, r_opt, flag;
            if (table_mode == "epr") {
                const double closed = closed_form_epr(d);
                bell = num(closed);
                if (d <= 10) {
                    auto problem = make_problem(d, "epr", std::nullopt, 0, 0, table_opts);
                    const OptimizationResult res = maximize_bell(problem);
                    if (std::abs(res.best_bell - closed) > 1e-4) {
                        flag = "optimizer-mismatch";
                    }
                    if (!res.converged) {
                        flag = flag.empty() ? "nonconverged" : flag + ";nonconverged";
                    }
                }
            } else {
                auto problem = make_problem(d, "nopa", std::nullopt, 0.1, 4.0, table_opts);
                const OptimizationResult res = maximize_bell(problem);
                bell = num(res.best_bell);
                r_opt = num(*res.best_r);
                if (!res.converged) {
                    flag = "nonconverged";
                }
            }
            rows.push_back({std::to_string(d), bell, r_opt, flag});
            nlohmann::json row = {{"d", d}, {"bell", std::stod(bell)}, {"flag", flag}};
            row["r_opt"] = r_opt.empty() ? nlohmann::json() : nlohmann::json(std::stod(r_opt));
            json["rows"].push_back(row);
        }
        if (table_sink.format == "json") {
            table_sink.write(json.dump(2) + "\n");
        } else {
            table_sink.write(csv_table({"d", "bell", "r_opt", "flag"}, rows));
        }
        return 0;
    }

    if (scan_cmd->parsed()) {
        std::vector<std::vector<std::string>> rows;
        auto json = json_doc("scan");
        if (!scan_dlist.empty()) {
            for (int d : scan_dlist) {
                auto problem = make_problem(d, "nopa", std::nullopt, scan_rmin > 0 ? scan_rmin : 0.1,
                                            scan_rmax, scan_opts);
                const OptimizationResult res = maximize_bell(problem);
                rows.push_back({std::to_string(d), num(res.best_bell), num(*res.best_r)});
                json["rows"].push_back(
                    {{"d", d}, {"bell", round9(res.best_bell)}, {"r_opt", round9(*res.best_r)}});
            }
            if (scan_sink.format == "json") {
                scan_sink.write(json.dump(2) + "\n");
            } else {
                scan_sink.write(csv_table({"d", "bell", "r_opt"}, rows));
            }
            return 0;
        }
        if (scan_d < 2 || scan_steps < 2 || !(scan_rmin < scan_rmax) || scan_rmin < 0) {
            throw CLI::ValidationError("scan requires --d, --steps >= 2 and 0 <= r-min < r-max");
        }
        std::vector<double> grid(scan_steps);
        for (int i = 0; i < scan_steps; ++i) {
            grid[i] = scan_rmin + (scan_rmax - scan_rmin) * i / (scan_steps - 1);
        }
        const Scheme scheme =
            scan_opts.scheme.empty() ? default_scheme_for(scan_d) : parse_scheme(scan_opts.scheme);
        const auto profile = r_profile(scan_d, grid, scheme, scan_opts.restarts, scan_opts.seed,
                                       scan_opts.tolerance);
        for (const auto& pt : profile) {
            rows.push_back({num(pt.r), num(pt.bell)});
            json["rows"].push_back({{"r", round9(pt.r)}, {"bell", round9(pt.bell)}});
        }
        if (scan_sink.format == "json") {
            scan_sink.write(json.dump(2) + "\n");
        } else {
            scan_sink.write(csv_table({"r", "bell"}, rows));
        }
        return 0;
    }

    if (limit_cmd->parsed()) {
        auto json = json_doc("limit");
        std::vector<std::string> header;
        std::vector<std::string> row;
        if (limit_asymptote) {
            const double value = epr_limit_series(100000);
            header = {"asymptote"};
            row = {num(value)};
            json["asymptote"] = round9(value);
        } else if (limit_d >= 2) {
            const double value = closed_form_epr(limit_d);
            header = {"d", "bell"};
            row = {std::to_string(limit_d), num(value)};
            json["d"] = limit_d;
            json["bell"] = round9(value);
        } else {
            throw CLI::ValidationError("limit requires --d >= 2 or --asymptote");
        }
        if (limit_sink.format == "json") {
            limit_sink.write(json.dump(2) + "\n");
        } else {
            limit_sink.write(csv_table(header, {row}));
        }
        return 0;
    }

    if (lhv_cmd->parsed()) {
        auto json = json_doc("lhv-bounds");
        const LhvBounds bounds = lhv_bounds(lhv_d);
        json["d"] = lhv_d;
        json["lower"] = round9(bounds.lower);
        json["upper"] = round9(bounds.upper);
        std::vector<std::string> header{"d", "lower", "upper"};
        std::vector<std::string> row{std::to_string(lhv_d), num(bounds.lower), num(bounds.upper)};
        if (lhv_enumerate) {
            const LhvExtrema extrema = enumerate_lhv_extrema(lhv_d);
            header.insert(header.end(), {"min", "max"});
            row.insert(row.end(), {num(extrema.min), num(extrema.max)});
            json["min"] = round9(extrema.min);
            json["max"] = round9(extrema.max);
        }
        if (lhv_sink.format == "json") {
            lhv_sink.write(json.dump(2) + "\n");
        } else {
            lhv_sink.write(csv_table(header, {row}));
        }
        return 0;
    }

    if (opt_cmd->parsed()) {
        if (opt_mode != "epr" && opt_mode != "nopa") {
            throw CLI::ValidationError("--mode must be epr or nopa");
        }
        auto json = json_doc("optimize");
        if (!opt_input.empty()) {
            // Evaluate a settings document on the requested state.
            const SettingsDocument doc = read_settings_file(opt_input);
            if (doc.d != opt_d) {
                throw std::invalid_argument("settings document d does not match --d");
            }
            const double r = opt_mode == "epr" ? std::numeric_limits<double>::infinity()
                                               : (opt_r >= 0 ? opt_r : 1.0);
            const SchmidtDiagonalState state = nopa_truncated_state(opt_d, r);
            const OutcomeVectorSet V = build_outcome_vectors(opt_d);
            const auto& U = doc.settings;
            const auto Q11 = correlation_vector(joint_probabilities(state, U[0], U[2]), V);
            const auto Q12 = correlation_vector(joint_probabilities(state, U[0], U[3]), V);
            const auto Q21 = correlation_vector(joint_probabilities(state, U[1], U[2]), V);
            const auto Q22 = correlation_vector(joint_probabilities(state, U[1], U[3]), V);
            const double bell = bell_quantity(Q11, Q12, Q21, Q22).total;
            json["bell"] = round9(bell);
            json["d"] = opt_d;
            if (opt_sink.format == "json") {
                opt_sink.write(json.dump(2) + "\n");
            } else {
                opt_sink.write(csv_table({"d", "bell"}, {{std::to_string(opt_d), num(bell)}}));
            }
            return 0;
        }
        auto problem = make_problem(
            opt_d, opt_mode, opt_r >= 0 ? std::optional<double>(opt_r) : std::nullopt,
            opt_rmin, opt_rmax, opt_opts);
        const OptimizationResult res = maximize_bell(problem);
        json.update(result_to_json(res));
        if (opt_sink.format == "json") {
            opt_sink.write(json.dump(2) + "\n");
        } else {
            opt_sink.write(csv_table(
                {"d", "bell", "r_opt", "converged"},
                {{std::to_string(opt_d), num(res.best_bell),
                  res.best_r ? num(*res.best_r) : "", res.converged ? "1" : "0"}}));
        }
        return res.converged ? 0 : 2;
    }

    if (fit_cmd->parsed()) {
        std::ifstream in(fit_input);
        if (!in) {
            throw std::runtime_error("cannot open input file " + fit_input);
        }
        std::vector<std::pair<double, double>> points;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            double d, B;
            if (fields >> d >> B) {
                points.emplace_back(d, B);
            }
        }
        const FitModel fit = fit_asymptote(points);
        auto json = json_doc("fit");
        json["a"] = round9(fit.a);
        json["b"] = round9(fit.b);
        json["c"] = round9(fit.c);
        json["e"] = round9(fit.e);
        json["residual_norm"] = round9(fit.residual_norm);
        if (fit_sink.format == "json") {
            fit_sink.write(json.dump(2) + "\n");
        } else {
            fit_sink.write(csv_table({"a", "b", "c", "e", "residual_norm"},
                                     {{num(fit.a), num(fit.b), num(fit.c), num(fit.e),
                                       num(fit.residual_norm)}}));
        }
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
