#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qfzeros/constructive.hpp"
#include "qfzeros/experiments.hpp"
#include "qfzeros/instance_io.hpp"
#include "qfzeros/lattice.hpp"

namespace {

using namespace qfz;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBadInput = 3;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "json";
    std::optional<long> radius;
    std::optional<long> max_radius;
    double epsilon = 0.1;
    bool verify = false;
};

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(opts.output);
        if (!out) throw ContractViolation("cannot open output file: " + opts.output);
        out << text << "\n";
    }
}

SearchBudget budget_for(const ProblemInstance& inst, const CommonOpts& opts) {
    SearchBudget b = SearchBudget::defaults_for(inst.form, inst.sys);
    if (opts.radius) b.b_start = Int(*opts.radius);
    if (opts.max_radius) b.b_max = Int(*opts.max_radius);
    if (b.b_start > b.b_max) b.b_start = b.b_max;
    return b;
}

int emit_checks(json& j, const std::vector<TraceCheck>& checks) {
    j["verification"] = checks_to_json(checks);
    for (const TraceCheck& c : checks)
        if (!c.pass) return kExitCheckFailed;
    return kExitOk;
}

int cmd_solve(const CommonOpts& opts, bool exclude_zero) {
    ProblemInstance inst = load_instance_file(opts.input);
    auto x = minimal_solution(inst.form, inst.sys, budget_for(inst, opts), exclude_zero);
    if (!x) {
        std::cerr << "unknown within budget\n";
        return kExitUnknown;
    }
    Rat th = theta(inst.form.dim(), inst.form.det(), inst.sys.eta).theta;
    BoundReport rep = make_report(
        "single", "", inst.form.dim(), inst.form.height(), inst.form.det(), inst.sys.eta, th,
        opts.epsilon,
        bound_single(inst.form.dim(), inst.form.height(), inst.form.det(), inst.sys.eta, th,
                     opts.epsilon),
        norm_sq(*x));
    json j;
    j["solution"] = intvec_to_json(*x);
    j["norm_sq"] = int_to_json(norm_sq(*x));
    j["bound_reports"] = json::array({report_to_json(rep)});
    int code = kExitOk;
    if (opts.verify) {
        std::vector<TraceCheck> checks;
        checks.push_back({"Q(x) = 0", inst.form.eval(*x) == 0, ""});
        checks.push_back({"x congruent to xi", inst.sys.congruent(*x), ""});
        code = emit_checks(j, checks);
    }
    emit(opts, j.dump(2));
    return code;
}

int cmd_pair(const CommonOpts& opts, bool sharpened) {
    ProblemInstance inst = load_instance_file(opts.input);
    auto res = sharpened
                   ? construct_pair_n3(inst.form, inst.sys, budget_for(inst, opts), opts.epsilon)
                   : construct_pair(inst.form, inst.sys, budget_for(inst, opts), opts.epsilon);
    if (!res) {
        std::cerr << "unknown within budget\n";
        return kExitUnknown;
    }
    json j = pair_result_to_json(*res);
    int code = kExitOk;
    if (opts.verify) code = emit_checks(j, verify_pair_result(inst.form, inst.sys, *res));
    emit(opts, j.dump(2));
    return code;
}

int cmd_avoid(const CommonOpts& opts) {
    ProblemInstance inst = load_instance_file(opts.input);
    auto res = construct_avoiding(inst.form, inst.sys, inst.hyperplanes, budget_for(inst, opts),
                                  opts.epsilon);
    if (!res) {
        std::cerr << "unknown within budget\n";
        return kExitUnknown;
    }
    json j = avoid_result_to_json(*res);
    int code = kExitOk;
    if (opts.verify)
        code = emit_checks(j, verify_avoid_result(inst.form, inst.sys, inst.hyperplanes, *res));
    emit(opts, j.dump(2));
    return code;
}

int cmd_oracle(const CommonOpts& opts, unsigned long pair_exponent, bool exclude_zero,
               bool want_pair) {
    ProblemInstance inst = load_instance_file(opts.input);
    SearchBudget budget = budget_for(inst, opts);
    json j;
    if (want_pair) {
        auto p = minimal_pair(inst.form, inst.sys, budget, pair_exponent);
        if (!p) {
            std::cerr << "unknown within budget\n";
            return kExitUnknown;
        }
        j["pair"] = json::array({intvec_to_json(p->first), intvec_to_json(p->second)});
        j["norm_sq"] = json::array(
            {int_to_json(norm_sq(p->first)), int_to_json(norm_sq(p->second))});
    } else {
        auto x = inst.hyperplanes.empty()
                     ? minimal_solution(inst.form, inst.sys, budget, exclude_zero)
                     : minimal_avoiding(inst.form, inst.sys, inst.hyperplanes, budget);
        if (!x) {
            std::cerr << "unknown within budget\n";
            return kExitUnknown;
        }
        j["solution"] = intvec_to_json(*x);
        j["norm_sq"] = int_to_json(norm_sq(*x));
    }
    j["radius_searched"] = int_to_json(budget.b_max);
    emit(opts, j.dump(2));
    return kExitOk;
}

int cmd_bounds(const CommonOpts& opts) {
    ProblemInstance inst = load_instance_file(opts.input);
    const std::size_t n = inst.form.dim();
    if (n < 3) throw ContractViolation("bounds: n must be >= 3");
    const Int& h = inst.form.height();
    const Int& d = inst.form.det();
    const Int& eta = inst.sys.eta;
    if (d == 0) throw ContractViolation("bounds: form is degenerate");
    ThetaData th = theta(n, d, eta);

    auto value = [](const BoundValue& b) {
        return b.exact ? int_to_json(b.exact_value) : json(b.approx());
    };
    json j;
    j["single"] = value(bound_single(n, h, d, eta, th.theta, opts.epsilon));
    j["pair"] = value(bound_pair(n, h, d, eta, th.theta, opts.epsilon));
    j["pair_proposition"] = value(bound_pair_proposition(n, h, d, eta, th.theta, opts.epsilon));
    if (n == 3) {
        j["pair_n3"] = value(bound_pair_n3(h, eta, d));
        j["pair_n3_proposition"] = value(bound_pair_n3_proposition(h, eta, d));
    }
    j["avoid"] = value(bound_avoid(n, h, d, eta, th.theta, opts.epsilon));
    j["theta"] = th.theta.get_str();
    emit(opts, j.dump(2));
    return kExitOk;
}

int cmd_lattice(const CommonOpts& opts, const std::string& axis_str) {
    IntVec axis;
    if (!axis_str.empty()) {
        std::string cur;
        for (char c : axis_str + ",") {
            if (c == ',') {
                if (cur.empty()) throw ContractViolation("bad --axis entry");
                axis.push_back(Int(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
    } else {
        if (opts.input.empty())
            throw ContractViolation("lattice: need --axis or --input");
        ProblemInstance inst = load_instance_file(opts.input);
        auto a = minimal_solution(inst.form, inst.sys, budget_for(inst, opts), true);
        if (!a) {
            std::cerr << "unknown within budget\n";
            return kExitUnknown;
        }
        axis = *a;
        Int c = content(axis);
        if (c > 1)
            for (Int& v : axis) v = div_exact(v, c);
    }
    ProjectionLattice lat = build_projection_lattice(axis);
    MinimaResult minima = successive_minima(lat, lat.rank());
    MinkowskiCertificate cert = minkowski_certificate(lat, minima);
    json j;
    j["lattice"] = lattice_to_json(lat);
    j["minima"] = minima_to_json(minima);
    j["minkowski"] = {{"pass", cert.pass},
                      {"det_identity_ok", cert.det_identity_ok},
                      {"minima_product", cert.minima_product},
                      {"bound", cert.bound}};
    emit(opts, j.dump(2));
    return cert.pass ? kExitOk : kExitCheckFailed;
}

int cmd_experiment(const CommonOpts& opts, ExperimentConfig cfg) {
    cfg.epsilon = opts.epsilon;
    if (opts.radius) cfg.radius_override = Int(*opts.radius);
    if (opts.max_radius) cfg.max_radius_override = Int(*opts.max_radius);
    ExperimentOutput out = run_experiment(cfg);
    if (opts.format == "csv")
        emit(opts, rows_to_csv(out));
    else
        emit(opts, output_to_json(out).dump(2));
    std::size_t errors = 0;
    for (const auto& [k, v] : out.summary.error) errors += v;
    return errors == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact small zeros of quadratic forms under congruence conditions"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool exclude_zero = false;
    unsigned long pair_exponent = 1;
    bool oracle_pair = false;
    std::string axis_str;
    ExperimentConfig cfg;
    std::string pipelines_csv = "pair3";
    bool no_oracle = false;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", opts.input, "instance JSON file");
        if (needs_input) in->required();
        sub->add_option("--output", opts.output, "write result here instead of stdout");
        sub->add_option("--radius", opts.radius, "initial search radius");
        sub->add_option("--max-radius", opts.max_radius, "hard search radius cap");
        sub->add_option("--epsilon", opts.epsilon, "epsilon for n >= 5 bounds");
        sub->add_flag("--verify", opts.verify, "re-run all assertions independently");
    };

    CLI::App* solve = app.add_subcommand("solve", "minimal verified solution of the system");
    add_common(solve, true);
    solve->add_flag("--exclude-zero", exclude_zero, "skip the zero solution");

    CLI::App* pair = app.add_subcommand("pair", "two independent solutions (general pipeline)");
    add_common(pair, true);

    CLI::App* pair3 = app.add_subcommand("pair3", "two independent solutions (sharpened n=3)");
    add_common(pair3, true);

    CLI::App* avoid = app.add_subcommand("avoid", "solution avoiding the given hyperplanes");
    add_common(avoid, true);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force minimal solution or pair");
    add_common(oracle, true);
    oracle->add_flag("--exclude-zero", exclude_zero, "skip the zero solution");
    oracle->add_flag("--pair", oracle_pair, "search for a minimal independent pair");
    oracle->add_option("--pair-exponent", pair_exponent, "w in the (||a||^2)^w ||b||^2 objective");

    CLI::App* bounds = app.add_subcommand("bounds", "print all applicable bound values");
    add_common(bounds, true);

    CLI::App* lattice = app.add_subcommand("lattice", "dump projection lattice and minima");
    add_common(lattice, false);
    lattice->add_option("--axis", axis_str, "comma-separated primitive axis, e.g. 1,2,3");

    CLI::App* experiment = app.add_subcommand("experiment", "seeded random ensemble run");
    add_common(experiment, false);
    experiment->add_option("--n", cfg.n, "dimension");
    experiment->add_option("--count", cfg.count, "number of instances");
    experiment->add_option("--h-max", cfg.h_max, "max |Gram entry|");
    experiment->add_option("--eta-max", cfg.eta_max, "max modulus");
    experiment->add_option("--seed", cfg.seed, "rng seed");
    experiment->add_option("--pipelines", pipelines_csv, "comma list: solve,pair,pair3,avoid");
    experiment->add_option("--hyperplanes", cfg.hyperplane_count, "k for avoid runs");
    experiment->add_option("--format", opts.format, "json or csv");
    experiment->add_flag("--no-oracle", no_oracle, "skip independent oracle columns");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opts, exclude_zero);
        if (pair->parsed()) return cmd_pair(opts, false);
        if (pair3->parsed()) return cmd_pair(opts, true);
        if (avoid->parsed()) return cmd_avoid(opts);
        if (oracle->parsed()) return cmd_oracle(opts, pair_exponent, exclude_zero, oracle_pair);
        if (bounds->parsed()) return cmd_bounds(opts);
        if (lattice->parsed()) return cmd_lattice(opts, axis_str);
        if (experiment->parsed()) {
            cfg.with_oracle = !no_oracle;
            cfg.pipelines.clear();
            std::string cur;
            for (char c : pipelines_csv + ",") {
                if (c == ',') {
                    if (!cur.empty()) cfg.pipelines.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            return cmd_experiment(opts, cfg);
        }
    } catch (const ContractViolation& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return kExitBadInput;
    } catch (const InternalCheckFailure& ex) {
        std::cerr << "internal check failed: " << ex.what() << "\n" << ex.trace_json << "\n";
        return kExitCheckFailed;
    } catch (const AssumptionViolation& ex) {
        std::cerr << "assumption violated: " << ex.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
