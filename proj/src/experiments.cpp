#include "qfzeros/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "qfzeros/arith.hpp"
#include "qfzeros/constructive.hpp"
#include "qfzeros/lattice.hpp"

namespace qfz {

std::uint64_t SplitRng::splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SplitRng SplitRng::for_instance(std::uint64_t seed, std::uint64_t instance_id) {
    std::uint64_t state = seed;
    std::uint64_t base = splitmix64(state);
    std::uint64_t mix = base ^ (instance_id * 0xD1B54A32D192ED03ULL);
    return SplitRng(splitmix64(mix));
}

long SplitRng::uniform(long lo, long hi) {
    if (lo > hi) throw ContractViolation("SplitRng::uniform: empty range");
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<long>(next());  // full 64-bit range
    std::uint64_t threshold = (-range) % range;
    std::uint64_t v;
    do {
        v = next();
    } while (v < threshold);
    return lo + static_cast<long>(v % range);
}

namespace {

IntMat identity_matrix(std::size_t n) {
    IntMat m(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const std::size_t n = a.size();
    IntMat c(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntMat mat_transpose(const IntMat& a) {
    const std::size_t n = a.size();
    IntMat t(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
    return t;
}

}  // namespace

RandomInstance random_isotropic_instance(std::size_t n, long h_max, long eta_max, SplitRng& rng) {
    if (n < 3) throw ContractViolation("random_isotropic_instance: n must be >= 3");
    if (h_max < 1 || eta_max < 1) throw ContractViolation("random_isotropic_instance: bad limits");

    for (int attempt = 0; attempt < 2000; ++attempt) {
        IntMat g0(n, IntVec(n, Int(0)));
        g0[0][1] = 1;
        g0[1][0] = 1;
        for (std::size_t i = 2; i < n; ++i) {
            long d = rng.uniform(1, h_max);
            if (rng.uniform(0, 1)) d = -d;
            g0[i][i] = d;
        }

        IntMat u = identity_matrix(n);
        IntMat u_inv = identity_matrix(n);
        const long shear_values[4] = {-2, -1, 1, 2};
        long shears = rng.uniform(0, 5);
        for (long s = 0; s < shears; ++s) {
            std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
            std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
            if (i == j) continue;
            long c = shear_values[rng.uniform(0, 3)];
            IntMat e = identity_matrix(n);
            e[i][j] = c;
            IntMat e_inv = identity_matrix(n);
            e_inv[i][j] = -c;
            u = mat_mul(u, e);
            u_inv = mat_mul(e_inv, u_inv);  // (U E)^{-1} = E^{-1} U^{-1}
        }

        IntMat gram = mat_mul(mat_transpose(u), mat_mul(g0, u));
        Int height = 0;
        for (const auto& row : gram)
            for (const Int& v : row) {
                Int av = abs(v);
                if (av > height) height = av;
            }
        if (height > h_max) continue;

        QuadraticForm form = QuadraticForm::from_gram(std::move(gram));
        if (!form.nondegenerate())
            throw InternalCheckFailure("random_isotropic_instance: degenerate product", "");

        IntVec known_zero = matrix_column(u_inv, 0);
        if (form.eval(known_zero) != 0)
            throw InternalCheckFailure("random_isotropic_instance: preserved zero broken", "");

        Int eta(rng.uniform(1, eta_max));
        IntVec xi(n);
        for (std::size_t i = 0; i < n; ++i) xi[i] = mod_nonneg(known_zero[i], eta);
        CongruenceSystem sys(std::move(xi), std::move(eta));
        if (!verify_system(form, sys, known_zero))
            throw InternalCheckFailure("random_isotropic_instance: known zero fails system", "");

        return RandomInstance{ProblemInstance{std::move(form), std::move(sys), {}},
                              known_zero};
    }
    throw AssumptionViolation("random_isotropic_instance: rejection budget exceeded; reseed");
}

HyperplaneSet random_feasible_hyperplanes(const QuadraticForm& q, const IntVec& known_zero,
                                          std::size_t k, SplitRng& rng) {
    const std::size_t n = q.dim();
    CongruenceSystem trivial(IntVec(n, Int(0)), Int(1));
    Int radius = sup_norm(known_zero);
    if (radius < 8) radius = 8;
    std::vector<IntVec> zeros = enumerate_solutions(q, trivial, radius);
    std::erase_if(zeros, [](const IntVec& z) { return is_zero(z); });

    for (int attempt = 0; attempt < 50; ++attempt) {
        HyperplaneSet hyps;
        for (std::size_t i = 0; i < k; ++i) {
            IntVec c(n);
            do {
                for (std::size_t j = 0; j < n; ++j) c[j] = Int(rng.uniform(-3, 3));
            } while (is_zero(c));
            hyps.emplace_back(c);
        }
        // reject if some form vanishes on every known zero, or no zero clears
        // all forms at once (keeps the zero-congruent branch feasible)
        bool feasible = !zeros.empty();
        for (const LinearForm& l : hyps) {
            bool some_nonzero = false;
            for (const IntVec& z : zeros)
                if (l.eval(z) != 0) some_nonzero = true;
            if (!some_nonzero) feasible = false;
        }
        if (feasible) {
            bool simultaneous = false;
            for (const IntVec& z : zeros) {
                bool all = true;
                for (const LinearForm& l : hyps)
                    if (l.eval(z) == 0) all = false;
                if (all) simultaneous = true;
            }
            feasible = simultaneous;
        }
        if (feasible) return hyps;
    }
    throw AssumptionViolation("random_feasible_hyperplanes: no feasible draw; reseed");
}

namespace {

double chain_ratio_from_trace(const ConstructionTrace& trace) {
    const Int* rhs_sq = trace.find_scalar("chain_rhs_sq");
    const Int* a_sq = trace.find_scalar("a_norm_sq");
    if (!rhs_sq || !a_sq || *rhs_sq == 0) return 0.0;
    return std::exp2(0.5 * (log2_int(*a_sq) - log2_int(*rhs_sq)));
}

ExperimentRow run_one(const std::string& pipeline, std::size_t id, const RandomInstance& ri,
                      const HyperplaneSet& hyps, const SearchBudget& budget,
                      const ExperimentConfig& cfg) {
    const QuadraticForm& q = ri.instance.form;
    const CongruenceSystem& sys = ri.instance.sys;

    ExperimentRow row;
    row.id = id;
    row.pipeline = pipeline;
    row.n = q.dim();
    row.h = q.height();
    row.eta = sys.eta;
    row.delta = q.det();
    row.theta_val = theta(q.dim(), q.det(), sys.eta).theta;
    row.a_norm_sq = 0;
    row.b_norm_sq = 0;

    auto start = std::chrono::steady_clock::now();
    try {
        if (pipeline == "solve") {
            auto x = minimal_solution(q, sys, budget, /*exclude_zero=*/true);
            if (!x) {
                row.status = "unknown";
            } else {
                row.status = "ok";
                row.outputs = {*x};
                row.a_norm_sq = norm_sq(*x);
                row.reports.push_back(make_report(
                    "single", "", q.dim(), q.height(), q.det(), sys.eta, row.theta_val,
                    cfg.epsilon,
                    bound_single(q.dim(), q.height(), q.det(), sys.eta, row.theta_val, cfg.epsilon),
                    row.a_norm_sq));
            }
        } else if (pipeline == "pair" || pipeline == "pair3") {
            auto res = pipeline == "pair" ? construct_pair(q, sys, budget, cfg.epsilon)
                                          : construct_pair_n3(q, sys, budget, cfg.epsilon);
            if (!res) {
                row.status = "unknown";
            } else {
                row.status = "ok";
                row.outputs = {res->a, res->b};
                row.a_norm_sq = norm_sq(res->a);
                row.b_norm_sq = norm_sq(res->b);
                row.reports = res->reports;
                row.case_path = res->trace.case_path.empty() ? "" : res->trace.case_path.front();
                if (cfg.with_oracle) {
                    auto oa = minimal_solution(q, sys, budget, true);
                    if (oa) row.oracle_a_norm_sq = norm_sq(*oa);
                    unsigned long w = pipeline == "pair" ? 5 : 1;
                    auto op = minimal_pair(q, sys, budget, w);
                    if (op)
                        row.oracle_pair_key = pow_int(norm_sq(op->first), w) * norm_sq(op->second);
                }
            }
        } else if (pipeline == "avoid") {
            auto res = construct_avoiding(q, sys, hyps, budget, cfg.epsilon);
            if (!res) {
                row.status = "unknown";
            } else {
                row.status = "ok";
                row.outputs = {res->a};
                row.a_norm_sq = norm_sq(res->a);
                row.reports = res->reports;
                row.case_path = res->trace.case_path.empty() ? "" : res->trace.case_path.front();
                row.chain_ratio = chain_ratio_from_trace(res->trace);
                if (cfg.with_oracle) {
                    auto oa = minimal_avoiding(q, sys, hyps, budget);
                    if (oa) row.oracle_a_norm_sq = norm_sq(*oa);
                }
            }
        } else {
            throw ContractViolation("unknown pipeline: " + pipeline);
        }
    } catch (const InternalCheckFailure& ex) {
        row.status = std::string("error:") + ex.what();
    } catch (const AssumptionViolation& ex) {
        row.status = std::string("error:") + ex.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                      .count();
    return row;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    if (config.count < 1 || config.h_max < 1 || config.eta_max < 1)
        throw ContractViolation("run_experiment: invalid config");

    ExperimentOutput out;
    out.config = config;

    bool wants_avoid = std::count(config.pipelines.begin(), config.pipelines.end(), "avoid") > 0;

    for (std::size_t id = 0; id < config.count; ++id) {
        SplitRng rng = SplitRng::for_instance(config.seed, id);
        RandomInstance ri = random_isotropic_instance(config.n, config.h_max, config.eta_max, rng);
        HyperplaneSet hyps;
        if (wants_avoid)
            hyps = random_feasible_hyperplanes(ri.instance.form, ri.known_zero,
                                               config.hyperplane_count, rng);

        SearchBudget budget = SearchBudget::defaults_for(ri.instance.form, ri.instance.sys);
        if (config.radius_override) budget.b_start = *config.radius_override;
        if (config.max_radius_override) budget.b_max = *config.max_radius_override;
        if (budget.b_start > budget.b_max) budget.b_start = budget.b_max;

        for (const std::string& p : config.pipelines)
            out.rows.push_back(run_one(p, id, ri, hyps, budget, config));
    }

    // summary: status tallies and per-(pipeline, bound kind, variant) ratio stats
    std::map<std::string, std::vector<double>> ratio_groups;
    std::vector<double> chain;
    for (const ExperimentRow& row : out.rows) {
        auto& bucket = row.status == "ok"          ? out.summary.ok
                       : row.status == "unknown"   ? out.summary.unknown
                                                   : out.summary.error;
        bucket[row.pipeline] += 1;
        if (row.status != "ok") continue;
        for (const BoundReport& r : row.reports)
            ratio_groups[row.pipeline + "|" + r.kind + "|" + r.variant].push_back(r.ratio);
        if (row.chain_ratio > 0) chain.push_back(row.chain_ratio);
    }
    for (const auto& [key, ratios] : ratio_groups) {
        RatioStat stat;
        auto p1 = key.find('|');
        auto p2 = key.find('|', p1 + 1);
        stat.pipeline = key.substr(0, p1);
        stat.kind = key.substr(p1 + 1, p2 - p1 - 1);
        stat.variant = key.substr(p2 + 1);
        stat.count = ratios.size();
        stat.max_ratio = *std::max_element(ratios.begin(), ratios.end());
        stat.median_ratio = median_of(ratios);
        out.summary.ratios.push_back(stat);
    }
    if (!chain.empty()) {
        out.summary.avoid_chain_max = *std::max_element(chain.begin(), chain.end());
        out.summary.avoid_chain_count = chain.size();
    }
    return out;
}

std::string rows_to_csv(const ExperimentOutput& out) {
    std::ostringstream os;
    os << "# qfzeros experiment csv; rng=" << SplitRng::name() << "; seed=" << out.config.seed
       << "\n";
    // wall time lives in the JSON output only: the CSV is byte-reproducible
    os << "# columns: id,pipeline,status,n,H,eta,delta,theta,case_path,outputs,"
          "a_norm_sq,b_norm_sq,oracle_a_norm_sq,oracle_pair_key,"
          "ratio_theorem,ratio_proposition,ratio_single_or_avoid,chain_ratio\n";
    for (const ExperimentRow& r : out.rows) {
        std::string outputs;
        for (std::size_t i = 0; i < r.outputs.size(); ++i) {
            if (i) outputs += ";";
            outputs += vec_to_string(r.outputs[i]);
        }
        double ratio_theorem = 0, ratio_prop = 0, ratio_plain = 0;
        for (const BoundReport& rep : r.reports) {
            if (rep.variant == "theorem") ratio_theorem = rep.ratio;
            else if (rep.variant == "proposition") ratio_prop = rep.ratio;
            else ratio_plain = rep.ratio;
        }
        os << r.id << "," << r.pipeline << "," << r.status << "," << r.n << "," << r.h.get_str()
           << "," << r.eta.get_str() << "," << r.delta.get_str() << "," << r.theta_val.get_str()
           << "," << r.case_path << "," << outputs << "," << r.a_norm_sq.get_str() << ","
           << r.b_norm_sq.get_str() << ","
           << (r.oracle_a_norm_sq ? r.oracle_a_norm_sq->get_str() : "") << ","
           << (r.oracle_pair_key ? r.oracle_pair_key->get_str() : "") << "," << ratio_theorem
           << "," << ratio_prop << "," << ratio_plain << "," << r.chain_ratio << "\n";
    }
    return os.str();
}

json output_to_json(const ExperimentOutput& out) {
    json j;
    j["rng"] = SplitRng::name();
    j["config"] = {{"n", out.config.n},
                   {"count", out.config.count},
                   {"h_max", out.config.h_max},
                   {"eta_max", out.config.eta_max},
                   {"seed", out.config.seed},
                   {"pipelines", out.config.pipelines},
                   {"hyperplane_count", out.config.hyperplane_count},
                   {"epsilon", out.config.epsilon}};
    json rows = json::array();
    for (const ExperimentRow& r : out.rows) {
        json e;
        e["id"] = r.id;
        e["pipeline"] = r.pipeline;
        e["status"] = r.status;
        e["n"] = r.n;
        e["H"] = int_to_json(r.h);
        e["eta"] = int_to_json(r.eta);
        e["delta"] = int_to_json(r.delta);
        e["theta"] = r.theta_val.get_str();
        e["case_path"] = r.case_path;
        json outs = json::array();
        for (const IntVec& o : r.outputs) outs.push_back(intvec_to_json(o));
        e["outputs"] = outs;
        e["a_norm_sq"] = int_to_json(r.a_norm_sq);
        e["b_norm_sq"] = int_to_json(r.b_norm_sq);
        if (r.oracle_a_norm_sq) e["oracle_a_norm_sq"] = int_to_json(*r.oracle_a_norm_sq);
        if (r.oracle_pair_key) e["oracle_pair_key"] = int_to_json(*r.oracle_pair_key);
        json reps = json::array();
        for (const BoundReport& rep : r.reports) reps.push_back(report_to_json(rep));
        e["bound_reports"] = reps;
        if (r.chain_ratio > 0) e["chain_ratio"] = r.chain_ratio;
        e["wall_ms"] = r.wall_ms;
        rows.push_back(e);
    }
    j["rows"] = rows;

    json summary;
    summary["ok"] = out.summary.ok;
    summary["unknown"] = out.summary.unknown;
    summary["error"] = out.summary.error;
    json ratios = json::array();
    for (const RatioStat& s : out.summary.ratios)
        ratios.push_back({{"pipeline", s.pipeline},
                          {"kind", s.kind},
                          {"variant", s.variant},
                          {"count", s.count},
                          {"max_ratio", s.max_ratio},
                          {"median_ratio", s.median_ratio}});
    summary["ratios"] = ratios;
    if (out.summary.avoid_chain_count) {
        summary["avoid_chain_max"] = out.summary.avoid_chain_max;
        summary["avoid_chain_count"] = out.summary.avoid_chain_count;
    }
    j["summary"] = summary;
    return j;
}

}  // namespace qfz
