#include "qfzeros/instance_io.hpp"

#include <fstream>

namespace qfz {

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
    return json(v.get_str());
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ContractViolation("not a decimal integer string: " + j.get<std::string>());
        }
    }
    throw ContractViolation("expected integer or decimal string, got " + j.dump());
}

json intvec_to_json(const IntVec& v) {
    json arr = json::array();
    for (const Int& x : v) arr.push_back(int_to_json(x));
    return arr;
}

IntVec intvec_from_json(const json& j) {
    if (!j.is_array()) throw ContractViolation("expected array of integers, got " + j.dump());
    IntVec v;
    v.reserve(j.size());
    for (const json& x : j) v.push_back(int_from_json(x));
    return v;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

ProblemInstance parse_instance(const json& j) {
    if (!j.is_object()) throw ContractViolation("instance must be a JSON object");
    if (!j.contains("n")) throw ContractViolation("instance missing \"n\"");
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 1 || n > 8) throw ContractViolation("instance n out of supported range [1, 8]");
    const auto un = static_cast<std::size_t>(n);

    QuadraticForm form = [&] {
        if (j.contains("gram")) {
            const json& g = j.at("gram");
            if (!g.is_array() || g.size() != un)
                throw ContractViolation("gram must be an n x n array");
            IntMat gram;
            for (const json& row : g) {
                IntVec r = intvec_from_json(row);
                if (r.size() != un) throw ContractViolation("gram must be an n x n array");
                gram.push_back(std::move(r));
            }
            return QuadraticForm::from_gram(std::move(gram));
        }
        if (j.contains("coeffs"))
            return QuadraticForm::from_upper_coeffs(un, intvec_from_json(j.at("coeffs")));
        throw ContractViolation("instance needs \"gram\" or \"coeffs\"");
    }();

    IntVec xi = j.contains("xi") ? intvec_from_json(j.at("xi")) : IntVec(un, Int(0));
    if (xi.size() != un) throw ContractViolation("xi must have length n");
    Int eta = j.contains("eta") ? int_from_json(j.at("eta")) : Int(1);
    if (eta < 1) throw ContractViolation("eta must be >= 1");

    HyperplaneSet hyps;
    if (j.contains("hyperplanes")) {
        for (const json& h : j.at("hyperplanes")) {
            IntVec c = intvec_from_json(h);
            if (c.size() != un) throw ContractViolation("hyperplane must have length n");
            if (is_zero(c)) throw ContractViolation("hyperplane form must be nonzero");
            hyps.emplace_back(std::move(c));
        }
    }
    return ProblemInstance{std::move(form), CongruenceSystem(std::move(xi), std::move(eta)),
                           std::move(hyps)};
}

ProblemInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& ex) {
        throw ContractViolation(std::string("instance JSON parse error: ") + ex.what());
    }
    return parse_instance(j);
}

json instance_to_json(const ProblemInstance& inst) {
    json j;
    j["n"] = inst.form.dim();
    json gram = json::array();
    for (const IntVec& row : inst.form.gram()) gram.push_back(intvec_to_json(row));
    j["gram"] = gram;
    j["xi"] = intvec_to_json(inst.sys.xi);
    j["eta"] = int_to_json(inst.sys.eta);
    if (!inst.hyperplanes.empty()) {
        json h = json::array();
        for (const LinearForm& l : inst.hyperplanes) h.push_back(intvec_to_json(l.coeffs));
        j["hyperplanes"] = h;
    }
    if (inst.form.doubled()) j["doubled"] = true;
    return j;
}

json report_to_json(const BoundReport& r) {
    json j;
    j["kind"] = r.kind;
    if (!r.variant.empty()) j["variant"] = r.variant;
    j["n"] = r.n;
    j["H"] = int_to_json(r.h);
    j["delta"] = int_to_json(r.delta);
    j["eta"] = int_to_json(r.eta);
    j["theta"] = rat_to_string(r.theta_val);
    j["epsilon"] = r.epsilon;
    j["bound_exact"] = r.bound.exact;
    if (r.bound.exact) j["bound"] = int_to_json(r.bound.exact_value);
    j["bound_log2"] = r.bound.log2_value;
    j["empirical_sq"] = int_to_json(r.empirical_sq);
    j["empirical"] = r.empirical;
    j["ratio"] = r.ratio;
    return j;
}

json checks_to_json(const std::vector<TraceCheck>& checks) {
    json arr = json::array();
    for (const TraceCheck& c : checks) {
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.witness.empty()) e["witness"] = c.witness;
        arr.push_back(e);
    }
    return arr;
}

json trace_to_json(const ConstructionTrace& t) {
    json j;
    j["pipeline"] = t.pipeline;
    j["case_path"] = t.case_path;
    json vecs = json::object();
    for (const auto& [k, v] : t.vectors) vecs[k] = intvec_to_json(v);
    j["vectors"] = vecs;
    json scalars = json::object();
    for (const auto& [k, v] : t.scalars) scalars[k] = int_to_json(v);
    j["scalars"] = scalars;
    json rats = json::object();
    for (const auto& [k, v] : t.rationals) rats[k] = rat_to_string(v);
    if (!rats.empty()) j["rationals"] = rats;
    if (!t.notes.empty()) {
        json notes = json::object();
        for (const auto& [k, v] : t.notes) notes[k] = v;
        j["notes"] = notes;
    }
    json outs = json::array();
    for (const IntVec& o : t.outputs) outs.push_back(intvec_to_json(o));
    j["outputs"] = outs;
    j["checks"] = checks_to_json(t.checks);
    return j;
}

json pair_result_to_json(const PairResult& r) {
    json j;
    j["outputs"] = json::array({intvec_to_json(r.a), intvec_to_json(r.b)});
    j["trace"] = trace_to_json(r.trace);
    json reps = json::array();
    for (const BoundReport& rep : r.reports) reps.push_back(report_to_json(rep));
    j["bound_reports"] = reps;
    return j;
}

json avoid_result_to_json(const AvoidResult& r) {
    json j;
    j["outputs"] = json::array({intvec_to_json(r.a)});
    j["trace"] = trace_to_json(r.trace);
    json reps = json::array();
    for (const BoundReport& rep : r.reports) reps.push_back(report_to_json(rep));
    j["bound_reports"] = reps;
    return j;
}

namespace {

json ratvec_to_json(const RatVec& v) {
    json arr = json::array();
    for (const Rat& x : v) arr.push_back(rat_to_string(x));
    return arr;
}

}  // namespace

json lattice_to_json(const ProjectionLattice& lat) {
    json j;
    j["axis"] = intvec_to_json(lat.axis);
    json basis = json::array();
    for (const RatVec& b : lat.basis) basis.push_back(ratvec_to_json(b));
    j["basis"] = basis;
    json pre = json::array();
    for (const IntVec& p : lat.preimages) pre.push_back(intvec_to_json(p));
    j["preimages"] = pre;
    j["det_sq"] = rat_to_string(lat.det_sq);
    return j;
}

json minima_to_json(const MinimaResult& m) {
    json arr = json::array();
    for (const LatticeMinimum& min : m.minima) {
        json e;
        e["q"] = ratvec_to_json(min.q);
        e["norm_sq"] = rat_to_string(min.norm_sq);
        e["lift"] = intvec_to_json(min.lift);
        e["alpha"] = rat_to_string(min.alpha);
        arr.push_back(e);
    }
    return json{{"count", m.count}, {"minima", arr}};
}

}  // namespace qfz
