#pragma once

#include <string>

#include <json.hpp>

#include "qfzeros/bounds.hpp"
#include "qfzeros/constructive.hpp"
#include "qfzeros/forms.hpp"
#include "qfzeros/lattice.hpp"

namespace qfz {

using json = nlohmann::json;

/// A problem instance as exchanged on the wire:
/// {"n": int, "gram": [[int]], "xi": [int], "eta": int,
///  "hyperplanes": [[int]] (optional)}.
/// "coeffs" (upper-triangular list) is accepted in place of "gram".
struct ProblemInstance {
    QuadraticForm form;
    CongruenceSystem sys;
    HyperplaneSet hyperplanes;
};

/// Integers are emitted as JSON numbers when they fit in 64 bits and as
/// decimal strings otherwise; both forms are accepted on input.
json int_to_json(const Int& v);
Int int_from_json(const json& j);

json intvec_to_json(const IntVec& v);
IntVec intvec_from_json(const json& j);

std::string rat_to_string(const Rat& r);

/// Throws ContractViolation on schema or validation errors.
ProblemInstance parse_instance(const json& j);
ProblemInstance load_instance_file(const std::string& path);
json instance_to_json(const ProblemInstance& inst);

json report_to_json(const BoundReport& r);
json trace_to_json(const ConstructionTrace& t);
json checks_to_json(const std::vector<TraceCheck>& checks);
json pair_result_to_json(const PairResult& r);
json avoid_result_to_json(const AvoidResult& r);

json lattice_to_json(const ProjectionLattice& lat);
json minima_to_json(const MinimaResult& m);

}  // namespace qfz
