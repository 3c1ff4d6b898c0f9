#pragma once

#include <stdexcept>
#include <string>

namespace qfz {

/// Caller broke a documented precondition (dimension mismatch, bad modulus, ...).
struct ContractViolation : std::invalid_argument {
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// An input assumption of a construction failed (e.g. no usable alpha for a prime).
/// Recoverable: callers may fall back to a different pipeline.
struct AssumptionViolation : std::runtime_error {
    explicit AssumptionViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A proven identity failed at runtime. Always a bug; carries the trace so far.
struct InternalCheckFailure : std::logic_error {
    std::string trace_json;
    InternalCheckFailure(const std::string& what, std::string trace)
        : std::logic_error(what), trace_json(std::move(trace)) {}
};

}  // namespace qfz
