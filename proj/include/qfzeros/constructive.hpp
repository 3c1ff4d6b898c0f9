#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfzeros/bounds.hpp"
#include "qfzeros/forms.hpp"
#include "qfzeros/ints.hpp"
#include "qfzeros/oracle.hpp"

namespace qfz {

struct TraceCheck {
    std::string name;
    bool pass = false;
    std::string witness;
};

/**
 * Full audit record of a pipeline run: case labels, named intermediate
 * values, outputs, and every asserted identity with its witness. A trace
 * with a failed check is never returned; the pipeline throws instead.
 */
struct ConstructionTrace {
    std::string pipeline;
    std::vector<std::string> case_path;
    std::vector<std::pair<std::string, IntVec>> vectors;
    std::vector<std::pair<std::string, Int>> scalars;
    std::vector<std::pair<std::string, Rat>> rationals;
    std::vector<std::pair<std::string, std::string>> notes;  // non-gating observations
    std::vector<IntVec> outputs;
    std::vector<TraceCheck> checks;

    const Int* find_scalar(const std::string& name) const;
    const IntVec* find_vector(const std::string& name) const;
    std::string render() const;
};

struct PairResult {
    IntVec a, b;
    ConstructionTrace trace;
    std::vector<BoundReport> reports;
};

struct AvoidResult {
    IntVec a;
    ConstructionTrace trace;
    std::vector<BoundReport> reports;
};

// ---- primitive constructions ----

/// Isotropic reflection Q(v)u - D(u,v)v; satisfies Q(out) = Q(v)^2 Q(u), so it
/// maps zeros of Q to zeros of Q.
IntVec reflect(const QuadraticForm& q, const IntVec& u, const IntVec& v);

/// x_n = z (mod M) with ||x_n||_inf <= M/2 + M, independent from the n-1
/// given independent vectors: the small residue of z, shifted by M e_i when
/// the residue alone is dependent.
IntVec extend_independent(const std::vector<IntVec>& partial, const IntVec& z, const Int& m);

/// Black-box integer polynomial with a declared (correct) total degree bound.
struct BlackBoxPoly {
    std::size_t arity = 0;
    unsigned long degree = 0;
    std::function<Int(const IntVec&)> eval;
};

/// q = z (mod M) with f(q) != 0 and ||q||_inf <= M/2 + deg*M, by scanning
/// arithmetic progressions coordinate by coordinate (last coordinate first).
/// Throws ContractViolation when every scan vanishes (f identically zero).
IntVec nonvanishing_point(const BlackBoxPoly& f, const IntVec& z, const Int& m);

/// m'*x for m' = mod_inverse_bounded(m, eta); turns x = m*xi into x = xi.
IntVec apply_unit_scaling(const IntVec& x, const Int& m, const CongruenceSystem& sys);

/// Smallest nonnegative m with b0 = m*xi (mod eta) and gcd(m, eta) = 1,
/// solved componentwise and intersected; nullopt when no such m exists.
std::optional<Int> recover_scaling_factor(const IntVec& b0, const CongruenceSystem& sys);

/// Smallest nonnegative alpha such that z = alpha*a + t has
/// v_p(Q(z)) <= lambda(p) + pi(p) for every prime p | eta. Requires Q(a) = 0.
/// Throws AssumptionViolation naming the first prime with no usable alpha.
Int choose_alpha(const QuadraticForm& q, const IntVec& a, const IntVec& t, const Int& eta,
                 const Int& delta);

// ---- pipelines ----

/// Zero-congruent case: scales a minimal independent pair of zeros of Q by
/// eta. nullopt when the oracle finds no pair within budget.
std::optional<PairResult> davenport_scaled_pair(const QuadraticForm& q,
                                                const CongruenceSystem& sys,
                                                const SearchBudget& budget,
                                                double epsilon = 0.1);

/// General pair pipeline for n >= 3: minimal solution, projection lattice
/// minima, then either b = a + eta*t_j or a double-reflection transport.
std::optional<PairResult> construct_pair(const QuadraticForm& q, const CongruenceSystem& sys,
                                         const SearchBudget& budget, double epsilon = 0.1);

/// Sharpened n = 3 pipeline with the alpha-shift keeping prod p^l(p) <= 2|det Q|.
/// Falls back to construct_pair when no alpha exists; the fallback is recorded.
std::optional<PairResult> construct_pair_n3(const QuadraticForm& q, const CongruenceSystem& sys,
                                            const SearchBudget& budget, double epsilon = 0.1);

/// Hyperplane-avoidance pipeline: reflect off a fixed short anisotropic t,
/// pick q with f(q) = prod L_i(u_q) != 0 in the right residue class, undo the
/// modulus, and rescale.
std::optional<AvoidResult> construct_avoiding(const QuadraticForm& q, const CongruenceSystem& sys,
                                              const HyperplaneSet& hyperplanes,
                                              const SearchBudget& budget, double epsilon = 0.1);

// ---- independent re-verification (used by --verify and tests) ----

std::vector<TraceCheck> verify_pair_result(const QuadraticForm& q, const CongruenceSystem& sys,
                                           const PairResult& result);

std::vector<TraceCheck> verify_avoid_result(const QuadraticForm& q, const CongruenceSystem& sys,
                                            const HyperplaneSet& hyperplanes,
                                            const AvoidResult& result);

}  // namespace qfz
