#pragma once

#include <cmath>
#include <string>

#include "qfzeros/arith.hpp"
#include "qfzeros/ints.hpp"

namespace qfz {

/// log2 of a positive integer, good to double precision at any magnitude.
double log2_int(const Int& v);
double log2_rat(const Rat& v);

/**
 * A theoretical bound value with the implied constant taken as 1.
 *
 * Branches with integer exponents are carried exactly; the n >= 5 branches
 * involve epsilon powers and are carried in log2 form only. log2_value is
 * always set and is the canonical representation for ratio arithmetic.
 */
struct BoundValue {
    bool exact = false;
    Int exact_value;    // meaningful when exact
    double log2_value = 0.0;

    double approx() const { return std::exp2(log2_value); }
};

BoundValue bound_single(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                        const Rat& theta_val, double epsilon);

/// Theorem-variant bound on ||a||^5 ||b||.
BoundValue bound_pair(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                      const Rat& theta_val, double epsilon);

/// Proposition-variant bound on ||a||^5 ||b|| (lower eta exponents).
BoundValue bound_pair_proposition(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                                  const Rat& theta_val, double epsilon);

/// n = 3 sharpened bound on ||a|| ||b||: H^4 eta^6 |delta|^4.
BoundValue bound_pair_n3(const Int& h, const Int& eta, const Int& delta);

/// Proposition variant: H^4 eta^4 |delta|^4.
BoundValue bound_pair_n3_proposition(const Int& h, const Int& eta, const Int& delta);

BoundValue bound_avoid(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                       const Rat& theta_val, double epsilon);

/**
 * Constant-free comparison record: a theoretical bound, the exact squared
 * empirical height, and their ratio. Ratios are reported, never gated on.
 */
struct BoundReport {
    std::string kind;   // single | pair | pair_n3 | avoid
    std::size_t n = 0;
    Int h, delta, eta;
    Rat theta_val;
    double epsilon = 0.0;
    std::string variant;  // theorem | proposition | (empty)
    BoundValue bound;
    Int empirical_sq;     // exact square of the measured height product
    double empirical = 0.0;
    double ratio = 0.0;   // empirical / bound
};

BoundReport make_report(std::string kind, std::string variant, std::size_t n, const Int& h,
                        const Int& delta, const Int& eta, const Rat& theta_val, double epsilon,
                        BoundValue bound, Int empirical_sq);

}  // namespace qfz
