#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qfzeros/forms.hpp"
#include "qfzeros/ints.hpp"

namespace qfz {

/// Growing-radius search budget. Absence of a solution within b_max means
/// "unknown within budget", never "no solution exists".
struct SearchBudget {
    Int b_start = 4;
    Int b_max = 64;
    Rat growth = Rat(2);

    static SearchBudget defaults_for(const QuadraticForm& q, const CongruenceSystem& sys);
};

/**
 * Exactly the set {x : ||x||_inf <= radius, x = xi (mod eta), Q(x) = 0} in
 * lexicographic order. Coordinates step through their residue class; the last
 * coordinate is recovered by solving the remaining integer quadratic, so the
 * cost is (2B/eta)^(n-1) rather than (2B/eta)^n.
 */
std::vector<IntVec> enumerate_solutions(const QuadraticForm& q, const CongruenceSystem& sys,
                                        const Int& radius);

/// Solution of least squared Euclidean norm within budget (lex tie-break);
/// scans one extra certification round so the reported minimum is exact
/// within the b_max box.
std::optional<IntVec> minimal_solution(const QuadraticForm& q, const CongruenceSystem& sys,
                                       const SearchBudget& budget, bool exclude_zero);

/// Ordered pair of linearly independent solutions minimizing
/// (||a||^2)^w * ||b||^2 within the first radius that admits any such pair.
std::optional<std::pair<IntVec, IntVec>> minimal_pair(const QuadraticForm& q,
                                                      const CongruenceSystem& sys,
                                                      const SearchBudget& budget,
                                                      unsigned long w);

/// Minimal nonzero solution with L(x) != 0 for every given linear form.
std::optional<IntVec> minimal_avoiding(const QuadraticForm& q, const CongruenceSystem& sys,
                                       const HyperplaneSet& hyperplanes,
                                       const SearchBudget& budget);

/// Minimal-product independent pair of zeros of Q with no congruence
/// condition (the Davenport configuration).
std::optional<std::pair<IntVec, IntVec>> two_independent_zeros(const QuadraticForm& q,
                                                               const SearchBudget& budget);

}  // namespace qfz
