#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qfzeros/errors.hpp"
#include "qfzeros/ints.hpp"

namespace qfz {

/// Prime factorization with strictly increasing primes.
struct Factorization {
    std::vector<std::pair<Int, unsigned long>> pairs;
    Int value;
};

/// Exact factorization by trial division; inputs are desk scale.
Factorization factorize(const Int& v);

/// Largest e with p^e | v; v must be nonzero.
unsigned long p_adic_valuation(const Int& v, const Int& p);

/// m' with m*m' = 1 (mod eta) and m' in [1, eta]; requires gcd(m, eta) = 1.
Int mod_inverse_bounded(const Int& m, const Int& eta);

/// Componentwise representative of z mod M with entries in (-M/2, M/2].
IntVec small_residue(const IntVec& z, const Int& m);

/// Scalar version of small_residue.
Int small_residue_scalar(const Int& z, const Int& m);

/// x = r_i (mod m_i) for pairwise coprime moduli; smallest nonnegative x.
Int crt(const std::vector<std::pair<Int, Int>>& residues_mod);

struct ThetaPrime {
    Int p;
    unsigned long lambda;  // v_p(delta)
    unsigned long nu;      // v_p(eta)
    int pi;                // 1 for p = 2, else 0
    bool contributes;      // nu > lambda + pi
};

/**
 * The prime product Theta = prod over contributing primes of
 * p^{(n-1)nu(p) - 2(n-1)lambda(p)}, taking the number of variables s as n.
 *
 * The exponent can be negative (nu = lambda + pi + 1 with lambda large), so
 * theta is carried as an exact rational; it is an integer in all the cases
 * exercised here.
 */
struct ThetaData {
    std::size_t n = 0;
    Int delta;
    Int eta;
    std::vector<ThetaPrime> per_prime;
    Rat theta;
};

ThetaData theta(std::size_t n, const Int& delta, const Int& eta);

}  // namespace qfz
