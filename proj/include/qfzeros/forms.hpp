#pragma once

#include <cstddef>
#include <vector>

#include "qfzeros/errors.hpp"
#include "qfzeros/ints.hpp"

namespace qfz {

/**
 * Quadratic form Q(x) = x^T G x with a symmetric integer Gram matrix G.
 *
 * The Gram convention keeps every derived quantity integral: the determinant,
 * the height (max |G_ij|), and the doubled bilinear form D(x,y) = 2 x^T G y.
 * Forms given as upper-triangular coefficient lists are doubled when needed so
 * that G stays integral; `doubled` records that rescaling (the zero set is
 * unchanged).
 */
class QuadraticForm {
  public:
    /// Validates symmetry and caches det/height.
    static QuadraticForm from_gram(IntMat gram);

    /// Importer for Q = sum_{i<=j} c_ij x_i x_j, coeffs in row-major
    /// upper-triangular order (c_11, c_12, ..., c_1n, c_22, ...).
    /// Doubles the form when an off-diagonal coefficient is odd.
    static QuadraticForm from_upper_coeffs(std::size_t n, const std::vector<Int>& coeffs);

    std::size_t dim() const { return n_; }
    const IntMat& gram() const { return gram_; }
    const Int& det() const { return det_; }
    const Int& height() const { return height_; }
    bool doubled() const { return doubled_; }

    bool nondegenerate() const { return det_ != 0; }

    /// Q(x), exact.
    Int eval(const IntVec& x) const;

    /// D(x,y) = Q(x+y) - Q(x) - Q(y) = 2 x^T G y, the integral bilinear companion.
    Int eval_bilinear_double(const IntVec& x, const IntVec& y) const;

    /// Q extended to rational vectors.
    Rat eval_rat(const RatVec& x) const;

  private:
    QuadraticForm() = default;

    std::size_t n_ = 0;
    IntMat gram_;
    Int det_;
    Int height_;
    bool doubled_ = false;
};

/// Nonzero integral linear form L(x) = c . x.
struct LinearForm {
    IntVec coeffs;

    explicit LinearForm(IntVec c);
    Int eval(const IntVec& x) const;
};

using HyperplaneSet = std::vector<LinearForm>;

/// The congruence constraint x = xi (mod eta), imposed componentwise.
struct CongruenceSystem {
    IntVec xi;
    Int eta;

    CongruenceSystem(IntVec xi_, Int eta_);

    std::size_t dim() const { return xi.size(); }
    bool congruent(const IntVec& x) const;
    /// True iff 0 satisfies the congruence, i.e. eta | xi.
    bool zero_is_congruent() const;
};

/// Free-function mirrors of the member evaluators.
Int eval_form(const QuadraticForm& q, const IntVec& x);
Int eval_bilinear_double(const QuadraticForm& q, const IntVec& x, const IntVec& y);
Int eval_linear(const LinearForm& l, const IntVec& x);

/// True iff Q(x) = 0 and x = xi (mod eta).
bool verify_system(const QuadraticForm& q, const CongruenceSystem& sys, const IntVec& x);

bool is_nondegenerate(const QuadraticForm& q);

}  // namespace qfz
