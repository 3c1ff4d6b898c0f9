#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qfzeros/errors.hpp"
#include "qfzeros/ints.hpp"

namespace qfz {

/// Unimodular integer matrix (rows of rows) whose first column is the
/// primitive vector a. Throws on zero or imprimitive input.
IntMat complete_primitive_basis(const IntVec& a);

inline IntVec matrix_column(const IntMat& m, std::size_t j) {
    IntVec col(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) col[i] = m[i][j];
    return col;
}

/// q = w - alpha*a with alpha = (w.a)/||a||^2; q is orthogonal to a, exactly.
std::pair<RatVec, Rat> project_orthogonal(const IntVec& w, const IntVec& a);

/**
 * The rank-(n-1) lattice Gamma: orthogonal projection of Z^n onto the
 * hyperplane perpendicular to a primitive axis a. Exact rational Gram data;
 * det_sq = det(gram) = 1/||a||^2 is re-verified on construction.
 */
struct ProjectionLattice {
    IntVec axis;
    std::vector<RatVec> basis;      // n-1 spanning vectors of Gamma
    std::vector<IntVec> preimages;  // integer preimages, preimages[i] projects to basis[i]
    RatMat gram;
    Rat det_sq;

    std::size_t ambient_dim() const { return axis.size(); }
    std::size_t rank() const { return basis.size(); }
};

ProjectionLattice build_projection_lattice(const IntVec& a);

/// One successive minimum with its canonical integer lift t = q + alpha*a,
/// |alpha| <= 1/2.
struct LatticeMinimum {
    RatVec q;
    Rat norm_sq;
    IntVec lift;
    Rat alpha;
};

struct MinimaResult {
    std::vector<LatticeMinimum> minima;  // nondecreasing norm_sq
    std::size_t count = 0;
};

/**
 * First `count` successive minima of the projection lattice by complete
 * enumeration (every minimum of Gamma has norm <= 1 since the projections of
 * the standard basis vectors contain n-1 independent vectors of norm <= 1).
 * Deterministic: nondecreasing exact squared norm, lexicographic tie-break.
 */
MinimaResult successive_minima(const ProjectionLattice& lat, std::size_t count);

struct MinkowskiCertificate {
    bool pass = false;
    bool det_identity_ok = false;  // det_sq * ||a||^2 == 1, exact
    double minima_product = 0.0;   // prod ||q_i||
    double bound = 0.0;            // (2^d / V_d) * det(Gamma)
};

/// Checks prod ||q_i|| <= (2^d/V_d) det(Gamma) with 128-bit float evaluation
/// and relative tolerance 1e-12; re-verifies the determinant identity exactly.
MinkowskiCertificate minkowski_certificate(const ProjectionLattice& lat,
                                           const MinimaResult& minima);

}  // namespace qfz
