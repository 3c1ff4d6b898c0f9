#include "qfzeros/lattice.hpp"

#include <algorithm>

namespace qfz {

namespace {

// Round to nearest with ties toward +infinity: floor(x + 1/2).
Int rat_round(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

// Shift count so that alpha - k lands in (-1/2, 1/2].
Int half_open_shift(const Rat& alpha) { return rat_ceil(alpha - Rat(1, 2)); }

}  // namespace

IntMat complete_primitive_basis(const IntVec& a) {
    const std::size_t n = a.size();
    if (n == 0 || is_zero(a)) throw ContractViolation("complete_primitive_basis: zero vector");
    if (content(a) != 1) throw ContractViolation("complete_primitive_basis: vector not primitive");

    IntMat m(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;

    // Reduce a to e_1 by elementary row steps on (0, i); accumulate the
    // inverse column operations into m so that m * e_1 = a and det m = 1.
    IntVec v = a;
    for (std::size_t i = 1; i < n; ++i) {
        if (v[i] == 0) continue;
        Int s, t;
        Int g = ext_gcd(v[0], v[i], s, t);
        Int ap = div_exact(v[0], g);
        Int bp = div_exact(v[i], g);
        for (std::size_t r = 0; r < n; ++r) {
            Int c0 = m[r][0], ci = m[r][i];
            m[r][0] = ap * c0 + bp * ci;
            m[r][i] = -t * c0 + s * ci;
        }
        v[0] = g;
        v[i] = 0;
    }
    if (v[0] < 0) {
        // happens only when every other entry was zero, i.e. a = -e_k
        for (std::size_t r = 0; r < n; ++r) m[r][0] = -m[r][0];
        v[0] = -v[0];
    }

    if (matrix_column(m, 0) != a || abs(det_bareiss(m)) != 1)
        throw InternalCheckFailure("complete_primitive_basis: completion invariant broken", "");
    return m;
}

std::pair<RatVec, Rat> project_orthogonal(const IntVec& w, const IntVec& a) {
    if (a.size() != w.size()) throw ContractViolation("project_orthogonal: dimension mismatch");
    if (is_zero(a)) throw ContractViolation("project_orthogonal: zero axis");
    Rat alpha(vec_dot(w, a), norm_sq(a));
    alpha.canonicalize();
    RatVec q = rvec_sub(to_rat(w), rvec_scale(alpha, to_rat(a)));
    return {std::move(q), std::move(alpha)};
}

ProjectionLattice build_projection_lattice(const IntVec& a) {
    ProjectionLattice lat;
    lat.axis = a;
    IntMat basis_matrix = complete_primitive_basis(a);  // validates primitivity
    const std::size_t n = a.size();

    for (std::size_t j = 1; j < n; ++j) {
        IntVec w = matrix_column(basis_matrix, j);
        auto [q, alpha] = project_orthogonal(w, a);
        lat.preimages.push_back(std::move(w));
        lat.basis.push_back(std::move(q));
    }

    lat.gram.assign(n - 1, RatVec(n - 1));
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) lat.gram[i][j] = rvec_dot(lat.basis[i], lat.basis[j]);
    lat.det_sq = det_rat(lat.gram);

    if (lat.det_sq * Rat(norm_sq(a)) != 1)
        throw InternalCheckFailure("build_projection_lattice: det(Gamma)^2 != 1/||a||^2", "");
    return lat;
}

namespace {

struct Candidate {
    RatVec q;
    Rat norm_sq;
    IntVec preimage;
};

// Gram-Schmidt data of the lattice Gram matrix: squared lengths d_i of the
// orthogonalized basis and projection coefficients mu[j][i] (j > i).
struct GramSchmidt {
    std::vector<Rat> d;
    RatMat mu;
};

GramSchmidt gram_schmidt(const RatMat& gram) {
    const std::size_t m = gram.size();
    GramSchmidt gs;
    gs.d.assign(m, Rat(0));
    gs.mu.assign(m, RatVec(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        Rat di = gram[i][i];
        for (std::size_t k = 0; k < i; ++k) di -= gs.mu[i][k] * gs.mu[i][k] * gs.d[k];
        if (di <= 0)
            throw InternalCheckFailure("successive_minima: Gram matrix not positive definite", "");
        gs.d[i] = di;
        for (std::size_t j = i + 1; j < m; ++j) {
            Rat v = gram[j][i];
            for (std::size_t k = 0; k < i; ++k) v -= gs.mu[j][k] * gs.mu[i][k] * gs.d[k];
            gs.mu[j][i] = v / di;
        }
    }
    return gs;
}

// Complete enumeration of nonzero coefficient vectors with lattice norm^2 <= r_sq.
// Levels descend from the last coordinate; candidate c_i values are scanned
// outward from the real center, so no square roots are needed.
void enumerate_level(const ProjectionLattice& lat, const GramSchmidt& gs, std::size_t level,
                     const Rat& remaining, std::vector<Int>& coeff, std::vector<Candidate>& out) {
    const std::size_t m = lat.rank();
    if (level == static_cast<std::size_t>(-1)) {
        bool zero = true;
        for (const Int& c : coeff)
            if (c != 0) zero = false;
        if (zero) return;
        RatVec q(lat.ambient_dim(), Rat(0));
        IntVec w(lat.ambient_dim(), Int(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (coeff[i] == 0) continue;
            q = rvec_add(q, rvec_scale(Rat(coeff[i]), lat.basis[i]));
            w = vec_add(w, vec_scale(coeff[i], lat.preimages[i]));
        }
        out.push_back({std::move(q), Rat(0), std::move(w)});
        out.back().norm_sq = rnorm_sq(out.back().q);
        return;
    }

    Rat center = 0;
    for (std::size_t j = level + 1; j < m; ++j)
        if (coeff[j] != 0) center += gs.mu[j][level] * Rat(coeff[j]);

    Int c0 = rat_round(-center);
    for (Int c = c0;; ++c) {
        Rat off = Rat(c) + center;
        Rat val = gs.d[level] * off * off;
        if (val > remaining) break;
        coeff[level] = c;
        enumerate_level(lat, gs, level - 1, remaining - val, coeff, out);
    }
    for (Int c = c0 - 1;; --c) {
        Rat off = Rat(c) + center;
        Rat val = gs.d[level] * off * off;
        if (val > remaining) break;
        coeff[level] = c;
        enumerate_level(lat, gs, level - 1, remaining - val, coeff, out);
    }
    coeff[level] = 0;
}

}  // namespace

MinimaResult successive_minima(const ProjectionLattice& lat, std::size_t count) {
    const std::size_t m = lat.rank();
    if (count < 1 || count > m) throw ContractViolation("successive_minima: count out of range");

    GramSchmidt gs = gram_schmidt(lat.gram);

    // The projections of the standard basis vectors include m independent
    // lattice vectors of norm <= 1, so every successive minimum is <= 1 and
    // the first radius already certifies completeness.
    Rat r_sq(1);
    for (int round = 0; round < 8; ++round) {
        std::vector<Candidate> cands;
        std::vector<Int> coeff(m, Int(0));
        enumerate_level(lat, gs, m - 1, r_sq, coeff, cands);

        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            int c = cmp(a.norm_sq, b.norm_sq);
            if (c != 0) return c < 0;
            return rlex_less(a.q, b.q);
        });

        MinimaResult result;
        RatMat picked_dirs;
        for (const Candidate& cand : cands) {
            if (result.minima.size() == count) break;
            picked_dirs.push_back(cand.q);
            if (rank_rat(picked_dirs) != picked_dirs.size()) {
                picked_dirs.pop_back();
                continue;
            }

            LatticeMinimum min;
            min.q = cand.q;
            min.norm_sq = cand.norm_sq;
            auto [q_check, alpha] = project_orthogonal(cand.preimage, lat.axis);
            if (q_check != cand.q)
                throw InternalCheckFailure("successive_minima: preimage does not project to q", "");
            Int shift = half_open_shift(alpha);
            min.alpha = alpha - Rat(shift);
            min.lift = vec_sub(cand.preimage, vec_scale(shift, lat.axis));

            // lift = q + alpha*a exactly, |alpha| <= 1/2, ||t||^2 <= ||q||^2 + ||a||^2
            RatVec recon = rvec_add(min.q, rvec_scale(min.alpha, to_rat(lat.axis)));
            if (recon != to_rat(min.lift) || abs(min.alpha) > Rat(1, 2) ||
                Rat(norm_sq(min.lift)) > min.norm_sq + Rat(norm_sq(lat.axis)))
                throw InternalCheckFailure("successive_minima: lift invariant broken", "");

            result.minima.push_back(std::move(min));
        }

        if (result.minima.size() == count) {
            result.count = count;
            std::vector<IntVec> full = {lat.axis};
            for (const auto& min : result.minima) full.push_back(min.lift);
            if (rank_int(full) != full.size())
                throw InternalCheckFailure("successive_minima: lifts not independent with axis", "");
            return result;
        }
        r_sq *= 4;  // unreachable for count <= rank; kept as a safety net
    }
    throw InternalCheckFailure("successive_minima: enumeration failed to certify minima", "");
}

namespace {

const char* kPiDigits =
    "3.1415926535897932384626433832795028841971693993751058209749445923078164062862"
    "089986280348253421170679821480865132823066470938446095505822317253594081284811";

// Unit-ball volume V_d via V_d = V_{d-2} * 2*pi/d.
mpf_class unit_ball_volume(std::size_t d, const mpf_class& pi) {
    mpf_class v0(1, 256), v1(2, 256);
    if (d == 0) return v0;
    mpf_class acc = (d % 2 == 0) ? v0 : v1;
    for (std::size_t k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) acc *= 2 * pi / k;
    return acc;
}

mpf_class sqrt_rat(const Rat& r) {
    mpf_class x(0, 256);
    mpf_set_q(x.get_mpf_t(), r.get_mpq_t());
    return sqrt(x);
}

}  // namespace

MinkowskiCertificate minkowski_certificate(const ProjectionLattice& lat,
                                           const MinimaResult& minima) {
    const std::size_t d = lat.rank();
    if (minima.count != d || minima.minima.size() != d)
        throw ContractViolation("minkowski_certificate: minima incomplete");

    MinkowskiCertificate cert;
    cert.det_identity_ok = (lat.det_sq * Rat(norm_sq(lat.axis)) == 1);

    Rat prod_sq(1);
    for (const auto& min : minima.minima) prod_sq *= min.norm_sq;

    mpf_class pi(kPiDigits, 256);
    mpf_class lhs = sqrt_rat(prod_sq);
    mpf_class two_pow(1, 256);
    mpf_mul_2exp(two_pow.get_mpf_t(), two_pow.get_mpf_t(), d);
    mpf_class rhs = two_pow / unit_ball_volume(d, pi) * sqrt_rat(lat.det_sq);

    mpf_class tol = rhs * mpf_class(1e-12, 256);
    cert.pass = cert.det_identity_ok && (lhs <= rhs + tol);
    cert.minima_product = lhs.get_d();
    cert.bound = rhs.get_d();
    return cert;
}

}  // namespace qfz
