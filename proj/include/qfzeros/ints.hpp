#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qfz {

using Int = mpz_class;
using Rat = mpq_class;

/// Integer vector in Z^n. All norm decisions use exact squared norms.
using IntVec = std::vector<Int>;
/// Rational vector in Q^n, entries kept in lowest terms by mpq.
using RatVec = std::vector<Rat>;

using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// ---- integer scalar helpers ----

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// g = gcd(a,b) together with s,t such that s*a + t*b = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Floor square root of v >= 0.
inline Int isqrt(const Int& v) {
    if (v < 0) throw std::invalid_argument("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

/// Representative of z mod m in [0, m), m >= 1.
inline Int mod_nonneg(const Int& z, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& v) {
    return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Exact quotient v/d; caller guarantees divisibility.
inline Int div_exact(const Int& v, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Floor of the rational r.
inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

/// Ceiling of the rational r.
inline Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// ---- integer vector operations ----

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec vec_scale(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Int vec_dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Exact squared Euclidean norm.
inline Int norm_sq(const IntVec& a) { return vec_dot(a, a); }

inline Int sup_norm(const IntVec& a) {
    Int m = 0;
    for (const Int& v : a) {
        Int av = abs(v);
        if (av > m) m = av;
    }
    return m;
}

inline bool is_zero(const IntVec& a) {
    for (const Int& v : a) if (v != 0) return false;
    return true;
}

/// gcd of all entries; 0 for the zero vector.
inline Int content(const IntVec& a) {
    Int g = 0;
    for (const Int& v : a) g = gcd(g, v);
    return g;
}

inline bool is_primitive(const IntVec& a) { return content(a) == 1; }

/// Entrywise numeric lexicographic order; the global tie-break for "minimal".
inline bool lex_less(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline IntVec unit_vector(std::size_t n, std::size_t i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    return e;
}

inline std::string vec_to_string(const IntVec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

// ---- rational vector operations ----

inline RatVec to_rat(const IntVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
    return r;
}

inline RatVec rvec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec rvec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec rvec_scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Rat rvec_dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat rnorm_sq(const RatVec& a) { return rvec_dot(a, a); }

inline bool rvec_is_zero(const RatVec& a) {
    for (const Rat& v : a) if (v != 0) return false;
    return true;
}

inline bool rlex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

inline std::string rvec_to_string(const RatVec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

// ---- exact linear algebra on small matrices ----

/// Determinant by fraction-free Bareiss elimination; exact for integer input.
Int det_bareiss(IntMat a);

/// Rank over Q of the given rows.
std::size_t rank_rat(RatMat rows);

std::size_t rank_int(const std::vector<IntVec>& rows);

/// True iff appending cand to the (independent) rows keeps them independent.
bool independent_with(const std::vector<IntVec>& rows, const IntVec& cand);

/// Determinant of a square rational matrix by Gaussian elimination.
Rat det_rat(RatMat a);

}  // namespace qfz
