#include "qfzeros/arith.hpp"

namespace qfz {

Factorization factorize(const Int& v) {
    if (v < 1) throw ContractViolation("factorize: input must be >= 1");
    Factorization f;
    f.value = v;
    Int rem = v;
    for (Int p = 2; p * p <= rem; ++p) {
        if (!divides(p, rem)) continue;
        unsigned long e = 0;
        while (divides(p, rem)) {
            rem = div_exact(rem, p);
            ++e;
        }
        f.pairs.emplace_back(p, e);
    }
    if (rem > 1) f.pairs.emplace_back(rem, 1);
    return f;
}

unsigned long p_adic_valuation(const Int& v, const Int& p) {
    if (v == 0) throw ContractViolation("p_adic_valuation: valuation of 0 is infinite");
    if (p < 2) throw ContractViolation("p_adic_valuation: p must be prime");
    Int rem = abs(v);
    unsigned long e = 0;
    while (divides(p, rem)) {
        rem = div_exact(rem, p);
        ++e;
    }
    return e;
}

Int mod_inverse_bounded(const Int& m, const Int& eta) {
    if (eta < 1) throw ContractViolation("mod_inverse_bounded: eta must be >= 1");
    Int inv;
    int ok = mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), eta.get_mpz_t());
    if (!ok) throw ContractViolation("mod_inverse_bounded: gcd(m, eta) != 1");
    // mpz_invert yields the representative in [0, eta); eta = 1 gives 0,
    // and the contract wants the representative in [1, eta].
    if (inv == 0) inv = eta;
    return inv;
}

Int small_residue_scalar(const Int& z, const Int& m) {
    if (m < 1) throw ContractViolation("small_residue: modulus must be >= 1");
    Int r = mod_nonneg(z, m);
    if (2 * r > m) r -= m;  // keeps the boundary representative +m/2
    return r;
}

IntVec small_residue(const IntVec& z, const Int& m) {
    IntVec r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = small_residue_scalar(z[i], m);
    return r;
}

Int crt(const std::vector<std::pair<Int, Int>>& residues_mod) {
    Int x = 0, mod = 1;
    for (const auto& [r, m] : residues_mod) {
        if (m < 1) throw ContractViolation("crt: modulus must be >= 1");
        // solve x' = x (mod mod), x' = r (mod m) with gcd(mod, m) = 1
        Int inv = mod_inverse_bounded(mod_nonneg(mod, m) == 0 ? Int(1) : mod % m, m);
        Int t = mod_nonneg((r - x) * inv, m);
        x += mod * t;
        mod *= m;
    }
    return mod_nonneg(x, mod);
}

ThetaData theta(std::size_t n, const Int& delta, const Int& eta) {
    if (n < 3) throw ContractViolation("theta: n must be >= 3");
    if (delta == 0) throw ContractViolation("theta: delta must be nonzero");
    if (eta < 1) throw ContractViolation("theta: eta must be >= 1");

    ThetaData data;
    data.n = n;
    data.delta = delta;
    data.eta = eta;
    data.theta = 1;

    // Only primes dividing eta can satisfy nu > lambda + pi.
    for (const auto& [p, nu] : factorize(eta).pairs) {
        ThetaPrime tp;
        tp.p = p;
        tp.nu = nu;
        tp.lambda = p_adic_valuation(delta, p);
        tp.pi = (p == 2) ? 1 : 0;
        tp.contributes = tp.nu > tp.lambda + static_cast<unsigned long>(tp.pi);
        if (tp.contributes) {
            long s = static_cast<long>(n);
            long exp = (s - 1) * static_cast<long>(tp.nu) - 2 * (s - 1) * static_cast<long>(tp.lambda);
            Int pw = pow_int(p, static_cast<unsigned long>(exp < 0 ? -exp : exp));
            if (exp >= 0)
                data.theta *= Rat(pw);
            else
                data.theta /= Rat(pw);
        }
        data.per_prime.push_back(tp);
    }
    return data;
}

}  // namespace qfz
