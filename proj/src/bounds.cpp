#include "qfzeros/bounds.hpp"

namespace qfz {

double log2_int(const Int& v) {
    if (v <= 0) throw ContractViolation("log2_int: input must be positive");
    long exp2;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2);
}

double log2_rat(const Rat& v) {
    if (v <= 0) throw ContractViolation("log2_rat: input must be positive");
    return log2_int(Int(v.get_num())) - log2_int(Int(v.get_den()));
}

namespace {

BoundValue exact_bound(Int v) {
    BoundValue b;
    b.exact = true;
    b.log2_value = log2_int(v);
    b.exact_value = std::move(v);
    return b;
}

BoundValue eps_bound(double log2v) {
    BoundValue b;
    b.exact = false;
    b.log2_value = log2v;
    return b;
}

void check_inputs(std::size_t n, const Int& h, const Int& delta, const Int& eta) {
    if (n < 3) throw ContractViolation("bound: n must be >= 3");
    if (h < 1) throw ContractViolation("bound: H must be >= 1");
    if (delta == 0) throw ContractViolation("bound: delta must be nonzero");
    if (eta < 1) throw ContractViolation("bound: eta must be >= 1");
}

Int max_int(Int a, Int b) { return a >= b ? a : b; }

// eta^e1 * Theta^e2 * H^e3 * |delta|^e4 in log2 form (the n >= 5 shape).
double eps_product(const Int& eta, double e1, const Rat& theta_val, double e2, const Int& h,
                   double e3, const Int& delta, double e4) {
    return e1 * log2_int(eta) + e2 * log2_rat(theta_val) + e3 * log2_int(h) +
           e4 * log2_int(abs(delta));
}

}  // namespace

BoundValue bound_single(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                        const Rat& theta_val, double epsilon) {
    check_inputs(n, h, delta, eta);
    const Int ad = abs(delta);
    if (n == 3)
        return exact_bound(max_int(pow_int(eta, 3) * ad * ad * h * h, pow_int(eta, 3) * pow_int(h, 3)));
    if (n == 4)
        return exact_bound(max_int(pow_int(eta, 9) * pow_int(ad, 4) * pow_int(h, 5),
                                   pow_int(eta, 20) * pow_int(h, 8)));
    if (epsilon <= 0) throw ContractViolation("bound: epsilon must be > 0 for n >= 5");
    const double d = static_cast<double>(n) - 4.0;
    const double nn = static_cast<double>(n);
    return eps_bound(eps_product(eta, 1.0 + epsilon + nn / d, theta_val, epsilon + 2.0 / d, h,
                                 epsilon + (nn * nn - 3.0 * nn + 2.0) / d, delta,
                                 epsilon + (3.0 * nn + 1.0) / d));
}

namespace {

BoundValue pair_bound_impl(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                           const Rat& theta_val, double epsilon, unsigned long eta3,
                           unsigned long eta4a, unsigned long eta4b, double eta5_const) {
    check_inputs(n, h, delta, eta);
    const Int ad = abs(delta);
    if (n == 3)
        return exact_bound(max_int(pow_int(eta, eta3) * pow_int(ad, 20) * pow_int(h, 3 * 3 + 18),
                                   pow_int(eta, eta3) * pow_int(h, 3 * 3 + 28)));
    if (n == 4)
        return exact_bound(max_int(pow_int(eta, eta4a) * pow_int(ad, 40) * pow_int(h, 3 * 4 + 48),
                                   pow_int(eta, eta4b) * pow_int(h, 3 * 4 + 78)));
    if (epsilon <= 0) throw ContractViolation("bound: epsilon must be > 0 for n >= 5");
    const double d = static_cast<double>(n) - 4.0;
    const double nn = static_cast<double>(n);
    return eps_bound(eps_product(eta, eta5_const + epsilon + 10.0 * nn / d, theta_val,
                                 epsilon + 20.0 / d, h,
                                 epsilon + (13.0 * nn * nn - 44.0 * nn + 28.0) / d, delta,
                                 epsilon + 10.0 * (3.0 * nn + 1.0) / d));
}

}  // namespace

BoundValue bound_pair(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                      const Rat& theta_val, double epsilon) {
    return pair_bound_impl(n, h, delta, eta, theta_val, epsilon, 38, 98, 208, 18.0);
}

BoundValue bound_pair_proposition(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                                  const Rat& theta_val, double epsilon) {
    return pair_bound_impl(n, h, delta, eta, theta_val, epsilon, 32, 92, 202, 12.0);
}

BoundValue bound_pair_n3(const Int& h, const Int& eta, const Int& delta) {
    if (h < 1 || eta < 1 || delta == 0) throw ContractViolation("bound_pair_n3: bad inputs");
    return exact_bound(pow_int(h, 4) * pow_int(eta, 6) * pow_int(abs(delta), 4));
}

BoundValue bound_pair_n3_proposition(const Int& h, const Int& eta, const Int& delta) {
    if (h < 1 || eta < 1 || delta == 0) throw ContractViolation("bound_pair_n3: bad inputs");
    return exact_bound(pow_int(h, 4) * pow_int(eta, 4) * pow_int(abs(delta), 4));
}

BoundValue bound_avoid(std::size_t n, const Int& h, const Int& delta, const Int& eta,
                       const Rat& theta_val, double epsilon) {
    check_inputs(n, h, delta, eta);
    if (n == 3 || n == 4) {
        BoundValue inner = bound_single(n, h, delta, eta, theta_val, epsilon);
        return exact_bound(pow_int(eta, 3) * pow_int(h, 4) * inner.exact_value);
    }
    if (epsilon <= 0) throw ContractViolation("bound: epsilon must be > 0 for n >= 5");
    const double d = static_cast<double>(n) - 4.0;
    const double nn = static_cast<double>(n);
    return eps_bound(eps_product(eta, 4.0 + epsilon + nn / d, theta_val, epsilon + 2.0 / d, h,
                                 4.0 + epsilon + (nn * nn - 3.0 * nn + 2.0) / d, delta,
                                 epsilon + (3.0 * nn + 1.0) / d));
}

BoundReport make_report(std::string kind, std::string variant, std::size_t n, const Int& h,
                        const Int& delta, const Int& eta, const Rat& theta_val, double epsilon,
                        BoundValue bound, Int empirical_sq) {
    BoundReport r;
    r.kind = std::move(kind);
    r.variant = std::move(variant);
    r.n = n;
    r.h = h;
    r.delta = delta;
    r.eta = eta;
    r.theta_val = theta_val;
    r.epsilon = epsilon;
    r.bound = std::move(bound);
    r.empirical_sq = std::move(empirical_sq);
    r.empirical = r.empirical_sq == 0 ? 0.0 : std::exp2(0.5 * log2_int(r.empirical_sq));
    r.ratio = r.empirical_sq == 0
                  ? 0.0
                  : std::exp2(0.5 * log2_int(r.empirical_sq) - r.bound.log2_value);
    return r;
}

}  // namespace qfz
