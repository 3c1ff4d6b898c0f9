#include "qfzeros/forms.hpp"

namespace qfz {

QuadraticForm QuadraticForm::from_gram(IntMat gram) {
    const std::size_t n = gram.size();
    if (n == 0) throw ContractViolation("QuadraticForm: empty Gram matrix");
    for (const auto& row : gram)
        if (row.size() != n) throw ContractViolation("QuadraticForm: Gram matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram[i][j] != gram[j][i])
                throw ContractViolation("QuadraticForm: Gram matrix not symmetric");

    QuadraticForm q;
    q.n_ = n;
    q.gram_ = std::move(gram);
    q.det_ = det_bareiss(q.gram_);
    q.height_ = 0;
    for (const auto& row : q.gram_)
        for (const Int& v : row) {
            Int av = abs(v);
            if (av > q.height_) q.height_ = av;
        }
    return q;
}

QuadraticForm QuadraticForm::from_upper_coeffs(std::size_t n, const std::vector<Int>& coeffs) {
    if (coeffs.size() != n * (n + 1) / 2)
        throw ContractViolation("from_upper_coeffs: expected n(n+1)/2 coefficients");

    bool odd_cross = false;
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j, ++k)
                if (i != j && mpz_odd_p(coeffs[k].get_mpz_t())) odd_cross = true;
    }

    // G_ii = c_ii, G_ij = c_ij / 2; doubling the whole form keeps G integral
    // when some cross coefficient is odd.
    IntMat gram(n, IntVec(n, Int(0)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j, ++k) {
            if (i == j) {
                gram[i][i] = odd_cross ? 2 * coeffs[k] : coeffs[k];
            } else {
                Int g = odd_cross ? coeffs[k] : coeffs[k] / 2;
                gram[i][j] = g;
                gram[j][i] = g;
            }
        }
    }
    QuadraticForm q = from_gram(std::move(gram));
    q.doubled_ = odd_cross;
    return q;
}

Int QuadraticForm::eval(const IntVec& x) const {
    if (x.size() != n_) throw ContractViolation("eval_form: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += gram_[i][j] * x[j];
        s += x[i] * row;
    }
    return s;
}

Int QuadraticForm::eval_bilinear_double(const IntVec& x, const IntVec& y) const {
    if (x.size() != n_ || y.size() != n_)
        throw ContractViolation("eval_bilinear_double: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += gram_[i][j] * y[j];
        s += x[i] * row;
    }
    return 2 * s;
}

Rat QuadraticForm::eval_rat(const RatVec& x) const {
    if (x.size() != n_) throw ContractViolation("eval_rat: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        Rat row = 0;
        for (std::size_t j = 0; j < n_; ++j) row += Rat(gram_[i][j]) * x[j];
        s += x[i] * row;
    }
    return s;
}

LinearForm::LinearForm(IntVec c) : coeffs(std::move(c)) {
    if (is_zero(coeffs)) throw ContractViolation("LinearForm: all coefficients zero");
}

Int LinearForm::eval(const IntVec& x) const {
    if (x.size() != coeffs.size()) throw ContractViolation("eval_linear: dimension mismatch");
    return vec_dot(coeffs, x);
}

CongruenceSystem::CongruenceSystem(IntVec xi_, Int eta_) : xi(std::move(xi_)), eta(std::move(eta_)) {
    if (eta < 1) throw ContractViolation("CongruenceSystem: eta must be >= 1");
}

bool CongruenceSystem::congruent(const IntVec& x) const {
    if (x.size() != xi.size()) throw ContractViolation("congruent: dimension mismatch");
    for (std::size_t i = 0; i < xi.size(); ++i)
        if (!divides(eta, x[i] - xi[i])) return false;
    return true;
}

bool CongruenceSystem::zero_is_congruent() const {
    for (const Int& v : xi)
        if (!divides(eta, v)) return false;
    return true;
}

Int eval_form(const QuadraticForm& q, const IntVec& x) { return q.eval(x); }

Int eval_bilinear_double(const QuadraticForm& q, const IntVec& x, const IntVec& y) {
    return q.eval_bilinear_double(x, y);
}

Int eval_linear(const LinearForm& l, const IntVec& x) { return l.eval(x); }

bool verify_system(const QuadraticForm& q, const CongruenceSystem& sys, const IntVec& x) {
    return q.eval(x) == 0 && sys.congruent(x);
}

bool is_nondegenerate(const QuadraticForm& q) { return q.nondegenerate(); }

}  // namespace qfz
