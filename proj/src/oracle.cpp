#include "qfzeros/oracle.hpp"

#include <algorithm>

#include "qfzeros/errors.hpp"

namespace qfz {

SearchBudget SearchBudget::defaults_for(const QuadraticForm& q, const CongruenceSystem& sys) {
    SearchBudget b;
    Int scaled = 4 * sys.eta * q.height();
    b.b_max = scaled > 64 ? scaled : Int(64);
    return b;
}

namespace {

bool in_residue_class(const Int& v, const Int& target, const Int& eta) {
    return divides(eta, v - target);
}

// Ascending roots of A t^2 + B t + C = 0 restricted to t = xi (mod eta),
// |t| <= radius. The degenerate all-zero case walks the whole class.
void solve_last_coordinate(const Int& qa, const Int& qb, const Int& qc, const Int& xi,
                           const Int& eta, const Int& radius, std::vector<Int>& out) {
    out.clear();
    auto admit = [&](const Int& t) {
        if (abs(t) <= radius && in_residue_class(t, xi, eta)) out.push_back(t);
    };
    if (qa != 0) {
        Int disc = qb * qb - 4 * qa * qc;
        if (disc < 0 || !is_perfect_square(disc)) return;
        Int s = isqrt(disc);
        Int den = 2 * qa;
        Int num1 = -qb - s, num2 = -qb + s;
        if (divides(den, num1)) admit(div_exact(num1, den));
        if (s != 0 && divides(den, num2)) admit(div_exact(num2, den));
        std::sort(out.begin(), out.end());
    } else if (qb != 0) {
        if (divides(qb, -qc)) admit(div_exact(-qc, qb));
    } else if (qc == 0) {
        Int v = -radius + mod_nonneg(xi + radius, eta);
        for (; v <= radius; v += eta) out.push_back(v);
    }
}

}  // namespace

std::vector<IntVec> enumerate_solutions(const QuadraticForm& q, const CongruenceSystem& sys,
                                        const Int& radius) {
    if (radius < 0) throw ContractViolation("enumerate_solutions: negative radius");
    if (sys.dim() != q.dim()) throw ContractViolation("enumerate_solutions: dimension mismatch");
    const std::size_t n = q.dim();
    const IntMat& g = q.gram();

    std::vector<IntVec> found;
    IntVec x(n, Int(0));
    std::vector<Int> roots;

    // Recurse over the first n-1 coordinates in ascending residue-class
    // progressions; the last coordinate is solved, keeping lexicographic order.
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n - 1) {
            Int qa = g[n - 1][n - 1];
            Int qb = 0;
            for (std::size_t j = 0; j + 1 < n; ++j) qb += g[n - 1][j] * x[j];
            qb *= 2;
            Int qc = 0;
            for (std::size_t r = 0; r + 1 < n; ++r) {
                Int row = 0;
                for (std::size_t c = 0; c + 1 < n; ++c) row += g[r][c] * x[c];
                qc += x[r] * row;
            }
            solve_last_coordinate(qa, qb, qc, sys.xi[n - 1], sys.eta, radius, roots);
            for (const Int& t : roots) {
                x[n - 1] = t;
                found.push_back(x);
            }
            x[n - 1] = 0;
            return;
        }
        Int v = -radius + mod_nonneg(sys.xi[i] + radius, sys.eta);
        for (; v <= radius; v += sys.eta) {
            x[i] = v;
            self(self, i + 1);
        }
        x[i] = 0;
    };
    rec(rec, 0);

    for (const IntVec& s : found)
        if (!verify_system(q, sys, s))
            throw InternalCheckFailure("enumerate_solutions: emitted a non-solution", "");
    return found;
}

namespace {

Int next_radius(const Int& b, const SearchBudget& budget) {
    Int nb = rat_floor(Rat(b) * budget.growth);
    if (nb <= b) nb = b + 1;
    if (nb > budget.b_max) nb = budget.b_max;
    return nb;
}

const IntVec* pick_min(const std::vector<IntVec>& sols, const auto& keep) {
    const IntVec* best = nullptr;
    Int best_norm;
    for (const IntVec& s : sols) {
        if (!keep(s)) continue;
        Int ns = norm_sq(s);
        if (!best || ns < best_norm || (ns == best_norm && lex_less(s, *best))) {
            best = &s;
            best_norm = ns;
        }
    }
    return best;
}

std::optional<IntVec> minimal_filtered(const QuadraticForm& q, const CongruenceSystem& sys,
                                       const SearchBudget& budget, const auto& keep) {
    if (budget.b_start < 1 || budget.b_start > budget.b_max || budget.growth <= 1)
        throw ContractViolation("search budget malformed");
    Int b = budget.b_start;
    while (true) {
        std::vector<IntVec> sols = enumerate_solutions(q, sys, b);
        if (const IntVec* best = pick_min(sols, keep)) {
            // One certification rescan: any strictly shorter vector fits in
            // the box of its own Euclidean length.
            Int cert = isqrt(norm_sq(*best));
            if (cert > b) {
                Int b2 = cert > budget.b_max ? budget.b_max : cert;
                std::vector<IntVec> wider = enumerate_solutions(q, sys, b2);
                best = pick_min(wider, keep);
                return *best;
            }
            return *best;
        }
        if (b >= budget.b_max) return std::nullopt;
        b = next_radius(b, budget);
    }
}

bool pair_independent(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return true;
    return false;
}

}  // namespace

std::optional<IntVec> minimal_solution(const QuadraticForm& q, const CongruenceSystem& sys,
                                       const SearchBudget& budget, bool exclude_zero) {
    return minimal_filtered(q, sys, budget,
                            [&](const IntVec& s) { return !exclude_zero || !is_zero(s); });
}

std::optional<IntVec> minimal_avoiding(const QuadraticForm& q, const CongruenceSystem& sys,
                                       const HyperplaneSet& hyperplanes,
                                       const SearchBudget& budget) {
    auto keep = [&](const IntVec& s) {
        if (is_zero(s)) return false;
        for (const LinearForm& l : hyperplanes)
            if (l.eval(s) == 0) return false;
        return true;
    };
    auto result = minimal_filtered(q, sys, budget, keep);
    if (result && !keep(*result))
        throw InternalCheckFailure("minimal_avoiding: avoidance recheck failed", "");
    return result;
}

std::optional<std::pair<IntVec, IntVec>> minimal_pair(const QuadraticForm& q,
                                                      const CongruenceSystem& sys,
                                                      const SearchBudget& budget,
                                                      unsigned long w) {
    if (w < 1) throw ContractViolation("minimal_pair: exponent must be >= 1");
    if (budget.b_start < 1 || budget.b_start > budget.b_max || budget.growth <= 1)
        throw ContractViolation("search budget malformed");

    Int b = budget.b_start;
    while (true) {
        std::vector<IntVec> sols = enumerate_solutions(q, sys, b);
        std::erase_if(sols, [](const IntVec& s) { return is_zero(s); });

        const IntVec* best_a = nullptr;
        const IntVec* best_b = nullptr;
        Int best_key;
        for (const IntVec& first : sols) {
            Int na_w = pow_int(norm_sq(first), w);
            for (const IntVec& second : sols) {
                if (!pair_independent(first, second)) continue;
                Int key = na_w * norm_sq(second);
                bool better = !best_a || key < best_key;
                if (!better && key == best_key) {
                    better = lex_less(first, *best_a) ||
                             (first == *best_a && lex_less(second, *best_b));
                }
                if (better) {
                    best_a = &first;
                    best_b = &second;
                    best_key = key;
                }
            }
        }
        if (best_a) return std::make_pair(*best_a, *best_b);
        if (b >= budget.b_max) return std::nullopt;
        b = next_radius(b, budget);
    }
}

std::optional<std::pair<IntVec, IntVec>> two_independent_zeros(const QuadraticForm& q,
                                                               const SearchBudget& budget) {
    CongruenceSystem trivial(IntVec(q.dim(), Int(0)), Int(1));
    return minimal_pair(q, trivial, budget, 1);
}

}  // namespace qfz
