#include "qfzeros/ints.hpp"

namespace qfz {

Int det_bareiss(IntMat a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("det_bareiss: matrix not square");
    if (n == 0) return Int(1);

    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = div_exact(t, prev);
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

std::size_t rank_rat(RatMat rows) {
    if (rows.empty()) return 0;
    const std::size_t m = rows.size();
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            Rat f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_int(const std::vector<IntVec>& rows) {
    RatMat r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.push_back(to_rat(row));
    return rank_rat(std::move(r));
}

bool independent_with(const std::vector<IntVec>& rows, const IntVec& cand) {
    std::vector<IntVec> all = rows;
    all.push_back(cand);
    return rank_int(all) == rows.size() + 1;
}

Rat det_rat(RatMat a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("det_rat: matrix not square");
    if (n == 0) return Rat(1);

    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != k) {
            std::swap(a[k], a[pivot]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

}  // namespace qfz
