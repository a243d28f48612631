#include "cmdpirl/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace cmdpirl {

Vec solve_linear(Mat A, Vec b) {
    const std::size_t n = A.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("solve_linear: bad shapes");
    for (const auto& row : A)
        if (row.size() != n) throw std::invalid_argument("solve_linear: non-square matrix");

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(A[perm[col]][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::fabs(A[perm[r]][col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        std::swap(perm[col], perm[pivot]);
        const Vec& prow = A[perm[col]];
        const double pinv = 1.0 / prow[col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Vec& row = A[perm[r]];
            const double f = row[col] * pinv;
            if (f == 0.0) continue;
            row[col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) row[c] -= f * prow[c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }

    Vec x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        const Vec& row = A[perm[i]];
        for (std::size_t c = i + 1; c < n; ++c) s -= row[c] * x[c];
        x[i] = s / row[i];
    }
    return x;
}

}  // namespace cmdpirl
