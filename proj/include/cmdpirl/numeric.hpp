#ifndef CMDPIRL_NUMERIC_HPP
#define CMDPIRL_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cmdpirl {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, Mat[i] is row i

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l1_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

inline double linf_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
}

inline double l1_dist(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_dist: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

inline double linf_dist(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("linf_dist: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
    return s;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
// A is modified in place; n = A.size(). Intended for the small dense
// systems (I - gamma*P_pi) that policy evaluation and occupancy produce.
Vec solve_linear(Mat A, Vec b);

}  // namespace cmdpirl

#endif
