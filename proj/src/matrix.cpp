#include "defprobe/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace defprobe {

Matrix Matrix::identity(int order) {
    Matrix m(order);
    for (int i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
}

bool is_symmetric(const Matrix& a, double tol) {
    const int n = a.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double max_abs(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s = std::max(s, std::abs(v));
    return s;
}

Matrix leading_principal_submatrix(const Matrix& a, int order) {
    if (order < 0 || order > a.order()) throw std::invalid_argument("submatrix order out of range");
    Matrix b(order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) b(i, j) = a(i, j);
    return b;
}

bool cholesky_lower(Matrix& a) {
    const int n = a.order();
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double l = std::sqrt(d);
        a(j, j) = l;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / l;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = 0.0;
    return true;
}

std::vector<double> forward_substitute(const Matrix& lower, const std::vector<double>& b) {
    const int n = lower.order();
    std::vector<double> x(b);
    for (int i = 0; i < n; ++i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= lower(i, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / lower(i, i);
    }
    return x;
}

std::vector<double> backward_substitute_transposed(const Matrix& lower, const std::vector<double>& b) {
    const int n = lower.order();
    std::vector<double> x(b);
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= lower(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / lower(i, i);
    }
    return x;
}

std::vector<double> cholesky_solve(const Matrix& lower, const std::vector<double>& b) {
    return backward_substitute_transposed(lower, forward_substitute(lower, b));
}

}  // namespace defprobe
