#include "defprobe/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace defprobe {

namespace {

double off_diagonal_norm(const Matrix& a) {
    const int n = a.order();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

// Cyclic-by-row Jacobi. `a` is reduced to (nearly) diagonal form in place;
// when `vectors` is non-null it accumulates the rotations.
void jacobi(Matrix& a, Matrix* vectors) {
    const int n = a.order();
    if (vectors) *vectors = Matrix::identity(n);
    if (n < 2) return;

    const double tol = 1e-12 * frobenius_norm(a);
    constexpr int kMaxSweeps = 100;  // quadratic convergence; typical runs need < 10

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                if (vectors) {
                    for (int k = 0; k < n; ++k) {
                        const double vkp = (*vectors)(k, p), vkq = (*vectors)(k, q);
                        (*vectors)(k, p) = c * vkp - s * vkq;
                        (*vectors)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

void sort_ascending(Matrix& a, std::vector<double>& values, Matrix* vectors) {
    const int n = a.order();
    values.resize(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });
    for (int k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    if (vectors) {
        Matrix sorted(n);
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row)
                sorted(row, col) = (*vectors)(row, order[static_cast<std::size_t>(col)]);
        *vectors = std::move(sorted);
    }
}

void require_symmetric(const Matrix& a) {
    if (!is_symmetric(a, kSymmetryTol))
        throw std::invalid_argument("matrix is not symmetric within 1e-12");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
    require_symmetric(a);
    Matrix work = a;
    std::vector<double> values;
    symmetric_eigenvalues_inplace(work, values);
    return values;
}

EigenDecomposition symmetric_eigen(const Matrix& a, bool with_vectors) {
    require_symmetric(a);
    EigenDecomposition out;
    Matrix work = a;
    if (with_vectors) {
        jacobi(work, &out.vectors);
        sort_ascending(work, out.values, &out.vectors);
    } else {
        jacobi(work, nullptr);
        sort_ascending(work, out.values, nullptr);
    }
    return out;
}

void symmetric_eigenvalues_inplace(Matrix& a, std::vector<double>& values) {
    jacobi(a, nullptr);
    sort_ascending(a, values, nullptr);
}

}  // namespace defprobe
