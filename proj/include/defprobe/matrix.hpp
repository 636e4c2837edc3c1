#pragma once

#include <vector>

namespace defprobe {

// Dense square matrix, row-major. Everything in this project is small
// (n <= 100), so no attempt at sparsity or blocking.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int order, double fill = 0.0)
        : n_(order), a_(static_cast<std::size_t>(order) * order, fill) {}

    static Matrix identity(int order);

    int order() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void resize(int order, double fill = 0.0) {
        n_ = order;
        a_.assign(static_cast<std::size_t>(order) * order, fill);
    }

    const std::vector<double>& data() const { return a_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int n_ = 0;
    std::vector<double> a_;
};

bool is_symmetric(const Matrix& a, double tol);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
Matrix leading_principal_submatrix(const Matrix& a, int order);

// In-place lower Cholesky of an SPD matrix; false when a pivot is
// non-positive or non-finite. On success the strict upper triangle is zeroed.
bool cholesky_lower(Matrix& a);

// Solve L x = b, then L^T x = b, for a lower-triangular factor.
std::vector<double> forward_substitute(const Matrix& lower, const std::vector<double>& b);
std::vector<double> backward_substitute_transposed(const Matrix& lower, const std::vector<double>& b);

// (L L^T)^{-1} b via the two triangular solves.
std::vector<double> cholesky_solve(const Matrix& lower, const std::vector<double>& b);

}  // namespace defprobe
