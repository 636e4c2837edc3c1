#include "defprobe/definiteness.hpp"

#include <cmath>
#include <stdexcept>

namespace defprobe {

namespace {

void require_distance_matrix(const Matrix& d) {
    if (d.order() < 2) throw std::invalid_argument("distance matrix needs order >= 2");
    if (!is_symmetric(d, kSymmetryTol))
        throw std::invalid_argument("distance matrix is not symmetric within 1e-12");
}

// Writes the leading (n-1) block of Q D Q into `reduced` using row sums:
// (QDQ)_ij = D_ij - r_i/n - r_j/n + S/n^2.
void centered_reduction(const Matrix& d, Matrix& reduced, std::vector<double>& row_sum) {
    const int n = d.order();
    row_sum.assign(static_cast<std::size_t>(n), 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += d(i, j);
        row_sum[static_cast<std::size_t>(i)] = s;
        total += s;
    }
    const double inv_n = 1.0 / n;
    const double mean_total = total * inv_n * inv_n;
    reduced.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const double ri = row_sum[static_cast<std::size_t>(i)] * inv_n;
        for (int j = i; j < n - 1; ++j) {
            const double v = d(i, j) - ri - row_sum[static_cast<std::size_t>(j)] * inv_n + mean_total;
            reduced(i, j) = v;
            reduced(j, i) = v;
        }
    }
}

}  // namespace

CnsdTransform cnsd_transform(const Matrix& d) {
    require_distance_matrix(d);
    const int n = d.order();

    CnsdTransform out;
    out.input_order = n;
    std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += d(i, j);
        row_sum[static_cast<std::size_t>(i)] = s;
        total += s;
    }
    const double inv_n = 1.0 / n;
    const double mean_total = total * inv_n * inv_n;
    out.projected.resize(n);
    // Upper triangle mirrored so B is bitwise symmetric (the two evaluation
    // orders of d - r_i/n - r_j/n can differ by an ulp).
    for (int i = 0; i < n; ++i) {
        const double ri = row_sum[static_cast<std::size_t>(i)] * inv_n;
        for (int j = i; j < n; ++j) {
            const double v = d(i, j) - ri - row_sum[static_cast<std::size_t>(j)] * inv_n + mean_total;
            out.projected(i, j) = v;
            out.projected(j, i) = v;
        }
    }
    out.reduced = leading_principal_submatrix(out.projected, n - 1);
    return out;
}

Matrix difference_form_reduction(const Matrix& d) {
    require_distance_matrix(d);
    const int n = d.order();
    Matrix m(n - 1);
    const double dnn = d(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            m(i, j) = d(i, j) - d(i, n - 1) - d(n - 1, j) + dnn;
    return m;
}

CnsdReport cnsd_check(const Matrix& d, double epsilon) {
    CnsdTransform transform = cnsd_transform(d);
    CnsdReport report;
    report.epsilon = epsilon;
    report.spectrum = symmetric_eigenvalues(transform.reduced);
    report.lambda_max = report.spectrum.back();
    report.verdict = report.lambda_max > epsilon ? CnsdVerdict::NotCnsd : CnsdVerdict::Cnsd;
    return report;
}

double cnsd_lambda_max(const Matrix& d, CnsdScratch& scratch) {
    require_distance_matrix(d);
    centered_reduction(d, scratch.reduced, scratch.row_sum);
    symmetric_eigenvalues_inplace(scratch.reduced, scratch.values);
    return scratch.values.back();
}

double cnsd_lambda_max(const Matrix& d) {
    CnsdScratch scratch;
    return cnsd_lambda_max(d, scratch);
}

Matrix kernel_matrix(const KernelConfig& cfg, std::span<const Permutation> set) {
    if (!(cfg.theta > 0.0)) throw std::invalid_argument("theta must be positive");
    Matrix d = distance_matrix(cfg.measure, set);
    const int n = d.order();
    Matrix k(n);
    for (int i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = std::exp(-cfg.theta * d(i, j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

PsdReport psd_check(const Matrix& k, double epsilon) {
    if (!is_symmetric(k, kSymmetryTol))
        throw std::invalid_argument("matrix is not symmetric within 1e-12");
    const auto spectrum = symmetric_eigenvalues(k);
    PsdReport report;
    report.lambda_min = spectrum.front();
    report.verdict = report.lambda_min < -epsilon ? PsdVerdict::NotPsd : PsdVerdict::Psd;
    return report;
}

}  // namespace defprobe
