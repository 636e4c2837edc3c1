#pragma once

#include <span>
#include <vector>

#include "defprobe/distances.hpp"
#include "defprobe/eigen.hpp"
#include "defprobe/matrix.hpp"

namespace defprobe {

inline constexpr double kDefaultEpsilon = 1e-10;

// Reduction behind the conditional-definiteness test: with the centering
// projection Q = I - ee^T/n, B = Q D Q, and Dhat the leading (n-1) principal
// block of B, D is CNSD exactly when Dhat is NSD.
struct CnsdTransform {
    int input_order = 0;
    Matrix projected;  // B, n x n
    Matrix reduced;    // Dhat, (n-1) x (n-1)
};

CnsdTransform cnsd_transform(const Matrix& d);

// Alternative algebraic route used for cross-checking: M_ij = D_ij - D_in -
// D_nj + D_nn, leading (n-1) block. Same inertia signs as the Q reduction,
// different eigenvalue magnitudes.
Matrix difference_form_reduction(const Matrix& d);

enum class CnsdVerdict { Cnsd, NotCnsd };

struct CnsdReport {
    double lambda_max = 0.0;       // largest eigenvalue of Dhat
    std::vector<double> spectrum;  // ascending eigenvalues of Dhat
    double epsilon = kDefaultEpsilon;
    CnsdVerdict verdict = CnsdVerdict::Cnsd;

    bool is_cnsd() const { return verdict == CnsdVerdict::Cnsd; }
};

// Verdict is NotCnsd exactly when lambda_max > epsilon.
CnsdReport cnsd_check(const Matrix& d, double epsilon = kDefaultEpsilon);

// Campaign inner loop: only the critical eigenvalue, no report, reusable
// scratch so the hot path does not allocate.
struct CnsdScratch {
    Matrix reduced;
    std::vector<double> row_sum;
    std::vector<double> values;
};

double cnsd_lambda_max(const Matrix& d, CnsdScratch& scratch);
double cnsd_lambda_max(const Matrix& d);

struct KernelConfig {
    double theta = 1.0;  // > 0
    Measure measure = Measure::Hamming;
};

// K_ij = exp(-theta * d(x_i, x_j)); unit diagonal.
Matrix kernel_matrix(const KernelConfig& cfg, std::span<const Permutation> set);

enum class PsdVerdict { Psd, NotPsd };

struct PsdReport {
    PsdVerdict verdict = PsdVerdict::Psd;
    double lambda_min = 0.0;
};

// NotPsd exactly when the smallest eigenvalue is below -epsilon.
PsdReport psd_check(const Matrix& k, double epsilon = kDefaultEpsilon);

}  // namespace defprobe
