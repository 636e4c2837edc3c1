#pragma once

#include <vector>

#include "defprobe/matrix.hpp"

namespace defprobe {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k pairs with values[k]; empty unless requested
};

// Entrywise symmetry tolerance on eigensolver inputs. The inputs here are
// built symmetric by construction; the check guards plumbing, not numerics.
inline constexpr double kSymmetryTol = 1e-12;

// Cyclic Jacobi for dense symmetric matrices (n <= 100 in this project).
// Sweeps until the off-diagonal Frobenius norm drops below 1e-12 relative to
// the input Frobenius norm, which keeps the rotation sequence equivariant
// under power-of-two scaling. Throws std::invalid_argument when the input is
// not symmetric within kSymmetryTol.
std::vector<double> symmetric_eigenvalues(const Matrix& a);
EigenDecomposition symmetric_eigen(const Matrix& a, bool with_vectors);

// Hot-loop variant: clobbers `a`, reuses `values`, skips the symmetry check.
// Callers must hand in an exactly symmetric matrix.
void symmetric_eigenvalues_inplace(Matrix& a, std::vector<double>& values);

}  // namespace defprobe
