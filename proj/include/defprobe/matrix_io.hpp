#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "defprobe/matrix.hpp"

namespace defprobe {

// Plain-text distance-matrix format:
//   - optional leading comment lines starting with '#'
//   - a line with the order n (n >= 2)
//   - n-1 lines with the strict upper triangle: line i holds the entries
//     D(i, i+1) .. D(i, n-1), whitespace separated, 12 significant digits
// The diagonal is implicitly zero; symmetry is by construction.
Matrix read_distance_matrix(std::istream& in);
Matrix read_distance_matrix_file(const std::string& path);

void write_distance_matrix(std::ostream& out, const Matrix& d,
                           std::span<const std::string> comments = {});
void write_distance_matrix_file(const std::string& path, const Matrix& d,
                                std::span<const std::string> comments = {});

}  // namespace defprobe
