#include "defprobe/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "defprobe/report.hpp"

namespace defprobe {

Matrix read_distance_matrix(std::istream& in) {
    std::string line;
    int n = -1;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream header(line);
        if (!(header >> n)) throw std::invalid_argument("matrix file: order line is not an integer");
        break;
    }
    if (n < 2) throw std::invalid_argument("matrix file: order must be >= 2");

    Matrix d(n);
    for (int i = 0; i < n - 1; ++i) {
        do {
            if (!std::getline(in, line)) throw std::invalid_argument("matrix file: truncated");
            const auto start = line.find_first_not_of(" \t\r");
            if (start != std::string::npos && line[start] != '#') break;
        } while (true);
        std::istringstream row(line);
        for (int j = i + 1; j < n; ++j) {
            double v = 0.0;
            if (!(row >> v)) throw std::invalid_argument("matrix file: short row");
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("matrix file: entries must be finite and non-negative");
            d(i, j) = v;
            d(j, i) = v;
        }
        double extra;
        if (row >> extra) throw std::invalid_argument("matrix file: row has extra entries");
    }
    return d;
}

Matrix read_distance_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    return read_distance_matrix(in);
}

void write_distance_matrix(std::ostream& out, const Matrix& d,
                           std::span<const std::string> comments) {
    const int n = d.order();
    if (n < 2) throw std::invalid_argument("distance matrix needs order >= 2");
    for (const auto& c : comments) out << "# " << c << "\n";
    out << n << "\n";
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j > i + 1) out << ' ';
            out << format_number(d(i, j));
        }
        out << "\n";
    }
}

void write_distance_matrix_file(const std::string& path, const Matrix& d,
                                std::span<const std::string> comments) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open matrix file for writing: " + path);
    write_distance_matrix(out, d, comments);
}

}  // namespace defprobe
