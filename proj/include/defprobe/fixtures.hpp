#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defprobe/matrix.hpp"

namespace defprobe {

// Minimal indefinite distance matrices shipped with the project: five
// permutation measures plus signed-permutation reversal, labeled-tree edit,
// OSA and Jaro-Winkler string distances. The last four matrices are
// embedded literals; only osa/jw have their distance functions implemented
// here (reversal and tree edit come from external libraries upstream).
struct Fixture {
    std::string id;             // e.g. "insert_n5_m4"
    std::string domain;         // permutation | signed-permutation | tree | string
    std::string measure_id;     // ins, int, lev, lcstr, che, rev, ted, osa, jw
    int n = 0;
    int m = 0;                  // 0 where element length does not apply
    double lambda_printed = 0;  // reference critical eigenvalue, 3 decimals
    std::vector<std::string> objects;  // display form of the samples
    Matrix matrix;
};

// The nine fixtures, stable order.
const std::vector<Fixture>& appendix_fixtures();

const Fixture& fixture_by_id(std::string_view id);  // throws std::invalid_argument

}  // namespace defprobe
