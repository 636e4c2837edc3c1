#include "defprobe/fixtures.hpp"

#include <stdexcept>

namespace defprobe {

namespace {

Matrix from_upper(int n, std::initializer_list<double> upper) {
    Matrix d(n);
    auto it = upper.begin();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            d(i, j) = *it;
            d(j, i) = *it;
            ++it;
        }
    return d;
}

std::vector<Fixture> build_fixtures() {
    constexpr double k13 = 1.0 / 3.0, k23 = 2.0 / 3.0, k16 = 1.0 / 6.0;
    std::vector<Fixture> out;

    out.push_back({"insert_n5_m4", "permutation", "ins", 5, 4, 0.090,
                   {"{1,2,3,4}", "{1,3,4,2}", "{2,3,4,1}", "{3,4,1,2}", "{4,1,2,3}"},
                   from_upper(5, {k13, k13, k23, k13, k23, k13, k23, k13, k23, k13})});
    out.push_back({"interchange_n5_m4", "permutation", "int", 5, 4, 0.090,
                   {"{1,2,3,4}", "{1,2,4,3}", "{1,3,2,4}", "{1,3,4,2}", "{1,4,3,2}"},
                   from_upper(5, {k13, k13, k23, k13, k23, k13, k23, k13, k23, k13})});
    out.push_back({"levenshtein_n5_m4", "permutation", "lev", 5, 4, 0.135,
                   {"{1,2,4,3}", "{2,3,1,4}", "{2,4,3,1}", "{3,1,2,4}", "{3,4,2,1}"},
                   from_upper(5, {1.0, 0.5, 0.5, 1.0, 0.5, 0.5, 1.0, 1.0, 0.5, 0.5})});
    out.push_back({"lcstr_n5_m4", "permutation", "lcstr", 5, 4, 0.023,
                   {"{1,3,2,4}", "{2,4,1,3}", "{3,2,4,1}", "{4,1,3,2}", "{4,2,1,3}"},
                   from_upper(5, {k23, k13, k13, k23, k13, k13, k23, k23, 1.0, k23})});
    out.push_back({"chebyshev_n5_m5", "permutation", "che", 5, 5, 0.034,
                   {"{1,5,3,4,2}", "{2,5,3,4,1}", "{4,2,3,1,5}", "{4,3,1,2,5}", "{5,3,2,1,4}"},
                   from_upper(5, {0.25, 0.75, 0.75, 1.0, 1.0, 1.0, 0.75, 0.5, 0.25, 0.25})});
    // Signed-permutation reversal and tree edit matrices are literals; the
    // distance functions live in external libraries (GRAPPA, APTED).
    out.push_back({"reversal_signed_n5_m5", "signed-permutation", "rev", 5, 5, 0.016,
                   {"{4,5,-1,-2,-3}", "{2,1,3,-4,-5}", "{-2,1,3,5,4}", "{4,-2,3,1,-5}",
                    "{4,-2,1,-5,-3}"},
                   from_upper(5, {4.0 / 6, 5.0 / 6, 3.0 / 6, 2.0 / 6, 2.0 / 6, 3.0 / 6, 5.0 / 6,
                                  5.0 / 6, 3.0 / 6, 2.0 / 6})});
    out.push_back({"tree_edit_n5", "tree", "ted", 5, 0, 0.026,
                   {"{b{c{b}}}", "{b}", "{b{c}}", "{a{c}{a}}", "{c{b}}"},
                   from_upper(5, {2, 1, 3, 1, 1, 3, 1, 2, 2, 3})});
    out.push_back({"osa_n5", "string", "osa", 5, 0, 0.102,
                   {"abc", "acc", "cba", "caa", "bac"},
                   from_upper(5, {1, 2, 3, 1, 3, 2, 2, 1, 2, 2})});
    out.push_back({"jaro_winkler_n4", "string", "jw", 4, 0, 0.046,
                   {"bbbb", "aaaa", "bbba", "aaab"},
                   from_upper(4, {1.0, k16, 0.5, 0.5, k16, 0.5})});
    return out;
}

}  // namespace

const std::vector<Fixture>& appendix_fixtures() {
    static const std::vector<Fixture> fixtures = build_fixtures();
    return fixtures;
}

const Fixture& fixture_by_id(std::string_view id) {
    for (const auto& f : appendix_fixtures())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown fixture id: " + std::string(id));
}

}  // namespace defprobe
