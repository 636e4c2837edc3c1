#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "defprobe/combinatorics.hpp"
#include "defprobe/errors.hpp"
#include "defprobe/sampler.hpp"
#include "helpers.hpp"

using namespace defprobe;

TEST_CASE("solution set validation") {
    const Permutation a({1, 2, 3}), b({2, 1, 3});
    CHECK_NOTHROW(SolutionSet({a, b}));
    CHECK_THROWS_AS(SolutionSet({a, a}), std::invalid_argument);
    CHECK_THROWS_AS(SolutionSet({a, Permutation({1, 2})}), std::invalid_argument);
}

TEST_CASE("random solution set covers the full space when n = m!") {
    Rng rng = make_rng(1);
    const SolutionSet s = random_solution_set(3, 6, rng);
    std::set<Permutation> got(s.members().begin(), s.members().end());
    const auto all = testutil::all_permutations(3);
    CHECK(got == std::set<Permutation>(all.begin(), all.end()));
}

TEST_CASE("random solution set is seed-deterministic and duplicate-free") {
    Rng a = make_rng(9), b = make_rng(9);
    const SolutionSet sa = random_solution_set(10, 20, a);
    const SolutionSet sb = random_solution_set(10, 20, b);
    CHECK(sa == sb);
    std::set<Permutation> unique(sa.members().begin(), sa.members().end());
    CHECK(unique.size() == 20);
}

TEST_CASE("random solution set rejects n > m!") {
    Rng rng = make_rng(2);
    CHECK_THROWS_AS(random_solution_set(3, 7, rng), std::invalid_argument);
    CHECK_NOTHROW(random_solution_set(22, 5, rng));  // m! far beyond 64 bits, still fine
}

TEST_CASE("combination utilities agree with each other") {
    CHECK(binomial_capped(24, 5, ~0ULL - 1) == 42504);
    CHECK(binomial_capped(24, 30, ~0ULL - 1) == 0);
    CHECK(binomial_capped(1000, 6, 1000) == 1001);  // saturated

    // Unranking matches sequential enumeration.
    std::vector<int> combo{0, 1, 2};
    std::uint64_t rank = 0;
    do {
        CHECK(combination_unrank(rank, 7, 3) == combo);
        ++rank;
    } while (next_combination(combo, 7));
    CHECK(rank == 35);
    CHECK_THROWS_AS(combination_unrank(35, 7, 3), std::invalid_argument);
}

TEST_CASE("sample probe is deterministic and thread-count independent") {
    SampleConfig cfg;
    cfg.measure = Measure::Insert;
    cfg.n = 6;
    cfg.m = 4;
    cfg.t = 400;
    cfg.repeats = 3;
    cfg.seed = 12345;

    const ProbeReport serial_a = sample_probe_serial(cfg);
    const ProbeReport serial_b = sample_probe_serial(cfg);
    const ProbeReport parallel = sample_probe(cfg, Exec::Parallel);

    auto same = [](const ProbeReport& x, const ProbeReport& y) {
        REQUIRE(x.repeats.size() == y.repeats.size());
        for (std::size_t r = 0; r < x.repeats.size(); ++r) {
            CHECK(x.repeats[r].n_lambda_plus == y.repeats[r].n_lambda_plus);
            CHECK(x.repeats[r].p == y.repeats[r].p);
            CHECK(x.repeats[r].lambda_max == y.repeats[r].lambda_max);
        }
        CHECK(x.n_lambda_plus_total == y.n_lambda_plus_total);
        CHECK(x.mean_p == y.mean_p);
        CHECK(x.mean_lambda_max == y.mean_lambda_max);
        CHECK(x.lambda_max_overall == y.lambda_max_overall);
        REQUIRE(x.witnesses.size() == y.witnesses.size());
        for (std::size_t i = 0; i < x.witnesses.size(); ++i) {
            CHECK(x.witnesses[i].repeat == y.witnesses[i].repeat);
            CHECK(x.witnesses[i].set_index == y.witnesses[i].set_index);
            CHECK(x.witnesses[i].set == y.witnesses[i].set);
        }
        REQUIRE(x.argmax.has_value() == y.argmax.has_value());
        if (x.argmax) {
            CHECK(x.argmax->repeat == y.argmax->repeat);
            CHECK(x.argmax->set_index == y.argmax->set_index);
        }
    };
    same(serial_a, serial_b);
    same(serial_a, parallel);

    // p * t == n_lambda_plus exactly per repeat.
    for (const auto& rep : serial_a.repeats)
        CHECK(rep.p * static_cast<double>(cfg.t) == doctest::Approx(static_cast<double>(rep.n_lambda_plus)).epsilon(1e-12));
}

TEST_CASE("sample probe witnesses re-verify as not CNSD") {
    SampleConfig cfg;
    cfg.measure = Measure::Interchange;
    cfg.n = 6;
    cfg.m = 4;
    cfg.t = 300;
    cfg.repeats = 2;
    cfg.seed = 777;
    const ProbeReport report = sample_probe(cfg);
    CHECK(report.witnesses.size() > 0);
    CHECK(report.witnesses.size() <= kMaxWitnesses);
    for (const auto& w : report.witnesses) {
        const CnsdReport check = cnsd_check(distance_matrix(cfg.measure, w.set), cfg.epsilon);
        CHECK_FALSE(check.is_cnsd());
        CHECK(check.lambda_max == w.lambda);
    }
    REQUIRE(report.argmax.has_value());
    CHECK(report.argmax->lambda == report.lambda_max_overall);
    const double recheck = cnsd_lambda_max(distance_matrix(cfg.measure, report.argmax->set));
    CHECK(recheck == report.lambda_max_overall);
}

TEST_CASE("sample probe rough agreement with brute force truth") {
    SampleConfig cfg;
    cfg.measure = Measure::Insert;
    cfg.n = 6;
    cfg.m = 4;
    cfg.t = 2000;
    cfg.repeats = 2;
    cfg.seed = 31337;
    const ProbeReport report = sample_probe(cfg);
    // True p = 0.221; generous window for a smoke test.
    CHECK(report.mean_p > 0.18);
    CHECK(report.mean_p < 0.27);
}

TEST_CASE("sample probe input validation") {
    SampleConfig cfg;
    cfg.t = 0;
    CHECK_THROWS_AS(sample_probe(cfg), std::invalid_argument);
    cfg.t = 10;
    cfg.n = 30;
    cfg.m = 4;
    CHECK_THROWS_AS(sample_probe(cfg), std::invalid_argument);
}

TEST_CASE("brute force: every 2x2 distance matrix is CNSD") {
    const BruteForceReport r = brute_force_probe(Measure::Levenshtein, 2, 3);
    CHECK(r.n_s == 15);  // C(6, 2)
    CHECK(r.n_lambda_plus == 0);
    CHECK(r.p == 0.0);
}

TEST_CASE("brute force guard raises a capability error with the computed size") {
    try {
        brute_force_probe(Measure::Insert, 6, 5);  // C(120, 6) = 3.65e9
        FAIL("expected capability_error");
    } catch (const capability_error& e) {
        CHECK(std::string(e.what()).find("120") != std::string::npos);
    }
}

TEST_CASE("brute force serial and parallel agree exactly") {
    const BruteForceReport serial = brute_force_probe_serial(Measure::Insert, 4, 4);
    const BruteForceReport parallel = brute_force_probe(Measure::Insert, 4, 4);
    CHECK(serial.n_s == parallel.n_s);
    CHECK(serial.n_lambda_plus == parallel.n_lambda_plus);
    CHECK(serial.p == parallel.p);
    CHECK(serial.lambda_max == parallel.lambda_max);
    REQUIRE(serial.witnesses.size() == parallel.witnesses.size());
    for (std::size_t i = 0; i < serial.witnesses.size(); ++i) {
        CHECK(serial.witnesses[i].set_index == parallel.witnesses[i].set_index);
        CHECK(serial.witnesses[i].set == parallel.witnesses[i].set);
    }
    REQUIRE(serial.argmax.has_value());
    REQUIRE(parallel.argmax.has_value());
    CHECK(serial.argmax->set_index == parallel.argmax->set_index);
}

TEST_CASE("exact p is non-decreasing in n for the five indefinite measures at m=4") {
    // Superset argument: any bad n-set extends to a bad (n+1)-set, and the
    // published table shows the growth; chebyshev stays at zero throughout
    // this small range.
    for (Measure measure : {Measure::Insert, Measure::Interchange, Measure::Levenshtein,
                            Measure::LcStr, Measure::Chebyshev}) {
        CAPTURE(measure_id(measure));
        double prev = -1.0;
        for (int n = 4; n <= 8; ++n) {
            const BruteForceReport r = brute_force_probe(measure, n, 4);
            CHECK(r.p >= prev);
            prev = r.p;
        }
    }
}

TEST_CASE("brute force insert n=5 m=4 matches the published truth") {
    const BruteForceReport r = brute_force_probe(Measure::Insert, 5, 4);
    CHECK(r.n_s == 42504);
    CHECK(std::round(r.p * 1000.0) / 1000.0 == doctest::Approx(0.047));
    for (const auto& w : r.witnesses) {
        CHECK_FALSE(cnsd_check(distance_matrix(r.measure, w.set)).is_cnsd());
    }
}
