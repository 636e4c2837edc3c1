#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "defprobe/evolver.hpp"
#include "defprobe/gp.hpp"
#include "defprobe/sampler.hpp"

namespace defprobe {

// Report files start with a versioned schema line:
//   # defprobe-report v1 <kind>
// followed by a CSV header and data rows. Numbers carry 12 significant
// digits so reports replay byte-identically across runs.
inline constexpr std::string_view kReportVersion = "defprobe-report v1";

std::string format_number(double v);

// --- sampling: one row per repeat ---------------------------------------
struct SampleCsvRow {
    std::string measure;
    int n = 0, m = 0;
    long long t = 0;
    std::uint64_t seed = 0;
    int repeat = 0;
    long long n_lambda_plus = 0;
    double p = 0.0;
    double lambda_max = 0.0;
};

void write_sample_csv_header(std::ostream& out);
void append_sample_csv(std::ostream& out, const ProbeReport& report);
std::vector<SampleCsvRow> parse_sample_csv(std::istream& in);

// --- brute force: one row per (measure, n, m) cell ----------------------
struct BruteCsvRow {
    std::string measure;
    int n = 0, m = 0;
    std::uint64_t n_s = 0;
    std::uint64_t n_lambda_plus = 0;
    double p = 0.0;
    double lambda_max = 0.0;
};

void write_brute_csv_header(std::ostream& out);
void append_brute_csv(std::ostream& out, const BruteForceReport& report);
std::vector<BruteCsvRow> parse_brute_csv(std::istream& in);

// --- EA: one row per generation ------------------------------------------
struct EaCsvRow {
    std::string measure;
    int n = 0, m = 0;
    std::uint64_t seed = 0;
    std::string submutation;
    int generation = 0;
    double best_lambda = 0.0;
};

void write_ea_csv_header(std::ostream& out);
void append_ea_csv(std::ostream& out, Measure measure, int n, int m, const EaConfig& cfg,
                   const EaResult& result);
std::vector<EaCsvRow> parse_ea_csv(std::istream& in);

// --- GP verification: one row per run ------------------------------------
void write_gp_csv_header(std::ostream& out);
void append_gp_csv(std::ostream& out, const RmseRun& run);
std::vector<RmseRun> parse_gp_csv(std::istream& in);

// --- JSON documents (witnesses included) ----------------------------------
std::string probe_report_json(const ProbeReport& report);
std::string brute_report_json(const BruteForceReport& report);
std::string ea_result_json(Measure measure, int n, int m, const EaConfig& cfg,
                           const EaResult& result);

}  // namespace defprobe
