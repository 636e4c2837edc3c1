#include "defprobe/report.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace defprobe {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

// Consumes the schema line and the header, returns data lines.
std::vector<std::string> read_body(std::istream& in, std::string_view kind,
                                   const std::string& expected_header) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("report: empty stream");
    const std::string expected_schema = "# " + std::string(kReportVersion) + " " + std::string(kind);
    if (line != expected_schema)
        throw std::invalid_argument("report: bad schema line: " + line);
    if (!std::getline(in, line) || line != expected_header)
        throw std::invalid_argument("report: bad header line");
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;  // skipped-cell annotations
        rows.push_back(line);
    }
    return rows;
}

double to_double(const std::string& s) { return std::stod(s); }
long long to_ll(const std::string& s) { return std::stoll(s); }
std::uint64_t to_u64(const std::string& s) { return std::stoull(s); }

json witness_json(const Witness& w) {
    json members = json::array();
    for (const auto& p : w.set.members()) members.push_back(p.elements());
    return json{{"repeat", w.repeat},
                {"set_index", w.set_index},
                {"lambda", w.lambda},
                {"members", members}};
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --- sampling ----------------------------------------------------------------

namespace {
const std::string kSampleHeader = "measure,n,m,t,seed,repeat,n_lambda_plus,p,lambda_max";
}

void write_sample_csv_header(std::ostream& out) {
    out << "# " << kReportVersion << " sample\n" << kSampleHeader << "\n";
}

void append_sample_csv(std::ostream& out, const ProbeReport& report) {
    const auto& cfg = report.config;
    for (const auto& rep : report.repeats) {
        out << measure_id(cfg.measure) << ',' << cfg.n << ',' << cfg.m << ',' << cfg.t << ','
            << cfg.seed << ',' << rep.repeat << ',' << rep.n_lambda_plus << ','
            << format_number(rep.p) << ',' << format_number(rep.lambda_max) << "\n";
    }
    out.flush();
}

std::vector<SampleCsvRow> parse_sample_csv(std::istream& in) {
    std::vector<SampleCsvRow> rows;
    for (const auto& line : read_body(in, "sample", kSampleHeader)) {
        const auto f = split_csv(line);
        if (f.size() != 9) throw std::invalid_argument("sample report: bad row: " + line);
        SampleCsvRow row;
        row.measure = f[0];
        row.n = static_cast<int>(to_ll(f[1]));
        row.m = static_cast<int>(to_ll(f[2]));
        row.t = to_ll(f[3]);
        row.seed = to_u64(f[4]);
        row.repeat = static_cast<int>(to_ll(f[5]));
        row.n_lambda_plus = to_ll(f[6]);
        row.p = to_double(f[7]);
        row.lambda_max = to_double(f[8]);
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- brute force ---------------------------------------------------------------

namespace {
const std::string kBruteHeader = "measure,n,m,n_s,n_lambda_plus,p,lambda_max";
}

void write_brute_csv_header(std::ostream& out) {
    out << "# " << kReportVersion << " brute\n" << kBruteHeader << "\n";
}

void append_brute_csv(std::ostream& out, const BruteForceReport& report) {
    out << measure_id(report.measure) << ',' << report.n << ',' << report.m << ',' << report.n_s
        << ',' << report.n_lambda_plus << ',' << format_number(report.p) << ','
        << format_number(report.lambda_max) << "\n";
    out.flush();
}

std::vector<BruteCsvRow> parse_brute_csv(std::istream& in) {
    std::vector<BruteCsvRow> rows;
    for (const auto& line : read_body(in, "brute", kBruteHeader)) {
        const auto f = split_csv(line);
        if (f.size() != 7) throw std::invalid_argument("brute report: bad row: " + line);
        BruteCsvRow row;
        row.measure = f[0];
        row.n = static_cast<int>(to_ll(f[1]));
        row.m = static_cast<int>(to_ll(f[2]));
        row.n_s = to_u64(f[3]);
        row.n_lambda_plus = to_u64(f[4]);
        row.p = to_double(f[5]);
        row.lambda_max = to_double(f[6]);
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- EA -------------------------------------------------------------------------

namespace {
const std::string kEaHeader = "measure,n,m,seed,submutation,generation,best_lambda";
}

void write_ea_csv_header(std::ostream& out) {
    out << "# " << kReportVersion << " ea\n" << kEaHeader << "\n";
}

void append_ea_csv(std::ostream& out, Measure measure, int n, int m, const EaConfig& cfg,
                   const EaResult& result) {
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        out << measure_id(measure) << ',' << n << ',' << m << ',' << cfg.seed << ','
            << submutation_id(cfg.submutation) << ',' << g << ','
            << format_number(result.history[g]) << "\n";
    }
    out.flush();
}

std::vector<EaCsvRow> parse_ea_csv(std::istream& in) {
    std::vector<EaCsvRow> rows;
    for (const auto& line : read_body(in, "ea", kEaHeader)) {
        const auto f = split_csv(line);
        if (f.size() != 7) throw std::invalid_argument("ea report: bad row: " + line);
        EaCsvRow row;
        row.measure = f[0];
        row.n = static_cast<int>(to_ll(f[1]));
        row.m = static_cast<int>(to_ll(f[2]));
        row.seed = to_u64(f[3]);
        row.submutation = f[4];
        row.generation = static_cast<int>(to_ll(f[5]));
        row.best_lambda = to_double(f[6]);
        rows.push_back(std::move(row));
    }
    return rows;
}

// --- GP -------------------------------------------------------------------------

namespace {
const std::string kGpHeader = "measure,n,m,seed,lambda_n,theta,nugget,rmse,fit_status";
}

void write_gp_csv_header(std::ostream& out) {
    out << "# " << kReportVersion << " gp\n" << kGpHeader << "\n";
}

void append_gp_csv(std::ostream& out, const RmseRun& run) {
    out << measure_id(run.measure) << ',' << run.n << ',' << run.m << ',' << run.seed << ','
        << format_number(run.lambda_n) << ',' << format_number(run.theta) << ','
        << format_number(run.nugget) << ',' << format_number(run.rmse) << ','
        << (run.status == FitStatus::Ok ? "ok" : "failed") << "\n";
    out.flush();
}

std::vector<RmseRun> parse_gp_csv(std::istream& in) {
    std::vector<RmseRun> rows;
    for (const auto& line : read_body(in, "gp", kGpHeader)) {
        const auto f = split_csv(line);
        if (f.size() != 9) throw std::invalid_argument("gp report: bad row: " + line);
        RmseRun row;
        row.measure = measure_from_id(f[0]);
        row.n = static_cast<int>(to_ll(f[1]));
        row.m = static_cast<int>(to_ll(f[2]));
        row.seed = to_u64(f[3]);
        row.lambda_n = to_double(f[4]);
        row.theta = to_double(f[5]);
        row.nugget = to_double(f[6]);
        row.rmse = to_double(f[7]);
        row.status = f[8] == "ok" ? FitStatus::Ok : FitStatus::Failed;
        rows.push_back(row);
    }
    return rows;
}

// --- JSON documents ---------------------------------------------------------------

std::string probe_report_json(const ProbeReport& report) {
    const auto& cfg = report.config;
    json repeats = json::array();
    for (const auto& rep : report.repeats) {
        repeats.push_back({{"repeat", rep.repeat},
                           {"n_lambda_plus", rep.n_lambda_plus},
                           {"p", rep.p},
                           {"lambda_max", rep.lambda_max}});
    }
    json witnesses = json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(witness_json(w));
    json doc{{"schema", std::string(kReportVersion) + " sample"},
             {"config",
              {{"measure", measure_id(cfg.measure)},
               {"n", cfg.n},
               {"m", cfg.m},
               {"t", cfg.t},
               {"repeats", cfg.repeats},
               {"epsilon", cfg.epsilon},
               {"seed", cfg.seed}}},
             {"repeats", repeats},
             {"n_lambda_plus_total", report.n_lambda_plus_total},
             {"mean_p", report.mean_p},
             {"mean_lambda_max", report.mean_lambda_max},
             {"lambda_max_overall", report.lambda_max_overall},
             {"witnesses", witnesses}};
    if (report.argmax) doc["argmax"] = witness_json(*report.argmax);
    return doc.dump(2);
}

std::string brute_report_json(const BruteForceReport& report) {
    json witnesses = json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(witness_json(w));
    json doc{{"schema", std::string(kReportVersion) + " brute"},
             {"measure", measure_id(report.measure)},
             {"n", report.n},
             {"m", report.m},
             {"epsilon", report.epsilon},
             {"n_s", report.n_s},
             {"n_lambda_plus", report.n_lambda_plus},
             {"p", report.p},
             {"lambda_max", report.lambda_max},
             {"witnesses", witnesses}};
    if (report.argmax) doc["argmax"] = witness_json(*report.argmax);
    return doc.dump(2);
}

std::string ea_result_json(Measure measure, int n, int m, const EaConfig& cfg,
                           const EaResult& result) {
    json doc{{"schema", std::string(kReportVersion) + " ea"},
             {"config",
              {{"measure", measure_id(measure)},
               {"n", n},
               {"m", m},
               {"population_size", cfg.population_size},
               {"budget", cfg.budget},
               {"recombination_rate", cfg.recombination_rate},
               {"mutation_rate", cfg.mutation_rate},
               {"submutation", submutation_id(cfg.submutation)},
               {"epsilon", cfg.epsilon},
               {"seed", cfg.seed}}},
             {"found", result.found},
             {"evaluations_used", result.evaluations_used},
             {"best_lambda", result.best_lambda},
             {"history", result.history}};
    if (result.witness) {
        json members = json::array();
        for (const auto& p : result.witness->members()) members.push_back(p.elements());
        doc["witness"] = members;
    }
    return doc.dump(2);
}

}  // namespace defprobe
