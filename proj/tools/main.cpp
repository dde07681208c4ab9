#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixmean/mixmean.hpp"

using namespace mixmean;
using nlohmann::ordered_json;

namespace {

// Exit codes are a contract: 0 verified/holds, 1 violation or failed
// identity, 2 input/usage error, 3 cap or precision exhausted.
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Overflow:
        case ErrorCode::CapExceeded:
        case ErrorCode::PrecisionExhausted:
            return kExitResource;
        default:
            return kExitUsage;
    }
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool color_enabled() {
    if (std::getenv("NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) != 0;
}

const char* kBold = "\033[1m";
const char* kGreen = "\033[32m";
const char* kRed = "\033[31m";
const char* kReset = "\033[0m";

struct Reporter {
    bool json = false;
    bool color = color_enabled();
    ordered_json doc;

    explicit Reporter(const std::string& command) { doc["command"] = command; }

    void flush_json() const { std::cout << doc.dump(2) << "\n"; }

    std::string paint(const std::string& text, const char* code) const {
        if (!color) return text;
        return std::string(code) + text + kReset;
    }

    void line(const std::string& label, const std::string& value) const {
        std::cout << "  " << label << ": " << value << "\n";
    }

    void head(const std::string& title) const {
        std::cout << paint("mixmean " + title, kBold) << "\n";
    }

    std::string verdict_text(Verdict v) const {
        return paint(verdict_name(v), v == Verdict::Violated ? kRed : kGreen);
    }

    std::string pass_text(bool ok) const {
        return paint(ok ? "pass" : "fail", ok ? kGreen : kRed);
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// Shared option state.
struct CommonOpts {
    std::string input = "-";
    std::string format = "csv";
    std::string backend = "float";
    std::string report = "text";
    std::size_t k = 0;
    std::size_t l = 0;
    double r = 1.0;
    std::uint64_t cap = std::uint64_t(1) << 40;
    unsigned threads = 1;
};

void add_matrix_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--input", opts.input, "Matrix file path, or - for standard input");
    cmd->add_option("--format", opts.format, "Matrix format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_report_option(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--report", opts.report, "Report style")
        ->check(CLI::IsMember({"text", "json"}));
}

void add_backend_option(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--backend", opts.backend, "Numeric backend")
        ->check(CLI::IsMember({"float", "exact"}));
}

MatrixFormat format_of(const CommonOpts& opts) {
    return opts.format == "json" ? MatrixFormat::Json : MatrixFormat::Csv;
}

std::string read_input(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file)
            throw Error(ErrorCode::EmptyInput, "cannot open input file: " + path);
        buffer << file.rdbuf();
    }
    return buffer.str();
}

ordered_json backend_json(const ScalarBackend& backend) {
    return ordered_json{{"mode", backend.mode == BackendMode::Float64 ? "float" : "exact"},
                        {"tolerance", backend.tolerance},
                        {"equality_tolerance", backend.equality_tolerance}};
}

ScalarBackend backend_of(const CommonOpts& opts) {
    ScalarBackend backend;
    backend.mode = opts.backend == "exact" ? BackendMode::ExactRational : BackendMode::Float64;
    return backend;
}

ordered_json sides_json(const TheoremReport& report) {
    ordered_json out{{"submatrix_count", report.sides.submatrix_count},
                     {"lhs", report.sides.lhs},
                     {"rhs", report.sides.rhs},
                     {"lhs_is_zero", report.sides.lhs_is_zero},
                     {"margin", report.margin},
                     {"relative_margin", report.relative_margin},
                     {"certified", report.certified}};
    if (report.certified) {
        out["lhs_lower"] = report.lhs_lower;
        out["lhs_upper"] = report.lhs_upper;
        out["rhs_lower"] = report.rhs_lower;
        out["rhs_upper"] = report.rhs_upper;
    }
    return out;
}

ordered_json params_json(const RangeParams& p) {
    return ordered_json{{"m", p.m}, {"n", p.n}, {"k", p.k}, {"l", p.l}};
}

void print_verify_text(const Reporter& rep, const TheoremReport& report, double elapsed) {
    rep.line("matrix", std::to_string(report.params.m) + " x " + std::to_string(report.params.n) +
                           ", k=" + std::to_string(report.params.k) +
                           ", l=" + std::to_string(report.params.l));
    rep.line("backend", report.backend.mode == BackendMode::Float64 ? "float" : "exact");
    rep.line("submatrices", std::to_string(report.sides.submatrix_count));
    rep.line("lhs", fmt17(report.sides.lhs));
    rep.line("rhs", fmt17(report.sides.rhs));
    rep.line("margin", fmt17(report.margin) + " (relative " + fmt17(report.relative_margin) + ")");
    if (report.certified) {
        rep.line("lhs enclosure", "[" + fmt17(report.lhs_lower) + ", " + fmt17(report.lhs_upper) + "]");
        rep.line("rhs enclosure", "[" + fmt17(report.rhs_lower) + ", " + fmt17(report.rhs_upper) + "]");
    }
    rep.line("verdict", rep.verdict_text(report.verdict));
    rep.line("elapsed", fmt17(elapsed) + " s");
}

int run_verify(const CommonOpts& opts, bool checked) {
    Timer timer;
    std::string text = read_input(opts.input);
    ScalarBackend backend = backend_of(opts);
    EvalOptions eval;
    eval.cap = opts.cap;
    eval.threads = opts.threads;

    TheoremReport report;
    if (backend.mode == BackendMode::ExactRational) {
        RationalMatrix B = parse_matrix_exact(text, format_of(opts));
        report = checked ? evaluate_theorem(B, opts.k, opts.l, backend, eval)
                         : evaluate_unchecked(B, opts.k, opts.l, backend, eval);
    } else {
        NonnegMatrix B = parse_matrix(text, format_of(opts));
        report = checked ? evaluate_theorem(B, opts.k, opts.l, backend, eval)
                         : evaluate_unchecked(B, opts.k, opts.l, backend, eval);
    }

    Reporter rep(checked ? "verify" : "verify-unchecked");
    rep.json = opts.report == "json";
    rep.doc["parameters"] = params_json(report.params);
    rep.doc["parameters"]["threads"] = opts.threads;
    rep.doc["backend"] = backend_json(report.backend);
    rep.doc["results"] = sides_json(report);
    rep.doc["verdict"] = verdict_name(report.verdict);
    double elapsed = timer.seconds();
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head(checked ? "verify" : "verify-unchecked");
        print_verify_text(rep, report, elapsed);
    }
    return report.verdict == Verdict::Violated ? kExitViolation : kExitOk;
}

std::optional<IndexSubset> parse_subset_opt(const std::vector<std::size_t>& values,
                                            std::size_t universe) {
    if (values.empty()) return std::nullopt;
    return IndexSubset(universe, values);
}

int run_lemma(const CommonOpts& opts, const std::vector<std::size_t>& base_rows,
              const std::vector<std::size_t>& base_cols) {
    Timer timer;
    std::string text = read_input(opts.input);
    ScalarBackend backend = backend_of(opts);
    bool exact = backend.mode == BackendMode::ExactRational;
    bool integer_r = opts.r >= 1.0 && opts.r == std::floor(opts.r);

    Reporter rep("lemma");
    rep.json = opts.report == "json";

    NonnegMatrix B = parse_matrix(text, format_of(opts));
    RationalMatrix exact_B = exact ? parse_matrix_exact(text, format_of(opts))
                                   : RationalMatrix(1, 1, {Rational(0)});
    std::size_t m = B.rows(), n = B.cols();

    std::optional<IndexSubset> rows_opt = parse_subset_opt(base_rows, m);
    std::optional<IndexSubset> cols_opt = parse_subset_opt(base_cols, n);
    if (rows_opt && rows_opt->size() != opts.k)
        throw Error(ErrorCode::SelectionOutOfRange, "--base-rows must pick exactly k rows");
    if (cols_opt && cols_opt->size() != opts.l)
        throw Error(ErrorCode::SelectionOutOfRange, "--base-cols must pick exactly l columns");

    std::vector<SubmatrixSelection> bases;
    if (rows_opt && cols_opt) {
        bases.push_back({*rows_opt, *cols_opt});
    } else {
        for (const IndexSubset& rows : enumerate_lex(m, opts.k))
            for (const IndexSubset& cols : enumerate_lex(n, opts.l))
                if ((!rows_opt || rows == *rows_opt) && (!cols_opt || cols == *cols_opt))
                    bases.push_back({rows, cols});
    }

    double max_relative = 0.0;
    std::string max_exact = "0";
    double max_interval_width = 0.0;
    bool ok = true;
    for (const SubmatrixSelection& base : bases) {
        if (exact && integer_r) {
            Rational residual = lemma_identity_exact(exact_B, base, static_cast<unsigned>(opts.r));
            if (residual != 0) {
                ok = false;
                max_exact = rational_to_text(residual);
            }
        } else if (exact) {
            oracle::Interval residual =
                oracle::brute_lemma(exact_B, base, opts.r);
            max_interval_width = std::max(max_interval_width, residual.upper - residual.lower);
            if (!residual.contains(0.0)) ok = false;
        } else {
            LemmaCheck check = lemma_identity(B, base, PowerExponent{opts.r}, backend);
            double relative = std::abs(check.residual) / check.scale;
            max_relative = std::max(max_relative, relative);
            if (relative > backend.tolerance) ok = false;
        }
    }

    double elapsed = timer.seconds();
    rep.doc["parameters"] = ordered_json{{"m", m}, {"n", n}, {"k", opts.k}, {"l", opts.l},
                                         {"r", opts.r}, {"bases_checked", bases.size()}};
    rep.doc["backend"] = backend_json(backend);
    ordered_json results;
    if (exact && integer_r) {
        results["max_exact_residual"] = max_exact;
    } else if (exact) {
        results["max_enclosure_width"] = max_interval_width;
    } else {
        results["max_relative_residual"] = max_relative;
    }
    results["identity_holds"] = ok;
    rep.doc["results"] = results;
    rep.doc["verdict"] = ok ? "holds" : "violated";
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("lemma");
        rep.line("matrix", std::to_string(m) + " x " + std::to_string(n) + ", k=" +
                               std::to_string(opts.k) + ", l=" + std::to_string(opts.l) +
                               ", r=" + fmt17(opts.r));
        rep.line("bases checked", std::to_string(bases.size()));
        if (exact && integer_r)
            rep.line("max exact residual", max_exact);
        else if (exact)
            rep.line("max enclosure width", fmt17(max_interval_width));
        else
            rep.line("max relative residual", fmt17(max_relative));
        rep.line("identity", rep.pass_text(ok));
        rep.line("elapsed", fmt17(elapsed) + " s");
    }
    return ok ? kExitOk : kExitViolation;
}

int run_coeffs(const CommonOpts& opts, std::size_t m, std::size_t n,
               const std::vector<std::size_t>& base_rows,
               const std::vector<std::size_t>& base_cols, bool all_bases) {
    Timer timer;
    Reporter rep("coeffs");
    rep.json = opts.report == "json";

    std::vector<SubmatrixSelection> bases;
    if (all_bases) {
        for (const IndexSubset& rows : enumerate_lex(m, opts.k))
            for (const IndexSubset& cols : enumerate_lex(n, opts.l)) bases.push_back({rows, cols});
    } else {
        std::vector<std::size_t> rows = base_rows, cols = base_cols;
        if (rows.empty())
            for (std::size_t i = 0; i < opts.k; ++i) rows.push_back(i);
        if (cols.empty())
            for (std::size_t j = 0; j < opts.l; ++j) cols.push_back(j);
        bases.push_back({IndexSubset(m, rows), IndexSubset(n, cols)});
    }

    bool all_match = true;
    CoefficientTable first;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        CoefficientTable table = coefficient_check(m, n, opts.k, opts.l, bases[i]);
        if (i == 0) first = table;
        all_match = all_match && table.all_match;
    }

    double elapsed = timer.seconds();
    rep.doc["parameters"] = ordered_json{{"m", m}, {"n", n}, {"k", opts.k}, {"l", opts.l},
                                         {"bases_checked", bases.size()}};
    ordered_json table_json = ordered_json::array();
    for (std::size_t p = 0; p < first.k; ++p) {
        ordered_json row = ordered_json::array();
        for (std::size_t q = 0; q < first.l; ++q) row.push_back(rational_to_text(first.at(p, q)));
        table_json.push_back(row);
    }
    rep.doc["results"] = ordered_json{{"expected", rational_to_text(first.expected)},
                                      {"coefficients", table_json},
                                      {"all_match", all_match}};
    rep.doc["verdict"] = all_match ? "holds" : "violated";
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("coeffs");
        rep.line("shape", std::to_string(m) + " x " + std::to_string(n) + ", k=" +
                              std::to_string(opts.k) + ", l=" + std::to_string(opts.l));
        rep.line("bases checked", std::to_string(bases.size()));
        rep.line("expected coefficient", rational_to_text(first.expected));
        std::string flat;
        for (std::size_t p = 0; p < first.k; ++p) {
            for (std::size_t q = 0; q < first.l; ++q)
                flat += rational_to_text(first.at(p, q)) + (q + 1 < first.l ? " " : "");
            if (p + 1 < first.k) flat += " / ";
        }
        rep.line("coefficients", flat);
        rep.line("all match", rep.pass_text(all_match));
        rep.line("elapsed", fmt17(elapsed) + " s");
    }
    return all_match ? kExitOk : kExitViolation;
}

int run_trace(const CommonOpts& opts) {
    Timer timer;
    std::string text = read_input(opts.input);
    NonnegMatrix B = parse_matrix(text, format_of(opts));
    ProofTrace trace = proof_trace(B, opts.k, opts.l, backend_of(opts));

    Reporter rep("trace");
    rep.json = opts.report == "json";
    double elapsed = timer.seconds();
    rep.doc["parameters"] = params_json(trace.params);
    rep.doc["backend"] = backend_json(backend_of(opts));
    ordered_json bases = ordered_json::array();
    for (const TraceBaseRecord& record : trace.bases) {
        bases.push_back(ordered_json{{"id", record.id},
                                     {"arithmetic_mean", record.arithmetic_mean},
                                     {"geometric_mean", record.geometric_mean},
                                     {"mean_decomposition_residual", record.mean_decomposition_residual},
                                     {"log_decomposition_residual", record.log_decomposition_residual},
                                     {"overlap_sum", record.overlap_sum},
                                     {"min_pairwise_margin", record.min_pairwise_margin}});
    }
    rep.doc["results"] = ordered_json{{"submatrix_count", trace.submatrix_count},
                                      {"lhs", trace.lhs},
                                      {"product_bound", trace.product_bound},
                                      {"holder_left", trace.holder_left},
                                      {"rhs", trace.rhs},
                                      {"max_decomposition_residual", trace.max_decomposition_residual},
                                      {"max_log_decomposition_residual", trace.max_log_decomposition_residual},
                                      {"min_pairwise_margin", trace.min_pairwise_margin},
                                      {"chain_holds", trace.chain_holds},
                                      {"bases", bases}};
    rep.doc["verdict"] = trace.chain_holds ? "holds" : "violated";
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("trace");
        rep.line("matrix", std::to_string(trace.params.m) + " x " + std::to_string(trace.params.n) +
                               ", k=" + std::to_string(trace.params.k) + ", l=" +
                               std::to_string(trace.params.l));
        rep.line("submatrices", std::to_string(trace.submatrix_count));
        rep.line("lhs", fmt17(trace.lhs));
        rep.line("product bound", fmt17(trace.product_bound));
        rep.line("holder left", fmt17(trace.holder_left));
        rep.line("rhs", fmt17(trace.rhs));
        rep.line("max decomposition residual", fmt17(trace.max_decomposition_residual));
        rep.line("max log decomposition residual", fmt17(trace.max_log_decomposition_residual));
        rep.line("min pairwise margin", fmt17(trace.min_pairwise_margin));
        rep.line("chain", rep.pass_text(trace.chain_holds));
        rep.line("elapsed", fmt17(elapsed) + " s");
    }
    return trace.chain_holds ? kExitOk : kExitViolation;
}

int run_counterexample(const CommonOpts& opts, std::size_t m, std::size_t n) {
    Timer timer;
    NonnegMatrix W = counterexample_matrix(m, n, opts.k, opts.l);
    TheoremReport report = evaluate_unchecked(W, opts.k, opts.l, backend_of(opts));

    Reporter rep("counterexample");
    rep.json = opts.report == "json";
    double elapsed = timer.seconds();
    rep.doc["parameters"] = params_json(report.params);
    rep.doc["backend"] = backend_json(report.backend);
    ordered_json matrix_rows = ordered_json::array();
    for (std::size_t i = 0; i < W.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < W.cols(); ++j) row.push_back(W.at(i, j));
        matrix_rows.push_back(row);
    }
    rep.doc["matrix"] = ordered_json{{"rows", matrix_rows}};
    rep.doc["results"] = sides_json(report);
    rep.doc["verdict"] = verdict_name(report.verdict);
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("counterexample");
        rep.line("shape", std::to_string(m) + " x " + std::to_string(n) + ", k=" +
                              std::to_string(opts.k) + ", l=" + std::to_string(opts.l));
        std::cout << serialize_matrix(W, MatrixFormat::Csv);
        print_verify_text(rep, report, elapsed);
    }
    return report.verdict == Verdict::Violated ? kExitViolation : kExitOk;
}

int run_scan(const CommonOpts& opts, ScanOptions scan) {
    Timer timer;
    scan.backend = backend_of(opts);
    ScanSummary summary = random_scan(scan);

    Reporter rep("scan");
    rep.json = opts.report == "json";
    double elapsed = timer.seconds();
    rep.doc["parameters"] = ordered_json{{"trials", scan.trials},
                                         {"min_dim", scan.min_dim},
                                         {"max_dim", scan.max_dim},
                                         {"seed", scan.seed},
                                         {"zero_fraction", scan.zero_fraction},
                                         {"out_of_range", scan.out_of_range}};
    rep.doc["backend"] = backend_json(scan.backend);
    rep.doc["results"] = ordered_json{{"in_range_trials", summary.in_range_trials},
                                      {"holds", summary.holds},
                                      {"equality", summary.equality},
                                      {"violated", summary.violated},
                                      {"min_relative_margin", summary.min_relative_margin},
                                      {"out_of_range_trials", summary.out_of_range_trials},
                                      {"out_of_range_violations", summary.out_of_range_violations},
                                      {"out_of_range_min_margin", summary.out_of_range_min_margin}};
    bool ok = summary.violated == 0;
    rep.doc["verdict"] = ok ? "holds" : "violated";
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("scan");
        rep.line("in-range trials", std::to_string(summary.in_range_trials));
        rep.line("holds / equality / violated",
                 std::to_string(summary.holds) + " / " + std::to_string(summary.equality) + " / " +
                     std::to_string(summary.violated));
        rep.line("min relative margin", fmt17(summary.min_relative_margin));
        if (scan.out_of_range) {
            rep.line("out-of-range trials", std::to_string(summary.out_of_range_trials));
            rep.line("out-of-range violations", std::to_string(summary.out_of_range_violations));
            rep.line("out-of-range min margin", fmt17(summary.out_of_range_min_margin));
        }
        rep.line("in-range verdict", rep.pass_text(ok));
        rep.line("elapsed", fmt17(elapsed) + " s");
    }
    return ok ? kExitOk : kExitViolation;
}

int run_reduce_check(const CommonOpts& opts, std::uint64_t trials, std::uint64_t seed) {
    Timer timer;
    std::mt19937_64 master(seed);

    // Whole-matrix selection must reduce to the classical mean comparison.
    double max_whole_deviation = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::size_t m = 1 + master() % 5;
        std::size_t n = 1 + master() % 5;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::LogUniform, 0.0);
        TheoremReport report = evaluate_theorem(B, m, n);
        double sum = 0.0, logs = 0.0;
        for (double v : B.entries()) {
            sum += v;
            logs += std::log(v);
        }
        double cells = static_cast<double>(m * n);
        double am = sum / cells;
        double gm = std::exp(logs / cells);
        max_whole_deviation = std::max(max_whole_deviation,
                                       std::abs(report.sides.lhs - am) / std::max(am, 1e-300));
        max_whole_deviation = std::max(max_whole_deviation,
                                       std::abs(report.sides.rhs - gm) / std::max(gm, 1e-300));
    }

    // Single-row matrices must agree with the independent vector-form oracle.
    double max_vector_deviation = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::size_t n = 2 + master() % 7;
        std::size_t l = n / 2 + 1 + master() % (n - n / 2);
        NonnegMatrix row = random_matrix(master(), 1, n, EntryDistribution::UniformPositive, 0.0);
        TheoremReport report = evaluate_theorem(row, 1, l);
        auto vector_form = oracle::subset_mixed_mean(row.entries(), l);
        max_vector_deviation =
            std::max(max_vector_deviation,
                     std::abs(report.sides.lhs - vector_form.lhs) / std::max(vector_form.lhs, 1e-300));
        max_vector_deviation =
            std::max(max_vector_deviation,
                     std::abs(report.sides.rhs - vector_form.rhs) / std::max(vector_form.rhs, 1e-300));
    }

    bool ok = max_whole_deviation <= 1e-12 && max_vector_deviation <= 1e-12;
    Reporter rep("reduce-check");
    rep.json = opts.report == "json";
    double elapsed = timer.seconds();
    rep.doc["parameters"] = ordered_json{{"trials", trials}, {"seed", seed}};
    rep.doc["results"] = ordered_json{{"max_whole_matrix_deviation", max_whole_deviation},
                                      {"max_vector_form_deviation", max_vector_deviation},
                                      {"reductions_agree", ok}};
    rep.doc["verdict"] = ok ? "holds" : "violated";
    rep.doc["elapsed_seconds"] = elapsed;
    if (rep.json) {
        rep.flush_json();
    } else {
        rep.head("reduce-check");
        rep.line("trials per reduction", std::to_string(trials));
        rep.line("max whole-matrix deviation", fmt17(max_whole_deviation));
        rep.line("max vector-form deviation", fmt17(max_vector_deviation));
        rep.line("reductions", rep.pass_text(ok));
        rep.line("elapsed", fmt17(elapsed) + " s");
    }
    return ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verifier for the mixed arithmetic-geometric mean inequality over submatrices"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::size_t m = 4, n = 3;
    std::vector<std::size_t> base_rows, base_cols;
    bool all_bases = false;
    ScanOptions scan;
    std::string dist = "uniform";
    bool in_range_only = false;
    std::uint64_t reduce_trials = 100;
    std::uint64_t reduce_seed = 0;

    CLI::App* verify = app.add_subcommand("verify", "Evaluate both sides inside the claimed range");
    CLI::App* unchecked = app.add_subcommand(
        "verify-unchecked", "Evaluate both sides for any shape, where the inequality may fail");
    for (CLI::App* cmd : {verify, unchecked}) {
        add_matrix_options(cmd, opts);
        add_backend_option(cmd, opts);
        add_report_option(cmd, opts);
        cmd->add_option("--k", opts.k, "Submatrix row count")->required();
        cmd->add_option("--l", opts.l, "Submatrix column count")->required();
        cmd->add_option("--cap", opts.cap, "Maximum submatrix count");
        cmd->add_option("--threads", opts.threads, "Worker threads for the scan");
    }

    CLI::App* lemma = app.add_subcommand("lemma", "Check the power-mean decomposition identity");
    add_matrix_options(lemma, opts);
    add_backend_option(lemma, opts);
    add_report_option(lemma, opts);
    lemma->add_option("--k", opts.k, "Base submatrix row count")->required();
    lemma->add_option("--l", opts.l, "Base submatrix column count")->required();
    lemma->add_option("--r", opts.r, "Power mean exponent (0 = geometric)");
    lemma->add_option("--base-rows", base_rows, "Base row indices (default: all bases)");
    lemma->add_option("--base-cols", base_cols, "Base column indices (default: all bases)");

    CLI::App* coeffs = app.add_subcommand("coeffs", "Check the exact counting coefficients");
    add_report_option(coeffs, opts);
    coeffs->add_option("--m", m, "Matrix row count")->required();
    coeffs->add_option("--n", n, "Matrix column count")->required();
    coeffs->add_option("--k", opts.k, "Base submatrix row count")->required();
    coeffs->add_option("--l", opts.l, "Base submatrix column count")->required();
    coeffs->add_option("--base-rows", base_rows, "Base row indices (default: first k)");
    coeffs->add_option("--base-cols", base_cols, "Base column indices (default: first l)");
    coeffs->add_flag("--all-bases", all_bases, "Check every base selection");

    CLI::App* trace = app.add_subcommand("trace", "Verify the full derivation chain on one instance");
    add_matrix_options(trace, opts);
    add_report_option(trace, opts);
    trace->add_option("--k", opts.k, "Submatrix row count")->required();
    trace->add_option("--l", opts.l, "Submatrix column count")->required();

    CLI::App* counter = app.add_subcommand(
        "counterexample", "Evaluate the degenerate-range witness (lhs = 0, rhs > 0)");
    add_report_option(counter, opts);
    counter->add_option("--m", m, "Matrix row count");
    counter->add_option("--n", n, "Matrix column count");
    counter->add_option("--k", opts.k, "Submatrix row count")->default_val(2);
    counter->add_option("--l", opts.l, "Submatrix column count")->default_val(2);

    CLI::App* scan_cmd = app.add_subcommand("scan", "Randomized sweep over many instances");
    add_backend_option(scan_cmd, opts);
    add_report_option(scan_cmd, opts);
    scan_cmd->add_option("--trials", scan.trials, "In-range trials");
    scan_cmd->add_option("--seed", scan.seed, "Random seed");
    scan_cmd->add_option("--min-dim", scan.min_dim, "Minimum matrix dimension");
    scan_cmd->add_option("--max-dim", scan.max_dim, "Maximum matrix dimension");
    scan_cmd->add_option("--dist", dist, "Entry distribution")
        ->check(CLI::IsMember({"uniform", "zeros", "log", "constant"}));
    scan_cmd->add_option("--zero-fraction", scan.zero_fraction, "Zero density for --dist zeros");
    scan_cmd->add_flag("--in-range-only", in_range_only, "Skip the out-of-range violation hunt");

    CLI::App* reduce = app.add_subcommand(
        "reduce-check", "Check the whole-matrix and single-row reductions against oracles");
    add_report_option(reduce, opts);
    reduce->add_option("--trials", reduce_trials, "Trials per reduction");
    reduce->add_option("--seed", reduce_seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(opts, true);
        if (*unchecked) return run_verify(opts, false);
        if (*lemma) return run_lemma(opts, base_rows, base_cols);
        if (*coeffs) return run_coeffs(opts, m, n, base_rows, base_cols, all_bases);
        if (*trace) return run_trace(opts);
        if (*counter) return run_counterexample(opts, m, n);
        if (*scan_cmd) {
            if (dist == "zeros")
                scan.distribution = EntryDistribution::UniformWithZeros;
            else if (dist == "log")
                scan.distribution = EntryDistribution::LogUniform;
            else if (dist == "constant")
                scan.distribution = EntryDistribution::ConstantMatrix;
            scan.out_of_range = !in_range_only;
            return run_scan(opts, scan);
        }
        if (*reduce) return run_reduce_check(opts, reduce_trials, reduce_seed);
    } catch (const Error& e) {
        std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
