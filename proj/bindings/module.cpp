#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mixmean/mixmean.hpp"

namespace py = pybind11;
using namespace mixmean;

namespace {

NonnegMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty())
        throw Error(ErrorCode::EmptyMatrix, "matrix must have at least one row");
    std::size_t cols = rows.front().size();
    std::vector<double> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols)
            throw Error(ErrorCode::RaggedRows, "all rows must have the same length");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return NonnegMatrix(rows.size(), cols, entries);
}

std::vector<std::vector<double>> rows_from_matrix(const NonnegMatrix& B) {
    std::vector<std::vector<double>> rows(B.rows(), std::vector<double>(B.cols()));
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) rows[i][j] = B.at(i, j);
    return rows;
}

ScalarBackend backend_from_name(const std::string& name) {
    ScalarBackend backend;
    if (name == "exact")
        backend.mode = BackendMode::ExactRational;
    else if (name != "float")
        throw Error(ErrorCode::InvalidArgument, "backend must be 'float' or 'exact'");
    return backend;
}

py::dict report_to_dict(const TheoremReport& report) {
    py::dict out;
    out["m"] = report.params.m;
    out["n"] = report.params.n;
    out["k"] = report.params.k;
    out["l"] = report.params.l;
    out["backend"] = report.backend.mode == BackendMode::Float64 ? "float" : "exact";
    out["submatrix_count"] = report.sides.submatrix_count;
    out["lhs"] = report.sides.lhs;
    out["rhs"] = report.sides.rhs;
    out["lhs_is_zero"] = report.sides.lhs_is_zero;
    out["margin"] = report.margin;
    out["relative_margin"] = report.relative_margin;
    out["verdict"] = verdict_name(report.verdict);
    out["certified"] = report.certified;
    if (report.certified) {
        out["lhs_enclosure"] = py::make_tuple(report.lhs_lower, report.lhs_upper);
        out["rhs_enclosure"] = py::make_tuple(report.rhs_lower, report.rhs_upper);
    }
    return out;
}

EntryDistribution distribution_from_name(const std::string& name) {
    if (name == "uniform") return EntryDistribution::UniformPositive;
    if (name == "zeros") return EntryDistribution::UniformWithZeros;
    if (name == "log") return EntryDistribution::LogUniform;
    if (name == "constant") return EntryDistribution::ConstantMatrix;
    throw Error(ErrorCode::InvalidArgument,
                "distribution must be 'uniform', 'zeros', 'log', or 'constant'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Verifier for the mixed arithmetic-geometric mean inequality over "
              "k x l submatrices of a nonnegative matrix.";

    static py::exception<Error> error_type(m, "VerifierError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            std::string message = std::string(error_code_name(e.code())) + ": " + e.what();
            py::set_error(error_type, message.c_str());
        }
    });

    m.def(
        "evaluate",
        [](const std::vector<std::vector<double>>& rows, std::size_t k, std::size_t l,
           const std::string& backend, bool checked, std::uint64_t cap, unsigned threads) {
            NonnegMatrix B = matrix_from_rows(rows);
            EvalOptions options;
            options.cap = cap;
            options.threads = threads;
            ScalarBackend scalar = backend_from_name(backend);
            TheoremReport report = checked ? evaluate_theorem(B, k, l, scalar, options)
                                           : evaluate_unchecked(B, k, l, scalar, options);
            return report_to_dict(report);
        },
        py::arg("matrix"), py::arg("k"), py::arg("l"), py::kw_only(),
        py::arg("backend") = "float", py::arg("checked") = true,
        py::arg("cap") = std::uint64_t(1) << 40, py::arg("threads") = 1,
        "Evaluate both sides of the inequality over all k x l submatrices.\n"
        "checked=True enforces the claimed range 2k > m, 2l > n.");

    m.def(
        "counterexample",
        [](std::size_t m_, std::size_t n_, std::size_t k, std::size_t l) {
            return rows_from_matrix(counterexample_matrix(m_, n_, k, l));
        },
        py::arg("m"), py::arg("n"), py::arg("k"), py::arg("l"),
        "The degenerate-range witness: k all-ones rows, then all-zero rows.");

    m.def(
        "lemma_identity",
        [](const std::vector<std::vector<double>>& rows, const std::vector<std::size_t>& base_rows,
           const std::vector<std::size_t>& base_cols, double r) {
            NonnegMatrix B = matrix_from_rows(rows);
            SubmatrixSelection base{IndexSubset(B.rows(), base_rows),
                                    IndexSubset(B.cols(), base_cols)};
            LemmaCheck check = lemma_identity(B, base, PowerExponent{r});
            py::dict out;
            out["residual"] = check.residual;
            out["scale"] = check.scale;
            out["log_form"] = check.log_form;
            return out;
        },
        py::arg("matrix"), py::arg("base_rows"), py::arg("base_cols"), py::arg("r") = 1.0,
        "Residual of the power-mean decomposition identity at one base submatrix.");

    m.def(
        "coefficient_check",
        [](std::size_t m_, std::size_t n_, std::size_t k, std::size_t l,
           const std::vector<std::size_t>& base_rows, const std::vector<std::size_t>& base_cols) {
            SubmatrixSelection base{IndexSubset(m_, base_rows), IndexSubset(n_, base_cols)};
            CoefficientTable table = coefficient_check(m_, n_, k, l, base);
            py::list coefficients;
            for (std::size_t p = 0; p < table.k; ++p) {
                py::list row;
                for (std::size_t q = 0; q < table.l; ++q)
                    row.append(rational_to_text(table.at(p, q)));
                coefficients.append(row);
            }
            py::dict out;
            out["expected"] = rational_to_text(table.expected);
            out["coefficients"] = coefficients;
            out["all_match"] = table.all_match;
            return out;
        },
        py::arg("m"), py::arg("n"), py::arg("k"), py::arg("l"), py::arg("base_rows"),
        py::arg("base_cols"),
        "Exact counting coefficients behind the identity; each must equal 1/(k*l).");

    m.def(
        "holder_mixed",
        [](const std::vector<std::vector<double>>& rows) {
            HolderResult result = holder_mixed(matrix_from_rows(rows));
            py::dict out;
            out["left"] = result.left;
            out["right"] = result.right;
            out["holds"] = result.holds;
            return out;
        },
        py::arg("grid"),
        "Mixed-mean comparison on a positive grid: column geometric means sum\n"
        "to at most the geometric mean of the row sums.");

    m.def(
        "proof_trace",
        [](const std::vector<std::vector<double>>& rows, std::size_t k, std::size_t l) {
            ProofTrace trace = proof_trace(matrix_from_rows(rows), k, l);
            py::dict out;
            out["submatrix_count"] = trace.submatrix_count;
            out["lhs"] = trace.lhs;
            out["product_bound"] = trace.product_bound;
            out["holder_left"] = trace.holder_left;
            out["rhs"] = trace.rhs;
            out["max_decomposition_residual"] = trace.max_decomposition_residual;
            out["max_log_decomposition_residual"] = trace.max_log_decomposition_residual;
            out["min_pairwise_margin"] = trace.min_pairwise_margin;
            out["chain_holds"] = trace.chain_holds;
            return out;
        },
        py::arg("matrix"), py::arg("k"), py::arg("l"),
        "Verify every step of the derivation chain on one positive instance.");

    m.def(
        "subset_mixed_mean",
        [](const std::vector<double>& x, std::size_t k) {
            auto result = oracle::subset_mixed_mean(x, k);
            py::dict out;
            out["lhs"] = result.lhs;
            out["rhs"] = result.rhs;
            out["holds"] = result.holds;
            return out;
        },
        py::arg("x"), py::arg("k"),
        "Vector form of the inequality over all k-subsets of positive x (2k > len(x)).");

    m.def(
        "random_scan",
        [](std::uint64_t trials, std::uint64_t seed, std::size_t min_dim, std::size_t max_dim,
           const std::string& distribution, double zero_fraction, bool out_of_range) {
            ScanOptions options;
            options.trials = trials;
            options.seed = seed;
            options.min_dim = min_dim;
            options.max_dim = max_dim;
            options.distribution = distribution_from_name(distribution);
            options.zero_fraction = zero_fraction;
            options.out_of_range = out_of_range;
            ScanSummary summary = random_scan(options);
            py::dict out;
            out["in_range_trials"] = summary.in_range_trials;
            out["holds"] = summary.holds;
            out["equality"] = summary.equality;
            out["violated"] = summary.violated;
            out["min_relative_margin"] = summary.min_relative_margin;
            out["out_of_range_trials"] = summary.out_of_range_trials;
            out["out_of_range_violations"] = summary.out_of_range_violations;
            out["out_of_range_min_margin"] = summary.out_of_range_min_margin;
            return out;
        },
        py::kw_only(), py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("min_dim") = 2,
        py::arg("max_dim") = 5, py::arg("distribution") = "uniform",
        py::arg("zero_fraction") = 0.1, py::arg("out_of_range") = true,
        "Randomized sweep: in-range instances must hold; the out-of-range phase\n"
        "hunts for the violations the range condition prevents.");

    m.def(
        "parse_matrix",
        [](const std::string& text, const std::string& format) {
            MatrixFormat f = format == "json" ? MatrixFormat::Json : MatrixFormat::Csv;
            return rows_from_matrix(parse_matrix(text, f));
        },
        py::arg("text"), py::arg("format") = "csv",
        "Parse a CSV or {\"rows\": [[...]]} JSON matrix with correct rounding.");

    m.def(
        "serialize_matrix",
        [](const std::vector<std::vector<double>>& rows, const std::string& format) {
            MatrixFormat f = format == "json" ? MatrixFormat::Json : MatrixFormat::Csv;
            return serialize_matrix(matrix_from_rows(rows), f);
        },
        py::arg("matrix"), py::arg("format") = "csv",
        "Serialize a matrix so that parsing it back is lossless.");
}
