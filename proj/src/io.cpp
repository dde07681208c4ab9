#include "mixmean/io.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>
#include <mpfr.h>

#include "mixmean/error.hpp"

namespace mixmean {

namespace {

struct RawMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::string> tokens; // row-major
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

RawMatrix tokenize_csv(std::string_view text) {
    RawMatrix raw;
    std::size_t line_no = 0;
    while (!text.empty()) {
        std::string_view line = text;
        if (auto nl = text.find('\n'); nl != std::string_view::npos) {
            line = text.substr(0, nl);
            text.remove_prefix(nl + 1);
        } else {
            text = {};
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            if (text.empty()) break; // single trailing newline
            throw Error(ErrorCode::MalformedInput, "blank line in CSV input");
        }
        ++line_no;

        std::size_t cells = 0;
        std::string_view rest = line;
        while (true) {
            std::string_view cell = rest;
            auto comma = rest.find(',');
            if (comma != std::string_view::npos) {
                cell = rest.substr(0, comma);
                rest.remove_prefix(comma + 1);
            }
            cell = trim(cell);
            if (cell.empty())
                throw Error(ErrorCode::MalformedInput,
                            "empty cell in CSV row " + std::to_string(line_no));
            raw.tokens.emplace_back(cell);
            ++cells;
            if (comma == std::string_view::npos) break;
        }

        if (raw.rows == 0) {
            raw.cols = cells;
        } else if (cells != raw.cols) {
            throw Error(ErrorCode::RaggedRows,
                        "CSV row " + std::to_string(line_no) + " has " + std::to_string(cells) +
                            " cells, expected " + std::to_string(raw.cols));
        }
        ++raw.rows;
    }
    if (raw.rows == 0)
        throw Error(ErrorCode::EmptyMatrix, "no rows in CSV input");
    return raw;
}

// SAX consumer that keeps the raw text of every number so exact parsing can
// reconstruct decimal literals without a double round-trip.
struct JsonMatrixSax {
    RawMatrix raw;
    int depth = 0;            // 0 outside, 1 in object, 2 in rows array, 3 in a row
    bool seen_rows_key = false;
    bool done_rows = false;
    std::size_t current_row_cells = 0;

    void expect_cell() {
        if (depth != 3)
            throw Error(ErrorCode::MalformedInput, "JSON matrix values must be inside rows");
    }

    void push(std::string token) {
        expect_cell();
        raw.tokens.push_back(std::move(token));
        ++current_row_cells;
    }

    bool null() { throw Error(ErrorCode::MalformedInput, "null is not a matrix entry"); }
    bool boolean(bool) { throw Error(ErrorCode::MalformedInput, "boolean is not a matrix entry"); }
    bool number_integer(std::int64_t v) {
        push(std::to_string(v));
        return true;
    }
    bool number_unsigned(std::uint64_t v) {
        push(std::to_string(v));
        return true;
    }
    bool number_float(double, const std::string& raw_token) {
        push(raw_token);
        return true;
    }
    bool string(std::string& v) {
        // Exact inputs may carry fractions as strings ("1/3").
        push(v);
        return true;
    }
    bool binary(nlohmann::json::binary_t&) {
        throw Error(ErrorCode::MalformedInput, "binary is not a matrix entry");
    }
    bool start_object(std::size_t) {
        if (depth != 0)
            throw Error(ErrorCode::MalformedInput, "unexpected object in JSON matrix");
        depth = 1;
        return true;
    }
    bool key(std::string& k) {
        if (depth != 1 || k != "rows" || seen_rows_key)
            throw Error(ErrorCode::MalformedInput, "JSON matrix must have a single key 'rows'");
        seen_rows_key = true;
        return true;
    }
    bool end_object() { return true; }
    bool start_array(std::size_t) {
        if (depth == 1 && seen_rows_key && !done_rows) {
            depth = 2;
        } else if (depth == 2) {
            depth = 3;
            current_row_cells = 0;
        } else {
            throw Error(ErrorCode::MalformedInput, "unexpected array in JSON matrix");
        }
        return true;
    }
    bool end_array() {
        if (depth == 3) {
            if (raw.rows == 0) {
                raw.cols = current_row_cells;
            } else if (current_row_cells != raw.cols) {
                throw Error(ErrorCode::RaggedRows, "JSON rows have differing lengths");
            }
            if (current_row_cells == 0)
                throw Error(ErrorCode::EmptyMatrix, "JSON row is empty");
            ++raw.rows;
            depth = 2;
        } else if (depth == 2) {
            done_rows = true;
            depth = 1;
        }
        return true;
    }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedInput,
                    "JSON parse error at byte " + std::to_string(position) + ": " + ex.what());
    }
};

RawMatrix tokenize_json(std::string_view text) {
    JsonMatrixSax sax;
    nlohmann::json::sax_parse(text, &sax);
    if (!sax.seen_rows_key || sax.raw.rows == 0)
        throw Error(ErrorCode::EmptyMatrix, "JSON matrix has no rows");
    return std::move(sax.raw);
}

RawMatrix tokenize(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::Csv ? tokenize_csv(text) : tokenize_json(text);
}

Rational checked_rational(const std::string& token) {
    Rational q = rational_from_text(token);
    if (q < 0)
        throw Error(ErrorCode::NegativeEntry, "negative entry: '" + token + "'");
    return q;
}

std::string double_to_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

NonnegMatrix parse_matrix(std::string_view text, MatrixFormat format) {
    RawMatrix raw = tokenize(text, format);
    std::vector<double> entries;
    entries.reserve(raw.tokens.size());
    for (const std::string& token : raw.tokens)
        entries.push_back(rational_to_double(checked_rational(token)));
    return NonnegMatrix(raw.rows, raw.cols, std::move(entries));
}

RationalMatrix parse_matrix_exact(std::string_view text, MatrixFormat format) {
    RawMatrix raw = tokenize(text, format);
    std::vector<Rational> entries;
    entries.reserve(raw.tokens.size());
    for (const std::string& token : raw.tokens)
        entries.push_back(checked_rational(token));
    return RationalMatrix(raw.rows, raw.cols, std::move(entries));
}

std::string serialize_matrix(const NonnegMatrix& B, MatrixFormat format) {
    if (format == MatrixFormat::Csv) {
        std::string out;
        for (std::size_t i = 0; i < B.rows(); ++i) {
            for (std::size_t j = 0; j < B.cols(); ++j) {
                if (j > 0) out += ',';
                out += double_to_text(B.at(i, j));
            }
            out += '\n';
        }
        return out;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < B.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < B.cols(); ++j)
            row.push_back(B.at(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", std::move(rows)}}.dump();
}

std::string serialize_matrix(const RationalMatrix& B, MatrixFormat format) {
    if (format == MatrixFormat::Csv) {
        std::string out;
        for (std::size_t i = 0; i < B.rows(); ++i) {
            for (std::size_t j = 0; j < B.cols(); ++j) {
                if (j > 0) out += ',';
                out += rational_to_text(B.at(i, j));
            }
            out += '\n';
        }
        return out;
    }
    // JSON numbers cannot carry "p/q", so exact entries are emitted as
    // strings; the exact parser accepts both forms.
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < B.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < B.cols(); ++j)
            row.push_back(rational_to_text(B.at(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", std::move(rows)}}.dump();
}

} // namespace mixmean
