#include "smw/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& raw, std::size_t row, const std::string& column) {
    const std::string cell = trim(raw);
    if (cell.empty())
        throw LoadError("blank cell at data row " + std::to_string(row) + ", column '" + column + "'");
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw LoadError("non-numeric cell '" + cell + "' at data row " + std::to_string(row) + ", column '" +
                        column + "'");
    if (!std::isfinite(value))
        throw LoadError("non-finite value at data row " + std::to_string(row) + ", column '" + column + "'");
    return value;
}

} // namespace

void validate_dataset(const Dataset& d) {
    require(d.X.rows() == d.y.size(), "Dataset: X has " + std::to_string(d.X.rows()) + " rows but y has " +
                                          std::to_string(d.y.size()) + " values");
    require(d.X.rows() >= 2, "Dataset: needs at least 2 samples, got " + std::to_string(d.X.rows()));
    require(all_finite(d.y), "Dataset: non-finite y value");
    require(d.column_names.empty() || d.column_names.size() == d.X.cols(),
            "Dataset: column_names length mismatch");
}

Dataset load_csv(const std::filesystem::path& path, const std::string& y_column) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw LoadError("'" + path.string() + "' is empty");
    std::vector<std::string> header = split_line(line);
    for (std::string& h : header) h = trim(h);
    if (header.empty()) throw LoadError("'" + path.string() + "' has an empty header");
    {
        std::set<std::string> seen;
        for (const std::string& h : header)
            if (!seen.insert(h).second) throw LoadError("duplicate header name '" + h + "' in '" + path.string() + "'");
    }

    std::size_t y_index = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == y_column) y_index = j;
    if (y_index == header.size()) {
        // allow a plain 0-based column index as the selector
        std::size_t idx = 0;
        auto [ptr, ec] = std::from_chars(y_column.data(), y_column.data() + y_column.size(), idx);
        if (ec == std::errc{} && ptr == y_column.data() + y_column.size() && idx < header.size())
            y_index = idx;
    }
    if (y_index == header.size())
        throw LoadError("y column '" + y_column + "' not found in '" + path.string() + "' (header: " + line + ")");

    Dataset d;
    d.name = path.stem().string();
    d.y_name = header[y_index];
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != y_index) d.column_names.push_back(header[j]);

    std::vector<double> flat;
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++n_rows;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw LoadError("ragged row " + std::to_string(n_rows) + " in '" + path.string() + "': expected " +
                            std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const double v = parse_cell(cells[j], n_rows, header[j]);
            if (j == y_index)
                d.y.push_back(v);
            else
                flat.push_back(v);
        }
    }
    if (n_rows < 2) throw LoadError("'" + path.string() + "' has " + std::to_string(n_rows) + " data rows; need >= 2");
    d.X = Matrix(n_rows, header.size() - 1, std::move(flat));
    validate_dataset(d);
    return d;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
    validate_dataset(d);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write '" + path.string() + "'");
    for (std::size_t j = 0; j < d.X.cols(); ++j) {
        const std::string name = j < d.column_names.size() ? d.column_names[j] : "v" + std::to_string(j + 1);
        out << name << ',';
    }
    out << d.y_name << '\n';
    for (std::size_t i = 0; i < d.X.rows(); ++i) {
        for (std::size_t j = 0; j < d.X.cols(); ++j) out << format_double(d.X(i, j)) << ',';
        out << format_double(d.y[i]) << '\n';
    }
    if (!out) throw LoadError("write failed for '" + path.string() + "'");
}

Dataset lag_align(const Dataset& d, std::size_t y_lag) {
    const std::size_t n = d.X.rows();
    require(y_lag < n, "lag_align: y_lag " + std::to_string(y_lag) + " >= sample count " + std::to_string(n));
    if (y_lag == 0) return d;
    Dataset out = d;
    out.X = row_block(d.X, 0, n - y_lag);
    out.y.assign(d.y.begin() + static_cast<std::ptrdiff_t>(y_lag), d.y.end());
    validate_dataset(out);
    return out;
}

Dataset jitter_duplicate_y(const Dataset& d, double epsilon) {
    require(epsilon > 0.0, "jitter_duplicate_y: epsilon must be positive");
    Dataset out = d;
    for (std::size_t t = 1; t < out.y.size(); ++t) {
        // single forward pass; a value repeating its original predecessor (a
        // duplicate run) or colliding with the adjusted predecessor gets the
        // next cumulative offset, so a run of k duplicates becomes a
        // staircase of epsilon steps
        if (d.y[t] == d.y[t - 1] || d.y[t] == out.y[t - 1]) out.y[t] = out.y[t - 1] + epsilon;
    }
    return out;
}

std::pair<Dataset, Dataset> split_prefix(const Dataset& d, const SplitSpec& spec) {
    require(spec.validation_fraction > 0.0 && spec.validation_fraction < 1.0,
            "split_prefix: fraction must lie in (0, 1)");
    const std::size_t n = d.X.rows();
    const auto n_val = static_cast<std::size_t>(std::ceil(spec.validation_fraction * static_cast<double>(n)));
    require(n_val >= 2 && n - n_val >= 2, "split_prefix: fraction " + format_double(spec.validation_fraction) +
                                              " leaves a side with fewer than 2 of " + std::to_string(n) + " samples");
    Dataset validation = d;
    validation.name = d.name + "-validation";
    validation.X = row_block(d.X, 0, n_val);
    validation.y.assign(d.y.begin(), d.y.begin() + static_cast<std::ptrdiff_t>(n_val));
    Dataset remainder = d;
    remainder.name = d.name + "-remainder";
    remainder.X = row_block(d.X, n_val, n - n_val);
    remainder.y.assign(d.y.begin() + static_cast<std::ptrdiff_t>(n_val), d.y.end());
    return {std::move(validation), std::move(remainder)};
}

} // namespace smw
