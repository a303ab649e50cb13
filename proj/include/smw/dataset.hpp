#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "smw/numeric.hpp"

namespace smw {

/// Time-ordered process data: sensor matrix X (one row per sample) plus the
/// property vector y. Row order is time order. Immutable after construction;
/// the preprocessing operations below return fresh datasets.
struct Dataset {
    std::string name;
    Matrix X;
    Vector y;
    double sample_interval_minutes = 0.0; // informational only
    std::vector<std::string> column_names; // X columns
    std::string y_name = "y";
};

/// Checks the Dataset invariants (matching row counts, >= 2 samples, finite
/// values) and throws ContractViolation on failure.
void validate_dataset(const Dataset& d);

/// Loads the canonical CSV format: UTF-8, comma separated, one header row of
/// unique names, '.' decimal point, no quoting. The named column becomes y;
/// every other column becomes an X column in file order.
Dataset load_csv(const std::filesystem::path& path, const std::string& y_column);

/// Writes X columns (header order) followed by the y column. Floats are
/// serialized with the shortest representation that round-trips bit-exactly.
void write_csv(const Dataset& d, const std::filesystem::path& path);

/// Re-pairs y[t] with the sensor row taken y_lag samples earlier, dropping
/// the unpairable ends; output length is n - y_lag.
Dataset lag_align(const Dataset& d, std::size_t y_lag);

/// Breaks runs of exactly repeated y values by adding cumulative offsets
/// epsilon, 2*epsilon, ... so that no two consecutive y values are equal.
Dataset jitter_duplicate_y(const Dataset& d, double epsilon);

struct SplitSpec {
    double validation_fraction = 0.0; // in (0, 1)
};

/// Time-ordered prefix split: validation gets the first
/// ceil(fraction * n) samples, the remainder gets the rest. No shuffling.
std::pair<Dataset, Dataset> split_prefix(const Dataset& d, const SplitSpec& spec);

/// Shortest round-trip decimal form of a double ("nan"/"inf" for specials).
std::string format_double(double v);

} // namespace smw
