#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smw/dataset.hpp"
#include "smw/ensemble.hpp"
#include "smw/rfpls.hpp"

namespace smw {

enum class ModelKind { mmw, pls, rpls, rf, rfpls };

std::string to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(const std::string& name);

/// One soft-sensor configuration: the model family, its calibration window
/// length, and family-specific settings. The base seed feeds the per-window
/// derivation seed ^ window_end for the forest families.
struct ModelSpec {
    ModelKind kind = ModelKind::mmw;
    std::size_t window = 4;
    double lambda = 0.1;               // rpls forgetting factor
    ForestConfig forest;               // rf and rfpls
    std::size_t inner_pls_window = 0;  // rfpls; 0 = window - 1
    std::size_t n_pseudo = 1;          // rfpls pseudo-sample copies
    std::uint64_t seed = 1;

    std::string id() const { return to_string(kind); }
};

/// How the calibration window advances relative to the predicted samples.
/// Continuous: the window always ends exactly `delay` samples before the
/// prediction target and advances every step. Delayed: the window is refit
/// at anchors spaced `delay` apart and each anchor predicts the next
/// 1..delay samples. The two coincide at delay = 1.
struct UpdatePolicy {
    enum class Mode { continuous, delayed };
    Mode mode = Mode::continuous;
    std::size_t delay = 1;
};

std::string to_string(UpdatePolicy::Mode mode);

struct PredictionRecord {
    std::size_t t = 0;           // predicted sample index
    double truth = 0.0;
    double prediction = 0.0;
    std::size_t lag = 0;         // t - window_end, >= 1
    std::size_t window_end = 0;  // last labeled sample in the calibration window
    std::string model;
    std::vector<std::string> flags;
};

struct RunReport {
    std::vector<PredictionRecord> records;
    double rmsep = 0.0;
    std::size_t n_predictions = 0;
    std::size_t n_flagged = 0;
    // configuration echo
    std::string dataset;
    std::string model;
    std::string mode;
    std::size_t delay = 1;
    std::size_t window = 0;
    std::uint64_t seed = 0;
};

/// Read access to a time-ordered series. The indirection exists so tests can
/// interpose an access-logging double and audit that the walk never touches
/// a property value ahead of its own prediction.
class SeriesSource {
public:
    virtual ~SeriesSource() = default;
    virtual std::string name() const = 0;
    virtual std::size_t size() const = 0;
    virtual std::size_t n_vars() const = 0;
    virtual Vector x_row(std::size_t t) const = 0;
    virtual double y(std::size_t t) const = 0;
};

class DatasetSource : public SeriesSource {
public:
    explicit DatasetSource(const Dataset& d) : d_(d) {}
    std::string name() const override { return d_.name; }
    std::size_t size() const override { return d_.X.rows(); }
    std::size_t n_vars() const override { return d_.X.cols(); }
    Vector x_row(std::size_t t) const override {
        auto row = d_.X.row(t);
        return Vector(row.begin(), row.end());
    }
    double y(std::size_t t) const override { return d_.y[t]; }

private:
    const Dataset& d_;
};

/// Mean of the window's property values (the negative-control predictor).
double predict_mmw(std::span<const double> window_y);

/// sqrt(mean squared prediction error) over the records.
double rmsep_of(const std::vector<PredictionRecord>& records);

/// Called as each record is emitted, immediately after its single truth
/// lookup; lets tests interleave with the source-access log.
using RecordObserver = std::function<void(const PredictionRecord&)>;

/// Walks the series in time order, refitting on each calibration window and
/// emitting one record per predicted sample. The truth of a sample is read
/// exactly once, after its prediction is computed. A window on which the
/// model cannot be fit (degenerate sensors) falls back to the window-mean
/// prediction and flags its records; the run continues.
RunReport run_series(const SeriesSource& src, const ModelSpec& spec, const UpdatePolicy& policy,
                     const RecordObserver& observer = {});
RunReport run_series(const Dataset& d, const ModelSpec& spec, const UpdatePolicy& policy,
                     const RecordObserver& observer = {});

/// One sweep cell. `param` holds the swept value (window size or delay).
/// Cells whose configuration cannot run at all carry ok = false and the
/// failure message instead of aborting the sweep.
struct SweepRow {
    std::string model;
    std::size_t param = 0;
    double rmsep = 0.0;
    std::size_t n = 0;
    std::size_t flagged = 0;
    bool ok = true;
    std::string error;
    RunReport report;
};

std::vector<SweepRow> sweep_window_size(const Dataset& d, const std::vector<ModelSpec>& kinds,
                                        const std::vector<std::size_t>& sizes, const UpdatePolicy& policy);

std::vector<SweepRow> sweep_delay(const Dataset& d, const std::vector<ModelSpec>& kinds,
                                  const std::vector<std::size_t>& delays, UpdatePolicy::Mode mode);

} // namespace smw
