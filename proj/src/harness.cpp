#include "smw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "smw/rpls.hpp"

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

// Per-anchor model state. MMW needs nothing beyond the window itself; the
// recursive state persists across anchors.
struct FittedWindow {
    bool fallback = false;           // degenerate window: predict the window mean
    double mmw = 0.0;                // always available (fallback + mmw kind)
    std::optional<PlsModel> pls;
    std::optional<Forest> forest;
};

class SeriesWalker {
public:
    SeriesWalker(const SeriesSource& src, const ModelSpec& spec, const UpdatePolicy& policy,
                 const RecordObserver& observer)
        : src_(src), spec_(spec), policy_(policy), observer_(observer) {}

    RunReport run() {
        const std::size_t n = src_.size();
        const std::size_t w = spec_.window;
        const std::size_t d = policy_.delay;
        require(n >= 2, "run_series: series must hold at least 2 samples");
        require(w >= 2, "run_series: window must be >= 2");
        require(d >= 1, "run_series: delay must be >= 1");
        if (spec_.kind == ModelKind::rfpls) {
            inner_window_ = spec_.inner_pls_window == 0 ? w - 1 : spec_.inner_pls_window;
            require(inner_window_ >= 2 && inner_window_ < w,
                    "run_series: rfpls needs 2 <= inner window < window; window " + std::to_string(w) +
                        " gives inner " + std::to_string(inner_window_));
        }
        const std::size_t first_target =
            policy_.mode == UpdatePolicy::Mode::continuous ? w - 1 + d : w;
        require(first_target <= n - 1, "run_series: series of " + std::to_string(n) +
                                           " samples is too short for window " + std::to_string(w) + " and delay " +
                                           std::to_string(d) + " (first prediction would be sample " +
                                           std::to_string(first_target) + ")");

        RunReport report;
        report.dataset = src_.name();
        report.model = spec_.id();
        report.mode = to_string(policy_.mode);
        report.delay = d;
        report.window = w;
        report.seed = spec_.seed;

        if (policy_.mode == UpdatePolicy::Mode::continuous) {
            for (std::size_t e = w - 1; e + d <= n - 1; ++e) step(e, {e + d}, report);
        } else {
            for (std::size_t e = w - 1; e + 1 <= n - 1; e += d) {
                std::vector<std::size_t> targets;
                for (std::size_t t = e + 1; t <= std::min(e + d, n - 1); ++t) targets.push_back(t);
                step(e, targets, report);
            }
        }

        report.rmsep = rmsep_of(report.records);
        report.n_predictions = report.records.size();
        for (const PredictionRecord& r : report.records) report.n_flagged += r.flags.empty() ? 0 : 1;
        return report;
    }

private:
    void step(std::size_t window_end, const std::vector<std::size_t>& targets, RunReport& report) {
        const std::size_t w = spec_.window;
        const std::size_t start = window_end + 1 - w;
        Matrix Xw(w, src_.n_vars());
        Vector yw(w);
        for (std::size_t i = 0; i < w; ++i) {
            const Vector row = src_.x_row(start + i);
            for (std::size_t j = 0; j < row.size(); ++j) Xw(i, j) = row[j];
            yw[i] = src_.y(start + i);
        }

        const FittedWindow fitted = refit(Xw, yw, window_end);
        for (std::size_t t : targets) {
            PredictionRecord rec;
            rec.t = t;
            rec.lag = t - window_end;
            rec.window_end = window_end;
            rec.model = spec_.id();

            if (fitted.fallback) {
                rec.prediction = fitted.mmw;
                rec.flags.push_back("mmw_fallback");
            } else {
                rec.prediction = predict_one(fitted, Xw, yw, t, rec);
            }
            rec.truth = src_.y(t); // single truth read, after the prediction
            report.records.push_back(rec);
            if (observer_) observer_(report.records.back());
        }
    }

    FittedWindow refit(const Matrix& Xw, const Vector& yw, std::size_t window_end) {
        FittedWindow fitted;
        fitted.mmw = predict_mmw(yw);
        try {
            switch (spec_.kind) {
                case ModelKind::mmw:
                case ModelKind::rfpls:
                    break; // mmw is already done; rfpls refits per target
                case ModelKind::pls: {
                    const std::size_t k = Xw.rows() >= 3 ? select_latent_loo(Xw, yw).chosen_latent : 1;
                    fitted.pls = fit_pls(Xw, yw, k);
                    break;
                }
                case ModelKind::rpls: {
                    rpls_ = rpls_ ? rpls_update(*rpls_, Xw, yw) : rpls_init(Xw, yw, spec_.lambda);
                    break;
                }
                case ModelKind::rf:
                    fitted.forest = fit_forest(Xw, yw, spec_.forest, spec_.seed ^ window_end);
                    break;
            }
        } catch (const DegenerateWindowError&) {
            fitted.fallback = true;
        }
        return fitted;
    }

    double predict_one(const FittedWindow& fitted, const Matrix& Xw, const Vector& yw, std::size_t t,
                       PredictionRecord& rec) {
        const Vector x = src_.x_row(t);
        switch (spec_.kind) {
            case ModelKind::mmw:
                return fitted.mmw;
            case ModelKind::pls:
                return fitted.pls->predict(x);
            case ModelKind::rpls:
                return rpls_predict(*rpls_, x);
            case ModelKind::rf:
                return predict_forest(*fitted.forest, x);
            case ModelKind::rfpls: {
                RfPlsConfig cfg;
                cfg.rf_window = spec_.window;
                cfg.inner_pls_window = inner_window_;
                cfg.n_pseudo = spec_.n_pseudo;
                cfg.forest = spec_.forest;
                cfg.seed = spec_.seed ^ rec.window_end;
                const RfPlsResult r = fit_predict_rfpls(Xw, yw, x, cfg);
                if (r.inner_fallback) rec.flags.push_back("inner_pls_fallback");
                return r.prediction;
            }
        }
        return fitted.mmw; // unreachable
    }

    const SeriesSource& src_;
    const ModelSpec& spec_;
    const UpdatePolicy& policy_;
    const RecordObserver& observer_;
    std::size_t inner_window_ = 0;
    std::optional<RplsState> rpls_;
};

ModelSpec with_window(ModelSpec spec, std::size_t w) {
    spec.window = w;
    return spec;
}

SweepRow run_cell(const Dataset& d, const ModelSpec& spec, const UpdatePolicy& policy, std::size_t param) {
    SweepRow row;
    row.model = spec.id();
    row.param = param;
    row.report.dataset = d.name;
    row.report.model = spec.id();
    row.report.mode = to_string(policy.mode);
    row.report.delay = policy.delay;
    row.report.window = spec.window;
    row.report.seed = spec.seed;
    try {
        row.report = run_series(d, spec, policy);
        row.rmsep = row.report.rmsep;
        row.n = row.report.n_predictions;
        row.flagged = row.report.n_flagged;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.rmsep = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

} // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::mmw: return "mmw";
        case ModelKind::pls: return "pls";
        case ModelKind::rpls: return "rpls";
        case ModelKind::rf: return "rf";
        case ModelKind::rfpls: return "rfpls";
    }
    return "?";
}

std::optional<ModelKind> parse_model_kind(const std::string& name) {
    if (name == "mmw") return ModelKind::mmw;
    if (name == "pls") return ModelKind::pls;
    if (name == "rpls") return ModelKind::rpls;
    if (name == "rf") return ModelKind::rf;
    if (name == "rfpls") return ModelKind::rfpls;
    return std::nullopt;
}

std::string to_string(UpdatePolicy::Mode mode) {
    return mode == UpdatePolicy::Mode::continuous ? "continuous" : "delayed";
}

double predict_mmw(std::span<const double> window_y) {
    if (window_y.empty()) throw ContractViolation("predict_mmw: empty window");
    return mean_of(window_y);
}

double rmsep_of(const std::vector<PredictionRecord>& records) {
    if (records.empty()) throw ContractViolation("rmsep: no records");
    double sq = 0.0;
    for (const PredictionRecord& r : records) {
        const double e = r.prediction - r.truth;
        sq += e * e;
    }
    return std::sqrt(sq / static_cast<double>(records.size()));
}

RunReport run_series(const SeriesSource& src, const ModelSpec& spec, const UpdatePolicy& policy,
                     const RecordObserver& observer) {
    SeriesWalker walker(src, spec, policy, observer);
    return walker.run();
}

RunReport run_series(const Dataset& d, const ModelSpec& spec, const UpdatePolicy& policy,
                     const RecordObserver& observer) {
    DatasetSource src(d);
    return run_series(src, spec, policy, observer);
}

std::vector<SweepRow> sweep_window_size(const Dataset& d, const std::vector<ModelSpec>& kinds,
                                        const std::vector<std::size_t>& sizes, const UpdatePolicy& policy) {
    std::vector<SweepRow> rows;
    for (const ModelSpec& spec : kinds)
        for (std::size_t w : sizes) rows.push_back(run_cell(d, with_window(spec, w), policy, w));
    return rows;
}

std::vector<SweepRow> sweep_delay(const Dataset& d, const std::vector<ModelSpec>& kinds,
                                  const std::vector<std::size_t>& delays, UpdatePolicy::Mode mode) {
    std::vector<SweepRow> rows;
    for (const ModelSpec& spec : kinds)
        for (std::size_t delay : delays) {
            UpdatePolicy policy{mode, delay};
            rows.push_back(run_cell(d, spec, policy, delay));
        }
    return rows;
}

} // namespace smw
