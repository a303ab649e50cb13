#include "smw/report.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace smw {

namespace {

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ';';
        out += flags[i];
    }
    return out;
}

nlohmann::ordered_json report_object(const RunReport& r) {
    nlohmann::ordered_json obj;
    obj["dataset"] = r.dataset;
    obj["model"] = r.model;
    obj["mode"] = r.mode;
    obj["delay"] = r.delay;
    obj["window"] = r.window;
    obj["rmsep"] = r.rmsep;
    obj["n"] = r.n_predictions;
    obj["flagged"] = r.n_flagged;
    return obj;
}

} // namespace

std::string records_csv(const RunReport& report) {
    std::ostringstream out;
    out << "t,truth,prediction,lag,window_end,model,flags\n";
    for (const PredictionRecord& r : report.records) {
        out << r.t << ',' << format_double(r.truth) << ',' << format_double(r.prediction) << ',' << r.lag << ','
            << r.window_end << ',' << r.model << ',' << join_flags(r.flags) << '\n';
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param_name) {
    std::ostringstream out;
    out << "model," << param_name << ",rmsep,n,flagged\n";
    for (const SweepRow& row : rows)
        out << row.model << ',' << row.param << ',' << format_double(row.rmsep) << ',' << row.n << ',' << row.flagged
            << '\n';
    return out.str();
}

std::string summary_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json obj = report_object(row.report);
        obj["model"] = row.model; // keep the id even when the run never started
        if (!row.ok) {
            obj["rmsep"] = nullptr;
            obj["error"] = row.error;
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string summary_json(const std::vector<RunReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const RunReport& r : reports) arr.push_back(report_object(r));
    return arr.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw LoadError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw LoadError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

} // namespace smw
