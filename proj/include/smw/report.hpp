#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smw/harness.hpp"

namespace smw {

/// Records CSV: columns t,truth,prediction,lag,window_end,model,flags.
/// Flags are ';'-joined inside their cell.
std::string records_csv(const RunReport& report);

/// Sweep summary CSV: columns model,<param_name>,rmsep,n,flagged where
/// param_name is "window" or "delay". Failed cells carry rmsep = nan.
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param_name);

/// Structured summary: a JSON array with one object per run, fields
/// {dataset, model, mode, delay, window, rmsep, n, flagged} (plus "error"
/// for cells that could not run).
std::string summary_json(const std::vector<SweepRow>& rows);
std::string summary_json(const std::vector<RunReport>& reports);

/// Writes content to path via a temporary file and a rename, so readers
/// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace smw
