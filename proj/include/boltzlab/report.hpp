#pragma once
// Report and trace emission: key = value report files per inequality check,
// the CSV trace with a fixed header, and a JSON sidecar carrying the full
// configuration, grid metadata and a deterministic run id. All numeric
// formatting is byte-stable across reruns; wall-clock timestamps live only in
// the sidecar.

#include <string>
#include <vector>

#include "boltzlab/config.hpp"
#include "boltzlab/dynamics.hpp"
#include "boltzlab/verify.hpp"

namespace boltzlab {

// 16-hex-digit FNV-1a of the canonical config text and seed
std::string run_id(const RunConfig& cfg);

std::string format_report(const IneqReport& r);
void write_report(const IneqReport& r, const std::string& path);

std::string format_trace_csv(const EnergyTrace& t);
void write_trace_csv(const EnergyTrace& t, const std::string& path);

// sidecar with config echo, grid metadata, run id and timestamp
void write_sidecar(const RunConfig& cfg, const std::string& path,
                   const std::vector<double>& picard_residuals = {});

}  // namespace boltzlab
