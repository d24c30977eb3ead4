#pragma once

#include <span>
#include <string>

#include "inspde/approximants.hpp"
#include "inspde/experiments.hpp"
#include "inspde/model.hpp"
#include "inspde/trajectory.hpp"

namespace inspde {

/// Shortest round-trip decimal rendering (to_chars), deterministic across
/// runs and worker counts.
std::string format_double(double v);

/// Experiment report serializations. Every emitted file carries the config
/// hash; writers refuse to overwrite a file carrying a different hash unless
/// forced. Layouts:
///   CSV : `# config_hash=<hex>` comment line, header row
///         index_kind,index_value,error_value,stderr,argmax_t,paths,seed,config_hash
///   JSON: metadata block plus a rows array mirroring the CSV
///   plot: gnuplot-style `x y yerr` columns with `#` comment header
std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
std::string report_plot(const ExperimentReport& report);

/// Trajectory CSV: `t,mode_1..mode_N,is_post_jump`; impulse right limits get
/// an extra row flagged 1 immediately after the left-limit row.
std::string trajectory_csv(const Trajectory& traj, const std::string& hash);

/// Gap table `index,lambda_or_t,gap`: per family index, one resolvent-gap row
/// at the given lambda followed by pointwise semigroup-gap rows over the
/// t-grid, all measured on the direction v.
std::string gap_table_csv(const GeneratorFamily& fam, std::span<const double> indices,
                          double lambda, std::span<const double> t_grid, const HVector& v,
                          const std::string& hash);

std::string probe_json(const ProbeReport& report, const std::string& hash);

/// Writes content to path, creating directories; refuses to overwrite a file
/// whose embedded config_hash differs, unless force is set.
void write_guarded(const std::string& path, const std::string& content,
                   const std::string& hash, bool force);

} // namespace inspde
