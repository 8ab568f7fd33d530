#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "crowd/config.hpp"
#include "crowd/diagnostics.hpp"
#include "crowd/ensemble.hpp"

namespace crowd {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

inline constexpr std::string_view kRunCsvHeader = "t,S,D,s_s,s_a,dSdt_num,sa_over_D";
inline constexpr std::string_view kEnsembleCsvHeader =
    "t,Dsa_min,Dsa_mean,Dsa_max,S_mean,S_min,S_max,limit_spread";

/// Ordered key=value pairs: config values plus scheme, generator, version, timing.
struct RunMetadata {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(std::string key, std::string value);
  std::string text() const;

  static RunMetadata describe(const RunSpec &spec, std::string_view command);
};

std::string format_run_csv(const DiagnosticsSeries &series, double d_floor);
std::string format_ensemble_csv(const EnsembleStats &stats);

/// Writes `text` to `path`, throwing std::runtime_error when the file cannot be written.
void write_text(const std::filesystem::path &path, const std::string &text);

void emit_run_csv(const DiagnosticsSeries &series, double d_floor, const std::filesystem::path &path);
void emit_ensemble_csv(const EnsembleStats &stats, const std::filesystem::path &path);

/// Gnuplot scripts reading run.csv: dS/dt channels, D, s_a/D, S.
std::vector<std::pair<std::string, std::string>> run_plot_scripts();
/// Gnuplot scripts reading ensemble.csv: D - s_a envelope, mean S.
std::vector<std::pair<std::string, std::string>> ensemble_plot_scripts();

}  // namespace crowd
