#include "crowd/output.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "crowd/integrator.hpp"

namespace crowd {

void RunMetadata::set(std::string key, std::string value) {
  for (auto &[k, v] : entries) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries.emplace_back(std::move(key), std::move(value));
}

std::string RunMetadata::text() const {
  std::string out;
  for (const auto &[k, v] : entries) out += k + " = " + v + "\n";
  return out;
}

RunMetadata RunMetadata::describe(const RunSpec &spec, std::string_view command) {
  RunMetadata meta;
  std::istringstream config(emit_config(spec));
  for (std::string line; std::getline(config, line);) {
    const auto eq = line.find(" = ");
    meta.set(line.substr(0, eq), line.substr(eq + 3));
  }
  meta.set("command", std::string(command));
  meta.set("scheme", std::string(kSchemeName));
  meta.set("generator", std::string(kGeneratorName));
  meta.set("version", std::string(kArtifactVersion));
  return meta;
}

std::string format_run_csv(const DiagnosticsSeries &series, double d_floor) {
  std::string out(kRunCsvHeader);
  out += '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto &s = series.samples[k];
    out += format_real(s.t) + ',' + format_real(s.S) + ',' + format_real(s.D) + ',' +
           format_real(s.s_s) + ',' + format_real(s.s_a) + ',' + format_real(series.dSdt_numeric[k]) + ',';
    if (s.D >= d_floor) out += format_real(s.s_a / s.D);
    out += '\n';
  }
  return out;
}

std::string format_ensemble_csv(const EnsembleStats &stats) {
  std::string out(kEnsembleCsvHeader);
  out += '\n';
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    out += format_real(stats.times[k]) + ',' + format_real(stats.D_minus_s_a.min[k]) + ',' +
           format_real(stats.D_minus_s_a.mean[k]) + ',' + format_real(stats.D_minus_s_a.max[k]) + ',' +
           format_real(stats.S.mean[k]) + ',' + format_real(stats.S.min[k]) + ',' +
           format_real(stats.S.max[k]) + ',' + format_real(stats.limit_spread[k]) + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit_run_csv(const DiagnosticsSeries &series, double d_floor, const std::filesystem::path &path) {
  write_text(path, format_run_csv(series, d_floor));
}

void emit_ensemble_csv(const EnsembleStats &stats, const std::filesystem::path &path) {
  write_text(path, format_ensemble_csv(stats));
}

namespace {

constexpr const char *kPreamble =
    "set datafile separator ','\n"
    "set key top right\n"
    "set xlabel 't'\n"
    "set terminal pngcairo size 800,560\n";

}  // namespace

std::vector<std::pair<std::string, std::string>> run_plot_scripts() {
  const std::string pre = kPreamble;
  return {
      {"fig1_dSdt.gp",
       pre + "set output 'fig1_dSdt.png'\nset ylabel 'dS/dt'\n"
             "plot 'run.csv' every ::1 using 1:4 with lines title 's_s', \\\n"
             "     '' every ::1 using 1:6 with lines dashtype 2 title 'numerical dS/dt', \\\n"
             "     '' every ::1 using 1:($3-$5) with lines dashtype 3 title 'D - s_a'\n"},
      {"fig2_dissipation.gp",
       pre + "set output 'fig2_dissipation.png'\nset ylabel 'D'\n"
             "plot 'run.csv' every ::1 using 1:3 with lines title 'D'\n"},
      {"fig3_ratio.gp",
       pre + "set output 'fig3_ratio.png'\nset ylabel 's_a / D'\n"
             "plot 'run.csv' every ::1 using 1:7 with lines title 's_a/D (D above floor)'\n"},
      {"fig4_entropy.gp",
       pre + "set output 'fig4_entropy.png'\nset ylabel 'S'\n"
             "plot 'run.csv' every ::1 using 1:2 with lines title 'S'\n"},
  };
}

std::vector<std::pair<std::string, std::string>> ensemble_plot_scripts() {
  const std::string pre = kPreamble;
  return {
      {"fig5_balance_envelope.gp",
       pre + "set output 'fig5_balance_envelope.png'\nset ylabel 'D - s_a'\n"
             "plot 'ensemble.csv' every ::1 using 1:2 with lines title 'min over runs', \\\n"
             "     '' every ::1 using 1:4 with lines title 'max over runs'\n"},
      {"fig6_mean_entropy.gp",
       pre + "set output 'fig6_mean_entropy.png'\nset ylabel 'mean S'\n"
             "plot 'ensemble.csv' every ::1 using 1:5 with lines title 'mean S', \\\n"
             "     '' every ::1 using 1:8 with lines dashtype 2 title 'max_k |S_1 - S_k|'\n"},
  };
}

}  // namespace crowd
