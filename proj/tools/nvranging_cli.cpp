// nvranging command-line front end. Talks to the simulator only through the
// C interface in nvranging.h.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvranging/nvranging.h"

namespace {

constexpr int kExitIoError = 2;

struct ConfigDeleter {
  void operator()(nvr_config* c) const { nvr_config_free(c); }
};
using ConfigPtr = std::unique_ptr<nvr_config, ConfigDeleter>;

struct StringDeleter {
  void operator()(char* s) const { nvr_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  bool noise_free = false;
};

class CommandError {
 public:
  explicit CommandError(int code) : code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(nvr_status status) {
  if (status != NVR_OK) {
    std::cerr << "error: " << nvr_last_error() << "\n";
    throw CommandError(static_cast<int>(status));
  }
}

ConfigPtr load_config(const CommonOptions& opts) {
  nvr_config* raw = nullptr;
  if (opts.config_path.empty()) check(nvr_config_new_default(&raw));
  else check(nvr_config_load_file(opts.config_path.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (opts.seed) check(nvr_config_set_seed(cfg.get(), *opts.seed));
  return cfg;
}

struct OutputPaths {
  std::string data;
  std::string allan;
};

OutputPaths output_paths(const nvr_config* cfg, const CommonOptions& opts) {
  char* path = nullptr;
  char* allan = nullptr;
  check(nvr_config_output_paths(cfg, &path, &allan));
  OwnedString p(path), a(allan);
  return OutputPaths{opts.out_path.empty() ? std::string(p.get()) : opts.out_path, a.get()};
}

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw CommandError(kExitIoError);
  }
  out << text;
}

void add_common(CLI::App* sub, CommonOptions& opts, bool with_noise_free) {
  sub->add_option("--config", opts.config_path, "JSON instrument configuration")->check(CLI::ExistingFile);
  sub->add_option("--seed", opts.seed, "RNG seed (overrides config)");
  sub->add_option("--out", opts.out_path, "output file (default: config output.path, else stdout)");
  if (with_noise_free) sub->add_flag("--noise-free", opts.noise_free, "exact means instead of shot-noise draws");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-ensemble quantum-enhanced RF ranging simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nvr_version()));

  CommonOptions opts;

  auto* odmr = app.add_subcommand("odmr", "ODMR spectrum sweep (CSV)");
  double f_min = 2.80e9, f_max = 2.94e9;
  std::size_t odmr_points = 701;
  add_common(odmr, opts, false);
  odmr->add_option("--f_min", f_min, "sweep start, Hz")->capture_default_str();
  odmr->add_option("--f_max", f_max, "sweep stop, Hz")->capture_default_str();
  odmr->add_option("--points", odmr_points, "number of frequencies")->capture_default_str();

  auto* rabi = app.add_subcommand("rabi", "Rabi oscillation under the constructive drive (CSV)");
  double t_max = 2e-6;
  std::size_t rabi_points = 401;
  add_common(rabi, opts, false);
  rabi->add_option("--t_max", t_max, "last RF duration, s")->capture_default_str();
  rabi->add_option("--points", rabi_points, "number of durations")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "normalized ranging signal versus target distance (CSV)");
  int scan_n = 0;
  double l_center = std::numeric_limits<double>::quiet_NaN();
  double l_span = std::numeric_limits<double>::quiet_NaN();
  std::size_t scan_points = 2001;
  std::uint64_t repeats = 0;
  add_common(scan, opts, true);
  scan->add_option("--N", scan_n, "N-pi pulse number (default: config)");
  scan->add_option("--L_center", l_center, "grid center, m (default: dark fringe near the target)");
  scan->add_option("--L_span", l_span, "grid width, m (default: one wavelength)");
  scan->add_option("--points", scan_points, "grid points")->capture_default_str();
  scan->add_option("--repeats", repeats, "sequence repetitions per point (default: config)");

  auto* metrics = app.add_subcommand("metrics", "resolution, response and sensitivity report (JSON)");
  std::vector<int> n_list{1, 2, 3, 4, 5, 6};
  add_common(metrics, opts, false);
  metrics->add_option("--N_list", n_list, "pulse numbers to evaluate")->delimiter(',')->capture_default_str();

  auto* track = app.add_subcommand("track", "time trace at the steepest fringe point (CSV + Allan JSON)");
  double duration = 100.0, sample_interval = 0.01;
  std::string allan_out;
  add_common(track, opts, true);
  track->add_option("--duration", duration, "trace length, s")->capture_default_str();
  track->add_option("--sample_interval", sample_interval, "sample spacing, s")->capture_default_str();
  track->add_option("--allan-out", allan_out, "Allan table path (default: config output.allan_path)");

  auto* ambiguity = app.add_subcommand("ambiguity", "dual-frequency integer ambiguity round trip (JSON)");
  double l_true = 0.0, phase_noise = 0.0;
  add_common(ambiguity, opts, false);
  ambiguity->add_option("--L_true", l_true, "true target distance, m")->required();
  ambiguity->add_option("--phase_noise", phase_noise, "Gaussian phase noise per carrier, rad")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return NVR_ERR_USAGE;
  }

  try {
    ConfigPtr cfg = load_config(opts);
    const OutputPaths paths = output_paths(cfg.get(), opts);
    char* text = nullptr;

    if (odmr->parsed()) {
      check(nvr_cmd_odmr(cfg.get(), f_min, f_max, odmr_points, &text));
    } else if (rabi->parsed()) {
      check(nvr_cmd_rabi(cfg.get(), t_max, rabi_points, &text));
    } else if (scan->parsed()) {
      check(nvr_cmd_scan(cfg.get(), scan_n, l_center, l_span, scan_points, repeats, opts.noise_free ? 1 : 0, &text));
    } else if (metrics->parsed()) {
      check(nvr_cmd_metrics(cfg.get(), n_list.data(), n_list.size(), &text));
    } else if (ambiguity->parsed()) {
      check(nvr_cmd_ambiguity(cfg.get(), l_true, phase_noise, &text));
    } else if (track->parsed()) {
      char* allan = nullptr;
      check(nvr_cmd_track(cfg.get(), duration, sample_interval, opts.noise_free ? 1 : 0, &text, &allan));
      OwnedString allan_text(allan);
      std::string allan_path = !allan_out.empty() ? allan_out : paths.allan;
      if (allan_path.empty() && !paths.data.empty() && paths.data != "-") {
        allan_path = std::filesystem::path(paths.data).replace_extension(".allan.json").string();
      }
      if (allan_path.empty()) {
        std::cerr << "note: Allan table not written (no --out or --allan-out given)\n";
      } else {
        emit(allan_path, allan_text.get());
      }
    }

    OwnedString owned(text);
    emit(paths.data, owned.get());
  } catch (const CommandError& e) {
    return e.code();
  }
  return 0;
}
