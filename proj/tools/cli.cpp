#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "jcrev/error.hpp"
#include "jcrev/scan.hpp"
#include "jcrev/series_io.hpp"

namespace jcrev::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ScanArgs {
  scan::ScanConfig config;
  std::string methods = "exact,xproj,series,analytic";
  std::string out;
  std::string format = "csv";
};

struct ReportArgs {
  std::string in;
  std::string out = "-";
  std::optional<double> alpha;
  std::string column = "exact";
  double threshold = 0.05;
};

struct PresetArgs {
  std::string name;
  std::string out_dir = ".";
  int workers = 1;
};

struct Preset {
  const char* name;
  double alpha;
  double tau_start;
  double tau_end;
  int steps;
};

// fig1's alpha is not given in its caption; the tau = 20 pi revival it shares
// with fig2 fixes alpha = 10.
constexpr Preset kPresets[] = {
    {"fig1", 10.0, 0.0, 200.0, 4001},
    {"fig2", 10.0, 57.0, 69.0, 2401},
    {"fig3a", 5.0, 0.0, 80.0, 1601},
    {"fig3b", 6.0, 0.0, 90.0, 1801},
};

constexpr const char* kPresetHelp =
    "Reproduce a figure: fig1 (alpha=10, tau in [0,200], 4001 steps; alpha inferred from the\n"
    "tau = 20 pi revival), fig2 (alpha=10, tau in [57,69] around 20 pi, 2401 steps),\n"
    "fig3a (alpha=5, tau in [0,80]), fig3b (alpha=6, tau in [0,90]). Every preset runs all\n"
    "four methods and writes <name>.csv, its manifest and <name>.report.json.";

std::string manifest_path(const std::string& artifact) { return artifact + ".manifest.json"; }

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

void write_manifest(const std::string& artifact, const std::vector<std::string>& args,
                    const scan::ConcurrenceSeries& series, double wall_seconds) {
  const json manifest = {{"command_line", join_args(args)},
                         {"version", JCREV_VERSION},
                         {"schema", io::kScanSchema},
                         {"artifact", fs::path(artifact).filename().string()},
                         {"config", io::config_to_json(series.meta.config)},
                         {"alpha", series.meta.alpha},
                         {"n_max", series.meta.n_max},
                         {"tail_mass", series.meta.tail_mass},
                         {"analytic_in_domain", series.meta.analytic_in_domain},
                         {"wall_time_seconds", wall_seconds}};
  write_file(manifest_path(artifact), manifest.dump(2) + "\n");
}

std::string render_series(const scan::ConcurrenceSeries& series, const std::string& format) {
  if (format == "json") return io::series_to_json(series).dump() + "\n";
  std::ostringstream os;
  io::write_csv(os, series);
  return os.str();
}

int scan_and_write(const scan::ScanConfig& config, const std::string& out_path,
                   const std::string& format, const std::vector<std::string>& args,
                   std::ostream& out, scan::ConcurrenceSeries* keep = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  auto series = scan::run_scan(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string body = render_series(series, format);
  if (out_path == "-") {
    out << body;
  } else {
    write_file(out_path, body);
    write_manifest(out_path, args, series, wall);
  }
  if (keep) *keep = std::move(series);
  return kOk;
}

std::optional<double> alpha_from_manifest(const std::string& csv_path) {
  std::ifstream is(manifest_path(csv_path));
  if (!is) return std::nullopt;
  try {
    const json m = json::parse(is);
    if (m.contains("alpha") && m["alpha"].is_number()) return m["alpha"].get<double>();
  } catch (const json::exception&) {
    throw FormatError("malformed manifest '" + manifest_path(csv_path) + "'");
  }
  return std::nullopt;
}

json build_report(scan::ConcurrenceSeries series, std::optional<double> alpha,
                  const std::string& column, double threshold) {
  if (!series.rows.empty()) {
    if (!alpha) throw std::invalid_argument("alpha unknown: pass --alpha or keep the scan manifest next to the CSV");
    series.meta.alpha = *alpha;
  } else {
    series.meta.alpha = alpha.value_or(std::numeric_limits<double>::quiet_NaN());
  }
  scan::PeakOptions options;
  options.column = scan::parse_method(column);
  options.threshold = threshold;
  return io::report_to_json(scan::detect_peaks(series, options));
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::ifstream is(a.in, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open '" + a.in + "'");
  auto series = io::read_csv(is);
  const auto alpha = a.alpha ? a.alpha : alpha_from_manifest(a.in);
  const json report = build_report(std::move(series), alpha, a.column, a.threshold);
  const std::string body = report.dump(2) + "\n";
  if (a.out == "-")
    out << body;
  else
    write_file(a.out, body);
  return kOk;
}

int cmd_preset(const PresetArgs& a, const std::vector<std::string>& args, std::ostream& out) {
  const Preset* preset = nullptr;
  for (const auto& p : kPresets)
    if (a.name == p.name) preset = &p;
  if (!preset) throw std::invalid_argument("unknown preset '" + a.name + "'");

  fs::create_directories(a.out_dir);
  scan::ScanConfig config;
  config.alpha = preset->alpha;
  config.tau_start = preset->tau_start;
  config.tau_end = preset->tau_end;
  config.steps = preset->steps;
  config.methods = scan::MethodSet::all();
  config.workers = a.workers;

  const std::string csv = (fs::path(a.out_dir) / (a.name + ".csv")).string();
  scan::ConcurrenceSeries series;
  scan_and_write(config, csv, "csv", args, out, &series);

  const json report = io::report_to_json(scan::detect_peaks(series));
  write_file((fs::path(a.out_dir) / (a.name + ".report.json")).string(), report.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-cavity Jaynes-Cummings entanglement revival simulator", "jcrev"};
  app.require_subcommand(1);
  app.set_version_flag("--version", JCREV_VERSION);

  ScanArgs scan_args;
  scan_args.config.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* scan_cmd = app.add_subcommand("scan", "Sweep tau and write the concurrence series");
  scan_cmd->add_option("--alpha", scan_args.config.alpha, "Coherent amplitude (real, >= 0)")->required();
  scan_cmd->add_option("--tau-start", scan_args.config.tau_start, "First tau (g t)")->capture_default_str();
  scan_cmd->add_option("--tau-end", scan_args.config.tau_end, "Last tau (g t)")->capture_default_str();
  scan_cmd->add_option("--steps", scan_args.config.steps, "Number of grid points")->capture_default_str();
  scan_cmd->add_option("--methods", scan_args.methods, "Comma list of exact,xproj,series,analytic")
      ->capture_default_str();
  scan_cmd->add_option("--tail-tol", scan_args.config.tail_tolerance, "Discarded Poisson tail mass")
      ->capture_default_str();
  scan_cmd->add_option("--k-window", scan_args.config.k_window, "Revival-index half window")
      ->capture_default_str();
  scan_cmd->add_option("--out", scan_args.out, "Output path, or - for standard output")->required();
  scan_cmd->add_option("--format", scan_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scan_cmd->add_option("--workers", scan_args.config.workers, "Worker threads");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Detect revivals in a scan CSV and write a JSON report");
  report_cmd->add_option("--in", report_args.in, "Scan CSV")->required();
  report_cmd->add_option("--out", report_args.out, "Report path, or - for standard output")
      ->capture_default_str();
  report_cmd->add_option("--alpha", report_args.alpha, "Override alpha (default: from the scan manifest)");
  report_cmd->add_option("--column", report_args.column, "Concurrence column to analyse")
      ->check(CLI::IsMember({"exact", "xproj", "series", "analytic"}))
      ->capture_default_str();
  report_cmd->add_option("--threshold", report_args.threshold, "Peak threshold")->capture_default_str();

  PresetArgs preset_args;
  preset_args.workers = scan_args.config.workers;
  auto* preset_cmd = app.add_subcommand("preset", kPresetHelp);
  preset_cmd->add_option("name", preset_args.name, "fig1 | fig2 | fig3a | fig3b")->required();
  preset_cmd->add_option("--out-dir", preset_args.out_dir, "Output directory")->capture_default_str();
  preset_cmd->add_option("--workers", preset_args.workers, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << JCREV_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "jcrev: " << e.what() << '\n';
    return kConfigError;
  }

  std::vector<std::string> command_line{"jcrev"};
  command_line.insert(command_line.end(), args.begin(), args.end());

  try {
    if (scan_cmd->parsed()) {
      scan_args.config.methods = scan::MethodSet::parse(scan_args.methods);
      scan_args.config.validate();
      return scan_and_write(scan_args.config, scan_args.out, scan_args.format, command_line, out);
    }
    if (report_cmd->parsed()) return cmd_report(report_args, out);
    if (preset_cmd->parsed()) return cmd_preset(preset_args, command_line, out);
  } catch (const NumericalError& e) {
    err << "jcrev: numerical failure " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const FormatError& e) {
    err << "jcrev: malformed input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "jcrev: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "jcrev: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace jcrev::cli
