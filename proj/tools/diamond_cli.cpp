// Command-line front end. Talks to the library through the C API only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diamond/diamond.h"

namespace {

using nlohmann::json;

enum Exit {
  kOk = 0,
  kContainmentFailed = 1,
  kBadInput = 2,
  kVariantMismatch = 3,
  kSolverFailure = 4,
  kIoFailure = 5,
  kInternal = 6,
};

struct Failure {
  int code;
  std::string message;
};

int exit_code(dmd_status s) {
  switch (s) {
    case DMD_OK: return kOk;
    case DMD_ERR_INVALID:
    case DMD_ERR_DOMAIN:
    case DMD_ERR_PARSE: return kBadInput;
    case DMD_ERR_UNSUPPORTED_VARIANT: return kVariantMismatch;
    case DMD_ERR_SOLVER: return kSolverFailure;
    case DMD_ERR_IO: return kIoFailure;
    case DMD_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

void check(dmd_status s) {
  if (s != DMD_OK) throw Failure{exit_code(s), dmd_last_error()};
}

struct ChannelDel {
  void operator()(dmd_channel* c) const { dmd_channel_free(c); }
};
struct RegionDel {
  void operator()(dmd_region* r) const { dmd_region_free(r); }
};
struct ReportDel {
  void operator()(dmd_report* r) const { dmd_report_free(r); }
};
using Channel = std::unique_ptr<dmd_channel, ChannelDel>;
using Region = std::unique_ptr<dmd_region, RegionDel>;
using Report = std::unique_ptr<dmd_report, ReportDel>;

struct Options {
  std::string channel_path;
  std::string preset;
  std::vector<std::string> protocols;
  std::string against = "outer";
  std::string k_grid;
  std::string convention;
  int ardf_grid = 11;
  int mdf_theta = 101;
  unsigned threads = 0;
  double tolerance = 1e-6;
  std::string out;
  std::string format = "csv";
  bool quiet = false;
  bool verbose = false;
};

class Logger {
 public:
  explicit Logger(const Options& o) : quiet_(o.quiet), verbose_(o.verbose) {}
  void info(const std::string& m) const {
    if (!quiet_) std::cerr << m << '\n';
  }
  void debug(const std::string& m) const {
    if (verbose_ && !quiet_) std::cerr << "[debug] " << m << '\n';
  }

 private:
  bool quiet_, verbose_;
};

Channel load_channel(const Options& o) {
  dmd_channel* raw = nullptr;
  if (!o.channel_path.empty() == !o.preset.empty())
    throw Failure{kBadInput, "give exactly one of --channel or --preset"};
  if (!o.preset.empty())
    check(dmd_channel_from_preset(o.preset.c_str(), &raw));
  else
    check(dmd_channel_from_file(o.channel_path.c_str(), &raw));
  Channel ch(raw);
  if (!o.convention.empty()) {
    dmd_convention c;
    check(dmd_parse_convention(o.convention.c_str(), &c));
    check(dmd_channel_set_convention(ch.get(), c));
  }
  return ch;
}

std::vector<double> k_grid(const Options& o) {
  double* ks = nullptr;
  size_t n = 0;
  if (o.k_grid.empty())
    check(dmd_default_k_grid(&ks, &n));
  else
    check(dmd_parse_k_grid(o.k_grid.c_str(), &ks, &n));
  std::vector<double> v(ks, ks + n);
  dmd_doubles_free(ks);
  return v;
}

dmd_options lib_options(const Options& o) {
  dmd_options opts;
  dmd_options_default(&opts);
  opts.ardf_grid = o.ardf_grid;
  opts.mdf_theta_points = o.mdf_theta;
  opts.threads = o.threads;
  return opts;
}

dmd_protocol protocol(const std::string& name) {
  dmd_protocol p;
  check(dmd_parse_protocol(name.c_str(), &p));
  return p;
}

Region compute(const dmd_channel* ch, dmd_protocol p,
               const std::vector<double>& ks, const Options& o,
               const Logger& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const dmd_options opts = lib_options(o);
  dmd_region* raw = nullptr;
  check(dmd_region_compute(ch, p, ks.data(), ks.size(), &opts, &raw));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  log.debug(std::string(dmd_protocol_name(p)) + ": " +
            std::to_string(dmd_region_size(raw)) + " samples in " +
            std::to_string(secs) + " s");
  return Region(raw);
}

json k_json(double k) {
  if (std::isinf(k)) return "inf";
  return k;
}

json manifest(const std::string& command, const dmd_channel* ch,
              const std::vector<double>& ks, const Options& o, double wall) {
  char* text = nullptr;
  check(dmd_channel_to_json(ch, &text));
  json channel = json::parse(text);
  dmd_string_free(text);
  json grid = json::array();
  for (double k : ks) grid.push_back(k_json(k));
  return {{"command", command},
          {"channel", channel},
          {"convention", channel["convention"]},
          {"k_grid", grid},
          {"grid_resolutions",
           {{"ardf_grid", o.ardf_grid}, {"mdf_theta_points", o.mdf_theta}}},
          {"tool_version", dmd_version()},
          {"wall_time_s", wall}};
}

dmd_format format_of(const Options& o) {
  if (o.format == "csv") return DMD_FORMAT_CSV;
  if (o.format == "json") return DMD_FORMAT_JSON;
  throw Failure{kBadInput, "--format must be csv or json"};
}

void emit_manifest(const Options& o, const json& m) {
  if (o.out.empty()) return;
  const std::string path = o.out + ".manifest.json";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Failure{kIoFailure, "cannot write '" + path + "'"};
  const std::string text = m.dump(2) + "\n";
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  std::fclose(f);
  if (!ok) throw Failure{kIoFailure, "write to '" + path + "' failed"};
}

void emit_region(const dmd_region* r, const Options& o, const json& m) {
  const dmd_format fmt = format_of(o);
  const std::string mtext = m.dump();
  if (o.out.empty()) {
    char* text = nullptr;
    check(dmd_region_to_string(r, fmt, mtext.c_str(), &text));
    std::cout << text;
    dmd_string_free(text);
  } else {
    check(dmd_region_write(r, o.out.c_str(), fmt, mtext.c_str()));
  }
  emit_manifest(o, m);
}

std::string joined(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int run_presets() {
  for (size_t i = 0; i < dmd_preset_count(); ++i)
    std::cout << dmd_preset_name(i) << '\t' << dmd_preset_description(i) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-way diamond relay channel: outer bounds and protocol rate regions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dmd_version()));

  Options o;
  auto add_common = [&](CLI::App* sub) {
    auto* src = sub->add_option_group("channel source");
    src->add_option("--channel", o.channel_path, "Channel-config JSON file");
    src->add_option("--preset", o.preset, "Built-in channel (see `presets`)");
    src->require_option(1);
    sub->add_option("--k-grid", o.k_grid,
                    "Ratios R_b/R_a: start:stop:count[,log] or a comma list");
    sub->add_option("--convention", o.convention, "as-printed or complex")
        ->check(CLI::IsMember({"as-printed", "as_printed", "complex"}));
    sub->add_option("--ardf-grid", o.ardf_grid, "AR-DF values per split parameter")
        ->check(CLI::Range(2, 101));
    sub->add_option("--mdf-theta", o.mdf_theta, "MDF broadcast power-split grid size")
        ->check(CLI::Range(2, 100001));
    sub->add_option("--threads", o.threads, "Sweep threads (0 = all cores)");
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--quiet", o.quiet, "Only errors on stderr");
    sub->add_flag("--verbose", o.verbose, "Timing details on stderr");
  };
  const std::vector<std::string> names{"mdf", "cf-cmac", "cf-bc", "comabc", "ar-df"};

  auto* outer = app.add_subcommand("outer", "Cut-set outer bound of the channel");
  add_common(outer);

  auto* region = app.add_subcommand("region", "Achievable region of one protocol");
  add_common(region);
  region->add_option("--protocol", o.protocols, "Protocol")
      ->required()
      ->expected(1)
      ->check(CLI::IsMember(names));

  auto* compare = app.add_subcommand("compare", "Check that a protocol region lies inside another region");
  add_common(compare);
  compare->add_option("--protocol", o.protocols, "Inner protocol")
      ->required()
      ->expected(1)
      ->check(CLI::IsMember(names));
  std::vector<std::string> against_names = names;
  against_names.insert(against_names.begin(), "outer");
  compare->add_option("--against", o.against, "outer or a protocol")
      ->check(CLI::IsMember(against_names));
  compare->add_option("--tolerance", o.tolerance, "Allowed excess of the inner support")
      ->check(CLI::NonNegativeNumber);

  auto* hull = app.add_subcommand("hull", "Time-sharing hull of several protocols");
  add_common(hull);
  hull->add_option("--protocol", o.protocols, "Protocol (repeatable; default cf-cmac and mdf)")
      ->check(CLI::IsMember(names));

  auto* presets = app.add_subcommand("presets", "List the built-in channels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  const Logger log(o);
  const auto t0 = std::chrono::steady_clock::now();
  auto wall = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const std::string command = joined(argc, argv);

  try {
    if (presets->parsed()) return run_presets();

    Channel ch = load_channel(o);
    const std::vector<double> ks = k_grid(o);

    if (outer->parsed() || region->parsed()) {
      const dmd_protocol p = outer->parsed() ? DMD_PROTOCOL_OUTER : protocol(o.protocols.at(0));
      Region r = compute(ch.get(), p, ks, o, log);
      emit_region(r.get(), o, manifest(command, ch.get(), ks, o, wall()));
      log.info(std::string(dmd_protocol_name(p)) + ": " +
               std::to_string(dmd_region_size(r.get())) + " samples" +
               (o.out.empty() ? "" : " written to " + o.out));
      return kOk;
    }

    if (hull->parsed()) {
      std::vector<std::string> list = o.protocols;
      if (list.empty()) list = {"cf-cmac", "mdf"};
      std::vector<Region> parts;
      std::vector<const dmd_region*> raw;
      for (const auto& name : list) {
        parts.push_back(compute(ch.get(), protocol(name), ks, o, log));
        raw.push_back(parts.back().get());
      }
      dmd_region* h = nullptr;
      check(dmd_region_hull(raw.data(), raw.size(), &h));
      Region hr(h);
      json m = manifest(command, ch.get(), ks, o, wall());
      m["constituents"] = list;
      emit_region(hr.get(), o, m);
      log.info("hull of " + std::to_string(list.size()) + " regions: " +
               std::to_string(dmd_region_size(hr.get())) + " samples");
      return kOk;
    }

    if (compare->parsed()) {
      Region inner = compute(ch.get(), protocol(o.protocols.at(0)), ks, o, log);
      Region outer_r = compute(ch.get(), protocol(o.against), ks, o, log);
      dmd_report* rep_raw = nullptr;
      check(dmd_compare(outer_r.get(), inner.get(), o.tolerance, &rep_raw));
      Report rep(rep_raw);
      json m = manifest(command, ch.get(), ks, o, wall());
      m["tolerance"] = o.tolerance;
      const dmd_format fmt = format_of(o);
      const std::string mtext = m.dump();
      if (o.out.empty()) {
        char* text = nullptr;
        check(dmd_report_to_string(rep.get(), fmt, mtext.c_str(), &text));
        std::cout << text;
        dmd_string_free(text);
      } else {
        check(dmd_report_write(rep.get(), o.out.c_str(), fmt, mtext.c_str()));
      }
      emit_manifest(o, m);
      const bool ok = dmd_report_passed(rep.get()) != 0;
      log.info(std::string(ok ? "PASS" : "FAIL") + ": " + o.protocols.at(0) +
               " inside " + o.against + " at " +
               std::to_string(dmd_report_size(rep.get())) + " ratios");
      return ok ? kOk : kContainmentFailed;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kBadInput;
}
