// dswkit: profiles, error comparisons and validation runs for the
// moving-interface linear KdV model.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dswkit/dswkit.hpp"

namespace fs = std::filesystem;
using namespace dswkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every option is taken as a string and validated here, so config files and
// flags go through one parser.
struct Opts {
  std::map<std::string, std::string> v;
  bool has(const std::string& k) const { return v.count(k) && !v.at(k).empty(); }
  std::string str(const std::string& k) const { return v.at(k); }
  double num(const std::string& k) const { return parse_number(k, v.at(k)); }
  std::size_t count(const std::string& k) const {
    const double d = num(k);
    if (d < 0 || d != std::floor(d)) throw ConfigError("'" + k + "' expects a non-negative integer");
    return static_cast<std::size_t>(d);
  }
};

void add(CLI::App* sub, Opts& o, const std::string& key, const std::string& def,
         const std::string& help) {
  o.v[key] = def;
  sub->add_option("--" + key, o.v[key], help)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->default_str(def);
}

ModelParams model_from(const Opts& o) { return ModelParams::make(o.num("a"), o.num("c")); }

void ensure_dir(const std::string& d) {
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw ConfigError("cannot create output directory '" + d + "': " + ec.message());
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw ConfigError("n_points must be at least 2");
  if (!(hi > lo)) throw ConfigError("x_max must exceed x_min");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

int cmd_profile(const Opts& o) {
  const std::vector<double> ts = parse_number_list("t", o.str("t"));
  if (ts.empty()) throw UsageError("profile: t needs at least one time");
  const ModelParams m = model_from(o);
  const Frame frame = parse_frame(o.str("frame"));
  const std::string overlay = o.str("overlay");
  if (overlay != "none" && overlay != "stationary") {
    throw ConfigError("overlay must be 'none' or 'stationary'");
  }
  if (overlay == "stationary") require_oscillatory(m);
  const std::vector<double> xs = linspace(o.num("x_min"), o.num("x_max"), o.count("n_points"));
  ProfileOptions po;
  po.rel_tol = o.num("rel_tol");
  po.threads = static_cast<unsigned>(o.count("threads"));
  if (o.has("tau_offset")) po.tau_offset = o.num("tau_offset");
  const std::string dir = o.str("out_dir");
  ensure_dir(dir);

  int status = kExitOk;
  for (double t : ts) {
    if (!(t >= 0.0)) throw DomainError("t must be non-negative");
    // Map the requested frame to the traveling frame point by point; the
    // map is affine in x at fixed t so the grid stays monotone.
    std::vector<double> xq(xs.size());
    double tq = t;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const SpaceTime p = frame_map({xs[i], t}, frame, Frame::Traveling, m);
      xq[i] = p.x;
      tq = p.t;
    }
    const double scale = frame == Frame::Shifted ? 1.0 / m.a : 1.0;
    const auto samples = evaluate_profile(xq, tq, m, po);

    const std::string stem = dir + "/profile_a" + format_short(m.a) + "_c" + format_short(m.c) +
                             "_t" + format_short(t);
    CsvWriter csv(stem + ".csv", {"x", "value", "error_estimate", "status"});
    PlotSeries u{"U", {}, {}, false, "#1f4e9c"};
    PlotSeries st{"stationary", {}, {}, true, "#000000"};
    std::size_t failed = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& s = samples[i];
      const double v = s.value * scale;
      csv.row({format_number(xs[i]), format_number(v), format_number(s.error_estimate * scale),
               s.ok ? std::string("ok") : "error: " + s.message});
      if (!s.ok) {
        ++failed;
        continue;
      }
      u.x.push_back(xs[i]);
      u.y.push_back(v);
      if (overlay == "stationary") {
        st.x.push_back(xs[i]);
        st.y.push_back(stationary(xq[i], m) * scale);
      }
    }
    PlotSpec plot;
    plot.title = "t=" + format_short(t) + " a=" + format_short(m.a) + " c=" + format_short(m.c);
    plot.y_label = frame == Frame::Shifted ? "U" : "q";
    plot.series.push_back(u);
    if (overlay == "stationary") plot.series.push_back(st);
    write_svg(stem + ".svg", plot);
    std::cout << stem << ".csv  points=" << xs.size() << " failed=" << failed << '\n';
    if (failed * 100 > xs.size()) {
      std::cerr << "profile t=" << t << ": " << failed << " of " << xs.size()
                << " points failed\n";
      status = kExitCheck;
    }
  }
  return status;
}

int cmd_compare(const Opts& o) {
  const std::vector<double> as = parse_number_list("a", o.str("a"));
  if (as.empty()) throw UsageError("compare: a needs at least one value");
  const double t = o.num("t");
  GridSpec grid = default_kdv_grid();
  grid.x_min = -o.num("domain");
  grid.x_max = o.num("domain");
  grid.n = o.count("grid_n");
  grid.validate();
  ErrorCurveOptions eo;
  eo.window_lo = o.num("window_lo");
  eo.window_hi = o.num("window_hi");
  eo.points = o.count("n_points");
  eo.smoothing_width = o.num("smoothing_width");
  eo.rel_tol = o.num("rel_tol");
  const std::string dir = o.str("out_dir");
  ensure_dir(dir);

  int status = kExitOk;
  std::printf("%-10s %-14s %-14s %s\n", "a", "max_e_model", "max_e_lkdv", "dominated");
  for (double a : as) {
    try {
      const ErrorCurves ec = error_curves(a, t, grid, eo);
      const std::string stem = dir + "/compare_a" + format_short(a) + "_t" + format_short(t);
      CsvWriter csv(stem + ".csv", {"x", "e_model", "e_lkdv"});
      for (std::size_t i = 0; i < ec.x.size(); ++i) csv.row({ec.x[i], ec.e_model[i], ec.e_lkdv[i]});
      PlotSpec plot;
      plot.title = "a=" + format_short(a) + " t=" + format_short(t);
      plot.y_label = "error / a";
      plot.series.push_back({"E_model", ec.x, ec.e_model, false, "#1f4e9c"});
      plot.series.push_back({"E_LKdV", ec.x, ec.e_lkdv, true, "#b03a2e"});
      write_svg(stem + ".svg", plot);
      std::printf("%-10g %-14.6e %-14.6e %s\n", a, ec.max_model(), ec.max_lkdv(),
                  ec.max_model() < ec.max_lkdv() ? "yes" : "no");
    } catch (const Error& e) {
      std::printf("%-10g %-14s %-14s %s\n", a, "-", "-", "failed");
      std::cerr << "compare a=" << a << ": " << e.what() << '\n';
      status = kExitCheck;
    }
  }
  return status;
}

int cmd_validate(const Opts& o) {
  std::vector<checks::NamedCheck> chosen;
  const auto& reg = checks::registry();
  if (o.has("only")) {
    for (const std::string& w : parse_word_list(o.str("only"))) {
      auto it = std::find_if(reg.begin(), reg.end(),
                             [&](const auto& c) { return w == c.id || w == c.name; });
      if (it == reg.end()) throw UsageError("validate: unknown check '" + w + "'");
      chosen.push_back(*it);
    }
  } else {
    chosen = reg;
  }
  std::FILE* out = stdout;
  std::FILE* file = nullptr;
  if (o.has("report")) {
    file = std::fopen(o.str("report").c_str(), "wb");
    if (!file) throw ConfigError("cannot write report '" + o.str("report") + "'");
    out = file;
  }
  std::fprintf(out, "check,status,measured,tolerance\n");
  bool all = true;
  for (const auto& c : chosen) {
    const CheckResult r = checks::run(c);
    all = all && r.passed;
    std::fprintf(out, "%s,%s,%s,%s\n", c.name, r.passed ? "pass" : "fail",
                 format_number(r.measured).c_str(), format_number(r.tolerance).c_str());
    std::fflush(out);
    std::fprintf(stderr, "%s %s: %s (%.1f s)\n", c.id, c.name, r.detail.c_str(), r.seconds);
  }
  if (file) std::fclose(file);
  return all ? kExitOk : kExitCheck;
}

// `key=value` tokens after the subcommand become `--key value`; a config
// file named by `config=` or `--config` is spliced in front of the flags so
// that flags win.
std::vector<std::string> normalize(const std::vector<std::string>& raw, CLI::App& app) {
  std::vector<std::string> args;
  std::string config;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string& a = raw[i];
    const auto eq = a.find('=');
    std::string key, val;
    bool pair = false;
    if (a.rfind("--", 0) != 0 && eq != std::string::npos && eq > 0) {
      key = a.substr(0, eq);
      val = a.substr(eq + 1);
      pair = true;
    } else if (a.rfind("--", 0) == 0 && eq != std::string::npos) {
      key = a.substr(2, eq - 2);
      val = a.substr(eq + 1);
      pair = true;
    } else if (a == "--config" && i + 1 < raw.size()) {
      config = raw[++i];
      continue;
    }
    if (pair && key == "config") {
      config = val;
      continue;
    }
    if (pair) {
      args.push_back("--" + key);
      args.push_back(val);
    } else {
      args.push_back(a);
    }
  }
  if (config.empty()) return args;
  if (args.empty()) throw UsageError("config given without a command");
  CLI::App* sub = nullptr;
  for (CLI::App* s : app.get_subcommands({})) {
    if (s->get_name() == args.front()) sub = s;
  }
  if (!sub) throw UsageError("unknown command '" + args.front() + "'");
  std::vector<std::string> merged{args.front()};
  for (const ConfigEntry& e : load_config(config)) {
    if (!sub->get_option_no_throw("--" + e.key)) {
      throw ConfigError(config + ":" + std::to_string(e.line) + ": unknown key '" + e.key +
                        "' for " + sub->get_name());
    }
    merged.push_back("--" + e.key);
    merged.push_back(e.value);
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moving-interface linear KdV model: profiles, comparisons, validation", "dswkit"};
  app.require_subcommand(1);

  Opts po, co, vo;
  auto* prof = app.add_subcommand("profile", "Solution profiles with CSV and SVG output");
  add(prof, po, "a", "1", "left state");
  add(prof, po, "c", "4", "interface speed");
  add(prof, po, "t", "", "comma-separated times (required)");
  add(prof, po, "frame", "shifted", "lab | traveling | shifted");
  add(prof, po, "x_min", "-15", "left end of the x grid");
  add(prof, po, "x_max", "10", "right end of the x grid");
  add(prof, po, "n_points", "512", "number of grid points");
  add(prof, po, "rel_tol", "1e-10", "quadrature relative tolerance");
  add(prof, po, "tau_offset", "", "evaluate with tau = t + offset");
  add(prof, po, "overlay", "none", "none | stationary");
  add(prof, po, "threads", "0", "worker threads (0: all cores)");
  add(prof, po, "out_dir", "out", "output directory");

  auto* cmp = app.add_subcommand("compare", "E_model versus E_LKdV against the KdV oracle");
  add(cmp, co, "a", "", "comma-separated left states (required)");
  add(cmp, co, "t", "0.1", "lab-frame time");
  add(cmp, co, "window_lo", "-10", "left end of the comparison window");
  add(cmp, co, "window_hi", "10", "right end of the comparison window");
  add(cmp, co, "n_points", "401", "points in the window");
  add(cmp, co, "domain", "80", "half-width of the periodic KdV domain");
  add(cmp, co, "grid_n", "16384", "KdV grid size (certified against twice this)");
  add(cmp, co, "smoothing_width", "0.05", "width of the smoothed initial step");
  add(cmp, co, "rel_tol", "1e-10", "quadrature relative tolerance");
  add(cmp, co, "out_dir", "out", "output directory");

  auto* val = app.add_subcommand("validate", "Run the validation checks");
  add(val, vo, "only", "", "comma-separated check names or ids");
  add(val, vo, "report", "", "write the report here instead of stdout");

  std::vector<std::string> raw(argv + 1, argv + argc);
  try {
    std::vector<std::string> args = normalize(raw, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (prof->parsed()) return cmd_profile(po);
    if (cmp->parsed()) {
      if (!co.has("a")) throw UsageError("compare: a is required");
      return cmd_compare(co);
    }
    return cmd_validate(vo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheck;
  }
}
