#include "zakgross/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zakgross/errors.hpp"
#include "zakgross/gkp_code.hpp"
#include "zakgross/render.hpp"
#include "zakgross/serialize.hpp"
#include "zakgross/state_spec.hpp"
#include "zakgross/zak_gross.hpp"

namespace zakgross::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kCommands = {"grid",     "negativity", "thermal-sweep",
                                            "syndrome", "marginals",  "dv"};

struct RunConfig {
  std::string command;
  int d = 3;
  json state = {{"kind", "vacuum"}};
  std::string preset;
  int index = 0;
  int nu = 256;
  int nv = 256;
  int ns = 64;
  int nt = 64;
  double tol = 1e-10;
  int max_radius = 2000;
  std::set<std::string> formats = {"csv", "json"};
  std::string out = ".";
  int workers = 0;
  std::optional<int> figure;
  bool corollary = false;
  std::vector<int> dims = {1, 2, 3, 13};
  std::vector<double> temperatures;
  std::string path = "auto";
  bool vacuum_scale = false;
};

std::vector<double> default_temperatures() {
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) out.push_back(0.1 * k);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::set<std::string> parse_formats(const json& value) {
  std::vector<std::string> items;
  if (value.is_string()) {
    std::stringstream ss(value.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) items.push_back(item);
    }
  } else {
    items = value.get<std::vector<std::string>>();
  }
  std::set<std::string> out;
  for (const auto& f : items) {
    if (f != "csv" && f != "json" && f != "png") throw ConfigError("unknown format '" + f + "'");
    out.insert(f);
  }
  return out;
}

// Named states accepted by --preset. Qudit presets belong to the dv command.
json preset_state(const std::string& name, int index) {
  if (name == "vacuum") return {{"kind", "vacuum"}};
  if (name == "thermal") return {{"kind", "thermal"}, {"beta", 1.0}};
  if (name == "approx_gkp") {
    return {{"kind", "approx_gkp"}, {"j", index}, {"sigma", 0.51}, {"kappa", 0.4}, {"peak_cutoff", 1}};
  }
  if (name == "codeword") {
    return {{"kind", "ideal_codeword"}, {"logical", {{"preset", "computational"}, {"index", index}}}};
  }
  if (name == "magic_codeword") {
    return {{"kind", "ideal_codeword"}, {"logical", {{"preset", "magic"}}}};
  }
  throw ConfigError("unknown state preset '" + name + "'");
}

void apply_layer(RunConfig& cfg, const json& layer) {
  static const std::set<std::string> keys = {
      "d",          "state",   "preset",    "index", "nu",        "nv",
      "ns",         "nt",      "tol",       "max_radius", "format", "out",
      "workers",    "figure",  "corollary", "dims",  "temperatures", "path"};
  if (!layer.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : layer.items()) {
    if (!keys.count(item.key())) {
      throw ConfigError("unknown configuration key '" + item.key() + "'");
    }
  }
  try {
    if (layer.contains("d")) cfg.d = layer.at("d").get<int>();
    if (layer.contains("state")) {
      const json& s = layer.at("state");
      cfg.state = s.is_string() ? read_json_file(s.get<std::string>()) : s;
      cfg.preset.clear();
    }
    if (layer.contains("index")) cfg.index = layer.at("index").get<int>();
    if (layer.contains("preset")) cfg.preset = layer.at("preset").get<std::string>();
    if (layer.contains("nu")) cfg.nu = layer.at("nu").get<int>();
    if (layer.contains("nv")) cfg.nv = layer.at("nv").get<int>();
    if (layer.contains("ns")) cfg.ns = layer.at("ns").get<int>();
    if (layer.contains("nt")) cfg.nt = layer.at("nt").get<int>();
    if (layer.contains("tol")) cfg.tol = layer.at("tol").get<double>();
    if (layer.contains("max_radius")) cfg.max_radius = layer.at("max_radius").get<int>();
    if (layer.contains("format")) cfg.formats = parse_formats(layer.at("format"));
    if (layer.contains("out")) cfg.out = layer.at("out").get<std::string>();
    if (layer.contains("workers")) cfg.workers = layer.at("workers").get<int>();
    if (layer.contains("corollary")) cfg.corollary = layer.at("corollary").get<bool>();
    if (layer.contains("dims")) cfg.dims = layer.at("dims").get<std::vector<int>>();
    if (layer.contains("temperatures")) {
      cfg.temperatures = layer.at("temperatures").get<std::vector<double>>();
    }
    if (layer.contains("path")) cfg.path = layer.at("path").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  }
}

// Figure presets only fill in defaults; every later layer overrides them.
void apply_figure(RunConfig& cfg, int figure) {
  const double ell13 = TorusGeometry(13).ell;
  const double ell3 = TorusGeometry(3).ell;
  switch (figure) {
    case 1:
      cfg.d = 13;
      cfg.state = {{"kind", "vacuum"}};
      break;
    case 2:
      cfg.d = 13;
      cfg.state = {{"kind", "displaced_thermal"},
                   {"temperature", 1.0},
                   {"x", 13 * ell13 / 4},
                   {"p", 13 * ell13 / 4}};
      cfg.vacuum_scale = true;
      break;
    case 3:
      if (cfg.command != "thermal-sweep") {
        throw ConfigError("figure 3 is the thermal-sweep command");
      }
      break;
    case 4:
      cfg.d = 3;
      cfg.state = {{"kind", "approx_gkp"}, {"j", 0},          {"sigma", 0.51},
                   {"kappa", 0.4},         {"peak_cutoff", 1}, {"x", ell3 / 2},
                   {"p", ell3 / 4}};
      break;
    default:
      throw ConfigError("figure must be 1, 2, 3 or 4");
  }
}

struct Flags {
  CLI::App app{"Zak-Gross Wigner functions of bosonic states on a square qudit GKP code",
               "zakgross"};
  std::string command;
  std::string config_path;
  // Flags given on the command line, copied into a config layer after parsing.
  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> given;
};

template <class T>
void flag(Flags& f, const std::string& name, const std::string& key, const std::string& help,
          T& storage) {
  CLI::Option* opt = f.app.add_option(name, storage, help);
  f.given.emplace_back(opt, [key, &storage](json& layer) { layer[key] = storage; });
}

// A state in one layer replaces a preset from a lower one and vice versa.
void merge_layer(json& merged, const json& layer) {
  if (!layer.is_object()) throw ConfigError("configuration must be a JSON object");
  if (layer.contains("state") && layer.contains("preset")) {
    throw ConfigError("a state and a preset cannot be given together");
  }
  if (layer.contains("state")) merged.erase("preset");
  if (layer.contains("preset")) merged.erase("state");
  merged.merge_patch(layer);
}

RunConfig resolve(const std::vector<std::string>& args, std::ostream& out, bool& help_only) {
  Flags f;
  f.app.add_option("command", f.command,
                   "grid | negativity | thermal-sweep | syndrome | marginals | dv")
      ->check(CLI::IsMember(kCommands));
  int d = 0, index = 0, nu = 0, nv = 0, ns = 0, nt = 0, workers = 0, figure = 0, max_radius = 0;
  double tol = 0.0;
  std::string state, preset, format, outdir, path;
  std::vector<int> dims;
  std::vector<double> temps;
  bool corollary = false;
  flag(f, "--d", "d", "logical dimension", d);
  CLI::Option* state_opt = f.app.add_option("--state", state, "state JSON file");
  f.given.emplace_back(state_opt, [&state](json& layer) { layer["state"] = read_json_file(state); });
  flag(f, "--preset", "preset",
       "named state: vacuum, thermal, approx_gkp, codeword, magic_codeword; for dv: "
       "computational, fourier, magic, mixed",
       preset);
  flag(f, "--index", "index", "logical index for presets", index);
  flag(f, "--nu", "nu", "torus samples along u", nu);
  flag(f, "--nv", "nv", "torus samples along v", nv);
  flag(f, "--ns", "ns", "syndrome samples along s", ns);
  flag(f, "--nt", "nt", "syndrome samples along t", nt);
  flag(f, "--tol", "tol", "absolute truncation tolerance of lattice sums", tol);
  flag(f, "--max-radius", "max_radius", "largest lattice-sum radius", max_radius);
  flag(f, "--figure", "figure", "figure preset 1-4", figure);
  flag(f, "--format", "format", "comma-separated list of csv, json, png", format);
  flag(f, "--out", "out", "output directory", outdir);
  flag(f, "--workers", "workers", "worker threads (0: one per core)", workers);
  flag(f, "--path", "path", "grid evaluation path: auto, lattice, closed", path);
  flag(f, "--dims", "dims", "thermal-sweep dimensions", dims);
  flag(f, "--temperatures", "temperatures", "thermal-sweep temperatures (0: vacuum)", temps);
  f.app.get_option("--dims")->delimiter(',');
  f.app.get_option("--temperatures")->delimiter(',');
  CLI::Option* corollary_opt =
      f.app.add_flag("--corollary", corollary, "add the syndrome-averaged negativity cross-check");
  f.given.emplace_back(corollary_opt, [](json& layer) { layer["corollary"] = true; });
  f.app.add_option("--config", f.config_path, "JSON configuration file");
  f.app.footer("Precedence: flags, then --config, then ZG_CONFIG (a path or inline JSON).");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    f.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << f.app.help();
    help_only = true;
    return {};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  if (f.command.empty()) throw ConfigError("a command is required; see --help");

  json env_layer = json::object();
  if (const char* env = std::getenv("ZG_CONFIG"); env && *env) {
    const std::string text = env;
    if (text.front() == '{') {
      try {
        env_layer = json::parse(text);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("ZG_CONFIG: ") + e.what());
      }
    } else {
      env_layer = read_json_file(text);
    }
  }
  json flag_layer = json::object();
  for (const auto& [opt, copy] : f.given) {
    if (opt->count() > 0) copy(flag_layer);
  }
  json merged = json::object();
  merge_layer(merged, env_layer);
  if (!f.config_path.empty()) merge_layer(merged, read_json_file(f.config_path));
  merge_layer(merged, flag_layer);

  RunConfig cfg;
  cfg.command = f.command;
  if (merged.contains("figure")) {
    if (!merged.at("figure").is_number_integer()) throw ConfigError("figure must be an integer");
    cfg.figure = merged.at("figure").get<int>();
    apply_figure(cfg, *cfg.figure);
  }
  apply_layer(cfg, merged);
  if (cfg.temperatures.empty()) cfg.temperatures = default_temperatures();
  if (cfg.path != "auto" && cfg.path != "lattice" && cfg.path != "closed") {
    throw ConfigError("path must be auto, lattice or closed");
  }
  if (cfg.tol <= 0.0 || cfg.max_radius < 1) throw ConfigError("tolerance and radius must be positive");
  if (cfg.nu < 1 || cfg.nv < 1 || cfg.ns < 1 || cfg.nt < 1) {
    throw ConfigError("grid sizes must be positive");
  }
  return cfg;
}

// --- evaluation ----------------------------------------------------------------

ZgGridOptions grid_options(const RunConfig& cfg) {
  ZgGridOptions options;
  options.policy.abs_tol = cfg.tol;
  options.policy.max_radius = cfg.max_radius;
  options.workers = cfg.workers;
  if (cfg.path == "lattice") options.path = GridPath::lattice;
  if (cfg.path == "closed") options.path = GridPath::closed_form;
  return options;
}

QuditSystem odd_system(const RunConfig& cfg) {
  if (cfg.d < 1 || cfg.d % 2 == 0) {
    throw ConfigError("d must be odd and >= 1 (d = 2 is only available in thermal-sweep)");
  }
  return QuditSystem(cfg.d);
}

CvState cv_state(const RunConfig& cfg, const QuditSystem& sys) {
  const json doc = cfg.preset.empty() ? cfg.state : preset_state(cfg.preset, cfg.index);
  return build_state(state_spec_from_json(doc), sys);
}

json state_json(const RunConfig& cfg) {
  return cfg.preset.empty() ? cfg.state : preset_state(cfg.preset, cfg.index);
}

class Writer {
 public:
  Writer(const RunConfig& cfg, std::string stem) : cfg_(cfg), stem_(std::move(stem)) {
    fs::create_directories(cfg.out);
  }

  bool wants(const char* format) const { return cfg_.formats.count(format) > 0; }

  std::string path(const std::string& suffix) const {
    return (fs::path(cfg_.out) / (stem_ + suffix)).string();
  }

  std::ofstream open(const std::string& suffix) {
    const std::string p = path(suffix);
    std::ofstream file(p);
    if (!file) throw std::runtime_error("cannot write " + p);
    files_.push_back(p);
    return file;
  }

  void grid(const std::string& suffix, const TorusGeometry& geometry, const Grid2& grid,
            const json& extra = json::object()) {
    if (wants("csv")) {
      auto file = open(suffix + ".csv");
      write_grid_csv(file, grid);
    }
    if (wants("json")) {
      json doc = grid_json(geometry, grid);
      doc.update(extra);
      open(suffix + ".json") << doc.dump() << '\n';
    }
  }

  void heatmap(const std::string& suffix, const Eigen::MatrixXd& values, double limit,
               const std::string& scale) {
    if (!wants("png")) return;
    const std::string p = path(suffix + ".png");
    render::write_png(p, render::heatmap(values, limit));
    files_.push_back(p);
    open(suffix + ".png.json") << json{{"colormap", "blue-white-red"},
                                       {"value_at_blue", -limit},
                                       {"value_at_white", 0.0},
                                       {"value_at_red", limit},
                                       {"scale", scale},
                                       {"orientation", "u right, v up"}}
                                      .dump()
                               << '\n';
  }

  void plot(const std::string& suffix, const render::Image& image, const json& sidecar) {
    if (!wants("png")) return;
    const std::string p = path(suffix + ".png");
    render::write_png(p, image);
    files_.push_back(p);
    open(suffix + ".png.json") << sidecar.dump() << '\n';
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  const RunConfig& cfg_;
  std::string stem_;
  std::vector<std::string> files_;
};

// Figure presets name the grid and sweep outputs after the figure; other
// commands keep their own name as a suffix so runs do not overwrite each other.
std::string stem(const RunConfig& cfg, const std::string& fallback) {
  if (!cfg.figure) return fallback;
  const std::string base = "figure" + std::to_string(*cfg.figure);
  if (cfg.command == "grid" || cfg.command == "thermal-sweep") return base;
  return base + "_" + fallback;
}

double symmetric_limit(const Eigen::MatrixXd& values) { return values.cwiseAbs().maxCoeff(); }

json grid_summary(const Grid2& g) {
  const auto [i, j] = g.argmin();
  const auto [k, l] = g.argmax();
  return {{"min", g.values(i, j)},
          {"argmin", {g.first.at(i), g.second.at(j)}},
          {"max", g.values(k, l)},
          {"argmax", {g.first.at(k), g.second.at(l)}},
          {"max_imag", g.max_imag},
          {"nu", g.first.count},
          {"nv", g.second.count}};
}

json cmd_grid(const RunConfig& cfg) {
  const QuditSystem sys = odd_system(cfg);
  const CvState state = cv_state(cfg, sys);
  const ZgGridOptions options = grid_options(cfg);
  const TorusGrid grid = zg_grid(sys, state, cfg.nu, cfg.nv, options);
  Writer writer(cfg, stem(cfg, "grid"));
  writer.grid("", grid.geometry, grid.samples);
  double limit = symmetric_limit(grid.samples.values);
  std::string scale = "symmetric about 0, max |W|";
  if (cfg.vacuum_scale) {
    const TorusGrid vacuum = zg_grid(sys, CvState(GaussianState::vacuum()), cfg.nu, cfg.nv, options);
    limit = vacuum.samples.values.maxCoeff();
    scale = "symmetric about 0, vacuum maximum";
  }
  writer.heatmap("", grid.samples.values, limit, scale);
  json report = {{"command", "grid"}, {"d", sys.d()}, {"state", state_json(cfg)}};
  report["grid"] = grid_summary(grid.samples);
  report["normalization"] = grid.normalization();

  if (cfg.figure == 4) {
    const ZakGrid row = zg_marginal_row(grid);
    const ZakGrid col = zg_marginal_col(grid);
    const SyndromeGrid syndrome = syndrome_distribution(sys, state, {cfg.ns, cfg.nt, 0.5}, options);
    writer.grid("_row", grid.geometry, row.samples, {{"alpha", row.alpha}});
    writer.grid("_col", grid.geometry, col.samples, {{"alpha", col.alpha}});
    writer.grid("_syndrome", grid.geometry, syndrome.samples,
                {{"cell_area", syndrome.samples.cell_area()}});
    writer.heatmap("_row", row.samples.values, symmetric_limit(row.samples.values), "max value");
    writer.heatmap("_col", col.samples.values, symmetric_limit(col.samples.values), "max value");
    writer.heatmap("_syndrome", syndrome.samples.values, symmetric_limit(syndrome.samples.values),
                   "max value");
    report["marginal_row"] = grid_summary(row.samples);
    report["marginal_col"] = grid_summary(col.samples);
    report["syndrome"] = grid_summary(syndrome.samples);
  }
  report["files"] = writer.files();
  return report;
}

json cmd_negativity(const RunConfig& cfg) {
  const QuditSystem sys = odd_system(cfg);
  const CvState state = cv_state(cfg, sys);
  const ZgGridOptions options = grid_options(cfg);
  const NegativityReport neg = zg_negativity(sys, state, cfg.nu, cfg.nv, options);
  json report = {{"command", "negativity"},
                 {"d", sys.d()},
                 {"state", state_json(cfg)},
                 {"negativity", neg.value},
                 {"coarse", neg.coarse},
                 {"fine", neg.fine},
                 {"tolerance_estimate", neg.tolerance_estimate},
                 {"exact", neg.exact},
                 {"grid", {{"nu", neg.nu}, {"nv", neg.nv}}}};
  if (cfg.corollary) {
    const CorollaryReport c = corollary_check(sys, state, cfg.nu, cfg.nv, {cfg.ns, cfg.nt, 0.5}, options);
    report["corollary"] = {{"lhs", c.lhs},
                           {"rhs", c.rhs},
                           {"lhs_tolerance", c.lhs_tolerance},
                           {"rhs_tolerance", c.rhs_tolerance}};
  }
  Writer writer(cfg, stem(cfg, "negativity"));
  if (writer.wants("json")) {
    writer.open(".json") << report.dump() << '\n';
    report["files"] = writer.files();
  }
  return report;
}

json cmd_thermal_sweep(const RunConfig& cfg) {
  for (int d : cfg.dims) {
    if (d < 1) throw ConfigError("thermal-sweep dimensions must be >= 1");
  }
  EvalOptions options;
  options.policy.abs_tol = cfg.tol;
  options.policy.max_radius = cfg.max_radius;
  options.workers = cfg.workers;
  const int n = cfg.nu;
  const auto rows = thermal_min_sweep(cfg.dims, cfg.temperatures, n, options);
  Writer writer(cfg, stem(cfg, "thermal_sweep"));
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"d", r.d},
                     {"T", r.temperature},
                     {"min_W", r.min_value},
                     {"center_W", r.center_value},
                     {"argmin_u", r.argmin_u},
                     {"argmin_v", r.argmin_v},
                     {"center_is_min", r.center_is_min}});
  }
  if (writer.wants("csv")) {
    auto file = writer.open(".csv");
    file << "d,T,min_W,center_W,argmin_u,argmin_v\n";
    for (const auto& r : rows) {
      file << r.d << ',' << format_double(r.temperature) << ',' << format_double(r.min_value)
           << ',' << format_double(r.center_value) << ',' << format_double(r.argmin_u) << ','
           << format_double(r.argmin_v) << '\n';
    }
  }
  if (writer.wants("json")) writer.open(".json") << json{{"n", n}, {"rows", table}}.dump() << '\n';
  if (writer.wants("png") && !rows.empty()) {
    static const std::vector<render::Rgb> palette = {
        {31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40}, {148, 103, 189}};
    std::vector<render::Series> series;
    json legend = json::array();
    render::PlotRange range{INFINITY, -INFINITY, INFINITY, -INFINITY};
    for (std::size_t k = 0; k < cfg.dims.size(); ++k) {
      render::Series s{{}, {}, palette[k % palette.size()]};
      for (const auto& r : rows) {
        if (r.d != cfg.dims[k]) continue;
        s.x.push_back(r.temperature);
        s.y.push_back(r.min_value);
        range.x_min = std::min(range.x_min, r.temperature);
        range.x_max = std::max(range.x_max, r.temperature);
        range.y_min = std::min(range.y_min, r.min_value);
        range.y_max = std::max(range.y_max, r.min_value);
      }
      const auto c = s.color;
      legend.push_back({{"d", cfg.dims[k]}, {"rgb", {c.r, c.g, c.b}}});
      series.push_back(std::move(s));
    }
    if (range.x_max <= range.x_min) range.x_max = range.x_min + 1.0;
    const double pad = 0.05 * std::max(range.y_max - range.y_min, 1e-3);
    range.y_min -= pad;
    range.y_max += pad;
    writer.plot("", render::line_plot(series, range),
                {{"x", "T"},
                 {"y", "min_W"},
                 {"x_range", {range.x_min, range.x_max}},
                 {"y_range", {range.y_min, range.y_max}},
                 {"grey_line", "W = 0"},
                 {"series", legend}});
  }
  return {{"command", "thermal-sweep"}, {"n", n}, {"rows", table}, {"files", writer.files()}};
}

json cmd_syndrome(const RunConfig& cfg) {
  const QuditSystem sys = odd_system(cfg);
  const CvState state = cv_state(cfg, sys);
  const SyndromeGrid syndrome =
      syndrome_distribution(sys, state, {cfg.ns, cfg.nt, 0.5}, grid_options(cfg));
  Writer writer(cfg, stem(cfg, "syndrome"));
  const double cell = syndrome.samples.cell_area();
  writer.grid("", syndrome.geometry, syndrome.samples, {{"cell_area", cell}});
  writer.heatmap("", syndrome.samples.values, symmetric_limit(syndrome.samples.values), "max value");
  json report = {{"command", "syndrome"}, {"d", sys.d()}, {"state", state_json(cfg)}};
  report["grid"] = grid_summary(syndrome.samples);
  report["cell_area"] = cell;
  report["total_probability"] = syndrome.samples.integral();
  report["files"] = writer.files();
  return report;
}

json cmd_marginals(const RunConfig& cfg) {
  const QuditSystem sys = odd_system(cfg);
  const CvState state = cv_state(cfg, sys);
  const TorusGrid grid = zg_grid(sys, state, cfg.nu, cfg.nv, grid_options(cfg));
  const ZakGrid row = zg_marginal_row(grid);
  const ZakGrid col = zg_marginal_col(grid);
  const SyndromeGrid both = zg_double_marginal(grid);
  Writer writer(cfg, stem(cfg, "marginals"));
  writer.grid("_row", grid.geometry, row.samples, {{"alpha", row.alpha}});
  writer.grid("_col", grid.geometry, col.samples, {{"alpha", col.alpha}});
  writer.grid("_double", grid.geometry, both.samples, {{"cell_area", both.samples.cell_area()}});
  writer.heatmap("_row", row.samples.values, symmetric_limit(row.samples.values), "max value");
  writer.heatmap("_col", col.samples.values, symmetric_limit(col.samples.values), "max value");
  writer.heatmap("_double", both.samples.values, symmetric_limit(both.samples.values), "max value");
  json report = {{"command", "marginals"}, {"d", sys.d()}, {"state", state_json(cfg)}};
  report["row"] = grid_summary(row.samples);
  report["row"]["alpha"] = row.alpha;
  report["col"] = grid_summary(col.samples);
  report["col"]["alpha"] = col.alpha;
  report["double"] = grid_summary(both.samples);
  report["double"]["total_probability"] = both.samples.integral();
  report["files"] = writer.files();
  return report;
}

json cmd_dv(const RunConfig& cfg) {
  const QuditSystem sys = odd_system(cfg);
  DvStateSpec spec;
  if (!cfg.preset.empty()) {
    spec = dv_state_spec_from_json({{"preset", cfg.preset}, {"index", cfg.index}});
  } else if (cfg.state.contains("kind")) {
    throw ConfigError("dv needs a qudit state: --preset computational|fourier|magic|mixed or a "
                      "{\"rho\": ...} file");
  } else {
    spec = dv_state_spec_from_json(cfg.state);
  }
  const DvState state = build_dv_state(spec, sys.d());
  const DvWignerGrid w = gross_wigner(sys, state);
  Writer writer(cfg, stem(cfg, "dv"));
  if (writer.wants("csv")) {
    auto file = writer.open(".csv");
    file << "a,b,value\n";
    for (int a = 0; a < sys.d(); ++a) {
      for (int b = 0; b < sys.d(); ++b) file << a << ',' << b << ',' << format_double(w.values(a, b)) << '\n';
    }
  }
  json values = json::array();
  for (int a = 0; a < sys.d(); ++a) {
    json row = json::array();
    for (int b = 0; b < sys.d(); ++b) row.push_back(w.values(a, b));
    values.push_back(row);
  }
  json report = {{"command", "dv"},
                 {"d", sys.d()},
                 {"state", to_json(spec)},
                 {"negativity", dv_negativity(w)},
                 {"trace", w.trace()},
                 {"values", values}};
  if (writer.wants("json")) writer.open(".json") << report.dump() << '\n';
  writer.heatmap("", w.values, symmetric_limit(w.values), "symmetric about 0, max |W|");
  report["files"] = writer.files();
  return report;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    bool help_only = false;
    const RunConfig cfg = resolve(args, out, help_only);
    if (help_only) return exit_ok;
    json report;
    if (cfg.command == "grid") report = cmd_grid(cfg);
    if (cfg.command == "negativity") report = cmd_negativity(cfg);
    if (cfg.command == "thermal-sweep") report = cmd_thermal_sweep(cfg);
    if (cfg.command == "syndrome") report = cmd_syndrome(cfg);
    if (cfg.command == "marginals") report = cmd_marginals(cfg);
    if (cfg.command == "dv") report = cmd_dv(cfg);
    out << report.dump(2) << '\n';
    return exit_ok;
  } catch (const ConfigError& e) {
    report_error(err, e.kind(), e.what());
    return exit_config;
  } catch (const DomainError& e) {
    report_error(err, e.kind(), e.what());
    return exit_config;
  } catch (const GridIncommensurate& e) {
    report_error(err, e.kind(), e.what());
    return exit_config;
  } catch (const NonConvergent& e) {
    report_error(err, e.kind(), e.what());
    return exit_non_convergent;
  } catch (const SingularState& e) {
    report_error(err, e.kind(), e.what());
    return exit_singular;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return exit_failure;
  } catch (const std::exception& e) {
    report_error(err, "Error", e.what());
    return exit_failure;
  }
}

}  // namespace zakgross::cli
