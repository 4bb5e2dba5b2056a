#include "casimir/sweep.hpp"

#include <algorithm>
#include <boost/algorithm/string.hpp>
#include <boost/crc.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "casimir/asymptotics.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/pfa.hpp"
#include "casimir/thermodynamics.hpp"
#include "casimir/units.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "0.0.0"
#endif

namespace casimir::sweep {

namespace {

std::string trim(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

std::string exact(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  }
  if (used != t.size()) throw std::invalid_argument("trailing characters in " + what + ": '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, value, boost::algorithm::is_any_of(","));
  for (auto& p : parts) p = trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  return parts;
}

std::vector<double> parse_length_list(const std::string& value) {
  const std::string v = trim(value);
  if (boost::algorithm::starts_with(v, "logspace(") && boost::algorithm::ends_with(v, ")")) {
    const auto args = split_list(v.substr(9, v.size() - 10));
    if (args.size() != 3) throw std::invalid_argument("logspace needs (min, max, n)");
    const double n = parse_number(args[2], "point count");
    if (n != std::floor(n)) throw std::invalid_argument("logspace point count must be an integer");
    return logspace(parse_length(args[0]), parse_length(args[1]), static_cast<int>(n));
  }
  std::vector<double> out;
  for (const auto& p : split_list(v)) out.push_back(parse_length(p));
  return out;
}

bool parse_bool(const std::string& value) {
  const std::string v = boost::algorithm::to_lower_copy(trim(value));
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + value + "'");
}

void check_grid(const std::vector<double>& grid, const std::string& name, bool allow_zero) {
  if (grid.empty()) throw std::invalid_argument(name + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i];
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
      throw std::invalid_argument(name + " values must be finite and positive");
    }
    if (i > 0 && !(v > grid[i - 1])) throw std::invalid_argument(name + " grid must be strictly ascending");
  }
}

std::string optional_cell(const std::optional<double>& v) { return v ? exact(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::pair<double, double> model_wavelengths(const MaterialModel& model) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (const auto* p = std::get_if<Plasma>(&model)) return {p->plasma_wavelength, nan};
  if (const auto* d = std::get_if<Drude>(&model)) return {d->plasma_wavelength, d->relaxation_wavelength};
  return {nan, nan};
}

}  // namespace

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw std::invalid_argument("invalid logspace arguments");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double parse_length(const std::string& text) {
  const std::string t = trim(text);
  struct Unit {
    const char* suffix;
    double scale;
  };
  // Longest suffixes first so that "um" is not read as "m".
  static const Unit units_table[] = {{"\xC2\xB5m", 1.0}, {"um", 1.0}, {"nm", 1e-3}, {"mm", 1e3}, {"m", 1e6}};
  for (const Unit& u : units_table) {
    if (boost::algorithm::ends_with(t, u.suffix)) {
      return parse_number(t.substr(0, t.size() - std::char_traits<char>::length(u.suffix)), "length") * u.scale;
    }
  }
  return parse_number(t, "length");
}

MaterialModel parse_model(const std::string& text) {
  std::vector<std::string> parts;
  const std::string t = trim(text);
  boost::algorithm::split(parts, t, boost::algorithm::is_any_of(":"));
  const std::string kind = boost::algorithm::to_lower_copy(trim(parts[0]));
  MaterialModel model;
  if (kind == "perfect" && parts.size() == 1) {
    model = PerfectReflector{};
  } else if (kind == "plasma" && parts.size() == 2) {
    model = Plasma{parse_length(parts[1])};
  } else if (kind == "drude" && parts.size() == 3) {
    model = Drude{parse_length(parts[1]), parse_length(parts[2])};
  } else {
    throw std::invalid_argument("unknown material model '" + text +
                                "' (use perfect, plasma:<lambda_P>, drude:<lambda_P>:<lambda_gamma>)");
  }
  casimir::validate(model);
  return model;
}

std::string format_model(const MaterialModel& model) {
  if (const auto* p = std::get_if<Plasma>(&model)) return "plasma:" + exact(p->plasma_wavelength) + "um";
  if (const auto* d = std::get_if<Drude>(&model)) {
    return "drude:" + exact(d->plasma_wavelength) + "um:" + exact(d->relaxation_wavelength) + "um";
  }
  return "perfect";
}

void validate(const SweepSpec& spec) {
  check_grid(spec.separations, "L", false);
  check_grid(spec.radii, "R", false);
  check_grid(spec.temperatures, "T", true);
  if (spec.models.empty()) throw std::invalid_argument("model list is empty");
  for (const auto& m : spec.models) casimir::validate(m);
  if (!(spec.tol > 0.0 && spec.tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
  if (spec.lmax < 0) throw std::invalid_argument("lmax must be >= 0");
  if (!(spec.max_aspect > 0.0)) throw std::invalid_argument("max_aspect must be > 0");
  if (spec.output.empty()) throw std::invalid_argument("output path is empty");
  for (const std::string* field : {&spec.notes, &spec.output}) {
    if (field->find_first_of("#\n") != std::string::npos) {
      throw std::invalid_argument("notes and output path must be one line without '#'");
    }
  }
}

SweepSpec parse_config(const std::string& text) {
  SweepSpec spec;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "L") {
        spec.separations = parse_length_list(value);
      } else if (key == "R") {
        spec.radii = parse_length_list(value);
      } else if (key == "T") {
        spec.temperatures.clear();
        for (const auto& p : split_list(value)) {
          std::string v = p;
          if (boost::algorithm::ends_with(v, "K")) v.pop_back();
          spec.temperatures.push_back(parse_number(v, "temperature"));
        }
      } else if (key == "model") {
        spec.models.clear();
        for (const auto& p : split_list(value)) spec.models.push_back(parse_model(p));
      } else if (key == "tol") {
        spec.tol = parse_number(value, "tol");
      } else if (key == "lmax") {
        const double v = parse_number(value, "lmax");
        if (v != std::floor(v)) throw std::invalid_argument("lmax must be an integer");
        spec.lmax = static_cast<int>(v);
      } else if (key == "max_aspect") {
        spec.max_aspect = parse_number(value, "max_aspect");
      } else if (key == "entropy") {
        spec.entropy = parse_bool(value);
      } else if (key == "out") {
        spec.output = value;
      } else if (key == "notes") {
        spec.notes = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(spec);
  return spec;
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize(const SweepSpec& spec) {
  const auto join = [](const std::vector<double>& v, const char* suffix) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + exact(v[i]) + suffix;
    return out;
  };
  std::string models;
  for (std::size_t i = 0; i < spec.models.size(); ++i) models += (i ? ", " : "") + format_model(spec.models[i]);
  std::ostringstream s;
  s << "L = " << join(spec.separations, "um") << "\n"
    << "R = " << join(spec.radii, "um") << "\n"
    << "T = " << join(spec.temperatures, "") << "\n"
    << "model = " << models << "\n"
    << "tol = " << exact(spec.tol) << "\n"
    << "lmax = " << spec.lmax << "\n"
    << "max_aspect = " << exact(spec.max_aspect) << "\n"
    << "entropy = " << (spec.entropy ? "true" : "false") << "\n"
    << "out = " << spec.output << "\n";
  if (!spec.notes.empty()) s << "notes = " << spec.notes << "\n";
  return s.str();
}

std::string config_hash(const SweepSpec& spec) {
  boost::crc_32_type crc;
  const std::string text = serialize(spec);
  crc.process_bytes(text.data(), text.size());
  std::ostringstream s;
  s << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return s.str();
}

SweepRow evaluate_point(double L, double R, double T, const MaterialModel& model, const SweepSpec& spec) {
  SweepRow row;
  row.L = L;
  row.R = R;
  row.T = T;
  row.model = model;
  if (R / L > spec.max_aspect) {
    row.status = "skipped: R/L above max_aspect";
    return row;
  }
  try {
    const Geometry g{L, R};
    SolverOptions options;
    options.tol = spec.tol;
    options.lmax = spec.lmax;
    const bool hot_run = T > 0.0;
    const ThermalResult main = hot_run ? thermo::force(g, model, T, options)
                                       : thermo::zero_temperature(g, model, options);
    row.free_energy_J = main.free_energy * units::energy_unit_J;
    row.force_N = main.force * units::force_unit_N;
    row.lmax = main.report.lmax;
    row.m_max = main.report.m_max;
    row.n_max = main.report.n_max;
    row.quad_order = main.report.quad_order;
    row.rel_error = main.report.rel_error;

    SolverOptions matched = options;
    matched.lmax = main.report.lmax;
    matched.quad_order = main.report.quad_order;
    row.force_pfa_N = pfa::pfa_force(L, R, T, model) * units::force_unit_N;
    if (hot_run) {
      const ThermalResult cold = thermo::zero_temperature(g, model, matched);
      row.theta = main.force / cold.force;
      row.rel_error = std::max(row.rel_error, cold.report.rel_error);
      row.theta_pfa = pfa::pfa_theta(L, T, model);
      if (is_perfect(model)) {
        row.theta_dipole = asymptotics::theta_dipole(asymptotics::reduced_distance(g.center_distance(), T));
      }
      if (spec.entropy) {
        const EntropyResult s = thermo::entropy(g, model, T, matched);
        row.entropy_J_per_K = s.entropy * units::energy_unit_J;
      }
      if (const auto* d = std::get_if<Drude>(&model)) {
        const Plasma plasma{d->plasma_wavelength};
        row.force_ratio_plasma_drude = thermo::force(g, plasma, T, matched).force / main.force;
        row.force_ratio_plasma_drude_pfa = pfa::pfa_force(L, R, T, plasma) / pfa::pfa_force(L, R, T, model);
      }
    } else {
      row.theta = 1.0;
      row.theta_pfa = 1.0;
    }
    if (row.rel_error > spec.tol) row.status = "unconverged";
  } catch (const std::exception& e) {
    row.status = std::string("failed: ") + e.what();
  }
  return row;
}

std::vector<SweepRow> run(const SweepSpec& spec, int workers) {
  validate(spec);
  struct Point {
    double L, R, T;
    const MaterialModel* model;
  };
  std::vector<Point> points;
  for (const auto& model : spec.models)
    for (double R : spec.radii)
      for (double T : spec.temperatures)
        for (double L : spec.separations) points.push_back({L, R, T, &model});
  return matsubara::parallel_map(points.size(), workers, [&](std::size_t i) {
    const Point& p = points[i];
    return evaluate_point(p.L, p.R, p.T, *p.model, spec);
  });
}

std::vector<std::string> csv_columns() {
  return {"L_um",       "R_um",          "T_K",           "model",
          "lambda_p_um", "lambda_gamma_um", "free_energy_J", "force_N",
          "entropy_J_per_K", "theta",    "theta_pfa",     "force_pfa_N",
          "theta_dipole", "force_ratio_plasma_drude", "force_ratio_plasma_drude_pfa",
          "lmax",       "m_max",         "n_max",         "quad_order",
          "rel_error",  "status"};
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "# schema: " << schema_version << "\n"
      << "# version: " << CASIMIR_VERSION << "\n"
      << "# config_hash: " << config_hash(spec) << "\n"
      << "# constants: hbar_Js=" << exact(units::hbar) << " c_m_per_s=" << exact(units::speed_of_light)
      << " kB_J_per_K=" << exact(units::boltzmann)
      << " lambda_T_300K_um=" << exact(units::thermal_wavelength_um(300.0)) << "\n"
      << "# units: force attraction-positive; theta = F(T)/F(T=0); theta_dipole uses nu = 2 pi (L+R)/lambda_T\n";
  if (!spec.notes.empty()) out << "# notes: " << spec.notes << "\n";
  const auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const SweepRow& r : rows) {
    const auto [lp, lg] = model_wavelengths(r.model);
    const auto wl = [](double v) { return std::isnan(v) ? std::string() : exact(v); };
    out << exact(r.L) << ',' << exact(r.R) << ',' << exact(r.T) << ',' << describe(r.model) << ',' << wl(lp) << ','
        << wl(lg) << ',' << optional_cell(r.free_energy_J) << ',' << optional_cell(r.force_N) << ','
        << optional_cell(r.entropy_J_per_K) << ',' << optional_cell(r.theta) << ','
        << optional_cell(r.theta_pfa) << ',' << optional_cell(r.force_pfa_N) << ','
        << optional_cell(r.theta_dipole) << ',' << optional_cell(r.force_ratio_plasma_drude) << ','
        << optional_cell(r.force_ratio_plasma_drude_pfa) << ',' << r.lmax << ',' << r.m_max << ','
        << r.n_max << ',' << r.quad_order << ',' << exact(r.rel_error) << ',' << csv_escape(r.status)
        << "\n";
  }
}

void write_csv_atomic(const std::string& path, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    write_csv(out, spec, rows);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

SweepSpec preset(const std::string& name) {
  SweepSpec spec;
  spec.radii = {0.1, 0.2, 0.5, 1.0, 2.0};
  spec.temperatures = {300.0};
  spec.separations = logspace(0.1, 20.0, 24);
  spec.output = name + ".csv";
  const std::string radii_note = "representative sphere radii 0.1, 0.2, 0.5, 1, 2 um";
  if (name == "fig1") {
    spec.models = {PerfectReflector{}};
    spec.notes = "fig1: theta for perfect mirrors at 300 K; " + radii_note;
  } else if (name == "fig2") {
    spec.models = {Drude{0.136, 250.0 * 0.136}};
    spec.notes = "fig2: theta for Drude mirrors (lambda_P = 136 nm, lambda_gamma = 250 lambda_P) at 300 K; " +
                 radii_note;
  } else if (name == "fig3") {
    spec.models = {Drude{0.136, 250.0 * 0.136}};
    spec.separations = logspace(0.1, 50.0, 24);
    spec.notes = "fig3: plasma/Drude force ratio (lambda_P = 136 nm, lambda_gamma = 250 lambda_P) at 300 K; " +
                 radii_note;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (fig1, fig2, fig3)");
  }
  return spec;
}

}  // namespace casimir::sweep
