#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir::sweep {

inline constexpr const char* schema_version = "casimir-sweep/1";

/// Parameter sweep over (model, R, T, L); lengths in um, temperatures in K.
struct SweepSpec {
  std::vector<double> separations;
  std::vector<double> radii;
  std::vector<double> temperatures;
  std::vector<MaterialModel> models;
  double tol = 1e-6;
  int lmax = 0;               // 0: automatic per point
  double max_aspect = 10.0;   // points with R/L above this are skipped
  bool entropy = false;
  std::string output = "sweep.csv";
  std::string notes;
};

/// Throws std::invalid_argument unless every grid is non-empty, finite,
/// strictly positive (T may be 0) and strictly ascending.
void validate(const SweepSpec& spec);

/// Plain "key = value" text; '#' starts a comment. Keys: L, R, T, model,
/// tol, lmax, max_aspect, entropy, out, notes. Lists are comma separated;
/// L and R also accept logspace(min, max, n). Lengths take um, nm, mm or m
/// suffixes (bare numbers are um).
/// The result is validated.
SweepSpec parse_config(const std::string& text);
SweepSpec load_config(const std::string& path);

/// Inverse of parse_config: parse_config(serialize(s)) reproduces s exactly.
std::string serialize(const SweepSpec& spec);

/// Length with unit suffix, returned in um.
double parse_length(const std::string& text);
MaterialModel parse_model(const std::string& text);
std::string format_model(const MaterialModel& model);

/// Log-spaced grid including both end points.
std::vector<double> logspace(double lo, double hi, int n);

struct SweepRow {
  double L = 0.0;
  double R = 0.0;
  double T = 0.0;
  MaterialModel model;
  std::optional<double> free_energy_J;
  std::optional<double> force_N;
  std::optional<double> entropy_J_per_K;
  std::optional<double> theta;
  std::optional<double> theta_pfa;
  std::optional<double> force_pfa_N;
  std::optional<double> theta_dipole;
  std::optional<double> force_ratio_plasma_drude;
  std::optional<double> force_ratio_plasma_drude_pfa;
  int lmax = 0;
  int m_max = 0;
  int n_max = 0;
  int quad_order = 0;
  double rel_error = 0.0;
  std::string status = "ok";

  bool succeeded() const { return status == "ok"; }
};

/// Evaluates a single grid point; failures end up in row.status.
SweepRow evaluate_point(double L, double R, double T, const MaterialModel& model,
                        const SweepSpec& spec);

/// All points in grid order (model, R, T slow to fast, then L), evaluated on
/// `workers` threads.
std::vector<SweepRow> run(const SweepSpec& spec, int workers);

std::vector<std::string> csv_columns();

/// Header (schema, version, config hash, constants, notes), column line, rows.
void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Writes to a temporary file next to `path` and renames it into place.
void write_csv_atomic(const std::string& path, const SweepSpec& spec,
                      const std::vector<SweepRow>& rows);

/// CRC-32 of serialize(spec), as 8 hex digits.
std::string config_hash(const SweepSpec& spec);

/// Figure presets: "fig1", "fig2", "fig3".
SweepSpec preset(const std::string& name);

}  // namespace casimir::sweep
