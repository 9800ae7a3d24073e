#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptosc/coperator.hpp"
#include "ptosc/models.hpp"
#include "ptosc/oscillate.hpp"

namespace ptosc::cli {

enum ExitCode : int { kOk = 0, kPhysicsFailure = 1, kUsageError = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Sets a named scalar parameter on a spec: chi, psi, theta, phi, m0..m3, p,
// theta_p, phi_p, a0, d0, b0..b3. Throws ParameterError for names that do not
// belong to the spec's model.
void set_parameter(ModelSpec& spec, const std::string& name, double value);

// sfdm (0.5, 0.3, 0.7, 0.2); generic a0=1, d0=-1, b=(0.3, 0.2, -0.1, 0.4); h8 family m0=2, m2=1.
ModelSpec default_spec(ModelKind kind);

// Reads PTOSC_TOL; throws ParameterError when set but unparsable or non-positive.
double tolerance_from_env();

struct TimeGridSpec {
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<std::size_t> steps;
  std::vector<double> values;  // explicit points win over start/stop/steps

  std::vector<double> resolve(const EigenSystem& es) const;
};

struct Pipeline {
  Model model;
  EigenSystem eigensystem;
  COperator c;
  FlavourBasis basis;
};

// Throws PtBrokenError in the broken phase and other ptosc errors when no
// eigenbasis or C operator can be built.
Pipeline build_pipeline(const ModelSpec& spec, double tol);
std::string render_table(const TransitionTable& table, const std::string& format);

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  std::vector<double> points() const;
};

struct SweepConfig {
  ModelSpec model;
  std::vector<SweepAxis> axes;
  TimeGridSpec t_grid;
  std::string output = ".";
  std::string format = "csv";
  std::size_t jobs = 1;
};

// Parses {"model": spec, "axes": [{name, start, stop, steps}], "t_grid": {...},
// "output": dir, "format": "csv"|"json", "jobs": n}.
SweepConfig sweep_config_from_json(const std::string& text);

struct SweepSummary {
  std::size_t points = 0;
  std::size_t tables = 0;
  std::size_t broken = 0;
  std::size_t errors = 0;
};

// Writes one table per grid point plus index.json into config.output.
SweepSummary run_sweep(const SweepConfig& config, double tol);

// Writes contents to path through a temporary sibling file and rename.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace ptosc::cli
