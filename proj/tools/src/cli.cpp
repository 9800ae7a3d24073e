#include "ptosc_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <cmath>
#include <map>
#include <sstream>

#include "ptosc/eigen.hpp"
#include "ptosc/errors.hpp"
#include "ptosc/io.hpp"
#include "ptosc/verify.hpp"

namespace ptosc::cli {

namespace {

const std::vector<std::string> kSfdmNames{"chi", "psi", "theta", "phi"};
const std::vector<std::string> kGenericNames{"a0", "d0", "b0", "b1", "b2", "b3"};
const std::vector<std::string> kDiracNames{"m0", "m1", "m2", "m3", "p", "theta_p", "phi_p"};

std::string flag_for(const std::string& name) {
  std::string flag = "--" + name;
  for (char& ch : flag) {
    if (ch == '_') ch = '-';
  }
  return flag;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(x)) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ParameterError(std::string("invalid ") + what + " '" + text + "'");
  }
}

// Model selection flags shared by every subcommand.
struct ModelFlags {
  std::string model;
  std::string model_file;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--model", model, "Model: sfdm, generic, h8, h8r, h8v");
    app.add_option("--model-file", model_file, "JSON model spec")->check(CLI::ExistingFile);
    for (const auto* names : {&kSfdmNames, &kGenericNames, &kDiracNames}) {
      for (const std::string& name : *names) options[name] = app.add_option(flag_for(name), values[name]);
    }
  }

  ModelSpec resolve() const {
    ModelSpec spec;
    if (!model_file.empty()) {
      spec = spec_from_json(Json::parse(read_file(model_file)));
      if (!model.empty() && parse_model_kind(model) != spec.kind) {
        throw ParameterError("--model disagrees with the model file");
      }
    } else {
      if (model.empty()) throw ParameterError("either --model or --model-file is required");
      spec = default_spec(parse_model_kind(model));
    }
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) set_parameter(spec, name, values.at(name));
    }
    spec.validate();
    return spec;
  }
};

struct GridFlags {
  TimeGridSpec spec;
  double start = 0.0, stop = 0.0;
  std::size_t steps = 64;
  CLI::Option* start_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  CLI::Option* steps_opt = nullptr;

  void attach(CLI::App& app) {
    start_opt = app.add_option("--t-start", start, "First time point (default 0)");
    stop_opt = app.add_option("--t-stop", stop, "Last time point (default one oscillation period)");
    steps_opt = app.add_option("--t-steps", steps, "Number of time points (default 64)")->check(CLI::PositiveNumber);
    app.add_option("--t", spec.values, "Explicit time points")->expected(1, -1);
  }

  TimeGridSpec resolve() const {
    TimeGridSpec out = spec;
    if (start_opt->count()) out.start = start;
    if (stop_opt->count()) out.stop = stop;
    if (steps_opt->count()) out.steps = steps;
    return out;
  }
};

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_atomically(path, contents);
  }
}

int cmd_verify(const ModelSpec& spec, double tol, const std::string& path, std::ostream& out) {
  SuiteOptions options;
  options.tol = tol;
  const std::vector<CheckReport> reports = run_full_suite(spec, options);
  emit(path, to_json_lines(reports), out);
  return all_passed(reports) ? kOk : kPhysicsFailure;
}

int cmd_oscillate(const ModelSpec& spec, const TimeGridSpec& grid, double tol, const std::string& path,
                  const std::string& format, bool golden, std::ostream& out, std::ostream& err) {
  const Pipeline pipe = build_pipeline(spec, tol);
  const TransitionTable table =
      transition_table(pipe.model.sym, pipe.basis, pipe.eigensystem, pipe.c, grid.resolve(pipe.eigensystem));
  emit(path, render_table(table, format), out);
  const double row_defect = max_row_sum_defect(table);
  if (row_defect > tol) {
    err << "row sums deviate from 1 by " << row_defect << "\n";
    return kPhysicsFailure;
  }
  if (golden) {
    const double dev = golden_deviation(table, pipe.eigensystem);
    err << "golden max deviation: " << dev << "\n";
    if (dev > tol) return kPhysicsFailure;
  }
  return kOk;
}

int cmd_spectrum(const ModelSpec& spec, double tol, const std::string& path, const std::string& format,
                 std::ostream& out) {
  Json doc{{"model", spec_to_json(spec)}};
  int code = kOk;
  std::vector<Complex> values;
  std::vector<int> signs;
  std::vector<std::string> labels;
  try {
    const EigenSystem es = model_eigensystem(spec, tol);
    for (const EigenPair& p : es.pairs) {
      values.push_back(p.value);
      signs.push_back(p.pt_sign);
      labels.push_back(p.label);
    }
    doc["source"] = "closed form";
    doc["real"] = true;
  } catch (const PtBrokenError& e) {
    values = e.eigenvalues();
    doc["source"] = "eigensolver";
    doc["real"] = false;
    doc["note"] = e.what();
    code = kPhysicsFailure;
  } catch (const UnsupportedError&) {
    values = eigenvalues(realize(spec).h);
    doc["source"] = "eigensolver";
    doc["real"] = true;
  }
  if (format == "csv") {
    std::string text = "index,label,re,im,pt_sign\n";
    char buf[96];
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%s,%.12g,%.12g,%s\n", i + 1, i < labels.size() ? labels[i].c_str() : "",
                    values[i].real(), values[i].imag(), i < signs.size() ? (signs[i] > 0 ? "+1" : "-1") : "");
      text += buf;
    }
    emit(path, text, out);
  } else {
    Json ev = Json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      Json entry = complex_to_json(values[i]);
      if (i < labels.size()) {
        entry["label"] = labels[i];
        entry["pt_sign"] = signs[i];
      }
      ev.push_back(entry);
    }
    doc["eigenvalues"] = ev;
    emit(path, doc.dump(2) + "\n", out);
  }
  return code;
}

}  // namespace

ModelSpec default_spec(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sfdm: return ModelSpec::sfdm({0.5, 0.3, 0.7, 0.2});
    case ModelKind::Generic: return ModelSpec::generic(GenericTOddParams::from_scalars(1.0, -1.0, {0.3, 0.2, -0.1, 0.4}));
    default: return ModelSpec::dirac(kind, Dirac8Params{2.0, 0.0, 1.0, 0.0});
  }
}

void set_parameter(ModelSpec& spec, const std::string& name, double value) {
  if (!std::isfinite(value)) throw ParameterError("parameter '" + name + "' must be finite");
  if (auto* s = std::get_if<SfdmParams>(&spec.params)) {
    if (name == "chi") return void(s->chi = value);
    if (name == "psi") return void(s->psi = value);
    if (name == "theta") return void(s->theta = value);
    if (name == "phi") return void(s->phi = value);
  } else if (auto* g = std::get_if<GenericTOddParams>(&spec.params)) {
    if (name == "a0") return void(g->a = value * CMatrix::identity(2));
    if (name == "d0") return void(g->d = value * CMatrix::identity(2));
    if (name.size() == 2 && name[0] == 'b' && name[1] >= '0' && name[1] <= '3') {
      const int k = name[1] - '0';
      // Replace one quaternion coefficient, keeping the others.
      std::array<double, 4> b{};
      for (int i = 0; i < 4; ++i) {
        const Complex c = 0.5 * trace(pauli(i) * g->b);
        b[i] = i == 0 ? c.real() : c.imag();
      }
      b[k] = value;
      return void(g->b = real_quaternion(b));
    }
  } else if (auto* d = std::get_if<Dirac8Params>(&spec.params)) {
    if (name == "m0") return void(d->m0 = value);
    if (name == "m1") return void(d->m1 = value);
    if (name == "m2") return void(d->m2 = value);
    if (name == "m3") return void(d->m3 = value);
    if (name == "p") return void(d->p = value);
    if (name == "theta_p" || name == "theta-p") return void(d->theta_p = value);
    if (name == "phi_p" || name == "phi-p") return void(d->phi_p = value);
  }
  throw ParameterError("parameter '" + name + "' does not apply to model " + std::string(to_string(spec.kind)));
}

double tolerance_from_env() {
  const char* raw = std::getenv("PTOSC_TOL");
  if (raw == nullptr || *raw == '\0') return kDefaultTol;
  const double tol = parse_double(raw, "PTOSC_TOL");
  if (tol <= 0.0) throw ParameterError("PTOSC_TOL must be positive");
  return tol;
}

std::vector<double> TimeGridSpec::resolve(const EigenSystem& es) const {
  if (!values.empty()) return values;
  const std::size_t n = steps.value_or(64);
  if (!start && !stop) {
    if (n == 64) return default_time_grid(es);
    const std::vector<double> base = default_time_grid(es, 2);
    return uniform_grid(0.0, base.back(), n);
  }
  const double lo = start.value_or(0.0);
  const double hi = stop.value_or(default_time_grid(es, 2).back());
  return uniform_grid(lo, hi, n);
}

Pipeline build_pipeline(const ModelSpec& spec, double tol) {
  Model model = realize(spec);
  EigenSystem es = model_eigensystem(spec, tol);
  COperator c = build_C(model.sym, es, model.h, tol);
  c.source_model = spec;
  FlavourBasis basis = standard_flavour_basis(model.sym, es, c, tol);
  return {std::move(model), std::move(es), std::move(c), std::move(basis)};
}

std::string render_table(const TransitionTable& table, const std::string& format) {
  if (format == "csv") return to_csv(table);
  if (format == "json") return table_to_json(table).dump(2) + "\n";
  throw ParameterError("unknown format '" + format + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PT-symmetric T-odd models: axiom checks, spectra and flavour oscillations", "ptosc"};
  app.require_subcommand(1);

  ModelFlags verify_model, osc_model, spec_model, sweep_model;
  GridFlags osc_grid, sweep_grid;
  std::string verify_out, osc_out, spec_out, sweep_out;
  std::string osc_format = "csv", spec_format = "json", sweep_format = "csv";
  bool golden = false;
  std::string config_path;
  std::vector<std::string> axis_specs;
  std::size_t jobs = 1;

  CLI::App* verify = app.add_subcommand("verify", "Run the full axiom suite; JSON lines, one check per line");
  verify_model.attach(*verify);
  verify->add_option("--out", verify_out, "Output file (default stdout)");

  CLI::App* osc = app.add_subcommand("oscillate", "Flavour transition probability table");
  osc_model.attach(*osc);
  osc_grid.attach(*osc);
  osc->add_option("--out", osc_out, "Output file (default stdout)");
  osc->add_option("--format", osc_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  osc->add_flag("--golden", golden, "Compare against the closed-form cos^2/sin^2 pattern");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Print eigenvalues");
  spec_model.attach(*spectrum);
  spectrum->add_option("--out", spec_out, "Output file (default stdout)");
  spectrum->add_option("--format", spec_format, "json or csv")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* sweep = app.add_subcommand("sweep", "Oscillation tables over a parameter grid");
  sweep->add_option("--config", config_path, "JSON sweep config")->check(CLI::ExistingFile);
  sweep_model.attach(*sweep);
  sweep_grid.attach(*sweep);
  sweep->add_option("--axis", axis_specs, "name:start:stop:steps (repeatable)");
  CLI::Option* sweep_out_opt = sweep->add_option("--out", sweep_out, "Output directory");
  CLI::Option* sweep_format_opt =
      sweep->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* jobs_opt = sweep->add_option("--jobs", jobs, "Concurrent workers")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  double tol = kDefaultTol;
  try {
    tol = tolerance_from_env();
    if (verify->parsed()) return cmd_verify(verify_model.resolve(), tol, verify_out, out);
    if (spectrum->parsed()) return cmd_spectrum(spec_model.resolve(), tol, spec_out, spec_format, out);
    if (osc->parsed()) {
      return cmd_oscillate(osc_model.resolve(), osc_grid.resolve(), tol, osc_out, osc_format, golden, out, err);
    }
    SweepConfig config;
    if (!config_path.empty()) {
      config = sweep_config_from_json(read_file(config_path));
      if (!sweep_model.model.empty() || !sweep_model.model_file.empty()) config.model = sweep_model.resolve();
    } else {
      config.model = sweep_model.resolve();
      config.t_grid = sweep_grid.resolve();
    }
    for (const std::string& text : axis_specs) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
      if (parts.size() != 4) throw ParameterError("--axis expects name:start:stop:steps, got '" + text + "'");
      const double steps = parse_double(parts[3], "axis steps");
      if (steps < 1 || steps != std::floor(steps)) throw ParameterError("axis steps must be a positive integer");
      config.axes.push_back({parts[0], parse_double(parts[1], "axis start"), parse_double(parts[2], "axis stop"),
                             static_cast<std::size_t>(steps)});
    }
    if (sweep_out_opt->count()) config.output = sweep_out;
    if (sweep_format_opt->count()) config.format = sweep_format;
    if (jobs_opt->count()) config.jobs = jobs;
    const SweepSummary summary = run_sweep(config, tol);
    err << "sweep: " << summary.points << " points, " << summary.tables << " tables, " << summary.broken
        << " broken, " << summary.errors << " errors\n";
    return summary.errors == 0 ? kOk : kPhysicsFailure;
  } catch (const PtBrokenError& e) {
    err << "broken PT phase: " << e.what() << "\n";
    return kPhysicsFailure;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return kPhysicsFailure;
  }
}

}  // namespace ptosc::cli
