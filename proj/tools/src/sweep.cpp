#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "ptosc/errors.hpp"
#include "ptosc/io.hpp"
#include "ptosc_cli/cli.hpp"

namespace ptosc::cli {

namespace fs = std::filesystem;

namespace {

std::string format_value(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ParameterError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ParameterError(std::string("unknown key '") + key + "' in " + where);
  }
}

struct PointResult {
  std::string file;
  std::string status;
  std::string message;
};

}  // namespace

std::vector<double> SweepAxis::points() const {
  if (steps == 0) throw ParameterError("axis '" + name + "' needs at least one step");
  if (steps == 1) return {start};
  return uniform_grid(start, stop, steps);
}

SweepConfig sweep_config_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  check_keys(j, {"model", "axes", "t_grid", "output", "format", "jobs"}, "sweep config");
  if (!j.contains("model")) throw ParameterError("sweep config requires 'model'");
  SweepConfig config;
  config.model = spec_from_json(j.at("model"));
  if (j.contains("axes")) {
    for (const Json& a : j.at("axes")) {
      check_keys(a, {"name", "start", "stop", "steps"}, "axis");
      SweepAxis axis;
      axis.name = a.at("name").get<std::string>();
      axis.start = a.at("start").get<double>();
      axis.stop = a.value("stop", axis.start);
      axis.steps = a.value("steps", std::size_t{1});
      config.axes.push_back(axis);
    }
  }
  if (j.contains("t_grid")) {
    const Json& g = j.at("t_grid");
    check_keys(g, {"start", "stop", "steps", "values"}, "t_grid");
    if (g.contains("start")) config.t_grid.start = g.at("start").get<double>();
    if (g.contains("stop")) config.t_grid.stop = g.at("stop").get<double>();
    if (g.contains("steps")) config.t_grid.steps = g.at("steps").get<std::size_t>();
    if (g.contains("values")) config.t_grid.values = g.at("values").get<std::vector<double>>();
  }
  config.output = j.value("output", config.output);
  config.format = j.value("format", config.format);
  config.jobs = j.value("jobs", config.jobs);
  if (config.format != "csv" && config.format != "json") {
    throw ParameterError("format must be csv or json");
  }
  if (config.jobs == 0) throw ParameterError("jobs must be positive");
  return config;
}

void write_atomically(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw ParameterError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ParameterError("cannot rename to '" + path + "': " + ec.message());
  }
}

SweepSummary run_sweep(const SweepConfig& config, double tol) {
  if (config.format != "csv" && config.format != "json") throw ParameterError("format must be csv or json");
  std::vector<std::vector<double>> axis_points;
  for (const SweepAxis& axis : config.axes) {
    ModelSpec probe = config.model;
    set_parameter(probe, axis.name, axis.start);
    axis_points.push_back(axis.points());
  }

  std::size_t total = 1;
  for (const auto& pts : axis_points) total *= pts.size();
  fs::create_directories(config.output);

  std::vector<PointResult> results(total);
  std::vector<std::vector<double>> coords(total);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      std::size_t rem = idx;
      std::vector<double> point(axis_points.size());
      for (std::size_t a = axis_points.size(); a-- > 0;) {
        point[a] = axis_points[a][rem % axis_points[a].size()];
        rem /= axis_points[a].size();
      }
      coords[idx] = point;
      std::string stem = "sweep";
      for (std::size_t a = 0; a < point.size(); ++a) {
        stem += (a == 0 ? "_" : "_") + config.axes[a].name + "=" + format_value(point[a]);
      }
      PointResult& r = results[idx];
      r.file = stem + "." + config.format;
      try {
        ModelSpec spec = config.model;
        for (std::size_t a = 0; a < point.size(); ++a) set_parameter(spec, config.axes[a].name, point[a]);
        spec.validate();
        const Pipeline pipe = build_pipeline(spec, tol);
        const TransitionTable table = transition_table(pipe.model.sym, pipe.basis, pipe.eigensystem, pipe.c,
                                                       config.t_grid.resolve(pipe.eigensystem));
        write_atomically((fs::path(config.output) / r.file).string(), render_table(table, config.format));
        r.status = "ok";
      } catch (const PtBrokenError& e) {
        r.status = "broken";
        r.message = e.what();
        r.file.clear();
      } catch (const std::exception& e) {
        r.status = "error";
        r.message = e.what();
        r.file.clear();
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, total));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  SweepSummary summary;
  summary.points = total;
  Json index{{"model", spec_to_json(config.model)}, {"format", config.format}, {"points", Json::array()}};
  Json axes = Json::array();
  for (const SweepAxis& a : config.axes) axes.push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"steps", a.steps}});
  index["axes"] = axes;
  for (std::size_t i = 0; i < total; ++i) {
    Json entry{{"status", results[i].status}};
    Json params = Json::object();
    for (std::size_t a = 0; a < config.axes.size(); ++a) params[config.axes[a].name] = coords[i][a];
    entry["parameters"] = params;
    if (!results[i].file.empty()) entry["file"] = results[i].file;
    if (!results[i].message.empty()) entry["message"] = results[i].message;
    index["points"].push_back(entry);
    if (results[i].status == "ok") ++summary.tables;
    if (results[i].status == "broken") ++summary.broken;
    if (results[i].status == "error") ++summary.errors;
  }
  write_atomically((fs::path(config.output) / "index.json").string(), index.dump(2) + "\n");
  return summary;
}

}  // namespace ptosc::cli
