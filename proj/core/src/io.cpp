#include "ptosc/io.hpp"

#include <cmath>
#include <set>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

double number(const Json& j, const char* key) {
  if (!j.is_number()) throw ParameterError(std::string("'") + key + "' must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParameterError(std::string("'") + key + "' must be finite");
  return x;
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ParameterError(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

double field_or(const Json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), key) : fallback;
}

Json defect_value(double d) { return std::isfinite(d) ? Json(d) : Json(nullptr); }

}  // namespace

Json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return checked_complex(number(j, "value"), 0.0);
  if (!j.is_object() || !j.contains("re")) throw ParameterError("complex value must be {re, im} or a number");
  return checked_complex(number(j.at("re"), "re"), j.contains("im") ? number(j.at("im"), "im") : 0.0);
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

CMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array() || rows.empty()) throw ParameterError("matrix must be a non-empty array of rows");
  const std::size_t nr = rows.size();
  const std::size_t nc = rows[0].size();
  std::vector<Complex> entries;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != nc) throw ParameterError("matrix rows must have equal length");
    for (const Json& z : row) entries.push_back(complex_from_json(z));
  }
  return CMatrix(nr, nc, std::move(entries));
}

Json spec_to_json(const ModelSpec& spec) {
  Json out{{"model", std::string(to_string(spec.kind))}};
  switch (spec.kind) {
    case ModelKind::Sfdm: {
      const SfdmParams& p = spec.sfdm_params();
      out["params"] = {{"chi", p.chi}, {"psi", p.psi}, {"theta", p.theta}, {"phi", p.phi}};
      break;
    }
    case ModelKind::Generic: {
      const GenericTOddParams& p = spec.generic_params();
      out["params"] = {{"a", matrix_to_json(p.a)}, {"d", matrix_to_json(p.d)}, {"b", matrix_to_json(p.b)}};
      break;
    }
    default: {
      const Dirac8Params& p = spec.dirac_params();
      out["params"] = {{"m0", p.m0}, {"m1", p.m1}, {"m2", p.m2}, {"m3", p.m3}};
      out["momentum"] = {{"p", p.p}, {"theta", p.theta_p}, {"phi", p.phi_p}};
      break;
    }
  }
  return out;
}

ModelSpec spec_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("model")) throw ParameterError("model spec needs a 'model' field");
    reject_unknown_keys(j, {"model", "params", "momentum"}, "model spec");
    const ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
    const Json params = j.value("params", Json::object());
    if (!params.is_object()) throw ParameterError("'params' must be an object");
    ModelSpec spec;
    switch (kind) {
      case ModelKind::Sfdm: {
        reject_unknown_keys(params, {"chi", "psi", "theta", "phi"}, "sfdm params");
        spec = ModelSpec::sfdm({field_or(params, "chi", 0.0), field_or(params, "psi", 0.0),
                                field_or(params, "theta", 0.0), field_or(params, "phi", 0.0)});
        break;
      }
      case ModelKind::Generic: {
        reject_unknown_keys(params, {"a", "d", "b", "a0", "d0", "b0", "b1", "b2", "b3"}, "generic params");
        GenericTOddParams g = GenericTOddParams::from_scalars(
            field_or(params, "a0", 1.0), field_or(params, "d0", -1.0),
            {field_or(params, "b0", 0.0), field_or(params, "b1", 0.0), field_or(params, "b2", 0.0),
             field_or(params, "b3", 0.0)});
        if (params.contains("a")) g.a = matrix_from_json(params.at("a"));
        if (params.contains("d")) g.d = matrix_from_json(params.at("d"));
        if (params.contains("b")) g.b = matrix_from_json(params.at("b"));
        spec = ModelSpec::generic(g);
        break;
      }
      default: {
        reject_unknown_keys(params, {"m0", "m1", "m2", "m3"}, "dirac params");
        Dirac8Params d;
        d.m0 = field_or(params, "m0", 1.0);
        d.m1 = field_or(params, "m1", 0.0);
        d.m2 = field_or(params, "m2", 0.0);
        d.m3 = field_or(params, "m3", 0.0);
        if (j.contains("momentum")) {
          const Json& mom = j.at("momentum");
          reject_unknown_keys(mom, {"p", "theta", "phi"}, "momentum");
          d.p = field_or(mom, "p", 0.0);
          d.theta_p = field_or(mom, "theta", 0.0);
          d.phi_p = field_or(mom, "phi", 0.0);
        }
        spec = ModelSpec::dirac(kind, d);
        break;
      }
    }
    spec.validate();
    return spec;
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("malformed model spec: ") + e.what());
  }
}

Json report_to_json(const CheckReport& r) {
  Json out{{"name", r.name},
           {"passed", r.passed},
           {"defect", defect_value(r.defect)},
           {"tolerance", r.tolerance},
           {"skipped", r.skipped}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string to_json_lines(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const CheckReport& r : reports) out += report_to_json(r).dump() + '\n';
  return out;
}

Json table_to_json(const TransitionTable& table) {
  Json probs = Json::array();
  for (const ProbabilityMatrix& pm : table.probs) probs.push_back(pm);
  return {{"t_grid", table.t_grid}, {"probs", probs}};
}

Json c_operator_to_json(const COperator& c) {
  Json out{{"matrix", matrix_to_json(c.matrix)}, {"reflected", matrix_to_json(c.reflected)}};
  if (c.source_model) out["source_model"] = spec_to_json(*c.source_model);
  return out;
}

Json eigensystem_to_json(const EigenSystem& es) {
  Json pairs = Json::array();
  for (const EigenPair& p : es.pairs) {
    Json ket = Json::array();
    for (const Complex& z : p.ket().entries()) ket.push_back(complex_to_json(z));
    pairs.push_back({{"label", p.label}, {"value", complex_to_json(p.value)}, {"pt_sign", p.pt_sign}, {"ket", ket}});
  }
  return {{"momentum", es.momentum}, {"pairs", pairs}, {"clusters", es.clusters}};
}

}  // namespace ptosc
