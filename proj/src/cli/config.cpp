#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace flq::cli {

namespace {

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw ValidationError("config: unknown key '" + key + "' in " + where);
}

double require_number(const Json& obj, const std::string& key,
                      const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ValidationError("config: " + where + " requires numeric '" + key +
                          "'");
  return obj[key].get<double>();
}

double number_or(const Json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ValidationError("config: '" + key + "' must be numeric");
  return obj[key].get<double>();
}

Complex entry_from_json(const Json& j, const char* what) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ValidationError(std::string("config: ") + what +
                        ": complex entries must be numbers or [re, im] pairs");
}

SpectralDensity bath_from_json(const Json& j,
                               const std::filesystem::path& base_dir) {
  const std::string type = j.value("type", "");
  if (type == "ohmic-cubed-thermal") {
    reject_unknown_keys(j, {"coupling", "type", "A", "beta"}, "bath");
    return SpectralDensity::ohmic_cubed_thermal(
        require_number(j, "A", "bath"), require_number(j, "beta", "bath"));
  }
  if (type == "vacuum-cutoff") {
    reject_unknown_keys(j, {"coupling", "type", "A"}, "bath");
    return SpectralDensity::vacuum_cutoff(require_number(j, "A", "bath"));
  }
  if (type == "flat") {
    reject_unknown_keys(j, {"coupling", "type", "gamma0"}, "bath");
    return SpectralDensity::flat(require_number(j, "gamma0", "bath"));
  }
  if (type == "tabulated") {
    reject_unknown_keys(j, {"coupling", "type", "points", "file"}, "bath");
    std::vector<std::pair<double, double>> pts;
    if (j.contains("points")) {
      for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2)
          throw ValidationError("config: tabulated bath points must be [x, gamma]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    } else if (j.contains("file")) {
      pts = read_two_column_csv(base_dir / j["file"].get<std::string>());
    } else {
      throw ValidationError("config: tabulated bath needs 'points' or 'file'");
    }
    return SpectralDensity::tabulated(std::move(pts));
  }
  throw ValidationError("config: unknown bath type '" + type + "'");
}

ModelSpec model_from_json(const Json& m, const std::filesystem::path& base_dir) {
  if (!m.is_object()) throw ValidationError("config: 'model' must be an object");
  if (m.contains("preset")) {
    reject_unknown_keys(m, {"preset", "params"}, "model");
    const std::string preset = m["preset"].get<std::string>();
    const Json p = m.value("params", Json::object());
    if (preset == "tls_cosine") {
      reject_unknown_keys(p, {"omega0", "Omega", "lambda", "A", "beta_e"},
                          "model.params");
      return tls_cosine(require_number(p, "omega0", "tls_cosine"),
                        require_number(p, "Omega", "tls_cosine"),
                        require_number(p, "lambda", "tls_cosine"),
                        require_number(p, "A", "tls_cosine"),
                        require_number(p, "beta_e", "tls_cosine"));
    }
    if (preset == "driven_oscillator") {
      reject_unknown_keys(p, {"omega", "Omega", "g", "n_trunc", "A", "beta_R"},
                          "model.params");
      return driven_oscillator(
          require_number(p, "omega", "driven_oscillator"),
          require_number(p, "Omega", "driven_oscillator"),
          require_number(p, "g", "driven_oscillator"),
          static_cast<Eigen::Index>(
              require_number(p, "n_trunc", "driven_oscillator")),
          require_number(p, "A", "driven_oscillator"),
          require_number(p, "beta_R", "driven_oscillator"));
    }
    if (preset == "tls_two_baths") {
      reject_unknown_keys(p,
                          {"omega0", "Omega", "g", "A", "beta_e", "gamma_d",
                           "gamma_d_file", "beta_d"},
                          "model.params");
      std::optional<double> beta_e;
      if (p.contains("beta_e")) beta_e = p["beta_e"].get<double>();
      std::optional<double> beta_d;
      if (p.contains("beta_d")) beta_d = p["beta_d"].get<double>();
      std::vector<std::pair<double, double>> table;
      if (p.contains("gamma_d")) {
        for (const auto& q : p["gamma_d"])
          table.emplace_back(q[0].get<double>(), q[1].get<double>());
      } else if (p.contains("gamma_d_file")) {
        table = read_two_column_csv(base_dir /
                                    p["gamma_d_file"].get<std::string>());
      } else {
        throw ValidationError(
            "config: tls_two_baths needs 'gamma_d' or 'gamma_d_file'");
      }
      return tls_two_baths(require_number(p, "omega0", "tls_two_baths"),
                           require_number(p, "Omega", "tls_two_baths"),
                           require_number(p, "g", "tls_two_baths"),
                           require_number(p, "A", "tls_two_baths"), beta_e,
                           std::move(table), beta_d);
    }
    throw ValidationError("config: unknown model preset '" + preset + "'");
  }

  // explicit model
  reject_unknown_keys(
      m, {"name", "dim", "period", "modes", "couplings", "baths",
          "coupling_constant"},
      "model");
  const auto dim =
      static_cast<Eigen::Index>(require_number(m, "dim", "model"));
  const double period = require_number(m, "period", "model");
  if (!m.contains("modes") || !m["modes"].is_array())
    throw ValidationError("config: explicit model requires 'modes' array");
  std::map<int, Matrix> modes;
  for (const auto& mode : m["modes"]) {
    reject_unknown_keys(mode, {"q", "matrix"}, "model.modes[]");
    const int q = mode.at("q").get<int>();
    if (modes.count(q))
      throw ValidationError("config: duplicate mode q=" + std::to_string(q));
    modes[q] = matrix_from_json(mode.at("matrix"), "model mode");
  }

  ModelSpec spec;
  spec.name = m.value("name", std::string("custom"));
  spec.hamiltonian =
      std::make_shared<PeriodicHamiltonian>(dim, period, std::move(modes));
  if (m.contains("couplings")) {
    for (const auto& c : m["couplings"]) {
      reject_unknown_keys(c, {"label", "matrix"}, "model.couplings[]");
      spec.couplings.add(c.at("label").get<std::string>(),
                         matrix_from_json(c.at("matrix"), "coupling"));
    }
  }
  if (m.contains("baths")) {
    for (const auto& b : m["baths"]) {
      if (!b.contains("coupling"))
        throw ValidationError("config: bath entry requires 'coupling' label");
      spec.baths.bind(b.at("coupling").get<std::string>(),
                      bath_from_json(b, base_dir));
    }
  }
  spec.coupling_constant = number_or(m, "coupling_constant", 1.0);
  return spec;
}

std::optional<LambShiftConfig> lamb_from_json(const Json& doc) {
  if (!doc.contains("lamb_shift")) return {};
  const Json& j = doc["lamb_shift"];
  reject_unknown_keys(j,
                      {"method", "domain", "base_points", "pv_tol",
                       "max_refinements", "table"},
                      "lamb_shift");
  LambShiftConfig cfg;
  const std::string method = j.value("method", "zero");
  if (method == "zero") {
    cfg.method = LambShiftMethod::kZero;
  } else if (method == "principal-value") {
    cfg.method = LambShiftMethod::kPrincipalValue;
    if (j.contains("domain")) {
      cfg.domain_lo = j["domain"][0].get<double>();
      cfg.domain_hi = j["domain"][1].get<double>();
    }
    cfg.base_points = static_cast<int>(number_or(j, "base_points", 2000));
    cfg.pv_tol = number_or(j, "pv_tol", 1e-6);
    cfg.max_refinements = static_cast<int>(number_or(j, "max_refinements", 6));
  } else if (method == "user-table") {
    cfg.method = LambShiftMethod::kUserTable;
    if (!j.contains("table"))
      throw ValidationError("config: lamb_shift user-table requires 'table'");
    LambShiftTable table;
    for (const auto& l : j["table"].at("labels"))
      table.labels.push_back(l.get<std::string>());
    for (const auto& e : j["table"].at("entries"))
      table.sigma[e.at("x").get<double>()] =
          matrix_from_json(e.at("matrix"), "lamb_shift table");
    table.validate();
    cfg.user_table = std::move(table);
  } else {
    throw ValidationError("config: unknown lamb_shift method '" + method + "'");
  }
  return cfg;
}

NumericsConfig numerics_from_json(const Json& doc) {
  NumericsConfig n;
  if (!doc.contains("numerics")) return n;
  const Json& j = doc["numerics"];
  reject_unknown_keys(j,
                      {"n_steps", "method", "q_max", "n_samples",
                       "freq_tol_rel", "seed", "t0", "reproject"},
                      "numerics");
  n.propagator.steps_per_period =
      static_cast<int>(number_or(j, "n_steps", 4096));
  const std::string method = j.value("method", "magnus4");
  if (method == "magnus4")
    n.propagator.method = StepMethod::kCommutatorFreeMagnus4;
  else if (method == "midpoint")
    n.propagator.method = StepMethod::kMidpointExponential;
  else
    throw ValidationError("config: unknown propagator method '" + method + "'");
  if (j.contains("reproject")) n.propagator.reproject = j["reproject"].get<bool>();
  n.harmonics.q_max = static_cast<int>(number_or(j, "q_max", 8));
  n.harmonics.n_samples = static_cast<int>(number_or(j, "n_samples", 64));
  n.harmonics.freq_tol_rel = number_or(j, "freq_tol_rel", 1e-7);
  n.t0 = number_or(j, "t0", 0.0);
  if (j.contains("seed")) n.seed = j["seed"].get<uint64_t>();
  n.propagator.validate();
  return n;
}

Matrix named_observable(const std::string& name, Eigen::Index dim) {
  if (name == "sx" || name == "sy" || name == "sz") {
    if (dim != 2)
      throw ValidationError("config: Pauli observable '" + name +
                            "' requires a two-level model");
    if (name == "sx") return pauli_x();
    if (name == "sy") return pauli_y();
    return pauli_z();
  }
  if (name == "n") return number_operator(dim);
  throw ValidationError("config: unknown named observable '" + name + "'");
}

EvolveConfig evolve_from_json(const Json& doc, const ModelSpec& model,
                              double t0) {
  EvolveConfig e;
  if (!doc.contains("evolve"))
    throw ValidationError("config: 'evolve' section required for this command");
  const Json& j = doc["evolve"];
  reject_unknown_keys(j,
                      {"times", "t_final", "t_final_periods", "n_times",
                       "initial_state", "entries", "observables"},
                      "evolve");
  const double T = model.hamiltonian->period();
  if (j.contains("times")) {
    for (const auto& t : j["times"]) e.times.push_back(t.get<double>());
  } else {
    double t_final;
    if (j.contains("t_final_periods"))
      t_final = t0 + T * j["t_final_periods"].get<double>();
    else
      t_final = require_number(j, "t_final", "evolve");
    const int n = static_cast<int>(number_or(j, "n_times", 65));
    if (n < 1) throw ValidationError("config: evolve.n_times must be >= 1");
    for (int k = 0; k < n; ++k)
      e.times.push_back(t0 + (t_final - t0) * k / std::max(1, n - 1));
  }

  if (j.contains("initial_state")) {
    if (j["initial_state"].is_string())
      e.initial_state = j["initial_state"].get<std::string>();
    else
      e.initial_matrix = matrix_from_json(j["initial_state"], "initial_state");
  }
  const Eigen::Index d = model.dim();
  if (j.contains("entries")) {
    for (const auto& p : j["entries"]) {
      const auto i = p.at(0).get<Eigen::Index>();
      const auto jj = p.at(1).get<Eigen::Index>();
      if (i < 0 || i >= d || jj < 0 || jj >= d)
        throw ValidationError("config: evolve.entries index out of range");
      e.entries.emplace_back(i, jj);
    }
  } else {
    for (Eigen::Index k = 0; k < d; ++k) e.entries.emplace_back(k, k);
  }
  if (j.contains("observables")) {
    for (const auto& o : j["observables"]) {
      if (o.is_string()) {
        e.observables[o.get<std::string>()] =
            named_observable(o.get<std::string>(), d);
      } else {
        reject_unknown_keys(o, {"name", "op", "matrix"}, "evolve.observables[]");
        const std::string name = o.at("name").get<std::string>();
        if (o.contains("op"))
          e.observables[name] = named_observable(o["op"].get<std::string>(), d);
        else
          e.observables[name] = matrix_from_json(o.at("matrix"), "observable");
      }
    }
  }
  return e;
}

std::optional<SweepConfig> sweep_from_json(const Json& doc) {
  if (!doc.contains("sweep")) return {};
  const Json& j = doc["sweep"];
  reject_unknown_keys(j, {"command", "axes"}, "sweep");
  SweepConfig s;
  s.command = j.value("command", std::string("verify"));
  if (s.command == "sweep")
    throw ValidationError("config: sweep.command cannot itself be 'sweep'");
  if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].empty())
    throw ValidationError("config: sweep requires a non-empty 'axes' array");
  for (const auto& a : j["axes"]) {
    reject_unknown_keys(a, {"path", "values"}, "sweep.axes[]");
    SweepAxis axis;
    axis.path = a.at("path").get<std::string>();
    for (const auto& v : a.at("values")) axis.values.push_back(v);
    if (axis.values.empty())
      throw ValidationError("config: sweep axis has no values");
    s.axes.push_back(std::move(axis));
  }
  return s;
}

Json* navigate(Json& doc, const std::string& dotted, bool create) {
  Json* cur = &doc;
  std::stringstream ss(dotted);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) return nullptr;
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!cur->is_object()) return nullptr;
    if (!cur->contains(parts[i])) {
      if (!create) return nullptr;
      (*cur)[parts[i]] = Json::object();
    }
    cur = &(*cur)[parts[i]];
  }
  if (!cur->is_object()) return nullptr;
  if (!cur->contains(parts.back()) && !create) return nullptr;
  return &(*cur)[parts.back()];
}

}  // namespace

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ValidationError("--set expects key=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  Json* slot = navigate(doc, path, true);
  if (!slot)
    throw ValidationError("--set path does not resolve: '" + path + "'");
  const Json parsed = Json::parse(value, nullptr, false);
  *slot = parsed.is_discarded() ? Json(value) : parsed;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw ValidationError(std::string("config: ") + what +
                          ": matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ValidationError(std::string("config: ") + what +
                            ": ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = entry_from_json(j[i][k], what);
  }
  return m;
}

std::vector<std::pair<double, double>> read_two_column_csv(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw ValidationError("config: cannot open CSV file " + file.string());
  std::vector<std::pair<double, double>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, g;
    if (ss >> x >> g) out.emplace_back(x, g);
  }
  if (out.size() < 2)
    throw ValidationError("config: CSV " + file.string() +
                          " has fewer than 2 data rows");
  return out;
}

RunConfig parse_config(const Json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object())
    throw ValidationError("config: document must be a JSON object");
  reject_unknown_keys(doc,
                      {"schema_version", "model", "lamb_shift", "numerics",
                       "evolve", "steady", "verify", "sweep", "output"},
                      "top level");
  if (!doc.contains("schema_version") || doc["schema_version"] != 1)
    throw ValidationError("config: schema_version must be 1");
  if (!doc.contains("model"))
    throw ValidationError("config: 'model' section required");

  RunConfig cfg;
  cfg.raw = doc;
  cfg.model = model_from_json(doc["model"], base_dir);
  cfg.lamb_shift = lamb_from_json(doc);
  cfg.numerics = numerics_from_json(doc);
  if (doc.contains("evolve"))
    cfg.evolve = evolve_from_json(doc, cfg.model, cfg.numerics.t0);
  if (doc.contains("steady")) {
    reject_unknown_keys(doc["steady"], {"cycle_samples"}, "steady");
    cfg.steady_cycle_samples = static_cast<int>(
        number_or(doc["steady"], "cycle_samples", 16));
  }
  if (doc.contains("verify"))
    reject_unknown_keys(doc["verify"], {}, "verify");
  cfg.sweep = sweep_from_json(doc);
  if (doc.contains("output")) {
    reject_unknown_keys(doc["output"], {"dir"}, "output");
    if (doc["output"].contains("dir"))
      cfg.output_dir = doc["output"]["dir"].get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open config file " + file.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc, file.parent_path());
}

}  // namespace flq::cli
