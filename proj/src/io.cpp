#include "seqlevy/io.hpp"

#include <cstdio>
#include <fstream>

namespace seqlevy::io {

using nlohmann::json;

namespace {

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
}

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  expect_object(j, where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double field_double(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return as_double(j.at(key), where + "." + key);
}

double field_double_or(const json& j, const char* key, double fallback,
                       const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_double(j.at(key), where + "." + key);
}

std::uint64_t field_u64(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError(where + "." + key + ": expected an integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0)
    throw ConfigError(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::vector<double> as_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(as_double(v, where + "[]"));
  return out;
}

// Global truncation policy: shorter vectors are zero-padded to D, longer
// ones rejected.
std::vector<double> padded(std::vector<double> v, std::size_t dim,
                           const std::string& where) {
  if (v.size() > dim)
    throw ConfigError(where + ": vector longer than the truncation D");
  v.resize(dim, 0.0);
  return v;
}

}  // namespace

LevyMeasure parse_levy_measure(const json& j, std::size_t dim) {
  expect_keys(j, {"atoms", "axes"}, "levy");
  std::vector<Atom> atoms;
  std::vector<PowerLawAxis> powers;
  std::vector<AtomAxis> atom_axes;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ConfigError("levy.atoms: expected an array");
    for (const json& a : j.at("atoms")) {
      expect_keys(a, {"point", "mass"}, "levy.atoms[]");
      if (!a.contains("point") || !a.contains("mass"))
        throw ConfigError("levy.atoms[]: needs 'point' and 'mass'");
      Atom atom;
      atom.point.coords = padded(as_vector(a.at("point"), "levy.atoms[].point"), dim,
                                 "levy.atoms[].point");
      atom.mass = as_double(a.at("mass"), "levy.atoms[].mass");
      atoms.push_back(std::move(atom));
    }
  }
  if (j.contains("axes")) {
    if (!j.at("axes").is_array()) throw ConfigError("levy.axes: expected an array");
    for (const json& a : j.at("axes")) {
      if (!a.is_object() || !a.contains("kind"))
        throw ConfigError("levy.axes[]: needs a 'kind'");
      const std::string kind = a.at("kind").get<std::string>();
      if (kind == "power") {
        expect_keys(a, {"n", "kind", "c", "alpha", "xmax"}, "levy.axes[power]");
        PowerLawAxis p;
        p.axis = static_cast<std::size_t>(field_u64(a, "n", "levy.axes[power]"));
        p.c = field_double(a, "c", "levy.axes[power]");
        p.alpha = field_double(a, "alpha", "levy.axes[power]");
        p.xmax = field_double(a, "xmax", "levy.axes[power]");
        powers.push_back(p);
      } else if (kind == "atoms") {
        expect_keys(a, {"n", "kind", "atoms"}, "levy.axes[atoms]");
        AtomAxis ax;
        ax.axis = static_cast<std::size_t>(field_u64(a, "n", "levy.axes[atoms]"));
        if (!a.contains("atoms") || !a.at("atoms").is_array())
          throw ConfigError("levy.axes[atoms]: needs an 'atoms' array");
        for (const json& pair : a.at("atoms")) {
          if (!pair.is_array() || pair.size() != 2)
            throw ConfigError("levy.axes[atoms]: entries are [x, mass] pairs");
          ax.atoms.push_back(AxisAtom{as_double(pair[0], "levy.axes[atoms].x"),
                                      as_double(pair[1], "levy.axes[atoms].mass")});
        }
        atom_axes.push_back(std::move(ax));
      } else {
        throw ConfigError("levy.axes[]: unknown kind '" + kind + "'");
      }
    }
  }
  return LevyMeasure(dim, std::move(atoms), std::move(powers), std::move(atom_axes));
}

json to_json(const LevyMeasure& nu) {
  json atoms = json::array();
  for (const Atom& a : nu.atoms())
    atoms.push_back(json{{"point", a.point.coords}, {"mass", a.mass}});
  json axes = json::array();
  for (const PowerLawAxis& p : nu.power_axes())
    axes.push_back(json{{"n", p.axis},
                        {"kind", "power"},
                        {"c", p.c},
                        {"alpha", p.alpha},
                        {"xmax", p.xmax}});
  for (const AtomAxis& ax : nu.atom_axes()) {
    json pairs = json::array();
    for (const AxisAtom& a : ax.atoms) pairs.push_back(json::array({a.x, a.mass}));
    axes.push_back(json{{"n", ax.axis}, {"kind", "atoms"}, {"atoms", pairs}});
  }
  return json{{"atoms", atoms}, {"axes", axes}};
}

CharTriplet parse_triplet(const json& j, std::size_t dim) {
  expect_keys(j, {"mean", "cov", "levy", "r"}, "triplet");
  DualPoint mean;
  mean.coords.assign(dim, 0.0);
  if (j.contains("mean"))
    mean.coords = padded(as_vector(j.at("mean"), "triplet.mean"), dim, "triplet.mean");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  if (j.contains("cov")) {
    const json& rows = j.at("cov");
    if (!rows.is_array() || rows.size() != dim)
      throw ConfigError("triplet.cov: expected a D x D matrix");
    for (std::size_t i = 0; i < dim; ++i) {
      const std::vector<double> row = as_vector(rows[i], "triplet.cov[]");
      if (row.size() != dim) throw ConfigError("triplet.cov: expected a D x D matrix");
      for (std::size_t k = 0; k < dim; ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
  }

  LevyMeasure levy(dim);
  if (j.contains("levy")) levy = parse_levy_measure(j.at("levy"), dim);

  const double r = field_double_or(j, "r", 0.0, "triplet");
  return CharTriplet(std::move(mean), CovarianceForm(std::move(m)), std::move(levy),
                     SeminormIndex{r});
}

json to_json(const CharTriplet& triplet) {
  json cov = json::array();
  const Eigen::MatrixXd& m = triplet.cov.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    cov.push_back(row);
  }
  return json{{"mean", triplet.mean.coords},
              {"cov", cov},
              {"levy", to_json(triplet.levy)},
              {"r", triplet.r.r}};
}

SimConfig parse_sim_config(const json& j) {
  expect_keys(j,
              {"horizon", "grid_dt", "shells", "truncation", "master_seed",
               "replicas"},
              "sim");
  SimConfig cfg;
  cfg.horizon = field_double(j, "horizon", "sim");
  cfg.grid_dt = field_double(j, "grid_dt", "sim");
  cfg.shells = static_cast<std::size_t>(field_u64(j, "shells", "sim"));
  cfg.truncation = static_cast<std::size_t>(field_u64(j, "truncation", "sim"));
  cfg.master_seed = field_u64(j, "master_seed", "sim");
  cfg.replicas = static_cast<std::size_t>(field_u64(j, "replicas", "sim"));
  return cfg;
}

json to_json(const SimConfig& cfg) {
  return json{{"horizon", cfg.horizon},     {"grid_dt", cfg.grid_dt},
              {"shells", cfg.shells},       {"truncation", cfg.truncation},
              {"master_seed", cfg.master_seed}, {"replicas", cfg.replicas}};
}

Region RegionSpec::resolve(SeminormIndex default_r) const {
  const SeminormIndex idx = r ? SeminormIndex{*r} : default_r;
  if (kind == "ball") return Region::ball(radius, idx);
  if (kind == "complement") return Region::complement(radius, idx);
  if (kind == "shell") return Region::shell(lo, hi, idx);
  throw ConfigError("region: unknown kind '" + kind + "'");
}

namespace {

RegionSpec parse_region(const json& j) {
  expect_keys(j, {"kind", "radius", "lo", "hi", "r"}, "region");
  RegionSpec spec;
  if (!j.contains("kind")) throw ConfigError("region: needs a 'kind'");
  spec.kind = j.at("kind").get<std::string>();
  spec.radius = field_double_or(j, "radius", 0.0, "region");
  spec.lo = field_double_or(j, "lo", 0.0, "region");
  spec.hi = field_double_or(j, "hi", 0.0, "region");
  if (j.contains("r")) spec.r = as_double(j.at("r"), "region.r");
  return spec;
}

json to_json(const RegionSpec& spec) {
  json out{{"kind", spec.kind}};
  if (spec.kind == "shell") {
    out["lo"] = spec.lo;
    out["hi"] = spec.hi;
  } else {
    out["radius"] = spec.radius;
  }
  if (spec.r) out["r"] = *spec.r;
  return out;
}

TestSelector parse_selector(const json& j) {
  if (!j.is_object() || !j.contains("test"))
    throw ConfigError("tests[]: each selector needs a 'test' name");
  TestSelector sel;
  sel.test = j.at("test").get<std::string>();
  const std::string where = "tests[" + sel.test + "]";

  auto common = [&](std::initializer_list<const char*> keys) {
    std::vector<const char*> all{"test", "negative_control"};
    all.insert(all.end(), keys.begin(), keys.end());
    expect_object(j, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = false;
      for (const char* k : all)
        if (it.key() == k) {
          known = true;
          break;
        }
      if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
  };

  if (j.contains("negative_control")) {
    if (!j.at("negative_control").is_boolean())
      throw ConfigError(where + ".negative_control: expected a boolean");
    sel.negative_control = j.at("negative_control").get<bool>();
  }

  if (sel.test == "ecf" || sel.test == "moments") {
    common({"t"});
    sel.t = field_double_or(j, "t", 1.0, where);
  } else if (sel.test == "independence") {
    common({"phi", "psi"});
    sel.phi = static_cast<std::size_t>(j.contains("phi") ? field_u64(j, "phi", where) : 0);
    sel.psi = static_cast<std::size_t>(j.contains("psi") ? field_u64(j, "psi", where) : 0);
  } else if (sel.test == "semigroup") {
    common({"s", "t"});
    sel.s = field_double_or(j, "s", 0.3, where);
    sel.t = field_double_or(j, "t", 0.7, where);
  } else if (sel.test == "infdiv") {
    common({"n"});
    sel.n = static_cast<unsigned>(j.contains("n") ? field_u64(j, "n", where) : 2);
  } else if (sel.test == "jump_count") {
    common({"t", "region"});
    sel.t = field_double_or(j, "t", 1.0, where);
    if (j.contains("region")) sel.region = parse_region(j.at("region"));
  } else if (sel.test == "fernique") {
    common({"eps", "p_index", "n_list"});
    sel.eps = field_double_or(j, "eps", 0.1, where);
    sel.p_index = field_double_or(j, "p_index", 0.0, where);
    if (j.contains("n_list")) {
      if (!j.at("n_list").is_array()) throw ConfigError(where + ".n_list: expected an array");
      for (const json& v : j.at("n_list"))
        sel.n_list.push_back(static_cast<unsigned>(v.get<std::uint64_t>()));
    }
  } else if (sel.test == "minlos") {
    common({"eps", "p_index", "q_index", "measure"});
    sel.eps = field_double_or(j, "eps", 0.1, where);
    sel.p_index = field_double_or(j, "p_index", 0.0, where);
    sel.q_index = field_double_or(j, "q_index", 1.0, where);
    if (j.contains("measure")) sel.measure = j.at("measure");
  } else {
    throw ConfigError("tests[]: unknown test '" + sel.test + "'");
  }
  return sel;
}

json to_json(const TestSelector& sel) {
  json out{{"test", sel.test}};
  if (sel.negative_control) out["negative_control"] = true;
  if (sel.test == "ecf" || sel.test == "moments") {
    out["t"] = sel.t;
  } else if (sel.test == "independence") {
    out["phi"] = sel.phi;
    out["psi"] = sel.psi;
  } else if (sel.test == "semigroup") {
    out["s"] = sel.s;
    out["t"] = sel.t;
  } else if (sel.test == "infdiv") {
    out["n"] = sel.n;
  } else if (sel.test == "jump_count") {
    out["t"] = sel.t;
    if (sel.region) out["region"] = to_json(*sel.region);
  } else if (sel.test == "fernique") {
    out["eps"] = sel.eps;
    out["p_index"] = sel.p_index;
    out["n_list"] = sel.n_list;
  } else if (sel.test == "minlos") {
    out["eps"] = sel.eps;
    out["p_index"] = sel.p_index;
    out["q_index"] = sel.q_index;
    if (sel.measure) out["measure"] = *sel.measure;
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  expect_keys(j, {"triplet", "sim", "phis", "times", "tests", "output_dir"},
              "config");
  if (!j.contains("sim")) throw ConfigError("config: missing 'sim'");
  if (!j.contains("triplet")) throw ConfigError("config: missing 'triplet'");

  RunConfig cfg;
  cfg.sim = parse_sim_config(j.at("sim"));
  cfg.sim.check();
  const std::size_t dim = cfg.sim.truncation;

  // Schema errors escape as ConfigError; domain validation failures are
  // recorded so `validate` can report them with exit code 1.
  try {
    cfg.triplet = parse_triplet(j.at("triplet"), dim);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    cfg.triplet_error = e.what();
  }

  if (j.contains("phis")) {
    if (!j.at("phis").is_array()) throw ConfigError("config.phis: expected an array");
    for (const json& v : j.at("phis")) {
      TestFunction phi;
      phi.coords = padded(as_vector(v, "config.phis[]"), dim, "config.phis[]");
      cfg.phis.push_back(std::move(phi));
    }
  }
  if (j.contains("times")) cfg.times = as_vector(j.at("times"), "config.times");
  if (j.contains("tests")) {
    if (!j.at("tests").is_array()) throw ConfigError("config.tests: expected an array");
    for (const json& v : j.at("tests")) cfg.tests.push_back(parse_selector(v));
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string())
      throw ConfigError("config.output_dir: expected a string");
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  try {
    return parse_run_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema error: ") + e.what());
  }
}

json to_json(const RunConfig& cfg) {
  json out{{"sim", to_json(cfg.sim)}};
  if (cfg.triplet) out["triplet"] = to_json(*cfg.triplet);
  json phis = json::array();
  for (const TestFunction& phi : cfg.phis) phis.push_back(phi.coords);
  out["phis"] = phis;
  out["times"] = cfg.times;
  json tests = json::array();
  for (const TestSelector& sel : cfg.tests) tests.push_back(to_json(sel));
  out["tests"] = tests;
  if (!cfg.output_dir.empty()) out["output_dir"] = cfg.output_dir;
  return out;
}

json to_json(const ValidationReport& rep) {
  return json{{"valid", rep.valid},
              {"origin_mass_zero", rep.origin_mass_zero},
              {"small_ball_second_moment", rep.small_ball_second_moment},
              {"tail_mass", rep.tail_mass},
              {"quad_error", rep.quad_error},
              {"r", rep.r},
              {"message", rep.message}};
}

json to_json(const TestReport& rep) {
  return json{{"name", rep.name},
              {"statistic", rep.statistic},
              {"threshold", rep.threshold},
              {"pass", rep.pass},
              {"inconclusive", rep.inconclusive},
              {"sample_size", rep.sample_size},
              {"seed", rep.seed},
              {"notes", rep.notes}};
}

std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace seqlevy::io
