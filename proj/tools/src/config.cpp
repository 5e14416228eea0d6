#include "nvfix_cli/config.hpp"

#include <algorithm>
#include <cctype>

#include "nvfix/error.hpp"

namespace nvfix::cli {

std::string_view to_string(Task t) {
  switch (t) {
  case Task::Classify: return "classify";
  case Task::Nielsen: return "nielsen";
  case Task::Scan: return "scan";
  case Task::Verify: return "verify";
  }
  return "?";
}

Task parse_task(std::string_view name) {
  if (name == "classify")
    return Task::Classify;
  if (name == "nielsen")
    return Task::Nielsen;
  if (name == "scan")
    return Task::Scan;
  if (name == "verify")
    return Task::Verify;
  throw Error(ErrorCode::ConfigError, "unknown task '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void field_error(const std::string &path, const std::string &what) {
  throw Error(ErrorCode::ConfigError, "field '" + path + "': " + what);
}

// Runs f, re-labelling library errors with the field path.
template <class F>
auto at_field(const std::string &path, F &&f) {
  try {
    return f();
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ConfigError)
      throw;
    field_error(path, e.what());
  }
}

const json &require(const json &obj, const char *key, const std::string &path) {
  if (!obj.contains(key))
    field_error(path.empty() ? key : path + "." + key, "missing");
  return obj.at(key);
}

std::string as_string(const json &v, const std::string &path) {
  if (!v.is_string())
    field_error(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t as_int(const json &v, const std::string &path) {
  if (!v.is_number_integer())
    field_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

double as_double(const json &v, const std::string &path) {
  if (!v.is_number())
    field_error(path, "expected a number");
  return v.get<double>();
}

IntMatrix2 as_matrix(const json &v, const std::string &path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || !v[1].is_array() ||
      v[0].size() != 2 || v[1].size() != 2)
    field_error(path, "expected 2x2 integer rows [[a,b],[c,d]]");
  IntMatrix2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const auto p = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      const auto x = as_int(v[r][c], p);
      if (x < -1000000 || x > 1000000)
        field_error(p, "entry out of range");
      m(r, c) = x;
    }
  return m;
}

Rational as_rational(const json &v, const std::string &path) {
  if (v.is_number_integer())
    return Rational(v.get<Int>());
  return at_field(path, [&] { return parse_rational(as_string(v, path)); });
}

void parse_grid(const json &g, GridSpec &grid) {
  if (!g.is_object())
    field_error("grid", "expected an object");
  for (const auto &[key, value] : g.items()) {
    const std::string path = "grid." + key;
    if (key == "resolution")
      grid.resolution = as_double(value, path);
    else if (key == "refinement_depth")
      grid.refinement_depth = static_cast<int>(as_int(value, path));
    else if (key == "cluster_radius")
      grid.cluster_radius = as_double(value, path);
    else if (key == "candidate_factor")
      grid.candidate_factor = as_double(value, path);
    else if (key == "zero_tolerance")
      grid.zero_tolerance = as_double(value, path);
    else if (key == "index_radius")
      grid.index_radius = as_double(value, path);
    else if (key == "max_candidates") {
      const auto v = as_int(value, path);
      if (v < 1)
        field_error(path, "must be positive");
      grid.max_candidates = static_cast<std::size_t>(v);
    } else if (key == "threads") {
      const auto v = as_int(value, path);
      if (v < 0)
        field_error(path, "must be non-negative");
      grid.threads = static_cast<unsigned>(v);
    } else
      field_error(path, "unknown key");
  }
}

Payload parse_payload(const json &p, SurfaceKind surface) {
  if (!p.is_object())
    field_error("payload", "expected an object");
  if (surface == SurfaceKind::Torus) {
    TorusLinearPayload t;
    t.M = as_matrix(require(p, "M", "payload"), "payload.M");
    if (p.contains("c")) {
      const auto &c = p.at("c");
      if (!c.is_array() || c.size() != 2)
        field_error("payload.c", "expected two rationals");
      t.c = {as_rational(c[0], "payload.c[0]"), as_rational(c[1], "payload.c[1]")};
    }
    if (p.contains("Q"))
      t.Q = as_matrix(p.at("Q"), "payload.Q");
    for (const auto &[key, value] : p.items())
      if (key != "M" && key != "c" && key != "Q")
        field_error("payload." + key, "unknown key");
    return t;
  }
  CatalogPayload cat;
  for (const auto &[key, value] : p.items()) {
    const std::string path = "payload." + key;
    if (key == "coordinates") {
      if (!value.is_array())
        field_error(path, "expected a list of map ids");
      for (std::size_t k = 0; k < value.size(); ++k) {
        const auto item = path + "[" + std::to_string(k) + "]";
        const auto id = as_string(value[k], item);
        cat.coordinates.push_back(at_field(item, [&] { return CatalogMap::parse(id); }));
      }
    } else if (key == "class") {
      const auto c = as_string(value, path);
      if (c == "Trivial")
        cat.cls = Rp2Class::Trivial;
      else if (c == "NonTrivial")
        cat.cls = Rp2Class::NonTrivial;
      else
        field_error(path, "expected Trivial or NonTrivial");
    } else {
      field_error(path, "unknown key");
    }
  }
  return cat;
}

} // namespace

RunConfig parse_config(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ConfigError, "syntax error at line " + std::to_string(line) +
                                            ", column " + std::to_string(col) + ": " +
                                            e.what());
  }
  if (!doc.is_object())
    throw Error(ErrorCode::ConfigError, "config must be a JSON object");

  RunConfig cfg;
  cfg.echo = doc;
  static const std::vector<std::string> known = {"surface", "n",     "sigma",   "payload",
                                                 "task",    "suite", "grid",    "seed",
                                                 "nielsen"};
  for (const auto &[key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      field_error(key, "unknown key");

  if (doc.contains("task"))
    cfg.task = at_field("task", [&] { return parse_task(as_string(doc.at("task"), "task")); });
  if (doc.contains("suite"))
    cfg.suite = as_string(doc.at("suite"), "suite");
  if (doc.contains("seed")) {
    const auto s = as_int(doc.at("seed"), "seed");
    if (s < 0)
      field_error("seed", "must be non-negative");
    cfg.grid.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("grid"))
    parse_grid(doc.at("grid"), cfg.grid);
  at_field("grid", [&] {
    cfg.grid.validate();
    return 0;
  });
  if (cfg.task == Task::Verify)
    return cfg;

  auto &d = cfg.descriptor;
  d.surface.kind = at_field("surface", [&] {
    return parse_surface_kind(as_string(require(doc, "surface", ""), "surface"));
  });
  const auto n = as_int(require(doc, "n", ""), "n");
  if (n < 1 || n > kDefaultDegreeCap)
    field_error("n", "must lie in 1.." + std::to_string(kDefaultDegreeCap));
  d.n = static_cast<int>(n);
  if (doc.contains("sigma")) {
    const auto &s = doc.at("sigma");
    if (!s.is_array())
      field_error("sigma", "expected a list of permutations");
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto path = "sigma[" + std::to_string(k) + "]";
      const auto text = as_string(s[k], path);
      d.sigma.push_back(at_field(path, [&] { return Permutation::parse(text, d.n); }));
    }
  } else {
    // Sphere and disc have no generators; elsewhere default to a split map.
    for (int k = 0; k < d.surface.generator_count(); ++k)
      d.sigma.push_back(Permutation::identity(d.n));
  }
  if (doc.contains("payload"))
    d.payload = parse_payload(doc.at("payload"), d.surface.kind);

  if (doc.contains("nielsen")) {
    const auto &nv = doc.at("nielsen");
    if (!nv.is_object())
      field_error("nielsen", "expected an object");
    for (const auto &[key, value] : nv.items()) {
      if (key == "per_pair") {
        if (!value.is_object())
          field_error("nielsen.per_pair", "expected an object keyed by index");
        for (const auto &[idx, v] : value.items()) {
          const auto path = "nielsen.per_pair." + idx;
          int i = 0;
          try {
            std::size_t used = 0;
            i = std::stoi(idx, &used);
            if (used != idx.size())
              throw std::invalid_argument(idx);
          } catch (const std::exception &) {
            field_error(path, "key must be an integer index");
          }
          const auto x = as_int(v, path);
          if (x < 0)
            field_error(path, "must be non-negative");
          cfg.per_pair[i] = x;
        }
      } else if (key == "split") {
        if (!value.is_array())
          field_error("nielsen.split", "expected a list");
        for (std::size_t k = 0; k < value.size(); ++k) {
          const auto path = "nielsen.split[" + std::to_string(k) + "]";
          const auto x = as_int(value[k], path);
          if (x < 0)
            field_error(path, "must be non-negative");
          cfg.split.push_back(x);
        }
      } else {
        field_error("nielsen." + key, "unknown key");
      }
    }
  }

  const auto violations = validate(d);
  if (!violations.empty()) {
    std::string msg;
    for (const auto &v : violations)
      msg += (msg.empty() ? "" : "; ") + std::string(to_string(v.code)) + ": " + v.message;
    throw Error(ErrorCode::ConfigError, "invalid map descriptor: " + msg);
  }
  return cfg;
}

} // namespace nvfix::cli
