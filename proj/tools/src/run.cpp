#include "nvfix_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

#include "nvfix/error.hpp"
#include "nvfix/nielsen.hpp"
#include "nvfix/numerics.hpp"
#include "nvfix/torus2.hpp"

namespace nvfix::cli {

namespace {

json vec_json(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

json perm_list(const std::vector<Permutation> &ps) {
  json out = json::array();
  for (const auto &p : ps)
    out.push_back(p.to_string());
  return out;
}

json matrix_json(const IntMatrix2 &m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

json analysis_json(const CoveringAnalysis &a) {
  json j;
  j["L_prime"] = {{"order", a.L_prime.order()},
                  {"generators", perm_list(a.L_prime.generators())},
                  {"elements", perm_list(a.L_prime.elements())}};
  j["index_H"] = a.index_H;
  j["orbits"] = a.orbits.orbits;
  j["representatives"] = a.orbits.representatives;
  json stabs = json::array();
  for (const auto &s : a.stabilizers)
    stabs.push_back(perm_list(s.elements()));
  j["stabilizers"] = stabs;
  j["free"] = a.free;
  if (a.witness)
    j["witness"] = {{"index", a.witness->first}, {"element", a.witness->second.to_string()}};
  else
    j["witness"] = nullptr;
  j["lift_count"] = a.lift_count;
  j["fiber_coincidence_counts"] = a.fiber_coincidence_counts;
  if (a.class_multiplicity)
    j["class_multiplicity"] = *a.class_multiplicity;
  else
    j["class_multiplicity"] = nullptr;
  return j;
}

std::vector<CatalogMap> coordinates_of(const RunConfig &cfg) {
  const auto &d = cfg.descriptor;
  const auto *cat = std::get_if<CatalogPayload>(&d.payload);
  if (cat && !cat->coordinates.empty())
    return cat->coordinates;
  if (cat && cat->cls && d.surface.kind == SurfaceKind::ProjectivePlane)
    return build_rp2_representative(d.n, *cat->cls, cfg.grid);
  throw Error(ErrorCode::ConfigError,
              "field 'payload': needs coordinates (or class on ProjectivePlane)");
}

json ids_json(const std::vector<CatalogMap> &maps) {
  json out = json::array();
  for (const auto &m : maps)
    out.push_back(m.id());
  return out;
}

json class_count_json(const SurfaceDescriptor &s, int n) {
  try {
    const auto c = classify_homotopy_count(s, n);
    if (c.count)
      return {{"count", *c.count}, {"provenance", "formula"}};
    return {{"countable", true}, {"indexed_by", c.indexed_by}, {"provenance", "formula"}};
  } catch (const Error &e) {
    if (e.code() != ErrorCode::UnsupportedSurface)
      throw;
    return {{"supported", false}, {"reason", e.what()}};
  }
}

json classification(const RunConfig &cfg, const CoveringAnalysis &a) {
  const auto &d = cfg.descriptor;
  json j;
  j["split"] = a.index_H == 1;
  j["homotopy_classes"] = class_count_json(d.surface, d.n);
  const auto *cat = std::get_if<CatalogPayload>(&d.payload);
  if (d.surface.kind == SurfaceKind::Sphere && cat && !cat->coordinates.empty()) {
    json degrees = json::array();
    std::vector<int> degs;
    for (const auto &m : cat->coordinates) {
      degs.push_back(degree_sphere(to_surface_map(m), cfg.grid));
      degrees.push_back(degs.back());
    }
    j["coordinate_degrees"] = {{"values", degrees}, {"provenance", "scan"}};
    if (d.n == 2) {
      // {f, A o f}: the second coordinate has degree -deg f.
      const bool antipodal_pair = degs[1] == -degs[0];
      j["degree_of_phi"] = {{"value", std::abs(degs[0])},
                            {"antipodal_pair", antipodal_pair},
                            {"provenance", "scan"}};
    }
  }
  if (d.surface.kind == SurfaceKind::ProjectivePlane && cat &&
      (cat->cls || !cat->coordinates.empty())) {
    const auto maps = coordinates_of(cfg);
    const auto c = classify_rp2(maps, cfg.grid);
    j["rp2_class"] = {{"value", to_string(c.cls)},
                      {"lift_preimage_counts", c.lift_preimage_counts},
                      {"coordinates", ids_json(maps)},
                      {"provenance", "scan"}};
    if (cat->cls)
      j["rp2_class"]["matches_requested"] = c.cls == *cat->cls;
  }
  return j;
}

json nielsen_section(const RunConfig &cfg, const CoveringAnalysis &a) {
  const auto &d = cfg.descriptor;
  json j;
  if (a.index_H == 1) {
    std::vector<std::int64_t> terms;
    std::string provenance = "formula";
    if (!cfg.split.empty()) {
      if (static_cast<int>(cfg.split.size()) != d.n)
        throw Error(ErrorCode::ConfigError, "field 'nielsen.split': needs n entries");
      terms = cfg.split;
      provenance = "input";
    } else if (d.surface.kind == SurfaceKind::Sphere) {
      for (const auto &m : coordinates_of(cfg))
        terms.push_back(
            single_map_nielsen(d.surface, degree_sphere(to_surface_map(m), cfg.grid)));
      provenance = "formula over scanned degrees";
    } else if (d.surface.kind == SurfaceKind::Torus) {
      throw Error(ErrorCode::ConfigError,
                  "field 'nielsen.split': split torus maps need per-coordinate values");
    } else {
      terms.assign(static_cast<std::size_t>(d.n), single_map_nielsen(d.surface, {}));
    }
    j["formula_used"] = kFormulaSplit;
    json tj = json::array();
    for (std::size_t k = 0; k < terms.size(); ++k)
      tj.push_back({{"coordinate", k + 1}, {"value", terms[k]}});
    j["terms"] = tj;
    j["total"] = nielsen_split(terms);
    j["provenance"] = provenance;
    return j;
  }

  NielsenInput input{a, cfg.per_pair};
  std::string formula = kFormulaOrbitSum;
  const auto *lin = std::get_if<TorusLinearPayload>(&d.payload);
  if (d.surface.kind == SurfaceKind::Torus && d.n == 2 && lin) {
    const auto t = nielsen_torus_2valued(d);
    json tj;
    tj["Q"] = matrix_json(t.Q);
    tj["det_M_minus_Q"] = t.det;
    if (t.oracle_count)
      tj["oracle_count"] = *t.oracle_count;
    else
      tj["oracle_count"] = "Degenerate";
    if (!t.degenerate)
      tj["enumerated_count"] = enumerate_coincidences(t.Q, lin->M, lin->c).size();
    tj["degenerate"] = t.degenerate;
    tj["coordinates_coincide"] = t.coordinates_coincide;
    tj["N"] = t.nielsen;
    tj["provenance"] = "formula + oracle";
    j["torus"] = tj;
    // The computed value stands for N(q, f_1); supplied values must agree.
    // Both coordinates are keyed so a conflicting input raises
    // InconsistentInput.
    input.per_pair.emplace(1, t.nielsen);
    input.per_pair.emplace(2, t.nielsen);
    formula = kFormulaTorus;
  }
  const auto r = nielsen_nonsplit(input);
  j["formula_used"] = formula;
  json tj = json::array();
  for (const auto &[idx, v] : r.terms)
    tj.push_back({{"representative", idx}, {"value", v}});
  j["terms"] = tj;
  j["total"] = r.total;
  j["provenance"] = formula == kFormulaTorus ? "formula" : "input";
  return j;
}

json scan_section(const RunConfig &cfg) {
  const auto &d = cfg.descriptor;
  json j;
  if (d.surface.kind == SurfaceKind::Sphere ||
      d.surface.kind == SurfaceKind::ProjectivePlane) {
    const auto maps = coordinates_of(cfg);
    const auto rep = find_fixed_points(std::span<const CatalogMap>(maps), cfg.grid);
    json clusters = json::array();
    for (const auto &c : rep.clusters) {
      json cj;
      cj["location"] = vec_json(c.location);
      if (c.index)
        cj["index"] = *c.index;
      else
        cj["index"] = "Unreliable";
      cj["diameter"] = c.diameter;
      cj["residual"] = c.residual;
      json coords = json::array();
      for (auto k : c.coordinates)
        coords.push_back(k + 1);
      cj["coordinates"] = coords;
      clusters.push_back(cj);
    }
    j["coordinates"] = ids_json(maps);
    j["clusters"] = clusters;
    j["total_count"] = rep.total_count;
    j["grid"] = {{"resolution", cfg.grid.resolution},
                 {"refinement_depth", cfg.grid.refinement_depth},
                 {"cluster_radius", cfg.grid.cluster_radius},
                 {"zero_tolerance", cfg.grid.zero_tolerance},
                 {"index_radius", cfg.grid.index_radius}};
    j["provenance"] = "scan";
    return j;
  }
  const auto *lin = std::get_if<TorusLinearPayload>(&d.payload);
  if (d.surface.kind == SurfaceKind::Torus && d.n == 2 && lin && !is_split(d)) {
    const IntMatrix2 Q = kernel_lattice(d.sigma[0], d.sigma[1]);
    if (det2(lin->M - Q) == 0)
      throw Error(ErrorCode::SingularCovering,
                  "M - Q is singular; the coincidence set is not finite");
    // Fix(phi) = q(Coin(q, f)), exactly.
    json points = json::array();
    for (const auto &x : enumerate_coincidences(Q, lin->M, lin->c)) {
      RationalVec2 y;
      for (int r = 0; r < 2; ++r) {
        Rational v = Rational(Q(r, 0)) * x[0] + Rational(Q(r, 1)) * x[1];
        const Int fl = v.numerator() / v.denominator() - (v.numerator() < 0 ? 1 : 0);
        v -= Rational(fl);
        if (v >= 1)
          v -= 1;
        y[r] = v;
      }
      points.push_back({{"covering_point", {nvfix::to_string(x[0]), nvfix::to_string(x[1])}},
                        {"base_point", {nvfix::to_string(y[0]), nvfix::to_string(y[1])}}});
    }
    j["coincidences"] = points;
    j["total_count"] = points.size();
    j["provenance"] = "oracle";
    return j;
  }
  throw Error(ErrorCode::ConfigError,
              "scan needs Sphere or ProjectivePlane coordinates, or a non-split "
              "2-valued torus map with payload M");
}

} // namespace

json run(const RunConfig &cfg, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  json r;
  r["tool"] = {{"name", "nvfix"}, {"version", kVersion}};
  r["config"] = cfg.echo;
  r["task"] = to_string(cfg.task);
  if (cfg.task == Task::Verify) {
    r["verify"] = verify(cfg.suite, cfg.grid.seed, timing);
  } else {
    const auto &d = cfg.descriptor;
    r["surface"] = {{"kind", to_string(d.surface.kind)},
                    {"pi1", d.surface.pi1()},
                    {"orientable", d.surface.orientable()},
                    {"generators", d.surface.generator_count()}};
    const auto a = covering_analysis(d);
    r["covering_analysis"] = analysis_json(a);
    switch (cfg.task) {
    case Task::Classify:
      r["classification"] = classification(cfg, a);
      break;
    case Task::Nielsen:
      r["nielsen"] = nielsen_section(cfg, a);
      break;
    case Task::Scan:
      r["scan"] = scan_section(cfg);
      r["nielsen"] = nielsen_section(cfg, a);
      break;
    case Task::Verify:
      break;
    }
  }
  if (timing)
    r["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

void render(std::ostringstream &os, const json &v, int indent, const std::string &key) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const bool scalar_list =
      v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json &x) {
                                      return x.is_primitive();
                                    }));
      });
  if (v.is_object()) {
    if (!key.empty())
      os << pad << key << ":\n";
    for (const auto &[k, e] : v.items())
      render(os, e, key.empty() ? indent : indent + 1, k);
  } else if (v.is_array() && !scalar_list) {
    os << pad << key << ":\n";
    std::size_t i = 0;
    for (const auto &e : v)
      render(os, e, indent + 1, "[" + std::to_string(i++) + "]");
  } else {
    os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

} // namespace

std::string render_text(const json &report) {
  std::ostringstream os;
  render(os, report, 0, "");
  return os.str();
}

} // namespace nvfix::cli
