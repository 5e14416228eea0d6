#include "nvfix/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/Geometry>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "nvfix/error.hpp"

namespace nvfix {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct FaceAxes {
  Vec3 normal, a, b;
};

const FaceAxes kFaces[6] = {
    {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},  {{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}}, {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}},
    {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},  {{0, 0, -1}, {-1, 0, 0}, {0, 1, 0}},
};

class CubeGrid {
public:
  explicit CubeGrid(double resolution) {
    n_ = std::max(2, static_cast<int>(std::ceil((kPi / 2) / resolution)));
    tans_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
      tans_[i] = std::tan(-kPi / 4 + (i + 0.5) * (kPi / 2) / n_);
  }

  int side() const noexcept { return n_; }
  double step() const noexcept { return (kPi / 2) / n_; }

  Vec3 point(int face, int i, int j) const {
    const auto &f = kFaces[face];
    return (f.normal + tans_[i] * f.a + tans_[j] * f.b).normalized();
  }

  std::size_t index(int face, int i, int j) const {
    return (static_cast<std::size_t>(face) * n_ + j) * n_ + i;
  }

private:
  int n_;
  std::vector<double> tans_;
};

struct Candidate {
  std::size_t index;
  double value;
  Vec3 point;
};

struct ScanResult {
  std::vector<Candidate> candidates;
  bool overflow = false;
  double min_value = std::numeric_limits<double>::infinity();
  std::size_t min_index = 0;
  Vec3 min_point{0, 0, 1};
  double max_value = -std::numeric_limits<double>::infinity();
};

struct Chunk {
  int face, j0, j1;
};

// Evaluates the residual over the whole grid. Candidates are strict local
// minima (ties broken by grid index) below `threshold`.
ScanResult scan_grid(const std::function<double(const Vec3 &)> &residual,
                     const CubeGrid &grid, double threshold,
                     std::size_t max_candidates, unsigned threads) {
  const int n = grid.side();
  constexpr int kBand = 32;
  std::vector<Chunk> chunks;
  for (int face = 0; face < 6; ++face)
    for (int j0 = 0; j0 < n; j0 += kBand)
      chunks.push_back({face, j0, std::min(n, j0 + kBand)});

  std::vector<ScanResult> partial(chunks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    std::vector<double> rows[3];
    for (auto &r : rows)
      r.resize(static_cast<std::size_t>(n));
    try {
      for (std::size_t c = next++; c < chunks.size(); c = next++) {
        const auto [face, j0, j1] = chunks[c];
        auto &out = partial[c];
        auto fill = [&](std::vector<double> &row, int j) {
          for (int i = 0; i < n; ++i) {
            const Vec3 p = grid.point(face, i, j);
            const double v = residual(p);
            row[i] = v;
            const auto idx = grid.index(face, i, j);
            if (j >= j0 && j < j1) {
              if (v < out.min_value) {
                out.min_value = v;
                out.min_index = idx;
                out.min_point = p;
              }
              out.max_value = std::max(out.max_value, v);
            }
          }
        };
        std::vector<double> *prev = j0 > 0 ? &rows[0] : nullptr;
        std::vector<double> *cur = &rows[1];
        std::vector<double> *nxt = &rows[2];
        if (prev)
          fill(*prev, j0 - 1);
        fill(*cur, j0);
        for (int j = j0; j < j1; ++j) {
          const bool has_next = j + 1 < n;
          if (has_next)
            fill(*nxt, j + 1);
          if (threshold > 0) {
            for (int i = 0; i < n; ++i) {
              const double v = (*cur)[i];
              if (!(v < threshold))
                continue;
              const auto idx = grid.index(face, i, j);
              bool is_min = true;
              for (int dj = -1; dj <= 1 && is_min; ++dj) {
                const std::vector<double> *row =
                    dj < 0 ? prev : (dj == 0 ? cur : (has_next ? nxt : nullptr));
                if (!row)
                  continue;
                for (int di = -1; di <= 1; ++di) {
                  if ((di == 0 && dj == 0) || i + di < 0 || i + di >= n)
                    continue;
                  const double w = (*row)[i + di];
                  const auto nidx = grid.index(face, i + di, j + dj);
                  if (w < v || (w == v && nidx < idx)) {
                    is_min = false;
                    break;
                  }
                }
              }
              if (is_min) {
                if (out.candidates.size() >= max_candidates)
                  out.overflow = true;
                else
                  out.candidates.push_back({idx, v, grid.point(face, i, j)});
              }
            }
          }
          // rotate rows: prev <- cur <- next
          if (!prev)
            prev = &rows[0];
          std::swap(*prev, *cur);
          std::swap(*cur, *nxt);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure)
        failure = std::current_exception();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back(work);
    for (auto &t : pool)
      t.join();
  }
  if (failure)
    std::rethrow_exception(failure);

  ScanResult merged;
  for (auto &p : partial) {
    if (p.min_value < merged.min_value) {
      merged.min_value = p.min_value;
      merged.min_index = p.min_index;
      merged.min_point = p.min_point;
    }
    merged.max_value = std::max(merged.max_value, p.max_value);
    merged.overflow = merged.overflow || p.overflow;
    merged.candidates.insert(merged.candidates.end(), p.candidates.begin(),
                             p.candidates.end());
  }
  if (merged.candidates.size() > max_candidates)
    merged.overflow = true;
  return merged;
}

struct Chart {
  Vec3 c, e1, e2;
  explicit Chart(const Vec3 &centre) : c(centre) {
    std::tie(e1, e2) = tangent_frame(c);
  }
  Vec3 at(double a, double b) const { return (c + a * e1 + b * e2).normalized(); }
};

struct PolishData {
  const std::function<double(const Vec3 &)> *residual;
  const Chart *chart;
};

double polish_objective(const gsl_vector *x, void *params) {
  const auto *d = static_cast<const PolishData *>(params);
  return (*d->residual)(d->chart->at(gsl_vector_get(x, 0), gsl_vector_get(x, 1)));
}

// Zoom passes on a 9x9 local lattice, then a Nelder-Mead polish in the
// gnomonic chart at the best point.
std::pair<Vec3, double> refine(const std::function<double(const Vec3 &)> &residual,
                               const Vec3 &start, double h, int depth) {
  Vec3 best = start;
  double best_v = residual(best);
  for (int level = 0; level < depth; ++level) {
    const Chart chart(best);
    Vec3 level_best = best;
    for (int b = -4; b <= 4; ++b) {
      for (int a = -4; a <= 4; ++a) {
        const Vec3 p = chart.at(a * h / 4, b * h / 4);
        const double v = residual(p);
        if (v < best_v) {
          best_v = v;
          level_best = p;
        }
      }
    }
    best = level_best;
    h /= 4;
  }

  const Chart chart(best);
  PolishData data{&residual, &chart};
  gsl_multimin_function fn{&polish_objective, 2, &data};
  gsl_vector *x = gsl_vector_calloc(2);
  gsl_vector *step = gsl_vector_alloc(2);
  gsl_vector_set_all(step, std::max(h, 1e-9));
  gsl_multimin_fminimizer *solver =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(solver, &fn, x, step);
  for (int iter = 0; iter < 600; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS)
      break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), 1e-15) ==
        GSL_SUCCESS)
      break;
    if (solver->fval == 0.0)
      break;
  }
  if (solver->fval < best_v) {
    best_v = solver->fval;
    best = chart.at(gsl_vector_get(solver->x, 0), gsl_vector_get(solver->x, 1));
  }
  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return {best, best_v};
}

Vec3 canonical_on(SurfaceKind s, const Vec3 &v) {
  return s == SurfaceKind::ProjectivePlane ? canonical_rp2(v) : Vec3(v.normalized());
}

std::vector<ZeroPoint> cluster_points(
    const std::vector<std::pair<Vec3, double>> &points, SurfaceKind domain,
    double radius) {
  const std::size_t k = points.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a)
      a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (surface_distance(domain, points[a].first, points[b].first) < radius) {
        const auto ra = find(a), rb = find(b);
        parent[std::max(ra, rb)] = std::min(ra, rb);
      }

  std::vector<ZeroPoint> out;
  std::vector<std::size_t> root_slot(k, k);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t a = 0; a < k; ++a) {
    const auto r = find(a);
    if (root_slot[r] == k) {
      root_slot[r] = members.size();
      members.emplace_back();
    }
    members[root_slot[r]].push_back(a);
  }
  for (const auto &m : members) {
    std::size_t best = m.front();
    double diameter = 0;
    for (auto a : m) {
      if (points[a].second < points[best].second)
        best = a;
      for (auto b : m)
        diameter = std::max(
            diameter, surface_distance(domain, points[a].first, points[b].first));
    }
    if (diameter > radius)
      throw Error(ErrorCode::GridTooCoarse,
                  "cluster of diameter " + std::to_string(diameter) +
                      " exceeds cluster radius");
    out.push_back({canonical_on(domain, points[best].first), points[best].second,
                   diameter, m.size()});
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t &state) {
  return static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53;
}

Vec3 random_sphere_point(std::uint64_t &state) {
  const double z = 2.0 * unit_double(state) - 1.0;
  const double t = kTwoPi * unit_double(state);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(t), r * std::sin(t), z};
}

// Sign of the Jacobian of f at x in oriented frames; 0 if near-singular.
int jacobian_sign(const SurfaceMap &f, const Vec3 &x) {
  constexpr double h = 1e-6;
  const auto [e1, e2] = tangent_frame(x);
  const Vec3 fx = f(x);
  const Vec3 d1 = (f((x + h * e1).normalized()) - f((x - h * e1).normalized())) / (2 * h);
  const Vec3 d2 = (f((x + h * e2).normalized()) - f((x - h * e2).normalized())) / (2 * h);
  const double scale = d1.norm() * d2.norm();
  const double j = d1.cross(d2).dot(fx);
  if (!(scale > 1e-10) || std::abs(j) < 1e-6 * scale)
    return 0;
  return j > 0 ? 1 : -1;
}

} // namespace

SurfaceMap to_surface_map(const CatalogMap &m) {
  return {m.domain(), m.codomain(), [m](const Vec3 &x) { return m.apply(x); },
          m.id()};
}

SurfaceMap lift_surface_map(const CatalogMap &m) {
  if (m.domain() != SurfaceKind::ProjectivePlane)
    throw Error(ErrorCode::DomainMismatch, m.id() + " is not a map of RP^2");
  return {SurfaceKind::ProjectivePlane, SurfaceKind::Sphere,
          [m](const Vec3 &x) { return m.apply_lift(x); }, "lift(" + m.id() + ")"};
}

SurfaceMap compose_antipodal(const SurfaceMap &m) {
  if (m.codomain != SurfaceKind::Sphere)
    throw Error(ErrorCode::DomainMismatch, "antipodal needs an S^2 codomain");
  auto f = m.f;
  return {m.domain, m.codomain, [f](const Vec3 &x) { return Vec3(-f(x)); },
          "A*" + m.id};
}

unsigned scan_threads(const GridSpec &grid) {
  if (grid.threads > 0)
    return grid.threads;
  if (const char *env = std::getenv("NVFIX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ZeroPoint> locate_zeros(
    const std::function<double(const Vec3 &)> &residual, SurfaceKind domain,
    const GridSpec &grid) {
  grid.validate();
  const CubeGrid cube(grid.resolution);
  const auto scan =
      scan_grid(residual, cube, grid.candidate_factor * grid.resolution,
                grid.max_candidates, scan_threads(grid));
  if (scan.overflow)
    throw Error(ErrorCode::GridTooCoarse,
                "more than " + std::to_string(grid.max_candidates) +
                    " candidates; zero set is not isolated at this resolution");

  std::vector<std::pair<Vec3, double>> accepted;
  for (const auto &c : scan.candidates) {
    auto [p, v] = refine(residual, c.point, cube.step(), grid.refinement_depth);
    if (v < grid.zero_tolerance)
      accepted.emplace_back(p, v);
  }
  auto zeros = cluster_points(accepted, domain, grid.cluster_radius);

  // An isolated zero has a positive residual on a small ring around it; a
  // ring that still touches the zero set means a curve or region of zeros.
  for (const auto &z : zeros) {
    const Chart chart(z.location);
    const double r = 0.5 * grid.cluster_radius;
    for (int k = 0; k < 16; ++k) {
      const double t = kTwoPi * k / 16;
      if (residual(chart.at(r * std::cos(t), r * std::sin(t))) < grid.zero_tolerance)
        throw Error(ErrorCode::GridTooCoarse,
                    "zero set is not isolated near a refined zero");
    }
  }
  return zeros;
}

FixedPointReport find_fixed_points(const SurfaceMap &map, const GridSpec &grid) {
  return find_fixed_points(std::span<const SurfaceMap>(&map, 1), grid);
}

FixedPointReport find_fixed_points(std::span<const SurfaceMap> coordinates,
                                   const GridSpec &grid) {
  FixedPointReport report;
  report.grid = grid;
  for (std::size_t k = 0; k < coordinates.size(); ++k) {
    const auto &m = coordinates[k];
    if (m.domain != m.codomain)
      throw Error(ErrorCode::DomainMismatch, m.id + " is not a self-map");
    report.map_id += (k ? ", " : "") + m.id;
    const SurfaceKind s = m.domain;
    const auto zeros = locate_zeros(
        [&](const Vec3 &x) { return surface_distance(s, x, m(x)); }, s, grid);
    for (const auto &z : zeros) {
      auto it = std::find_if(report.clusters.begin(), report.clusters.end(),
                             [&](const FixedPointCluster &c) {
                               return surface_distance(s, c.location, z.location) <
                                      grid.cluster_radius;
                             });
      if (it != report.clusters.end()) {
        it->coordinates.push_back(k);
        continue;
      }
      report.clusters.push_back({z.location, std::nullopt, z.diameter, z.residual, {k}});
    }
  }

  const SurfaceKind s =
      coordinates.empty() ? SurfaceKind::Sphere : coordinates.front().domain;
  for (auto &c : report.clusters) {
    double radius = grid.index_radius;
    for (const auto &o : report.clusters)
      if (&o != &c)
        radius = std::min(radius, 0.25 * surface_distance(s, c.location, o.location));
    try {
      c.index = fixed_point_index(coordinates[c.coordinates.front()], c.location,
                                  radius);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::ZeroOnCircle)
        throw;
      c.index = std::nullopt;
    }
  }
  report.total_count = report.clusters.size();
  return report;
}

FixedPointReport find_fixed_points(std::span<const CatalogMap> coordinates,
                                   const GridSpec &grid) {
  std::vector<SurfaceMap> maps;
  for (const auto &m : coordinates)
    maps.push_back(to_surface_map(m));
  return find_fixed_points(std::span<const SurfaceMap>(maps), grid);
}

std::optional<int> winding_number(const std::function<Vec2(double)> &field,
                                  double scale) {
  const double floor = 1e-13 * scale;
  auto sample = [&](double t) {
    const Vec2 v = field(t);
    if (!(v.norm() > floor))
      throw Error(ErrorCode::ZeroOnCircle,
                  "field vanishes at angle " + std::to_string(t));
    return v;
  };

  auto turn_between = [](const Vec2 &a, const Vec2 &b) {
    return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  };
  // Turning from angle t0 to t1; steps of pi/2 or more are bisected, and a
  // step still that sharp after 24 halvings is left unresolved.
  bool unresolved = false;
  std::function<double(double, const Vec2 &, double, const Vec2 &, int)> arc =
      [&](double t0, const Vec2 &v0, double t1, const Vec2 &v1, int depth) {
        const double turn = turn_between(v0, v1);
        if (std::abs(turn) < kPi / 2)
          return turn;
        if (depth >= 24) {
          unresolved = true;
          return turn;
        }
        const double tm = 0.5 * (t0 + t1);
        const Vec2 vm = sample(tm);
        return arc(t0, v0, tm, vm, depth + 1) + arc(tm, vm, t1, v1, depth + 1);
      };

  std::optional<int> previous;
  for (int count = 64; count <= 1024; count *= 2) {
    unresolved = false;
    const Vec2 first = sample(0.0);
    Vec2 prev = first;
    double total = 0;
    for (int k = 1; k <= count; ++k) {
      const double t0 = kTwoPi * (k - 1) / count, t1 = kTwoPi * k / count;
      const Vec2 v = k == count ? first : sample(t1);
      total += arc(t0, prev, t1, v, 0);
      prev = v;
    }
    const int w = static_cast<int>(std::lround(total / kTwoPi));
    if (!unresolved && previous && *previous == w)
      return w;
    previous = unresolved ? std::nullopt : std::optional<int>(w);
  }
  return std::nullopt;
}

std::optional<int> planar_index(const std::function<Vec2(const Vec2 &)> &v,
                                const Vec2 &center, double radius) {
  return winding_number(
      [&](double t) {
        return v(center + radius * Vec2(std::cos(t), std::sin(t)));
      },
      radius);
}

std::optional<int> fixed_point_index(const SurfaceMap &map, const Vec3 &point,
                                     double radius) {
  const Vec3 c = point.normalized();
  const auto [e1, e2] = tangent_frame(c);
  bool chart_failed = false;
  // Gnomonic chart; invariant under y -> -y, so it also serves RP^2.
  auto chart = [&](const Vec3 &y) -> Vec2 {
    const double d = y.dot(c);
    if (map.codomain == SurfaceKind::Sphere && d < 0.5)
      chart_failed = true;
    if (std::abs(d) < 1e-12) {
      chart_failed = true;
      return {0, 0};
    }
    return Vec2(y.dot(e1) / d, y.dot(e2) / d);
  };
  auto w = winding_number(
      [&](double t) {
        const Vec2 z = radius * Vec2(std::cos(t), std::sin(t));
        const Vec3 x = (c + z.x() * e1 + z.y() * e2).normalized();
        return Vec2(z - chart(map(x)));
      },
      radius);
  if (chart_failed)
    return std::nullopt;
  return w;
}

CoincidenceScan coincidence_min_distance(const SurfaceMap &f, const SurfaceMap &g,
                                         const GridSpec &grid) {
  if (f.domain != g.domain || f.codomain != g.codomain)
    throw Error(ErrorCode::DomainMismatch, f.id + " and " + g.id +
                                               " do not share domain and codomain");
  grid.validate();
  const SurfaceKind s = f.codomain;
  const std::function<double(const Vec3 &)> residual = [&](const Vec3 &x) {
    return surface_distance(s, f(x), g(x));
  };
  const CubeGrid cube(grid.resolution);
  const auto scan = scan_grid(residual, cube, -1.0, 0, scan_threads(grid));
  auto [p, v] = refine(residual, scan.min_point, cube.step(), grid.refinement_depth);
  if (v < scan.min_value)
    return {v, canonical_on(f.domain, p)};
  return {scan.min_value, canonical_on(f.domain, scan.min_point)};
}

CoincidenceScan coincidence_min_distance(const CatalogMap &f, const CatalogMap &g,
                                         const GridSpec &grid) {
  return coincidence_min_distance(to_surface_map(f), to_surface_map(g), grid);
}

double max_displacement(const std::function<Vec3(const Vec3 &)> &f,
                        const GridSpec &grid) {
  const CubeGrid cube(grid.resolution);
  const auto scan = scan_grid([&](const Vec3 &x) { return (x - f(x)).norm(); },
                              cube, -1.0, 0, scan_threads(grid));
  return scan.max_value;
}

DegreeEstimate degree_sphere_detailed(const SurfaceMap &map, const GridSpec &grid) {
  if (map.domain != SurfaceKind::Sphere || map.codomain != SurfaceKind::Sphere)
    throw Error(ErrorCode::DomainMismatch, map.id + " is not a map S^2 -> S^2");
  constexpr int kMaxAttempts = 8;
  std::uint64_t state = grid.seed ^ 0x6a09e667f3bcc909ULL;

  DegreeEstimate est;
  std::vector<int> counts;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Vec3 y = random_sphere_point(state);
    std::vector<ZeroPoint> zeros;
    try {
      zeros = locate_zeros([&](const Vec3 &x) { return (map(x) - y).norm(); },
                           SurfaceKind::Sphere, grid);
    } catch (const Error &e) {
      if (e.code() == ErrorCode::GridTooCoarse)
        continue;
      throw;
    }
    std::vector<Preimage> pre;
    bool singular = false;
    int total = 0;
    for (const auto &z : zeros) {
      const int s = jacobian_sign(map, z.location);
      if (s == 0) {
        singular = true;
        break;
      }
      pre.push_back({z.location, s});
      total += s;
    }
    if (singular)
      continue;
    counts.push_back(total);
    est.regular_values.push_back(y);
    est.preimages.push_back(std::move(pre));
    if (counts.size() >= 2 && counts[counts.size() - 1] == counts[counts.size() - 2]) {
      est.degree = counts.back();
      // keep the agreeing pair only
      est.regular_values.erase(est.regular_values.begin(),
                               est.regular_values.end() - 2);
      est.preimages.erase(est.preimages.begin(), est.preimages.end() - 2);
      return est;
    }
  }
  throw Error(ErrorCode::DegreeUnstable,
              "no two regular values agree for " + map.id);
}

int degree_sphere(const SurfaceMap &map, const GridSpec &grid) {
  return degree_sphere_detailed(map, grid).degree;
}

int classify_2valued_sphere(const SurfaceMap &f, const GridSpec &grid) {
  return std::abs(degree_sphere(f, grid));
}

Rp2Classification classify_rp2(std::span<const CatalogMap> maps,
                               const GridSpec &grid) {
  if (maps.empty())
    throw Error(ErrorCode::InconsistentClass, "no coordinates given");
  Rp2Classification result;
  std::uint64_t state = grid.seed ^ 0xbb67ae8584caa73bULL;
  std::vector<int> parities;
  for (const auto &m : maps) {
    const SurfaceMap lift = lift_surface_map(m);
    std::optional<int> count;
    std::optional<int> first_parity;
    for (int attempt = 0; attempt < 8 && !count; ++attempt) {
      const Vec3 y = random_sphere_point(state);
      try {
        const auto zeros = locate_zeros(
            [&](const Vec3 &x) { return (lift(x) - y).norm(); },
            SurfaceKind::ProjectivePlane, grid);
        const int c = static_cast<int>(zeros.size());
        if (first_parity && *first_parity == c % 2)
          count = c;
        else if (!first_parity)
          first_parity = c % 2;
      } catch (const Error &e) {
        if (e.code() != ErrorCode::GridTooCoarse)
          throw;
      }
    }
    if (!count)
      throw Error(ErrorCode::DegreeUnstable,
                  "lift preimage parity unstable for " + m.id());
    result.lift_preimage_counts.push_back(*count);
    parities.push_back(*count % 2);
  }
  for (auto p : parities)
    if (p != parities.front())
      throw Error(ErrorCode::InconsistentClass,
                  "coordinate lifts disagree in absolute degree parity");
  result.cls = parities.front() == 1 ? Rp2Class::NonTrivial : Rp2Class::Trivial;
  return result;
}

} // namespace nvfix
