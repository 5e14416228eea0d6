#include "nvfix/descriptor.hpp"

#include <string>

namespace nvfix {

std::string SurfaceDescriptor::pi1() const {
  switch (kind) {
  case SurfaceKind::Disc:
  case SurfaceKind::Sphere: return "trivial";
  case SurfaceKind::ProjectivePlane: return "Z2";
  case SurfaceKind::Torus: return "ZxZ";
  }
  return "trivial";
}

int SurfaceDescriptor::generator_count() const noexcept {
  switch (kind) {
  case SurfaceKind::ProjectivePlane: return 1;
  case SurfaceKind::Torus: return 2;
  default: return 0;
  }
}

namespace {

void check_payload(const NValuedMapDescriptor &d, std::vector<Violation> &out) {
  const SurfaceKind s = d.surface.kind;
  if (const auto *cat = std::get_if<CatalogPayload>(&d.payload)) {
    if (s != SurfaceKind::Sphere && s != SurfaceKind::ProjectivePlane) {
      out.push_back({ErrorCode::PayloadMismatch,
                     "catalog payload needs Sphere or ProjectivePlane"});
      return;
    }
    if (!cat->coordinates.empty() &&
        static_cast<int>(cat->coordinates.size()) != d.n)
      out.push_back({ErrorCode::PayloadMismatch,
                     "payload has " + std::to_string(cat->coordinates.size()) +
                         " coordinates, n = " + std::to_string(d.n)});
    for (const auto &m : cat->coordinates)
      if (m.domain() != s)
        out.push_back({ErrorCode::PayloadMismatch,
                       m.id() + " is not a self-map of " + std::string(to_string(s))});
    if (cat->cls && s != SurfaceKind::ProjectivePlane)
      out.push_back({ErrorCode::PayloadMismatch,
                     "a homotopy class is only meaningful on ProjectivePlane"});
  } else if (std::holds_alternative<TorusLinearPayload>(d.payload)) {
    if (s != SurfaceKind::Torus)
      out.push_back({ErrorCode::PayloadMismatch, "linear payload needs Torus"});
  }
}

} // namespace

std::vector<Violation> validate(const NValuedMapDescriptor &d, int cap) {
  std::vector<Violation> out;
  if (d.n < 1) {
    out.push_back({ErrorCode::DegreeMismatch, "n must be at least 1"});
    return out;
  }
  if (d.n > cap)
    out.push_back({ErrorCode::CapExceeded, "n = " + std::to_string(d.n) +
                                               " exceeds the degree cap " +
                                               std::to_string(cap)});
  const int expected = d.surface.generator_count();
  if (static_cast<int>(d.sigma.size()) != expected) {
    out.push_back({ErrorCode::GeneratorCountMismatch,
                   std::string(to_string(d.surface.kind)) + " needs " +
                       std::to_string(expected) + " sigma images, got " +
                       std::to_string(d.sigma.size())});
    check_payload(d, out);
    return out;
  }
  bool degrees_ok = true;
  for (std::size_t k = 0; k < d.sigma.size(); ++k)
    if (d.sigma[k].degree() != d.n) {
      degrees_ok = false;
      out.push_back({ErrorCode::DegreeMismatch,
                     "sigma[" + std::to_string(k) + "] has degree " +
                         std::to_string(d.sigma[k].degree())});
    }
  if (degrees_ok) {
    if (d.surface.kind == SurfaceKind::Torus &&
        d.sigma[0] * d.sigma[1] != d.sigma[1] * d.sigma[0])
      out.push_back({ErrorCode::RelationViolation,
                     "torus images " + d.sigma[0].to_cycle_string() + " and " +
                         d.sigma[1].to_cycle_string() + " do not commute"});
    if (d.surface.kind == SurfaceKind::ProjectivePlane) {
      const auto &s = d.sigma[0];
      if (!(s * s).is_identity())
        out.push_back({ErrorCode::RelationViolation,
                       "RP^2 image " + s.to_cycle_string() + " has order " +
                           std::to_string(s.order()) + ", which does not divide 2"});
      else if (!s.is_identity())
        out.push_back({ErrorCode::NotRealizable,
                       "every n-valued map of RP^2 is split; sigma must be trivial"});
    }
  }
  check_payload(d, out);
  return out;
}

void require_valid(const NValuedMapDescriptor &d, int cap) {
  const auto v = validate(d, cap);
  if (!v.empty())
    throw Error(v.front().code, v.front().message);
}

bool is_split(const NValuedMapDescriptor &d) {
  require_valid(d);
  for (const auto &s : d.sigma)
    if (!s.is_identity())
      return false;
  return true;
}

CoveringAnalysis covering_analysis(const NValuedMapDescriptor &d) {
  require_valid(d);
  return analyze_image(d.sigma, d.n);
}

CoveringAnalysis analyze_image(std::span<const Permutation> sigma, int n) {
  CoveringAnalysis a;
  a.n = n;
  a.L_prime = generate_group(sigma, n);
  a.index_H = a.L_prime.order();
  a.orbits = orbit_partition(a.L_prime);
  for (int i = 1; i <= n; ++i) {
    a.stabilizers.push_back(stabilizer(a.L_prime, i));
    a.fiber_coincidence_counts.push_back(transporter(a.L_prime, i, i).size());
  }
  const auto verdict = is_free_stabilizer_action(a.L_prime);
  a.free = verdict.free;
  a.witness = verdict.witness;
  a.lift_count = 1;
  for (int k = 2; k <= n; ++k)
    a.lift_count *= static_cast<std::uint64_t>(k);
  if (a.free)
    a.class_multiplicity = 1;
  return a;
}

} // namespace nvfix
