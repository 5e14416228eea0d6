#include "nvfix/nielsen.hpp"

#include <cstdlib>

namespace nvfix {

std::int64_t nielsen_split(std::span<const std::int64_t> ns) {
  if (ns.empty())
    throw Error(ErrorCode::EmptyInput, "no coordinate Nielsen numbers given");
  std::int64_t total = 0;
  for (auto v : ns) {
    if (v < 0)
      throw Error(ErrorCode::InconsistentInput, "negative Nielsen number");
    total += v;
  }
  return total;
}

NielsenResult nielsen_nonsplit(const NielsenInput &input) {
  const auto &a = input.analysis;
  if (!a.free) {
    std::string detail = "stabilizer action is not free";
    if (a.witness)
      detail += ": " + a.witness->second.to_cycle_string() + " fixes " +
                std::to_string(a.witness->first);
    throw Error(ErrorCode::NotFree, detail);
  }

  std::map<int, std::int64_t> by_rep;
  for (const auto &[key, value] : input.per_pair) {
    if (key < 1 || key > a.n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "per-pair key " + std::to_string(key) + " outside 1.." +
                      std::to_string(a.n));
    if (value < 0)
      throw Error(ErrorCode::InconsistentInput, "negative per-pair value");
    const int rep = a.orbits.representatives[a.orbits.orbit_of(key)];
    auto [it, inserted] = by_rep.emplace(rep, value);
    if (!inserted && it->second != value)
      throw Error(ErrorCode::InconsistentInput,
                  "per-pair values " + std::to_string(it->second) + " and " +
                      std::to_string(value) + " given for the orbit of " +
                      std::to_string(rep));
  }

  NielsenResult r;
  r.formula_used = kFormulaOrbitSum;
  for (int rep : a.orbits.representatives) {
    const auto it = by_rep.find(rep);
    if (it == by_rep.end())
      throw Error(ErrorCode::MissingRepresentative,
                  "no per-pair value for the orbit of " + std::to_string(rep));
    r.terms.emplace_back(rep, it->second);
    r.total += it->second;
  }
  return r;
}

std::int64_t single_map_nielsen(const SurfaceDescriptor &surface,
                                const MapDatum &datum) {
  switch (surface.kind) {
  case SurfaceKind::Disc:
  case SurfaceKind::ProjectivePlane:
    return 1;
  case SurfaceKind::Sphere:
    if (const int *deg = std::get_if<int>(&datum))
      return *deg == -1 ? 0 : 1;
    throw Error(ErrorCode::InconsistentInput, "sphere maps need a degree");
  case SurfaceKind::Torus:
    if (const auto *m = std::get_if<IntMatrix2>(&datum))
      return std::llabs(det2(*m - IntMatrix2::Identity()));
    throw Error(ErrorCode::InconsistentInput, "torus maps need a 2x2 matrix");
  }
  throw Error(ErrorCode::UnsupportedSurface, "unknown surface");
}

HomotopyClassCount classify_homotopy_count(const SurfaceDescriptor &surface, int n) {
  if (n < 1)
    throw Error(ErrorCode::DegreeMismatch, "n must be at least 1");
  switch (surface.kind) {
  case SurfaceKind::Disc:
    return {1, ""};
  case SurfaceKind::Sphere:
    if (n >= 3)
      return {1, ""};
    // n = 2: the degree up to sign, a natural number.
    return {std::nullopt, n == 2 ? "absolute degree" : "degree"};
  case SurfaceKind::ProjectivePlane:
    if (n == 1)
      throw Error(ErrorCode::UnsupportedSurface,
                  "single-valued self-maps of RP^2 are not classified here");
    return {2, ""};
  case SurfaceKind::Torus:
    break;
  }
  throw Error(ErrorCode::UnsupportedSurface,
              "homotopy classification of torus maps is not implemented");
}

} // namespace nvfix
