#include "nvfix/geometry.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Geometry>

#include "nvfix/error.hpp"
#include "nvfix/numerics.hpp"

namespace nvfix {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::string format_vec(const Vec3 &v) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << v.x() << ',' << v.y() << ',' << v.z() << ']';
  return os.str();
}

// Angle between unit vectors, accurate near 0 and pi.
double angle_between(const Vec3 &a, const Vec3 &b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

} // namespace

SpherePoint::SpherePoint(const Vec3 &v) {
  const double n = v.norm();
  if (!(n > 0) || !std::isfinite(n))
    throw Error(ErrorCode::DomainMismatch, "cannot normalize " + format_vec(v));
  v_ = v / n;
}

SphericalCoord SphericalCoord::normalized(double theta, double phi) {
  phi = std::remainder(phi, kTwoPi); // (-pi, pi]
  if (phi > kPi / 2) {
    phi = kPi - phi;
    theta += kPi;
  } else if (phi < -kPi / 2) {
    phi = -kPi - phi;
    theta += kPi;
  }
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0)
    theta += kTwoPi;
  if (theta >= kTwoPi)
    theta = 0;
  return {theta, phi};
}

SphericalCoord SphericalCoord::from_point(const SpherePoint &p) {
  const auto &v = p.vec();
  const double phi = std::atan2(v.z(), std::hypot(v.x(), v.y()));
  return normalized(std::atan2(v.y(), v.x()), phi);
}

SpherePoint SphericalCoord::to_point() const {
  return SpherePoint(std::cos(phi) * std::cos(theta),
                     std::cos(phi) * std::sin(theta), std::sin(phi));
}

Vec3 canonical_rp2(const Vec3 &v) {
  const Vec3 u = v.normalized();
  bool flip;
  if (u.z() != 0)
    flip = u.z() < 0;
  else if (u.y() != 0)
    flip = u.y() < 0;
  else
    flip = u.x() < 0;
  return flip ? Vec3(-u) : u;
}

RP2Point::RP2Point(const SpherePoint &p)
    : rep_(SpherePoint(canonical_rp2(p.vec()))) {}

double sphere_distance(const Vec3 &a, const Vec3 &b) { return (a - b).norm(); }

double rp2_distance(const Vec3 &a, const Vec3 &b) {
  return std::min((a - b).norm(), (a + b).norm());
}

double surface_distance(SurfaceKind s, const Vec3 &a, const Vec3 &b) {
  return s == SurfaceKind::ProjectivePlane ? rp2_distance(a, b)
                                           : sphere_distance(a, b);
}

std::pair<Vec3, Vec3> tangent_frame(const Vec3 &p) {
  const Vec3 helper =
      std::abs(p.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 e1 = (helper - helper.dot(p) * p).normalized();
  Vec3 e2 = p.cross(e1);
  return {e1, e2};
}

Eigen::Matrix3d rotation_to(const Vec3 &p) {
  return Eigen::Quaterniond::FromTwoVectors(Vec3(0, 0, 1), p.normalized())
      .toRotationMatrix();
}

// The suspension is modelled as a square [0,1]^2 with its boundary collapsed.
// The square maps onto the disc of radius 1 by matching the sup-norm ring
// |w|_inf = r/2 to the circle of radius r, and the disc onto S^2 by sending
// radius r to angular distance pi r from -b, so the boundary lands on b.
namespace {
const Vec3 kCentreImage{-1.0, 0.0, 0.0};
const Vec3 kDiscE1{0.0, 1.0, 0.0};
const Vec3 kDiscE2{0.0, 0.0, 1.0};
} // namespace

Vec3 suspension_to_sphere(double u, double t) {
  const double wx = u - 0.5, wy = t - 0.5;
  const double r = 2.0 * std::max(std::abs(wx), std::abs(wy));
  if (r >= 1.0)
    return kSuspensionBasepoint;
  if (r == 0.0)
    return kCentreImage;
  const double alpha = std::atan2(wy, wx);
  const double psi = kPi * r;
  return std::cos(psi) * kCentreImage +
         std::sin(psi) * (std::cos(alpha) * kDiscE1 + std::sin(alpha) * kDiscE2);
}

Vec2 sphere_to_suspension(const Vec3 &y) {
  const double psi = angle_between(y, kCentreImage);
  const double r = psi / kPi;
  if (r >= 1.0)
    return {0.0, 0.0};
  const double alpha = std::atan2(y.dot(kDiscE2), y.dot(kDiscE1));
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double scale = 0.5 * r / std::max(std::abs(ca), std::abs(sa));
  return {0.5 + scale * ca, 0.5 + scale * sa};
}

CatalogMap CatalogMap::constant(const SpherePoint &p) {
  CatalogMap m(MapKind::Constant);
  m.pole_ = p.vec();
  return m;
}

CatalogMap CatalogMap::up(const SpherePoint &p) {
  CatalogMap m(MapKind::UP);
  m.pole_ = p.vec();
  return m;
}

CatalogMap CatalogMap::wp(const SpherePoint &p) {
  CatalogMap m(MapKind::WP);
  m.pole_ = p.vec();
  return m;
}

CatalogMap CatalogMap::constant_rp2(const SpherePoint &p) {
  CatalogMap m(MapKind::ConstantRP2);
  m.pole_ = canonical_rp2(p.vec());
  return m;
}

SurfaceKind CatalogMap::domain() const noexcept {
  return (kind_ == MapKind::WP || kind_ == MapKind::ConstantRP2)
             ? SurfaceKind::ProjectivePlane
             : SurfaceKind::Sphere;
}

CatalogMap CatalogMap::then_antipodal() const {
  if (domain() != SurfaceKind::Sphere)
    throw Error(ErrorCode::DomainMismatch,
                "antipodal post-composition needs a map of S^2");
  CatalogMap m = *this;
  m.post_antipodal_ = !m.post_antipodal_;
  return m;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string &text, const std::string &id) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v))
      return v;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::ParseError, "bad number '" + text + "' in " + id);
}

// "north", "south", "[theta,phi]" or "[x,y,z]".
SpherePoint parse_pole(const std::string &text, const std::string &id) {
  if (text == "north")
    return SpherePoint::north();
  if (text == "south")
    return SpherePoint::south();
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorCode::ParseError, "bad point '" + text + "' in " + id);
  std::vector<double> xs;
  std::stringstream ss(text.substr(1, text.size() - 2));
  for (std::string item; std::getline(ss, item, ',');)
    xs.push_back(parse_number(trim(item), id));
  if (xs.size() == 2)
    return SphericalCoord::normalized(xs[0], xs[1]).to_point();
  if (xs.size() == 3)
    return SpherePoint(Vec3(xs[0], xs[1], xs[2]));
  throw Error(ErrorCode::ParseError, "bad point '" + text + "' in " + id);
}

} // namespace

CatalogMap CatalogMap::parse(const std::string &raw) {
  std::string text;
  for (char ch : raw)
    if (ch != ' ' && ch != '\t')
      text += ch;
  bool antipodal_after = false;
  if (text.rfind("A*", 0) == 0) {
    antipodal_after = true;
    text = text.substr(2);
  }

  std::string name = text, args;
  if (const auto open = text.find('('); open != std::string::npos) {
    if (text.back() != ')')
      throw Error(ErrorCode::ParseError, "unbalanced parentheses in " + raw);
    name = text.substr(0, open);
    args = text.substr(open + 1, text.size() - open - 2);
  }

  std::optional<SpherePoint> pole;
  std::optional<double> eps;
  // split on commas outside brackets
  int depth = 0;
  std::string item;
  auto take = [&](const std::string &kv) {
    if (kv.empty())
      return;
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "expected key=value in " + raw);
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "P")
      pole = parse_pole(value, raw);
    else if (key == "eps")
      eps = parse_number(value, raw);
    else
      throw Error(ErrorCode::ParseError, "unknown argument '" + key + "' in " + raw);
  };
  for (char ch : args) {
    if (ch == '[')
      ++depth;
    if (ch == ']')
      --depth;
    if (ch == ',' && depth == 0) {
      take(item);
      item.clear();
    } else {
      item += ch;
    }
  }
  take(item);

  auto need_pole = [&] {
    if (!pole)
      throw Error(ErrorCode::ParseError, "missing P in " + raw);
    return *pole;
  };
  auto no_args = [&] {
    if (pole || eps)
      throw Error(ErrorCode::ParseError, "unexpected arguments in " + raw);
  };

  CatalogMap m(MapKind::Identity);
  if (name == "identity" || name == "id") {
    no_args();
  } else if (name == "antipodal" || name == "A") {
    no_args();
    m = antipodal();
  } else if (name == "f2") {
    no_args();
    m = f2();
  } else if (name == "f1") {
    m = make_f1(pole.value_or(SpherePoint::north()), eps.value_or(kDefaultF1Epsilon));
  } else if (name == "const") {
    m = constant(need_pole());
  } else if (name == "UP") {
    m = up(need_pole());
  } else if (name == "WP") {
    m = wp(need_pole());
  } else if (name == "constRP2") {
    m = constant_rp2(need_pole());
  } else {
    throw Error(ErrorCode::ParseError, "unknown map '" + name + "'");
  }
  if (eps && m.kind() != MapKind::F1)
    throw Error(ErrorCode::ParseError, "eps only applies to f1 in " + raw);
  return antipodal_after ? m.then_antipodal() : m;
}

std::string CatalogMap::id() const {
  std::string base;
  switch (kind_) {
  case MapKind::Identity: base = "identity"; break;
  case MapKind::Antipodal: base = "antipodal"; break;
  case MapKind::Constant: base = "const(P=" + format_vec(pole_) + ")"; break;
  case MapKind::F1: {
    std::ostringstream os;
    os.precision(17);
    os << "f1(P=" << format_vec(pole_) << ",eps=" << epsilon_ << ")";
    base = os.str();
    break;
  }
  case MapKind::F2: base = "f2"; break;
  case MapKind::UP: base = "UP(P=" + format_vec(pole_) + ")"; break;
  case MapKind::WP: base = "WP(P=" + format_vec(pole_) + ")"; break;
  case MapKind::ConstantRP2:
    base = "constRP2(P=" + format_vec(pole_) + ")";
    break;
  }
  return post_antipodal_ ? "A*" + base : base;
}

namespace {

Vec3 eval_f2(const Vec3 &x) {
  const Vec2 ut = sphere_to_suspension(x);
  if (ut == Vec2(0.0, 0.0))
    return kSuspensionBasepoint;
  const double u2 = std::fmod(2.0 * ut.x(), 1.0);
  return suspension_to_sphere(u2, ut.y());
}

} // namespace

Vec3 CatalogMap::apply(const Vec3 &x) const {
  Vec3 y;
  switch (kind_) {
  case MapKind::Identity: y = x; break;
  case MapKind::Antipodal: y = -x; break;
  case MapKind::Constant:
  case MapKind::ConstantRP2: y = pole_; break;
  case MapKind::UP:
  case MapKind::WP: y = 2.0 * x.dot(pole_) * x - pole_; break;
  case MapKind::F2: y = eval_f2(x); break;
  case MapKind::F1: {
    // Stereographic projection from the pole; 1 - x.P computed as
    // |x - P|^2 / 2 to keep precision near the pole.
    const double denom = 0.5 * (x - pole_).squaredNorm();
    if (denom == 0.0) {
      y = pole_;
      break;
    }
    const double w1 = x.dot(e1_) / denom + epsilon_;
    const double w2 = x.dot(e2_) / denom;
    const double s = w1 * w1 + w2 * w2;
    y = (2.0 * w1 * e1_ + 2.0 * w2 * e2_ + (s - 1.0) * pole_) / (s + 1.0);
    break;
  }
  }
  return post_antipodal_ ? Vec3(-y) : y;
}

Vec3 CatalogMap::apply_lift(const Vec3 &x) const {
  switch (kind_) {
  case MapKind::WP: return 2.0 * x.dot(pole_) * x - pole_;
  case MapKind::ConstantRP2: return pole_;
  default:
    throw Error(ErrorCode::DomainMismatch, id() + " is not a map of RP^2");
  }
}

SpherePoint eval(const CatalogMap &map, const SpherePoint &x) {
  if (map.domain() != SurfaceKind::Sphere)
    throw Error(ErrorCode::DomainMismatch,
                map.id() + " is not defined on S^2 points");
  return SpherePoint(map.apply(x.vec()));
}

RP2Point eval(const CatalogMap &map, const RP2Point &x) {
  if (map.domain() != SurfaceKind::ProjectivePlane)
    throw Error(ErrorCode::DomainMismatch,
                map.id() + " is not defined on RP^2 points");
  return RP2Point(map.apply(x.vec()));
}

CatalogMap make_f1(const SpherePoint &pole, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::EpsilonTooLarge,
                "epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  CatalogMap m(MapKind::F1);
  m.pole_ = pole.vec();
  m.epsilon_ = epsilon;
  std::tie(m.e1_, m.e2_) = tangent_frame(m.pole_);

  const double bound = 2.0 * std::sin(kPi / 4.0);
  GridSpec coarse;
  coarse.resolution = 2e-2;
  coarse.cluster_radius = 0.1;
  const double worst = max_displacement(
      [&](const Vec3 &x) { return m.apply(x); }, coarse);
  if (!(worst < bound))
    throw Error(ErrorCode::EpsilonTooLarge,
                "displacement " + std::to_string(worst) + " reaches bound");
  return m;
}

std::string_view to_string(Rp2Class c) {
  return c == Rp2Class::Trivial ? "Trivial" : "NonTrivial";
}

std::vector<SpherePoint> rp2_arc_points(int n) {
  std::vector<SpherePoint> pts;
  for (int k = 1; k <= n; ++k) {
    const double a = k * kPi / (2.0 * (n + 1));
    pts.emplace_back(std::cos(a), 0.0, std::sin(a));
  }
  return pts;
}

std::vector<CatalogMap> build_rp2_representative(int n, Rp2Class cls,
                                                 const GridSpec &grid) {
  if (n < 1)
    throw Error(ErrorCode::ValidationFailed, "n must be positive");
  std::vector<CatalogMap> maps;
  for (const auto &p : rp2_arc_points(n))
    maps.push_back(cls == Rp2Class::NonTrivial ? CatalogMap::wp(p)
                                               : CatalogMap::constant_rp2(p));

  constexpr double kCoincidenceFloor = 1e-6;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto hit = coincidence_min_distance(maps[i], maps[j], grid);
      if (!(hit.min > kCoincidenceFloor))
        throw Error(ErrorCode::ValidationFailed,
                    maps[i].id() + " and " + maps[j].id() +
                        " nearly coincide: " + std::to_string(hit.min));
    }
  }
  return maps;
}

} // namespace nvfix
