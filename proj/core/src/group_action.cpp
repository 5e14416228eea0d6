#include "nvfix/group_action.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "nvfix/error.hpp"

namespace nvfix {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<int> parse_int_list(std::string_view body, char sep_extra) {
  std::vector<int> out;
  std::string token;
  auto flush = [&] {
    if (token.empty())
      return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception &) {
      throw Error(ErrorCode::ParseError, "bad integer '" + token + "'");
    }
    if (used != token.size())
      throw Error(ErrorCode::ParseError, "bad integer '" + token + "'");
    out.push_back(v);
    token.clear();
  };
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == sep_extra) {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token.push_back(c);
    } else {
      throw Error(ErrorCode::ParseError,
                  std::string("unexpected character '") + c + "'");
    }
  }
  flush();
  return out;
}

void check_index(int n, int i) {
  if (i < 1 || i > n)
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " outside 1.." +
                    std::to_string(n));
}

} // namespace

Permutation Permutation::identity(int n) {
  if (n < 0 || n > 255)
    throw Error(ErrorCode::CapExceeded, "unsupported degree");
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const auto n = images.size();
  if (n > 255)
    throw Error(ErrorCode::CapExceeded, "unsupported degree");
  std::vector<std::uint8_t> img(n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const int v = images[k];
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1])
      throw Error(ErrorCode::ParseError, "images are not a bijection of 1.." +
                                             std::to_string(n));
    seen[v - 1] = true;
    img[k] = static_cast<std::uint8_t>(v - 1);
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, int n) {
  auto s = trim(text);
  if (s.empty())
    throw Error(ErrorCode::ParseError, "empty permutation string");

  if (s.front() == '[') {
    if (s.back() != ']')
      throw Error(ErrorCode::ParseError, "unterminated image list");
    auto p = from_images(parse_int_list(s.substr(1, s.size() - 2), ','));
    if (n > 0 && p.degree() != n)
      throw Error(ErrorCode::DegreeMismatch,
                  "image list has degree " + std::to_string(p.degree()) +
                      ", expected " + std::to_string(n));
    return p;
  }

  if (n <= 0)
    throw Error(ErrorCode::ParseError, "cycle notation needs a degree");
  if (s == "id" || s == "e")
    return identity(n);

  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  // Cycles are applied right to left, so "(1 2)(1 3)" means (1 2)*(1 3).
  std::vector<std::vector<int>> cycles;
  while (!s.empty()) {
    if (s.front() != '(')
      throw Error(ErrorCode::ParseError,
                  "expected '(' in '" + std::string(text) + "'");
    auto close = s.find(')');
    if (close == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "unterminated cycle");
    auto cyc = parse_int_list(s.substr(1, close - 1), ',');
    for (int v : cyc)
      check_index(n, v);
    std::vector<int> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::ParseError, "repeated point in cycle");
    cycles.push_back(std::move(cyc));
    s = trim(s.substr(close + 1));
  }
  Permutation result = identity(n);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto &cyc = *it;
    if (cyc.size() < 2)
      continue;
    std::vector<int> c(static_cast<std::size_t>(n));
    std::iota(c.begin(), c.end(), 1);
    for (std::size_t k = 0; k < cyc.size(); ++k)
      c[cyc[k] - 1] = cyc[(k + 1) % cyc.size()];
    result = from_images(c) * result;
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < images_.size(); ++k)
    if (images_[k] != k)
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k)
    inv[images_[k]] = static_cast<std::uint8_t>(k);
  return Permutation(std::move(inv));
}

int Permutation::order() const {
  int result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (seen[k])
      continue;
    int len = 0;
    for (std::size_t j = k; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k)
    out[k] = images_[k] + 1;
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < images_.size(); ++k)
    os << (k ? "," : "") << images_[k] + 1;
  os << ']';
  return os.str();
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (seen[k] || images_[k] == k)
      continue;
    os << '(';
    for (std::size_t j = k; !seen[j]; j = images_[j]) {
      seen[j] = true;
      os << (j == k ? "" : " ") << j + 1;
    }
    os << ')';
  }
  auto s = os.str();
  return s.empty() ? "()" : s;
}

std::uint64_t Permutation::key() const noexcept {
  std::uint64_t k = 0;
  for (auto v : images_)
    k = (k << 4) | v;
  return k;
}

Permutation operator*(const Permutation &a, const Permutation &b) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::DegreeMismatch, "composing permutations of degree " +
                                               std::to_string(a.degree()) +
                                               " and " +
                                               std::to_string(b.degree()));
  std::vector<std::uint8_t> img(b.images_.size());
  for (std::size_t k = 0; k < img.size(); ++k)
    img[k] = a.images_[b.images_[k]];
  return Permutation(std::move(img));
}

bool PermGroup::contains(const Permutation &p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::size_t OrbitPartition::orbit_of(int i) const {
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if (std::binary_search(orbits[k].begin(), orbits[k].end(), i))
      return k;
  throw Error(ErrorCode::IndexOutOfRange,
              "point " + std::to_string(i) + " is in no orbit");
}

PermGroup generate_group(std::span<const Permutation> gens, int n, int cap) {
  if (n < 1)
    throw Error(ErrorCode::DegreeMismatch, "degree must be positive");
  if (n > cap)
    throw Error(ErrorCode::CapExceeded, "degree " + std::to_string(n) +
                                            " exceeds cap " +
                                            std::to_string(cap));
  for (const auto &g : gens)
    if (g.degree() != n)
      throw Error(ErrorCode::DegreeMismatch,
                  "generator " + g.to_string() + " is not of degree " +
                      std::to_string(n));

  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k)
    factorial *= static_cast<std::uint64_t>(k);

  PermGroup group;
  group.degree_ = n;
  group.generators_.assign(gens.begin(), gens.end());

  std::unordered_set<std::uint64_t> seen;
  std::vector<Permutation> frontier{Permutation::identity(n)};
  seen.insert(frontier.front().key());
  group.elements_ = frontier;
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto &x : frontier) {
      for (const auto &g : gens) {
        auto y = x * g;
        if (seen.insert(y.key()).second) {
          if (seen.size() > factorial)
            throw Error(ErrorCode::CapExceeded, "closure exceeds n!");
          group.elements_.push_back(y);
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(group.elements_.begin(), group.elements_.end());
  return group;
}

OrbitPartition orbit_partition(const PermGroup &g) {
  const int n = g.degree();
  OrbitPartition part;
  std::vector<bool> assigned(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    if (assigned[i])
      continue;
    std::vector<int> orbit;
    for (const auto &a : g.elements()) {
      const int j = a(i);
      if (!assigned[j]) {
        assigned[j] = true;
        orbit.push_back(j);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    part.representatives.push_back(orbit.front());
    part.orbits.push_back(std::move(orbit));
  }
  return part;
}

PermGroup stabilizer(const PermGroup &g, int i) {
  check_index(g.degree(), i);
  PermGroup s;
  s.degree_ = g.degree();
  for (const auto &a : g.elements()) {
    if (a.fixes(i)) {
      s.elements_.push_back(a);
      if (!a.is_identity())
        s.generators_.push_back(a);
    }
  }
  return s;
}

std::vector<Permutation> transporter(const PermGroup &g, int i, int j) {
  check_index(g.degree(), i);
  check_index(g.degree(), j);
  std::vector<Permutation> out;
  for (const auto &a : g.elements())
    if (a(i) == j)
      out.push_back(a);
  return out;
}

FreenessVerdict is_free_stabilizer_action(const PermGroup &g) {
  for (int i = 1; i <= g.degree(); ++i) {
    for (const auto &a : g.elements()) {
      if (!a.is_identity() && a.fixes(i))
        return {false, std::make_pair(i, a)};
    }
  }
  return {};
}

} // namespace nvfix
