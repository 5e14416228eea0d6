#pragma once

// Finite permutation groups acting on {1..n}.
//
// Indices are 1-based at every public boundary. Groups are enumerated in
// full, so the degree is capped (default 8, i.e. at most 40320 elements).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nvfix {

inline constexpr int kDefaultDegreeCap = 8;

class Permutation {
public:
  Permutation() = default;

  /// Identity on {1..n}.
  static Permutation identity(int n);

  /// Builds from 1-based images; throws ParseError unless a bijection.
  static Permutation from_images(std::vector<int> images);

  /// Parses cycle notation "(1 2)(3 4)", "()" or "id", or one-line image
  /// notation "[2,1,4,3]". Cycle notation needs the degree; image notation
  /// must agree with it when `n` is positive.
  static Permutation parse(std::string_view text, int n);

  int degree() const noexcept { return static_cast<int>(images_.size()); }

  /// Image of the 1-based point i.
  int operator()(int i) const { return images_.at(i - 1) + 1; }

  bool is_identity() const noexcept;
  bool fixes(int i) const { return (*this)(i) == i; }

  Permutation inverse() const;

  /// Order of the permutation as a group element.
  int order() const;

  std::vector<int> images() const;

  /// One-line image notation, e.g. "[2,1,4,3]".
  std::string to_string() const;
  /// Disjoint cycle notation without fixed points, "()" for the identity.
  std::string to_cycle_string() const;

  /// Packed key, unique among permutations of the same degree (n <= 16).
  std::uint64_t key() const noexcept;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation &a, const Permutation &b);

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  explicit Permutation(std::vector<std::uint8_t> images)
      : images_(std::move(images)) {}

  std::vector<std::uint8_t> images_; // 0-based
};

class PermGroup {
public:
  PermGroup() = default;

  int degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }

  /// Sorted, contains the identity.
  const std::vector<Permutation> &elements() const noexcept {
    return elements_;
  }
  const std::vector<Permutation> &generators() const noexcept {
    return generators_;
  }

  bool contains(const Permutation &p) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }

private:
  friend PermGroup generate_group(std::span<const Permutation>, int, int);
  friend PermGroup stabilizer(const PermGroup &, int);

  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
};

struct OrbitPartition {
  /// Each orbit sorted ascending; orbits ordered by their smallest point.
  std::vector<std::vector<int>> orbits;
  /// Smallest point of each orbit, in the same order as `orbits`.
  std::vector<int> representatives;

  /// Index into `orbits` of the orbit holding point i.
  std::size_t orbit_of(int i) const;
};

struct FreenessVerdict {
  bool free = true;
  /// Smallest point with a non-trivial stabilizer and the smallest
  /// non-identity element fixing it.
  std::optional<std::pair<int, Permutation>> witness;
};

/// Closure of `gens` under composition. Throws DegreeMismatch if a generator
/// has the wrong degree and CapExceeded if n exceeds `cap`.
PermGroup generate_group(std::span<const Permutation> gens, int n,
                         int cap = kDefaultDegreeCap);

OrbitPartition orbit_partition(const PermGroup &g);

/// {a in G : a(i) = i}. Throws IndexOutOfRange.
PermGroup stabilizer(const PermGroup &g, int i);

/// {a in G : a(i) = j}; empty or a left coset of the stabilizer of i.
std::vector<Permutation> transporter(const PermGroup &g, int i, int j);

/// Free iff every stabilizer is trivial.
FreenessVerdict is_free_stabilizer_action(const PermGroup &g);

} // namespace nvfix
