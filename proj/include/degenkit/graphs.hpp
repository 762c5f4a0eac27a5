// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degenkit/rational.hpp"

namespace degenkit {

enum class Side : unsigned char { X1 = 1, X2 = 2 };

std::string_view to_string(Side side);
Side parse_side(std::string_view text);

struct Generator {
  std::string id;
  Side side = Side::X1;
  Rational d_degree;  // intersection number with D on its component
};

/// Free commutative monoid of curve classes on named generators. The X1- and
/// X2-tagged generators span the submonoids H1 and H2.
class CurveClassMonoid {
 public:
  CurveClassMonoid() = default;
  explicit CurveClassMonoid(std::vector<Generator> generators);

  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(std::string_view id) const;
  bool contains(std::string_view id) const;

 private:
  std::vector<Generator> generators_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Finitely supported exponent vector; zero exponents are never stored.
class CurveClass {
 public:
  CurveClass() = default;
  explicit CurveClass(std::map<std::string, std::int64_t> exponents);

  const std::map<std::string, std::int64_t>& exponents() const { return exponents_; }
  std::int64_t exponent(std::string_view gen) const;
  bool is_zero() const { return exponents_.empty(); }
  void add(const std::string& gen, std::int64_t amount);

  CurveClass& operator+=(const CurveClass& other);
  friend CurveClass operator+(CurveClass a, const CurveClass& b) { return a += b; }
  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  friend auto operator<=>(const CurveClass& a, const CurveClass& b) {
    return a.exponents_ <=> b.exponents_;
  }

  /// "a:2,b:1" with generators in lexicographic order; "" for zero.
  std::string to_string() const;

 private:
  std::map<std::string, std::int64_t> exponents_;
};

/// True iff every generator in the support of `beta` is tagged `side`.
bool lies_in(const CurveClass& beta, Side side, const CurveClassMonoid& monoid);

/// Restriction of `beta` to the generators tagged `side`.
CurveClass restrict_to(const CurveClass& beta, Side side, const CurveClassMonoid& monoid);

/// (beta . D): sum of exponents times generator D-degrees. Throws
/// ValidationError for an undeclared generator.
Rational d_degree(const CurveClass& beta, const CurveClassMonoid& monoid);

struct Vertex {
  int genus = 0;
  CurveClass weight;
};

struct Leg {
  int label = 0;
  int index_e = 1;
  std::size_t vertex = 0;
};

struct Root {
  int label = 0;
  int index_f = 1;
  int contact = 1;
  std::size_t vertex = 0;
};

/// Intersection multiplicity d = c / f of a root.
Rational intersection_multiplicity(const Root& root);

struct ModularGraph {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // unordered, loops allowed
  std::vector<Leg> legs;
  std::vector<Root> roots;

  /// Throws ValidationError if a label repeats, an index or contact order is
  /// not positive, or a field references a missing vertex.
  void validate() const;
};

/// g with 2g - 2 = sum_v (2 g(v) - 2) + 2 #E, i.e. sum g(v) + #E - #V + 1.
/// Applied verbatim to disconnected graphs. Throws ContractViolation for a
/// graph without vertices.
int total_genus(const ModularGraph& graph);

CurveClass total_weight(const ModularGraph& graph);

/// Connected components as sorted vertex index lists, ordered by their
/// smallest vertex index.
std::vector<std::vector<std::size_t>> components(const ModularGraph& graph);

/// #E - #V + #components.
int first_betti_number(const ModularGraph& graph);

/// Complete isomorphism invariant for graphs whose labels are unique.
/// Vertices are ordered by (sorted incident labels, genus, weight, valence);
/// remaining ties are broken by minimizing over permutations of tied
/// vertices. Throws UnsupportedInput if a tie class exceeds 8 vertices.
std::string canonical_form(const ModularGraph& graph);

/// Disjoint union with every shared root label turned into an edge between
/// its two endpoints. Throws ValidationError on a root label mismatch or on
/// disagreeing (f, c) for a shared label.
ModularGraph glue(const ModularGraph& xi1, const ModularGraph& xi2);

}  // namespace degenkit
