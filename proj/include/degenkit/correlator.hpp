// Copyright 2026 The degenkit Authors
// SPDX-License-Identifier: Apache-2.0

// Relative correlators, invariant tables, and evaluation of the degeneration
// formula against a table, in the contact-order (standard dual) and the
// intersection-multiplicity (Chen-Ruan dual) normalizations.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "degenkit/algebra.hpp"
#include "degenkit/graphs.hpp"
#include "degenkit/splitting.hpp"
#include "degenkit/twisting.hpp"

namespace degenkit {

/// tau_m(gamma) at leg `label`; ψ exponents are symbolic.
struct Insertion {
  int label = 0;
  int descendant = 0;
  std::string class_id;
  Parity parity = Parity::even;
};

struct RootInsertion {
  int label = 0;
  std::string class_id;  // basis class of the divisor catalog
  Parity parity = Parity::even;
};

struct KeyLeg {
  int index_e = 1;
  int descendant = 0;
  std::string class_id;
  Parity parity = Parity::even;
  friend auto operator<=>(const KeyLeg&, const KeyLeg&) = default;
};

struct KeyRoot {
  int index_f = 1;
  int contact = 1;
  std::string class_id;
  Parity parity = Parity::even;
  friend auto operator<=>(const KeyRoot&, const KeyRoot&) = default;
};

/// A connected one-vertex relative correlator <prod tau(gamma) | prod delta>
/// of (X_side, D). Legs and roots are listed in marking order.
///
/// Text form: `X1;g=0;w=a:2;L=(e,m,class,+),...;R=(f,c,class,-),...`
/// with `+` for even and `-` for odd classes.
struct CorrelatorKey {
  Side side = Side::X1;
  int genus = 0;
  CurveClass weight;
  std::vector<KeyLeg> legs;
  std::vector<KeyRoot> roots;

  std::string to_string() const;
  /// Throws ValidationError on malformed text.
  static CorrelatorKey parse(std::string_view text);
  friend bool operator==(const CorrelatorKey&, const CorrelatorKey&) = default;
};

/// Class and generator ids usable inside key text: [A-Za-z0-9_.]+.
bool is_key_identifier(std::string_view id);

struct CanonicalKey {
  CorrelatorKey key;  // legs and roots sorted
  int sign = 1;       // value(original) = sign * value(key)
  std::string text;
};

/// Sorts markings (legs, then roots) and records the Koszul sign of the
/// reordering.
CanonicalKey canonicalize(const CorrelatorKey& key);

struct KeyContext {
  const CurveClassMonoid* monoid = nullptr;
  const SectorCatalog* divisor = nullptr;
};

/// Correlators that vanish without a table entry: the roots' total
/// intersection multiplicity differs from (beta . D), or a root class lives
/// on a sector whose band order is not the root's index f, or the markings
/// carry an odd number of odd classes. The last two need a divisor catalog.
bool vanishes_structurally(const CorrelatorKey& key, const KeyContext& context);

class InvariantTable {
 public:
  /// Stores the value under the canonical key. Throws ValidationError if the
  /// same canonical key arrives with a different value, or if a nonzero value
  /// is given for a key repeating an odd insertion.
  void insert(const CorrelatorKey& key, const Rational& value);
  std::optional<Rational> find(const CorrelatorKey& key) const;
  /// Lookup of an already canonical key text.
  const Rational* find_canonical(const std::string& text) const;
  std::size_t size() const { return entries_.size(); }
  /// Entries sorted by canonical text.
  std::vector<std::pair<std::string, Rational>> sorted_entries() const;

 private:
  std::unordered_map<std::string, Rational> entries_;
};

/// Connected value if `graph` is connected, else the signed product over
/// components (ordered by smallest marking label) of connected values.
/// The sign reorders prod_{N} gamma_i prod_{M} delta_j into per-component
/// groups. Throws MissingKeysError, or UnsupportedInput for a component with
/// edges or, when there are several components, a component without marks.
Rational evaluate_disconnected(const ModularGraph& graph, Side side,
                               std::span<const Insertion> legs,
                               std::span<const RootInsertion> roots, const InvariantTable& table,
                               const KeyContext& context);

enum class Convention { standard_dual, chen_ruan };
enum class Normalization { labeled, orbits };

std::string_view to_string(Convention c);
Convention parse_convention(std::string_view text);
std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view text);

struct EvaluationOptions {
  Convention convention = Convention::standard_dual;
  Normalization normalization = Normalization::labeled;
  bool record_terms = false;
  EnumerationOptions enumeration;
};

struct Term {
  std::size_t splitting = 0;
  std::vector<std::string> delta_choice;
  int sign = 1;
  Rational coefficient;
  std::vector<std::string> left_keys;
  std::vector<std::string> right_keys;
  Rational left_value;
  Rational right_value;
};

struct EvaluationResult {
  Rational value;
  std::size_t splitting_count = 0;
  std::size_t term_count = 0;  // nonzero (eta, delta) contributions
  std::vector<Term> terms;     // filled when record_terms is set
};

/// Right-hand side of the degeneration formula. Requires the problem to
/// carry a divisor catalog and `insertions` to cover the legs exactly.
/// Throws MissingKeysError listing every absent canonical key.
EvaluationResult evaluate_degeneration(const DegenerationProblem& problem,
                                       std::span<const Insertion> insertions,
                                       const InvariantTable& table, const TwistingChoice& rule,
                                       const EvaluationOptions& options = {});

/// Canonical keys the evaluation touches, sorted and deduplicated; keys that
/// vanish structurally are left out.
std::vector<CanonicalKey> needed_keys(const DegenerationProblem& problem,
                                      std::span<const Insertion> insertions,
                                      const EvaluationOptions& options = {});

}  // namespace degenkit
