#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

// A name token for a generator / vertex / relation label. Tokens are
// non-empty and avoid every character the file and expression grammars
// reserve, plus all-digit strings (those read as coefficients or the zero
// element). Dots and underscores are fine: x0_1, u.1, ...
class Name {
 public:
  Name() = default;
  explicit Name(std::string text);

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  // True iff `text` would be accepted by the constructor.
  static bool valid(const std::string& text);

  auto operator<=>(const Name&) const = default;

 private:
  std::string text_;
};

using GeneratorId = Name;
using VertexId = Name;

// An element of the free abelian monoid over generator names: a finitely
// supported multiplicity map. Stored multiplicities are always >= 1; the
// empty map is the zero element.
class FreeAbelianElement {
 public:
  using Map = std::map<GeneratorId, long long>;

  FreeAbelianElement() = default;

  static FreeAbelianElement zero() { return {}; }
  static FreeAbelianElement generator(const GeneratorId& g, long long mult = 1);

  bool is_zero() const { return mult_.empty(); }
  long long multiplicity(const GeneratorId& g) const;
  long long degree() const;  // sum of multiplicities
  const Map& terms() const { return mult_; }

  // True iff the support is a single generator with multiplicity 1.
  bool is_single_generator() const;

  void add(const GeneratorId& g, long long mult);

  FreeAbelianElement operator+(const FreeAbelianElement& o) const;
  FreeAbelianElement& operator+=(const FreeAbelianElement& o);
  FreeAbelianElement scaled(long long k) const;

  // Componentwise a <= b; exactly the applicability test for rewriting.
  bool leq(const FreeAbelianElement& bigger) const;

  // this - o; requires o.leq(*this).
  FreeAbelianElement minus(const FreeAbelianElement& o) const;

  // Replace every occurrence of g by `replacement` (m * g becomes
  // m * replacement). Replacing by zero just deletes g.
  FreeAbelianElement substitute(const GeneratorId& g,
                                const FreeAbelianElement& replacement) const;

  // Sorted-by-name rendering, e.g. "2 x + y"; "0" for the zero element.
  // Used for visited-set keys and anywhere no declaration order is at hand.
  std::string canonical_string() const;

  auto operator<=>(const FreeAbelianElement&) const = default;

 private:
  Map mult_;
};

}  // namespace bergman
