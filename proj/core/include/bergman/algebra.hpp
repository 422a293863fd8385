#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bergman/bergman.hpp"

namespace bergman {

using Rational = boost::rational<long long>;

std::string rational_to_string(const Rational& r);

// A noncommutative polynomial with exact rational coefficients over a pool
// of scalar symbols. Monomials are words over symbol ids (empty word = 1);
// the canonical term order is (degree, then lexicographic by id), ids
// being assigned in symbol declaration order.
class NcPolynomial {
 public:
  using Monomial = std::vector<int32_t>;

  // Graded order: by degree, then left-to-right by symbol id.
  struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    }
  };
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  NcPolynomial() = default;
  static NcPolynomial constant(const Rational& c);
  static NcPolynomial symbol(int32_t id);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  NcPolynomial operator+(const NcPolynomial& o) const;
  NcPolynomial operator-(const NcPolynomial& o) const;
  NcPolynomial operator*(const NcPolynomial& o) const;

  bool operator==(const NcPolynomial&) const = default;

 private:
  void add_term(Monomial m, const Rational& c);
  TermMap terms_;
};

class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  SymbolicMatrix(int rows, int cols);  // zero matrix
  static SymbolicMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  NcPolynomial& at(int r, int c);
  const NcPolynomial& at(int r, int c) const;

  SymbolicMatrix operator+(const SymbolicMatrix& o) const;
  SymbolicMatrix operator-(const SymbolicMatrix& o) const;
  SymbolicMatrix operator*(const SymbolicMatrix& o) const;
  SymbolicMatrix direct_sum(const SymbolicMatrix& o) const;

  bool operator==(const SymbolicMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<NcPolynomial> entries_;  // row-major
};

// The scalar generators of a matrix presentation. Names are printable and
// stable: eps[<gen>][r,c], sig[<label>][r,c], sigp[<label>][r,c], indices
// 1-based.
struct ScalarSymbol {
  std::string name;

  bool operator==(const ScalarSymbol&) const = default;
};

struct ScalarEquation {
  NcPolynomial lhs;
  NcPolynomial rhs;
  bool trivial = false;  // both sides expand to the same normal form
};

struct AlgebraPresentation {
  std::vector<ScalarSymbol> symbols;
  std::vector<ScalarEquation> relations;
};

// Builds and caches the symbol matrices eps_x of the matrix recipe for one
// fixed admissible ordering of a valid Bergman presentation:
//  - base generators get 1x1 matrices, the last being 1 minus the others;
//  - the generators introduced by blue relation k get square matrices of
//    dimension |eps of that relation's lhs|, the last again a complement;
//  - eps of a composite element is the direct sum of its summands' blocks
//    in generator declaration order.
class EpsilonContext {
 public:
  // ordering: blue labels; defaults to the greedy admissible ordering.
  EpsilonContext(const BergmanPresentation& p,
                 const std::optional<std::vector<Name>>& ordering = {});

  const BergmanPresentation& presentation() const { return pres_; }
  const std::vector<Name>& ordering() const { return ordering_; }
  const std::vector<ScalarSymbol>& symbols() const { return symbols_; }

  int dimension(const FreeAbelianElement& e) const;
  const SymbolicMatrix& generator_matrix(const GeneratorId& g) const;
  SymbolicMatrix matrix_for(const FreeAbelianElement& e) const;

 private:
  int32_t new_symbol(const std::string& name);

  BergmanPresentation pres_;
  std::vector<Name> ordering_;
  std::vector<ScalarSymbol> symbols_;
  std::map<GeneratorId, SymbolicMatrix> gen_matrix_;
  std::map<GeneratorId, int> gen_dim_;
  // generators grouped by level: level 0 = base, level k = ordering[k-1]
  std::vector<std::vector<GeneratorId>> levels_;

  friend AlgebraPresentation build_algebra_presentation(
      const BergmanPresentation& p,
      const std::optional<std::vector<Name>>& ordering);
};

// Entrywise expansion of a matrix equation into scalar equations, row
// major. Throws PreconditionError on dimension mismatch.
std::vector<ScalarEquation> expand_matrix_relation(const SymbolicMatrix& lhs,
                                                   const SymbolicMatrix& rhs);

// The explicit matrix presentation of the Bergman algebra of p:
//  - scalar generators: all eps symbols, then sig/sigp entries per red
//    relation in declaration order;
//  - relations, entrywise expanded: orthogonality/idempotence of the level
//    symbol matrices (every level, base included), conjugation
//    eps_a * eps_x * eps_a = eps_x for the levels introduced by blue
//    relations, and per red relation a = b the four equations
//    eps_a s eps_b = s, eps_b s' eps_a = s', s s' = eps_a, s' s = eps_b.
// Trivially satisfied equations are kept, flagged.
AlgebraPresentation build_algebra_presentation(
    const BergmanPresentation& p,
    const std::optional<std::vector<Name>>& ordering = {});

// Rendering used by the .alg emitter and the golden files: terms joined by
// " + ", each "coef*sym1*sym2...", bare coefficient for constants, "0" for
// the zero polynomial.
std::string polynomial_to_string(const NcPolynomial& poly,
                                 const std::vector<ScalarSymbol>& symbols);

std::string algebra_to_string(const AlgebraPresentation& a);

}  // namespace bergman
