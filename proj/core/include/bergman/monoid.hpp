#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/element.hpp"

namespace bergman {

struct MonoidRelation {
  Name label;
  FreeAbelianElement lhs;
  FreeAbelianElement rhs;

  bool operator==(const MonoidRelation&) const = default;
};

// A finite presentation of an abelian monoid, <X | lhs_i = rhs_i>.
// Generators keep their declaration order; it is the canonical order used
// by serializers and by the matrix recipe. A presentation is "good" when
// no relation side is zero.
class MonoidPresentation {
 public:
  MonoidPresentation() = default;
  MonoidPresentation(std::vector<GeneratorId> generators,
                     std::vector<MonoidRelation> relations);

  const std::vector<GeneratorId>& generators() const { return generators_; }
  const std::vector<MonoidRelation>& relations() const { return relations_; }

  bool has_generator(const GeneratorId& g) const;
  int generator_index(const GeneratorId& g) const;  // -1 if absent
  const MonoidRelation* find_relation(const Name& label) const;

  // Declared generators distinct, labels distinct, every generator used in a
  // relation declared, no zero relation side. Throws ValidationError.
  void check_good() const;

  MonoidPresentation without_relation(const Name& label) const;

  bool operator==(const MonoidPresentation&) const = default;

 private:
  std::vector<GeneratorId> generators_;
  std::vector<MonoidRelation> relations_;
};

// One rewrite step in the congruence generated by the relations: at
// `context`, relation `label` is applied left-to-right (forward) or
// right-to-left (backward). The element rewritten is context + from-side,
// the result is context + to-side.
enum class StepDirection { forward, backward };

struct CertificateStep {
  Name relation;
  StepDirection direction = StepDirection::forward;
  FreeAbelianElement context;

  bool operator==(const CertificateStep&) const = default;
};

struct EqualityCertificate {
  FreeAbelianElement start;
  FreeAbelianElement end;
  std::vector<CertificateStep> steps;

  bool operator==(const EqualityCertificate&) const = default;
};

// Sequential composition; requires a.end == b.start.
EqualityCertificate compose_certificates(const EqualityCertificate& a,
                                         const EqualityCertificate& b);
// The reverse derivation (directions flipped, steps reversed).
EqualityCertificate reverse_certificate(const EqualityCertificate& cert);

// Replays a certificate step by step, independently of how it was found.
// False on any mismatch (unknown relation, context + side != current
// element, or wrong endpoints).
bool verify_certificate(const MonoidPresentation& p,
                        const EqualityCertificate& cert);

// Bounded decision of a ~ b in the congruence generated by the relations.
// Searches the rewrite graph restricted to elements of total degree
// <= degree_bound, breadth first; expansion order is deterministic
// (relations in declaration order, forward before backward, layers sorted
// by (degree, canonical string)), so the returned certificate is too.
// NotEqualUpToBound is NOT a refutation: the problem is EXPSPACE-hard in
// general and the search is complete only within the bound.
struct CongruenceResult {
  std::optional<EqualityCertificate> certificate;  // engaged iff equal
  long long bound_used = 0;

  bool equal() const { return certificate.has_value(); }
};

CongruenceResult congruence_equal(const MonoidPresentation& p,
                                  const FreeAbelianElement& a,
                                  const FreeAbelianElement& b,
                                  long long degree_bound);

// max(deg a, deg b) + 8 * (largest relation side degree); the default bound
// when a caller passes none.
long long default_degree_bound(const MonoidPresentation& p,
                               const FreeAbelianElement& a,
                               const FreeAbelianElement& b);

// A relation is superfluous when its sides are congruent using the other
// relations only. Returns the witnessing certificate (valid in the
// presentation without that relation), or nullopt if unknown at the bound.
std::optional<EqualityCertificate> is_superfluous(const MonoidPresentation& p,
                                                  const Name& label,
                                                  long long degree_bound);

// Sound partial refutation: a ~ b forces a - b into the Z-span of the
// relation differences {lhs_i - rhs_i}. Returns true when a - b is provably
// OUTSIDE that lattice, i.e. the congruence can never identify a and b at
// any bound. False means "no refutation", not "equal".
bool lattice_refutes(const MonoidPresentation& p, const FreeAbelianElement& a,
                     const FreeAbelianElement& b);

// --- Tietze transformations -------------------------------------------------
// The four elementary moves between good presentations of the same monoid.

struct TietzeAddGenerator {  // (A): adjoin x with defining relation x = rhs
  GeneratorId gen;
  FreeAbelianElement rhs;        // non-zero, over the existing generators
  std::optional<Name> label;     // default: def_<gen>, uniquified
};

struct TietzeRemoveGenerator {  // (B): inverse of (A)
  GeneratorId gen;
};

// Justification for adding/removing a superfluous relation: an explicit
// certificate (verified, never searched) or a search bound.
using CertificateOrBound = std::variant<EqualityCertificate, long long>;

struct TietzeAddRelation {  // (C): add a derivable relation
  Name label;
  FreeAbelianElement lhs;
  FreeAbelianElement rhs;
  CertificateOrBound justification;
};

struct TietzeRemoveRelation {  // (D): remove a derivable relation
  Name label;
  CertificateOrBound justification;
};

using TietzeStep = std::variant<TietzeAddGenerator, TietzeRemoveGenerator,
                                TietzeAddRelation, TietzeRemoveRelation>;

// Applies one step; both input and output are good presentations. Throws
// PreconditionError when the step's side conditions fail (for (C)/(D) the
// message distinguishes "refuted" from "unknown at bound N").
MonoidPresentation apply_tietze(const MonoidPresentation& p,
                                const TietzeStep& step);

// Helper shared by Tietze and the moves: return a certificate for from = to
// in p, either by validating the supplied one or by bounded search. Throws
// PreconditionError (refuted / unknown at bound / bad certificate).
EqualityCertificate justify_equality(const MonoidPresentation& p,
                                     const FreeAbelianElement& from,
                                     const FreeAbelianElement& to,
                                     const CertificateOrBound& justification,
                                     const std::string& what);

// Picks a label not used by any relation of p: `stem`, then with `_`
// appended until fresh.
Name fresh_label(const MonoidPresentation& p, const std::string& stem);

}  // namespace bergman
