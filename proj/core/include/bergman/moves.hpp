#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/bergman.hpp"

namespace bergman {

// Parameters of the structure-preserving moves, as recorded for replay.
// Every equality precondition carries its certificate in the record, so a
// replay verifies instead of searching.

struct RedShiftMove {
  Name relation;
  FreeAbelianElement new_lhs;
  FreeAbelianElement new_rhs;
  EqualityCertificate lhs_certificate;  // old lhs = new lhs, without i
  EqualityCertificate rhs_certificate;  // old rhs = new rhs, without i
};

struct BlueShiftMove {
  Name relation;
  FreeAbelianElement new_lhs;
  std::vector<Name> ordering;           // admissible ordering used
  EqualityCertificate lhs_certificate;  // old lhs = new lhs, restricted
};

struct EnqueueMove {
  Name relation;  // blue, lhs a single generator
};

struct OutsplitMove {
  Name relation;  // red
  std::vector<FreeAbelianElement> parts;
  std::vector<GeneratorId> new_generators;  // one per part
};

struct LonelyEliminateMove {
  GeneratorId gen;
};

struct ExtendMove {
  GeneratorId gen;
  FreeAbelianElement rhs;
  std::optional<Name> label;  // default def_<gen>, uniquified
};

struct CollapseMove {
  GeneratorId gen;
  Name relation;  // red, lhs = gen
};

struct InsplitMove {
  GeneratorId gen;   // x_1
  Name relation;     // red, lhs = x_1
  // Partition of S = {(label, k) | 1 <= k <= multiplicity of x_1 in rhs_j}
  // into non-empty parts; part p >= 2 introduces new_generators[p-2].
  std::vector<std::vector<std::pair<Name, int>>> partition;
  std::vector<GeneratorId> new_generators;  // size = parts - 1
};

using MoveParams =
    std::variant<RedShiftMove, BlueShiftMove, EnqueueMove, OutsplitMove,
                 LonelyEliminateMove, ExtendMove, CollapseMove, InsplitMove>;

struct MoveRecord {
  MoveParams params;

  std::string kind() const;  // "redshift", "blueshift", ...
};

struct MoveResult {
  BergmanPresentation output;
  MoveRecord record;
};

// --- The moves --------------------------------------------------------------
// All take a valid presentation and return a valid one (outputs are
// revalidated; an invalid output raises InternalError). Equality
// preconditions accept either a certificate or a search bound.

// Replace red relation i: lhs_i = rhs_i by new_lhs = new_rhs where both
// equalities hold in the presentation without relation i.
MoveResult red_shift(const BergmanPresentation& p, const Name& relation,
                     const FreeAbelianElement& new_lhs,
                     const FreeAbelianElement& new_rhs,
                     const CertificateOrBound& lhs_just,
                     const CertificateOrBound& rhs_just);

// Replace the lhs of the k-th blue relation (k taken from `ordering`, or
// from the greedy admissible ordering when absent) by new_lhs, where the
// equality holds in the restriction to base generators and the ranges of
// the first k-1 blue relations, with relations = those k-1 blue ones plus
// every red relation with both sides inside the restricted generators.
MoveResult blue_shift(const BergmanPresentation& p, const Name& relation,
                      const FreeAbelianElement& new_lhs,
                      const CertificateOrBound& just,
                      const std::optional<std::vector<Name>>& ordering = {});

// Remove a blue relation x = rhs whose lhs is the single generator x, drop
// x, and substitute rhs for x everywhere else. The released range becomes
// base, so admissibility survives; it is recomputed and checked anyway.
MoveResult enqueue(const BergmanPresentation& p, const Name& relation);

// Split red relation i with lhs_i = parts_1 + ... + parts_t (t >= 2, each
// part non-zero): remove i, adjoin fresh generators x_1..x_t, add the blue
// relation rhs_i = x_1 + ... + x_t (last in the ordering) and red
// relations parts_p = x_p.
MoveResult outsplit(const BergmanPresentation& p, const Name& relation,
                    const std::vector<FreeAbelianElement>& parts,
                    const std::vector<GeneratorId>& new_generators);

// Lonely generators of a basic presentation: x such that some relation
// reads x = rhs with x outside rhs, and x appears in no other relation.
// Returned as (generator, defining relation label) pairs.
std::vector<std::pair<GeneratorId, Name>> find_lonely(
    const BergmanPresentation& p);

// Remove a lonely generator together with its defining relation.
MoveResult lonely_eliminate(const BergmanPresentation& p,
                            const GeneratorId& gen);

// Inverse of elimination: adjoin a fresh generator with red defining
// relation gen = rhs (rhs non-zero, over the existing generators).
MoveResult extend(const BergmanPresentation& p, const GeneratorId& gen,
                  const FreeAbelianElement& rhs,
                  const std::optional<Name>& label = {});

// Remove relation i: x = rhs_i (x a single generator outside rhs_i, basic
// presentation), drop x and substitute rhs_i for x in every other relation.
MoveResult collapse(const BergmanPresentation& p, const GeneratorId& gen,
                    const Name& relation);

// Insplitting at x_1 = lhs of red relation i (basic presentation, x_1 in no
// other lhs): partition the occurrences of x_1 in the rhs's, one part per
// new copy of x_1; occurrence (j,k) is rerouted to the part's generator,
// and relation i becomes one relation x_p = rerouted rhs_i per part.
// A one-part partition is the identity (accepted as a no-op).
MoveResult insplit(
    const BergmanPresentation& p, const GeneratorId& gen, const Name& relation,
    const std::vector<std::vector<std::pair<Name, int>>>& partition,
    const std::vector<GeneratorId>& new_generators);

// Replay a recorded move on a presentation. Certificates stored in the
// record are verified, never searched for.
BergmanPresentation apply_move(const BergmanPresentation& p,
                               const MoveRecord& record);

struct MoveSequence {
  BergmanPresentation initial;
  std::vector<MoveRecord> records;
};

// Replays every record in order; returns all intermediate presentations,
// starting with `initial` (so size = records + 1).
std::vector<BergmanPresentation> replay(const MoveSequence& seq);

// --- Factorisations ---------------------------------------------------------

// A collapse factors as one red shift per other relation mentioning x
// (certificates built directly: n occurrences of x need n applications of
// the defining relation) followed by the elimination of x, now lonely.
MoveSequence factor_collapse(const BergmanPresentation& p,
                             const GeneratorId& gen, const Name& relation);

// An insplit factors backwards: starting from insplit(p, ...), t-1 red
// shifts turn each x_p = rhs'_i into x_p = x_1 (one backward application
// of x_1's relation), then t-1 collapses merge the copies, recovering p.
MoveSequence factor_insplit(
    const BergmanPresentation& p, const GeneratorId& gen, const Name& relation,
    const std::vector<std::vector<std::pair<Name, int>>>& partition,
    const std::vector<GeneratorId>& new_generators);

// A red shift factors through Tietze moves: add the shifted relation as a
// superfluous one, then remove the original, with both superfluousness
// certificates assembled from the shift's own (no search).
struct TietzeFactoring {
  TietzeAddRelation add;        // new relation, certified in the input
  TietzeRemoveRelation remove;  // old relation, certified in the output of add
  Name added_label;
};

TietzeFactoring tietze_factor_red_shift(const BergmanPresentation& p,
                                        const RedShiftMove& move);

// --- Graph monoid shadow ----------------------------------------------------

// A generator correspondence between the graph monoids of a move's input
// and output: monoid homomorphisms in both directions, given on
// generators. Generators absent from the map go to themselves.
struct GeneratorCorrespondence {
  std::map<GeneratorId, FreeAbelianElement> forward;   // input -> output
  std::map<GeneratorId, FreeAbelianElement> backward;  // output -> input
};

FreeAbelianElement apply_correspondence(
    const std::map<GeneratorId, FreeAbelianElement>& images,
    const FreeAbelianElement& e);

// The canonical correspondence induced by a recorded move (identity for
// shifts, x -> rhs for enqueue/collapse/eliminate, part generators -> their
// parts for outsplit, copies -> x_1 for insplit, ...).
GeneratorCorrespondence move_correspondence(const BergmanPresentation& input,
                                            const MoveRecord& record);

// Checks that the correspondence maps every defining relation of one graph
// monoid to a congruence that holds in the other, both ways, within the
// bound. All certificates are returned; ok iff every relation transported.
struct VmonoidShadowReport {
  bool ok = true;
  struct Entry {
    Name relation;
    bool forward = true;  // direction the relation was transported
    std::optional<EqualityCertificate> certificate;
  };
  std::vector<Entry> entries;
};

VmonoidShadowReport vmonoid_shadow(const BergmanPresentation& input,
                                   const BergmanPresentation& output,
                                   const GeneratorCorrespondence& corr,
                                   long long degree_bound);

}  // namespace bergman
