#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bergman/algebra.hpp"  // Rational
#include "bergman/bergman.hpp"

namespace bergman {

// An index into a hyperedge's source or range multiset: the k-th copy of a
// vertex, k starting at 1.
struct EdgeIndex {
  VertexId vertex;
  int counter = 1;

  auto operator<=>(const EdgeIndex&) const = default;
  std::string to_string() const;  // "u.2"
};

// One edge h_ij of the graph associated with a hypergraph: hyperedge h,
// source index i in I_h, range index j in J_h.
struct AssociatedEdge {
  Name hyperedge;
  EdgeIndex i;
  EdgeIndex j;

  auto operator<=>(const AssociatedEdge&) const = default;
};

// Per-hyperedge choice of anchor indices (i_h, j_h) defining the basis and
// the rewrite rules.
struct AnchorChoice {
  std::map<Name, std::pair<EdgeIndex, EdgeIndex>> anchors;
};

// Everything the Leavitt path algebra computations need about one
// hypergraph: index sets, the associated graph, anchors, rewriting.
// Immutable once built.
class LpaContext {
 public:
  // Colours of g are ignored. Default anchors: first vertex of the multiset
  // in declaration order, counter 1.
  explicit LpaContext(const BergmanGraph& g,
                      const std::optional<AnchorChoice>& anchors = {});

  const BergmanGraph& graph() const { return graph_; }
  const AnchorChoice& anchors() const { return anchors_; }

  const std::vector<EdgeIndex>& source_indices(const Name& hyperedge) const;
  const std::vector<EdgeIndex>& range_indices(const Name& hyperedge) const;

  // The associated graph: one edge per (h, i, j), enumerated in hyperedge
  // declaration order, then i, then j. Position in this list is the edge's
  // id; the double graph adds a starred reversal of each.
  const std::vector<AssociatedEdge>& associated_edges() const;
  int edge_id(const AssociatedEdge& e) const;  // -1 if absent

  VertexId edge_source(int edge_id_, bool starred) const;
  VertexId edge_range(int edge_id_, bool starred) const;

  int vertex_index(const VertexId& v) const;  // -1 if absent

 private:
  BergmanGraph graph_;
  AnchorChoice anchors_;
  std::vector<AssociatedEdge> edges_;
  std::map<AssociatedEdge, int> edge_ids_;
  std::map<Name, std::vector<EdgeIndex>> src_idx_;
  std::map<Name, std::vector<EdgeIndex>> rng_idx_;
};

// One letter of a path in the double graph: an associated edge, possibly
// starred (reversed).
struct PathLetter {
  int edge = 0;  // id within LpaContext::associated_edges()
  bool starred = false;

  auto operator<=>(const PathLetter&) const = default;
};

// A path in the double graph: either a single vertex (length 0) or a
// non-empty letter sequence with matching endpoints. Construction
// validates; words compare by (length, letters) with vertex words ordered
// by vertex position, which is the canonical term order of elements.
class Word {
 public:
  static Word vertex(const LpaContext& ctx, const VertexId& v);
  static Word path(const LpaContext& ctx, std::vector<PathLetter> letters);

  bool is_vertex() const { return letters_.empty(); }
  int length() const { return static_cast<int>(letters_.size()); }
  const std::vector<PathLetter>& letters() const { return letters_; }
  const VertexId& source() const { return source_; }
  const VertexId& range() const { return range_; }

  // Vertices visited, endpoints included (length + 1 entries, or just the
  // vertex for a vertex word).
  std::vector<VertexId> visited(const LpaContext& ctx) const;

  std::strong_ordering operator<=>(const Word& o) const;
  bool operator==(const Word& o) const { return (*this <=> o) == 0; }

 private:
  std::vector<PathLetter> letters_;
  VertexId source_;  // = range_ = the vertex for vertex words
  VertexId range_;
  int source_pos_ = 0;  // vertex index, for ordering vertex words
};

// A finite linear combination of words with rational coefficients.
class LpaElement {
 public:
  LpaElement() = default;
  static LpaElement zero() { return {}; }
  static LpaElement word(const Word& w, const Rational& c = Rational(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Rational>& terms() const { return terms_; }

  void add(const Word& w, const Rational& c);
  LpaElement operator+(const LpaElement& o) const;
  LpaElement operator-(const LpaElement& o) const;
  LpaElement scaled(const Rational& c) const;

  bool operator==(const LpaElement&) const = default;

 private:
  std::map<Word, Rational> terms_;
};

// Position of the leftmost forbidden factor h_{i j_h} h_{i' j_h}^* or
// h_{i_h j}^* h_{i_h j'} in w, or nullopt if w is a basis word.
std::optional<int> leftmost_forbidden(const LpaContext& ctx, const Word& w);

bool is_basis_word(const LpaContext& ctx, const Word& w);

// Applies the defining relation that eliminates the forbidden pair at
// `pos` (letters pos, pos+1), returning the equivalent combination:
//   h_{i j_h} h_{i' j_h}^* -> delta_{ii'} u - sum over j != j_h,
//   h_{i_h j}^* h_{i_h j'} -> delta_{jj'} v - sum over i != i_h.
// Precondition: the pair at pos is forbidden.
LpaElement rewrite_at(const LpaContext& ctx, const Word& w, int pos);

// Normal form: repeatedly rewrites the leftmost forbidden pair of the
// first non-basis word until only basis words remain. Each rule
// application costs one step from the budget; exhaustion is a hard error
// (InternalError), not a truncated answer.
inline constexpr long long kDefaultStepBudget = 1'000'000;

LpaElement reduce(const LpaContext& ctx, const LpaElement& x,
                  long long step_budget = kDefaultStepBudget);

// Word concatenation extended bilinearly, then reduced. Vertex words act
// as the local units; the sum of all vertices is the global unit.
LpaElement multiply(const LpaContext& ctx, const LpaElement& x,
                    const LpaElement& y,
                    long long step_budget = kDefaultStepBudget);

// All basis words of length <= max_length, in canonical word order.
std::vector<Word> enumerate_basis_words(const LpaContext& ctx,
                                        int max_length);

// Checks every instance of the four defining relation families against
// reduce; returns the instances with non-zero residue (empty = sound).
struct RelationResidue {
  std::string instance;
  LpaElement residue;
};

std::vector<RelationResidue> check_defining_relations(
    const LpaContext& ctx, long long step_budget = kDefaultStepBudget);

// Finite shadow of the corner isomorphism behind lonely-generator
// elimination, for v lonely via hyperedge h in a basic hypergraph:
//  (a) basis words of the reduced hypergraph (v and h removed) of length
//      <= max_length stay distinct basis words here;
//  (b) basis words here with both endpoints != v use no letter of h;
//  (c) sum_j h_{i_h j} h_{i_h j}^* reduces to v, every summand passing
//      through a vertex != v.
struct CornerReport {
  bool injective = true;
  bool corner_clean = true;
  bool full = true;
  std::vector<std::string> failures;

  bool ok() const { return injective && corner_clean && full; }
};

CornerReport lonely_corner_certify(const BergmanGraph& g, const VertexId& v,
                                   int max_length,
                                   const std::optional<AnchorChoice>& anchors = {});

}  // namespace bergman
