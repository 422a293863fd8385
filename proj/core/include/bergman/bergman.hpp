#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bergman/monoid.hpp"

namespace bergman {

enum class Colour { blue, red };

const char* colour_name(Colour c);

struct ColouredRelation {
  Name label;
  Colour colour = Colour::red;
  FreeAbelianElement lhs;
  FreeAbelianElement rhs;

  bool operator==(const ColouredRelation&) const = default;
};

struct ValidationIssue {
  std::string clause;  // short machine-ish tag, e.g. "blue-range-set"
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// A Bergman presentation: a good abelian monoid presentation whose
// relations are partitioned into blue and red, such that
//   (i)  every blue rhs is a set X_i of size >= 2 and the X_i are pairwise
//        disjoint, and
//   (ii) the blue relations admit an admissible ordering: each lhs uses
//        only base generators (those outside every X_i) and generators of
//        earlier X_i's.
// "Basic" means no blue relations at all.
class BergmanPresentation {
 public:
  BergmanPresentation() = default;
  BergmanPresentation(std::vector<GeneratorId> generators,
                      std::vector<ColouredRelation> relations);

  const std::vector<GeneratorId>& generators() const { return generators_; }
  const std::vector<ColouredRelation>& relations() const { return relations_; }

  bool has_generator(const GeneratorId& g) const;
  const ColouredRelation* find_relation(const Name& label) const;
  std::vector<int> blue_indices() const;  // positions, declaration order

  bool is_basic() const;

  // Base generators: declared generators not in any blue rhs support.
  std::vector<GeneratorId> base_generators() const;

  ValidationReport validate() const;
  // Convenience: throws ValidationError listing every violated clause.
  void require_valid(const std::string& context) const;

  MonoidPresentation underlying_monoid() const;

  bool operator==(const BergmanPresentation&) const = default;

 private:
  std::vector<GeneratorId> generators_;
  std::vector<ColouredRelation> relations_;
};

// All admissible orderings of the blue relations, each a sequence of blue
// labels; enumerated in lexicographic order of blue declaration positions.
// Requires clause (i) to make sense but is total: on structurally broken
// input it simply enumerates nothing.
std::vector<std::vector<Name>> admissible_orderings(
    const BergmanPresentation& p);

// First admissible ordering in the lexicographic order above (the greedy
// ordering), if any.
std::optional<std::vector<Name>> first_admissible_ordering(
    const BergmanPresentation& p);

// Whether `ordering` lists every blue label exactly once such that each
// lhs only uses base generators and earlier ranges.
bool is_admissible_ordering(const BergmanPresentation& p,
                            const std::vector<Name>& ordering);

// A Bergman graph: a finite hypergraph with blue/red hyperedges, source and
// range multisets of vertices, mirroring the presentation axioms through
// s <-> lhs and r <-> rhs.
struct Hyperedge {
  Name label;
  Colour colour = Colour::red;
  FreeAbelianElement source;
  FreeAbelianElement range;

  bool operator==(const Hyperedge&) const = default;
};

class BergmanGraph {
 public:
  BergmanGraph() = default;
  BergmanGraph(std::vector<VertexId> vertices, std::vector<Hyperedge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }

  bool has_vertex(const VertexId& v) const;
  const Hyperedge* find_edge(const Name& label) const;

  bool is_basic() const;

  ValidationReport validate() const;
  void require_valid(const std::string& context) const;

  bool operator==(const BergmanGraph&) const = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Hyperedge> edges_;
};

// The mutually inverse functors between presentations and graphs:
// generators <-> vertices, relations <-> hyperedges, lhs/rhs <-> s/r.
BergmanGraph pres_to_graph(const BergmanPresentation& p);
BergmanPresentation graph_to_pres(const BergmanGraph& g);

// A candidate homomorphism of Bergman graphs (or presentations, through the
// functors): a vertex map and an edge map, both given explicitly.
struct StructureHomomorphism {
  std::map<VertexId, VertexId> vertex_map;
  std::map<Name, Name> edge_map;
};

// True iff vertex_map is total on `from`'s vertices and injective into
// `to`'s, edge_map is total on `from`'s edges, colours are preserved, and
// multiplicities transport exactly: s'(edge_map(h)) at vertex_map(v) equals
// s(h) at v, and is 0 off the image (same for ranges).
bool check_homomorphism(const BergmanGraph& from, const BergmanGraph& to,
                        const StructureHomomorphism& h);
bool check_homomorphism(const BergmanPresentation& from,
                        const BergmanPresentation& to,
                        const StructureHomomorphism& h);

// The presentation of the graph monoid of g: one generator per vertex, one
// uncoloured relation sum(s(h)) = sum(r(h)) per hyperedge.
MonoidPresentation vmonoid_presentation(const BergmanGraph& g);

// --- Ordinary digraphs ------------------------------------------------------

struct DigraphEdge {
  Name label;
  VertexId source;
  VertexId target;

  bool operator==(const DigraphEdge&) const = default;
};

class Digraph {
 public:
  Digraph() = default;
  Digraph(std::vector<VertexId> vertices, std::vector<DigraphEdge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<DigraphEdge>& edges() const { return edges_; }

  void check() const;  // distinct names, endpoints declared

  bool operator==(const Digraph&) const = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<DigraphEdge> edges_;
};

// The hypergraph embedding of a digraph: same vertices, one red hyperedge
// per regular vertex v (one with outgoing edges), labelled by v, with
// s = {v} and r(w) = number of edges v -> w. The result is basic and its
// Leavitt path algebra is the classical one of the digraph.
BergmanGraph digraph_to_bergman(const Digraph& e);

}  // namespace bergman
