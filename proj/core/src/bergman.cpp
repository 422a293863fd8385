#include "bergman/bergman.hpp"

#include <algorithm>
#include <set>

namespace bergman {

const char* colour_name(Colour c) { return c == Colour::blue ? "blue" : "red"; }

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::string s;
  for (const auto& issue : issues) {
    if (!s.empty()) s += "\n";
    s += issue.clause + ": " + issue.detail;
  }
  return s;
}

BergmanPresentation::BergmanPresentation(std::vector<GeneratorId> generators,
                                         std::vector<ColouredRelation> relations)
    : generators_(std::move(generators)), relations_(std::move(relations)) {}

bool BergmanPresentation::has_generator(const GeneratorId& g) const {
  return std::find(generators_.begin(), generators_.end(), g) !=
         generators_.end();
}

const ColouredRelation* BergmanPresentation::find_relation(
    const Name& label) const {
  for (const auto& r : relations_) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

std::vector<int> BergmanPresentation::blue_indices() const {
  std::vector<int> idx;
  for (size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].colour == Colour::blue) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

bool BergmanPresentation::is_basic() const { return blue_indices().empty(); }

std::vector<GeneratorId> BergmanPresentation::base_generators() const {
  std::set<GeneratorId> in_range;
  for (const auto& r : relations_) {
    if (r.colour != Colour::blue) continue;
    for (const auto& [g, m] : r.rhs.terms()) in_range.insert(g);
  }
  std::vector<GeneratorId> base;
  for (const auto& g : generators_) {
    if (!in_range.count(g)) base.push_back(g);
  }
  return base;
}

MonoidPresentation BergmanPresentation::underlying_monoid() const {
  std::vector<MonoidRelation> rels;
  for (const auto& r : relations_) rels.push_back({r.label, r.lhs, r.rhs});
  return MonoidPresentation(generators_, std::move(rels));
}

namespace {

// Greedy admissibility: keep placing any blue relation whose lhs lies in
// the available generators (base + ranges already placed). An exchange
// argument shows this succeeds iff some admissible ordering exists, so the
// greedy check is a decision procedure; admissible_orderings enumerates
// the full set when wanted.
std::optional<std::vector<Name>> greedy_ordering(
    const BergmanPresentation& p) {
  auto blues = p.blue_indices();
  std::set<GeneratorId> available;
  {
    std::set<GeneratorId> in_range;
    for (int i : blues) {
      for (const auto& [g, m] : p.relations()[i].rhs.terms()) {
        in_range.insert(g);
      }
    }
    for (const auto& g : p.generators()) {
      if (!in_range.count(g)) available.insert(g);
    }
  }
  std::vector<Name> order;
  std::vector<bool> placed(blues.size(), false);
  for (size_t round = 0; round < blues.size(); ++round) {
    bool progress = false;
    for (size_t k = 0; k < blues.size(); ++k) {
      if (placed[k]) continue;
      const auto& r = p.relations()[blues[k]];
      bool fits = true;
      for (const auto& [g, m] : r.lhs.terms()) {
        if (!available.count(g)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      placed[k] = true;
      order.push_back(r.label);
      for (const auto& [g, m] : r.rhs.terms()) available.insert(g);
      progress = true;
      break;
    }
    if (!progress) return std::nullopt;
  }
  return order;
}

}  // namespace

ValidationReport BergmanPresentation::validate() const {
  ValidationReport rep;
  std::set<GeneratorId> declared;
  for (const auto& g : generators_) {
    if (!declared.insert(g).second) {
      rep.issues.push_back(
          {"duplicate-generator", "'" + g.str() + "' declared twice"});
    }
  }
  std::set<Name> labels;
  for (const auto& r : relations_) {
    if (!labels.insert(r.label).second) {
      rep.issues.push_back(
          {"duplicate-label", "'" + r.label.str() + "' used twice"});
    }
    if (r.lhs.is_zero() || r.rhs.is_zero()) {
      rep.issues.push_back(
          {"goodness", "relation '" + r.label.str() + "' has a zero side"});
    }
    for (const auto* side : {&r.lhs, &r.rhs}) {
      for (const auto& [g, m] : side->terms()) {
        if (!declared.count(g)) {
          rep.issues.push_back({"undeclared-generator",
                                "relation '" + r.label.str() + "' uses '" +
                                    g.str() + "'"});
        }
      }
    }
  }

  // Clause (i): every blue rhs a set of size >= 2, ranges pairwise disjoint.
  std::set<GeneratorId> in_some_range;
  for (const auto& r : relations_) {
    if (r.colour != Colour::blue) continue;
    bool is_set = true;
    for (const auto& [g, m] : r.rhs.terms()) {
      if (m != 1) is_set = false;
    }
    if (!is_set) {
      rep.issues.push_back({"blue-range-set",
                            "blue relation '" + r.label.str() +
                                "' has a repeated generator on the right"});
    }
    if (r.rhs.terms().size() < 2) {
      rep.issues.push_back({"blue-range-size",
                            "blue relation '" + r.label.str() +
                                "' introduces fewer than 2 generators"});
    }
    for (const auto& [g, m] : r.rhs.terms()) {
      if (!in_some_range.insert(g).second) {
        rep.issues.push_back({"blue-range-disjoint",
                              "generator '" + g.str() +
                                  "' lies in two blue ranges"});
      }
    }
  }

  // Clause (ii): an admissible ordering of the blue relations exists.
  if (!greedy_ordering(*this)) {
    rep.issues.push_back({"admissible-ordering",
                          "no admissible ordering of the blue relations"});
  }
  return rep;
}

void BergmanPresentation::require_valid(const std::string& context) const {
  ValidationReport rep = validate();
  if (!rep.ok()) {
    throw ValidationError(context + ": presentation invalid\n" +
                          rep.to_string());
  }
}

std::vector<std::vector<Name>> admissible_orderings(
    const BergmanPresentation& p) {
  auto blues = p.blue_indices();
  std::set<GeneratorId> base;
  {
    std::set<GeneratorId> in_range;
    for (int i : blues) {
      for (const auto& [g, m] : p.relations()[i].rhs.terms()) {
        in_range.insert(g);
      }
    }
    for (const auto& g : p.generators()) {
      if (!in_range.count(g)) base.insert(g);
    }
  }

  std::vector<std::vector<Name>> out;
  std::vector<Name> current;
  std::vector<bool> used(blues.size(), false);

  // Depth first over positions in blue declaration order, so the output is
  // lexicographic in declaration indices.
  auto rec = [&](auto&& self, std::set<GeneratorId>& available) -> void {
    if (current.size() == blues.size()) {
      out.push_back(current);
      return;
    }
    for (size_t k = 0; k < blues.size(); ++k) {
      if (used[k]) continue;
      const auto& r = p.relations()[blues[k]];
      bool fits = true;
      for (const auto& [g, m] : r.lhs.terms()) {
        if (!available.count(g)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      used[k] = true;
      current.push_back(r.label);
      std::vector<GeneratorId> added;
      for (const auto& [g, m] : r.rhs.terms()) {
        if (available.insert(g).second) added.push_back(g);
      }
      self(self, available);
      for (const auto& g : added) available.erase(g);
      current.pop_back();
      used[k] = false;
    }
  };
  std::set<GeneratorId> available = base;
  rec(rec, available);
  return out;
}

std::optional<std::vector<Name>> first_admissible_ordering(
    const BergmanPresentation& p) {
  return greedy_ordering(p);
}

bool is_admissible_ordering(const BergmanPresentation& p,
                            const std::vector<Name>& ordering) {
  auto blues = p.blue_indices();
  if (ordering.size() != blues.size()) return false;
  std::set<Name> blue_labels;
  for (int i : blues) blue_labels.insert(p.relations()[i].label);

  std::set<GeneratorId> available;
  for (const auto& g : p.base_generators()) available.insert(g);
  std::set<Name> used;
  for (const auto& label : ordering) {
    if (!blue_labels.count(label) || !used.insert(label).second) return false;
    const ColouredRelation* r = p.find_relation(label);
    for (const auto& [g, m] : r->lhs.terms()) {
      if (!available.count(g)) return false;
    }
    for (const auto& [g, m] : r->rhs.terms()) available.insert(g);
  }
  return true;
}

BergmanGraph::BergmanGraph(std::vector<VertexId> vertices,
                           std::vector<Hyperedge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

bool BergmanGraph::has_vertex(const VertexId& v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

const Hyperedge* BergmanGraph::find_edge(const Name& label) const {
  for (const auto& e : edges_) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

bool BergmanGraph::is_basic() const {
  for (const auto& e : edges_) {
    if (e.colour == Colour::blue) return false;
  }
  return true;
}

ValidationReport BergmanGraph::validate() const {
  return graph_to_pres(*this).validate();
}

void BergmanGraph::require_valid(const std::string& context) const {
  ValidationReport rep = validate();
  if (!rep.ok()) {
    throw ValidationError(context + ": graph invalid\n" + rep.to_string());
  }
}

BergmanGraph pres_to_graph(const BergmanPresentation& p) {
  std::vector<Hyperedge> edges;
  for (const auto& r : p.relations()) {
    edges.push_back({r.label, r.colour, r.lhs, r.rhs});
  }
  return BergmanGraph(p.generators(), std::move(edges));
}

BergmanPresentation graph_to_pres(const BergmanGraph& g) {
  std::vector<ColouredRelation> rels;
  for (const auto& e : g.edges()) {
    rels.push_back({e.label, e.colour, e.source, e.range});
  }
  return BergmanPresentation(g.vertices(), std::move(rels));
}

bool check_homomorphism(const BergmanGraph& from, const BergmanGraph& to,
                        const StructureHomomorphism& h) {
  // Vertex map: total on `from`, into `to`, injective.
  std::set<VertexId> image;
  for (const auto& v : from.vertices()) {
    auto it = h.vertex_map.find(v);
    if (it == h.vertex_map.end()) return false;
    if (!to.has_vertex(it->second)) return false;
    if (!image.insert(it->second).second) return false;
  }
  for (const auto& [v, w] : h.vertex_map) {
    if (!from.has_vertex(v)) return false;
  }

  auto transported_matches = [&](const FreeAbelianElement& src,
                                 const FreeAbelianElement& dst) {
    FreeAbelianElement pushed;
    for (const auto& [v, m] : src.terms()) {
      pushed.add(h.vertex_map.at(v), m);
    }
    if (pushed != dst) return false;
    // Exactness off the image: dst may not touch vertices outside it.
    for (const auto& [w, m] : dst.terms()) {
      if (!image.count(w)) return false;
    }
    return true;
  };

  for (const auto& e : from.edges()) {
    auto it = h.edge_map.find(e.label);
    if (it == h.edge_map.end()) return false;
    const Hyperedge* target = to.find_edge(it->second);
    if (target == nullptr) return false;
    if (target->colour != e.colour) return false;
    if (!transported_matches(e.source, target->source)) return false;
    if (!transported_matches(e.range, target->range)) return false;
  }
  for (const auto& [a, b] : h.edge_map) {
    if (from.find_edge(a) == nullptr) return false;
  }
  return true;
}

bool check_homomorphism(const BergmanPresentation& from,
                        const BergmanPresentation& to,
                        const StructureHomomorphism& h) {
  return check_homomorphism(pres_to_graph(from), pres_to_graph(to), h);
}

MonoidPresentation vmonoid_presentation(const BergmanGraph& g) {
  std::vector<MonoidRelation> rels;
  for (const auto& e : g.edges()) {
    rels.push_back({e.label, e.source, e.range});
  }
  return MonoidPresentation(g.vertices(), std::move(rels));
}

Digraph::Digraph(std::vector<VertexId> vertices,
                 std::vector<DigraphEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

void Digraph::check() const {
  std::set<VertexId> declared(vertices_.begin(), vertices_.end());
  if (declared.size() != vertices_.size()) {
    throw ValidationError("digraph declares a vertex twice");
  }
  std::set<Name> labels;
  for (const auto& e : edges_) {
    if (!labels.insert(e.label).second) {
      throw ValidationError("digraph edge label '" + e.label.str() +
                            "' used twice");
    }
    if (!declared.count(e.source) || !declared.count(e.target)) {
      throw ValidationError("digraph edge '" + e.label.str() +
                            "' has an undeclared endpoint");
    }
  }
}

BergmanGraph digraph_to_bergman(const Digraph& e) {
  e.check();
  std::vector<Hyperedge> hyperedges;
  for (const auto& v : e.vertices()) {
    FreeAbelianElement range;
    for (const auto& edge : e.edges()) {
      if (edge.source == v) range.add(edge.target, 1);
    }
    if (range.is_zero()) continue;  // v is a sink; no hyperedge
    hyperedges.push_back({v, Colour::red, FreeAbelianElement::generator(v),
                          std::move(range)});
  }
  BergmanGraph g(e.vertices(), std::move(hyperedges));
  g.require_valid("digraph embedding");
  return g;
}

}  // namespace bergman
