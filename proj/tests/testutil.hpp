#pragma once

// Shared fixtures, deterministic random generators and independent oracles.
// The oracles recompute expected answers straight from the definitions
// (exhaustive search where feasible), so library results are compared
// against a second implementation instead of against themselves.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bergman/bergman.hpp"
#include "bergman/io.hpp"
#include "bergman/lpa.hpp"
#include "bergman/monoid.hpp"
#include "bergman/moves.hpp"

namespace testutil {

using namespace bergman;

inline std::string data_path(const std::string& name) {
  return std::string(DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline BergmanPresentation load_bp(const std::string& name) {
  return parse_bp(slurp(data_path(name)));
}

inline BergmanGraph load_bg(const std::string& name) {
  return parse_bg(slurp(data_path(name)));
}

inline BergmanPresentation load_bg_as_pres(const std::string& name) {
  return graph_to_pres(load_bg(name));
}

inline int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

inline FreeAbelianElement el(
    std::initializer_list<std::pair<const char*, long long>> items) {
  FreeAbelianElement e;
  for (const auto& [g, m] : items) e.add(Name(g), m);
  return e;
}

inline FreeAbelianElement gen(const char* g) {
  return FreeAbelianElement::generator(Name(g));
}

// ---------------------------------------------------------------------------
// Congruence oracle: the set of elements reachable from `a` by rewriting
// with single relations in either direction, never leaving total degree
// <= cap. This is the definition of the bounded congruence, explored with
// a plain worklist.

inline std::set<FreeAbelianElement> oracle_reachable(
    const MonoidPresentation& p, const FreeAbelianElement& a, long long cap) {
  std::set<FreeAbelianElement> seen;
  if (a.degree() > cap) return seen;
  std::vector<FreeAbelianElement> todo{a};
  seen.insert(a);
  while (!todo.empty()) {
    FreeAbelianElement e = todo.back();
    todo.pop_back();
    for (const auto& r : p.relations()) {
      for (const auto* from : {&r.lhs, &r.rhs}) {
        const FreeAbelianElement& to = (from == &r.lhs) ? r.rhs : r.lhs;
        if (!from->leq(e)) continue;
        FreeAbelianElement next = e.minus(*from) + to;
        if (next.degree() > cap) continue;
        if (seen.insert(next).second) todo.push_back(next);
      }
    }
  }
  return seen;
}

inline bool oracle_congruent(const MonoidPresentation& p,
                             const FreeAbelianElement& a,
                             const FreeAbelianElement& b, long long cap) {
  return oracle_reachable(p, a, cap).count(b) > 0;
}

// Certificate replay from the definition: step k applies relation `label`
// at `context`, so the current element must equal context + from-side and
// becomes context + to-side.
inline bool oracle_verify(const MonoidPresentation& p,
                          const EqualityCertificate& cert) {
  FreeAbelianElement cur = cert.start;
  for (const auto& s : cert.steps) {
    const MonoidRelation* r = p.find_relation(s.relation);
    if (!r) return false;
    const FreeAbelianElement& from =
        s.direction == StepDirection::forward ? r->lhs : r->rhs;
    const FreeAbelianElement& to =
        s.direction == StepDirection::forward ? r->rhs : r->lhs;
    if (!(s.context + from == cur)) return false;
    cur = s.context + to;
  }
  return cur == cert.end;
}

// ---------------------------------------------------------------------------
// Admissibility oracle: every permutation of the blue relations, checked
// against the definition (each lhs supported on base generators and the
// ranges of earlier blue relations). Results are in lexicographic order of
// blue declaration positions.

inline std::vector<std::vector<Name>> oracle_orderings(
    const BergmanPresentation& p) {
  std::vector<const ColouredRelation*> blues;
  for (const auto& r : p.relations()) {
    if (r.colour == Colour::blue) blues.push_back(&r);
  }
  std::set<Name> in_blue_range;
  for (const auto* b : blues) {
    for (const auto& [g, m] : b->rhs.terms()) in_blue_range.insert(g);
  }
  std::set<Name> base;
  for (const auto& g : p.generators()) {
    if (!in_blue_range.count(g)) base.insert(g);
  }

  std::vector<int> idx(blues.size());
  for (size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
  std::vector<std::vector<Name>> out;
  do {
    std::set<Name> allowed = base;
    bool ok = true;
    for (int k : idx) {
      for (const auto& [g, m] : blues[k]->lhs.terms()) {
        if (!allowed.count(g)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      for (const auto& [g, m] : blues[k]->rhs.terms()) allowed.insert(g);
    }
    if (ok) {
      std::vector<Name> labels;
      for (int k : idx) labels.push_back(blues[k]->label);
      out.push_back(std::move(labels));
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Seeded randomness. Every test fixes its own seed so failures replay.

struct Rng {
  std::mt19937 g;
  explicit Rng(uint32_t seed) : g(seed) {}

  // uniform in [lo, hi]
  int range(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
  }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[range(0, static_cast<int>(v.size()) - 1)];
  }
};

inline std::vector<Name> make_names(const std::string& stem, int n) {
  std::vector<Name> out;
  for (int k = 0; k < n; ++k) out.emplace_back(stem + std::to_string(k));
  return out;
}

inline FreeAbelianElement random_element(Rng& rng,
                                         const std::vector<Name>& pool,
                                         int max_degree) {
  FreeAbelianElement e;
  int deg = rng.range(1, max_degree);
  for (int k = 0; k < deg; ++k) e.add(rng.pick(pool), 1);
  return e;
}

// A valid Bergman graph, admissible by construction: disjoint blue ranges
// are carved out of the vertex list (keeping at least one base vertex),
// and each blue source only uses vertices released by earlier blues.
inline BergmanGraph random_bergman_graph(Rng& rng, int max_v = 8,
                                         int max_e = 6) {
  int nv = rng.range(1, max_v);
  std::vector<Name> vertices = make_names("v", nv);
  std::vector<Name> shuffled = vertices;
  std::shuffle(shuffled.begin(), shuffled.end(), rng.g);

  int ne = rng.range(0, max_e);
  std::vector<Hyperedge> edges;
  std::vector<Name> allowed;  // base + ranges of earlier blues
  size_t next_free = 1;       // shuffled[0] stays base
  int label_no = 0;
  for (int k = 0; k < ne; ++k) {
    bool blue = nv >= 3 && shuffled.size() - next_free >= 2 && rng.coin(0.4);
    Name label("e" + std::to_string(label_no++));
    if (blue) {
      if (allowed.empty()) {
        allowed.assign(shuffled.begin(), shuffled.begin() + next_free);
      }
      int take = rng.range(2, std::min<int>(
                                  3, static_cast<int>(shuffled.size()) -
                                         static_cast<int>(next_free)));
      FreeAbelianElement range;
      std::vector<Name> released;
      for (int t = 0; t < take; ++t) {
        range.add(shuffled[next_free], 1);
        released.push_back(shuffled[next_free]);
        ++next_free;
      }
      FreeAbelianElement source = random_element(rng, allowed, 3);
      allowed.insert(allowed.end(), released.begin(), released.end());
      edges.push_back({label, Colour::blue, source, range});
    } else {
      edges.push_back({label, Colour::red, random_element(rng, vertices, 4),
                       random_element(rng, vertices, 4)});
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng.g);
  return BergmanGraph(std::move(vertices), std::move(edges));
}

inline BergmanPresentation random_bergman_presentation(Rng& rng,
                                                       int max_v = 8,
                                                       int max_e = 6) {
  return graph_to_pres(random_bergman_graph(rng, max_v, max_e));
}

// Basic (all-red) presentation; always valid.
inline BergmanPresentation random_basic_presentation(Rng& rng, int max_g = 6,
                                                     int max_r = 4) {
  int ng = rng.range(1, max_g);
  std::vector<Name> gens = make_names("x", ng);
  int nr = rng.range(0, max_r);
  std::vector<ColouredRelation> rels;
  for (int k = 0; k < nr; ++k) {
    rels.push_back({Name("r" + std::to_string(k)), Colour::red,
                    random_element(rng, gens, 3),
                    random_element(rng, gens, 3)});
  }
  return BergmanPresentation(std::move(gens), std::move(rels));
}

// All-red hypergraph with bounded side sizes, as the Leavitt path algebra
// computations consume.
inline BergmanGraph random_hypergraph(Rng& rng, int max_v = 4, int max_e = 3,
                                      int max_side = 3) {
  int nv = rng.range(1, max_v);
  std::vector<Name> vertices = make_names("u", nv);
  int ne = rng.range(1, max_e);
  std::vector<Hyperedge> edges;
  for (int k = 0; k < ne; ++k) {
    edges.push_back({Name("h" + std::to_string(k)), Colour::red,
                     random_element(rng, vertices, max_side),
                     random_element(rng, vertices, max_side)});
  }
  return BergmanGraph(std::move(vertices), std::move(edges));
}

// A hypergraph with a designated lonely vertex: `lone` is the sole source
// of its hyperedge, absent from every range and from every other edge.
struct LonelyFixture {
  BergmanGraph graph;
  VertexId lone;
};

inline LonelyFixture random_lonely_graph(Rng& rng) {
  int nv = rng.range(1, 3);
  std::vector<Name> others = make_names("w", nv);
  std::vector<Hyperedge> edges;
  int ne = rng.range(0, 2);
  for (int k = 0; k < ne; ++k) {
    edges.push_back({Name("g" + std::to_string(k)), Colour::red,
                     random_element(rng, others, 2),
                     random_element(rng, others, 2)});
  }
  Name lone("v");
  edges.push_back({Name("h"), Colour::red, FreeAbelianElement::generator(lone),
                   random_element(rng, others, 2)});
  std::vector<Name> vertices = others;
  vertices.push_back(lone);
  std::shuffle(edges.begin(), edges.end(), rng.g);
  return {BergmanGraph(std::move(vertices), std::move(edges)), lone};
}

// ---------------------------------------------------------------------------
// Basis-word oracle for the Leavitt path algebra: brute-force enumeration
// of the double-graph paths without forbidden factors, recomputed from the
// hypergraph alone. Words are compared through this independent rendering.

struct OracleLetter {
  Name h;
  VertexId iv;
  int ic = 1;  // source index (vertex, counter)
  VertexId jv;
  int jc = 1;  // range index
  bool starred = false;
};

inline std::string oracle_letter_str(const OracleLetter& l) {
  std::string s = l.h.str() + "[" + l.iv.str() + "." + std::to_string(l.ic) +
                  "][" + l.jv.str() + "." + std::to_string(l.jc) + "]";
  if (l.starred) s += "^";
  return s;
}

struct OracleWordSet {
  std::set<std::string> words;  // rendered; vertex words are just the name
};

// Anchor of h = first index in declaration order (the library's default).
inline OracleWordSet oracle_basis_words(const BergmanGraph& g,
                                        int max_length) {
  // index lists per hyperedge, in vertex declaration order
  struct Idx {
    std::vector<std::pair<VertexId, int>> src, rng;
  };
  std::map<Name, Idx> idx;
  for (const auto& e : g.edges()) {
    Idx x;
    for (const auto& v : g.vertices()) {
      for (long long k = 1; k <= e.source.multiplicity(v); ++k) {
        x.src.push_back({v, static_cast<int>(k)});
      }
      for (long long k = 1; k <= e.range.multiplicity(v); ++k) {
        x.rng.push_back({v, static_cast<int>(k)});
      }
    }
    idx[e.label] = std::move(x);
  }

  std::vector<OracleLetter> alphabet;
  for (const auto& e : g.edges()) {
    const Idx& x = idx.at(e.label);
    for (const auto& [iv, ic] : x.src) {
      for (const auto& [jv, jc] : x.rng) {
        alphabet.push_back({e.label, iv, ic, jv, jc, false});
        alphabet.push_back({e.label, iv, ic, jv, jc, true});
      }
    }
  }

  auto source_of = [](const OracleLetter& l) { return l.starred ? l.jv : l.iv; };
  auto range_of = [](const OracleLetter& l) { return l.starred ? l.iv : l.jv; };
  auto forbidden = [&](const OracleLetter& a, const OracleLetter& b) {
    if (!(a.h == b.h)) return false;
    const Idx& x = idx.at(a.h);
    auto ih = x.src.front();
    auto jh = x.rng.front();
    if (!a.starred && b.starred) {
      return a.jv == jh.first && a.jc == jh.second && b.jv == jh.first &&
             b.jc == jh.second;
    }
    if (a.starred && !b.starred) {
      return a.iv == ih.first && a.ic == ih.second && b.iv == ih.first &&
             b.ic == ih.second;
    }
    return false;
  };

  OracleWordSet out;
  for (const auto& v : g.vertices()) out.words.insert(v.str());

  std::vector<std::vector<OracleLetter>> frontier;
  for (const auto& l : alphabet) frontier.push_back({l});
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::vector<OracleLetter>> next;
    for (const auto& w : frontier) {
      std::string s;
      for (const auto& l : w) {
        if (!s.empty()) s += " ";
        s += oracle_letter_str(l);
      }
      out.words.insert(s);
      if (len == max_length) continue;
      for (const auto& l : alphabet) {
        if (!(range_of(w.back()) == source_of(l))) continue;
        if (forbidden(w.back(), l)) continue;
        auto w2 = w;
        w2.push_back(l);
        next.push_back(std::move(w2));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting with a pluggable strategy, built only on the public rewrite_at.
// Forbidden positions are detected through two-letter subwords, so this
// shares no scanning code with the library's reduce.

inline std::vector<int> forbidden_positions(const LpaContext& ctx,
                                            const Word& w) {
  std::vector<int> out;
  const auto& ls = w.letters();
  for (size_t k = 0; k + 1 < ls.size(); ++k) {
    Word pair = Word::path(ctx, {ls[k], ls[k + 1]});
    if (!is_basis_word(ctx, pair)) out.push_back(static_cast<int>(k));
  }
  return out;
}

enum class Strategy { leftmost, rightmost, random };

inline LpaElement reduce_with_strategy(const LpaContext& ctx,
                                       const LpaElement& x, Strategy how,
                                       Rng* rng = nullptr,
                                       long long max_steps = 200000) {
  LpaElement done;
  std::vector<std::pair<Word, Rational>> pending(x.terms().begin(),
                                                 x.terms().end());
  long long steps = 0;
  while (!pending.empty()) {
    size_t which = pending.size() - 1;
    if (how == Strategy::random && rng) {
      which = static_cast<size_t>(
          rng->range(0, static_cast<int>(pending.size()) - 1));
    }
    auto [w, c] = pending[which];
    pending.erase(pending.begin() + static_cast<long>(which));
    if (c == Rational(0)) continue;
    auto spots = forbidden_positions(ctx, w);
    if (spots.empty()) {
      done.add(w, c);
      continue;
    }
    if (++steps > max_steps) {
      throw std::runtime_error("strategy reducer ran away");
    }
    int pos = spots.front();
    if (how == Strategy::rightmost) pos = spots.back();
    if (how == Strategy::random && rng) {
      pos = spots[static_cast<size_t>(
          rng->range(0, static_cast<int>(spots.size()) - 1))];
    }
    LpaElement expanded = rewrite_at(ctx, w, pos);
    for (const auto& [w2, c2] : expanded.terms()) {
      pending.push_back({w2, c * c2});
    }
  }
  return done;
}

// All words (basis or not) of length <= max_length: vertex words plus every
// adjacency-respecting letter sequence.
inline std::vector<Word> all_words(const LpaContext& ctx, int max_length) {
  std::vector<Word> out;
  for (const auto& v : ctx.graph().vertices()) {
    out.push_back(Word::vertex(ctx, v));
  }
  int n = static_cast<int>(ctx.associated_edges().size());
  std::vector<std::vector<PathLetter>> frontier;
  for (int e = 0; e < n; ++e) {
    for (bool st : {false, true}) frontier.push_back({PathLetter{e, st}});
  }
  for (int len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<std::vector<PathLetter>> next;
    for (const auto& ls : frontier) {
      out.push_back(Word::path(ctx, std::vector<PathLetter>(ls)));
      if (len == max_length) continue;
      VertexId end = ctx.edge_range(ls.back().edge, ls.back().starred);
      for (int e = 0; e < n; ++e) {
        for (bool st : {false, true}) {
          if (!(ctx.edge_source(e, st) == end)) continue;
          auto ls2 = ls;
          ls2.push_back(PathLetter{e, st});
          next.push_back(std::move(ls2));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Rendering of a library word in the oracle's format, for set comparison.
inline std::string render_word(const LpaContext& ctx, const Word& w) {
  if (w.is_vertex()) return w.source().str();
  std::string s;
  for (const auto& l : w.letters()) {
    const AssociatedEdge& e = ctx.associated_edges()[l.edge];
    if (!s.empty()) s += " ";
    s += e.hyperedge.str() + "[" + e.i.vertex.str() + "." +
         std::to_string(e.i.counter) + "][" + e.j.vertex.str() + "." +
         std::to_string(e.j.counter) + "]";
    if (l.starred) s += "^";
  }
  return s;
}

}  // namespace testutil
