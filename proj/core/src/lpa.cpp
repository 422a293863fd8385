#include "bergman/lpa.hpp"

#include <algorithm>
#include <set>

namespace bergman {

std::string EdgeIndex::to_string() const {
  return vertex.str() + "." + std::to_string(counter);
}

namespace {

// Structural sanity for a hypergraph used as LPA input. Colours are
// irrelevant here, so this is deliberately weaker than Bergman validity.
void check_hypergraph(const BergmanGraph& g) {
  std::set<VertexId> declared;
  for (const auto& v : g.vertices()) {
    if (!declared.insert(v).second) {
      throw ValidationError("vertex '" + v.str() + "' declared twice");
    }
  }
  std::set<Name> labels;
  for (const auto& e : g.edges()) {
    if (!labels.insert(e.label).second) {
      throw ValidationError("hyperedge label '" + e.label.str() +
                            "' used twice");
    }
    if (e.source.is_zero() || e.range.is_zero()) {
      throw ValidationError("hyperedge '" + e.label.str() +
                            "' has an empty source or range");
    }
    for (const auto* side : {&e.source, &e.range}) {
      for (const auto& [v, m] : side->terms()) {
        if (!declared.count(v)) {
          throw ValidationError("hyperedge '" + e.label.str() +
                                "' uses undeclared vertex '" + v.str() + "'");
        }
      }
    }
  }
}

std::vector<EdgeIndex> index_list(const BergmanGraph& g,
                                  const FreeAbelianElement& side) {
  std::vector<EdgeIndex> out;
  for (const auto& v : g.vertices()) {
    long long m = side.multiplicity(v);
    for (long long k = 1; k <= m; ++k) {
      out.push_back({v, static_cast<int>(k)});
    }
  }
  return out;
}

}  // namespace

LpaContext::LpaContext(const BergmanGraph& g,
                       const std::optional<AnchorChoice>& anchors)
    : graph_(g) {
  check_hypergraph(graph_);
  for (const auto& e : graph_.edges()) {
    src_idx_[e.label] = index_list(graph_, e.source);
    rng_idx_[e.label] = index_list(graph_, e.range);
  }
  for (const auto& e : graph_.edges()) {
    std::pair<EdgeIndex, EdgeIndex> pick = {src_idx_[e.label].front(),
                                            rng_idx_[e.label].front()};
    if (anchors) {
      auto it = anchors->anchors.find(e.label);
      if (it != anchors->anchors.end()) {
        const auto& [i, j] = it->second;
        const auto& si = src_idx_[e.label];
        const auto& rj = rng_idx_[e.label];
        if (std::find(si.begin(), si.end(), i) == si.end()) {
          throw PreconditionError("anchor " + i.to_string() +
                                  " is not a source index of '" +
                                  e.label.str() + "'");
        }
        if (std::find(rj.begin(), rj.end(), j) == rj.end()) {
          throw PreconditionError("anchor " + j.to_string() +
                                  " is not a range index of '" +
                                  e.label.str() + "'");
        }
        pick = it->second;
      }
    }
    anchors_.anchors[e.label] = pick;
  }
  if (anchors) {
    for (const auto& [label, pair] : anchors->anchors) {
      if (graph_.find_edge(label) == nullptr) {
        throw PreconditionError("anchor given for unknown hyperedge '" +
                                label.str() + "'");
      }
    }
  }
  for (const auto& e : graph_.edges()) {
    for (const auto& i : src_idx_[e.label]) {
      for (const auto& j : rng_idx_[e.label]) {
        AssociatedEdge ae{e.label, i, j};
        edge_ids_[ae] = static_cast<int>(edges_.size());
        edges_.push_back(ae);
      }
    }
  }
}

const std::vector<EdgeIndex>& LpaContext::source_indices(
    const Name& hyperedge) const {
  auto it = src_idx_.find(hyperedge);
  if (it == src_idx_.end()) {
    throw PreconditionError("unknown hyperedge '" + hyperedge.str() + "'");
  }
  return it->second;
}

const std::vector<EdgeIndex>& LpaContext::range_indices(
    const Name& hyperedge) const {
  auto it = rng_idx_.find(hyperedge);
  if (it == rng_idx_.end()) {
    throw PreconditionError("unknown hyperedge '" + hyperedge.str() + "'");
  }
  return it->second;
}

const std::vector<AssociatedEdge>& LpaContext::associated_edges() const {
  return edges_;
}

int LpaContext::edge_id(const AssociatedEdge& e) const {
  auto it = edge_ids_.find(e);
  return it == edge_ids_.end() ? -1 : it->second;
}

VertexId LpaContext::edge_source(int edge_id_, bool starred) const {
  const AssociatedEdge& e = edges_.at(edge_id_);
  return starred ? e.j.vertex : e.i.vertex;
}

VertexId LpaContext::edge_range(int edge_id_, bool starred) const {
  const AssociatedEdge& e = edges_.at(edge_id_);
  return starred ? e.i.vertex : e.j.vertex;
}

int LpaContext::vertex_index(const VertexId& v) const {
  const auto& vs = graph_.vertices();
  auto it = std::find(vs.begin(), vs.end(), v);
  return it == vs.end() ? -1 : static_cast<int>(it - vs.begin());
}

Word Word::vertex(const LpaContext& ctx, const VertexId& v) {
  int pos = ctx.vertex_index(v);
  if (pos < 0) {
    throw PreconditionError("unknown vertex '" + v.str() + "'");
  }
  Word w;
  w.source_ = v;
  w.range_ = v;
  w.source_pos_ = pos;
  return w;
}

Word Word::path(const LpaContext& ctx, std::vector<PathLetter> letters) {
  if (letters.empty()) {
    throw PreconditionError("a path word needs at least one letter");
  }
  int n = static_cast<int>(ctx.associated_edges().size());
  for (const auto& l : letters) {
    if (l.edge < 0 || l.edge >= n) {
      throw PreconditionError("path letter references an unknown edge");
    }
  }
  for (size_t k = 0; k + 1 < letters.size(); ++k) {
    VertexId mid = ctx.edge_range(letters[k].edge, letters[k].starred);
    VertexId next = ctx.edge_source(letters[k + 1].edge, letters[k + 1].starred);
    if (!(mid == next)) {
      throw PreconditionError("letters " + std::to_string(k) + " and " +
                              std::to_string(k + 1) +
                              " do not concatenate to a path");
    }
  }
  Word w;
  w.source_ = ctx.edge_source(letters.front().edge, letters.front().starred);
  w.range_ = ctx.edge_range(letters.back().edge, letters.back().starred);
  w.source_pos_ = ctx.vertex_index(w.source_);
  w.letters_ = std::move(letters);
  return w;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  if (auto c = letters_ <=> o.letters_; c != 0) return c;
  if (auto c = source_pos_ <=> o.source_pos_; c != 0) return c;
  return source_ <=> o.source_;
}

std::vector<VertexId> Word::visited(const LpaContext& ctx) const {
  if (is_vertex()) return {source_};
  std::vector<VertexId> vs = {source_};
  for (const auto& l : letters_) {
    vs.push_back(ctx.edge_range(l.edge, l.starred));
  }
  return vs;
}

LpaElement LpaElement::word(const Word& w, const Rational& c) {
  LpaElement e;
  e.add(w, c);
  return e;
}

void LpaElement::add(const Word& w, const Rational& c) {
  if (c == Rational(0)) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

LpaElement LpaElement::operator+(const LpaElement& o) const {
  LpaElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, c);
  return r;
}

LpaElement LpaElement::operator-(const LpaElement& o) const {
  LpaElement r = *this;
  for (const auto& [w, c] : o.terms_) r.add(w, -c);
  return r;
}

LpaElement LpaElement::scaled(const Rational& c) const {
  LpaElement r;
  if (c == Rational(0)) return r;
  for (const auto& [w, k] : terms_) r.add(w, k * c);
  return r;
}

namespace {

// The two forbidden patterns at letters (a, b):
//   A: h_{i j_h} h_{i' j_h}^*  (a unstarred, b starred, same h, both range
//      indices equal to the range anchor),
//   B: h_{i_h j}^* h_{i_h j'}  (a starred, b unstarred, same h, both source
//      indices equal to the source anchor).
bool forbidden_pair(const LpaContext& ctx, const PathLetter& a,
                    const PathLetter& b) {
  const AssociatedEdge& ea = ctx.associated_edges()[a.edge];
  const AssociatedEdge& eb = ctx.associated_edges()[b.edge];
  if (!(ea.hyperedge == eb.hyperedge)) return false;
  const auto& [ih, jh] = ctx.anchors().anchors.at(ea.hyperedge);
  if (!a.starred && b.starred) {
    return ea.j == jh && eb.j == jh;
  }
  if (a.starred && !b.starred) {
    return ea.i == ih && eb.i == ih;
  }
  return false;
}

}  // namespace

std::optional<int> leftmost_forbidden(const LpaContext& ctx, const Word& w) {
  const auto& ls = w.letters();
  for (size_t k = 0; k + 1 < ls.size(); ++k) {
    if (forbidden_pair(ctx, ls[k], ls[k + 1])) {
      return static_cast<int>(k);
    }
  }
  return std::nullopt;
}

bool is_basis_word(const LpaContext& ctx, const Word& w) {
  return !leftmost_forbidden(ctx, w).has_value();
}

LpaElement rewrite_at(const LpaContext& ctx, const Word& w, int pos) {
  const auto& ls = w.letters();
  if (pos < 0 || pos + 1 >= static_cast<int>(ls.size()) ||
      !forbidden_pair(ctx, ls[pos], ls[pos + 1])) {
    throw PreconditionError("no forbidden pair at position " +
                            std::to_string(pos));
  }
  const PathLetter& a = ls[pos];
  const PathLetter& b = ls[pos + 1];
  const AssociatedEdge& ea = ctx.associated_edges()[a.edge];
  const AssociatedEdge& eb = ctx.associated_edges()[b.edge];
  const Name& h = ea.hyperedge;

  LpaElement out;
  auto with_pair = [&](const PathLetter& x, const PathLetter& y) {
    std::vector<PathLetter> nl(ls.begin(), ls.begin() + pos);
    nl.push_back(x);
    nl.push_back(y);
    nl.insert(nl.end(), ls.begin() + pos + 2, ls.end());
    return Word::path(ctx, std::move(nl));
  };
  auto without_pair = [&]() {
    std::vector<PathLetter> nl(ls.begin(), ls.begin() + pos);
    nl.insert(nl.end(), ls.begin() + pos + 2, ls.end());
    if (nl.empty()) {
      return Word::vertex(ctx, ctx.edge_source(a.edge, a.starred));
    }
    return Word::path(ctx, std::move(nl));
  };

  if (!a.starred) {
    // Pattern A: delta_{i i'} u - sum over other range indices.
    if (ea.i == eb.i) out.add(without_pair(), Rational(1));
    for (const auto& j : ctx.range_indices(h)) {
      if (j == ea.j) continue;
      PathLetter x{ctx.edge_id({h, ea.i, j}), false};
      PathLetter y{ctx.edge_id({h, eb.i, j}), true};
      out.add(with_pair(x, y), Rational(-1));
    }
  } else {
    // Pattern B: delta_{j j'} v - sum over other source indices.
    if (ea.j == eb.j) out.add(without_pair(), Rational(1));
    for (const auto& i : ctx.source_indices(h)) {
      if (i == ea.i) continue;
      PathLetter x{ctx.edge_id({h, i, ea.j}), true};
      PathLetter y{ctx.edge_id({h, i, eb.j}), false};
      out.add(with_pair(x, y), Rational(-1));
    }
  }
  return out;
}

LpaElement reduce(const LpaContext& ctx, const LpaElement& x,
                  long long step_budget) {
  LpaElement done;
  std::vector<std::pair<Word, Rational>> pending(x.terms().begin(),
                                                 x.terms().end());
  long long steps = 0;
  while (!pending.empty()) {
    auto [w, c] = pending.back();
    pending.pop_back();
    if (c == Rational(0)) continue;
    std::optional<int> pos = leftmost_forbidden(ctx, w);
    if (!pos) {
      done.add(w, c);
      continue;
    }
    if (++steps > step_budget) {
      throw InternalError("rewrite step budget (" +
                          std::to_string(step_budget) + ") exhausted");
    }
    LpaElement rewritten = rewrite_at(ctx, w, *pos);
    for (const auto& [w2, c2] : rewritten.terms()) {
      pending.push_back({w2, c * c2});
    }
  }
  return done;
}

namespace {

std::optional<Word> concatenate(const LpaContext& ctx, const Word& a,
                                const Word& b) {
  if (!(a.range() == b.source())) return std::nullopt;
  if (a.is_vertex()) return b;
  if (b.is_vertex()) return a;
  std::vector<PathLetter> ls = a.letters();
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return Word::path(ctx, std::move(ls));
}

}  // namespace

LpaElement multiply(const LpaContext& ctx, const LpaElement& x,
                    const LpaElement& y, long long step_budget) {
  LpaElement prod;
  for (const auto& [wa, ca] : x.terms()) {
    for (const auto& [wb, cb] : y.terms()) {
      if (auto w = concatenate(ctx, wa, wb)) {
        prod.add(*w, ca * cb);
      }
    }
  }
  return reduce(ctx, prod, step_budget);
}

std::vector<Word> enumerate_basis_words(const LpaContext& ctx,
                                        int max_length) {
  // Letters leaving each vertex, in canonical (edge id, star) order.
  std::map<VertexId, std::vector<PathLetter>> out_letters;
  const auto& edges = ctx.associated_edges();
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    for (bool starred : {false, true}) {
      out_letters[ctx.edge_source(id, starred)].push_back({id, starred});
    }
  }

  std::vector<Word> result;
  std::vector<Word> frontier;
  for (const auto& v : ctx.graph().vertices()) {
    frontier.push_back(Word::vertex(ctx, v));
  }
  result = frontier;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      auto it = out_letters.find(w.range());
      if (it == out_letters.end()) continue;
      for (const auto& l : it->second) {
        if (!w.is_vertex() && forbidden_pair(ctx, w.letters().back(), l)) {
          continue;  // forbidden factors are local: prune and move on
        }
        std::vector<PathLetter> ls = w.letters();
        ls.push_back(l);
        next.push_back(Word::path(ctx, std::move(ls)));
      }
    }
    result.insert(result.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<RelationResidue> check_defining_relations(
    const LpaContext& ctx, long long step_budget) {
  std::vector<RelationResidue> bad;
  const BergmanGraph& g = ctx.graph();
  auto record = [&bad](const std::string& instance, const LpaElement& res) {
    if (!res.is_zero()) bad.push_back({instance, res});
  };

  // (i) uv = delta_{uv} u.
  for (const auto& u : g.vertices()) {
    for (const auto& v : g.vertices()) {
      LpaElement prod = multiply(ctx, LpaElement::word(Word::vertex(ctx, u)),
                                 LpaElement::word(Word::vertex(ctx, v)),
                                 step_budget);
      LpaElement expected;
      if (u == v) expected = LpaElement::word(Word::vertex(ctx, u));
      record("(i) " + u.str() + "*" + v.str(), prod - expected);
    }
  }

  // (ii) vertex absorption on every double-graph letter.
  const auto& edges = ctx.associated_edges();
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    for (bool starred : {false, true}) {
      Word w = Word::path(ctx, {{id, starred}});
      std::string wn = edges[id].hyperedge.str() + "[" +
                       edges[id].i.to_string() + "][" +
                       edges[id].j.to_string() + "]" + (starred ? "^" : "");
      LpaElement lw = LpaElement::word(w);
      LpaElement left =
          multiply(ctx, LpaElement::word(Word::vertex(ctx, w.source())), lw,
                   step_budget);
      record("(ii) " + w.source().str() + "*" + wn,
             left - reduce(ctx, lw, step_budget));
      LpaElement right = multiply(
          ctx, lw, LpaElement::word(Word::vertex(ctx, w.range())), step_budget);
      record("(ii) " + wn + "*" + w.range().str(),
             right - reduce(ctx, lw, step_budget));
    }
  }

  // (iii) sum_j h_ij h_i'j^* = delta_{ii'} u,  u the vertex of i.
  for (const auto& e : g.edges()) {
    const auto& srcs = ctx.source_indices(e.label);
    const auto& rngs = ctx.range_indices(e.label);
    for (const auto& i : srcs) {
      for (const auto& ip : srcs) {
        LpaElement sum;
        for (const auto& j : rngs) {
          Word w = Word::path(ctx, {{ctx.edge_id({e.label, i, j}), false},
                                    {ctx.edge_id({e.label, ip, j}), true}});
          sum.add(w, Rational(1));
        }
        LpaElement expected;
        if (i == ip) {
          expected = LpaElement::word(Word::vertex(ctx, i.vertex));
        }
        record("(iii) " + e.label.str() + " i=" + i.to_string() +
                   " i'=" + ip.to_string(),
               reduce(ctx, sum - expected, step_budget));
      }
    }
  }

  // (iv) sum_i h_ij^* h_ij' = delta_{jj'} v,  v the vertex of j.
  for (const auto& e : g.edges()) {
    const auto& srcs = ctx.source_indices(e.label);
    const auto& rngs = ctx.range_indices(e.label);
    for (const auto& j : rngs) {
      for (const auto& jp : rngs) {
        LpaElement sum;
        for (const auto& i : srcs) {
          Word w = Word::path(ctx, {{ctx.edge_id({e.label, i, j}), true},
                                    {ctx.edge_id({e.label, i, jp}), false}});
          sum.add(w, Rational(1));
        }
        LpaElement expected;
        if (j == jp) {
          expected = LpaElement::word(Word::vertex(ctx, j.vertex));
        }
        record("(iv) " + e.label.str() + " j=" + j.to_string() +
                   " j'=" + jp.to_string(),
               reduce(ctx, sum - expected, step_budget));
      }
    }
  }
  return bad;
}

CornerReport lonely_corner_certify(const BergmanGraph& g, const VertexId& v,
                                   int max_length,
                                   const std::optional<AnchorChoice>& anchors) {
  check_hypergraph(g);
  if (!g.is_basic()) {
    throw PreconditionError("corner certification: hypergraph has blue "
                            "hyperedges (not basic)");
  }
  if (!g.has_vertex(v)) {
    throw PreconditionError("corner certification: unknown vertex '" +
                            v.str() + "'");
  }
  // v must be lonely via some hyperedge h.
  const Hyperedge* lonely_via = nullptr;
  for (const auto& e : g.edges()) {
    if (e.source == FreeAbelianElement::generator(v) &&
        e.range.multiplicity(v) == 0) {
      bool elsewhere = false;
      for (const auto& f : g.edges()) {
        if (f.label == e.label) continue;
        if (f.source.multiplicity(v) > 0 || f.range.multiplicity(v) > 0) {
          elsewhere = true;
        }
      }
      if (!elsewhere) lonely_via = &e;
    }
  }
  if (lonely_via == nullptr) {
    throw PreconditionError("corner certification: '" + v.str() +
                            "' is not lonely");
  }

  // The reduced hypergraph: drop v and its hyperedge.
  std::vector<VertexId> rvertices;
  for (const auto& u : g.vertices()) {
    if (!(u == v)) rvertices.push_back(u);
  }
  std::vector<Hyperedge> redges;
  for (const auto& e : g.edges()) {
    if (!(e.label == lonely_via->label)) redges.push_back(e);
  }
  BergmanGraph reduced(std::move(rvertices), std::move(redges));

  std::optional<AnchorChoice> reduced_anchors;
  if (anchors) {
    AnchorChoice a;
    for (const auto& [label, pair] : anchors->anchors) {
      if (!(label == lonely_via->label)) a.anchors[label] = pair;
    }
    reduced_anchors = a;
  }
  LpaContext ctx(g, anchors);
  LpaContext rctx(reduced, reduced_anchors);

  CornerReport report;

  // (a) basis words of the reduced algebra embed as distinct basis words.
  std::set<Word> images;
  for (const Word& w : enumerate_basis_words(rctx, max_length)) {
    Word img = [&] {
      if (w.is_vertex()) return Word::vertex(ctx, w.source());
      std::vector<PathLetter> ls;
      for (const auto& l : w.letters()) {
        const AssociatedEdge& e = rctx.associated_edges()[l.edge];
        int id = ctx.edge_id(e);
        if (id < 0) {
          throw InternalError("reduced edge missing from the full graph");
        }
        ls.push_back({id, l.starred});
      }
      return Word::path(ctx, std::move(ls));
    }();
    if (!is_basis_word(ctx, img)) {
      report.injective = false;
      report.failures.push_back("embedded basis word is reducible (length " +
                                std::to_string(w.length()) + ")");
    }
    if (!images.insert(img).second) {
      report.injective = false;
      report.failures.push_back("two basis words collide under embedding");
    }
  }

  // (b) the corner away from v avoids the letters of h.
  for (const Word& w : enumerate_basis_words(ctx, max_length)) {
    if (w.source() == v || w.range() == v) continue;
    for (const auto& l : w.letters()) {
      if (ctx.associated_edges()[l.edge].hyperedge == lonely_via->label) {
        report.corner_clean = false;
        report.failures.push_back(
            "basis word avoiding '" + v.str() + "' uses a letter of '" +
            lonely_via->label.str() + "'");
        break;
      }
    }
  }

  // (c) sum_j h_{i_h j} h_{i_h j}^* = v, through vertices other than v.
  {
    const auto& [ih, jh] = ctx.anchors().anchors.at(lonely_via->label);
    LpaElement sum;
    for (const auto& j : ctx.range_indices(lonely_via->label)) {
      Word w =
          Word::path(ctx, {{ctx.edge_id({lonely_via->label, ih, j}), false},
                           {ctx.edge_id({lonely_via->label, ih, j}), true}});
      if (w.visited(ctx)[1] == v) {
        report.full = false;
        report.failures.push_back("a summand of the unit expansion passes "
                                  "through '" + v.str() + "'");
      }
      sum.add(w, Rational(1));
    }
    LpaElement expected = LpaElement::word(Word::vertex(ctx, v));
    if (!(reduce(ctx, sum) == expected)) {
      report.full = false;
      report.failures.push_back(
          "the unit expansion at '" + v.str() + "' does not reduce to it");
    }
  }
  return report;
}

}  // namespace bergman
