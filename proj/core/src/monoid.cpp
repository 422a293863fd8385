#include "bergman/monoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <queue>

namespace bergman {

MonoidPresentation::MonoidPresentation(std::vector<GeneratorId> generators,
                                       std::vector<MonoidRelation> relations)
    : generators_(std::move(generators)), relations_(std::move(relations)) {}

bool MonoidPresentation::has_generator(const GeneratorId& g) const {
  return generator_index(g) >= 0;
}

int MonoidPresentation::generator_index(const GeneratorId& g) const {
  for (size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == g) return static_cast<int>(i);
  }
  return -1;
}

const MonoidRelation* MonoidPresentation::find_relation(
    const Name& label) const {
  for (const auto& r : relations_) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

void MonoidPresentation::check_good() const {
  std::set<GeneratorId> seen;
  for (const auto& g : generators_) {
    if (!seen.insert(g).second) {
      throw ValidationError("generator '" + g.str() + "' declared twice");
    }
  }
  std::set<Name> labels;
  for (const auto& r : relations_) {
    if (!labels.insert(r.label).second) {
      throw ValidationError("relation label '" + r.label.str() +
                            "' used twice");
    }
    if (r.lhs.is_zero() || r.rhs.is_zero()) {
      throw ValidationError("relation '" + r.label.str() +
                            "' has a zero side; presentations must be good");
    }
    for (const auto* side : {&r.lhs, &r.rhs}) {
      for (const auto& [g, m] : side->terms()) {
        if (!seen.count(g)) {
          throw ValidationError("relation '" + r.label.str() +
                                "' uses undeclared generator '" + g.str() +
                                "'");
        }
      }
    }
  }
}

MonoidPresentation MonoidPresentation::without_relation(
    const Name& label) const {
  std::vector<MonoidRelation> rest;
  bool found = false;
  for (const auto& r : relations_) {
    if (r.label == label) {
      found = true;
    } else {
      rest.push_back(r);
    }
  }
  if (!found) {
    throw PreconditionError("no relation labelled '" + label.str() + "'");
  }
  return MonoidPresentation(generators_, std::move(rest));
}

EqualityCertificate compose_certificates(const EqualityCertificate& a,
                                         const EqualityCertificate& b) {
  if (a.end != b.start) {
    throw InternalError("certificate composition endpoint mismatch");
  }
  EqualityCertificate c;
  c.start = a.start;
  c.end = b.end;
  c.steps = a.steps;
  c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
  return c;
}

EqualityCertificate reverse_certificate(const EqualityCertificate& cert) {
  EqualityCertificate r;
  r.start = cert.end;
  r.end = cert.start;
  for (auto it = cert.steps.rbegin(); it != cert.steps.rend(); ++it) {
    CertificateStep s = *it;
    s.direction = s.direction == StepDirection::forward
                      ? StepDirection::backward
                      : StepDirection::forward;
    r.steps.push_back(std::move(s));
  }
  return r;
}

bool verify_certificate(const MonoidPresentation& p,
                        const EqualityCertificate& cert) {
  FreeAbelianElement e = cert.start;
  for (const auto& step : cert.steps) {
    const MonoidRelation* rel = p.find_relation(step.relation);
    if (rel == nullptr) return false;
    const FreeAbelianElement& from =
        step.direction == StepDirection::forward ? rel->lhs : rel->rhs;
    const FreeAbelianElement& to =
        step.direction == StepDirection::forward ? rel->rhs : rel->lhs;
    if (step.context + from != e) return false;
    e = step.context + to;
  }
  return e == cert.end;
}

namespace {

using Dense = std::vector<long long>;

struct DenseSpace {
  std::vector<GeneratorId> gens;  // dimension order: declaration, then extras

  Dense to_dense(const FreeAbelianElement& e) const {
    Dense d(gens.size(), 0);
    for (const auto& [g, m] : e.terms()) {
      auto it = std::find(gens.begin(), gens.end(), g);
      d[it - gens.begin()] = m;
    }
    return d;
  }

  FreeAbelianElement to_element(const Dense& d) const {
    FreeAbelianElement e;
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] != 0) e.add(gens[i], d[i]);
    }
    return e;
  }
};

DenseSpace make_space(const MonoidPresentation& p, const FreeAbelianElement& a,
                      const FreeAbelianElement& b) {
  DenseSpace sp;
  sp.gens = p.generators();
  auto ensure = [&sp](const FreeAbelianElement& e) {
    for (const auto& [g, m] : e.terms()) {
      if (std::find(sp.gens.begin(), sp.gens.end(), g) == sp.gens.end()) {
        sp.gens.push_back(g);
      }
    }
  };
  ensure(a);
  ensure(b);
  for (const auto& r : p.relations()) {
    ensure(r.lhs);
    ensure(r.rhs);
  }
  return sp;
}

long long dense_degree(const Dense& d) {
  long long s = 0;
  for (long long v : d) s += v;
  return s;
}

bool dense_leq(const Dense& a, const Dense& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

long long default_degree_bound(const MonoidPresentation& p,
                               const FreeAbelianElement& a,
                               const FreeAbelianElement& b) {
  long long side = 0;
  for (const auto& r : p.relations()) {
    side = std::max({side, r.lhs.degree(), r.rhs.degree()});
  }
  return std::max(a.degree(), b.degree()) + 8 * side;
}

CongruenceResult congruence_equal(const MonoidPresentation& p,
                                  const FreeAbelianElement& a,
                                  const FreeAbelianElement& b,
                                  long long degree_bound) {
  CongruenceResult result;
  result.bound_used = degree_bound;
  if (a == b) {
    result.certificate = EqualityCertificate{a, b, {}};
    return result;
  }

  DenseSpace sp = make_space(p, a, b);
  struct DenseRel {
    Name label;
    Dense lhs, rhs;
  };
  std::vector<DenseRel> rels;
  for (const auto& r : p.relations()) {
    rels.push_back({r.label, sp.to_dense(r.lhs), sp.to_dense(r.rhs)});
  }

  struct NodeInfo {
    Dense elem;
    int parent = -1;
    int relation = -1;  // index into rels
    StepDirection dir = StepDirection::forward;
  };
  std::vector<NodeInfo> nodes;
  std::map<Dense, int> visited;

  // Sort key within a BFS layer: (degree, canonical string). The canonical
  // string renders multiplicities sorted by generator name, independent of
  // declaration order, so certificates do not depend on it.
  auto canonical_of = [&sp](const Dense& d) {
    return sp.to_element(d).canonical_string();
  };

  Dense start = sp.to_dense(a);
  Dense target = sp.to_dense(b);
  nodes.push_back({start, -1, -1, StepDirection::forward});
  visited[start] = 0;

  auto reconstruct = [&](int node) {
    std::vector<CertificateStep> steps;
    int cur = node;
    while (nodes[cur].parent >= 0) {
      const NodeInfo& n = nodes[cur];
      const DenseRel& r = rels[n.relation];
      const Dense& from = n.dir == StepDirection::forward ? r.lhs : r.rhs;
      Dense ctx = nodes[n.parent].elem;
      for (size_t i = 0; i < ctx.size(); ++i) ctx[i] -= from[i];
      steps.push_back({r.label, n.dir, sp.to_element(ctx)});
      cur = n.parent;
    }
    std::reverse(steps.begin(), steps.end());
    result.certificate = EqualityCertificate{a, b, std::move(steps)};
  };

  std::vector<int> layer = {0};
  while (!layer.empty()) {
    std::vector<std::pair<std::pair<long long, std::string>, int>> keyed;
    keyed.reserve(layer.size());
    for (int id : layer) {
      keyed.push_back(
          {{dense_degree(nodes[id].elem), canonical_of(nodes[id].elem)}, id});
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<int> next;
    for (const auto& [key, id] : keyed) {
      const Dense elem = nodes[id].elem;  // copy: nodes may reallocate
      for (size_t ri = 0; ri < rels.size(); ++ri) {
        for (StepDirection dir :
             {StepDirection::forward, StepDirection::backward}) {
          const Dense& from =
              dir == StepDirection::forward ? rels[ri].lhs : rels[ri].rhs;
          const Dense& to =
              dir == StepDirection::forward ? rels[ri].rhs : rels[ri].lhs;
          if (!dense_leq(from, elem)) continue;
          Dense succ = elem;
          for (size_t i = 0; i < succ.size(); ++i) {
            succ[i] += to[i] - from[i];
          }
          if (dense_degree(succ) > degree_bound) continue;
          if (visited.count(succ)) continue;
          int nid = static_cast<int>(nodes.size());
          nodes.push_back({succ, id, static_cast<int>(ri), dir});
          visited[succ] = nid;
          if (succ == target) {
            reconstruct(nid);
            return result;
          }
          next.push_back(nid);
        }
      }
    }
    layer = std::move(next);
  }
  return result;  // NotEqualUpToBound
}

std::optional<EqualityCertificate> is_superfluous(const MonoidPresentation& p,
                                                  const Name& label,
                                                  long long degree_bound) {
  const MonoidRelation* rel = p.find_relation(label);
  if (rel == nullptr) {
    throw PreconditionError("no relation labelled '" + label.str() + "'");
  }
  MonoidPresentation rest = p.without_relation(label);
  return congruence_equal(rest, rel->lhs, rel->rhs, degree_bound).certificate;
}

bool lattice_refutes(const MonoidPresentation& p, const FreeAbelianElement& a,
                     const FreeAbelianElement& b) {
  DenseSpace sp = make_space(p, a, b);
  size_t n = sp.gens.size();
  std::vector<Dense> rows;
  for (const auto& r : p.relations()) {
    Dense lhs = sp.to_dense(r.lhs), rhs = sp.to_dense(r.rhs);
    Dense d(n);
    for (size_t i = 0; i < n; ++i) d[i] = lhs[i] - rhs[i];
    rows.push_back(std::move(d));
  }
  Dense target(n);
  {
    Dense da = sp.to_dense(a), db = sp.to_dense(b);
    for (size_t i = 0; i < n; ++i) target[i] = da[i] - db[i];
  }

  // Row-reduce the relation differences to echelon form with unimodular row
  // operations (gcd pivoting), then divide the target through the pivots.
  // Membership in the integer row span is exactly "fully reducible".
  size_t top = 0;
  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
  for (size_t col = 0; col < n && top < rows.size(); ++col) {
    while (true) {
      size_t best = rows.size();
      for (size_t k = top; k < rows.size(); ++k) {
        if (rows[k][col] != 0 &&
            (best == rows.size() ||
             std::llabs(rows[k][col]) < std::llabs(rows[best][col]))) {
          best = k;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (size_t k = top + 1; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        long long q = rows[k][col] / rows[top][col];
        for (size_t i = 0; i < n; ++i) rows[k][i] -= q * rows[top][i];
        if (rows[k][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] != 0) {
      pivots.push_back({top, col});
      ++top;
    }
  }

  for (const auto& [row, col] : pivots) {
    if (target[col] == 0) continue;
    if (target[col] % rows[row][col] != 0) return true;
    long long q = target[col] / rows[row][col];
    for (size_t i = 0; i < n; ++i) target[i] -= q * rows[row][i];
  }
  for (long long v : target) {
    if (v != 0) return true;
  }
  return false;
}

EqualityCertificate justify_equality(const MonoidPresentation& p,
                                     const FreeAbelianElement& from,
                                     const FreeAbelianElement& to,
                                     const CertificateOrBound& justification,
                                     const std::string& what) {
  if (const auto* cert = std::get_if<EqualityCertificate>(&justification)) {
    if (cert->start != from || cert->end != to ||
        !verify_certificate(p, *cert)) {
      throw PreconditionError(what + ": supplied certificate does not verify");
    }
    return *cert;
  }
  long long bound = std::get<long long>(justification);
  if (bound <= 0) bound = default_degree_bound(p, from, to);
  CongruenceResult res = congruence_equal(p, from, to, bound);
  if (res.equal()) return *res.certificate;
  if (lattice_refutes(p, from, to)) {
    throw PreconditionError(what + ": refuted — the equality can never hold " +
                            "(difference escapes the relation lattice)");
  }
  throw PreconditionError(what + ": unknown at degree bound " +
                          std::to_string(bound) + "; not certified");
}

Name fresh_label(const MonoidPresentation& p, const std::string& stem) {
  std::string s = stem;
  while (p.find_relation(Name(s)) != nullptr) s += "_";
  return Name(s);
}

namespace {

MonoidPresentation tietze_add_generator(const MonoidPresentation& p,
                                        const TietzeAddGenerator& t) {
  if (p.has_generator(t.gen)) {
    throw PreconditionError("add-generator: '" + t.gen.str() +
                            "' is already declared");
  }
  if (t.rhs.is_zero()) {
    throw PreconditionError(
        "add-generator: defining right-hand side must be non-zero");
  }
  for (const auto& [g, m] : t.rhs.terms()) {
    if (!p.has_generator(g)) {
      throw PreconditionError("add-generator: right-hand side uses '" +
                              g.str() + "' which is not declared");
    }
  }
  Name label = t.label ? *t.label : fresh_label(p, "def_" + t.gen.str());
  if (p.find_relation(label) != nullptr) {
    throw PreconditionError("add-generator: relation label '" + label.str() +
                            "' is already in use");
  }
  auto gens = p.generators();
  gens.push_back(t.gen);
  auto rels = p.relations();
  rels.push_back({label, FreeAbelianElement::generator(t.gen), t.rhs});
  return MonoidPresentation(std::move(gens), std::move(rels));
}

MonoidPresentation tietze_remove_generator(const MonoidPresentation& p,
                                           const TietzeRemoveGenerator& t) {
  if (!p.has_generator(t.gen)) {
    throw PreconditionError("remove-generator: '" + t.gen.str() +
                            "' is not declared");
  }
  const MonoidRelation* defining = nullptr;
  for (const auto& r : p.relations()) {
    bool mentions = r.lhs.multiplicity(t.gen) > 0 ||
                    r.rhs.multiplicity(t.gen) > 0;
    if (!mentions) continue;
    if (defining != nullptr) {
      throw PreconditionError("remove-generator: '" + t.gen.str() +
                              "' occurs in more than one relation");
    }
    defining = &r;
  }
  if (defining == nullptr) {
    throw PreconditionError("remove-generator: no defining relation for '" +
                            t.gen.str() + "'");
  }
  if (defining->lhs != FreeAbelianElement::generator(t.gen) ||
      defining->rhs.multiplicity(t.gen) != 0) {
    throw PreconditionError("remove-generator: relation '" +
                            defining->label.str() + "' is not of the form " +
                            t.gen.str() + " = b with b avoiding " +
                            t.gen.str());
  }
  std::vector<GeneratorId> gens;
  for (const auto& g : p.generators()) {
    if (!(g == t.gen)) gens.push_back(g);
  }
  std::vector<MonoidRelation> rels;
  for (const auto& r : p.relations()) {
    if (!(r.label == defining->label)) rels.push_back(r);
  }
  return MonoidPresentation(std::move(gens), std::move(rels));
}

MonoidPresentation tietze_add_relation(const MonoidPresentation& p,
                                       const TietzeAddRelation& t) {
  if (p.find_relation(t.label) != nullptr) {
    throw PreconditionError("add-relation: label '" + t.label.str() +
                            "' is already in use");
  }
  if (t.lhs.is_zero() || t.rhs.is_zero()) {
    throw PreconditionError("add-relation: sides must be non-zero");
  }
  for (const auto* side : {&t.lhs, &t.rhs}) {
    for (const auto& [g, m] : side->terms()) {
      if (!p.has_generator(g)) {
        throw PreconditionError("add-relation: undeclared generator '" +
                                g.str() + "'");
      }
    }
  }
  justify_equality(p, t.lhs, t.rhs, t.justification,
                   "add-relation '" + t.label.str() + "'");
  auto rels = p.relations();
  rels.push_back({t.label, t.lhs, t.rhs});
  return MonoidPresentation(p.generators(), std::move(rels));
}

MonoidPresentation tietze_remove_relation(const MonoidPresentation& p,
                                          const TietzeRemoveRelation& t) {
  const MonoidRelation* rel = p.find_relation(t.label);
  if (rel == nullptr) {
    throw PreconditionError("remove-relation: no relation labelled '" +
                            t.label.str() + "'");
  }
  MonoidPresentation rest = p.without_relation(t.label);
  justify_equality(rest, rel->lhs, rel->rhs, t.justification,
                   "remove-relation '" + t.label.str() + "'");
  return rest;
}

}  // namespace

MonoidPresentation apply_tietze(const MonoidPresentation& p,
                                const TietzeStep& step) {
  p.check_good();
  MonoidPresentation out = std::visit(
      [&p](const auto& t) -> MonoidPresentation {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, TietzeAddGenerator>) {
          return tietze_add_generator(p, t);
        } else if constexpr (std::is_same_v<T, TietzeRemoveGenerator>) {
          return tietze_remove_generator(p, t);
        } else if constexpr (std::is_same_v<T, TietzeAddRelation>) {
          return tietze_add_relation(p, t);
        } else {
          return tietze_remove_relation(p, t);
        }
      },
      step);
  out.check_good();
  return out;
}

}  // namespace bergman
