#include "bergman/moves.hpp"

#include <algorithm>
#include <set>

namespace bergman {

namespace {

void check_output(const BergmanPresentation& out, const std::string& what) {
  ValidationReport rep = out.validate();
  if (!rep.ok()) {
    throw InternalError(what + " produced an invalid presentation:\n" +
                        rep.to_string());
  }
}

void require_fresh(const BergmanPresentation& p,
                   const std::vector<GeneratorId>& names,
                   const std::string& what) {
  std::set<GeneratorId> seen;
  for (const auto& g : names) {
    if (p.has_generator(g)) {
      throw PreconditionError(what + ": generator name '" + g.str() +
                              "' is already declared");
    }
    if (!seen.insert(g).second) {
      throw PreconditionError(what + ": generator name '" + g.str() +
                              "' given twice");
    }
  }
}

Name fresh_coloured_label(const std::vector<ColouredRelation>& rels,
                          const std::string& stem) {
  std::string s = stem;
  auto taken = [&rels](const std::string& t) {
    for (const auto& r : rels) {
      if (r.label.str() == t) return true;
    }
    return false;
  };
  while (taken(s)) s += "_";
  return Name(s);
}

const ColouredRelation& find_required(const BergmanPresentation& p,
                                      const Name& label,
                                      const std::string& what) {
  const ColouredRelation* rel = p.find_relation(label);
  if (rel == nullptr) {
    throw PreconditionError(what + ": no relation labelled '" + label.str() +
                            "'");
  }
  return *rel;
}

void require_declared_support(const BergmanPresentation& p,
                              const FreeAbelianElement& e,
                              const std::string& what) {
  for (const auto& [g, m] : e.terms()) {
    if (!p.has_generator(g)) {
      throw PreconditionError(what + ": undeclared generator '" + g.str() +
                              "'");
    }
  }
}

}  // namespace

std::string MoveRecord::kind() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RedShiftMove>) return "redshift";
        if constexpr (std::is_same_v<T, BlueShiftMove>) return "blueshift";
        if constexpr (std::is_same_v<T, EnqueueMove>) return "enqueue";
        if constexpr (std::is_same_v<T, OutsplitMove>) return "outsplit";
        if constexpr (std::is_same_v<T, LonelyEliminateMove>)
          return "eliminate";
        if constexpr (std::is_same_v<T, ExtendMove>) return "extend";
        if constexpr (std::is_same_v<T, CollapseMove>) return "collapse";
        if constexpr (std::is_same_v<T, InsplitMove>) return "insplit";
      },
      params);
}

MoveResult red_shift(const BergmanPresentation& p, const Name& relation,
                     const FreeAbelianElement& new_lhs,
                     const FreeAbelianElement& new_rhs,
                     const CertificateOrBound& lhs_just,
                     const CertificateOrBound& rhs_just) {
  p.require_valid("red shift input");
  const ColouredRelation& rel = find_required(p, relation, "red shift");
  if (rel.colour != Colour::red) {
    throw PreconditionError("red shift: relation '" + relation.str() +
                            "' is blue");
  }
  if (new_lhs.is_zero() || new_rhs.is_zero()) {
    throw PreconditionError("red shift: new sides must be non-zero");
  }
  require_declared_support(p, new_lhs, "red shift");
  require_declared_support(p, new_rhs, "red shift");

  MonoidPresentation rest = p.underlying_monoid().without_relation(relation);
  EqualityCertificate lhs_cert =
      justify_equality(rest, rel.lhs, new_lhs, lhs_just,
                       "red shift '" + relation.str() + "' lhs");
  EqualityCertificate rhs_cert =
      justify_equality(rest, rel.rhs, new_rhs, rhs_just,
                       "red shift '" + relation.str() + "' rhs");

  auto rels = p.relations();
  for (auto& r : rels) {
    if (r.label == relation) {
      r.lhs = new_lhs;
      r.rhs = new_rhs;
    }
  }
  BergmanPresentation out(p.generators(), std::move(rels));
  check_output(out, "red shift");
  return {out, MoveRecord{RedShiftMove{relation, new_lhs, new_rhs,
                                       std::move(lhs_cert),
                                       std::move(rhs_cert)}}};
}

MoveResult blue_shift(const BergmanPresentation& p, const Name& relation,
                      const FreeAbelianElement& new_lhs,
                      const CertificateOrBound& just,
                      const std::optional<std::vector<Name>>& ordering) {
  p.require_valid("blue shift input");
  const ColouredRelation& rel = find_required(p, relation, "blue shift");
  if (rel.colour != Colour::blue) {
    throw PreconditionError("blue shift: relation '" + relation.str() +
                            "' is red");
  }
  std::vector<Name> ord;
  if (ordering) {
    if (!is_admissible_ordering(p, *ordering)) {
      throw PreconditionError("blue shift: supplied ordering is not an "
                              "admissible ordering of the blue relations");
    }
    ord = *ordering;
  } else {
    ord = *first_admissible_ordering(p);  // exists: p is valid
  }
  size_t pos = std::find(ord.begin(), ord.end(), relation) - ord.begin();

  // Generators visible before position pos: base + earlier ranges.
  std::set<GeneratorId> allowed;
  {
    for (const auto& g : p.base_generators()) allowed.insert(g);
    for (size_t k = 0; k < pos; ++k) {
      const ColouredRelation* r = p.find_relation(ord[k]);
      for (const auto& [g, m] : r->rhs.terms()) allowed.insert(g);
    }
  }
  if (new_lhs.is_zero()) {
    throw PreconditionError("blue shift: new lhs must be non-zero");
  }
  for (const auto& [g, m] : new_lhs.terms()) {
    if (!allowed.count(g)) {
      throw PreconditionError(
          "blue shift: new lhs uses '" + g.str() +
          "', outside the generators visible before '" + relation.str() +
          "' in the ordering");
    }
  }

  // Restricted presentation: visible generators; the earlier blue
  // relations plus every red relation with both sides inside.
  std::vector<GeneratorId> rgens;
  for (const auto& g : p.generators()) {
    if (allowed.count(g)) rgens.push_back(g);
  }
  std::set<Name> earlier(ord.begin(), ord.begin() + pos);
  std::vector<MonoidRelation> rrels;
  for (const auto& r : p.relations()) {
    bool keep = false;
    if (r.colour == Colour::blue) {
      keep = earlier.count(r.label) > 0;
    } else {
      auto inside = [&allowed](const FreeAbelianElement& e) {
        for (const auto& [g, m] : e.terms()) {
          if (!allowed.count(g)) return false;
        }
        return true;
      };
      keep = inside(r.lhs) && inside(r.rhs);
    }
    if (keep) rrels.push_back({r.label, r.lhs, r.rhs});
  }
  MonoidPresentation restricted(std::move(rgens), std::move(rrels));
  EqualityCertificate cert =
      justify_equality(restricted, rel.lhs, new_lhs, just,
                       "blue shift '" + relation.str() + "'");

  auto rels = p.relations();
  for (auto& r : rels) {
    if (r.label == relation) r.lhs = new_lhs;
  }
  BergmanPresentation out(p.generators(), std::move(rels));
  check_output(out, "blue shift");
  if (!is_admissible_ordering(out, ord)) {
    throw InternalError("blue shift: the ordering stopped being admissible");
  }
  return {out,
          MoveRecord{BlueShiftMove{relation, new_lhs, ord, std::move(cert)}}};
}

MoveResult enqueue(const BergmanPresentation& p, const Name& relation) {
  p.require_valid("enqueue input");
  const ColouredRelation& rel = find_required(p, relation, "enqueue");
  if (rel.colour != Colour::blue) {
    throw PreconditionError("enqueue: relation '" + relation.str() +
                            "' is red");
  }
  if (!rel.lhs.is_single_generator()) {
    throw PreconditionError(
        "enqueue: lhs of '" + relation.str() +
        "' is not a single generator of multiplicity one");
  }
  GeneratorId x = rel.lhs.terms().begin()->first;
  FreeAbelianElement repl = rel.rhs;
  if (repl.multiplicity(x) > 0) {
    throw InternalError("enqueue: generator occurs in its own range");
  }

  std::vector<GeneratorId> gens;
  for (const auto& g : p.generators()) {
    if (!(g == x)) gens.push_back(g);
  }
  std::vector<ColouredRelation> rels;
  for (const auto& r : p.relations()) {
    if (r.label == relation) continue;
    rels.push_back({r.label, r.colour, r.lhs.substitute(x, repl),
                    r.rhs.substitute(x, repl)});
  }
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "enqueue");  // recomputes an admissible ordering
  return {out, MoveRecord{EnqueueMove{relation}}};
}

MoveResult outsplit(const BergmanPresentation& p, const Name& relation,
                    const std::vector<FreeAbelianElement>& parts,
                    const std::vector<GeneratorId>& new_generators) {
  p.require_valid("outsplit input");
  const ColouredRelation& rel = find_required(p, relation, "outsplit");
  if (rel.colour != Colour::red) {
    throw PreconditionError("outsplit: relation '" + relation.str() +
                            "' is blue");
  }
  size_t t = parts.size();
  if (t < 2) {
    throw PreconditionError("outsplit: needs at least 2 parts");
  }
  if (new_generators.size() != t) {
    throw PreconditionError("outsplit: " + std::to_string(t) +
                            " parts need exactly " + std::to_string(t) +
                            " fresh generator names");
  }
  require_fresh(p, new_generators, "outsplit");
  FreeAbelianElement sum;
  for (const auto& part : parts) {
    if (part.is_zero()) {
      throw PreconditionError("outsplit: parts must be non-zero");
    }
    sum += part;
  }
  if (sum != rel.lhs) {
    throw PreconditionError("outsplit: parts do not sum to the lhs of '" +
                            relation.str() + "'");
  }

  auto gens = p.generators();
  gens.insert(gens.end(), new_generators.begin(), new_generators.end());
  std::vector<ColouredRelation> rels;
  for (const auto& r : p.relations()) {
    if (!(r.label == relation)) rels.push_back(r);
  }
  FreeAbelianElement range;
  for (const auto& g : new_generators) range.add(g, 1);
  rels.push_back({fresh_coloured_label(rels, relation.str() + "_0"),
                  Colour::blue, rel.rhs, range});
  for (size_t pi = 0; pi < t; ++pi) {
    rels.push_back(
        {fresh_coloured_label(rels, relation.str() + "_" + std::to_string(pi + 1)),
         Colour::red, parts[pi],
         FreeAbelianElement::generator(new_generators[pi])});
  }
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "outsplit");
  return {out, MoveRecord{OutsplitMove{relation, parts, new_generators}}};
}

std::vector<std::pair<GeneratorId, Name>> find_lonely(
    const BergmanPresentation& p) {
  p.require_valid("lonely search input");
  if (!p.is_basic()) {
    throw PreconditionError(
        "lonely search: presentation has blue relations (not basic)");
  }
  std::vector<std::pair<GeneratorId, Name>> out;
  const auto& rels = p.relations();
  for (size_t i = 0; i < rels.size(); ++i) {
    if (!rels[i].lhs.is_single_generator()) continue;
    GeneratorId x = rels[i].lhs.terms().begin()->first;
    if (rels[i].rhs.multiplicity(x) > 0) continue;
    bool elsewhere = false;
    for (size_t j = 0; j < rels.size() && !elsewhere; ++j) {
      if (j == i) continue;
      elsewhere = rels[j].lhs.multiplicity(x) > 0 ||
                  rels[j].rhs.multiplicity(x) > 0;
    }
    if (!elsewhere) out.push_back({x, rels[i].label});
  }
  return out;
}

MoveResult lonely_eliminate(const BergmanPresentation& p,
                            const GeneratorId& gen) {
  auto lonely = find_lonely(p);  // validates + requires basic
  const Name* label = nullptr;
  for (const auto& [g, l] : lonely) {
    if (g == gen) label = &l;
  }
  if (label == nullptr) {
    throw PreconditionError("eliminate: generator '" + gen.str() +
                            "' is not lonely");
  }
  std::vector<GeneratorId> gens;
  for (const auto& g : p.generators()) {
    if (!(g == gen)) gens.push_back(g);
  }
  std::vector<ColouredRelation> rels;
  for (const auto& r : p.relations()) {
    if (!(r.label == *label)) rels.push_back(r);
  }
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "eliminate");
  return {out, MoveRecord{LonelyEliminateMove{gen}}};
}

MoveResult extend(const BergmanPresentation& p, const GeneratorId& gen,
                  const FreeAbelianElement& rhs,
                  const std::optional<Name>& label) {
  p.require_valid("extend input");
  if (!p.is_basic()) {
    throw PreconditionError("extend: presentation has blue relations");
  }
  require_fresh(p, {gen}, "extend");
  if (rhs.is_zero()) {
    throw PreconditionError("extend: right-hand side must be non-zero");
  }
  require_declared_support(p, rhs, "extend");

  auto gens = p.generators();
  gens.push_back(gen);
  auto rels = p.relations();
  Name lab = label ? *label
                   : fresh_coloured_label(rels, "def_" + gen.str());
  for (const auto& r : rels) {
    if (r.label == lab) {
      throw PreconditionError("extend: relation label '" + lab.str() +
                              "' is already in use");
    }
  }
  rels.push_back({lab, Colour::red, FreeAbelianElement::generator(gen), rhs});
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "extend");
  return {out, MoveRecord{ExtendMove{gen, rhs, label}}};
}

MoveResult collapse(const BergmanPresentation& p, const GeneratorId& gen,
                    const Name& relation) {
  p.require_valid("collapse input");
  if (!p.is_basic()) {
    throw PreconditionError("collapse: presentation has blue relations");
  }
  const ColouredRelation& rel = find_required(p, relation, "collapse");
  if (rel.lhs != FreeAbelianElement::generator(gen)) {
    throw PreconditionError("collapse: lhs of '" + relation.str() +
                            "' is not exactly '" + gen.str() + "'");
  }
  if (rel.rhs.multiplicity(gen) > 0) {
    throw PreconditionError("collapse: '" + gen.str() +
                            "' occurs in the rhs of its own relation");
  }
  FreeAbelianElement repl = rel.rhs;
  std::vector<GeneratorId> gens;
  for (const auto& g : p.generators()) {
    if (!(g == gen)) gens.push_back(g);
  }
  std::vector<ColouredRelation> rels;
  for (const auto& r : p.relations()) {
    if (r.label == relation) continue;
    rels.push_back({r.label, r.colour, r.lhs.substitute(gen, repl),
                    r.rhs.substitute(gen, repl)});
  }
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "collapse");
  return {out, MoveRecord{CollapseMove{gen, relation}}};
}

namespace {

// Occurrence set S of x in the rhs's, as (label, k) pairs in declaration
// order.
std::vector<std::pair<Name, int>> insplit_occurrences(
    const BergmanPresentation& p, const GeneratorId& x) {
  std::vector<std::pair<Name, int>> s;
  for (const auto& r : p.relations()) {
    long long n = r.rhs.multiplicity(x);
    for (long long k = 1; k <= n; ++k) {
      s.push_back({r.label, static_cast<int>(k)});
    }
  }
  return s;
}

}  // namespace

MoveResult insplit(
    const BergmanPresentation& p, const GeneratorId& gen, const Name& relation,
    const std::vector<std::vector<std::pair<Name, int>>>& partition,
    const std::vector<GeneratorId>& new_generators) {
  p.require_valid("insplit input");
  if (!p.is_basic()) {
    throw PreconditionError("insplit: presentation has blue relations");
  }
  const ColouredRelation& rel = find_required(p, relation, "insplit");
  if (rel.lhs != FreeAbelianElement::generator(gen)) {
    throw PreconditionError("insplit: lhs of '" + relation.str() +
                            "' is not exactly '" + gen.str() + "'");
  }
  for (const auto& r : p.relations()) {
    if (r.label == relation) continue;
    if (r.lhs.multiplicity(gen) > 0) {
      throw PreconditionError("insplit: '" + gen.str() +
                              "' also occurs in the lhs of '" +
                              r.label.str() + "'");
    }
  }

  auto occurrences = insplit_occurrences(p, gen);
  if (occurrences.empty()) {
    throw PreconditionError("insplit: '" + gen.str() +
                            "' occurs in no right-hand side");
  }
  size_t t = partition.size();
  if (t == 0) {
    throw PreconditionError("insplit: partition must have at least one part");
  }
  if (new_generators.size() != t - 1) {
    throw PreconditionError("insplit: " + std::to_string(t) +
                            " parts need exactly " + std::to_string(t - 1) +
                            " fresh generator names");
  }
  require_fresh(p, new_generators, "insplit");

  std::map<std::pair<Name, int>, int> part_of;  // 1-based part index
  for (size_t pi = 0; pi < t; ++pi) {
    if (partition[pi].empty()) {
      throw PreconditionError("insplit: empty partition part");
    }
    for (const auto& occ : partition[pi]) {
      if (part_of.count(occ)) {
        throw PreconditionError("insplit: occurrence (" + occ.first.str() +
                                "," + std::to_string(occ.second) +
                                ") listed twice");
      }
      part_of[occ] = static_cast<int>(pi) + 1;
    }
  }
  for (const auto& occ : occurrences) {
    if (!part_of.count(occ)) {
      throw PreconditionError("insplit: occurrence (" + occ.first.str() +
                              "," + std::to_string(occ.second) +
                              ") not covered by the partition");
    }
  }
  if (part_of.size() != occurrences.size()) {
    throw PreconditionError(
        "insplit: partition mentions occurrences that do not exist");
  }

  auto part_generator = [&](int pi) {  // 1-based
    return pi == 1 ? gen : new_generators[pi - 2];
  };
  auto reroute = [&](const Name& label, const FreeAbelianElement& rhs) {
    long long n = rhs.multiplicity(gen);
    if (n == 0) return rhs;
    FreeAbelianElement out = rhs.substitute(gen, FreeAbelianElement::zero());
    for (long long k = 1; k <= n; ++k) {
      out.add(part_generator(part_of.at({label, static_cast<int>(k)})), 1);
    }
    return out;
  };

  auto gens = p.generators();
  gens.insert(gens.end(), new_generators.begin(), new_generators.end());
  std::vector<ColouredRelation> rels;
  for (const auto& r : p.relations()) {
    if (r.label == relation) {
      FreeAbelianElement new_rhs = reroute(r.label, r.rhs);
      for (size_t pi = 1; pi <= t; ++pi) {
        Name lab = pi == 1 ? relation
                           : fresh_coloured_label(
                                 rels, relation.str() + "_" +
                                           std::to_string(pi));
        rels.push_back({lab, Colour::red,
                        FreeAbelianElement::generator(part_generator(
                            static_cast<int>(pi))),
                        new_rhs});
      }
    } else {
      rels.push_back({r.label, r.colour, r.lhs, reroute(r.label, r.rhs)});
    }
  }
  BergmanPresentation out(std::move(gens), std::move(rels));
  check_output(out, "insplit");
  return {out,
          MoveRecord{InsplitMove{gen, relation, partition, new_generators}}};
}

BergmanPresentation apply_move(const BergmanPresentation& p,
                               const MoveRecord& record) {
  return std::visit(
      [&p](const auto& m) -> BergmanPresentation {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RedShiftMove>) {
          return red_shift(p, m.relation, m.new_lhs, m.new_rhs,
                           m.lhs_certificate, m.rhs_certificate)
              .output;
        } else if constexpr (std::is_same_v<T, BlueShiftMove>) {
          return blue_shift(p, m.relation, m.new_lhs, m.lhs_certificate,
                            m.ordering)
              .output;
        } else if constexpr (std::is_same_v<T, EnqueueMove>) {
          return enqueue(p, m.relation).output;
        } else if constexpr (std::is_same_v<T, OutsplitMove>) {
          return outsplit(p, m.relation, m.parts, m.new_generators).output;
        } else if constexpr (std::is_same_v<T, LonelyEliminateMove>) {
          return lonely_eliminate(p, m.gen).output;
        } else if constexpr (std::is_same_v<T, ExtendMove>) {
          return extend(p, m.gen, m.rhs, m.label).output;
        } else if constexpr (std::is_same_v<T, CollapseMove>) {
          return collapse(p, m.gen, m.relation).output;
        } else {
          return insplit(p, m.gen, m.relation, m.partition, m.new_generators)
              .output;
        }
      },
      record.params);
}

std::vector<BergmanPresentation> replay(const MoveSequence& seq) {
  std::vector<BergmanPresentation> states = {seq.initial};
  for (const auto& rec : seq.records) {
    states.push_back(apply_move(states.back(), rec));
  }
  return states;
}

namespace {

// Certificate rewriting every occurrence of x in `side` to `repl`, one
// forward application of `via` (x = repl) per occurrence.
EqualityCertificate substitution_certificate(const FreeAbelianElement& side,
                                             const GeneratorId& x,
                                             const FreeAbelianElement& repl,
                                             const Name& via) {
  EqualityCertificate cert;
  cert.start = side;
  FreeAbelianElement e = side;
  FreeAbelianElement xg = FreeAbelianElement::generator(x);
  while (e.multiplicity(x) > 0) {
    FreeAbelianElement ctx = e.minus(xg);
    cert.steps.push_back({via, StepDirection::forward, ctx});
    e = ctx + repl;
  }
  cert.end = e;
  return cert;
}

}  // namespace

MoveSequence factor_collapse(const BergmanPresentation& p,
                             const GeneratorId& gen, const Name& relation) {
  collapse(p, gen, relation);  // surface precondition failures first
  const ColouredRelation& rel = *p.find_relation(relation);
  FreeAbelianElement repl = rel.rhs;

  MoveSequence seq;
  seq.initial = p;
  BergmanPresentation cur = p;
  for (const auto& r : p.relations()) {
    if (r.label == relation) continue;
    if (r.lhs.multiplicity(gen) == 0 && r.rhs.multiplicity(gen) == 0) {
      continue;
    }
    EqualityCertificate lhs_cert =
        substitution_certificate(r.lhs, gen, repl, relation);
    EqualityCertificate rhs_cert =
        substitution_certificate(r.rhs, gen, repl, relation);
    MoveResult res = red_shift(cur, r.label, lhs_cert.end, rhs_cert.end,
                               lhs_cert, rhs_cert);
    cur = res.output;
    seq.records.push_back(res.record);
  }
  MoveResult fin = lonely_eliminate(cur, gen);
  seq.records.push_back(fin.record);
  return seq;
}

MoveSequence factor_insplit(
    const BergmanPresentation& p, const GeneratorId& gen, const Name& relation,
    const std::vector<std::vector<std::pair<Name, int>>>& partition,
    const std::vector<GeneratorId>& new_generators) {
  MoveResult split = insplit(p, gen, relation, partition, new_generators);
  MoveSequence seq;
  seq.initial = split.output;
  size_t t = partition.size();
  if (t == 1) return seq;  // the no-op insplit factors as nothing

  BergmanPresentation cur = split.output;
  // Copy p's relation labels: relation #1 kept `relation`; find the labels
  // of the copies by their lhs (each copy generator heads exactly one).
  std::vector<Name> copy_labels;
  for (const auto& g : new_generators) {
    const Name* found = nullptr;
    for (const auto& r : cur.relations()) {
      if (r.lhs == FreeAbelianElement::generator(g)) found = &r.label;
    }
    if (found == nullptr) {
      throw InternalError("insplit output lost a copy relation");
    }
    copy_labels.push_back(*found);
  }

  const FreeAbelianElement rerouted_rhs = cur.find_relation(relation)->rhs;
  FreeAbelianElement x1 = FreeAbelianElement::generator(gen);
  for (size_t pi = 0; pi < copy_labels.size(); ++pi) {
    FreeAbelianElement xp = FreeAbelianElement::generator(new_generators[pi]);
    EqualityCertificate lhs_cert{xp, xp, {}};
    // rhs'_i = x_1 in one backward application of relation #1.
    EqualityCertificate rhs_cert{
        rerouted_rhs,
        x1,
        {{relation, StepDirection::backward, FreeAbelianElement::zero()}}};
    MoveResult res =
        red_shift(cur, copy_labels[pi], xp, x1, lhs_cert, rhs_cert);
    cur = res.output;
    seq.records.push_back(res.record);
  }
  for (size_t pi = 0; pi < copy_labels.size(); ++pi) {
    MoveResult res = collapse(cur, new_generators[pi], copy_labels[pi]);
    cur = res.output;
    seq.records.push_back(res.record);
  }
  if (!(cur == p)) {
    throw InternalError(
        "insplit factorisation failed to restore the original presentation");
  }
  return seq;
}

TietzeFactoring tietze_factor_red_shift(const BergmanPresentation& p,
                                        const RedShiftMove& move) {
  p.require_valid("tietze factoring input");
  const ColouredRelation& rel = find_required(p, move.relation, "tietze factoring");
  if (rel.colour != Colour::red) {
    throw PreconditionError("tietze factoring: relation '" +
                            move.relation.str() + "' is blue");
  }
  MonoidPresentation monoid = p.underlying_monoid();
  MonoidPresentation rest = monoid.without_relation(move.relation);
  if (move.lhs_certificate.start != rel.lhs ||
      move.lhs_certificate.end != move.new_lhs ||
      !verify_certificate(rest, move.lhs_certificate) ||
      move.rhs_certificate.start != rel.rhs ||
      move.rhs_certificate.end != move.new_rhs ||
      !verify_certificate(rest, move.rhs_certificate)) {
    throw PreconditionError(
        "tietze factoring: the shift's certificates do not verify");
  }

  Name added = fresh_label(monoid, move.relation.str() + "_shifted");

  // new lhs = new rhs holds already: walk back to the old lhs, cross the
  // old relation, walk forward to the new rhs.
  EqualityCertificate cross_old{
      rel.lhs,
      rel.rhs,
      {{move.relation, StepDirection::forward, FreeAbelianElement::zero()}}};
  EqualityCertificate add_cert = compose_certificates(
      compose_certificates(reverse_certificate(move.lhs_certificate),
                           cross_old),
      move.rhs_certificate);

  // After adding, the old relation derives through the new one.
  EqualityCertificate cross_new{
      move.new_lhs,
      move.new_rhs,
      {{added, StepDirection::forward, FreeAbelianElement::zero()}}};
  EqualityCertificate remove_cert = compose_certificates(
      compose_certificates(move.lhs_certificate, cross_new),
      reverse_certificate(move.rhs_certificate));

  TietzeFactoring f{
      TietzeAddRelation{added, move.new_lhs, move.new_rhs, add_cert},
      TietzeRemoveRelation{move.relation, remove_cert}, added};
  return f;
}

FreeAbelianElement apply_correspondence(
    const std::map<GeneratorId, FreeAbelianElement>& images,
    const FreeAbelianElement& e) {
  FreeAbelianElement out;
  for (const auto& [g, m] : e.terms()) {
    auto it = images.find(g);
    if (it == images.end()) {
      out.add(g, m);
    } else {
      out += it->second.scaled(m);
    }
  }
  return out;
}

GeneratorCorrespondence move_correspondence(const BergmanPresentation& input,
                                            const MoveRecord& record) {
  GeneratorCorrespondence corr;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EnqueueMove>) {
          const ColouredRelation* rel = input.find_relation(m.relation);
          corr.forward[rel->lhs.terms().begin()->first] = rel->rhs;
        } else if constexpr (std::is_same_v<T, OutsplitMove>) {
          for (size_t i = 0; i < m.new_generators.size(); ++i) {
            corr.backward[m.new_generators[i]] = m.parts[i];
          }
        } else if constexpr (std::is_same_v<T, LonelyEliminateMove>) {
          for (const auto& r : input.relations()) {
            if (r.lhs == FreeAbelianElement::generator(m.gen)) {
              corr.forward[m.gen] = r.rhs;
            }
          }
        } else if constexpr (std::is_same_v<T, ExtendMove>) {
          corr.backward[m.gen] = m.rhs;
        } else if constexpr (std::is_same_v<T, CollapseMove>) {
          corr.forward[m.gen] = input.find_relation(m.relation)->rhs;
        } else if constexpr (std::is_same_v<T, InsplitMove>) {
          for (const auto& g : m.new_generators) {
            corr.backward[g] = FreeAbelianElement::generator(m.gen);
          }
        }
        // red/blue shifts: identity both ways
      },
      record.params);
  return corr;
}

VmonoidShadowReport vmonoid_shadow(const BergmanPresentation& input,
                                   const BergmanPresentation& output,
                                   const GeneratorCorrespondence& corr,
                                   long long degree_bound) {
  VmonoidShadowReport report;
  MonoidPresentation vin = input.underlying_monoid();
  MonoidPresentation vout = output.underlying_monoid();
  for (const auto& r : vin.relations()) {
    CongruenceResult res = congruence_equal(
        vout, apply_correspondence(corr.forward, r.lhs),
        apply_correspondence(corr.forward, r.rhs), degree_bound);
    report.entries.push_back({r.label, true, res.certificate});
    if (!res.equal()) report.ok = false;
  }
  for (const auto& r : vout.relations()) {
    CongruenceResult res = congruence_equal(
        vin, apply_correspondence(corr.backward, r.lhs),
        apply_correspondence(corr.backward, r.rhs), degree_bound);
    report.entries.push_back({r.label, false, res.certificate});
    if (!res.equal()) report.ok = false;
  }
  return report;
}

}  // namespace bergman
