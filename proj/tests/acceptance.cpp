// Release gate: one self-contained check per shipping guarantee, printed as
// a single PASS/FAIL line each. Exit status = number of failed checks.
// Corpus sizes, search bounds and time limits are pinned here on purpose —
// loosening them is a release decision, not a refactor.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "bergman/algebra.hpp"
#include "bergman/bergman.hpp"
#include "bergman/errors.hpp"
#include "bergman/io.hpp"
#include "bergman/lpa.hpp"
#include "bergman/monoid.hpp"
#include "bergman/moves.hpp"
#include "testutil.hpp"

using namespace bergman;
using namespace testutil;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void check(bool cond, const std::string& why) {
  if (!cond) throw std::runtime_error(why);
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class Body>
void criterion(int n, const char* what, Body body) {
  try {
    std::string detail = body();
    std::printf("PASS criterion %d: %s (%s)\n", n, what, detail.c_str());
  } catch (const std::exception& e) {
    ++failures;
    std::printf("FAIL criterion %d: %s -- %s\n", n, what, e.what());
  }
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// Random applicable moves, one tailored recipe per kind. Each maker returns
// an input presentation together with the executed move, or nothing when
// the random draw was not usable (the caller redraws).

struct CorpusEntry {
  BergmanPresentation input;
  MoveResult result;
};

std::optional<CorpusEntry> make_redshift(Rng& rng) {
  auto p = random_basic_presentation(rng, 4, 3);
  if (p.relations().empty()) return {};
  const auto& rel = rng.pick(p.relations());
  auto rest = p.underlying_monoid().without_relation(rel.label);
  auto reach = oracle_reachable(rest, rel.lhs, 6);
  std::vector<FreeAbelianElement> cands(reach.begin(), reach.end());
  std::erase_if(cands, [](const FreeAbelianElement& e) { return e.is_zero(); });
  if (cands.empty()) return {};
  auto res = red_shift(p, rel.label, rng.pick(cands), rel.rhs, 8LL, 8LL);
  return CorpusEntry{p, std::move(res)};
}

std::optional<CorpusEntry> make_blueshift(Rng& rng) {
  std::vector<Name> low = {Name("x0"), Name("u0"), Name("u1")};
  FreeAbelianElement c = random_element(rng, low, 2);
  FreeAbelianElement d = random_element(rng, low, 2);
  FreeAbelianElement extra;
  if (rng.coin()) extra = random_element(rng, low, 2);

  BergmanPresentation p(
      {Name("x0"), Name("u0"), Name("u1"), Name("w0"), Name("w1")},
      {{Name("e"), Colour::blue, gen("x0"), el({{"u0", 1}, {"u1", 1}})},
       {Name("f"), Colour::blue, c + extra, el({{"w0", 1}, {"w1", 1}})},
       {Name("r"), Colour::red, c, d}});
  auto res = blue_shift(p, Name("f"), d + extra, 8LL);
  return CorpusEntry{p, std::move(res)};
}

std::optional<CorpusEntry> make_enqueue(Rng& rng) {
  std::vector<Name> gens = {Name("x0"), Name("y0"), Name("y1"), Name("z0")};
  std::vector<ColouredRelation> rels = {
      {Name("e"), Colour::blue, gen("x0"), el({{"y0", 1}, {"y1", 1}})}};
  int extra = rng.range(0, 2);
  for (int k = 0; k < extra; ++k) {
    rels.push_back({Name("r" + std::to_string(k)), Colour::red,
                    random_element(rng, gens, 3), random_element(rng, gens, 3)});
  }
  BergmanPresentation p(gens, rels);
  auto res = enqueue(p, Name("e"));
  return CorpusEntry{p, std::move(res)};
}

std::optional<CorpusEntry> make_outsplit(Rng& rng) {
  auto p = random_basic_presentation(rng, 4, 3);
  const ColouredRelation* chosen = nullptr;
  for (const auto& r : p.relations()) {
    if (r.lhs.degree() >= 2) {
      chosen = &r;
      if (rng.coin()) break;
    }
  }
  if (!chosen) return {};

  std::vector<Name> units;
  for (const auto& [g, m] : chosen->lhs.terms()) {
    for (long long k = 0; k < m; ++k) units.push_back(g);
  }
  std::shuffle(units.begin(), units.end(), rng.g);
  int t = std::min<int>(rng.range(2, 3), static_cast<int>(units.size()));
  std::vector<FreeAbelianElement> parts(t);
  for (size_t k = 0; k < units.size(); ++k) {
    int part = k < static_cast<size_t>(t) ? static_cast<int>(k)
                                          : rng.range(0, t - 1);
    parts[part].add(units[k], 1);
  }
  auto res = outsplit(p, chosen->label, parts, make_names("s", t));
  return CorpusEntry{p, std::move(res)};
}

std::optional<CorpusEntry> make_eliminate(Rng& rng) {
  auto others = make_names("a", rng.range(1, 3));
  std::vector<ColouredRelation> rels;
  int extra = rng.range(0, 2);
  for (int k = 0; k < extra; ++k) {
    rels.push_back({Name("r" + std::to_string(k)), Colour::red,
                    random_element(rng, others, 2),
                    random_element(rng, others, 2)});
  }
  rels.push_back(
      {Name("d"), Colour::red, gen("q"), random_element(rng, others, 3)});
  auto gens = others;
  gens.push_back(Name("q"));
  BergmanPresentation p(gens, rels);
  auto res = lonely_eliminate(p, Name("q"));
  return CorpusEntry{p, std::move(res)};
}

std::optional<CorpusEntry> make_extend(Rng& rng) {
  auto p = random_basic_presentation(rng, 4, 3);
  auto res = extend(p, Name("q"), random_element(rng, p.generators(), 3), {});
  return CorpusEntry{p, std::move(res)};
}

struct CollapseInstance {
  BergmanPresentation p;  // collapse q via d is applicable
};

CollapseInstance make_collapse_instance(Rng& rng) {
  auto others = make_names("a", rng.range(2, 3));
  std::vector<Name> all = others;
  all.push_back(Name("q"));
  std::vector<ColouredRelation> rels = {
      {Name("d"), Colour::red, gen("q"), random_element(rng, others, 3)}};
  int extra = rng.range(1, 2);
  for (int k = 0; k < extra; ++k) {
    rels.push_back({Name("r" + std::to_string(k)), Colour::red,
                    random_element(rng, all, 3), random_element(rng, all, 3)});
  }
  return {BergmanPresentation(all, rels)};
}

std::optional<CorpusEntry> make_collapse(Rng& rng) {
  auto inst = make_collapse_instance(rng);
  auto res = collapse(inst.p, Name("q"), Name("d"));
  return CorpusEntry{inst.p, std::move(res)};
}

struct InsplitInstance {
  BergmanPresentation p;  // insplit q via i with this partition is applicable
  std::vector<std::vector<std::pair<Name, int>>> partition;
  std::vector<Name> names;
};

std::optional<InsplitInstance> make_insplit_instance(Rng& rng) {
  auto others = make_names("a", 2);
  std::vector<Name> all = others;
  all.push_back(Name("q"));
  std::vector<ColouredRelation> rels = {
      {Name("i"), Colour::red, gen("q"), random_element(rng, all, 3)}};
  if (rng.coin(0.7)) {
    rels.push_back({Name("j"), Colour::red, random_element(rng, others, 2),
                    random_element(rng, all, 3)});
  }

  std::vector<std::pair<Name, int>> occurrences;
  for (const auto& r : rels) {
    long long m = r.rhs.multiplicity(Name("q"));
    for (int k = 1; k <= m; ++k) occurrences.push_back({r.label, k});
  }
  if (occurrences.size() < 2) return {};

  std::shuffle(occurrences.begin(), occurrences.end(), rng.g);
  int t = rng.range(2, std::min<int>(3, static_cast<int>(occurrences.size())));
  std::vector<std::vector<std::pair<Name, int>>> partition(t);
  for (size_t k = 0; k < occurrences.size(); ++k) {
    int part = k < static_cast<size_t>(t) ? static_cast<int>(k)
                                          : rng.range(0, t - 1);
    partition[part].push_back(occurrences[k]);
  }
  for (auto& part : partition) std::sort(part.begin(), part.end());

  return InsplitInstance{BergmanPresentation(all, rels), partition,
                         make_names("p", t - 1)};
}

std::optional<CorpusEntry> make_insplit(Rng& rng) {
  auto inst = make_insplit_instance(rng);
  if (!inst) return {};
  auto res =
      insplit(inst->p, Name("q"), Name("i"), inst->partition, inst->names);
  return CorpusEntry{inst->p, std::move(res)};
}

using Maker = std::optional<CorpusEntry> (*)(Rng&);

std::vector<CorpusEntry> build_move_corpus() {
  const std::vector<std::pair<Maker, int>> plan = {
      {make_redshift, 90},  {make_blueshift, 60}, {make_enqueue, 60},
      {make_outsplit, 70},  {make_eliminate, 55}, {make_extend, 55},
      {make_collapse, 55},  {make_insplit, 55},
  };
  std::vector<CorpusEntry> corpus;
  uint32_t seed = 77000;
  for (const auto& [maker, want] : plan) {
    int got = 0, attempts = 0;
    while (got < want) {
      if (++attempts > want * 40) {
        throw std::runtime_error("corpus generation stalled");
      }
      Rng rng(seed++);
      auto entry = maker(rng);
      if (!entry) continue;
      corpus.push_back(std::move(*entry));
      ++got;
    }
  }
  return corpus;
}

// The documented restriction a blue shift is justified in: base generators
// plus the ranges of the blue relations preceding `relation` in `ordering`,
// with those blue relations and every red relation supported inside.
MonoidPresentation blue_restriction(const BergmanPresentation& p,
                                    const std::vector<Name>& ordering,
                                    const Name& relation) {
  std::set<Name> allowed;
  for (const auto& g : p.base_generators()) allowed.insert(g);
  std::vector<MonoidRelation> rels;
  for (const auto& lbl : ordering) {
    if (lbl == relation) break;
    const auto* b = p.find_relation(lbl);
    rels.push_back({b->label, b->lhs, b->rhs});
    for (const auto& [g, m] : b->rhs.terms()) allowed.insert(g);
  }
  auto inside = [&allowed](const FreeAbelianElement& e) {
    for (const auto& [g, m] : e.terms()) {
      if (!allowed.count(g)) return false;
    }
    return true;
  };
  for (const auto& r : p.relations()) {
    if (r.colour == Colour::red && inside(r.lhs) && inside(r.rhs)) {
      rels.push_back({r.label, r.lhs, r.rhs});
    }
  }
  std::vector<GeneratorId> gens;
  for (const auto& g : p.generators()) {
    if (allowed.count(g)) gens.push_back(g);
  }
  return MonoidPresentation(gens, rels);
}

void verify_move_certificates(const CorpusEntry& e) {
  const auto& params = e.result.record.params;
  if (const auto* rs = std::get_if<RedShiftMove>(&params)) {
    auto rest = e.input.underlying_monoid().without_relation(rs->relation);
    check(verify_certificate(rest, rs->lhs_certificate),
          "red shift lhs certificate does not replay");
    check(verify_certificate(rest, rs->rhs_certificate),
          "red shift rhs certificate does not replay");
  } else if (const auto* bs = std::get_if<BlueShiftMove>(&params)) {
    auto rest = blue_restriction(e.input, bs->ordering, bs->relation);
    check(verify_certificate(rest, bs->lhs_certificate),
          "blue shift certificate does not replay in the restriction");
  }
}

}  // namespace

int main() {
  criterion(1, "worked example validates with exactly two orderings", [] {
    auto t0 = Clock::now();
    auto p = load_bp("worked_example.bp");
    check(p.validate().ok(), "presentation does not validate");
    check(p.generators().size() == 9, "expected 9 generators");
    check(p.relations().size() == 5, "expected 5 relations");
    std::vector<Name> blues;
    for (int k : p.blue_indices()) blues.push_back(p.relations()[k].label);
    check(blues == std::vector<Name>({Name("r1"), Name("r2"), Name("r3")}),
          "blue relations are not {r1, r2, r3}");
    auto orderings = admissible_orderings(p);
    check(orderings ==
              std::vector<std::vector<Name>>(
                  {{Name("r1"), Name("r2"), Name("r3")},
                   {Name("r1"), Name("r3"), Name("r2")}}),
          "orderings differ from {(r1,r2,r3), (r1,r3,r2)}");
    double ms = ms_since(t0);
    check(ms < 1000.0, "exceeded the 1 s budget");
    char buf[64];
    std::snprintf(buf, sizeof buf, "two orderings, %.1f ms", ms);
    return std::string(buf);
  });

  criterion(2, "presentation/graph conversion round-trips exactly", [] {
    Rng rng(2001);
    for (int k = 0; k < 1000; ++k) {
      BergmanGraph g = random_bergman_graph(rng, 8, 6);
      BergmanPresentation p = graph_to_pres(g);
      check(pres_to_graph(p) == g,
            "graph -> presentation -> graph changed instance " +
                std::to_string(k));
      check(graph_to_pres(pres_to_graph(p)) == p,
            "presentation -> graph -> presentation changed instance " +
                std::to_string(k));
    }
    return std::string("1000/1000 instances exact both ways");
  });

  criterion(3, "greedy ordering search agrees with brute force", [] {
    Rng rng(3001);
    int with_blues = 0;
    for (int k = 0; k < 1000; ++k) {
      auto p = random_bergman_presentation(rng);
      check(p.blue_indices().size() <= 4, "corpus instance out of range");
      if (!p.blue_indices().empty()) ++with_blues;
      auto fast = admissible_orderings(p);
      check(fast == oracle_orderings(p),
            "ordering mismatch on instance " + std::to_string(k));
      auto first = first_admissible_ordering(p);
      if (fast.empty()) {
        check(!first.has_value(), "greedy found an ordering brute force missed");
      } else {
        check(first == fast.front(), "greedy ordering is not the first one");
        for (const auto& o : fast) {
          check(is_admissible_ordering(p, o), "enumerated ordering rejected");
        }
      }
    }
    return "1000/1000 agree, " + std::to_string(with_blues) +
           " instances had blue relations";
  });

  std::vector<CorpusEntry> corpus;
  criterion(4, "500 random moves validate and their certificates replay", [&] {
    corpus = build_move_corpus();
    check(corpus.size() == 500, "corpus size is not 500");
    std::map<std::string, int> by_kind;
    for (const auto& e : corpus) {
      check(e.result.output.validate().ok(),
            "invalid output from a " + e.result.record.kind());
      check(apply_move(e.input, e.result.record) == e.result.output,
            "replay diverged for a " + e.result.record.kind());
      verify_move_certificates(e);
      ++by_kind[e.result.record.kind()];
    }
    std::string detail;
    for (const auto& [kind, count] : by_kind) {
      detail += (detail.empty() ? "" : ", ") + kind + " " +
                std::to_string(count);
    }
    return detail;
  });

  criterion(5, "collapse and insplit factor through elementary moves", [] {
    Rng rng(5001);
    for (int k = 0; k < 200; ++k) {
      auto inst = make_collapse_instance(rng);
      auto direct = collapse(inst.p, Name("q"), Name("d"));
      auto seq = factor_collapse(inst.p, Name("q"), Name("d"));
      auto stages = replay(seq);
      check(stages.front() == inst.p, "factorisation starts elsewhere");
      check(stages.back() == direct.output,
            "collapse factorisation diverged on instance " +
                std::to_string(k));
    }

    // The three-part split of the fixture undoes through exactly two red
    // shifts and two collapsings.
    {
      auto p = load_bg_as_pres("insplit.bg");
      auto cmds = parse_mv(slurp(data_path("insplit.mv")));
      auto split = insplit(p, cmds[0].name, cmds[0].via, cmds[0].index_parts,
                           cmds[0].new_names);
      auto seq = factor_insplit(p, cmds[0].name, cmds[0].via,
                                cmds[0].index_parts, cmds[0].new_names);
      check(seq.initial == split.output, "factorisation starts elsewhere");
      std::vector<std::string> kinds;
      for (const auto& r : seq.records) kinds.push_back(r.kind());
      check(kinds == std::vector<std::string>(
                         {"redshift", "redshift", "collapse", "collapse"}),
            "fixture instance does not factor as 2 red shifts + 2 collapses");
      check(replay(seq).back() == p, "fixture insplit did not undo");
    }

    int done = 1;
    for (uint32_t seed = 50100; done < 200; ++seed) {
      check(seed < 50100 + 200 * 40, "insplit instance generation stalled");
      Rng r2(seed);
      auto inst = make_insplit_instance(r2);
      if (!inst) continue;
      auto split =
          insplit(inst->p, Name("q"), Name("i"), inst->partition, inst->names);
      auto seq = factor_insplit(inst->p, Name("q"), Name("i"), inst->partition,
                                inst->names);
      check(seq.initial == split.output, "factorisation starts elsewhere");
      check(replay(seq).back() == inst->p,
            "insplit did not undo on seed " + std::to_string(seed));
      ++done;
    }
    return std::string("200 collapse + 200 insplit instances round-tripped");
  });

  criterion(6, "graph monoids correspond across every executed move", [&] {
    check(!corpus.empty(), "move corpus unavailable (criterion 4 failed)");
    for (const auto& e : corpus) {
      auto corr = move_correspondence(e.input, e.result.record);
      auto rep = vmonoid_shadow(e.input, e.result.output, corr, 12);
      if (!rep.ok) {
        for (const auto& entry : rep.entries) {
          if (!entry.certificate) {
            throw std::runtime_error("relation " + entry.relation.str() +
                                     " not transported across a " +
                                     e.result.record.kind());
          }
        }
      }
      auto in_monoid = e.input.underlying_monoid();
      auto out_monoid = e.result.output.underlying_monoid();
      for (const auto& entry : rep.entries) {
        check(entry.certificate.has_value(), "missing certificate");
        check(verify_certificate(entry.forward ? out_monoid : in_monoid,
                                 *entry.certificate),
              "transported certificate does not replay");
      }
    }
    return "all " + std::to_string(corpus.size()) +
           " moves transported at bound 12";
  });

  criterion(7, "matrix presentations match the pinned golden files", [] {
    auto leavitt = build_algebra_presentation(load_bg_as_pres("leavitt23.bg"));
    check(leavitt.symbols.size() == 12, "expected 12 scalar generators");
    check(leavitt.relations.size() == 25, "expected 25 relations");
    auto is_id = [&](int base, int dim) {
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
          auto want = NcPolynomial::constant(Rational(r == c ? 1 : 0));
          if (!(leavitt.relations[base + r * dim + c].rhs == want)) {
            return false;
          }
        }
      }
      return true;
    };
    check(is_id(12, 2), "sigma sigma' does not expand to the 2x2 identity");
    check(is_id(16, 3), "sigma' sigma does not expand to the 3x3 identity");
    check(algebra_to_string(leavitt) ==
              slurp(data_path("golden/leavitt23.alg")),
          "leavitt23 output changed");

    auto toeplitz = build_algebra_presentation(load_bg_as_pres("toeplitz.bg"));
    check(toeplitz.symbols.size() == 5, "expected 5 scalar generators");
    check(toeplitz.relations.size() == 10, "expected 10 relations");
    check(algebra_to_string(toeplitz) ==
              slurp(data_path("golden/toeplitz.alg")),
          "toeplitz output changed");
    return std::string("12/25 and 5/10, golden files byte-identical");
  });

  criterion(8, "defining relations vanish on 100 random hypergraphs", [] {
    auto t0 = Clock::now();
    Rng rng(8001);
    for (int k = 0; k < 100; ++k) {
      BergmanGraph g = random_hypergraph(rng, 4, 3, 3);
      LpaContext ctx(g);
      auto residues = check_defining_relations(ctx);
      check(residues.empty(), "non-zero residue on instance " +
                                  std::to_string(k) + ": " +
                                  (residues.empty() ? std::string()
                                                    : residues[0].instance));
    }
    double ms = ms_since(t0);
    check(ms < 30000.0, "exceeded the 30 s budget");
    char buf[64];
    std::snprintf(buf, sizeof buf, "100/100 clean, %.0f ms", ms);
    return std::string(buf);
  });

  criterion(9, "rewriting strategies agree within the step budget", [] {
    std::vector<BergmanGraph> graphs = {load_bg("toeplitz.bg"),
                                        load_bg("leavitt23.bg")};
    Rng rng(9001);
    int attempts = 0;
    while (graphs.size() < 22) {
      check(++attempts < 500, "could not assemble the strategy corpus");
      BergmanGraph g = random_hypergraph(rng, 3, 2, 2);
      if (all_words(LpaContext(g), 4).size() > 25000) continue;
      graphs.push_back(std::move(g));
    }
    long long words_checked = 0;
    for (const auto& g : graphs) {
      LpaContext ctx(g);
      Rng pickr(9002);
      for (const auto& w : all_words(ctx, 4)) {
        LpaElement x = LpaElement::word(w);
        LpaElement nf;
        try {
          nf = reduce(ctx, x);  // default budget must suffice
        } catch (const InternalError&) {
          throw std::runtime_error("step budget exhausted on " +
                                   lpa_element_to_string(ctx, x));
        }
        check(reduce_with_strategy(ctx, x, Strategy::leftmost) == nf,
              "leftmost strategy diverged");
        check(reduce_with_strategy(ctx, x, Strategy::rightmost) == nf,
              "rightmost strategy diverged");
        check(reduce_with_strategy(ctx, x, Strategy::random, &pickr) == nf,
              "random strategy diverged");
        ++words_checked;
      }
    }
    return std::to_string(graphs.size()) + " hypergraphs, " +
           std::to_string(words_checked) + " words, 3 strategies each";
  });

  criterion(10, "corner certificates hold at length 4", [] {
    CornerReport fixture = lonely_corner_certify(load_bg("lonely.bg"),
                                                 Name("v"), 4);
    check(fixture.ok(), "fixture certificate failed: " +
                            (fixture.failures.empty() ? std::string("?")
                                                      : fixture.failures[0]));
    Rng rng(10001);
    for (int k = 0; k < 50; ++k) {
      LonelyFixture fx = random_lonely_graph(rng);
      CornerReport rep = lonely_corner_certify(fx.graph, fx.lone, 4);
      check(rep.ok(), "random configuration " + std::to_string(k) +
                          " failed: " +
                          (rep.failures.empty() ? std::string("?")
                                                : rep.failures[0]));
    }
    return std::string("fixture + 50 random configurations certified");
  });

  criterion(11, "a red shift factors into two certified Tietze steps", [] {
    auto p = load_bg_as_pres("redshift.bg");
    auto res = red_shift(p, Name("h"), gen("v"), gen("u"), 8LL, 8LL);
    auto fac =
        tietze_factor_red_shift(p, std::get<RedShiftMove>(res.record.params));
    MonoidPresentation m0 = p.underlying_monoid();

    const auto* add_cert =
        std::get_if<EqualityCertificate>(&fac.add.justification);
    check(add_cert != nullptr, "addition carries no certificate");
    check(verify_certificate(m0, *add_cert),
          "addition certificate does not replay in the input");

    MonoidPresentation m1 = apply_tietze(m0, fac.add);
    const auto* rem_cert =
        std::get_if<EqualityCertificate>(&fac.remove.justification);
    check(rem_cert != nullptr, "removal carries no certificate");
    check(verify_certificate(m1.without_relation(Name("h")), *rem_cert),
          "removal certificate does not replay without the old relation");

    MonoidPresentation m2 = apply_tietze(m1, fac.remove);
    MonoidPresentation want(
        {Name("u"), Name("v")},
        {{Name("g"), gen("u"), el({{"u", 1}, {"v", 1}})},
         {fac.added_label, gen("v"), gen("u")}});
    check(m2 == want, "Tietze replay does not reach the shifted presentation");
    return std::string("addition + removal replay to the shifted relation");
  });

  if (failures == 0) {
    std::printf("all 11 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
