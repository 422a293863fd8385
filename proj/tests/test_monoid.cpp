#include <doctest.h>

#include "bergman/monoid.hpp"
#include "testutil.hpp"

using namespace bergman;
using namespace testutil;

namespace {

MonoidPresentation toeplitz_monoid() {
  return MonoidPresentation({Name("u"), Name("v")},
                            {{Name("h"), gen("u"), el({{"u", 1}, {"v", 1}})}});
}

MonoidPresentation random_monoid(Rng& rng, int max_g = 3, int max_r = 3,
                                 int max_deg = 3) {
  int ng = rng.range(1, max_g);
  std::vector<Name> gens = make_names("x", ng);
  int nr = rng.range(1, max_r);
  std::vector<MonoidRelation> rels;
  for (int k = 0; k < nr; ++k) {
    rels.push_back({Name("r" + std::to_string(k)),
                    random_element(rng, gens, max_deg),
                    random_element(rng, gens, max_deg)});
  }
  return MonoidPresentation(std::move(gens), std::move(rels));
}

}  // namespace

TEST_CASE("good-presentation checks reject the documented defects") {
  CHECK_THROWS_AS(MonoidPresentation({Name("x"), Name("x")}, {}).check_good(),
                  ValidationError);
  CHECK_THROWS_AS(
      MonoidPresentation({Name("x")}, {{Name("r"), gen("x"), gen("y")}})
          .check_good(),
      ValidationError);
  CHECK_THROWS_AS(
      MonoidPresentation({Name("x")},
                         {{Name("r"), gen("x"), FreeAbelianElement::zero()}})
          .check_good(),
      ValidationError);
  CHECK_THROWS_AS(
      MonoidPresentation({Name("x")}, {{Name("r"), gen("x"), gen("x")},
                                       {Name("r"), gen("x"), gen("x")}})
          .check_good(),
      ValidationError);
  CHECK_NOTHROW(toeplitz_monoid().check_good());
}

TEST_CASE("u absorbs v in the Toeplitz monoid, with a replayable witness") {
  auto p = toeplitz_monoid();
  auto r = congruence_equal(p, gen("u"), el({{"u", 1}, {"v", 3}}), 8);
  REQUIRE(r.equal());
  CHECK(verify_certificate(p, *r.certificate));
  CHECK(oracle_verify(p, *r.certificate));
  CHECK(r.certificate->start == gen("u"));
  CHECK(r.certificate->end == el({{"u", 1}, {"v", 3}}));

  // v alone is in a different congruence class
  CHECK_FALSE(congruence_equal(p, gen("v"), gen("u"), 12).equal());
  CHECK(lattice_refutes(p, gen("v"), gen("u")));
}

TEST_CASE("bounded congruence agrees with the exhaustive oracle") {
  const long long cap = 6;
  int equal_seen = 0;
  for (uint32_t seed = 0; seed < 400; ++seed) {
    Rng rng(1000 + seed);
    auto p = random_monoid(rng);
    auto a = random_element(rng, p.generators(), 3);
    auto b = random_element(rng, p.generators(), 3);
    bool expected = oracle_congruent(p, a, b, cap);
    auto got = congruence_equal(p, a, b, cap);
    CAPTURE(seed);
    CHECK(got.equal() == expected);
    if (got.equal()) {
      ++equal_seen;
      CHECK(oracle_verify(p, *got.certificate));
      // every intermediate stays within the bound
      FreeAbelianElement cur = got.certificate->start;
      for (const auto& s : got.certificate->steps) {
        const auto* rel = p.find_relation(s.relation);
        REQUIRE(rel != nullptr);
        cur = s.context +
              (s.direction == StepDirection::forward ? rel->rhs : rel->lhs);
        CHECK(cur.degree() <= cap);
      }
    }
  }
  CHECK(equal_seen > 20);  // the corpus exercises both outcomes
}

TEST_CASE("lattice refutation is sound on oracle-equal pairs") {
  for (uint32_t seed = 0; seed < 300; ++seed) {
    Rng rng(7000 + seed);
    auto p = random_monoid(rng);
    auto a = random_element(rng, p.generators(), 3);
    auto reachable = oracle_reachable(p, a, 6);
    for (const auto& b : reachable) {
      CAPTURE(seed);
      CHECK_FALSE(lattice_refutes(p, a, b));
    }
  }
}

TEST_CASE("certificate composition and reversal replay") {
  auto p = toeplitz_monoid();
  auto ab = congruence_equal(p, gen("u"), el({{"u", 1}, {"v", 1}}), 6);
  auto bc = congruence_equal(p, el({{"u", 1}, {"v", 1}}),
                             el({{"u", 1}, {"v", 2}}), 6);
  REQUIRE(ab.equal());
  REQUIRE(bc.equal());
  auto both = compose_certificates(*ab.certificate, *bc.certificate);
  CHECK(oracle_verify(p, both));
  auto back = reverse_certificate(both);
  CHECK(back.start == both.end);
  CHECK(back.end == both.start);
  CHECK(oracle_verify(p, back));
}

TEST_CASE("verify_certificate rejects tampered witnesses") {
  auto p = toeplitz_monoid();
  auto r = congruence_equal(p, gen("u"), el({{"u", 1}, {"v", 2}}), 6);
  REQUIRE(r.equal());
  REQUIRE(r.certificate->steps.size() >= 2);

  auto broken = *r.certificate;
  broken.steps[0].context.add(Name("v"), 1);
  CHECK_FALSE(verify_certificate(p, broken));

  broken = *r.certificate;
  broken.steps[1].relation = Name("nope");
  CHECK_FALSE(verify_certificate(p, broken));

  broken = *r.certificate;
  broken.end.add(Name("v"), 1);
  CHECK_FALSE(verify_certificate(p, broken));

  broken = *r.certificate;
  broken.steps.pop_back();
  CHECK_FALSE(verify_certificate(p, broken));
}

TEST_CASE("default degree bound follows the documented formula") {
  auto p = toeplitz_monoid();
  // max side degree is 2 (u + v), so bound = max(deg a, deg b) + 16
  CHECK(default_degree_bound(p, gen("u"), gen("v")) == 1 + 8 * 2);
  CHECK(default_degree_bound(p, el({{"u", 3}}), gen("v")) == 3 + 8 * 2);
}

TEST_CASE("Tietze steps round-trip a generator and a relation") {
  auto p = toeplitz_monoid();

  auto q = apply_tietze(p, TietzeAddGenerator{Name("w"),
                                              el({{"u", 1}, {"v", 1}}), {}});
  REQUIRE(q.generators().size() == 3);
  REQUIRE(q.find_relation(Name("def_w")) != nullptr);
  CHECK(q.find_relation(Name("def_w"))->lhs == gen("w"));

  auto q2 = apply_tietze(
      q, TietzeAddRelation{Name("s"), gen("w"), gen("u"), 8LL});
  REQUIRE(q2.find_relation(Name("s")) != nullptr);

  auto q3 = apply_tietze(q2, TietzeRemoveRelation{Name("def_w"), 8LL});
  CHECK(q3.find_relation(Name("def_w")) == nullptr);

  auto q4 = apply_tietze(q3, TietzeRemoveGenerator{Name("w")});
  CHECK(q4 == p);
}

TEST_CASE("Tietze preconditions: refuted vs unknown, missing pieces") {
  auto p = toeplitz_monoid();
  // v = u is refutable, so adding it must fail as refuted
  CHECK_THROWS_WITH_AS(
      apply_tietze(p, TietzeAddRelation{Name("s"), gen("v"), gen("u"), 8LL}),
      doctest::Contains("refuted"), PreconditionError);
  // u + 3v = u needs 3 backward steps through degree 4; bound 1 cannot see it
  CHECK_THROWS_WITH_AS(
      apply_tietze(p, TietzeAddRelation{Name("s"), el({{"u", 1}, {"v", 3}}),
                                        gen("u"), 1LL}),
      doctest::Contains("unknown"), PreconditionError);
  // removegen requires a defining relation free of the generator
  CHECK_THROWS_AS(apply_tietze(p, TietzeRemoveGenerator{Name("u")}),
                  PreconditionError);
  // duplicate generator
  CHECK_THROWS_AS(
      apply_tietze(p, TietzeAddGenerator{Name("u"), gen("v"), {}}),
      PreconditionError);
}

TEST_CASE("superfluous relations are recognized with a usable witness") {
  // second relation repeats the first under a different label
  MonoidPresentation p(
      {Name("u"), Name("v")},
      {{Name("h"), gen("u"), el({{"u", 1}, {"v", 1}})},
       {Name("h2"), gen("u"), el({{"u", 1}, {"v", 1}})}});
  auto cert = is_superfluous(p, Name("h2"), 8);
  REQUIRE(cert.has_value());
  CHECK(oracle_verify(p.without_relation(Name("h2")), *cert));

  MonoidPresentation lone(
      {Name("u"), Name("v")},
      {{Name("h"), gen("u"), el({{"u", 1}, {"v", 1}})}});
  CHECK_FALSE(is_superfluous(lone, Name("h"), 8).has_value());
}
