// Microbenchmarks for the hot paths: bounded congruence search, normal-form
// rewriting, move application and the matrix recipe. Inputs mirror the data/
// fixtures so numbers stay comparable across changes.

#include <benchmark/benchmark.h>

#include <string>

#include "bergman/algebra.hpp"
#include "bergman/bergman.hpp"
#include "bergman/io.hpp"
#include "bergman/lpa.hpp"
#include "bergman/monoid.hpp"
#include "bergman/moves.hpp"

using namespace bergman;

namespace {

BergmanPresentation worked_example() {
  return parse_bp(
      "gens x0_1 x0_2 x1_1 x1_2 x1_3 x2_1 x2_2 x3_1 x3_2\n"
      "blue r1: x0_1 + x0_2 = x1_1 + x1_2 + x1_3\n"
      "blue r2: x0_1 + 2 x1_2 + x1_3 = x2_1 + x2_2\n"
      "blue r3: x1_1 = x3_1 + x3_2\n"
      "red r4: x2_1 + x3_1 = 3 x0_1 + x1_1\n"
      "red r5: 3 x1_3 = 2 x2_2\n");
}

BergmanGraph leavitt23() {
  return parse_bg("vertices v\nred h: v v -> v v v\n");
}

void bm_congruence_search(benchmark::State& state) {
  MonoidPresentation m = worked_example().underlying_monoid();
  FreeAbelianElement a = parse_element("x2_1 + x3_1");
  FreeAbelianElement b = parse_element("3 x0_1 + x1_1");
  for (auto _ : state) {
    benchmark::DoNotOptimize(congruence_equal(m, a, b, state.range(0)));
  }
}
BENCHMARK(bm_congruence_search)->Arg(8)->Arg(12)->Arg(16);

void bm_admissible_orderings(benchmark::State& state) {
  BergmanPresentation p = worked_example();
  for (auto _ : state) {
    benchmark::DoNotOptimize(admissible_orderings(p));
  }
}
BENCHMARK(bm_admissible_orderings);

void bm_lpa_reduce(benchmark::State& state) {
  LpaContext ctx(leavitt23());
  // A fully forbidden stack: every adjacent pair rewrites.
  std::string letter = "h[v.1][v.1]";
  std::string text;
  for (int k = 0; k < state.range(0); ++k) {
    if (k) text += " * ";
    text += letter + (k % 2 ? "" : "^");
  }
  LpaElement x = parse_lpa_element(ctx, text);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce(ctx, x));
  }
}
BENCHMARK(bm_lpa_reduce)->Arg(2)->Arg(4)->Arg(6);

void bm_lpa_enumerate(benchmark::State& state) {
  LpaContext ctx(leavitt23());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate_basis_words(ctx, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(bm_lpa_enumerate)->Arg(3)->Arg(4);

void bm_outsplit_enqueue(benchmark::State& state) {
  BergmanPresentation p = parse_bp(
      "gens u1 u2 u3\n"
      "red h: u1 + u2 = u3\n");
  for (auto _ : state) {
    auto split = outsplit(p, Name("h"),
                          {FreeAbelianElement::generator(Name("u1")),
                           FreeAbelianElement::generator(Name("u2"))},
                          {Name("w1"), Name("w2")});
    benchmark::DoNotOptimize(enqueue(split.output, Name("h_0")));
  }
}
BENCHMARK(bm_outsplit_enqueue);

void bm_algebra_presentation(benchmark::State& state) {
  BergmanPresentation p = graph_to_pres(leavitt23());
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_algebra_presentation(p));
  }
}
BENCHMARK(bm_algebra_presentation);

void bm_corner_certify(benchmark::State& state) {
  BergmanGraph g = parse_bg(
      "vertices u w v\n"
      "red f: u -> u w\n"
      "red g: w -> u\n"
      "red h: v -> u w w\n");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lonely_corner_certify(g, Name("v"), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(bm_corner_certify)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
