#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bergman/bergman.hpp"
#include "bergman/lpa.hpp"
#include "bergman/moves.hpp"

namespace bergman {

// Text formats. All parsers accept '#' line comments and blank lines and
// report 1-based line numbers; all serializers emit a canonical form that
// re-parses to an equal structure, byte-identically once canonical.

// .bp — Bergman presentation:
//   gens x0_1 x0_2 ...
//   blue r1: x0_1 + x0_2 = x1_1 + x1_2 + x1_3
//   red  r4: x2_1 + x3_1 = 3 x0_1 + x1_1
BergmanPresentation parse_bp(const std::string& text);
std::string serialize_bp(const BergmanPresentation& p);

// .bg — Bergman graph, multiset multiplicity by repetition:
//   vertices u v
//   red h: u -> u v
BergmanGraph parse_bg(const std::string& text);
std::string serialize_bg(const BergmanGraph& g);

// .dg — digraph:
//   vertices u v        (optional; edges also introduce vertices)
//   edge e: u -> v
Digraph parse_dg(const std::string& text);
std::string serialize_dg(const Digraph& g);

// Linear combinations over generator names: "3 x + y + 2 z", zero is "0".
// allow_zero controls whether "0" (or an empty sum) is accepted.
FreeAbelianElement parse_element(const std::string& text,
                                 bool allow_zero = true);
// Declaration-order rendering; generators not in `order` follow sorted.
std::string element_to_string(const FreeAbelianElement& e,
                              const std::vector<GeneratorId>& order);

std::string monoid_to_string(const MonoidPresentation& p);  // <x,y | x = 2 y>

// Graphviz rendering of a Bergman graph: vertices as circles, hyperedges
// as points; source connectors undirected, range connectors arrowed;
// blue dashed, red solid; multiplicity by parallel connectors.
std::string to_dot(const BergmanGraph& g);

// .mv — move scripts, one move per line:
//   redshift h: v = u -- bound 8
//   blueshift f: v0_1 -- bound 8
//   enqueue e
//   outsplit h: [u1 | u2] as v1 v2
//   eliminate x
//   extend y = u + w
//   collapse x via r3
//   insplit x via r3: [(g,1) | (g,2); (h,1)] as x2 x3
//   factor-collapse x via r3
//   factor-insplit x via r3: [(g,1) | (g,2)] as x2
//   factor-redshift h: v = u -- bound 8
// Parts of a [...] list split on '|' or ';'. Omitted bounds fall back to
// the script-level default.
struct MoveCommand {
  std::string verb;                         // "redshift", ...
  Name name;                                // relation or generator
  Name via;                                 // secondary label (collapse/insplit)
  std::vector<FreeAbelianElement> elements; // lhs/rhs/parts as applicable
  std::vector<std::vector<std::pair<Name, int>>> index_parts;  // insplit
  std::vector<Name> new_names;
  std::optional<long long> bound;
  int line = 0;
};

std::vector<MoveCommand> parse_mv(const std::string& text);

// Tietze scripts, one transformation per line:
//   addgen x = u + v
//   removegen x
//   addrel r: 2 x = y -- bound 8
//   removerel r -- bound 8
struct TietzeCommand {
  TietzeStep step;  // bounds resolved against default_bound
  int line = 0;
};

std::vector<TietzeCommand> parse_tietze_script(const std::string& text,
                                               long long default_bound);

// LPA elements: "2/3 * h[u.1][v.1] * h[u.1][v.1]^ + 1 * u", '^' marking a
// starred letter, [u.1] the first copy of vertex u. Terms may subtract
// with '-'; a missing coefficient means 1.
LpaElement parse_lpa_element(const LpaContext& ctx, const std::string& text);
std::string lpa_element_to_string(const LpaContext& ctx, const LpaElement& x);

std::string certificate_to_string(const EqualityCertificate& cert,
                                  const std::vector<GeneratorId>& order);

// Anchor specs for the CLI: "h:u.1,v.2;k:w.1,w.1" — per hyperedge the
// source and range anchor indices.
AnchorChoice parse_anchor_spec(const BergmanGraph& g, const std::string& text);

}  // namespace bergman
