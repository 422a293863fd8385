#include "bergman/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace bergman {

namespace {

constexpr size_t npos = std::string::npos;

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError(msg, line);
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string join(const std::vector<std::string>& ts, size_t from) {
  std::string out;
  for (size_t k = from; k < ts.size(); ++k) {
    if (!out.empty()) out += ' ';
    out += ts[k];
  }
  return out;
}

struct Line {
  int number;
  std::string text;
};

// Comment-stripped, non-blank lines with their 1-based numbers.
std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == npos ? npos : eol - pos);
    ++number;
    if (size_t hash = line.find('#'); hash != npos) line.resize(hash);
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
    if (eol == npos) break;
    pos = eol + 1;
  }
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

long long parse_positive_int(const std::string& s, int line,
                             const std::string& what) {
  if (!all_digits(s)) fail(line, what + " must be a positive integer, got '" + s + "'");
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    fail(line, what + " '" + s + "' is out of range");
  }
  if (v < 1) fail(line, what + " must be positive, got '" + s + "'");
  return v;
}

Name parse_name(const std::string& s, int line, const std::string& what) {
  if (!Name::valid(s)) {
    fail(line, "invalid " + what + " '" + s +
                   "' (names are non-empty, avoid reserved characters and "
                   "all-digit strings)");
  }
  return Name(s);
}

FreeAbelianElement parse_element_at(const std::string& text, int line,
                                    bool allow_zero) {
  std::string t = trim(text);
  if (t.empty()) fail(line, "empty element (write '0' for zero)");
  if (t == "0") {
    if (!allow_zero) fail(line, "the zero element is not allowed here");
    return FreeAbelianElement::zero();
  }
  FreeAbelianElement e;
  size_t start = 0;
  while (start <= t.size()) {
    size_t plus = t.find('+', start);
    std::string term =
        trim(t.substr(start, plus == npos ? npos : plus - start));
    if (term.empty()) fail(line, "empty term in element '" + t + "'");
    auto tk = tokens(term);
    long long coef = 1;
    std::string name;
    if (tk.size() == 1) {
      name = tk[0];
    } else if (tk.size() == 2) {
      coef = parse_positive_int(tk[0], line, "coefficient");
      name = tk[1];
    } else {
      fail(line, "term '" + term + "' should be 'generator' or 'k generator'");
    }
    if (all_digits(name)) {
      fail(line, "term '" + term + "' has no generator name");
    }
    e.add(parse_name(name, line, "generator name"), coef);
    if (plus == npos) break;
    start = plus + 1;
  }
  return e;
}

// Splits `body` at the single occurrence of `sep`, failing otherwise.
std::pair<std::string, std::string> split_once(const std::string& body,
                                               const std::string& sep, int line,
                                               const std::string& context) {
  size_t pos = body.find(sep);
  if (pos == npos) fail(line, context + ": expected '" + sep + "'");
  if (body.find(sep, pos + sep.size()) != npos) {
    fail(line, context + ": more than one '" + sep + "'");
  }
  return {trim(body.substr(0, pos)), trim(body.substr(pos + sep.size()))};
}

// "label: rest" -> (label, rest).
std::pair<Name, std::string> split_label(const std::string& body, int line,
                                         const std::string& what) {
  auto [before, after] = split_once(body, ":", line, what);
  return {parse_name(before, line, what), after};
}

std::vector<std::string> split_parts(const std::string& inside, int line) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t k = 0; k <= inside.size(); ++k) {
    if (k == inside.size() || inside[k] == '|' || inside[k] == ';') {
      std::string part = trim(inside.substr(start, k - start));
      if (part.empty()) fail(line, "empty part in '[...]' list");
      parts.push_back(part);
      start = k + 1;
    }
  }
  return parts;
}

// "... [inside] tail" -> (inside, tail); nothing but spaces allowed before '['.
std::pair<std::string, std::string> take_bracket(const std::string& body,
                                                 int line) {
  size_t open = body.find('[');
  if (open == npos || !trim(body.substr(0, open)).empty()) {
    fail(line, "expected a '[...]' list");
  }
  size_t close = body.find(']', open);
  if (close == npos) fail(line, "unbalanced '['");
  return {body.substr(open + 1, close - open - 1), trim(body.substr(close + 1))};
}

std::vector<Name> parse_as_names(const std::string& tail, int line,
                                 bool required) {
  auto tk = tokens(tail);
  if (tk.empty()) {
    if (required) fail(line, "expected 'as <new names>'");
    return {};
  }
  if (tk[0] != "as") fail(line, "expected 'as' before the new names");
  std::vector<Name> names;
  for (size_t k = 1; k < tk.size(); ++k) {
    names.push_back(parse_name(tk[k], line, "new generator name"));
  }
  if (required && names.empty()) fail(line, "expected at least one new name");
  return names;
}

std::vector<std::pair<Name, int>> parse_occurrences(const std::string& part,
                                                    int line) {
  std::vector<std::pair<Name, int>> out;
  size_t k = 0;
  while (k < part.size()) {
    char c = part[k];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++k;
      continue;
    }
    if (c != '(') fail(line, "expected '(label,k)' in occurrence list");
    size_t close = part.find(')', k);
    if (close == npos) fail(line, "unbalanced '(' in occurrence list");
    std::string body = part.substr(k + 1, close - k - 1);
    auto [label, count] = split_once(body, ",", line, "occurrence");
    out.emplace_back(parse_name(label, line, "relation label"),
                     static_cast<int>(parse_positive_int(count, line,
                                                         "occurrence index")));
    k = close + 1;
  }
  if (out.empty()) fail(line, "empty occurrence part");
  return out;
}

// Strips a trailing "-- bound N" from the token list, if present.
std::optional<long long> take_bound(std::vector<std::string>& tk, int line) {
  for (size_t k = 0; k < tk.size(); ++k) {
    if (tk[k] == "--") {
      if (k + 3 != tk.size() || tk[k + 1] != "bound") {
        fail(line, "expected '-- bound N' at end of line");
      }
      long long b = parse_positive_int(tk[k + 2], line, "bound");
      tk.resize(k);
      return b;
    }
  }
  return std::nullopt;
}

std::string pad_colour(Colour c) {
  return c == Colour::blue ? "blue " : "red  ";
}

std::string render_multiset(const BergmanGraph& g,
                            const FreeAbelianElement& side) {
  std::string out;
  for (const auto& v : g.vertices()) {
    for (long long k = 0; k < side.multiplicity(v); ++k) {
      if (!out.empty()) out += ' ';
      out += v.str();
    }
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

FreeAbelianElement parse_element(const std::string& text, bool allow_zero) {
  return parse_element_at(text, 1, allow_zero);
}

std::string element_to_string(const FreeAbelianElement& e,
                              const std::vector<GeneratorId>& order) {
  if (e.is_zero()) return "0";
  std::string out;
  auto append = [&out](long long m, const GeneratorId& g) {
    if (!out.empty()) out += " + ";
    if (m != 1) out += std::to_string(m) + " ";
    out += g.str();
  };
  std::set<GeneratorId> seen;
  for (const auto& g : order) {
    if (long long m = e.multiplicity(g); m > 0 && seen.insert(g).second) {
      append(m, g);
    }
  }
  for (const auto& [g, m] : e.terms()) {  // leftovers, already name-sorted
    if (!seen.count(g)) append(m, g);
  }
  return out;
}

BergmanPresentation parse_bp(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(1, "empty input: expected a 'gens' line");
  auto head = tokens(lines[0].text);
  if (head[0] != "gens") {
    fail(lines[0].number, "expected a 'gens' line first, got '" + head[0] + "'");
  }
  std::vector<GeneratorId> gens;
  std::set<GeneratorId> declared;
  for (size_t k = 1; k < head.size(); ++k) {
    Name g = parse_name(head[k], lines[0].number, "generator name");
    if (!declared.insert(g).second) {
      fail(lines[0].number, "generator '" + g.str() + "' declared twice");
    }
    gens.push_back(g);
  }

  std::vector<ColouredRelation> rels;
  std::set<Name> labels;
  for (size_t n = 1; n < lines.size(); ++n) {
    const auto& [line, body] = lines[n];
    auto tk = tokens(body);
    Colour colour;
    if (tk[0] == "blue") {
      colour = Colour::blue;
    } else if (tk[0] == "red") {
      colour = Colour::red;
    } else {
      fail(line, "expected 'blue' or 'red' relation line, got '" + tk[0] + "'");
    }
    auto [label, rest] = split_label(join(tk, 1), line, "relation label");
    if (!labels.insert(label).second) {
      fail(line, "relation label '" + label.str() + "' used twice");
    }
    auto [lhs_text, rhs_text] = split_once(rest, "=", line,
                                           "relation '" + label.str() + "'");
    FreeAbelianElement lhs = parse_element_at(lhs_text, line, false);
    FreeAbelianElement rhs = parse_element_at(rhs_text, line, false);
    for (const auto* side : {&lhs, &rhs}) {
      for (const auto& [g, m] : side->terms()) {
        if (!declared.count(g)) {
          fail(line, "relation '" + label.str() +
                         "' uses undeclared generator '" + g.str() + "'");
        }
      }
    }
    rels.push_back({label, colour, lhs, rhs});
  }
  return BergmanPresentation(std::move(gens), std::move(rels));
}

std::string serialize_bp(const BergmanPresentation& p) {
  std::string out = "gens";
  for (const auto& g : p.generators()) out += " " + g.str();
  out += "\n";
  for (const auto& r : p.relations()) {
    out += pad_colour(r.colour) + r.label.str() + ": " +
           element_to_string(r.lhs, p.generators()) + " = " +
           element_to_string(r.rhs, p.generators()) + "\n";
  }
  return out;
}

BergmanGraph parse_bg(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(1, "empty input: expected a 'vertices' line");
  auto head = tokens(lines[0].text);
  if (head[0] != "vertices") {
    fail(lines[0].number,
         "expected a 'vertices' line first, got '" + head[0] + "'");
  }
  std::vector<VertexId> vertices;
  std::set<VertexId> declared;
  for (size_t k = 1; k < head.size(); ++k) {
    Name v = parse_name(head[k], lines[0].number, "vertex name");
    if (!declared.insert(v).second) {
      fail(lines[0].number, "vertex '" + v.str() + "' declared twice");
    }
    vertices.push_back(v);
  }

  std::vector<Hyperedge> edges;
  std::set<Name> labels;
  for (size_t n = 1; n < lines.size(); ++n) {
    const auto& [line, body] = lines[n];
    auto tk = tokens(body);
    Colour colour;
    if (tk[0] == "blue") {
      colour = Colour::blue;
    } else if (tk[0] == "red") {
      colour = Colour::red;
    } else {
      fail(line, "expected 'blue' or 'red' hyperedge line, got '" + tk[0] + "'");
    }
    auto [label, rest] = split_label(join(tk, 1), line, "hyperedge label");
    if (!labels.insert(label).second) {
      fail(line, "hyperedge label '" + label.str() + "' used twice");
    }
    auto [src_text, rng_text] = split_once(rest, "->", line,
                                           "hyperedge '" + label.str() + "'");
    auto side = [&](const std::string& t, const char* which) {
      auto names = tokens(t);
      if (names.empty()) {
        fail(line, std::string("hyperedge '") + label.str() + "' has an empty " +
                       which);
      }
      FreeAbelianElement e;
      for (const auto& s : names) {
        Name v = parse_name(s, line, "vertex name");
        if (!declared.count(v)) {
          fail(line, "hyperedge '" + label.str() +
                         "' uses undeclared vertex '" + v.str() + "'");
        }
        e.add(v, 1);
      }
      return e;
    };
    edges.push_back({label, colour, side(src_text, "source"),
                     side(rng_text, "range")});
  }
  return BergmanGraph(std::move(vertices), std::move(edges));
}

std::string serialize_bg(const BergmanGraph& g) {
  std::string out = "vertices";
  for (const auto& v : g.vertices()) out += " " + v.str();
  out += "\n";
  for (const auto& e : g.edges()) {
    out += pad_colour(e.colour) + e.label.str() + ": " +
           render_multiset(g, e.source) + " -> " + render_multiset(g, e.range) +
           "\n";
  }
  return out;
}

Digraph parse_dg(const std::string& text) {
  auto lines = content_lines(text);
  std::vector<VertexId> vertices;
  std::set<VertexId> declared;
  auto declare = [&](const Name& v) {
    if (declared.insert(v).second) vertices.push_back(v);
  };
  size_t first_edge = 0;
  if (!lines.empty()) {
    auto head = tokens(lines[0].text);
    if (head[0] == "vertices") {
      for (size_t k = 1; k < head.size(); ++k) {
        Name v = parse_name(head[k], lines[0].number, "vertex name");
        if (declared.count(v)) {
          fail(lines[0].number, "vertex '" + v.str() + "' declared twice");
        }
        declare(v);
      }
      first_edge = 1;
    }
  }
  std::vector<DigraphEdge> edges;
  std::set<Name> labels;
  for (size_t n = first_edge; n < lines.size(); ++n) {
    const auto& [line, body] = lines[n];
    auto tk = tokens(body);
    if (tk[0] != "edge") {
      fail(line, "expected an 'edge' line, got '" + tk[0] + "'");
    }
    auto [label, rest] = split_label(join(tk, 1), line, "edge label");
    if (!labels.insert(label).second) {
      fail(line, "edge label '" + label.str() + "' used twice");
    }
    auto [src, dst] = split_once(rest, "->", line, "edge '" + label.str() + "'");
    auto stk = tokens(src);
    auto dtk = tokens(dst);
    if (stk.size() != 1 || dtk.size() != 1) {
      fail(line, "edge '" + label.str() + "' needs one source and one target");
    }
    Name u = parse_name(stk[0], line, "vertex name");
    Name v = parse_name(dtk[0], line, "vertex name");
    declare(u);
    declare(v);
    edges.push_back({label, u, v});
  }
  Digraph g(std::move(vertices), std::move(edges));
  g.check();
  return g;
}

std::string serialize_dg(const Digraph& g) {
  std::string out = "vertices";
  for (const auto& v : g.vertices()) out += " " + v.str();
  out += "\n";
  for (const auto& e : g.edges()) {
    out += "edge " + e.label.str() + ": " + e.source.str() + " -> " +
           e.target.str() + "\n";
  }
  return out;
}

std::string monoid_to_string(const MonoidPresentation& p) {
  std::string out = "⟨";
  for (size_t k = 0; k < p.generators().size(); ++k) {
    if (k) out += ", ";
    out += p.generators()[k].str();
  }
  out += " | ";
  for (size_t k = 0; k < p.relations().size(); ++k) {
    const auto& r = p.relations()[k];
    if (k) out += ", ";
    out += r.label.str() + ": " + element_to_string(r.lhs, p.generators()) +
           " = " + element_to_string(r.rhs, p.generators());
  }
  return out + "⟩";
}

std::string to_dot(const BergmanGraph& g) {
  std::string out = "digraph bergman {\n  rankdir=LR;\n";
  for (const auto& v : g.vertices()) {
    out += "  \"v:" + dot_escape(v.str()) + "\" [shape=circle, label=\"" +
           dot_escape(v.str()) + "\"];\n";
  }
  for (const auto& e : g.edges()) {
    const char* colour = e.colour == Colour::blue ? "blue" : "red";
    const char* style = e.colour == Colour::blue ? ", style=dashed" : "";
    out += "  \"e:" + dot_escape(e.label.str()) +
           "\" [shape=point, xlabel=\"" + dot_escape(e.label.str()) +
           "\", color=" + colour + "];\n";
    for (const auto& v : g.vertices()) {
      for (long long k = 0; k < e.source.multiplicity(v); ++k) {
        out += "  \"v:" + dot_escape(v.str()) + "\" -> \"e:" +
               dot_escape(e.label.str()) + "\" [dir=none, color=" + colour +
               style + "];\n";
      }
    }
    for (const auto& v : g.vertices()) {
      for (long long k = 0; k < e.range.multiplicity(v); ++k) {
        out += "  \"e:" + dot_escape(e.label.str()) + "\" -> \"v:" +
               dot_escape(v.str()) + "\" [color=" + colour + style + "];\n";
      }
    }
  }
  return out + "}\n";
}

std::vector<MoveCommand> parse_mv(const std::string& text) {
  std::vector<MoveCommand> out;
  for (const auto& [line, body] : content_lines(text)) {
    auto tk = tokens(body);
    MoveCommand cmd;
    cmd.line = line;
    cmd.verb = tk[0];
    cmd.bound = take_bound(tk, line);
    std::string rest = join(tk, 1);

    if (cmd.verb == "redshift" || cmd.verb == "factor-redshift") {
      auto [label, eq] = split_label(rest, line, "relation label");
      cmd.name = label;
      auto [l, r] = split_once(eq, "=", line, "shifted relation");
      cmd.elements = {parse_element_at(l, line, false),
                      parse_element_at(r, line, false)};
    } else if (cmd.verb == "blueshift") {
      auto [label, l] = split_label(rest, line, "relation label");
      cmd.name = label;
      cmd.elements = {parse_element_at(l, line, false)};
    } else if (cmd.verb == "enqueue") {
      auto names = tokens(rest);
      if (names.size() != 1) fail(line, "enqueue takes one relation label");
      cmd.name = parse_name(names[0], line, "relation label");
    } else if (cmd.verb == "outsplit") {
      auto [label, tail] = split_label(rest, line, "relation label");
      cmd.name = label;
      auto [inside, after] = take_bracket(tail, line);
      for (const auto& part : split_parts(inside, line)) {
        cmd.elements.push_back(parse_element_at(part, line, false));
      }
      cmd.new_names = parse_as_names(after, line, true);
    } else if (cmd.verb == "eliminate") {
      auto names = tokens(rest);
      if (names.size() != 1) fail(line, "eliminate takes one generator");
      cmd.name = parse_name(names[0], line, "generator name");
    } else if (cmd.verb == "extend") {
      auto [l, r] = split_once(rest, "=", line, "extend");
      auto names = tokens(l);
      if (names.size() != 1) fail(line, "extend takes one new generator");
      cmd.name = parse_name(names[0], line, "generator name");
      cmd.elements = {parse_element_at(r, line, false)};
    } else if (cmd.verb == "collapse" || cmd.verb == "factor-collapse") {
      auto names = tokens(rest);
      if (names.size() != 3 || names[1] != "via") {
        fail(line, cmd.verb + " expects '<generator> via <relation>'");
      }
      cmd.name = parse_name(names[0], line, "generator name");
      cmd.via = parse_name(names[2], line, "relation label");
    } else if (cmd.verb == "insplit" || cmd.verb == "factor-insplit") {
      auto [head, tail] = split_once(rest, ":", line, cmd.verb);
      auto names = tokens(head);
      if (names.size() != 3 || names[1] != "via") {
        fail(line, cmd.verb + " expects '<generator> via <relation>: [...]'");
      }
      cmd.name = parse_name(names[0], line, "generator name");
      cmd.via = parse_name(names[2], line, "relation label");
      auto [inside, after] = take_bracket(tail, line);
      for (const auto& part : split_parts(inside, line)) {
        cmd.index_parts.push_back(parse_occurrences(part, line));
      }
      cmd.new_names = parse_as_names(after, line, false);
    } else {
      fail(line, "unknown move verb '" + cmd.verb + "'");
    }
    out.push_back(std::move(cmd));
  }
  return out;
}

std::vector<TietzeCommand> parse_tietze_script(const std::string& text,
                                               long long default_bound) {
  std::vector<TietzeCommand> out;
  for (const auto& [line, body] : content_lines(text)) {
    auto tk = tokens(body);
    std::string verb = tk[0];
    std::optional<long long> bound = take_bound(tk, line);
    std::string rest = join(tk, 1);
    long long b = bound.value_or(default_bound);

    TietzeCommand cmd;
    cmd.line = line;
    if (verb == "addgen") {
      auto [l, r] = split_once(rest, "=", line, "addgen");
      auto names = tokens(l);
      if (names.size() != 1) fail(line, "addgen takes one new generator");
      cmd.step = TietzeAddGenerator{parse_name(names[0], line, "generator name"),
                                    parse_element_at(r, line, false),
                                    std::nullopt};
    } else if (verb == "removegen") {
      auto names = tokens(rest);
      if (names.size() != 1) fail(line, "removegen takes one generator");
      cmd.step =
          TietzeRemoveGenerator{parse_name(names[0], line, "generator name")};
    } else if (verb == "addrel") {
      auto [label, eq] = split_label(rest, line, "relation label");
      auto [l, r] = split_once(eq, "=", line, "added relation");
      cmd.step = TietzeAddRelation{label, parse_element_at(l, line, false),
                                   parse_element_at(r, line, false),
                                   CertificateOrBound{b}};
    } else if (verb == "removerel") {
      auto names = tokens(rest);
      if (names.size() != 1) fail(line, "removerel takes one relation label");
      cmd.step = TietzeRemoveRelation{parse_name(names[0], line,
                                                 "relation label"),
                                      CertificateOrBound{b}};
    } else {
      fail(line, "unknown transformation '" + verb + "'");
    }
    out.push_back(std::move(cmd));
  }
  return out;
}

namespace {

EdgeIndex parse_edge_index(const std::string& s, int line) {
  size_t dot = s.rfind('.');
  if (dot == npos || dot == 0 || dot + 1 == s.size()) {
    fail(line, "index '" + s + "' should be '<vertex>.<k>'");
  }
  Name v = parse_name(s.substr(0, dot), line, "vertex name");
  int k = static_cast<int>(
      parse_positive_int(s.substr(dot + 1), line, "index counter"));
  return {v, k};
}

struct LpaTermLetter {
  bool is_vertex = false;
  Name vertex;
  PathLetter letter;
};

LpaTermLetter parse_lpa_letter(const LpaContext& ctx, std::string piece,
                               int line) {
  LpaTermLetter out;
  bool starred = false;
  if (!piece.empty() && piece.back() == '^') {
    starred = true;
    piece.pop_back();
    piece = trim(piece);
  }
  size_t open = piece.find('[');
  if (open == npos) {
    if (starred) fail(line, "a vertex cannot be starred: '" + piece + "^'");
    out.is_vertex = true;
    out.vertex = parse_name(piece, line, "vertex name");
    return out;
  }
  Name label = parse_name(piece.substr(0, open), line, "hyperedge label");
  size_t close1 = piece.find(']', open);
  if (close1 == npos) fail(line, "unbalanced '[' in '" + piece + "'");
  size_t open2 = piece.find('[', close1);
  size_t close2 = open2 == npos ? npos : piece.find(']', open2);
  if (open2 != close1 + 1 || close2 == npos || close2 + 1 != piece.size()) {
    fail(line, "letter '" + piece + "' should be 'h[u.1][v.1]'");
  }
  EdgeIndex i = parse_edge_index(piece.substr(open + 1, close1 - open - 1), line);
  EdgeIndex j =
      parse_edge_index(piece.substr(open2 + 1, close2 - open2 - 1), line);
  int id = ctx.edge_id({label, i, j});
  if (id < 0) {
    fail(line, "no edge " + label.str() + "[" + i.to_string() + "][" +
                   j.to_string() + "] in this hypergraph");
  }
  out.letter = {id, starred};
  return out;
}

bool looks_like_rational(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == npos) return all_digits(s);
  return all_digits(s.substr(0, slash)) && all_digits(s.substr(slash + 1));
}

Rational parse_rational(const std::string& s, int line) {
  size_t slash = s.find('/');
  if (slash == npos) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      fail(line, "coefficient '" + s + "' is out of range");
    }
    return Rational(v);
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  long long n = 0, d = 0;
  auto [p1, e1] = std::from_chars(num.data(), num.data() + num.size(), n);
  auto [p2, e2] = std::from_chars(den.data(), den.data() + den.size(), d);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != num.data() + num.size() ||
      p2 != den.data() + den.size()) {
    fail(line, "coefficient '" + s + "' is out of range");
  }
  if (d == 0) fail(line, "zero denominator in '" + s + "'");
  return Rational(n, d);
}

}  // namespace

LpaElement parse_lpa_element(const LpaContext& ctx, const std::string& text) {
  const int line = 1;
  std::string t = trim(text);
  if (t.empty()) fail(line, "empty element (write '0' for zero)");
  if (t == "0") return LpaElement::zero();

  // Sign-separated terms; names can contain neither '+' nor '-'.
  std::vector<std::pair<int, std::string>> terms;
  int sign = +1;
  std::string current;
  bool first = true;
  for (char c : t) {
    if (c == '+' || c == '-') {
      if (!trim(current).empty()) {
        terms.push_back({sign, trim(current)});
      } else if (!first) {
        fail(line, "empty term before '" + std::string(1, c) + "'");
      }
      sign = c == '-' ? -1 : +1;
      current.clear();
      first = false;
      continue;
    }
    current += c;
    if (!std::isspace(static_cast<unsigned char>(c))) first = false;
  }
  if (trim(current).empty()) fail(line, "trailing sign without a term");
  terms.push_back({sign, trim(current)});

  LpaElement out;
  for (const auto& [s, term] : terms) {
    // split on '*'
    std::vector<std::string> pieces;
    size_t start = 0;
    while (start <= term.size()) {
      size_t star = term.find('*', start);
      std::string piece =
          trim(term.substr(start, star == npos ? npos : star - start));
      if (piece.empty()) fail(line, "empty factor in term '" + term + "'");
      pieces.push_back(piece);
      if (star == npos) break;
      start = star + 1;
    }
    Rational coef(s);
    size_t k = 0;
    if (looks_like_rational(pieces[0])) {
      coef *= parse_rational(pieces[0], line);
      k = 1;
      if (k == pieces.size()) {
        fail(line, "term '" + term + "' has a coefficient but no word");
      }
    }
    std::vector<PathLetter> letters;
    std::optional<Name> vertex;
    for (; k < pieces.size(); ++k) {
      LpaTermLetter l = parse_lpa_letter(ctx, pieces[k], line);
      if (l.is_vertex) {
        if (vertex || !letters.empty()) {
          fail(line, "a word is a single vertex or a path of edge letters; "
                     "use separate terms or multiplication for products");
        }
        vertex = l.vertex;
      } else {
        if (vertex) {
          fail(line, "a word is a single vertex or a path of edge letters; "
                     "use separate terms or multiplication for products");
        }
        letters.push_back(l.letter);
      }
    }
    try {
      Word w = vertex ? Word::vertex(ctx, *vertex)
                      : Word::path(ctx, std::move(letters));
      out.add(w, coef);
    } catch (const PreconditionError& e) {
      fail(line, "term '" + term + "': " + e.what());
    }
  }
  return out;
}

std::string lpa_element_to_string(const LpaContext& ctx, const LpaElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : x.terms()) {
    Rational a = c;
    if (out.empty()) {
      if (a < Rational(0)) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < Rational(0) ? " - " : " + ";
      if (a < Rational(0)) a = -a;
    }
    out += rational_to_string(a) + " * ";
    if (w.is_vertex()) {
      out += w.source().str();
    } else {
      for (size_t k = 0; k < w.letters().size(); ++k) {
        const auto& l = w.letters()[k];
        const AssociatedEdge& e = ctx.associated_edges()[l.edge];
        if (k) out += " * ";
        out += e.hyperedge.str() + "[" + e.i.to_string() + "][" +
               e.j.to_string() + "]" + (l.starred ? "^" : "");
      }
    }
  }
  return out;
}

std::string certificate_to_string(const EqualityCertificate& cert,
                                  const std::vector<GeneratorId>& order) {
  std::string out = "certificate: " + element_to_string(cert.start, order) +
                    " => " + element_to_string(cert.end, order) + " [" +
                    std::to_string(cert.steps.size()) + " step(s)]\n";
  for (size_t k = 0; k < cert.steps.size(); ++k) {
    const auto& s = cert.steps[k];
    out += "  " + std::to_string(k + 1) + ". " +
           (s.direction == StepDirection::forward ? "forward " : "backward ") +
           s.relation.str() + " @ " + element_to_string(s.context, order) +
           "\n";
  }
  return out;
}

AnchorChoice parse_anchor_spec(const BergmanGraph& g, const std::string& text) {
  const int line = 1;
  AnchorChoice out;
  for (const auto& entry : split_parts(trim(text), line)) {
    auto [label, rest] = split_label(entry, line, "hyperedge label");
    auto [itext, jtext] = split_once(rest, ",", line,
                                     "anchor for '" + label.str() + "'");
    EdgeIndex i = parse_edge_index(itext, line);
    EdgeIndex j = parse_edge_index(jtext, line);
    const Hyperedge* e = g.find_edge(label);
    if (e == nullptr) {
      throw PreconditionError("anchor given for unknown hyperedge '" +
                              label.str() + "'");
    }
    if (e->source.multiplicity(i.vertex) < i.counter) {
      throw PreconditionError("anchor " + i.to_string() +
                              " is not a source index of '" + label.str() +
                              "'");
    }
    if (e->range.multiplicity(j.vertex) < j.counter) {
      throw PreconditionError("anchor " + j.to_string() +
                              " is not a range index of '" + label.str() + "'");
    }
    if (!out.anchors.emplace(label, std::make_pair(i, j)).second) {
      throw PreconditionError("two anchors given for hyperedge '" +
                              label.str() + "'");
    }
  }
  return out;
}

}  // namespace bergman
