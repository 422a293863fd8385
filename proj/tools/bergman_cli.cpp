// Command-line front end: parse .bp/.bg/.dg files, validate, convert,
// run move and Tietze scripts, emit matrix presentations, and compute in
// Leavitt path algebras. Exit codes: 0 success, 1 validation/precondition
// failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bergman/algebra.hpp"
#include "bergman/bergman.hpp"
#include "bergman/io.hpp"
#include "bergman/lpa.hpp"
#include "bergman/moves.hpp"

using namespace bergman;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error("cannot write '" + out_path + "'");
  f << text;
}

enum class InKind { bp, bg, dg };

struct Input {
  InKind kind = InKind::bp;
  BergmanPresentation pres;
  BergmanGraph graph;
  std::optional<Digraph> digraph;
};

Input load(const std::string& path) {
  Input in;
  if (path.ends_with(".bp")) {
    in.kind = InKind::bp;
    in.pres = parse_bp(slurp(path));
    in.graph = pres_to_graph(in.pres);
  } else if (path.ends_with(".bg")) {
    in.kind = InKind::bg;
    in.graph = parse_bg(slurp(path));
    in.pres = graph_to_pres(in.graph);
  } else if (path.ends_with(".dg")) {
    in.kind = InKind::dg;
    in.digraph = parse_dg(slurp(path));
    in.graph = digraph_to_bergman(*in.digraph);
    in.pres = graph_to_pres(in.graph);
  } else {
    throw UsageError("input must end in .bp, .bg or .dg: '" + path + "'");
  }
  return in;
}

std::string ordering_to_string(const std::vector<Name>& o) {
  std::string s = "(";
  for (size_t k = 0; k < o.size(); ++k) {
    if (k) s += ",";
    s += o[k].str();
  }
  return s + ")";
}

// Intermediate presentations echo the input's point of view.
std::string render(const Input& in, const BergmanPresentation& p) {
  if (in.kind == InKind::bp) return serialize_bp(p);
  return serialize_bg(pres_to_graph(p));
}

std::string describe_record(const MoveRecord& rec,
                            const std::vector<GeneratorId>& order) {
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RedShiftMove>) {
          return "redshift " + m.relation.str() + ": " +
                 element_to_string(m.new_lhs, order) + " = " +
                 element_to_string(m.new_rhs, order);
        } else if constexpr (std::is_same_v<T, BlueShiftMove>) {
          return "blueshift " + m.relation.str() + ": " +
                 element_to_string(m.new_lhs, order);
        } else if constexpr (std::is_same_v<T, EnqueueMove>) {
          return "enqueue " + m.relation.str();
        } else if constexpr (std::is_same_v<T, OutsplitMove>) {
          std::string s = "outsplit " + m.relation.str() + " as";
          for (const auto& g : m.new_generators) s += " " + g.str();
          return s;
        } else if constexpr (std::is_same_v<T, LonelyEliminateMove>) {
          return "eliminate " + m.gen.str();
        } else if constexpr (std::is_same_v<T, ExtendMove>) {
          return "extend " + m.gen.str() + " = " +
                 element_to_string(m.rhs, order);
        } else if constexpr (std::is_same_v<T, CollapseMove>) {
          return "collapse " + m.gen.str() + " via " + m.relation.str();
        } else {
          static_assert(std::is_same_v<T, InsplitMove>);
          std::string s = "insplit " + m.gen.str() + " via " +
                          m.relation.str() + " as";
          for (const auto& g : m.new_generators) s += " " + g.str();
          return s;
        }
      },
      rec.params);
}

std::string record_certificates(const MoveRecord& rec,
                                const std::vector<GeneratorId>& order) {
  if (const auto* m = std::get_if<RedShiftMove>(&rec.params)) {
    return certificate_to_string(m->lhs_certificate, order) +
           certificate_to_string(m->rhs_certificate, order);
  }
  if (const auto* m = std::get_if<BlueShiftMove>(&rec.params)) {
    return "ordering: " + ordering_to_string(m->ordering) + "\n" +
           certificate_to_string(m->lhs_certificate, order);
  }
  return "";
}

std::string run_move_script(const Input& in, const std::string& script,
                            long long default_bound) {
  auto cmds = parse_mv(script);
  BergmanPresentation cur = in.pres;
  std::string out;
  int step = 0;
  for (const auto& c : cmds) {
    ++step;
    long long b = c.bound.value_or(default_bound);
    out += "== step " + std::to_string(step) + ": " + c.verb + " " +
           c.name.str() + " ==\n";
    if (c.verb == "redshift") {
      MoveResult r = red_shift(cur, c.name, c.elements[0], c.elements[1],
                               CertificateOrBound{b}, CertificateOrBound{b});
      out += record_certificates(r.record, cur.generators());
      cur = r.output;
    } else if (c.verb == "blueshift") {
      MoveResult r = blue_shift(cur, c.name, c.elements[0],
                                CertificateOrBound{b});
      out += record_certificates(r.record, cur.generators());
      cur = r.output;
    } else if (c.verb == "enqueue") {
      cur = enqueue(cur, c.name).output;
    } else if (c.verb == "outsplit") {
      cur = outsplit(cur, c.name, c.elements, c.new_names).output;
    } else if (c.verb == "eliminate") {
      cur = lonely_eliminate(cur, c.name).output;
    } else if (c.verb == "extend") {
      cur = extend(cur, c.name, c.elements[0]).output;
    } else if (c.verb == "collapse") {
      cur = collapse(cur, c.name, c.via).output;
    } else if (c.verb == "insplit") {
      cur = insplit(cur, c.name, c.via, c.index_parts, c.new_names).output;
    } else if (c.verb == "factor-collapse") {
      MoveSequence seq = factor_collapse(cur, c.name, c.via);
      out += "factors into " + std::to_string(seq.records.size()) +
             " moves:\n";
      auto states = replay(seq);
      for (size_t k = 0; k < seq.records.size(); ++k) {
        out += "  " + std::to_string(k + 1) + ". " +
               describe_record(seq.records[k], states[k].generators()) + "\n";
      }
      cur = states.back();
    } else if (c.verb == "factor-insplit") {
      BergmanPresentation before = cur;
      cur = insplit(cur, c.name, c.via, c.index_parts, c.new_names).output;
      MoveSequence seq =
          factor_insplit(before, c.name, c.via, c.index_parts, c.new_names);
      out += "the inverse factors into " +
             std::to_string(seq.records.size()) + " moves:\n";
      auto states = replay(seq);
      for (size_t k = 0; k < seq.records.size(); ++k) {
        out += "  " + std::to_string(k + 1) + ". " +
               describe_record(seq.records[k], states[k].generators()) + "\n";
      }
    } else if (c.verb == "factor-redshift") {
      MoveResult r = red_shift(cur, c.name, c.elements[0], c.elements[1],
                               CertificateOrBound{b}, CertificateOrBound{b});
      TietzeFactoring tf = tietze_factor_red_shift(
          cur, std::get<RedShiftMove>(r.record.params));
      out += "factors through Tietze moves:\n";
      out += "  1. add relation '" + tf.added_label.str() + "': " +
             element_to_string(tf.add.lhs, cur.generators()) + " = " +
             element_to_string(tf.add.rhs, cur.generators()) + "\n";
      out += certificate_to_string(
          std::get<EqualityCertificate>(tf.add.justification),
          cur.generators());
      out += "  2. remove relation '" + c.name.str() + "'\n";
      out += certificate_to_string(
          std::get<EqualityCertificate>(tf.remove.justification),
          cur.generators());
      cur = r.output;
    } else {
      throw UsageError("unknown move verb '" + c.verb + "'");
    }
    out += render(in, cur);
  }
  return out;
}

std::string tietze_kind(const TietzeStep& step) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TietzeAddGenerator>) {
          return "addgen " + s.gen.str();
        } else if constexpr (std::is_same_v<T, TietzeRemoveGenerator>) {
          return "removegen " + s.gen.str();
        } else if constexpr (std::is_same_v<T, TietzeAddRelation>) {
          return "addrel " + s.label.str();
        } else {
          static_assert(std::is_same_v<T, TietzeRemoveRelation>);
          return "removerel " + s.label.str();
        }
      },
      step);
}

struct Opts {
  std::string file;
  std::string out;
  std::string format = "bp";
  std::string script;
  std::string a, b;
  std::string expr;
  std::string vertex;
  std::string anchors;
  std::string spec;
  long long bound = 16;
  int length = 4;
};

std::optional<AnchorChoice> anchors_for(const Input& in, const Opts& o) {
  if (o.anchors.empty()) return std::nullopt;
  return parse_anchor_spec(in.graph, o.anchors);
}

void cmd_validate(const Opts& o) {
  Input in = load(o.file);
  if (in.kind == InKind::dg) {
    std::cout << "valid digraph (" << in.digraph->vertices().size()
              << " vertices, " << in.digraph->edges().size() << " edges)\n";
    return;
  }
  ValidationReport report = in.pres.validate();
  if (!report.ok()) {
    std::cout << report.to_string();
    throw ValidationError("invalid " +
                          std::string(in.kind == InKind::bp ? "presentation"
                                                            : "graph"));
  }
  if (in.pres.is_basic()) {
    std::cout << "valid; basic (no blue relations)\n";
    return;
  }
  std::string line = "valid; admissible orderings: ";
  auto all = admissible_orderings(in.pres);
  for (size_t k = 0; k < all.size(); ++k) {
    if (k) line += ", ";
    line += ordering_to_string(all[k]);
  }
  std::cout << line << "\n";
}

void cmd_convert(const Opts& o) {
  Input in = load(o.file);
  if (o.format == "bp") {
    emit(serialize_bp(in.pres), o.out);
  } else if (o.format == "bg") {
    emit(serialize_bg(in.graph), o.out);
  } else if (o.format == "dot") {
    in.pres.require_valid("dot export");
    emit(to_dot(in.graph), o.out);
  } else if (o.format == "alg") {
    emit(algebra_to_string(build_algebra_presentation(in.pres)), o.out);
  } else {
    throw UsageError("unknown format '" + o.format + "'");
  }
}

void cmd_orderings(const Opts& o) {
  Input in = load(o.file);
  in.pres.require_valid("orderings");
  for (const auto& ord : admissible_orderings(in.pres)) {
    std::cout << ordering_to_string(ord) << "\n";
  }
}

void cmd_vmonoid(const Opts& o) {
  Input in = load(o.file);
  std::cout << monoid_to_string(vmonoid_presentation(in.graph)) << "\n";
}

void cmd_meq(const Opts& o) {
  Input in = load(o.file);
  MonoidPresentation m = in.pres.underlying_monoid();
  FreeAbelianElement a = parse_element(o.a);
  FreeAbelianElement b = parse_element(o.b);
  CongruenceResult r = congruence_equal(m, a, b, o.bound);
  if (r.equal()) {
    std::cout << "EQUAL [bound " << r.bound_used << "]\n"
              << certificate_to_string(*r.certificate, m.generators());
  } else if (lattice_refutes(m, a, b)) {
    std::cout << "NOT EQUAL (refuted: the difference lies outside the "
                 "relation lattice)\n";
  } else {
    std::cout << "UNKNOWN at bound " << r.bound_used
              << " (not decided; try a larger --bound)\n";
  }
}

void cmd_tietze(const Opts& o) {
  Input in = load(o.file);
  MonoidPresentation cur = in.pres.underlying_monoid();
  auto cmds = parse_tietze_script(slurp(o.script), o.bound);
  int step = 0;
  for (const auto& c : cmds) {
    ++step;
    cur = apply_tietze(cur, c.step);
    std::cout << "== step " << step << ": " << tietze_kind(c.step) << " ==\n"
              << monoid_to_string(cur) << "\n";
  }
}

void cmd_move(const Opts& o) {
  Input in = load(o.file);
  emit(run_move_script(in, slurp(o.script), o.bound), o.out);
}

void cmd_factor(const Opts& o, const std::string& kind) {
  Input in = load(o.file);
  std::string line = "factor-" + kind + " " + o.spec;
  emit(run_move_script(in, line, o.bound), o.out);
}

void cmd_algebra(const Opts& o) {
  Input in = load(o.file);
  emit(algebra_to_string(build_algebra_presentation(in.pres)), o.out);
}

void cmd_dot(const Opts& o) {
  Input in = load(o.file);
  in.pres.require_valid("dot export");
  emit(to_dot(in.graph), o.out);
}

void cmd_lpa_reduce(const Opts& o) {
  Input in = load(o.file);
  LpaContext ctx(in.graph, anchors_for(in, o));
  LpaElement x = parse_lpa_element(ctx, o.expr);
  std::cout << lpa_element_to_string(ctx, reduce(ctx, x)) << "\n";
}

void cmd_lpa_mul(const Opts& o) {
  Input in = load(o.file);
  LpaContext ctx(in.graph, anchors_for(in, o));
  LpaElement a = parse_lpa_element(ctx, o.a);
  LpaElement b = parse_lpa_element(ctx, o.b);
  std::cout << lpa_element_to_string(ctx, multiply(ctx, a, b)) << "\n";
}

void cmd_lpa_check(const Opts& o) {
  Input in = load(o.file);
  LpaContext ctx(in.graph, anchors_for(in, o));
  auto residues = check_defining_relations(ctx);
  if (residues.empty()) {
    std::cout << "all defining relations reduce to zero\n";
    return;
  }
  for (const auto& r : residues) {
    std::cout << r.instance << ": residue "
              << lpa_element_to_string(ctx, r.residue) << "\n";
  }
  throw ValidationError("defining relations have non-zero residues");
}

void cmd_lpa_corner(const Opts& o) {
  Input in = load(o.file);
  CornerReport report = lonely_corner_certify(in.graph, Name(o.vertex),
                                              o.length, anchors_for(in, o));
  std::cout << "corner certificate at '" << o.vertex << "' (length <= "
            << o.length << "): injective=" << (report.injective ? "yes" : "no")
            << " corner=" << (report.corner_clean ? "yes" : "no")
            << " full=" << (report.full ? "yes" : "no") << "\n";
  for (const auto& f : report.failures) std::cout << "  " << f << "\n";
  if (!report.ok()) throw ValidationError("corner certification failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman presentations and graphs: validation, moves, matrix "
               "presentations, Leavitt path algebra computations"};
  app.require_subcommand(1);
  Opts o;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, ".bp, .bg or .dg input")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write output to a file instead of stdout");
  };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "congruence search degree bound")
        ->check(CLI::PositiveNumber);
  };
  auto add_anchors = [&](CLI::App* sub) {
    sub->add_option("--anchors", o.anchors,
                    "anchor spec, e.g. 'h:u.1,v.2;k:w.1,w.1'");
  };

  auto* validate = app.add_subcommand("validate", "check a structure");
  add_file(validate);
  validate->callback([&] { cmd_validate(o); });

  auto* convert = app.add_subcommand("convert", "convert between formats");
  add_file(convert);
  convert->add_option("--format", o.format, "bp|bg|dot|alg")
      ->check(CLI::IsMember({"bp", "bg", "dot", "alg"}));
  add_out(convert);
  convert->callback([&] { cmd_convert(o); });

  auto* orderings =
      app.add_subcommand("orderings", "admissible orderings, one per line");
  add_file(orderings);
  orderings->callback([&] { cmd_orderings(o); });

  auto* vmonoid = app.add_subcommand("vmonoid", "graph monoid presentation");
  add_file(vmonoid);
  vmonoid->callback([&] { cmd_vmonoid(o); });

  auto* meq = app.add_subcommand(
      "meq", "decide element equality in the underlying monoid");
  add_file(meq);
  meq->add_option("a", o.a, "left element, e.g. 'u + v'")->required();
  meq->add_option("b", o.b, "right element")->required();
  add_bound(meq);
  meq->callback([&] { cmd_meq(o); });

  auto* tietze = app.add_subcommand("tietze", "run a Tietze script");
  add_file(tietze);
  tietze->add_option("script", o.script, "script file")->required();
  add_bound(tietze);
  tietze->callback([&] { cmd_tietze(o); });

  auto* move = app.add_subcommand("move", "run a move script (.mv)");
  add_file(move);
  move->add_option("script", o.script, "script file")->required();
  add_bound(move);
  add_out(move);
  move->callback([&] { cmd_move(o); });

  auto* factor =
      app.add_subcommand("factor", "factor a move into elementary moves");
  factor->require_subcommand(1);
  for (const char* kind : {"collapse", "insplit", "redshift"}) {
    auto* sub = factor->add_subcommand(
        kind, std::string("factor a ") + kind + " move");
    add_file(sub);
    sub->add_option("spec", o.spec,
                    "move arguments, script syntax without the verb, e.g. "
                    "'x via r3' or 'h: v = u'")
        ->required();
    add_bound(sub);
    add_out(sub);
    sub->callback([&o, kind] { cmd_factor(o, kind); });
  }

  auto* algebra = app.add_subcommand(
      "algebra", "matrix presentation of the Bergman algebra");
  add_file(algebra);
  add_out(algebra);
  algebra->callback([&] { cmd_algebra(o); });

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  add_file(dot);
  add_out(dot);
  dot->callback([&] { cmd_dot(o); });

  auto* lpa = app.add_subcommand(
      "lpa", "Leavitt path algebra of a hypergraph (colours ignored)");
  lpa->require_subcommand(1);

  auto* reduce_cmd = lpa->add_subcommand("reduce", "normal form of an element");
  add_file(reduce_cmd);
  reduce_cmd->add_option("expr", o.expr, "element expression")->required();
  add_anchors(reduce_cmd);
  reduce_cmd->callback([&] { cmd_lpa_reduce(o); });

  auto* mul = lpa->add_subcommand("mul", "product of two elements");
  add_file(mul);
  mul->add_option("a", o.a, "left element")->required();
  mul->add_option("b", o.b, "right element")->required();
  add_anchors(mul);
  mul->callback([&] { cmd_lpa_mul(o); });

  auto* check = lpa->add_subcommand("check", "verify the defining relations");
  add_file(check);
  add_anchors(check);
  check->callback([&] { cmd_lpa_check(o); });

  auto* corner = lpa->add_subcommand(
      "corner", "finite certificate for a lonely-vertex corner");
  add_file(corner);
  corner->add_option("vertex", o.vertex, "the lonely vertex")->required();
  corner->add_option("--length", o.length, "maximum basis word length")
      ->check(CLI::PositiveNumber);
  add_anchors(corner);
  corner->callback([&] { cmd_lpa_corner(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
