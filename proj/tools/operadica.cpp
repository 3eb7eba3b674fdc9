#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "operadica/collections/families.hpp"
#include "operadica/operads/presentation.hpp"
#include "operadica/posets/poset.hpp"
#include "operadica/rewriting/generic.hpp"
#include "operadica/rewriting/rules_io.hpp"
#include "operadica/series/fixpoint.hpp"
#include "operadica/zoo/zoo.hpp"

using namespace operadica;

namespace {

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::size_t trunc = kDefaultOrder;
};

struct Report {
  Json json = Json::object();
  std::string text;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

Json series_json(const PowerSeries& s) {
  Json a = Json::array();
  for (const auto& c : s.coefficients()) a.push_back(c.get_str());
  return a;
}

std::string series_text(const PowerSeries& s) {
  std::vector<std::string> xs;
  for (const auto& c : s.coefficients()) xs.push_back(c.get_str());
  return join(xs, " ");
}

GradedCollection cli_family(const std::string& name, long long param, const std::string& letters) {
  std::string n = normalize_family_name(name);
  if (n == "dyck_paths") return dyck_paths();
  if (n == "motzkin_paths") return motzkin_paths();
  if (n == "schroder_paths") return schroder_paths();
  if (n == "fibonacci_paths") return fibonacci_paths();
  if (n == "nct" || n == "noncrossing_trees") return noncrossing_trees();
  std::vector<std::string> alphabet;
  for (char c : letters) alphabet.emplace_back(1, c);
  return family(name, param, alphabet);
}

// ---- collections

Report cmd_enumerate(const std::string& fam, long long param, const std::string& letters, std::size_t size) {
  auto c = cli_family(fam, param, letters);
  Report r;
  const auto& xs = c.enumerate_ref(size);
  Json objs = Json::array();
  for (const auto& x : xs) {
    objs.push_back(x.str());
    r.text += x.str() + "\n";
  }
  r.json = {{"family", c.name()}, {"size", size}, {"count", xs.size()}, {"objects", objs}};
  r.text += std::to_string(xs.size()) + " objects of size " + std::to_string(size) + "\n";
  return r;
}

Report cmd_gens(const std::string& fam, long long param, const std::string& letters, std::size_t N) {
  auto c = cli_family(fam, param, letters);
  auto s = c.generating_series(N);
  Report r;
  r.json = {{"family", c.name()}, {"order", N}, {"coefficients", series_json(s)}};
  r.text = series_text(s) + "\n";
  return r;
}

// ---- operads

// Bud elements are written "a/x/u": output color, element of the inner operad, input colors.
Obj parse_bud_element(const std::string& name, const Operad& inner, const std::string& text) {
  auto s1 = text.find('/'), s2 = text.rfind('/');
  if (s1 == std::string::npos || s1 == s2) throw std::invalid_argument("expected a bud element a/x/u, got '" + text + "'");
  Obj x = parse_element(name, text.substr(s1 + 1, s2 - s1 - 1), inner);
  Obj::List u;
  for (long long c : detail::digit_word(text.substr(s2 + 1))) u.push_back(Obj::integer(c));
  return Obj::tagged("col", Obj::integer(std::stoll(text.substr(0, s1))), x, Obj::list(std::move(u)));
}

std::string bud_text(const std::string& name, const Obj& b) {
  std::string u;
  for (const auto& c : b[3].items()) u += c.str();
  return b[1].str() + "/" + element_text(name, b[2]) + "/" + u;
}

Report cmd_compose(const std::string& name, const std::string& xs, std::size_t i, const std::string& ys) {
  auto op = operad_by_name(name);
  Obj x = parse_element(name, xs, op), y = parse_element(name, ys, op);
  Obj z = op.compose_object(x, i, y);
  Report r;
  r.json = {{"operad", name}, {"x", x.str()}, {"i", i}, {"y", y.str()}, {"result", z.str()}, {"text", element_text(name, z)}};
  r.text = element_text(name, z) + "\n";
  return r;
}

Report cmd_bud(const std::string& name, long long colors, const std::string& xs, std::size_t i, const std::string& ys) {
  auto inner = operad_by_name(name);
  auto op = bud_operad(inner, colors);
  Obj x = parse_bud_element(name, inner, xs), y = parse_bud_element(name, inner, ys);
  op.arity(x);
  op.arity(y);
  Obj z = op.compose_object(x, i, y);
  Report r;
  r.json = {{"operad", op.name()}, {"x", x.str()}, {"i", i}, {"y", y.str()}, {"result", z.str()}, {"text", bud_text(name, z)}};
  r.text = bud_text(name, z) + "\n";
  return r;
}

Report cmd_hilbert(const std::string& name, std::size_t N) {
  auto s = hilbert(operad_by_name(name), N);
  Report r;
  r.json = {{"operad", name}, {"order", N}, {"coefficients", series_json(s)}};
  r.text = series_text(s) + "\n";
  return r;
}

Presentation presentation_for(const std::string& name, const std::string& file) {
  if (!file.empty()) return load_presentation(file);
  if (name.empty()) throw std::invalid_argument("give --operad or --file");
  return presentation_of(name);
}

Report cmd_koszul(const std::string& name, const std::string& file) {
  auto p = presentation_for(name, file);
  auto d = koszul_dual(p);
  d.relations = canonical_relations(d);
  Report r;
  r.json = presentation_to_json(d);
  r.text = d.name + " relations:\n";
  for (const auto& rel : d.relations) r.text += "  " + tree_poly_str(rel) + "\n";
  return r;
}

Report cmd_verify(const std::string& name, const std::string& file, std::size_t N) {
  auto p = presentation_for(name, file);
  auto v = verify_presentation(operad_by_name(name), p, N);
  Report r;
  r.json = {{"operad", name}, {"arity", N}, {"ok", v.ok}, {"clause", v.clause}, {"message", v.message},
            {"dims", v.dims}, {"normal_forms", v.normal_forms}};
  std::vector<std::string> dims, nfs;
  for (auto d : v.dims) dims.push_back(std::to_string(d));
  for (auto d : v.normal_forms) nfs.push_back(std::to_string(d));
  r.text = name + ": " + (v.ok ? "presentation verified up to arity " + std::to_string(N) : "fails (" + v.clause + "): " + v.message) +
           "\n  dims: " + join(dims, " ") + "\n  normal forms: " + join(nfs, " ") + "\n";
  return r;
}

Report cmd_axioms(const std::string& name, std::size_t N, std::size_t samples, std::size_t sample_arity, std::uint64_t seed) {
  auto op = operad_by_name(name);
  auto v = check_axioms(op, N, samples, sample_arity, seed);
  Report r;
  r.json = {{"operad", name}, {"ok", v.ok}, {"law", v.law}, {"message", v.message}, {"checks", v.checks}};
  r.text = name + ": " + (v.ok ? "axioms hold" : "fails " + v.law + ": " + v.message) + " (" + std::to_string(v.checks) + " checks)\n";
  return r;
}

// ---- rewriting

struct RewriteInput {
  std::string file;
  std::vector<std::string> rules;  // word rules "aba=bab"
  std::string alphabet = "ab";
};

ObjRewriteSystem word_system(const RewriteInput& in) {
  std::vector<std::pair<std::string, std::string>> rs;
  for (const auto& s : in.rules) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("word rule '" + s + "' should look like aba=bab");
    rs.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  std::vector<std::string> alphabet;
  for (char c : in.alphabet) alphabet.emplace_back(1, c);
  return word_rewrite_system(rs, alphabet);
}

TreeRewriteSystem tree_system(const RewriteInput& in) { return rule_system_from_json(read_json_file(in.file)); }

bool use_words(const RewriteInput& in) {
  if (in.file.empty() == in.rules.empty()) throw CLI::ValidationError("give exactly one of --file or --rule");
  return !in.rules.empty();
}

Report cmd_rw_normal_form(const RewriteInput& in, const std::string& input) {
  Report r;
  Json nfs = Json::array();
  std::vector<std::string> texts;
  if (use_words(in)) {
    for (const auto& nf : word_system(in).reachable_normal_forms(word_obj(input))) texts.push_back(word_str(nf));
  } else {
    for (const auto& nf : tree_system(in).distinct_normal_forms(Tree::parse(input))) texts.push_back(tree_poly_str(nf));
  }
  for (const auto& t : texts) nfs.push_back(t);
  r.json = {{"input", input}, {"unique", texts.size() == 1}, {"normal_forms", nfs}};
  r.text = (texts.size() == 1 ? "normal form: " : "normal forms: ") + join(texts, ", ") + "\n";
  return r;
}

template <typename X>
Json cycle_json(const std::vector<X>& cyc, const std::function<std::string(const X&)>& show) {
  Json a = Json::array();
  for (const auto& x : cyc) a.push_back(show(x));
  return a;
}

Report cmd_rw_termination(const RewriteInput& in, std::size_t bound) {
  Report r;
  if (use_words(in)) {
    auto v = word_system(in).check_termination(bound);
    auto cyc = cycle_json<Obj>(v.cycle, word_str);
    r.json = {{"terminating", v.terminating}, {"bound", v.bound}, {"unconditional", v.unconditional}, {"reason", v.reason}, {"cycle", cyc}};
  } else {
    auto v = tree_system(in).certify_termination(bound);
    auto cyc = cycle_json<Tree>(v.cycle, [](const Tree& t) { return t.str(); });
    r.json = {{"terminating", v.terminating}, {"bound", v.bound}, {"unconditional", v.unconditional}, {"reason", v.reason}, {"cycle", cyc}};
  }
  r.text = std::string(r.json["terminating"].get<bool>() ? "terminating" : "not terminating") + ": " +
           r.json["reason"].get<std::string>() + "\n";
  if (!r.json["cycle"].empty()) {
    std::vector<std::string> c;
    for (const auto& x : r.json["cycle"]) c.push_back(x.get<std::string>());
    r.text += "cycle: " + join(c, " -> ") + "\n";
  }
  return r;
}

Report cmd_rw_confluence(const RewriteInput& in, std::size_t bound, unsigned jobs) {
  Report r;
  if (use_words(in)) {
    auto v = word_system(in).check_confluence(bound);
    Json nfs = Json::array();
    for (const auto& nf : v.normal_forms) nfs.push_back(word_str(nf));
    r.json = {{"confluent", v.confluent}, {"method", v.method}, {"witness", v.witness ? Json(word_str(*v.witness)) : Json()},
              {"normal_forms", nfs}};
  } else {
    auto rep = certify_convergence(tree_system(in), jobs);
    if (!rep.termination.terminating) throw std::domain_error("confluence needs termination: " + rep.termination.reason);
    const auto& v = *rep.confluence;
    Json nfs = Json::array();
    for (const auto& nf : v.normal_forms) nfs.push_back(tree_poly_str(nf));
    r.json = {{"confluent", v.confluent}, {"method", v.method}, {"witness", v.witness ? Json(v.witness->str()) : Json()},
              {"witness_degree", v.witness ? Json(v.witness->degree()) : Json()}, {"normal_forms", nfs},
              {"termination", rep.termination.reason}};
  }
  if (r.json["confluent"].get<bool>()) {
    r.text = "confluent: " + r.json["method"].get<std::string>() + "\n";
  } else {
    std::vector<std::string> nfs;
    for (const auto& x : r.json["normal_forms"]) nfs.push_back("{" + x.get<std::string>() + "}");
    r.text = "not confluent: " + r.json["witness"].get<std::string>() + " has normal forms " + join(nfs, " ") + "\n";
  }
  return r;
}

Report cmd_rw_graph(const RewriteInput& in, const std::string& input) {
  Report r;
  r.text = use_words(in) ? word_system(in).graph_dot(word_obj(input)) : tree_system(in).graph_dot(Tree::parse(input));
  r.json = {{"input", input}, {"dot", r.text}};
  return r;
}

// ---- posets

Report cmd_mobius(const std::string& name, std::size_t n) {
  auto p = builtin_poset(name);
  auto mu = mobius(p, n);
  Report r;
  Json vals = Json::array();
  for (const auto& [pr, c] : mu.f) {
    vals.push_back({{"x", pr.first.str()}, {"y", pr.second.str()}, {"mu", c.get_str()}});
    r.text += pr.first.str() + " " + pr.second.str() + " " + c.get_str() + "\n";
  }
  r.json = {{"poset", p.name()}, {"size", n}, {"elements", p.elements(n).size()}, {"covers", p.covers(n).size()}, {"mobius", vals}};
  r.text = std::to_string(p.elements(n).size()) + " elements, " + std::to_string(p.covers(n).size()) + " covers\n" + r.text;
  return r;
}

Json dense(const RationalMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.rows) {
    Json out = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) {
      auto it = row.find(j);
      out.push_back(it == row.end() ? "0" : it->second.get_str());
    }
    rows.push_back(out);
  }
  return rows;
}

Report cmd_basis(const std::string& name, std::size_t n) {
  auto p = builtin_poset(name);
  auto bc = basis_change_matrix(p, n);
  Report r;
  Json order = Json::array();
  for (const auto& x : bc.order) order.push_back(x.str());
  Json fwd = dense(bc.forward), inv = dense(bc.inverse);
  r.json = {{"poset", p.name()}, {"size", n}, {"order", order}, {"forward", fwd}, {"inverse", inv}};
  for (std::size_t k = 0; k < bc.order.size(); ++k) r.text += std::to_string(k) + ": " + bc.order[k].str() + "\n";
  auto show = [&](const std::string& title, const Json& m) {
    r.text += title + ":\n";
    for (const auto& row : m) {
      std::vector<std::string> cells;
      for (const auto& c : row) cells.push_back(c.get<std::string>());
      r.text += "  " + join(cells, " ") + "\n";
    }
  };
  show("forward", fwd);
  show("inverse", inv);
  return r;
}

// ---- series

Report cmd_series_solve(const std::string& preset, std::size_t N, const std::string& route) {
  auto pre = fixpoint_preset(preset);
  PowerSeries s(N);
  if (route == "counts") s = solve_fixpoint_counts(pre.system, N)[0];
  else s = ev_size(solve_fixpoint(pre.system, N).series[0], N);
  Report r;
  r.json = {{"preset", preset}, {"order", N}, {"route", route}, {"coefficients", series_json(s)}};
  r.text = series_text(s) + "\n";
  return r;
}

Report cmd_series_coeffs(const std::string& preset, std::size_t size) {
  auto pre = fixpoint_preset(preset);
  auto sol = solve_fixpoint(pre.system, size);
  Report r;
  Json terms = Json::array();
  for (const auto& [x, c] : sol.series[0].at(size)) {
    terms.push_back({{"object", x.str()}, {"coefficient", c.get_str()}});
    r.text += c.get_str() + " " + x.str() + "\n";
  }
  r.json = {{"preset", preset}, {"size", size}, {"iterations", sol.iterations}, {"terms", terms}};
  return r;
}

std::size_t env_trunc() {
  const char* v = std::getenv("OPERADICA_TRUNC");
  if (!v || !*v) return kDefaultOrder;
  std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 4)
    throw CLI::ValidationError("OPERADICA_TRUNC must be a natural number, got '" + s + "'");
  return static_cast<std::size_t>(std::stoul(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operadica: combinatorial operads, rewriting, posets and series"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  app.add_option("--jobs", opt.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));

  std::function<Report()> run;
  std::optional<std::size_t> N_flag;

  std::string fam, letters = "ab";
  long long param = 3;
  std::size_t size = 0;
  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", fam, "Family name")->required();
    c->add_option("--param", param, "k for kary_trees");
    c->add_option("--letters", letters, "Alphabet for words");
  };
  auto* en = app.add_subcommand("enumerate", "Objects of one size");
  add_family(en);
  en->add_option("--size,-n", size)->required();
  en->callback([&] { run = [&] { return cmd_enumerate(fam, param, letters, size); }; });

  auto* gens = app.add_subcommand("gens", "Generating series");
  add_family(gens);
  gens->add_option("-N,--order", N_flag);
  gens->callback([&] { run = [&] { return cmd_gens(fam, param, letters, N_flag.value_or(opt.trunc)); }; });

  std::string opname, xs, ys, file;
  std::size_t index = 1;
  long long colors = 2;
  auto add_compose = [&](CLI::App* c, const char* names = "--operad,--name") {
    c->add_option(names, opname)->required();
    c->add_option("-x,--x", xs)->required();
    c->add_option("-i,--i,--index", index)->required();
    c->add_option("-y,--y", ys)->required();
  };
  auto* top_compose = app.add_subcommand("compose", "Partial composition x o_i y");
  add_compose(top_compose);
  top_compose->callback([&] { run = [&] { return cmd_compose(opname, xs, index, ys); }; });

  auto* op = app.add_subcommand("op", "Operads")->require_subcommand(1);
  auto* op_compose = op->add_subcommand("compose", "Partial composition x o_i y");
  add_compose(op_compose);
  op_compose->callback([&] { run = [&] { return cmd_compose(opname, xs, index, ys); }; });
  auto* op_hilbert = op->add_subcommand("hilbert", "Hilbert series");
  op_hilbert->add_option("--operad,--name", opname)->required();
  op_hilbert->add_option("-N,--order", N_flag);
  op_hilbert->callback([&] { run = [&] { return cmd_hilbert(opname, N_flag.value_or(opt.trunc)); }; });
  auto* op_dual = op->add_subcommand("koszul-dual", "Koszul dual of a binary quadratic presentation");
  op_dual->add_option("--operad,--name", opname);
  op_dual->add_option("--file", file)->check(CLI::ExistingFile);
  op_dual->callback([&] { run = [&] { return cmd_koszul(opname, file); }; });
  auto* op_verify = op->add_subcommand("verify", "Check a presentation against its operad");
  op_verify->add_option("--operad,--name", opname)->required();
  op_verify->add_option("--file,--presentation", file)->check(CLI::ExistingFile);
  op_verify->add_option("-N,--arity", N_flag);
  op_verify->callback([&] { run = [&] { return cmd_verify(opname, file, N_flag.value_or(7)); }; });
  auto* op_bud = op->add_subcommand("bud", "Composition in the bud operad; elements are color/x/colors");
  add_compose(op_bud, "--operad,--name,--base");
  op_bud->add_option("--colors", colors);
  op_bud->callback([&] { run = [&] { return cmd_bud(opname, colors, xs, index, ys); }; });
  std::size_t samples = 0, sample_arity = 7;
  auto* op_axioms = op->add_subcommand("axioms", "Check the operad laws");
  op_axioms->add_option("--operad,--name", opname)->required();
  op_axioms->add_option("-N,--arity", N_flag);
  op_axioms->add_option("--samples", samples);
  op_axioms->add_option("--sample-arity", sample_arity);
  op_axioms->callback([&] { run = [&] { return cmd_axioms(opname, N_flag.value_or(4), samples, sample_arity, opt.seed); }; });

  RewriteInput rin;
  std::string input;
  auto* rw = app.add_subcommand("rw", "Rewrite systems")->require_subcommand(1);
  auto add_system = [&](CLI::App* c) {
    c->add_option("--file", rin.file, "Tree rule system (JSON)")->check(CLI::ExistingFile);
    c->add_option("--rule", rin.rules, "Word rule such as aba=bab");
    c->add_option("--alphabet", rin.alphabet);
  };
  auto* rw_nf = rw->add_subcommand("normal-form", "Normal forms of a tree or word");
  add_system(rw_nf);
  rw_nf->add_option("input", input)->required();
  rw_nf->callback([&] { run = [&] { return cmd_rw_normal_form(rin, input); }; });
  auto* rw_term = rw->add_subcommand("check-termination", "Termination up to a size bound");
  add_system(rw_term);
  rw_term->add_option("--bound", N_flag);
  rw_term->callback([&] { run = [&] { return cmd_rw_termination(rin, N_flag.value_or(opt.trunc)); }; });
  auto* rw_conf = rw->add_subcommand("check-confluence", "Confluence verdict with a witness");
  add_system(rw_conf);
  rw_conf->add_option("--bound", N_flag);
  rw_conf->callback([&] { run = [&] { return cmd_rw_confluence(rin, N_flag.value_or(opt.trunc), opt.jobs); }; });
  auto* rw_graph = rw->add_subcommand("graph", "Rewriting graph in DOT");
  add_system(rw_graph);
  rw_graph->add_option("input", input)->required();
  rw_graph->callback([&] { run = [&] { return cmd_rw_graph(rin, input); }; });

  std::string poset;
  auto* ps = app.add_subcommand("poset", "Posets")->require_subcommand(1);
  auto* ps_mu = ps->add_subcommand("mobius", "Nonzero Mobius values");
  ps_mu->add_option("--poset", poset)->required();
  ps_mu->add_option("-n,--size", size)->required();
  ps_mu->callback([&] { run = [&] { return cmd_mobius(poset, size); }; });
  auto* ps_basis = ps->add_subcommand("basis", "Change of basis to the order basis and back");
  ps_basis->add_option("--poset", poset)->required();
  ps_basis->add_option("-n,--size", size)->required();
  ps_basis->callback([&] { run = [&] { return cmd_basis(poset, size); }; });

  std::string preset, route = "counts";
  auto* se = app.add_subcommand("series", "Series")->require_subcommand(1);
  auto* se_solve = se->add_subcommand("solve", "Solve a preset equation; prints the size evaluation");
  se_solve->add_option("--preset", preset)->required()->check(CLI::IsMember(fixpoint_preset_names()));
  se_solve->add_option("-N,--order", N_flag);
  se_solve->add_option("--route", route)->check(CLI::IsMember({"counts", "objects"}));
  se_solve->callback([&] { run = [&] { return cmd_series_solve(preset, N_flag.value_or(opt.trunc), route); }; });
  auto* se_coeffs = se->add_subcommand("coeffs", "Terms of a preset solution at one size");
  se_coeffs->add_option("--preset", preset)->required()->check(CLI::IsMember(fixpoint_preset_names()));
  se_coeffs->add_option("-n,--size", size)->required();
  se_coeffs->callback([&] { run = [&] { return cmd_series_coeffs(preset, size); }; });

  try {
    opt.trunc = env_trunc();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    Report r = run();
    if (opt.format == "json") std::cout << r.json.dump(2) << "\n";
    else std::cout << r.text;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
