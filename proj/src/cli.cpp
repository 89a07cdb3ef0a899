#include "species/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <sstream>

#include "species/automata.hpp"
#include "species/diffeq.hpp"
#include "species/parse.hpp"
#include "species/transforms.hpp"

namespace species::cli {

using json = nlohmann::json;

namespace {

struct Options {
  unsigned upto = 5;
  bool json_out = false;
  unsigned max_iter = 0;
  std::size_t limit = 0;
  std::uint64_t seed = 0;
  bool moore = false;
  std::string dyn = "adjL";
  std::string op;
  std::string mu = "concat";
  std::string family;
};

struct Output {
  json inputs = json::object();
  json result;
  std::ostringstream text;
};

json nat_array(const CountSeq &c) {
  json a = json::array();
  for (const auto &x : c.coeffs)
    a.push_back(x.get_str());
  return a;
}

json opt_num(const std::optional<unsigned> &x) { return x ? json(*x) : json(nullptr); }

std::string join_nat(const std::vector<Natural> &xs, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? sep : "") + xs[i].get_str();
  return s;
}

Expr expr_arg(Output &o, const char *key, const std::string &text) {
  o.inputs[key] = text;
  return parse_expr(text);
}

void coeffs(Output &o, const Options &opt, const std::string &e) {
  auto c = count_seq(expr_arg(o, "expr", e), opt.upto);
  o.result = {{"coefficients", nat_array(c)}};
  o.text << to_string(c) << '\n';
}

void egf_cmd(Output &o, const Options &opt, const std::string &e) {
  auto g = egf(expr_arg(o, "expr", e), opt.upto);
  json a = json::array();
  for (const auto &q : g.coeffs)
    a.push_back(q.get_str());
  o.result = {{"coefficients", a}};
  o.text << to_string(g) << '\n';
}

std::size_t cap(const Options &opt) { return opt.limit ? opt.limit : default_enumeration_cap; }

void enumerate_cmd(Output &o, const Options &opt, const std::string &e, unsigned n) {
  Expr x = expr_arg(o, "expr", e);
  o.inputs["degree"] = n;
  auto d = enumerate(x, n, cap(opt));
  json list = json::array();
  o.text << "degree " << n << ": " << d->size() << " structures\n";
  for (const auto &s : *d->structures) {
    list.push_back(to_string(s));
    o.text << to_string(s) << '\n';
  }
  o.result = {{"degree", n}, {"count", d->size()}, {"structures", list}};
}

void orbits_cmd(Output &o, const Options &opt, const std::string &e, unsigned n) {
  Expr x = expr_arg(o, "expr", e);
  o.inputs["degree"] = n;
  auto d = enumerate(x, n, cap(opt));
  auto orbs = orbits(d->action);
  json list = json::array();
  o.text << "degree " << n << ": " << orbs.size() << " orbits\n";
  for (const auto &orb : orbs) {
    auto h = stabilizer(d->action, orb.representative);
    std::string rep = to_string((*d)[orb.representative]);
    list.push_back({{"size", orb.points.size()}, {"stabilizer_order", h.order()},
                    {"representative", rep}});
    o.text << "size " << orb.points.size() << ", stabilizer order " << h.order() << ": " << rep
           << '\n';
  }
  o.result = {{"degree", n}, {"orbits", list}};
}

void iso_cmd(Output &o, const Options &opt, const std::string &f, const std::string &g) {
  Expr a = expr_arg(o, "left", f), b = expr_arg(o, "right", g);
  auto r = iso_check(a, b, opt.upto, cap(opt));
  o.result = {{"isomorphic", r.isomorphic}, {"witness", opt_num(r.witness)}};
  o.text << "isomorphic up to degree " << opt.upto << ": " << (r.isomorphic ? "true" : "false")
         << '\n';
  if (!r.isomorphic) {
    o.result["left"] = describe(r.left);
    o.result["right"] = describe(r.right);
    o.text << "differs at degree " << *r.witness << "\nleft:  " << describe(r.left)
           << "\nright: " << describe(r.right) << '\n';
  }
}

void natcount_cmd(Output &o, const Options &opt, const std::string &f, const std::string &g) {
  Expr a = expr_arg(o, "source", f), b = expr_arg(o, "target", g);
  auto c = count_nat(a, b, opt.upto);
  json per = json::array();
  for (const auto &x : c.per_degree)
    per.push_back(x.get_str());
  o.result = {{"per_degree", per}, {"cumulative", c.cumulative.get_str()}};
  o.text << join_nat(c.per_degree, ",") << "; cumulative " << c.cumulative.get_str() << '\n';
}

void natenum_cmd(Output &o, const Options &opt, const std::string &f, const std::string &g) {
  Expr a = expr_arg(o, "source", f), b = expr_arg(o, "target", g);
  auto all = enumerate_nat(a, b, opt.upto, opt.limit ? opt.limit : 1000);
  json list = json::array();
  o.text << all.size() << " transformations\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    json comps = json::array();
    o.text << '#' << i + 1 << ':';
    for (const auto &c : all[i].components) {
      comps.push_back(c.map);
      o.text << " [";
      for (std::size_t j = 0; j < c.map.size(); ++j)
        o.text << (j ? " " : "") << c.map[j];
      o.text << ']';
    }
    o.text << '\n';
    list.push_back(comps);
  }
  o.result = {{"count", all.size()}, {"transformations", list}};
}

std::vector<Expr> family_of(const Options &opt) {
  if (opt.family.empty())
    return default_family();
  std::vector<Expr> out;
  std::stringstream ss(opt.family);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_expr(item));
  return out;
}

void suite_cmd(Output &o, const Options &opt, const std::string &name) {
  o.inputs["name"] = name;
  if (!opt.family.empty())
    o.inputs["family"] = opt.family;
  std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  auto family = family_of(opt);
  json list = json::array();
  bool all_ok = true;
  for (const auto &n : names) {
    auto r = canonical_iso_suite(n, opt.upto, family);
    all_ok = all_ok && r.ok;
    json cases = json::array();
    o.text << n << ": " << (r.ok ? "pass" : "FAIL") << '\n';
    for (const auto &c : r.cases) {
      cases.push_back({{"label", c.label},
                       {"ok", c.ok},
                       {"structural_up_to", c.structural_up_to},
                       {"failing_degree", opt_num(c.failing_degree)},
                       {"detail", c.detail}});
      o.text << "  " << (c.ok ? "ok   " : "FAIL ") << c.label << " (S_k-sets to degree "
             << c.structural_up_to << ")";
      if (!c.detail.empty())
        o.text << ": " << c.detail;
      o.text << '\n';
    }
    list.push_back({{"name", n}, {"ok", r.ok}, {"cases", cases}});
  }
  o.result = {{"ok", all_ok}, {"suites", list}};
}

struct BuiltinMonoid {
  Expr f;
  NatTrans mu;
  Structure eta;
};

std::vector<int> iota1(unsigned k) {
  std::vector<int> v(k);
  for (unsigned i = 0; i < k; ++i)
    v[i] = static_cast<int>(i) + 1;
  return v;
}

BuiltinMonoid builtin_monoid(const std::string &name, unsigned N) {
  if (name == "concat" || name == "concat-reverse") {
    bool rev = name == "concat-reverse";
    Expr l = ex::lin();
    auto mu = nat_from_function(ex::cauchy(l, l), l, N, [rev](unsigned, const Structure &s) {
      std::vector<int> order = s.children[0].labels;
      order.insert(order.end(), s.children[1].labels.begin(), s.children[1].labels.end());
      if (rev)
        std::reverse(order.begin(), order.end());
      return Structure{Tag::Lin, order, {}};
    });
    return {l, mu, Structure{Tag::Lin, {}, {}}};
  }
  if (name == "unique") {
    Expr e = ex::exp();
    auto mu = nat_from_function(ex::cauchy(e, e), e, N, [](unsigned k, const Structure &) {
      return Structure{Tag::Set, iota1(k), {}};
    });
    return {e, mu, Structure{Tag::Set, {}, {}}};
  }
  if (name == "union") {
    Expr p = ex::subsets();
    auto mu = nat_from_function(ex::cauchy(p, p), p, N, [](unsigned, const Structure &s) {
      std::vector<int> u = s.children[0].labels;
      u.insert(u.end(), s.children[1].labels.begin(), s.children[1].labels.end());
      std::sort(u.begin(), u.end());
      return Structure{Tag::Subset, u, {}};
    });
    return {p, mu, Structure{Tag::Subset, {}, {}}};
  }
  throw Error(ErrorCode::InvalidExpr,
              "unknown multiplication " + name + " (concat, concat-reverse, unique, union)");
}

void monoid_cmd(Output &o, const Options &opt) {
  o.inputs["mu"] = opt.mu;
  auto m = builtin_monoid(opt.mu, opt.upto);
  auto r = check_monoid(m.f, m.mu, m.eta, opt.upto);
  json laws = json::array();
  for (const auto &l : r.laws) {
    laws.push_back(
        {{"law", l.law}, {"ok", l.ok}, {"degree", opt_num(l.degree)}, {"detail", l.detail}});
    o.text << l.law << ": " << (l.ok ? "ok" : "fails at degree " + std::to_string(*l.degree));
    if (!l.ok)
      o.text << " (" << l.detail << ")";
    o.text << '\n';
  }
  o.result = {{"species", render(m.f)}, {"ok", r.ok}, {"laws", laws}};
  o.text << "monoid on " << render(m.f) << ": " << (r.ok ? "pass" : "fail") << '\n';
}

PartialAlgebra algebra_of(const Expr &carrier, unsigned N) {
  if (carrier.kind() == Kind::One)
    return unit_algebra(N);
  return terminal_algebra(carrier, N);
}

void algtensor_cmd(Output &o, const Options &opt, const std::string &a, const std::string &b) {
  Expr x = expr_arg(o, "left", a), y = expr_arg(o, "right", b);
  auto t = tensor_partial_algebras(algebra_of(x, opt.upto), algebra_of(y, opt.upto), opt.upto);
  auto r = check_algebra(t);
  auto counts = count_seq(t.carrier, opt.upto);
  o.result = {{"carrier", render(t.carrier)},
              {"valid", r.ok},
              {"carrier_counts", nat_array(counts)},
              {"detail", r.detail}};
  o.text << "algebra on " << render(t.carrier) << " up to degree " << opt.upto << ": "
         << (r.ok ? "valid" : "invalid (" + r.detail + ")") << '\n'
         << "carrier counts: " << to_string(counts) << '\n';
}

Dynamics dynamics_of(const std::string &s) {
  if (s == "derive")
    return Dynamics::derive();
  if (s == "adjL")
    return Dynamics::adj_l();
  if (s == "pointing")
    return Dynamics::pointing();
  if (s == "deriveL")
    return Dynamics::derive_l();
  if (s.rfind("tensor:", 0) == 0)
    return Dynamics::tensor_by(parse_expr(s.substr(7)));
  throw Error(ErrorCode::InvalidExpr,
              "unknown dynamics " + s + " (derive, adjL, pointing, deriveL, tensor:EXPR)");
}

void terminal_cmd(Output &o, const Options &opt, const std::string &b) {
  Expr B = expr_arg(o, "output", b);
  o.inputs["dynamics"] = opt.dyn;
  o.inputs["moore"] = opt.moore;
  TerminalOptions topt;
  topt.moore = opt.moore;
  auto c = terminal_counts(dynamics_of(opt.dyn), B, opt.upto, topt);
  o.result = {{"coefficients", nat_array(c)}};
  o.text << to_string(c) << '\n';
}

void homday_cmd(Output &o, const Options &opt, const std::string &f, const std::string &g) {
  Expr a = expr_arg(o, "source", f), b = expr_arg(o, "target", g);
  auto c = hom_day_counts(a, b, opt.upto);
  o.result = {{"coefficients", nat_array(c)}};
  o.text << to_string(c) << '\n';
}

DiffOperator operator_arg(Output &o, const Options &opt) {
  o.inputs["op"] = opt.op;
  if (opt.op.empty())
    throw ParseFailure(0, {"--op"}, "nothing");
  return parse_operator(opt.op);
}

void solve_cmd(Output &o, const Options &opt) {
  DiffOperator D = operator_arg(o, opt);
  if (opt.max_iter)
    o.inputs["max_iter"] = opt.max_iter;
  auto r = adamek_chain(D, opt.upto, opt.max_iter);
  json its = json::array(), stable = json::array();
  for (std::size_t j = 0; j < r.iterates.size(); ++j) {
    its.push_back(nat_array(r.iterates[j]));
    o.text << "iterate " << j << ": " << to_string(r.iterates[j]) << '\n';
  }
  for (const auto &s : r.convergence.stable_from)
    stable.push_back(opt_num(s));
  const auto &c = r.convergence;
  o.result = {{"operator", D.str()},
              {"iterates", its},
              {"stable_from", stable},
              {"verdict", c.converged ? "Converged" : "Diverged"},
              {"limit", c.limit ? nat_array(*c.limit) : json(nullptr)},
              {"witness", opt_num(c.witness)},
              {"certificate", r.certificate ? json(to_string(*r.certificate)) : json(nullptr)}};
  if (c.converged)
    o.text << "Converged [" << to_string(*c.limit) << "]\nfixpoint contact: "
           << to_string(*r.certificate) << '\n';
  else
    o.text << "Diverged at degree " << *c.witness << '\n';
}

void fixcheck_cmd(Output &o, const Options &opt, const std::string &x) {
  DiffOperator D = operator_arg(o, opt);
  Expr g = expr_arg(o, "candidate", x);
  auto c = fixpoint_check(D, count_seq(g, opt.upto + D.max_order()), opt.upto);
  o.result = {{"contact", to_string(c)}};
  o.text << "contact order: " << to_string(c) << '\n';
}

json diagnostic(const std::string &code, const std::string &message) {
  return {{"code", code}, {"message", message}};
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Species calculator"};
  app.name("spc");
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--upto", opt.upto, "horizon")->capture_default_str();
  app.add_flag("--json", opt.json_out, "emit one JSON document");
  app.add_option("--max-iter", opt.max_iter, "Adamek chain length (default 2(N+2))");
  app.add_option("--limit", opt.limit, "enumeration cap");
  app.add_option("--seed", opt.seed, "ignored; all commands are deterministic");

  std::string a, b;
  unsigned degree = 0;
  std::string verb;
  auto one = [&](const char *name, const char *help, const char *arg) {
    auto *s = app.add_subcommand(name, help);
    s->add_option(arg, a)->required();
    return s;
  };
  auto two = [&](const char *name, const char *help, const char *x, const char *y) {
    auto *s = app.add_subcommand(name, help);
    s->add_option(x, a)->required();
    s->add_option(y, b)->required();
    return s;
  };
  one("coeffs", "counting sequence", "expr");
  one("egf", "exponential generating function coefficients", "expr");
  one("enumerate", "list structures at one degree", "expr")
      ->add_option("degree", degree, "degree")
      ->required();
  one("orbits", "orbits and stabilizers at one degree", "expr")
      ->add_option("degree", degree, "degree")
      ->required();
  two("iso", "degreewise isomorphism check", "left", "right");
  two("natcount", "count natural transformations", "source", "target");
  two("natenum", "list natural transformations", "source", "target");
  one("suite", "canonical isomorphism suite (or all)", "name")
      ->add_option("--family", opt.family, "comma separated argument species");
  app.add_subcommand("monoid", "check a built-in monoid")
      ->add_option("--mu", opt.mu, "concat, concat-reverse, unique or union");
  two("algtensor", "tensor of terminal or unit derivative algebras", "left", "right");
  auto *term = one("terminal", "terminal automaton counts", "output");
  term->add_option("--dyn", opt.dyn, "derive, adjL, pointing, deriveL or tensor:EXPR");
  term->add_flag("--moore", opt.moore, "Moore instead of Mealy");
  two("homday", "Day internal hom counts", "source", "target");
  app.add_subcommand("solve", "Adamek chain of an operator")
      ->add_option("--op", opt.op, "operator, e.g. \"1 + X:1\"")
      ->required();
  one("fixcheck", "contact of a candidate with its image", "candidate")
      ->add_option("--op", opt.op, "operator")
      ->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  verb = app.get_subcommands().front()->get_name();

  Output o;
  json diagnostics = json::array();
  int status = 0;
  try {
    if (verb == "coeffs")
      coeffs(o, opt, a);
    else if (verb == "egf")
      egf_cmd(o, opt, a);
    else if (verb == "enumerate")
      enumerate_cmd(o, opt, a, degree);
    else if (verb == "orbits")
      orbits_cmd(o, opt, a, degree);
    else if (verb == "iso")
      iso_cmd(o, opt, a, b);
    else if (verb == "natcount")
      natcount_cmd(o, opt, a, b);
    else if (verb == "natenum")
      natenum_cmd(o, opt, a, b);
    else if (verb == "suite")
      suite_cmd(o, opt, a);
    else if (verb == "monoid")
      monoid_cmd(o, opt);
    else if (verb == "algtensor")
      algtensor_cmd(o, opt, a, b);
    else if (verb == "terminal")
      terminal_cmd(o, opt, a);
    else if (verb == "homday")
      homday_cmd(o, opt, a, b);
    else if (verb == "solve")
      solve_cmd(o, opt);
    else if (verb == "fixcheck")
      fixcheck_cmd(o, opt, a);
  } catch (const ParseFailure &e) {
    json d = diagnostic("ParseError", e.what());
    d["offset"] = e.offset();
    d["expected"] = e.expected();
    diagnostics.push_back(d);
    status = 2;
  } catch (const Error &e) {
    diagnostics.push_back(diagnostic(error_name(e.code()), e.what()));
    status = 1;
  } catch (const std::exception &e) {
    diagnostics.push_back(diagnostic("InternalError", e.what()));
    status = 1;
  }

  if (opt.json_out) {
    json doc = {{"command", verb},
                {"inputs", o.inputs},
                {"horizon", opt.upto},
                {"result", status == 0 ? o.result : json(nullptr)},
                {"diagnostics", diagnostics}};
    out << doc.dump(2) << '\n';
  } else if (status == 0) {
    out << o.text.str();
  } else {
    for (const auto &d : diagnostics)
      err << "error: " << d["code"].get<std::string>() << ": " << d["message"].get<std::string>()
          << '\n';
  }
  return status;
}

} // namespace species::cli
