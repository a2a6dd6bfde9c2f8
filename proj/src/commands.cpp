#include "gdpa/commands.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace gdpa {

namespace {
Json parse_json(const std::string& src, const std::string& what) {
  try {
    return Json::parse(src);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", "malformed JSON in " + what + ": " + e.what());
  }
}

/// Inline JSON when the argument starts with '{' or '[', "-" for stdin, else a file path.
Json read_input(const CommandOptions& o) {
  if (o.input.empty()) throw PreconditionError("this subcommand needs --input");
  char c = o.input.front();
  if (c == '{' || c == '[') return parse_json(o.input, "--input");
  std::stringstream ss;
  if (o.input == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(o.input);
    if (!f) throw PreconditionError("cannot open input file " + o.input);
    ss << f.rdbuf();
  }
  return parse_json(ss.str(), o.input);
}

Json pi_json_from_flags(const CommandOptions& o) {
  Json j{{"ring", o.ring}, {"family", o.family}};
  if (!o.q0.empty()) j["q0"] = o.q0;
  if (!o.values.empty()) {
    Json v = parse_json(o.values, "--values");
    if (v.is_array())
      j["sequence"] = v;
    else
      j["values"] = v;
  }
  if (o.family == "fibonacci") j["up_to"] = std::max(o.up_to, 2L);
  return j;
}

PiSequence pi_from_flags(const CommandOptions& o) {
  if (!o.input.empty()) {
    Json j = read_input(o);
    return j.contains("pi") ? pi_from_json(j["pi"], "/pi") : pi_from_json(j);
  }
  return pi_from_json(pi_json_from_flags(o));
}

std::string el(const Ring& r, const RingElement& a) { return r.to_string(a); }

Json fit_json(const std::optional<KClassExpr>& fit) { return fit ? Json(fit->to_string()) : Json(nullptr); }

CommandResult cmd_cbinom(const CommandOptions& o) {
  PiSequence pi = pi_from_flags(o);
  if (o.m < 0 || o.m > o.n) throw PreconditionError("cbinom needs 0 <= m <= n");
  RingElement c = pi.C(o.n, o.m);
  CommandResult res;
  res.json = {{"ring", pi.ring().name()}, {"family", pi.describe()}, {"n", o.n}, {"m", o.m}, {"value", el(pi.ring(), c)}};
  res.text = el(pi.ring(), c) + "\n";
  return res;
}

CommandResult cmd_pi_derive(const CommandOptions& o) {
  CommandResult res;
  try {
    PiSequence pi = pi_from_flags(o);
    long top = o.family == "gcd_morphic" && !o.values.empty() ? static_cast<long>(parse_json(o.values, "--values").size())
                                                                : o.up_to;
    Json pis = Json::array(), as = Json::array();
    std::ostringstream t;
    t << "n\tpi_n\ta(n)\n";
    for (long n = 2; n <= top; ++n) {
      pis.push_back(el(pi.ring(), pi.pi(n)));
      as.push_back(el(pi.ring(), pi.a(n)));
      t << n << "\t" << el(pi.ring(), pi.pi(n)) << "\t" << el(pi.ring(), pi.a(n)) << "\n";
    }
    res.json = {{"family", pi.describe()}, {"from", 2}, {"pi", pis}, {"a", as}};
    res.text = t.str();
  } catch (const NotGcdMorphicError& e) {
    res.json = {{"error", e.what()}, {"witness", {e.n, e.m}}};
    res.text = std::string("not gcd-morphic: ") + e.what() + "\n";
    res.code = kExitPrecondition;
  }
  return res;
}

CommandResult cmd_pi_check(const CommandOptions& o) {
  PiSequence pi = pi_from_flags(o);
  auto v = admissible_check(pi, o.up_to);
  CommandResult res;
  res.json = {{"family", pi.describe()}, {"up_to", o.up_to}, {"admissible", v.admissible}};
  if (v.admissible) {
    res.text = "admissible up to " + std::to_string(o.up_to) + "\n";
  } else {
    res.json["violation"] = {v.n, v.m};
    res.text = "violation (" + std::to_string(v.n) + "," + std::to_string(v.m) + ")\n";
    res.code = kExitPrecondition;
  }
  return res;
}

CommandResult cmd_pi_transform(const CommandOptions& o) {
  PiSequence pi = pi_from_flags(o);
  if (o.h < 1) throw PreconditionError("--h must be at least 1");
  PiSequence t = pi.h_transform(o.h);
  const Ring& R = pi.ring();
  Json rows = Json::array();
  std::ostringstream s;
  s << "n\tpi^[h]_n\ta^[h](n)\ta^[h](n)a(h)=a(hn)\n";
  bool all = true;
  for (long n = 1; n <= o.up_to; ++n) {
    bool law = R.mul(t.a(n), pi.a(o.h)) == pi.a(o.h * n);
    all = all && law;
    std::string pin = n >= 2 ? el(R, t.pi(n)) : "-";
    rows.push_back({{"n", n}, {"pi", pin}, {"a", el(R, t.a(n))}, {"law", law}});
    s << n << "\t" << pin << "\t" << el(R, t.a(n)) << "\t" << (law ? "yes" : "NO") << "\n";
  }
  CommandResult res;
  res.json = {{"family", t.describe()}, {"h", o.h}, {"rows", rows}, {"transform_law", all}};
  res.text = s.str();
  res.code = all ? kExitOk : kExitPrecondition;
  return res;
}

long horizon_or(const CommandOptions& o, long fallback) { return o.horizon >= 0 ? o.horizon : fallback; }

CommandResult cmd_hilbert(const CommandOptions& o) {
  PresentedModule m = module_from_json(read_input(o));
  auto hs = hilbert_series(m, horizon_or(o, default_horizon(m)));
  CommandResult res;
  Json pieces = Json::array();
  std::ostringstream t;
  for (std::size_t i = 0; i < hs.pieces.size(); ++i) {
    long d = hs.lo + static_cast<long>(i);
    pieces.push_back({{"degree", d}, {"piece", invariants_to_json(m.ring(), hs.pieces[i])}});
    t << d << "\t" << hs.pieces[i].to_string(m.ring()) << "\n";
  }
  res.json = {{"lo", hs.lo}, {"horizon", hs.horizon}, {"pieces", pieces}, {"fit", fit_json(hs.fit)}};
  t << "fit\t" << (hs.fit ? hs.fit->to_string() : "none within horizon") << "\n";
  res.text = t.str();
  if (!hs.fit) res.code = kExitInconclusive;
  return res;
}

std::vector<long> degrees_of_relations(const PresentedModule& m) {
  std::vector<long> out;
  for (const auto& r : m.relations) out.push_back(r.degree);
  return out;
}

CommandResult cmd_syzygy(const CommandOptions& o) {
  Json in = read_input(o);
  const Json& mj = in.contains("module") ? in["module"] : in;
  PresentedModule m = module_from_json(mj, in.contains("module") ? "/module" : "");
  PresentedModule target(m.ctx, m.gen_degrees);
  ModuleMap f{degrees_of_relations(m), m.relations};
  if (in.contains("map")) {
    target = m;
    f = map_from_json(m.ring(), in["map"], m.gen_degrees.size(), "/map");
  }
  long H = horizon_or(o, default_horizon(m));
  auto kp = kernel_presentation(target, f, H);
  CommandResult res;
  Json gens = Json::array();
  std::ostringstream t;
  t << "kernel generators to degree " << H << ":\n";
  for (const auto& g : kp.generators) {
    gens.push_back(homvec_to_json(m.ring(), g));
    t << "  degree " << g.degree << ":";
    for (const auto& c : g.c) t << " " << el(m.ring(), c);
    t << "\n";
  }
  res.json = {{"horizon", H}, {"generators", gens}, {"kernel", module_to_json(kp.module)}};
  res.text = t.str();
  return res;
}

CommandResult cmd_tor(const CommandOptions& o) {
  PresentedModule m = module_from_json(read_input(o));
  int max_i = o.max_i >= 0 ? static_cast<int>(o.max_i) : 2;
  long H = horizon_or(o, default_horizon(m));
  auto t = tor(m, max_i, H);
  CommandResult res;
  Json entries = Json::array();
  std::ostringstream s;
  s << "i\td\tTor_i(M,k)_d\n";
  for (const auto& [key, inv] : t.entries) {
    if (inv.is_zero()) continue;
    entries.push_back({{"i", key.first}, {"degree", key.second}, {"value", invariants_to_json(m.ring(), inv)}});
    s << key.first << "\t" << key.second << "\t" << inv.to_string(m.ring()) << "\n";
  }
  Json tops = Json::array();
  for (int i = 0; i <= max_i; ++i) {
    auto top = t.top_degree(i);
    tops.push_back(top ? Json(*top) : Json(nullptr));
  }
  res.json = {{"lo", t.lo}, {"horizon", H}, {"max_i", max_i}, {"nonzero", entries}, {"top_degrees", tops}};
  res.text = s.str();
  return res;
}

CommandResult cmd_torsion(const CommandOptions& o) {
  PresentedModule m = module_from_json(read_input(o));
  long H = horizon_or(o, default_horizon(m));
  auto rep = torsion_submodule(m, H);
  CommandResult res;
  Json gens = Json::array();
  for (const auto& g : rep.generators) gens.push_back(homvec_to_json(m.ring(), g));
  res.json = {{"verdict", to_string(rep.verdict)}, {"method", rep.method}, {"horizon", rep.horizon}, {"generators", gens}};
  res.json["witness_degree"] = rep.witness_degree ? Json(*rep.witness_degree) : Json(nullptr);
  res.text = to_string(rep.verdict) + " (" + rep.method + ", horizon " + std::to_string(rep.horizon) + ")\n";
  if (rep.verdict == TorsionVerdict::Inconclusive) res.code = kExitInconclusive;
  return res;
}

CommandResult cmd_special(const CommandOptions& o) {
  PresentedModule m = module_from_json(read_input(o));
  auto res_ = special_resolve_field(m, horizon_or(o, 40));
  auto v = verify_special_resolution(m, res_);
  CommandResult res;
  Json blocks = Json::array();
  std::ostringstream t;
  t << "special resolution of length " << res_.r << ", blocks of degree h = " << res_.h << "\n";
  for (const auto& b : res_.certificate.blocks) {
    Json ideal = Json::array();
    for (const auto& a : b.block.ideal) ideal.push_back(el(m.ring(), a));
    blocks.push_back({{"ideal", ideal}, {"h", b.block.h}, {"generator", homvec_to_json(m.ring(), b.generator)}});
    t << "  block at degree " << b.generator.degree << ", h = " << b.block.h << "\n";
  }
  res.json = {{"r", res_.r},           {"h", res_.h},         {"horizon", res_.horizon},
              {"top", module_to_json(res_.top)}, {"blocks", blocks}, {"verified", v.ok()}};
  t << (v.ok() ? "verified" : "verification failed: " + v.certificate.reason) << " to degree " << res_.horizon << "\n";
  res.text = t.str();
  if (!v.ok()) res.code = kExitPrecondition;
  return res;
}

ClassMode parse_mode(const std::string& s) {
  if (s == "full") return ClassMode::Full;
  if (s == "rank") return ClassMode::Rank;
  if (s == "plus") return ClassMode::Plus;
  throw PreconditionError("--mode must be full, rank or plus");
}

CommandResult cmd_kclass(const CommandOptions& o) {
  PresentedModule m = module_from_json(read_input(o));
  auto cs = h_invariant(m, horizon_or(o, default_horizon(m)), parse_mode(o.mode));
  CommandResult res;
  Json data = Json::array();
  std::ostringstream t;
  for (std::size_t i = 0; i < cs.data.size(); ++i) {
    data.push_back(classes_to_json(cs.data[i]));
    t << cs.lo + static_cast<long>(i) << "\t" << to_string(cs.data[i]) << "\n";
  }
  res.json = {{"lo", cs.lo}, {"horizon", cs.horizon}, {"mode", o.mode}, {"classes", data}, {"fit", fit_json(cs.fit)}};
  t << "fit\t" << (cs.fit ? cs.fit->to_string() : "none within horizon") << "\n";
  res.text = t.str();
  if (!cs.fit) res.code = kExitInconclusive;
  return res;
}

CommandResult cmd_l_invariant(const CommandOptions& o) {
  CommandResult res;
  if (o.input.empty()) {
    auto k = ktors_demo(o.p, o.h);
    res.json = {{"p", k.p},
                {"h", k.h},
                {"h_class_quotient", fit_json(k.h_quotient.fit)},
                {"h_class_special", fit_json(k.h_special.fit)},
                {"l_special", fit_json(k.l_special.fit)},
                {"expected_l", k.expected_l.to_string()},
                {"h_class_zero", k.h_class_zero},
                {"l_matches", k.l_matches},
                {"l_nonzero", k.l_nonzero},
                {"note", k.note}};
    res.text = "H-class of D/pD: " + (k.h_quotient.fit ? k.h_quotient.fit->to_string() : "none") +
               "\nL-invariant of M(p," + std::to_string(k.h) +
               "): " + (k.l_special.fit ? k.l_special.fit->to_string() : "none") + "\n";
    if (!k.note.empty()) res.text += k.note + "\n";
    res.code = k.l_matches ? kExitOk : kExitInconclusive;
    return res;
  }
  Json in = read_input(o);
  PresentedModule m = module_from_json(in);
  long block_h = in.contains("special") && in["special"].contains("h") ? in["special"]["h"].get<long>() : 1;
  long H = horizon_or(o, default_l_horizon(block_h, m));
  int max_i = o.max_i >= 0 ? static_cast<int>(o.max_i) : static_cast<int>(H - m.min_degree() + 1);
  auto l = l_invariant(m, max_i, H);
  Json data = Json::array();
  for (const auto& c : l.data) data.push_back(classes_to_json(c));
  res.json = {{"lo", l.lo}, {"horizon", l.horizon}, {"exact_to", l.exact_to}, {"partial_sums", data}, {"fit", fit_json(l.fit)}};
  res.text = "L-invariant: " + (l.fit ? l.fit->to_string() : "none within horizon") + " (exact to degree " +
             std::to_string(l.exact_to) + ")\n";
  if (!l.fit) res.code = kExitInconclusive;
  return res;
}

CommandResult cmd_bound_check(const CommandOptions& o) {
  std::vector<IdealSpec> specs;
  if (!o.input.empty()) {
    Json in = read_input(o);
    if (in.is_array()) {
      for (std::size_t i = 0; i < in.size(); ++i) specs.push_back(ideal_from_json(in[i], "/" + std::to_string(i)));
    } else {
      specs.push_back(ideal_from_json(in));
    }
  } else {
    std::mt19937 rng(o.seed);
    for (long k = 0; k < o.count; ++k) specs.push_back(random_ideal_spec(rng, o.max_d));
  }
  CommandResult res;
  Json reports = Json::array();
  std::ostringstream t;
  t << "#\tchain\tN\td\tbound\tt1\tpass\n";
  long passed = 0, unbounded = 0;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    auto rep = t1_bound_check(specs[k]);
    Json j = bound_report_to_json(rep);
    j["ideal"] = ideal_to_json(specs[k]);
    reports.push_back(j);
    passed += rep.pass;
    unbounded += !rep.N;
    t << k << "\t" << j["ideal"]["chain"].dump() << "\t" << (rep.N ? std::to_string(*rep.N) : "-") << "\t" << rep.d
      << "\t" << rep.bound << "\t" << (rep.computed_t1 ? std::to_string(*rep.computed_t1) : "none") << "\t"
      << (rep.pass ? "pass" : "FAIL") << "\n";
  }
  long total = static_cast<long>(specs.size());
  res.json = {{"reports", reports}, {"summary", {{"total", total}, {"passed", passed}, {"unbounded", unbounded}}}};
  t << "passed " << passed << "/" << total << "\n";
  res.text = t.str();
  if (unbounded > 0) res.code = kExitInconclusive;
  if (passed + unbounded < total) res.code = kExitPrecondition;
  return res;
}

CommandResult cmd_a2_check(const CommandOptions& o) {
  PiSequence pi = pi_from_flags(o);
  Json ideal = parse_json(o.ideal, "--ideal");
  std::vector<RingElement> gens;
  if (!ideal.is_array()) ideal = Json::array({ideal});
  for (std::size_t i = 0; i < ideal.size(); ++i) gens.push_back(element_from_json(pi.ring(), ideal[i], "/" + std::to_string(i)));
  auto v = a2_condition_check(pi, gens, o.h, o.limit);
  CommandResult res;
  bool bounded = v.kind == A2Kind::Bounded;
  res.json = {{"verdict", bounded ? "bounded" : "inconclusive"}, {"torsion_order", el(pi.ring(), v.torsion_order)}};
  res.json["n"] = v.n ? Json(*v.n) : Json(nullptr);
  res.text = bounded ? "bounded with n = " + std::to_string(*v.n) + "\n"
                     : "inconclusive up to " + std::to_string(o.limit) + "\n";
  if (!bounded) res.code = kExitInconclusive;
  return res;
}

CommandResult cmd_counterexample(const CommandOptions& o) {
  auto rep = bivariate_counterexample(o.p, o.r);
  long koszul = syzygy_generator_count(AlgebraContext(PiSequence::all_ones(Ring::rationals())), 4);
  CommandResult res;
  res.json = {{"p", rep.p},
              {"r", rep.r},
              {"bidegree", {rep.q, rep.q}},
              {"relation_holds", rep.relation_holds},
              {"new_syzygies", invariants_to_json(Ring::p_local(o.p), rep.new_syzygies)},
              {"not_generated_below", rep.not_generated_below},
              {"koszul_generators_over_Q", koszul}};
  std::ostringstream t;
  t << "relation at bidegree (" << rep.q << "," << rep.q << "): " << (rep.relation_holds ? "holds" : "FAILS") << "\n"
    << "new syzygies modulo lower degrees: " << rep.new_syzygies.to_string(Ring::p_local(o.p)) << "\n"
    << "Koszul generators over Q: " << koszul << "\n";
  res.text = t.str();
  if (!(rep.relation_holds && rep.not_generated_below && koszul == 1)) res.code = kExitPrecondition;
  return res;
}

CommandResult cmd_recover_pi(const CommandOptions& o) {
  StructureConstants sc;
  if (!o.input.empty()) {
    Json in = read_input(o);
    if (in.contains("table"))
      sc = constants_from_json(in);
    else
      sc = StructureConstants::from_pi(in.contains("pi") ? pi_from_json(in["pi"], "/pi") : pi_from_json(in), o.up_to);
  } else {
    sc = StructureConstants::from_pi(pi_from_json(pi_json_from_flags(o)), o.up_to);
  }
  auto rec = recover_pi(sc);
  Json pis = Json::array();
  std::ostringstream t;
  t << "n\tpi_n (up to units)\n";
  for (long n = 2; n < static_cast<long>(rec.pi.size()); ++n) {
    pis.push_back(el(sc.ring, rec.pi[n]));
    t << n << "\t" << el(sc.ring, rec.pi[n]) << "\n";
  }
  Json locus = Json::array();
  for (long b : rec.locus.terms) locus.push_back(b);
  CommandResult res;
  res.json = {{"ring", sc.ring.name()}, {"N", sc.N}, {"from", 2}, {"pi", pis}, {"locus", locus}};
  t << "locus\t" << locus.dump() << "\n";
  res.text = t.str();
  return res;
}

using Handler = CommandResult (*)(const CommandOptions&);

struct Entry {
  CommandInfo info;
  Handler fn;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> t = {
      {{"cbinom", "structure constant C(n, m)"}, cmd_cbinom},
      {{"pi-derive", "pi from a gcd-morphic integer sequence"}, cmd_pi_derive},
      {{"pi-check", "admissibility scan"}, cmd_pi_check},
      {{"pi-transform", "h-transform values and the a-value law"}, cmd_pi_transform},
      {{"hilbert", "graded pieces and Hilbert series fit"}, cmd_hilbert},
      {{"syzygy", "kernel generators of a module map"}, cmd_syzygy},
      {{"tor", "Tor_i(M, k) table"}, cmd_tor},
      {{"torsion", "torsion verdict"}, cmd_torsion},
      {{"special", "special resolution over a field"}, cmd_special},
      {{"kclass", "class series and its fit"}, cmd_kclass},
      {{"l-invariant", "L-invariant of a module (or the torsion-class example)"}, cmd_l_invariant},
      {{"bound-check", "Tor_1 degree bound for ideals"}, cmd_bound_check},
      {{"a2-check", "bounded torsion of k/a"}, cmd_a2_check},
      {{"counterexample", "bivariate syzygy not generated in lower degrees"}, cmd_counterexample},
      {{"recover-pi", "recover pi from structure constants"}, cmd_recover_pi},
  };
  return t;
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> infos = [] {
    std::vector<CommandInfo> out;
    for (const auto& e : table()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

CommandResult run_command(const std::string& name, const CommandOptions& o) {
  for (const auto& e : table())
    if (e.info.name == name) return e.fn(o);
  throw PreconditionError("unknown command '" + name + "'");
}

}  // namespace gdpa
