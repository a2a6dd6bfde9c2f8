#include "gdpa/io.hpp"

#include <regex>

namespace gdpa {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const Json& require(const Json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(ptr, key), "missing required key '" + key + "'");
  return *it;
}

long as_long(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return j.get<long>();
}

std::string as_string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  return j;
}

mpz_class as_mpz(const Json& j, const std::string& ptr) {
  mpz_class v;
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string() && v.set_str(j.get<std::string>(), 10) == 0) return v;
  throw SchemaError(ptr, "expected an integer or a decimal string");
}

std::vector<long> long_list(const Json& j, const std::string& ptr) {
  std::vector<long> out;
  const Json& a = as_array(j, ptr);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_long(a[i], child(ptr, i)));
  return out;
}

std::vector<RingElement> element_list(const Ring& r, const Json& j, const std::string& ptr) {
  if (!j.is_array()) return {element_from_json(r, j, ptr)};
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element_from_json(r, j[i], child(ptr, i)));
  return out;
}

}  // namespace

Ring parse_ring(const std::string& name) {
  static const std::regex mod(R"(Z/(\d+))"), gf(R"(GF\((\d+)\))"), local(R"(Z_\((\d+)\))");
  std::smatch m;
  if (name == "Z") return Ring::integers();
  if (name == "Q") return Ring::rationals();
  if (name == "Z[q]") return Ring::int_poly();
  if (std::regex_match(name, m, mod)) return Ring::integers_mod(mpz_class(m[1].str()));
  if (std::regex_match(name, m, gf)) return Ring::prime_field(mpz_class(m[1].str()));
  if (std::regex_match(name, m, local)) return Ring::p_local(mpz_class(m[1].str()));
  throw PreconditionError("unknown ring '" + name + "' (expected Z, Q, Z/n, GF(p), Z_(p) or Z[q])");
}

RingElement element_from_json(const Ring& r, const Json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return r.from_mpz(mpz_class(std::to_string(j.get<long long>())));
    if (j.is_string()) return r.parse(j.get<std::string>());
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
  throw SchemaError(ptr, "expected a ring element (integer or string)");
}

Json element_to_json(const Ring& r, const RingElement& a) { return r.to_string(a); }

PiSequence pi_from_json(const Json& j, const std::string& ptr) {
  Ring ring = Ring::integers();
  if (j.contains("ring")) {
    try {
      ring = parse_ring(as_string(j["ring"], child(ptr, "ring")));
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(child(ptr, "ring"), e.what());
    }
  }
  std::string family = j.contains("family") ? as_string(j["family"], child(ptr, "family")) : "classical";
  PiSequence pi = PiSequence::classical(ring);
  if (family == "classical") {
  } else if (family == "all_ones") {
    pi = PiSequence::all_ones(ring);
  } else if (family == "cyclotomic") {
    if (ring.kind() != RingKind::IntPoly) throw SchemaError(child(ptr, "ring"), "cyclotomic family lives over Z[q]");
    pi = PiSequence::cyclotomic_symbolic();
  } else if (family == "cyclotomic_at") {
    pi = PiSequence::cyclotomic_at(ring, element_from_json(ring, require(j, "q0", ptr), child(ptr, "q0")));
  } else if (family == "custom") {
    const Json& vals = require(j, "values", ptr);
    if (!vals.is_object()) throw SchemaError(child(ptr, "values"), "expected an object of index -> value");
    std::map<long, RingElement> values;
    for (const auto& [key, v] : vals.items()) {
      long n = 0;
      try {
        std::size_t used = 0;
        n = std::stol(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw SchemaError(child(child(ptr, "values"), key), "index keys must be integers");
      }
      if (n < 2) throw SchemaError(child(child(ptr, "values"), key), "pi is indexed from 2");
      values[n] = element_from_json(ring, v, child(child(ptr, "values"), key));
    }
    RingElement def = j.contains("default") ? element_from_json(ring, j["default"], child(ptr, "default")) : ring.one();
    pi = PiSequence::custom(ring, std::move(values), def);
  } else if (family == "gcd_morphic") {
    const Json& seq = as_array(require(j, "sequence", ptr), child(ptr, "sequence"));
    std::vector<mpz_class> values;
    for (std::size_t i = 0; i < seq.size(); ++i) values.push_back(as_mpz(seq[i], child(child(ptr, "sequence"), i)));
    pi = pi_from_gcd_morphic(values, -1, ring);
  } else if (family == "fibonacci") {
    long up_to = j.contains("up_to") ? as_long(j["up_to"], child(ptr, "up_to")) : 60;
    pi = pi_from_gcd_morphic(fibonacci_number, up_to, "fibonacci", ring);
  } else {
    throw SchemaError(child(ptr, "family"), "unknown family '" + family + "'");
  }
  if (j.contains("transform")) {
    long h = as_long(j["transform"], child(ptr, "transform"));
    if (h < 1) throw SchemaError(child(ptr, "transform"), "transform degree must be at least 1");
    if (h > 1) pi = pi.h_transform(h);
  }
  return pi;
}

AlgebraContext context_from_json(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  if (j.contains("pi")) return AlgebraContext(pi_from_json(j["pi"], child(ptr, "pi")));
  return AlgebraContext(pi_from_json(j, ptr));
}

HomVec homvec_from_json(const Ring& r, const Json& j, std::size_t rank, const std::string& ptr) {
  HomVec v{as_long(require(j, "degree", ptr), child(ptr, "degree")), {}};
  const Json& c = as_array(require(j, "coeffs", ptr), child(ptr, "coeffs"));
  if (c.size() != rank)
    throw SchemaError(child(ptr, "coeffs"), "expected " + std::to_string(rank) + " coefficients");
  for (std::size_t i = 0; i < c.size(); ++i) v.c.push_back(element_from_json(r, c[i], child(child(ptr, "coeffs"), i)));
  return v;
}

Json homvec_to_json(const Ring& r, const HomVec& v) {
  Json c = Json::array();
  for (const auto& x : v.c) c.push_back(element_to_json(r, x));
  return Json{{"degree", v.degree}, {"coeffs", c}};
}

PresentedModule module_from_json(const Json& j, const std::string& ptr) {
  AlgebraContext ctx = context_from_json(j, ptr);
  const Ring& r = ctx.ring();
  if (j.contains("special")) {
    const Json& s = j["special"];
    std::string sp = child(ptr, "special");
    SpecialBlock b{element_list(r, require(s, "ideal", sp), child(sp, "ideal")),
                   as_long(require(s, "h", sp), child(sp, "h"))};
    long shift = s.contains("shift") ? as_long(s["shift"], child(sp, "shift")) : 0;
    return make_special(ctx, b, shift);
  }
  auto gens = long_list(require(j, "generators", ptr), child(ptr, "generators"));
  std::vector<HomVec> rels;
  if (j.contains("relations")) {
    const Json& a = as_array(j["relations"], child(ptr, "relations"));
    for (std::size_t i = 0; i < a.size(); ++i)
      rels.push_back(homvec_from_json(r, a[i], gens.size(), child(child(ptr, "relations"), i)));
  }
  try {
    return PresentedModule(ctx, gens, rels);
  } catch (const SchemaError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw SchemaError(child(ptr, "relations"), e.what());
  }
}

Json module_to_json(const PresentedModule& m) {
  Json rels = Json::array();
  for (const auto& v : m.relations) rels.push_back(homvec_to_json(m.ring(), v));
  return Json{{"ring", m.ring().name()}, {"family", m.ctx.pi().describe()}, {"generators", m.gen_degrees},
              {"relations", rels}};
}

ModuleMap map_from_json(const Ring& r, const Json& j, std::size_t target_rank, const std::string& ptr) {
  ModuleMap f;
  f.source = long_list(require(j, "source", ptr), child(ptr, "source"));
  const Json& imgs = as_array(require(j, "images", ptr), child(ptr, "images"));
  if (imgs.size() != f.source.size()) throw SchemaError(child(ptr, "images"), "expected one image per source generator");
  for (std::size_t i = 0; i < imgs.size(); ++i)
    f.images.push_back(homvec_from_json(r, imgs[i], target_rank, child(child(ptr, "images"), i)));
  return f;
}

IdealSpec ideal_from_json(const Json& j, const std::string& ptr) {
  IdealSpec s{context_from_json(j, ptr), {}};
  const Json& chain = as_array(require(j, "chain", ptr), child(ptr, "chain"));
  if (chain.empty()) throw SchemaError(child(ptr, "chain"), "chain needs at least one coefficient ideal");
  for (std::size_t i = 0; i < chain.size(); ++i)
    s.chain.push_back(element_list(s.ctx.ring(), chain[i], child(child(ptr, "chain"), i)));
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw SchemaError(child(ptr, "chain"), e.what());
  }
  return s;
}

Json ideal_to_json(const IdealSpec& s) {
  Json chain = Json::array();
  for (const auto& gens : s.chain) {
    Json g = Json::array();
    for (const auto& a : gens) g.push_back(element_to_json(s.ctx.ring(), a));
    chain.push_back(g);
  }
  return Json{{"ring", s.ctx.ring().name()}, {"family", s.ctx.pi().describe()}, {"chain", chain}};
}

StructureConstants constants_from_json(const Json& j, const std::string& ptr) {
  StructureConstants sc;
  sc.ring = parse_ring(as_string(require(j, "ring", ptr), child(ptr, "ring")));
  const Json& t = as_array(require(j, "table", ptr), child(ptr, "table"));
  if (t.empty()) throw SchemaError(child(ptr, "table"), "table needs at least the row n = 0");
  sc.N = static_cast<long>(t.size()) - 1;
  for (std::size_t n = 0; n < t.size(); ++n) {
    std::string rp = child(child(ptr, "table"), n);
    const Json& row = as_array(t[n], rp);
    if (row.size() != n + 1) throw SchemaError(rp, "row n must list c(n, 0..n)");
    std::vector<RingElement> out;
    for (std::size_t m = 0; m <= n; ++m) out.push_back(element_from_json(sc.ring, row[m], child(rp, m)));
    sc.c.push_back(std::move(out));
  }
  return sc;
}

Json invariants_to_json(const Ring& r, const ModuleInvariants& inv) {
  Json t = Json::array();
  for (const auto& f : inv.torsion_factors) t.push_back(element_to_json(r, f));
  return Json{{"free_rank", inv.free_rank}, {"torsion", t}, {"text", inv.to_string(r)}};
}

Json classes_to_json(const ClassVector& v) {
  Json out = Json::object();
  for (const auto& [k, c] : v) out[k] = c;
  return out;
}

Json bound_report_to_json(const BoundReport& rep) {
  Json j{{"d", rep.d}, {"bound", rep.bound}, {"pass", rep.pass}, {"horizon", rep.horizon}, {"torsion", rep.torsion}};
  j["N"] = rep.N ? Json(*rep.N) : Json(nullptr);
  j["computed_t1"] = rep.computed_t1 ? Json(*rep.computed_t1) : Json(nullptr);
  return j;
}

}  // namespace gdpa
