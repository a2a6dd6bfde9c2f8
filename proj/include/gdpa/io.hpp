#pragma once

#include <string>

#include <json.hpp>

#include "gdpa/coherence.hpp"
#include "gdpa/special.hpp"

namespace gdpa {

using Json = nlohmann::ordered_json;

/// Malformed input; `pointer` is the JSON pointer of the offending value.
class SchemaError : public PreconditionError {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : PreconditionError(what + " at " + (pointer.empty() ? "/" : pointer)), pointer(std::move(pointer)) {}
  std::string pointer;
};

/// "Z", "Q", "Z/n", "GF(p)", "Z_(p)" or "Z[q]".
Ring parse_ring(const std::string& name);

/// Ring element from a JSON integer or string.
RingElement element_from_json(const Ring& r, const Json& j, const std::string& ptr);
Json element_to_json(const Ring& r, const RingElement& a);

/// {"ring", "family", optional "q0", "values", "default", "sequence", "transform"}.
PiSequence pi_from_json(const Json& j, const std::string& ptr = "");
/// pi from the object at key "pi" when present, else from j itself.
AlgebraContext context_from_json(const Json& j, const std::string& ptr = "");

/// {"generators": [...], "relations": [{"degree", "coeffs"}]} or
/// {"special": {"ideal", "h", "shift"}}, plus the pi keys.
PresentedModule module_from_json(const Json& j, const std::string& ptr = "");
Json module_to_json(const PresentedModule& m);
ModuleMap map_from_json(const Ring& r, const Json& j, std::size_t target_rank, const std::string& ptr);
HomVec homvec_from_json(const Ring& r, const Json& j, std::size_t rank, const std::string& ptr);
Json homvec_to_json(const Ring& r, const HomVec& v);

/// {"chain": [[gens of a_0], [gens of a_1], ...]} (a bare element stands for
/// a one-generator ideal), plus the pi keys.
IdealSpec ideal_from_json(const Json& j, const std::string& ptr = "");
Json ideal_to_json(const IdealSpec& s);

/// {"ring", "table": [[c(0,0)], [c(1,0), c(1,1)], ...]}.
StructureConstants constants_from_json(const Json& j, const std::string& ptr = "");

Json invariants_to_json(const Ring& r, const ModuleInvariants& inv);
Json classes_to_json(const ClassVector& v);
Json bound_report_to_json(const BoundReport& rep);

}  // namespace gdpa
