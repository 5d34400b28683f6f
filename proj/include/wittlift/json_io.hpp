#pragma once

#include <json.hpp>

#include "wittlift/lifting.hpp"

namespace wittlift {

// Insertion-ordered JSON keeps every serialized report byte-stable.
using json = nlohmann::ordered_json;

json field_to_json(const FieldDesc* fd);
const FieldDesc* field_from_json(const json& j);

json ring_to_json(const WittRing* W);
const WittRing* ring_from_json(const json& j);

json witt_to_json(const WittVec& v);
WittVec witt_from_json(const WittRing* W, const json& j);

json group_to_json(const FiniteGroup& G);
GroupPtr group_from_json(const json& j);

json wmatrix_to_json(const WMatrix& A);
WMatrix wmatrix_from_json(const WittRing* W, const json& j);

json modelt_to_json(const GModule& M, const ModElt& x);
ModElt modelt_from_json(const GModule& M, const json& j);

// {"ring":..., "group":..., "profile":[...], "generators":[matrix,...]}
json gmodule_to_json(const GModule& M);
GModule gmodule_from_json(const json& j);

// {"ring":..., "values":[...]} with the group supplied by the caller
json character_to_json(const Character& chi);
Character character_from_json(const json& j, GroupPtr G);

json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const GModule& M, int degree, const json& j);

json cohomology_to_json(const CohomologyGroup& H);
json surjectivity_to_json(const SurjectivityReport& rep, GroupPtr G);

json certificate_to_json(const CyclotomicCertificate& cert);
// Parses the defining data and recomputes the verdicts; a stored verdict that
// contradicts the recomputation is rejected as stale.
CyclotomicCertificate certificate_from_json(const json& j);

json extension_to_json(const Extension1& e);
Extension1 extension_from_json(const json& j);

json lift_result_to_json(const LiftResult& r);
json obstruction_to_json(const ObstructionReport& rep);

std::vector<int> subgroup_elements_from_json(const json& j);

// file helpers
json load_json_file(const std::string& path);
void write_atomic(const std::string& path, const std::string& content);

} // namespace wittlift
