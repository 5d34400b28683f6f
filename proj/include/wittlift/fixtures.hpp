#pragma once

#include "wittlift/json_io.hpp"

namespace wittlift {

// The named desk-scale corpus: small groups, representations, and characters
// used by the CLI fixtures and the regression expectations.
namespace corpus {

std::vector<std::string> group_names();
GroupPtr group(const std::string& name);

std::vector<std::string> rep_names();
GModule rep(const std::string& name);
// the group fixture a representation belongs to
std::string rep_group(const std::string& name);

std::vector<std::string> chi_names();
Character chi(const std::string& name);
std::string chi_group(const std::string& name);

} // namespace corpus

// Write groups/, reps/, chi/ fixture inputs and regenerate every expectation
// file from the independent oracles (ghost components, the periodic cyclic
// formulas, the exhaustive lift search). An existing expectation whose bytes
// disagree with the fresh oracle output raises oracle_disagreement naming the
// file. A DIGEST file records per-file digests.
struct RegenResult {
    std::vector<std::string> files;
    std::string digest;
};
RegenResult regen_fixtures(const std::string& dir);

} // namespace wittlift
