#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wittlift {

inline constexpr const char* kToolVersion = "wittlift 1.0.0";

// Runtime budgets; WITTLIFT_BUDGET overrides the enumeration budgets.
struct Budgets {
    long brute_force;
    long linked;
    static Budgets current();
};

// FNV-1a, used as the drift/reproducibility digest of inputs and fixtures.
uint64_t fnv1a(const std::string& bytes);
std::string digest_hex(const std::string& bytes);
std::string digest_of_files(const std::vector<std::string>& paths);

} // namespace wittlift
