#pragma once

#include "wittlift/cohomology.hpp"

namespace wittlift {

inline constexpr long kCharacterSweepBudget = 10000;

// Per-subgroup verdict table for an n-surjectivity certificate of the
// reduction (⊗^n T) -> (⊗^n T){1} attached to a character chi into
// W_(d+1)(F_q)^x.
struct CyclotomicCertificate {
    GroupPtr G;
    Character chi; // over W_(d+1)(F_q)
    int n = 1;
    int d = 1;
    SurjectivityReport report;
    bool pass = false;

    const SurjectivityItem* find_subgroup(const std::vector<int>& elements) const;
};

CyclotomicCertificate check_cyclotomic(GroupPtr G, const Character& chi, int n, int d);

// Every character G -> W_e(F_q)^x (through the abelianization), deterministic
// order: trivial first, then by generator-value enumeration indices.
std::vector<Character> enumerate_characters(GroupPtr G, const WittRing* We,
                                            long budget = kCharacterSweepBudget);

struct SmoothSearchResult {
    bool found = false;
    std::optional<CyclotomicCertificate> witness;
    std::vector<CyclotomicCertificate> failures; // the full table on exhaustion
};
SmoothSearchResult smooth_search(GroupPtr G, int n, int d, const FieldDesc* fd);

// cd_p <= 1 test: H^2(H, F_p) = 0 for every subgroup; on success, every
// rank-1 free module over W_(d+1) must be n-cyclotomic, which is re-verified
// on the enumerated characters.
struct Cd1Report {
    bool pass = false;
    struct Item {
        Subgroup H;
        bool h2_zero = false;
        std::vector<int> orders;
    };
    std::vector<Item> items;
    std::vector<std::pair<Character, bool>> rank1_checks;
    std::optional<Subgroup> witness; // a subgroup with H^2 != 0
};
Cd1Report cd1_check(GroupPtr G, int p, int n, int d, const FieldDesc* fd);

// Twist a surjection of trivial-action W_(d+1)-modules by chi^n and test
// n-surjectivity. With a passing certificate this must succeed; a failure
// indicates an engine bug and is surfaced as pass = false.
struct TofpResult {
    bool pass = false;
    SurjectivityReport report;
};
TofpResult tofp_property(const CyclotomicCertificate& cert, const GModMap& pi);

} // namespace wittlift
