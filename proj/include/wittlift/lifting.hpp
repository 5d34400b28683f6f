#pragma once

#include "wittlift/smoothness.hpp"
#include "wittlift/yoneda.hpp"

namespace wittlift {

inline constexpr long kBruteForceBudget = 10'000'000;
inline constexpr long kIntertwinerBudget = 1 << 14;

enum class LiftStatus { lifted, stably_lifted, obstructed, certificate_failed, budget, not_found };
const char* lift_status_name(LiftStatus s);

// Does `big` reduce to `small`? Equality of action tables is tried first,
// then an invertible equivariant intertwiner is searched for.
struct IsLiftResult {
    bool ok = false;
    bool on_the_nose = false;
    std::optional<WMatrix> intertwiner; // T with T red(g) T^-1 = small(g)
};
IsLiftResult is_lift(const GModule& big, const GModule& small);

// The degree-2 class blocking a one-step lift W_r -> W_(r+1): coordinates of
// the defect of the Teichmueller-padded set-theoretic lift, valued in
// End(V_1) with adjoint action twisted by Frobenius^r.
struct ObstructionReport {
    GModule base;                  // rho over W_r
    std::vector<WMatrix> set_lift; // L(g) over W_(r+1), invertible
    GModule coeffs;                // End(V_1)^(r), adjoint action
    Cochain cocycle;               // degree 2, exact cocycle
    CohomologyGroup h2;
    std::vector<long> klass;
    bool vanishes = false;
    std::optional<Cochain> cobounding; // u with d(u) = -cocycle when it vanishes
};
ObstructionReport obstruction_p_next(const GModule& rho);
// Correct the set-theoretic lift by the cobounding cochain; class_nonzero
// when the obstruction does not vanish.
GModule solve_lift(const ObstructionReport& rep);

// Exhaustive entrywise sweep over all coordinate lifts of the generator
// matrices, in lexicographic order. Independent of the obstruction route.
struct BruteForceResult {
    bool found = false;
    std::optional<GModule> lift;
    long tried = 0;
    bool exhausted = false;
};
BruteForceResult brute_force_lift(const GModule& rho, long budget = kBruteForceBudget);

// From a lift Z of V ⊕ W to W_(r+1), extract a lift of V alone: conjugate Z
// into exact block form and keep the V-block (the pullback/pushforward of the
// coordinate extension, read off in adapted coordinates).
GModule ablift(const GModule& V, const GModule& Wmod, const GModule& Z);

// Norm splitting upgrade: from a lift of V restricted to G_0 (prime-to-p
// index) to a lift of V ⊕ W over the whole group.
struct StableUpgrade {
    GModule complement; // W
    GModule sum_lift;   // lift of V ⊕ W, free over the bigger ring
    NormSplitting split;
};
StableUpgrade stable_lift_upgrade(const GModule& V, const Subgroup& G0, const GModule& V_d);

// The permutation-extension lift: from an extension of permutation modules
// over G_0 at depth 1 and a depth-d character, build a free W_(d+1)-lift of
// the middle term over the chi-kernel shrink of G_0.
struct PermExtLiftResult {
    LiftStatus status = LiftStatus::lifted;
    Subgroup used_G0;                 // after the shrink (subgroup of the parent)
    std::optional<GModule> lift;      // free over W_(d+1), over used_G0.as_group()
    std::optional<std::vector<int>> failed_stabilizer; // parent-indexed elements
    std::vector<std::string> transcript;
};
PermExtLiftResult permutation_extension_lift(const Subgroup& G0, const GSet& Yset,
                                             const GSet& Xset, const Extension1& ext,
                                             const Character& chi);

// An invariant flag with permutation blocks for the dimension-2 path (line +
// quotient line with trivialized characters) or, over F_2, the 3- and 4-
// dimensional subspace searches.
struct FlagData {
    Subgroup G0;   // prime-to-p index
    WMatrix basis; // invertible over k; conjugated action is block triangular
    int sub_dim = 0;
    GSet sub_set, quo_set; // permutation witnesses over G0.as_group()
    std::vector<std::string> transcript;
};
FlagData find_invariant_flag(const GModule& rho);

struct LiftResult {
    LiftStatus status = LiftStatus::lifted;
    std::optional<GModule> lift_p2;     // genuine lift of rho over W_2
    std::optional<Subgroup> G0;         // stable subgroup
    std::optional<GModule> stable_lift; // over W_(d+1), lifts restrict(rho, G0)
    std::optional<GModule> complement;  // W
    std::optional<GModule> sum_lift;    // lift of rho ⊕ W over W_(d+1)
    std::optional<std::vector<int>> failed_stabilizer;
    std::vector<std::string> transcript;
};
// rho is a (k, G)-module of dimension <= 2 (any supported k) or <= 4 over
// F_2; cert must pass at the orbit stabilizers actually used (checked as the
// cocycle-lifting systems are solved).
LiftResult lift_dim2(const GModule& rho, const CyclotomicCertificate& cert);
LiftResult lift_dim4_f2(const GModule& rho, const CyclotomicCertificate& cert);

} // namespace wittlift
