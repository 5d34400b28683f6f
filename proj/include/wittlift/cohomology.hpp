#pragma once

#include <optional>

#include "wittlift/gmodule.hpp"

namespace wittlift {

inline constexpr int kH1GroupBudget = 128;
inline constexpr int kH2GroupBudget = 24;

// An inhomogeneous n-cochain with a total table over G^n (degree <= 2).
// Degree-0 cochains hold a single module element.
struct Cochain {
    int degree = 0;
    GModule module;
    std::vector<ModElt> table; // |G|^degree entries, row-major tuples

    static Cochain zero(const GModule& M, int degree);
    size_t slots() const { return table.size(); }
    const ModElt& at1(int g) const { return table[size_t(g)]; }
    const ModElt& at2(int g, int h) const {
        return table[size_t(g) * size_t(module.group()->order()) + size_t(h)];
    }
    ModElt& at1(int g) { return table[size_t(g)]; }
    ModElt& at2(int g, int h) {
        return table[size_t(g) * size_t(module.group()->order()) + size_t(h)];
    }
    Cochain add(const Cochain& o) const;
    Cochain sub(const Cochain& o) const;
    bool is_zero() const;
};

// Bar differential d^n: C^n -> C^(n+1).
Cochain differential(const Cochain& c);
bool is_cocycle(const Cochain& c);
// Adjust a 2-cocycle by a coboundary so that slots with an identity argument
// vanish (1-cocycles are automatically normalized).
Cochain normalize_cocycle(const Cochain& c);

// H^n(G, M) presented as a direct sum of cyclic p-power factors with
// representative cocycles. The presentation solves class coordinates of
// arbitrary cocycles, so classes can be compared and mapped exactly.
class CohomologyGroup {
public:
    GroupPtr G;
    GModule M;
    int degree = 0;
    int p = 0, D = 0;
    std::vector<int> torsion_exps; // w_i >= 1; factor i is Z/p^(w_i)
    std::vector<Cochain> reps;

    bool is_zero() const { return torsion_exps.empty(); }
    long order() const;
    std::string orders_str() const;

    // Coordinates of the class of a cocycle, i-th entry mod p^(w_i).
    std::vector<long> coordinates(const Cochain& z) const;
    bool is_coboundary(const Cochain& z) const;
    bool same_class(const Cochain& a, const Cochain& b) const;
    Cochain rep_combination(const std::vector<long>& coords) const;

    // internals shared by the bar and periodic constructions
    struct Presentation {
        ZpdRing R;
        NormalFormResult zsolve; // normal form of the cocycle-generator matrix
        ZpdMat zgens;            // ambient cocycle generators (columns)
        ZpdMat T;                // presentation transform (U of the relation SNF)
        std::vector<int> factor_rows; // rows of T giving the factors
        // maps a cocycle to the ambient flat vector of the presentation
        enum class Mode { bar, periodic0, periodic_odd, periodic_even } mode = Mode::bar;
    };
    Presentation pres;
    ZpdVec to_ambient(const Cochain& z) const;
    const std::vector<int>& factorrows() const { return pres.factor_rows; }
    bool zsolvable(const ZpdVec& amb, ZpdVec& x) const;
};

// Bar-resolution cohomology over the module's own group.
CohomologyGroup cohomology_group(const GModule& M, int degree);
// Restrict to a subgroup first (cochains then live over H.as_group()).
CohomologyGroup cohomology_subgroup(const GModule& M, const Subgroup& H, int degree);

// Independent oracle for cyclic groups through the periodic resolution
// (even degrees >= 2: ker(sigma-1)/im(N); odd: ker(N)/im(sigma-1)).
// Representatives are emitted as bar cocycles; class coordinates are solved
// through the periodic picture, never through bar differentials.
CohomologyGroup cyclic_oracle(const GModule& M, int degree);

// The matrix of H^n(f): source factors -> target coordinates.
ZpdMat induced_map_matrix(const GModMap& f, const CohomologyGroup& Hsrc,
                          const CohomologyGroup& Hdst);
// Apply f to the values of a cochain.
Cochain map_cochain(const GModMap& f, const Cochain& c);

struct SurjectivityItem {
    Subgroup H;
    bool surjective = false;
    std::optional<Cochain> witness; // an uncovered target class on failure
    std::vector<int> src_orders, dst_orders;
};
struct SurjectivityReport {
    bool all = false;
    std::vector<SurjectivityItem> items; // one per subgroup, sorted
};
// Is H^n(H, f) surjective for every subgroup H?
SurjectivityReport is_n_surjective(const GModMap& f, int degree);

// Solve H^n(f)(x) = target_class; returns source coordinates when possible.
std::optional<std::vector<long>> solve_class_preimage(const GModMap& f,
                                                      const CohomologyGroup& Hsrc,
                                                      const CohomologyGroup& Hdst,
                                                      const std::vector<long>& target_coords);

// chi-twisted permutation module data for Shapiro transport: the module is
// T ⊗ k^X with (g.v)[x] = chi(g) v[g^-1 x].
struct ShapiroData {
    GroupPtr H;
    Character chi; // over W_e and H
    GSet X;        // of H
    GModule module;
    std::vector<Orbit> orbs; // under the full H
    std::vector<Subgroup::AsGroup> stabs;
    std::vector<Character> stab_chis;
    std::vector<GModule> stab_mods;  // rank-1 chi-modules over the stabilizers
    std::vector<int> transversal;    // per point x: minimal t with t.base = x
};
ShapiroData shapiro_prepare(const Character& chi, const GSet& X);

// Evaluation at orbit base points: H^1(H, T ⊗ k^X) -> ⊕_i H^1(G_i, T).
std::vector<Cochain> shapiro_forward(const ShapiroData& S, const Cochain& c);
// Coset transport in the other direction; the round trip is the identity up
// to coboundary.
Cochain shapiro_backward(const ShapiroData& S, const std::vector<Cochain>& parts);

} // namespace wittlift
