#pragma once

#include "wittlift/groups.hpp"
#include "wittlift/wmatrix.hpp"
#include "wittlift/zpdmat.hpp"

namespace wittlift {

// A module element: one W_d(F_q) value per profile slot, kept canonical
// (coordinates at index >= e_slot are zero; the slot value represents a class
// in W_{e_slot}(F_q)).
using ModElt = std::vector<WittVec>;

// Additive identification W_e(F_q) = (Z/p^e)^m through the Teichmueller lifts
// of the polynomial basis 1, x, .., x^(m-1).
std::vector<long> theta_inv(const WittRing* W, int e, const WittVec& x);
WittVec theta(const WittRing* W, int e, const std::vector<long>& z);

// A finitely generated W_d(F_q)-module with a linear G-action. The underlying
// module is ⊕_i W_{e_i}(F_q) for the cyclic-length profile e_1..e_r; each
// group element carries an r x r matrix over W_d(F_q) whose (i,j) entry has
// p-valuation at least e_i - e_j.
class GModule {
public:
    GModule() = default;

    // Extends a generator assignment along the multiplication table and
    // verifies the result on every product (not_a_homomorphism on failure).
    static GModule from_generators(GroupPtr G, const WittRing* W, std::vector<int> profile,
                                   const std::vector<WMatrix>& gen_mats);
    // Validates a full action table.
    static GModule from_action_table(GroupPtr G, const WittRing* W, std::vector<int> profile,
                                     std::vector<WMatrix> table);
    static GModule trivial(const WittRing* W, GroupPtr G, std::vector<int> profile);
    static GModule permutation(const WittRing* W, const GSet& X);

    const WittRing* ring() const { return W_; }
    GroupPtr group() const { return G_; }
    int d() const { return W_->d(); }
    const std::vector<int>& profile() const { return profile_; }
    int rank() const { return int(profile_.size()); }
    bool is_free() const;
    const WMatrix& action(int g) const { return act_[size_t(g)]; }

    ModElt zero_elt() const;
    ModElt basis_elt(int slot, int fq_index) const; // tau(x^fq_index) in that slot
    ModElt canonical(ModElt x) const;
    ModElt apply(int g, const ModElt& x) const;
    ModElt add(const ModElt& x, const ModElt& y) const;
    ModElt sub(const ModElt& x, const ModElt& y) const;
    ModElt scale(const WittVec& s, const ModElt& x) const;
    bool elt_is_zero(const ModElt& x) const;
    bool elt_equal(const ModElt& x, const ModElt& y) const;
    // Matrices agreeing as maps on this module (entries compared mod p^(e_row)).
    bool maps_equal(const WMatrix& A, const WMatrix& B) const;

    bool same_shape(const GModule& o) const;
    bool equal_actions(const GModule& o) const; // same shape and identical action maps
    // Reinterpret over a group object with an identical multiplication table
    // (used when one subgroup is reachable through two parent chains).
    GModule with_group(GroupPtr H) const;

    // Flattened Z/p^D picture ("scaled" coordinates: a slot of torsion e is
    // embedded in Z/p^D by multiplication with p^(D-e)).
    struct Flat {
        ZpdRing R;
        int dim = 0;
        std::vector<int> tor;      // per flat coordinate
        std::vector<ZpdMat> act;   // ambient matrices respecting the lattice
        ZpdMat lattice;            // diag(p^(D - tor_j))
    };
    Flat flatten(int D) const;
    ZpdVec flatten_elt(int D, const ModElt& x) const;
    ModElt unflatten_elt(int D, const ZpdVec& v) const;

    std::string describe() const;

private:
    void check_wellformed() const;
    const WittRing* W_ = nullptr;
    GroupPtr G_;
    std::vector<int> profile_;
    std::vector<WMatrix> act_;
};

// A morphism of modules over the same group (the rings may have different
// lengths; entries live over W_max and targets are truncated slotwise).
struct GModMap {
    GModule src, dst;
    WMatrix mat; // dst.rank x src.rank over W_max(d_src, d_dst)

    static GModMap identity(const GModule& M);
    static GModMap zero(const GModule& src, const GModule& dst);
    // The canonical reduction M -> M{r}.
    static GModMap reduction(const GModule& M, int r);

    ModElt apply(const ModElt& x) const;
    bool is_equivariant() const;
    // Ambient flat matrix at precision D (columns respect both lattices).
    ZpdMat flat_matrix(int D) const;
    GModMap compose(const GModMap& inner) const; // this ∘ inner
};

// hom / dual / tensor / direct sum / fixed points
GModule direct_sum(const GModule& A, const GModule& B);
GModule tensor(const GModule& A, const GModule& B);
// Hom(A, B) with action f -> rho_B(g) f rho_A(g)^-1; A must be free.
// Basis E_(s,t) indexed by s * rank(A) + t (s in B, t in A).
GModule hom_module(const GModule& A, const GModule& B);
GModule dual_module(const GModule& A);
// View a matrix f: A -> B as an element of hom_module(A, B) and back.
ModElt hom_elt(const GModule& H, const WMatrix& f, const GModule& A, const GModule& B);
WMatrix hom_elt_matrix(const GModule& H, const ModElt& x, const GModule& A, const GModule& B);

struct FixedPoints {
    std::vector<ModElt> basis; // elements of the ambient module
    std::vector<int> profile;  // torsion profile of the fixed submodule
    GModule as_module;         // trivial module over H with this profile
};
FixedPoints fixed_points(const GModule& M, const Subgroup& H);

// Multiplicative character into W_e(F_q)^x, stored per group element.
struct Character {
    const WittRing* W = nullptr;
    GroupPtr G;
    std::vector<WittVec> values;

    static Character trivial(const WittRing* W, GroupPtr G);
    static Character from_values(const WittRing* W, GroupPtr G, std::vector<WittVec> values);
    const WittVec& operator()(int g) const { return values[size_t(g)]; }
    Character power(int i) const;
    Character reduced(int r) const;
    Character restricted(const Subgroup& H) const; // over H.as_group()
    GModule rank1_module() const;
    bool is_trivial() const;
    bool equal(const Character& o) const;
};

// Entrywise unit twist by chi^i (chi over W_e with e >= d_M).
GModule twist(const GModule& M, const Character& chi, int i);
// Entrywise i-th Frobenius twist of the action.
GModule frobenius_twist(const GModule& M, int i);

GModule restrict_module(const GModule& M, const Subgroup& H);
// Induction along G_0 <= G; M lives over G_0.as_group(). Basis ordered by
// (coset of the minimal representative, module slot).
GModule induce(const GModule& M, const Subgroup& G0);
GModule reduce_module(const GModule& M, int r);
// Re-express over a larger field along the embedding sending the modulus
// root to `root` (or the first root when absent).
GModule extend_scalars(const GModule& M, const FieldDesc* big,
                       std::optional<FqElem> root = std::nullopt);
FqElem find_embedding_root(const FieldDesc* small, const FieldDesc* big);

// The diagonal/norm splitting of Ind_{G0}^G Res_{G0} V for [G:G0] prime
// to p: e = i ∘ (1/index) ∘ N is an idempotent with image i(V), and the
// complement W = ker(N) is free with an explicit basis.
struct NormSplitting {
    GModule induced;     // Ind_{G0}^G Res_{G0}(V)
    WMatrix i_map;       // V -> induced (diagonal)
    WMatrix n_map;       // induced -> V (norm)
    WMatrix idempotent;  // e, with e^2 = e exactly
    GModule complement;  // W, free
    WMatrix w_basis;     // induced-coordinates of W's basis (cols)
    WMatrix basis_change; // S = [i-basis | w-basis]; S^-1 rho_ind S = diag(V, W)
};
NormSplitting norm_splitting(const GModule& V, const Subgroup& G0);

} // namespace wittlift
