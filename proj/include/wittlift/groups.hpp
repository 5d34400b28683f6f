#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittlift/error.hpp"

namespace wittlift {

inline constexpr int kGroupClosureBudget = 5000;
inline constexpr int kSubgroupEnumBudget = 128;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
    GroupPtr parent;
    std::vector<int> elements; // sorted, contains 0

    int order() const { return int(elements.size()); }
    bool contains(int g) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
    bool operator<(const Subgroup& o) const {
        if (elements.size() != o.elements.size()) return elements.size() < o.elements.size();
        return elements < o.elements;
    }
    // The subgroup as a group of its own, with elements relabeled in sorted
    // order (so the identity stays index 0), plus the index map back.
    struct AsGroup {
        GroupPtr group;
        std::vector<int> to_parent;        // sub index -> parent index
        std::vector<int> from_parent;      // parent index -> sub index or -1
    };
    AsGroup as_group() const;
};

// A finite group as a full multiplication table. Element 0 is the identity.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
public:
    // Closure of permutation generators of {0..degree-1}; element 0 is the
    // identity permutation.
    static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& gens);
    // Full table (group axioms verified; identity relabeled to index 0 when
    // needed); generators default to a deterministic greedy generating set.
    static GroupPtr from_table(std::vector<std::vector<int>> table,
                               std::vector<int> generators = {});

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[size_t(a)][size_t(b)]; }
    int inv(int a) const { return inv_[size_t(a)]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    const std::vector<int>& generators() const { return gens_; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    int element_order(int g) const;
    bool is_abelian() const;
    bool is_cyclic() const;
    int cyclic_generator() const; // not_cyclic if none

    // BFS word tree over the generators: elements listed in discovery order;
    // parent/gen give each non-identity element as gen * parent.
    struct WordTree {
        std::vector<int> order;  // BFS discovery order, order[0] == 0
        std::vector<int> parent; // indexed by element
        std::vector<int> gen;    // index into generators()
    };
    const WordTree& word_tree() const { return tree_; }

    std::vector<int> closure(std::vector<int> seed) const; // sorted subgroup elements

    // Every subgroup, sorted by (order, elements); cached.
    const std::vector<Subgroup>& subgroups() const;
    Subgroup sylow(int p) const;
    Subgroup trivial_subgroup() const;
    Subgroup full_subgroup() const;
    Subgroup subgroup(std::vector<int> elements) const; // validates closure

    std::vector<int> commutator_subgroup() const;
    // Quotient by a normal subgroup: the quotient group plus the projection
    // (element -> quotient index).
    struct Quotient {
        GroupPtr group;
        std::vector<int> proj;
    };
    Quotient quotient(const std::vector<int>& normal_elements) const;
    Quotient abelianization() const;

    std::string describe() const;

private:
    FiniteGroup() = default;
    void finish_construction(std::vector<int> generators);
    int n_ = 0;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    WordTree tree_;
    mutable std::vector<Subgroup> subgroups_; // lazily filled
};

// A finite G-set given by its full action table.
struct GSet {
    GroupPtr group;
    int size = 0;
    std::vector<std::vector<int>> act; // act[g][x] = g . x

    static GSet trivial(GroupPtr G, int npoints);
    static GSet regular(GroupPtr G);
    // Left cosets of H, points ordered by their minimal element.
    static GSet cosets(GroupPtr G, const std::vector<int>& H);
    // Product with diagonal action; point (x, y) has index x * Y.size + y.
    static GSet product(const GSet& X, const GSet& Y);

    void validate() const;
    int apply(int g, int x) const { return act[size_t(g)][size_t(x)]; }
};

struct Orbit {
    std::vector<int> points; // sorted
    int base = 0;            // minimal point
    Subgroup stabilizer;     // of base, inside the acting subgroup
};

// Orbit decomposition of X under the subgroup with the given parent-indexed
// elements. |orbit| * |stabilizer| = |G0| for every orbit.
std::vector<Orbit> orbits(const GSet& X, const Subgroup& G0);
std::vector<Orbit> orbits(const GSet& X); // full group

} // namespace wittlift
