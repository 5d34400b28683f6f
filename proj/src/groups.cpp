#include "wittlift/groups.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace wittlift {

namespace {

std::vector<int> perm_mul(const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<int> r(s.size());
    for (size_t i = 0; i < s.size(); ++i) r[i] = s[static_cast<size_t>(t[i])];
    return r;
}

} // namespace

bool Subgroup::contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup::AsGroup Subgroup::as_group() const {
    // Interned: repeated calls for the same (parent, elements) return the same
    // group object, so pointer-identity of groups stays meaningful downstream.
    static std::mutex mu;
    static std::map<std::pair<const FiniteGroup*, std::vector<int>>, AsGroup> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(parent.get(), elements);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    int n = order();
    std::vector<int> from_parent(static_cast<size_t>(parent->order()), -1);
    for (int i = 0; i < n; ++i) from_parent[static_cast<size_t>(elements[static_cast<size_t>(i)])] = i;
    std::vector<std::vector<int>> table(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int prod = parent->mul(elements[static_cast<size_t>(i)], elements[static_cast<size_t>(j)]);
            int idx = from_parent[static_cast<size_t>(prod)];
            require(idx >= 0, errc::not_a_subgroup, "element set is not closed");
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = idx;
        }
    AsGroup out;
    out.group = FiniteGroup::from_table(std::move(table));
    out.to_parent = elements;
    out.from_parent = std::move(from_parent);
    cache.emplace(std::move(key), out);
    return out;
}

GroupPtr FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& gens) {
    require(degree >= 1, errc::bad_request, "permutation degree must be positive");
    for (const auto& g : gens) {
        require(int(g.size()) == degree, errc::not_a_permutation, "generator has wrong degree");
        std::vector<bool> seen(static_cast<size_t>(degree), false);
        for (int v : g) {
            require(v >= 0 && v < degree && !seen[static_cast<size_t>(v)], errc::not_a_permutation,
                    "generator is not a permutation");
            seen[static_cast<size_t>(v)] = true;
        }
    }
    std::vector<int> id(static_cast<size_t>(degree));
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    // BFS closure, generators in the given order
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            std::vector<int> prod = perm_mul(g, elems[head]);
            if (index.emplace(prod, int(elems.size())).second) {
                elems.push_back(std::move(prod));
                require(int(elems.size()) <= kGroupClosureBudget, errc::budget_exceeded,
                        "group closure exceeds " + std::to_string(kGroupClosureBudget));
            }
        }
    }
    int n = int(elems.size());
    auto Graw = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    Graw->n_ = n;
    Graw->table_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Graw->table_[static_cast<size_t>(a)][static_cast<size_t>(b)] = index.at(perm_mul(elems[static_cast<size_t>(a)], elems[static_cast<size_t>(b)]));
    std::vector<int> gen_idx;
    for (const auto& g : gens)
        if (int gi = index.at(g); gi != 0) gen_idx.push_back(gi);
    if (gen_idx.empty()) gen_idx.push_back(0); // trivial group keeps the identity as generator
    Graw->finish_construction(std::move(gen_idx));
    return Graw;
}

GroupPtr FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<int> generators) {
    int n = int(table.size());
    require(n >= 1, errc::not_a_group, "empty multiplication table");
    for (const auto& row : table) {
        require(int(row.size()) == n, errc::not_a_group, "table is not square");
        for (int v : row) require(v >= 0 && v < n, errc::not_a_group, "table entry out of range");
    }
    // locate the identity
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n; ++b) ok = ok && table[static_cast<size_t>(a)][static_cast<size_t>(b)] == b && table[static_cast<size_t>(b)][static_cast<size_t>(a)] == b;
        if (ok) e = a;
    }
    require(e >= 0, errc::not_a_group, "table has no identity element");
    if (e != 0) {
        // relabel by the transposition 0 <-> e
        auto relabel = [&](int v) { return v == 0 ? e : v == e ? 0 : v; };
        std::vector<std::vector<int>> t2(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t2[static_cast<size_t>(relabel(a))][static_cast<size_t>(relabel(b))] = relabel(table[static_cast<size_t>(a)][static_cast<size_t>(b)]);
        table = std::move(t2);
        for (int& g : generators) g = relabel(g);
    }
    auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    G->n_ = n;
    G->table_ = std::move(table);
    G->finish_construction(std::move(generators));
    return G;
}

void FiniteGroup::finish_construction(std::vector<int> generators) {
    int n = n_;
    // associativity and inverses
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                require(mul(mul(a, b), c) == mul(a, mul(b, c)), errc::not_a_group,
                        "multiplication table is not associative");
    inv_.assign(static_cast<size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inv_[static_cast<size_t>(a)] = b;
                break;
            }
        require(inv_[static_cast<size_t>(a)] >= 0, errc::not_a_group, "element without inverse");
    }
    if (generators.empty()) {
        // deterministic greedy generating set
        std::vector<int> have = closure({0});
        while (int(have.size()) < n) {
            int next = -1;
            for (int g = 0; g < n && next < 0; ++g)
                if (!std::binary_search(have.begin(), have.end(), g)) next = g;
            generators.push_back(next);
            std::vector<int> seed = have;
            seed.push_back(next);
            have = closure(seed);
        }
        if (generators.empty()) generators.push_back(0);
    }
    gens_ = std::move(generators);
    // verify the generators generate
    {
        std::vector<int> seed = gens_;
        seed.push_back(0);
        require(int(closure(seed).size()) == n, errc::not_a_group,
                "generators do not generate the group");
    }
    // BFS word tree
    tree_.parent.assign(static_cast<size_t>(n), -1);
    tree_.gen.assign(static_cast<size_t>(n), -1);
    tree_.order.clear();
    tree_.order.push_back(0);
    std::vector<bool> seen(static_cast<size_t>(n), false);
    seen[0] = true;
    for (size_t head = 0; head < tree_.order.size(); ++head) {
        int x = tree_.order[head];
        for (int gi = 0; gi < int(gens_.size()); ++gi) {
            int y = mul(gens_[static_cast<size_t>(gi)], x);
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = true;
                tree_.parent[static_cast<size_t>(y)] = x;
                tree_.gen[static_cast<size_t>(y)] = gi;
                tree_.order.push_back(y);
            }
        }
    }
}

int FiniteGroup::element_order(int g) const {
    int o = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++o;
    }
    return o;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool FiniteGroup::is_cyclic() const {
    for (int g = 0; g < n_; ++g)
        if (element_order(g) == n_) return true;
    return false;
}

int FiniteGroup::cyclic_generator() const {
    for (int g = 0; g < n_; ++g)
        if (element_order(g) == n_) return g;
    fail(errc::not_cyclic, "group has no generator of full order");
}

std::vector<int> FiniteGroup::closure(std::vector<int> seed) const {
    std::vector<bool> in(static_cast<size_t>(n_), false);
    std::vector<int> stack;
    auto push = [&](int v) {
        if (!in[static_cast<size_t>(v)]) {
            in[static_cast<size_t>(v)] = true;
            stack.push_back(v);
        }
    };
    push(0);
    for (int v : seed) push(v);
    std::vector<int> members = stack;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (size_t i = 0; i < members.size(); ++i) {
            int y = members[i];
            for (int z : {mul(x, y), mul(y, x), inv(x)}) {
                if (!in[static_cast<size_t>(z)]) {
                    in[static_cast<size_t>(z)] = true;
                    stack.push_back(z);
                    members.push_back(z);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

const std::vector<Subgroup>& FiniteGroup::subgroups() const {
    if (!subgroups_.empty()) return subgroups_;
    require(n_ <= kSubgroupEnumBudget, errc::budget_exceeded,
            "subgroup enumeration capped at order " + std::to_string(kSubgroupEnumBudget));
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier{closure({0})};
    found.insert(frontier[0]);
    // close each known subgroup with one more element until fixpoint
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& S : frontier) {
            for (int g = 1; g < n_; ++g) {
                if (std::binary_search(S.begin(), S.end(), g)) continue;
                std::vector<int> seed = S;
                seed.push_back(g);
                std::vector<int> T = closure(seed);
                if (found.insert(T).second) next.push_back(std::move(T));
            }
        }
        frontier = std::move(next);
    }
    auto self = shared_from_this();
    for (auto& els : found) subgroups_.push_back(Subgroup{self, els});
    std::sort(subgroups_.begin(), subgroups_.end());
    return subgroups_;
}

Subgroup FiniteGroup::sylow(int p) const {
    int pv = 1;
    while ((n_ / pv) % p == 0) pv *= p;
    const Subgroup* best = nullptr;
    for (const auto& S : subgroups())
        if (S.order() == pv) {
            best = &S;
            break;
        }
    require(best != nullptr, errc::internal_integrality_failure, "Sylow subgroup not found");
    return *best;
}

Subgroup FiniteGroup::trivial_subgroup() const { return Subgroup{shared_from_this(), {0}}; }

Subgroup FiniteGroup::full_subgroup() const {
    std::vector<int> all(static_cast<size_t>(n_));
    std::iota(all.begin(), all.end(), 0);
    return Subgroup{shared_from_this(), all};
}

Subgroup FiniteGroup::subgroup(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    require(!elements.empty() && elements.front() == 0, errc::not_a_subgroup,
            "subgroup must contain the identity");
    require(closure(elements) == elements, errc::not_a_subgroup, "element set is not closed");
    return Subgroup{shared_from_this(), std::move(elements)};
}

std::vector<int> FiniteGroup::commutator_subgroup() const {
    std::vector<int> comms;
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) comms.push_back(mul(mul(a, b), mul(inv(a), inv(b))));
    return closure(std::move(comms));
}

FiniteGroup::Quotient FiniteGroup::quotient(const std::vector<int>& normal_elements) const {
    // left cosets, indexed by minimal representative order
    std::vector<int> coset_of(static_cast<size_t>(n_), -1);
    std::vector<int> reps;
    for (int g = 0; g < n_; ++g) {
        if (coset_of[static_cast<size_t>(g)] >= 0) continue;
        int idx = int(reps.size());
        reps.push_back(g);
        for (int h : normal_elements) {
            int gh = mul(g, h);
            require(coset_of[static_cast<size_t>(gh)] == -1 || coset_of[static_cast<size_t>(gh)] == idx, errc::not_a_subgroup,
                    "quotient by a non-subgroup");
            coset_of[static_cast<size_t>(gh)] = idx;
        }
    }
    int q = int(reps.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(q), std::vector<int>(static_cast<size_t>(q)));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = coset_of[static_cast<size_t>(mul(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]))];
    // normality check: the table must be well-defined on all coset members
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            require(coset_of[static_cast<size_t>(mul(a, b))] ==
                        table[static_cast<size_t>(coset_of[static_cast<size_t>(a)])][static_cast<size_t>(coset_of[static_cast<size_t>(b)])],
                    errc::not_a_subgroup, "quotient by a non-normal subgroup");
    Quotient out;
    out.group = from_table(std::move(table));
    out.proj = std::move(coset_of);
    return out;
}

FiniteGroup::Quotient FiniteGroup::abelianization() const { return quotient(commutator_subgroup()); }

std::string FiniteGroup::describe() const {
    std::ostringstream os;
    os << "group of order " << n_;
    return os.str();
}

GSet GSet::trivial(GroupPtr G, int npoints) {
    GSet X;
    X.group = std::move(G);
    X.size = npoints;
    std::vector<int> id(static_cast<size_t>(npoints));
    std::iota(id.begin(), id.end(), 0);
    X.act.assign(static_cast<size_t>(X.group->order()), id);
    return X;
}

GSet GSet::regular(GroupPtr G) {
    GSet X;
    X.size = G->order();
    X.act.assign(static_cast<size_t>(G->order()), std::vector<int>(static_cast<size_t>(G->order())));
    for (int g = 0; g < G->order(); ++g)
        for (int x = 0; x < G->order(); ++x) X.act[static_cast<size_t>(g)][static_cast<size_t>(x)] = G->mul(g, x);
    X.group = std::move(G);
    return X;
}

GSet GSet::cosets(GroupPtr G, const std::vector<int>& H) {
    std::vector<int> coset_of(static_cast<size_t>(G->order()), -1);
    std::vector<int> reps;
    for (int g = 0; g < G->order(); ++g) {
        if (coset_of[static_cast<size_t>(g)] >= 0) continue;
        int idx = int(reps.size());
        reps.push_back(g);
        for (int h : H) coset_of[static_cast<size_t>(G->mul(g, h))] = idx;
    }
    GSet X;
    X.size = int(reps.size());
    X.act.assign(static_cast<size_t>(G->order()), std::vector<int>(static_cast<size_t>(X.size)));
    for (int g = 0; g < G->order(); ++g)
        for (int c = 0; c < X.size; ++c)
            X.act[static_cast<size_t>(g)][static_cast<size_t>(c)] = coset_of[static_cast<size_t>(G->mul(g, reps[static_cast<size_t>(c)]))];
    X.group = std::move(G);
    return X;
}

GSet GSet::product(const GSet& X, const GSet& Y) {
    require(X.group == Y.group, errc::shape_mismatch, "product of G-sets over different groups");
    GSet P;
    P.group = X.group;
    P.size = X.size * Y.size;
    P.act.assign(static_cast<size_t>(P.group->order()), std::vector<int>(static_cast<size_t>(P.size)));
    for (int g = 0; g < P.group->order(); ++g)
        for (int x = 0; x < X.size; ++x)
            for (int y = 0; y < Y.size; ++y)
                P.act[static_cast<size_t>(g)][static_cast<size_t>(x * Y.size + y)] =
                    X.apply(g, x) * Y.size + Y.apply(g, y);
    return P;
}

void GSet::validate() const {
    require(int(act.size()) == group->order(), errc::bad_request, "action table has wrong height");
    for (int x = 0; x < size; ++x)
        require(apply(0, x) == x, errc::bad_request, "identity must act trivially");
    for (int g = 0; g < group->order(); ++g) {
        std::vector<bool> seen(static_cast<size_t>(size), false);
        for (int x = 0; x < size; ++x) {
            int y = apply(g, x);
            require(y >= 0 && y < size && !seen[static_cast<size_t>(y)], errc::not_a_permutation,
                    "group element does not act by a permutation");
            seen[static_cast<size_t>(y)] = true;
        }
        for (int h = 0; h < group->order(); ++h)
            for (int x = 0; x < size; ++x)
                require(apply(group->mul(g, h), x) == apply(g, apply(h, x)), errc::bad_request,
                        "action is incompatible with the group law");
    }
}

std::vector<Orbit> orbits(const GSet& X, const Subgroup& G0) {
    require(G0.parent == X.group, errc::not_a_subgroup, "acting subgroup of a different group");
    std::vector<bool> used(static_cast<size_t>(X.size), false);
    std::vector<Orbit> out;
    for (int x0 = 0; x0 < X.size; ++x0) {
        if (used[static_cast<size_t>(x0)]) continue;
        Orbit orb;
        orb.base = x0;
        std::vector<int> stab;
        std::set<int> pts;
        for (int g : G0.elements) {
            int y = X.apply(g, x0);
            pts.insert(y);
            if (y == x0) stab.push_back(g);
        }
        orb.points.assign(pts.begin(), pts.end());
        for (int y : orb.points) used[static_cast<size_t>(y)] = true;
        orb.stabilizer = Subgroup{X.group, std::move(stab)};
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<Orbit> orbits(const GSet& X) { return orbits(X, X.group->full_subgroup()); }

} // namespace wittlift
