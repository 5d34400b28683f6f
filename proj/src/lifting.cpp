#include "wittlift/lifting.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace wittlift {

namespace {

long powl_of(int p, int e) {
    long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

} // namespace

const char* lift_status_name(LiftStatus s) {
    switch (s) {
        case LiftStatus::lifted: return "lifted";
        case LiftStatus::stably_lifted: return "stably_lifted";
        case LiftStatus::obstructed: return "obstructed";
        case LiftStatus::certificate_failed: return "certificate_failed";
        case LiftStatus::budget: return "budget";
        case LiftStatus::not_found: return "not_found";
    }
    return "unknown";
}

IsLiftResult is_lift(const GModule& big, const GModule& small) {
    require(big.group() == small.group(), errc::shape_mismatch, "lift comparison across groups");
    require(big.ring()->field() == small.ring()->field(), errc::mixed_rings,
            "lift comparison across fields");
    require(small.d() <= big.d(), errc::bad_length, "the base has longer coefficients");
    if (big.rank() != small.rank()) return {};
    GModule red = reduce_module(big, small.d());
    if (red.profile() != small.profile()) return {};
    if (red.equal_actions(small)) return {true, true, std::nullopt};
    if (!red.is_free() || !small.is_free()) return {};

    // search for an invertible equivariant intertwiner T with T red T^-1 = small
    int D = small.d();
    const WittRing* W = small.ring();
    int p = W->p(), m = W->field()->m();
    int fd = small.rank() * m;
    ZpdRing R(p, D);
    GModule::Flat Fr = red.flatten(D), Fs = small.flatten(D);
    // constraints: X A_g - B_g X = 0 for generators, plus commutation with the
    // Teichmueller scalar when m > 1 (then Z-linear + scalar-commuting = W-linear)
    std::vector<ZpdMat> constraint_pairs; // pairs (A, B): X A = B X
    for (int g : small.group()->generators()) {
        constraint_pairs.push_back(Fr.act[static_cast<size_t>(g)]);
        constraint_pairs.push_back(Fs.act[static_cast<size_t>(g)]);
    }
    if (m > 1) {
        WMatrix sc = WMatrix::identity(W, small.rank()).scaled(W->teichmuller(FqElem::gen(W->field())));
        GModMap scal_r{red, red, sc};
        GModMap scal_s{small, small, sc};
        constraint_pairs.push_back(scal_r.flat_matrix(D));
        constraint_pairs.push_back(scal_s.flat_matrix(D));
    }
    int nunk = fd * fd;
    ZpdMat sys = ZpdMat::zeros(R, int(constraint_pairs.size() / 2) * nunk, nunk);
    for (size_t c = 0; c + 1 < constraint_pairs.size(); c += 2) {
        const ZpdMat& A = constraint_pairs[c];
        const ZpdMat& B = constraint_pairs[c + 1];
        int base = int(c / 2) * nunk;
        // row (i,j): sum_a X_(i,a) A_(a,j) - sum_a B_(i,a) X_(a,j)
        for (int i = 0; i < fd; ++i)
            for (int j = 0; j < fd; ++j) {
                int r = base + i * fd + j;
                for (int a = 0; a < fd; ++a) {
                    sys.at(r, i * fd + a) = R.add(sys.at(r, i * fd + a), A.at(a, j));
                    sys.at(r, a * fd + j) = R.sub(sys.at(r, a * fd + j), B.at(i, a));
                }
            }
    }
    ZpdMat K = zkernel(R, normal_form(R, sys));
    long combos = 1;
    bool truncated = false;
    for (int i = 0; i < K.cols && !truncated; ++i) {
        combos *= p;
        if (combos > kIntertwinerBudget) truncated = true;
    }
    long sweep = truncated ? kIntertwinerBudget : combos;
    ZpdRing Rp(p, 1);
    for (long code = 1; code < sweep; ++code) {
        ZpdVec x(static_cast<size_t>(nunk), 0);
        long cc = code;
        for (int k = 0; k < K.cols; ++k) {
            long coeff = cc % p;
            cc /= p;
            if (coeff == 0) continue;
            for (int i = 0; i < nunk; ++i)
                x[static_cast<size_t>(i)] = R.add(x[static_cast<size_t>(i)], R.mul(coeff, K.at(i, k)));
        }
        // invertible mod p?
        ZpdMat Xp = ZpdMat::zeros(Rp, fd, fd);
        for (int i = 0; i < fd; ++i)
            for (int j = 0; j < fd; ++j) Xp.at(i, j) = x[static_cast<size_t>(i * fd + j)] % p;
        auto nfp = normal_form(Rp, Xp);
        bool inv = true;
        for (int v : nfp.nf.val) inv = inv && v == 0;
        if (!inv) continue;
        // convert to a W-matrix through the columns on basis elements
        WMatrix T = WMatrix::zeros(W, small.rank(), small.rank());
        for (int j = 0; j < small.rank(); ++j) {
            ZpdVec col(static_cast<size_t>(fd), 0);
            for (int i = 0; i < fd; ++i) col[static_cast<size_t>(i)] = x[static_cast<size_t>(i * fd + j * m)];
            ModElt e = small.unflatten_elt(D, col);
            for (int i = 0; i < small.rank(); ++i) T.at(i, j) = e[static_cast<size_t>(i)];
        }
        // exact verification over the whole group
        bool good = true;
        for (int g = 0; g < small.group()->order() && good; ++g)
            good = (T * red.action(g)) == (small.action(g) * T);
        if (!good) continue;
        return {true, false, T};
    }
    // a fully swept span proves non-isomorphism; a truncated one does not
    require(!truncated, errc::budget_exceeded, "intertwiner search space too large");
    return {};
}

ObstructionReport obstruction_p_next(const GModule& rho) {
    const WittRing* W = rho.ring();
    int r = W->d();
    require(r + 1 <= kMaxWittLen, errc::bad_length, "target torsion exceeds the supported length");
    require(rho.is_free(), errc::not_free, "obstruction theory runs on free modules");
    const WittRing* Wup = WittRing::get(W->field(), r + 1);
    const auto& G = *rho.group();

    ObstructionReport rep;
    rep.base = rho;
    for (int g = 0; g < G.order(); ++g) rep.set_lift.push_back(rho.action(g).lifted(Wup));

    GModule V1 = reduce_module(rho, 1);
    rep.coeffs = frobenius_twist(hom_module(V1, V1), r);
    rep.cocycle = Cochain::zero(rep.coeffs, 2);
    const WittRing* W1 = V1.ring();
    for (int g = 0; g < G.order(); ++g) {
        for (int h = 0; h < G.order(); ++h) {
            WMatrix c = rep.set_lift[static_cast<size_t>(g)] * rep.set_lift[static_cast<size_t>(h)] *
                        rep.set_lift[static_cast<size_t>(G.mul(g, h))].inverse();
            WMatrix mm = WMatrix::zeros(W1, rho.rank(), rho.rank());
            WMatrix I = WMatrix::identity(Wup, rho.rank());
            for (int i = 0; i < rho.rank(); ++i)
                for (int j = 0; j < rho.rank(); ++j) {
                    WittVec diff = c.at(i, j) - I.at(i, j);
                    for (int k = 0; k < r; ++k)
                        require(diff.coord(k).is_zero(), errc::internal_integrality_failure,
                                "set-theoretic lift defect is not p^r-divisible");
                    mm.at(i, j) = W1->teichmuller(diff.coord(r));
                }
            rep.cocycle.at2(g, h) = hom_elt(rep.coeffs, mm, V1, V1);
        }
    }
    require(is_cocycle(rep.cocycle), errc::internal_integrality_failure,
            "obstruction table violates the cocycle identity");
    rep.h2 = cohomology_group(rep.coeffs, 2);
    rep.klass = rep.h2.coordinates(rep.cocycle);
    rep.vanishes = true;
    for (long c : rep.klass) rep.vanishes = rep.vanishes && c == 0;

    if (rep.vanishes) {
        // solve d(u) = -cocycle over the normalized degree-1 lattice
        const GModule& M = rep.coeffs;
        int n = G.order();
        int fdim = M.rank() * M.ring()->field()->m();
        int D = M.d();
        ZpdRing R(M.ring()->p(), D);
        std::vector<Cochain> basis;
        for (int s = 1; s < n; ++s)
            for (int j = 0; j < M.rank(); ++j)
                for (int l = 0; l < M.ring()->field()->m(); ++l) {
                    Cochain b = Cochain::zero(M, 1);
                    b.at1(s) = M.basis_elt(j, l);
                    basis.push_back(std::move(b));
                }
        ZpdMat D1 = ZpdMat::zeros(R, (n - 1) * (n - 1) * fdim, int(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j) {
            ZpdVec col = rep.h2.to_ambient(differential(basis[j]));
            for (size_t i = 0; i < col.size(); ++i) D1.at(int(i), int(j)) = col[i];
        }
        Cochain neg = Cochain::zero(M, 2).sub(rep.cocycle);
        ZpdVec b = rep.h2.to_ambient(neg);
        ZpdVec y;
        require(zsolve(R, normal_form(R, D1), b, y), errc::internal_integrality_failure,
                "vanishing class admits no cobounding cochain");
        Cochain u = Cochain::zero(M, 1);
        for (size_t j = 0; j < basis.size(); ++j) {
            Cochain scaled = basis[j];
            for (auto& slot : scaled.table) slot = M.scale(M.ring()->from_int(y[j]), slot);
            u = u.add(scaled);
        }
        rep.cobounding = std::move(u);
    }
    return rep;
}

GModule solve_lift(const ObstructionReport& rep) {
    require(rep.vanishes, errc::class_nonzero, "obstruction class is nonzero");
    const GModule& rho = rep.base;
    const WittRing* W = rho.ring();
    int r = W->d();
    const WittRing* Wup = WittRing::get(W->field(), r + 1);
    GModule V1 = reduce_module(rho, 1);
    const auto& G = *rho.group();
    const Cochain& u = *rep.cobounding;

    std::vector<WMatrix> table;
    for (int g = 0; g < G.order(); ++g) {
        WMatrix z = hom_elt_matrix(rep.coeffs, u.at1(g), V1, V1);
        WMatrix corr = WMatrix::identity(Wup, rho.rank());
        for (int i = 0; i < rho.rank(); ++i)
            for (int j = 0; j < rho.rank(); ++j) {
                std::vector<FqElem> coords(static_cast<size_t>(r + 1), FqElem::zero(W->field()));
                coords[static_cast<size_t>(r)] = z.at(i, j).coord(0);
                corr.at(i, j) = corr.at(i, j) + Wup->from_coords(coords);
            }
        table.push_back(corr * rep.set_lift[static_cast<size_t>(g)]);
    }
    GModule lift = GModule::from_action_table(rho.group(), Wup,
                                              std::vector<int>(static_cast<size_t>(rho.rank()), r + 1),
                                              std::move(table));
    require(is_lift(lift, rho).on_the_nose, errc::internal_integrality_failure,
            "corrected lift does not reduce to the base");
    return lift;
}

BruteForceResult brute_force_lift(const GModule& rho, long budget) {
    const WittRing* W = rho.ring();
    int r = W->d();
    require(r + 1 <= kMaxWittLen, errc::bad_length, "target torsion exceeds the supported length");
    const WittRing* Wup = WittRing::get(W->field(), r + 1);
    const auto& G = *rho.group();
    const auto& gens = G.generators();
    long q = W->field()->q();
    int n = rho.rank();
    int digits = int(gens.size()) * n * n;
    long total = 1;
    for (int i = 0; i < digits; ++i) {
        total *= q;
        require(total <= budget, errc::budget_exceeded,
                "brute-force search space exceeds the budget");
    }

    BruteForceResult res;
    const auto& tree = G.word_tree();
    // per-generator coordinate lifts passing the order relation, in
    // lexicographic order (entry (0,0) most significant); pruning by the
    // order relation keeps the overall lexicographic order intact
    long per_gen = 1;
    for (int i = 0; i < n * n; ++i) per_gen *= q;
    std::vector<std::vector<WMatrix>> cands(gens.size());
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int o = G.element_order(gens[gi]);
        for (long code = 0; code < per_gen; ++code) {
            WMatrix cand = WMatrix::zeros(Wup, n, n);
            long c = code;
            for (int e = n * n - 1; e >= 0; --e) {
                int i = e / n, j = e % n;
                long digit = c % q;
                c /= q;
                std::vector<FqElem> coords;
                for (int k = 0; k < r; ++k)
                    coords.push_back(rho.action(gens[gi]).at(i, j).coord(k));
                coords.push_back(FqElem::from_index(W->field(), digit));
                cand.at(i, j) = Wup->from_coords(coords);
            }
            WMatrix pw = WMatrix::identity(Wup, n);
            for (int k = 0; k < o; ++k) pw = pw * cand;
            if (pw == WMatrix::identity(Wup, n)) cands[gi].push_back(std::move(cand));
        }
        if (cands[gi].empty()) {
            res.exhausted = true;
            return res;
        }
    }
    std::vector<size_t> pick(gens.size(), 0);
    for (;;) {
        ++res.tried;
        std::vector<WMatrix> table(static_cast<size_t>(G.order()), WMatrix::identity(Wup, n));
        for (int idx = 1; idx < G.order(); ++idx) {
            int y = tree.order[static_cast<size_t>(idx)];
            table[static_cast<size_t>(y)] =
                cands[static_cast<size_t>(tree.gen[static_cast<size_t>(y)])]
                     [pick[static_cast<size_t>(tree.gen[static_cast<size_t>(y)])]] *
                table[static_cast<size_t>(tree.parent[static_cast<size_t>(y)])];
        }
        bool ok = true;
        for (size_t gi = 0; gi < gens.size() && ok; ++gi)
            for (int x = 0; x < G.order() && ok; ++x)
                ok = table[static_cast<size_t>(G.mul(gens[gi], x))] ==
                     cands[gi][pick[gi]] * table[static_cast<size_t>(x)];
        if (ok) {
            res.found = true;
            res.lift = GModule::from_action_table(rho.group(), Wup,
                                                  std::vector<int>(static_cast<size_t>(n), r + 1),
                                                  std::move(table));
            return res;
        }
        // odometer, generator 0 most significant
        int pos = int(gens.size()) - 1;
        while (pos >= 0) {
            if (++pick[static_cast<size_t>(pos)] < cands[static_cast<size_t>(pos)].size()) break;
            pick[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    res.exhausted = true;
    return res;
}

GModule ablift(const GModule& V, const GModule& Wmod, const GModule& Z) {
    require(Wmod.rank() == 0 || (V.group() == Wmod.group() && V.ring() == Wmod.ring()),
            errc::shape_mismatch, "summands over different rings or groups");
    GModule VW = Wmod.rank() == 0 ? V : direct_sum(V, Wmod);
    IsLiftResult il = is_lift(Z, VW);
    require(il.ok, errc::not_a_lift, "the given module does not lift the direct sum");
    const WittRing* Wup = Z.ring();
    int r = V.d();
    GModule Zc = Z;
    if (!il.on_the_nose) {
        WMatrix T = il.intertwiner->lifted(Wup);
        WMatrix Tinv = T.inverse();
        std::vector<WMatrix> table;
        for (int g = 0; g < Z.group()->order(); ++g) table.push_back(T * Z.action(g) * Tinv);
        Zc = GModule::from_action_table(Z.group(), Wup, Z.profile(), std::move(table));
    }
    int nv = V.rank(), nt = VW.rank();
    std::vector<WMatrix> table;
    for (int g = 0; g < Z.group()->order(); ++g) {
        const WMatrix& A = Zc.action(g);
        // off-diagonal blocks must vanish to order p^r
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < nt; ++j) {
                if ((i < nv) == (j < nv)) continue;
                for (int k = 0; k < r; ++k)
                    require(A.at(i, j).coord(k).is_zero(), errc::internal_integrality_failure,
                            "adapted lift has off-diagonal blocks below p^r");
            }
        WMatrix blk = WMatrix::zeros(Wup, nv, nv);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) blk.at(i, j) = A.at(i, j);
        table.push_back(std::move(blk));
    }
    GModule lift = GModule::from_action_table(V.group(), Wup,
                                              std::vector<int>(static_cast<size_t>(nv), r + 1),
                                              std::move(table));
    require(is_lift(lift, V).on_the_nose, errc::internal_integrality_failure,
            "extracted block does not reduce to the summand");
    return lift;
}

StableUpgrade stable_lift_upgrade(const GModule& V, const Subgroup& G0, const GModule& V_d) {
    require(G0.parent == V.group(), errc::not_a_subgroup, "subgroup of another group");
    auto sub = G0.as_group();
    require(V_d.group() == sub.group, errc::shape_mismatch,
            "the lift must live over the canonical subgroup labeling");
    GModule resV = restrict_module(V, G0);
    IsLiftResult il = is_lift(V_d, resV);
    require(il.ok, errc::not_a_lift, "the given module does not lift the restriction");
    const WittRing* Wbig = V_d.ring();
    GModule Vd2 = V_d;
    if (!il.on_the_nose) {
        WMatrix T = il.intertwiner->lifted(Wbig);
        WMatrix Tinv = T.inverse();
        std::vector<WMatrix> table;
        for (int g = 0; g < sub.group->order(); ++g) table.push_back(T * V_d.action(g) * Tinv);
        Vd2 = GModule::from_action_table(sub.group, Wbig, V_d.profile(), std::move(table));
    }
    NormSplitting ns = norm_splitting(V, G0);
    GModule ind = induce(Vd2, G0);
    require(reduce_module(ind, V.d()).equal_actions(ns.induced), errc::internal_integrality_failure,
            "induction does not commute with reduction");
    WMatrix S = ns.basis_change.lifted(Wbig);
    WMatrix Sinv = S.inverse();
    std::vector<WMatrix> table;
    for (int g = 0; g < V.group()->order(); ++g) table.push_back(Sinv * ind.action(g) * S);
    GModule sum_lift = GModule::from_action_table(V.group(), Wbig, ind.profile(), std::move(table));
    GModule target = ns.complement.rank() == 0 ? V : direct_sum(V, ns.complement);
    require(is_lift(sum_lift, target).on_the_nose, errc::internal_integrality_failure,
            "upgraded lift does not reduce to V ⊕ W");
    return {ns.complement, std::move(sum_lift), std::move(ns)};
}

namespace {

GModule restrict_onto(const GModule& M, const std::vector<int>& idx_map, GroupPtr H) {
    std::vector<WMatrix> table;
    for (size_t h = 0; h < idx_map.size(); ++h) table.push_back(M.action(idx_map[h]));
    return GModule::from_action_table(std::move(H), M.ring(), M.profile(), std::move(table));
}

GSet restrict_gset(const GSet& X, const std::vector<int>& idx_map, GroupPtr H) {
    GSet Y;
    Y.group = std::move(H);
    Y.size = X.size;
    for (size_t h = 0; h < idx_map.size(); ++h) Y.act.push_back(X.act[static_cast<size_t>(idx_map[h])]);
    return Y;
}

} // namespace

PermExtLiftResult permutation_extension_lift(const Subgroup& G0, const GSet& Yset,
                                             const GSet& Xset, const Extension1& ext,
                                             const Character& chi) {
    PermExtLiftResult out;
    const WittRing* We = chi.W;
    int d = We->d() - 1;
    require(d >= 1, errc::bad_length, "character ring must have length d+1 >= 2");
    require(chi.G == G0.parent, errc::shape_mismatch, "character must live over the parent group");
    require(ext.mid.d() == 1, errc::bad_length, "the extension must live at depth 1");
    auto g0g = G0.as_group();
    require(ext.mid.group() == g0g.group && Yset.group == g0g.group && Xset.group == g0g.group,
            errc::shape_mismatch, "extension data must live over the subgroup's canonical group");

    // shrink G0 to the kernel of chi mod p
    Character chibar = chi.reduced(1);
    const WittRing* W1bar = chibar.W;
    std::vector<int> shrunk;
    for (int g : G0.elements)
        if (chibar(g) == W1bar->one()) shrunk.push_back(g);
    Subgroup G0p = G0.parent->subgroup(shrunk);
    int index = G0.order() / G0p.order();
    require(index % We->p() != 0, errc::bad_shrink,
            "chi-kernel shrink has index divisible by p");
    out.used_G0 = G0p;
    out.transcript.push_back("shrunk G_0 to the kernel of chi mod p, index " + std::to_string(index));

    auto hpg = G0p.as_group();
    GroupPtr H = hpg.group;
    std::vector<int> to_g0g;
    for (int h = 0; h < H->order(); ++h)
        to_g0g.push_back(g0g.from_parent[static_cast<size_t>(hpg.to_parent[static_cast<size_t>(h)])]);

    Extension1 ext2 = Extension1::make(restrict_onto(ext.sub, to_g0g, H),
                                       restrict_onto(ext.mid, to_g0g, H),
                                       restrict_onto(ext.quo, to_g0g, H), ext.incl, ext.proj);
    GSet Y2 = restrict_gset(Yset, to_g0g, H);
    GSet X2 = restrict_gset(Xset, to_g0g, H);

    ExtClass1 cls = class_of_extension(ext2);
    const WittRing* W1 = ext.mid.ring();
    GSet XY = GSet::product(X2, Y2);
    require(cls.hom.equal_actions(GModule::permutation(W1, XY)),
            errc::internal_integrality_failure,
            "Hom(B, A) did not match the product permutation module");
    out.transcript.push_back("extension class computed on " + std::to_string(XY.size) +
                             " product points");

    ShapiroData Sk = shapiro_prepare(Character::trivial(W1, H), XY);
    Character chiH = chi.restricted(G0p);
    require(chiH.reduced(1).is_trivial(), errc::bad_shrink, "chi mod p must be trivial after the shrink");
    ShapiroData ST = shapiro_prepare(chiH, XY);

    std::vector<Cochain> parts = shapiro_forward(Sk, cls.cocycle);
    std::vector<Cochain> lifted_parts;
    for (size_t oi = 0; oi < parts.size(); ++oi) {
        GModule Ti = ST.stab_mods[oi];
        GModule Ti1 = reduce_module(Ti, 1);
        CohomologyGroup hs = cohomology_group(Ti, 1);
        CohomologyGroup hd = cohomology_group(Ti1, 1);
        std::vector<long> target = hd.coordinates(parts[oi]);
        auto pre = solve_class_preimage(GModMap::reduction(Ti, 1), hs, hd, target);
        if (!pre) {
            out.status = LiftStatus::certificate_failed;
            std::vector<int> par;
            for (int h : ST.orbs[oi].stabilizer.elements)
                par.push_back(hpg.to_parent[static_cast<size_t>(h)]);
            out.failed_stabilizer = par;
            out.transcript.push_back("cocycle lifting failed at stabilizer " + join_ints(par));
            return out;
        }
        lifted_parts.push_back(hs.rep_combination(*pre));
        out.transcript.push_back("orbit " + std::to_string(oi) + ": lifted class through H^1 of a stabilizer of order " +
                                 std::to_string(ST.orbs[oi].stabilizer.order()));
    }
    Cochain lifted = shapiro_backward(ST, lifted_parts);

    GModule quoW = GModule::permutation(We, X2);
    GModule subT = twist(GModule::permutation(We, Y2), chiH, 1);
    GModule homW = hom_module(quoW, subT);
    require(ST.module.equal_actions(homW), errc::internal_integrality_failure,
            "twisted permutation module did not match Hom(W^X, T^Y)");
    Cochain lifted_hom = lifted;
    lifted_hom.module = homW;
    Extension1 lifted_ext = extension_of_class(lifted_hom, quoW, subT);
    require(lifted_ext.mid.is_free(), errc::internal_integrality_failure,
            "middle module of the lifted extension is not free");

    IsLiftResult il = is_lift(lifted_ext.mid, ext2.mid);
    require(il.ok, errc::internal_integrality_failure,
            "lifted extension does not reduce to the base extension");
    out.lift = lifted_ext.mid;
    out.status = LiftStatus::lifted;
    out.transcript.push_back("built a free W_" + std::to_string(d + 1) + " lift of rank " +
                             std::to_string(lifted_ext.mid.rank()));
    return out;
}

namespace {

// deterministic enumeration of ka-dimensional subspaces of F_2^n as sorted
// lists of their nonzero bitmask vectors
std::vector<std::vector<int>> f2_subspaces(int n, int ka) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    int total = 1 << n;
    std::vector<int> basis(static_cast<size_t>(ka));
    std::function<void(int, int)> rec = [&](int depth, int start) {
        if (depth == ka) {
            std::set<int> span{0};
            for (int b : basis) {
                std::set<int> next = span;
                for (int v : span) next.insert(v ^ b);
                span = std::move(next);
            }
            if (int(span.size()) != (1 << ka)) return;
            std::vector<int> key(span.begin(), span.end());
            key.erase(key.begin()); // drop 0
            if (seen.insert(key).second) out.push_back(key);
            return;
        }
        for (int v = start; v < total; ++v) {
            basis[static_cast<size_t>(depth)] = v;
            rec(depth + 1, v + 1);
        }
    };
    rec(0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

int f2_apply(const WMatrix& A, int v) {
    int w = 0;
    for (int i = 0; i < A.rows; ++i) {
        int bit = 0;
        for (int j = 0; j < A.cols; ++j)
            if ((v >> j) & 1) bit ^= A.at(i, j).coord(0).coord(0);
        w |= bit << i;
    }
    return w;
}

// echelon basis of a subspace given by its nonzero vectors
std::vector<int> f2_echelon_basis(const std::vector<int>& nonzero) {
    std::vector<int> basis;
    for (int v : nonzero) {
        int w = v;
        for (int b : basis) w = std::min(w, w ^ b);
        if (w) basis.push_back(w);
        std::sort(basis.rbegin(), basis.rend());
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

} // namespace

FlagData find_invariant_flag(const GModule& rho) {
    require(rho.d() == 1, errc::bad_length, "flag search starts from a depth-1 module");
    const WittRing* W1 = rho.ring();
    const FieldDesc* fd = W1->field();
    GroupPtr G = rho.group();
    FlagData flag;

    if (rho.rank() == 2) {
        Subgroup P = G->sylow(fd->p());
        GModule resP = restrict_module(rho, P);
        FixedPoints fp = fixed_points(resP, P.as_group().group->full_subgroup());
        require(!fp.basis.empty(), errc::internal_integrality_failure,
                "p-group action has no nonzero fixed vector");
        ModElt v = fp.basis[0];
        flag.transcript.push_back("fixed line of the Sylow-" + std::to_string(fd->p()) +
                                  " subgroup of order " + std::to_string(P.order()));
        // stabilizer of the line and the two characters
        int i0 = v[0].is_zero() ? 1 : 0;
        FqElem v0 = v[0].coord(0), v1 = v[1].coord(0);
        std::vector<int> stab_elems;
        std::vector<WittVec> lam;
        for (int g = 0; g < G->order(); ++g) {
            ModElt w = rho.apply(g, v);
            FqElem w0 = w[0].coord(0), w1 = w[1].coord(0);
            if (!(v0 * w1 - v1 * w0).is_zero()) continue;
            FqElem l = (i0 == 0 ? w0 : w1) * (i0 == 0 ? v0 : v1).inv();
            stab_elems.push_back(g);
            lam.push_back(W1->teichmuller(l));
        }
        // complete the basis
        int j0 = -1;
        for (int j = 0; j < 2 && j0 < 0; ++j) {
            FqElem u0 = j == 0 ? FqElem::one(fd) : FqElem::zero(fd);
            FqElem u1 = j == 0 ? FqElem::zero(fd) : FqElem::one(fd);
            if (!(v0 * u1 - v1 * u0).is_zero()) j0 = j;
        }
        WMatrix S = WMatrix::zeros(W1, 2, 2);
        S.at(0, 0) = v[0];
        S.at(1, 0) = v[1];
        S.at(j0, 1) = W1->one();
        WMatrix Sinv = S.inverse();
        // trivialize both characters
        std::vector<int> g0_elems;
        for (size_t k = 0; k < stab_elems.size(); ++k) {
            int g = stab_elems[k];
            WMatrix conj = Sinv * rho.action(g) * S;
            if (lam[k] == W1->one() && conj.at(1, 1) == W1->one()) g0_elems.push_back(g);
        }
        flag.G0 = G->subgroup(g0_elems);
        require((G->order() / flag.G0.order()) % fd->p() != 0, errc::internal_integrality_failure,
                "character-trivialized stabilizer has index divisible by p");
        flag.basis = S;
        flag.sub_dim = 1;
        GroupPtr H = flag.G0.as_group().group;
        flag.sub_set = GSet::trivial(H, 1);
        flag.quo_set = GSet::trivial(H, 1);
        flag.transcript.push_back("line and quotient characters trivialize on a subgroup of index " +
                                  std::to_string(G->order() / flag.G0.order()));
        return flag;
    }

    // F_2 subspace search, dimensions 3 and 4
    require(fd->p() == 2 && fd->m() == 1, errc::bad_request,
            "dimensions above 2 are supported over F_2 only");
    int n = rho.rank();
    require(n == 3 || n == 4, errc::bad_request, "flag search supports dimension <= 4");
    std::vector<std::pair<int, int>> splits =
        n == 4 ? std::vector<std::pair<int, int>>{{2, 2}}
               : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}};

    auto subs = G->subgroups();
    std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.elements < b.elements;
    });
    for (const auto& G0 : subs) {
        if ((G->order() / G0.order()) % 2 == 0) continue;
        for (auto [ka, kb] : splits) {
            for (const auto& span : f2_subspaces(n, ka)) {
                // invariant?
                bool inv = true;
                std::set<int> inU(span.begin(), span.end());
                for (int g : G0.elements)
                    for (int v : span) inv = inv && inU.count(f2_apply(rho.action(g), v));
                if (!inv) continue;
                std::vector<int> ubasis = f2_echelon_basis(span);
                // complete with standard vectors
                std::vector<int> full = ubasis;
                for (int j = 0; j < n && int(full.size()) < n; ++j) {
                    std::vector<int> test = full;
                    test.push_back(1 << j);
                    if (int(f2_echelon_basis(test).size()) == int(test.size())) full = test;
                }
                WMatrix S = WMatrix::zeros(W1, n, n);
                for (int c = 0; c < n; ++c)
                    for (int r = 0; r < n; ++r)
                        if ((full[static_cast<size_t>(c)] >> r) & 1) S.at(r, c) = W1->one();
                WMatrix Sinv = S.inverse();
                // block images per subgroup element
                auto block = [&](const WMatrix& A, int r0, int c0, int sz) {
                    WMatrix B = WMatrix::zeros(W1, sz, sz);
                    for (int i = 0; i < sz; ++i)
                        for (int j = 0; j < sz; ++j) B.at(i, j) = A.at(r0 + i, c0 + j);
                    return B;
                };
                // find a permutation basis for one block family, or fail
                auto permify = [&](int r0, int sz, WMatrix& P,
                                   std::vector<int>& perm_of_elem) -> bool {
                    WMatrix I = WMatrix::identity(W1, sz);
                    WMatrix nontriv = I;
                    bool have_nontriv = false;
                    std::vector<WMatrix> imgs;
                    for (int g : G0.elements) {
                        WMatrix conj = Sinv * rho.action(g) * S;
                        WMatrix B = block(conj, r0, r0, sz);
                        imgs.push_back(B);
                        if (B == I) continue;
                        if (!have_nontriv) {
                            nontriv = B;
                            have_nontriv = true;
                        } else if (!(B == nontriv)) {
                            return false; // image has order > 2
                        }
                    }
                    P = WMatrix::identity(W1, sz);
                    if (have_nontriv && sz == 2) {
                        // basis (v, Mv) turns the involution into the swap
                        int v = 0;
                        for (int cand = 1; cand < (1 << sz); ++cand)
                            if (f2_apply(nontriv, cand) != cand) {
                                v = cand;
                                break;
                            }
                        if (v == 0) return false;
                        int mv = f2_apply(nontriv, v);
                        P = WMatrix::zeros(W1, sz, sz);
                        for (int r = 0; r < sz; ++r) {
                            if ((v >> r) & 1) P.at(r, 0) = W1->one();
                            if ((mv >> r) & 1) P.at(r, 1) = W1->one();
                        }
                    } else if (have_nontriv && sz == 1) {
                        return false; // GL_1(F_2) is trivial
                    }
                    // record the point permutation of every element
                    WMatrix Pinv = P.inverse();
                    for (size_t k = 0; k < imgs.size(); ++k) {
                        WMatrix M = Pinv * imgs[k] * P;
                        if (M == WMatrix::identity(W1, sz))
                            perm_of_elem.push_back(0);
                        else if (sz == 2 && M.at(0, 1) == W1->one() && M.at(1, 0) == W1->one() &&
                                 M.at(0, 0).is_zero() && M.at(1, 1).is_zero())
                            perm_of_elem.push_back(1);
                        else
                            return false;
                    }
                    return true;
                };
                WMatrix PA = WMatrix::identity(W1, ka), PB = WMatrix::identity(W1, kb);
                std::vector<int> permA, permB;
                if (!permify(0, ka, PA, permA)) continue;
                if (!permify(ka, kb, PB, permB)) continue;
                // total basis change
                WMatrix Sp = WMatrix::zeros(W1, n, n);
                for (int i = 0; i < ka; ++i)
                    for (int j = 0; j < ka; ++j) Sp.at(i, j) = PA.at(i, j);
                for (int i = 0; i < kb; ++i)
                    for (int j = 0; j < kb; ++j) Sp.at(ka + i, ka + j) = PB.at(i, j);
                flag.basis = S * Sp;
                flag.G0 = G0;
                flag.sub_dim = ka;
                GroupPtr H = G0.as_group().group;
                auto make_set = [&](int sz, const std::vector<int>& perm) {
                    GSet Xs;
                    Xs.group = H;
                    Xs.size = sz;
                    for (int h = 0; h < H->order(); ++h) {
                        std::vector<int> row(static_cast<size_t>(sz));
                        for (int x = 0; x < sz; ++x)
                            row[static_cast<size_t>(x)] =
                                (sz == 2 && perm[static_cast<size_t>(h)] == 1) ? 1 - x : x;
                        Xs.act.push_back(std::move(row));
                    }
                    return Xs;
                };
                flag.sub_set = make_set(ka, permA);
                flag.quo_set = make_set(kb, permB);
                flag.transcript.push_back("invariant subspace of dimension " + std::to_string(ka) +
                                          " under a subgroup of index " +
                                          std::to_string(G->order() / G0.order()) +
                                          " with permutation bases");
                return flag;
            }
        }
    }
    fail(errc::not_found, "no odd-index subgroup stabilizes a subspace with permutation blocks");
}

namespace {

LiftResult lift_pipeline(const GModule& rho, const CyclotomicCertificate& cert, int max_dim) {
    require(rho.d() == 1, errc::bad_length, "lifting starts from depth-1 representations");
    require(rho.is_free(), errc::not_free, "lifting runs on free modules");
    require(rho.rank() <= max_dim, errc::bad_request,
            "representation dimension exceeds this entry point");
    require(cert.G == rho.group(), errc::shape_mismatch, "certificate for another group");
    require(cert.chi.W->field() == rho.ring()->field(), errc::mixed_rings,
            "certificate over another coefficient field");
    require(cert.n == 1, errc::bad_request, "the lifting engine consumes 1-cyclotomic data");
    const WittRing* We = cert.chi.W;
    LiftResult res;
    res.transcript.push_back("input: " + rho.describe());

    if (rho.rank() <= 1) {
        // multiplicative lift through the Teichmueller section
        std::vector<WMatrix> table;
        for (int g = 0; g < rho.group()->order(); ++g) {
            WMatrix m = WMatrix::zeros(We, rho.rank(), rho.rank());
            if (rho.rank() == 1) m.at(0, 0) = We->teichmuller(rho.action(g).at(0, 0).coord(0));
            table.push_back(std::move(m));
        }
        GModule full = GModule::from_action_table(rho.group(), We,
                                                  std::vector<int>(static_cast<size_t>(rho.rank()), We->d()),
                                                  std::move(table));
        res.status = LiftStatus::lifted;
        res.G0 = rho.group()->full_subgroup();
        res.stable_lift = restrict_module(full, *res.G0);
        res.complement = GModule::trivial(rho.ring(), rho.group(), {});
        res.sum_lift = full;
        res.lift_p2 = reduce_module(full, 2);
        res.transcript.push_back("Teichmueller character lift");
        return res;
    }

    FlagData flag;
    try {
        flag = find_invariant_flag(rho);
    } catch (const Error& e) {
        if (e.code() == errc::not_found) {
            res.status = LiftStatus::not_found;
            res.transcript.push_back(e.what());
            return res;
        }
        throw;
    }
    for (const auto& line : flag.transcript) res.transcript.push_back(line);

    auto g0g = flag.G0.as_group();
    GModule resr = restrict_module(rho, flag.G0);
    WMatrix Sinv = flag.basis.inverse();
    std::vector<WMatrix> conj_table;
    for (int h = 0; h < g0g.group->order(); ++h)
        conj_table.push_back(Sinv * resr.action(h) * flag.basis);
    GModule conj = GModule::from_action_table(g0g.group, rho.ring(), resr.profile(),
                                              std::move(conj_table));
    const WittRing* W1 = rho.ring();
    GModule subA = GModule::permutation(W1, flag.sub_set);
    GModule quoB = GModule::permutation(W1, flag.quo_set);
    int ka = flag.sub_dim, kb = rho.rank() - flag.sub_dim;
    WMatrix incl = WMatrix::zeros(W1, rho.rank(), ka);
    for (int i = 0; i < ka; ++i) incl.at(i, i) = W1->one();
    WMatrix proj = WMatrix::zeros(W1, kb, rho.rank());
    for (int i = 0; i < kb; ++i) proj.at(i, ka + i) = W1->one();
    Extension1 ext = Extension1::make(subA, conj, quoB, incl, proj);
    res.transcript.push_back("extension of permutation modules of ranks " + std::to_string(ka) +
                             " and " + std::to_string(kb));

    PermExtLiftResult pel =
        permutation_extension_lift(flag.G0, flag.sub_set, flag.quo_set, ext, cert.chi);
    for (const auto& line : pel.transcript) res.transcript.push_back(line);
    if (pel.status != LiftStatus::lifted) {
        res.status = pel.status;
        res.failed_stabilizer = pel.failed_stabilizer;
        return res;
    }

    // transport the lift back through the flag basis
    Subgroup G0p = pel.used_G0;
    res.G0 = G0p;
    auto hpg = G0p.as_group();
    GModule res_rho_p = restrict_module(rho, G0p);
    std::vector<WMatrix> conj_p_table;
    for (int h = 0; h < hpg.group->order(); ++h)
        conj_p_table.push_back(Sinv * res_rho_p.action(h) * flag.basis);
    GModule conj_p = GModule::from_action_table(hpg.group, W1, res_rho_p.profile(),
                                                std::move(conj_p_table));
    IsLiftResult il = is_lift(*pel.lift, conj_p);
    require(il.ok, errc::internal_integrality_failure,
            "permutation-extension lift does not reduce to the conjugated base");
    GModule Lc = *pel.lift;
    if (!il.on_the_nose) {
        WMatrix T = il.intertwiner->lifted(We);
        WMatrix Tinv = T.inverse();
        std::vector<WMatrix> table;
        for (int h = 0; h < hpg.group->order(); ++h) table.push_back(T * Lc.action(h) * Tinv);
        Lc = GModule::from_action_table(hpg.group, We, Lc.profile(), std::move(table));
    }
    WMatrix Se = flag.basis.lifted(We);
    WMatrix Seinv = Se.inverse();
    std::vector<WMatrix> vd_table;
    for (int h = 0; h < hpg.group->order(); ++h) vd_table.push_back(Se * Lc.action(h) * Seinv);
    GModule Vd = GModule::from_action_table(hpg.group, We, Lc.profile(), std::move(vd_table));
    require(is_lift(Vd, res_rho_p).on_the_nose, errc::internal_integrality_failure,
            "stable lift does not reduce to the restricted representation");
    res.stable_lift = Vd;
    res.transcript.push_back("stable lift over a subgroup of index " +
                             std::to_string(rho.group()->order() / G0p.order()));

    StableUpgrade up = stable_lift_upgrade(rho, G0p, Vd);
    res.complement = up.complement;
    res.sum_lift = up.sum_lift;
    res.transcript.push_back("norm splitting complement of rank " +
                             std::to_string(up.complement.rank()));

    GModule Z2 = reduce_module(up.sum_lift, 2);
    res.lift_p2 = ablift(rho, up.complement, Z2);
    require(is_lift(*res.lift_p2, rho).ok, errc::internal_integrality_failure,
            "final p^2 lift failed re-verification");
    res.status = LiftStatus::lifted;
    res.transcript.push_back("genuine p^2-torsion lift of rank " +
                             std::to_string(res.lift_p2->rank()));
    return res;
}

} // namespace

LiftResult lift_dim2(const GModule& rho, const CyclotomicCertificate& cert) {
    return lift_pipeline(rho, cert, 2);
}

LiftResult lift_dim4_f2(const GModule& rho, const CyclotomicCertificate& cert) {
    if (rho.rank() > 2)
        require(rho.ring()->field()->p() == 2 && rho.ring()->field()->m() == 1, errc::bad_request,
                "dimensions 3 and 4 are supported over F_2 only");
    return lift_pipeline(rho, cert, 4);
}

} // namespace wittlift
