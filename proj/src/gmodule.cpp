#include "wittlift/gmodule.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wittlift {

namespace {

long powl_of(int p, int e) {
    long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// Minimal representative of each left coset of G0, sorted.
std::vector<int> coset_reps(const Subgroup& G0) {
    const auto& G = *G0.parent;
    std::vector<int> coset_of(static_cast<size_t>(G.order()), -1);
    std::vector<int> reps;
    for (int g = 0; g < G.order(); ++g) {
        if (coset_of[static_cast<size_t>(g)] >= 0) continue;
        reps.push_back(g);
        for (int h : G0.elements) coset_of[static_cast<size_t>(G.mul(g, h))] = int(reps.size()) - 1;
    }
    return reps;
}

WittVec truncate_elt(const WittRing* W, const WittVec& x, int e) {
    if (e >= W->d()) return x;
    std::vector<FqElem> coords = x.coords();
    for (int i = e; i < W->d(); ++i) coords[static_cast<size_t>(i)] = FqElem::zero(W->field());
    return W->from_coords(coords);
}

int witt_val(const WittRing* W, const WittVec& x) {
    for (int i = 0; i < W->d(); ++i)
        if (!x.coord(i).is_zero()) return i;
    return W->d();
}

} // namespace

WittVec theta(const WittRing* W, int e, const std::vector<long>& z) {
    require(int(z.size()) == W->field()->m(), errc::bad_length, "theta digit count");
    WittVec acc = W->zero();
    FqElem b = FqElem::one(W->field());
    FqElem x = W->field()->m() >= 2 ? FqElem::gen(W->field()) : FqElem::one(W->field());
    for (int l = 0; l < W->field()->m(); ++l) {
        acc = acc + W->teichmuller(b).scaled(z[static_cast<size_t>(l)]);
        b = b * x;
    }
    return truncate_elt(W, acc, e);
}

std::vector<long> theta_inv(const WittRing* W, int e, const WittVec& x) {
    int m = W->field()->m();
    std::vector<long> z(static_cast<size_t>(m), 0);
    WittElemRing R{W};
    WittVec y = truncate_elt(W, x, e);
    long pt = 1;
    for (int t = 0; t < e; ++t) {
        FqElem c = y.coord(0);
        std::vector<long> digit(static_cast<size_t>(m));
        for (int l = 0; l < m; ++l) {
            digit[static_cast<size_t>(l)] = c.coord(l);
            z[static_cast<size_t>(l)] += c.coord(l) * pt;
        }
        y = R.div_pow(y - theta(W, W->d(), digit), 1);
        pt *= W->p();
    }
    return z;
}

GModule GModule::from_action_table(GroupPtr G, const WittRing* W, std::vector<int> profile,
                                   std::vector<WMatrix> table) {
    GModule M;
    M.W_ = W;
    M.G_ = std::move(G);
    M.profile_ = std::move(profile);
    M.act_ = std::move(table);
    M.check_wellformed();
    return M;
}

GModule GModule::from_generators(GroupPtr G, const WittRing* W, std::vector<int> profile,
                                 const std::vector<WMatrix>& gen_mats) {
    require(gen_mats.size() == G->generators().size(), errc::bad_request,
            "one matrix per group generator expected");
    int r = int(profile.size());
    for (const auto& m : gen_mats)
        require(m.rows == r && m.cols == r && m.W == W, errc::shape_mismatch,
                "generator matrix shape/ring mismatch");
    const auto& tree = G->word_tree();
    std::vector<WMatrix> table(static_cast<size_t>(G->order()), WMatrix::identity(W, r));
    for (int idx = 1; idx < G->order(); ++idx) {
        int y = tree.order[static_cast<size_t>(idx)];
        table[static_cast<size_t>(y)] =
            gen_mats[static_cast<size_t>(tree.gen[static_cast<size_t>(y)])] *
            table[static_cast<size_t>(tree.parent[static_cast<size_t>(y)])];
    }
    return from_action_table(std::move(G), W, std::move(profile), std::move(table));
}

GModule GModule::trivial(const WittRing* W, GroupPtr G, std::vector<int> profile) {
    int r = int(profile.size());
    std::vector<WMatrix> table(static_cast<size_t>(G->order()), WMatrix::identity(W, r));
    return from_action_table(std::move(G), W, std::move(profile), std::move(table));
}

GModule GModule::permutation(const WittRing* W, const GSet& X) {
    std::vector<WMatrix> table;
    table.reserve(static_cast<size_t>(X.group->order()));
    for (int g = 0; g < X.group->order(); ++g) {
        WMatrix P = WMatrix::zeros(W, X.size, X.size);
        for (int x = 0; x < X.size; ++x) P.at(X.apply(g, x), x) = W->one();
        table.push_back(std::move(P));
    }
    return from_action_table(X.group, W, std::vector<int>(static_cast<size_t>(X.size), W->d()),
                             std::move(table));
}

void GModule::check_wellformed() const {
    int r = rank();
    require(int(act_.size()) == G_->order(), errc::bad_request, "action table height");
    for (int e : profile_)
        require(e >= 1 && e <= d(), errc::bad_length, "profile entries must lie in [1,d]");
    for (const auto& m : act_)
        require(m.rows == r && m.cols == r && m.W == W_, errc::shape_mismatch,
                "action matrix shape/ring mismatch");
    // profile filtration: v(a_ij) >= e_i - e_j
    for (int g = 0; g < G_->order(); ++g)
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                require(witt_val(W_, act_[static_cast<size_t>(g)].at(i, j)) >=
                            profile_[static_cast<size_t>(i)] - profile_[static_cast<size_t>(j)],
                        errc::not_a_homomorphism,
                        "action matrix does not preserve the profile filtration");
    require(maps_equal(act_[0], WMatrix::identity(W_, r)), errc::not_a_homomorphism,
            "identity element must act as the identity matrix");
    for (int g = 0; g < G_->order(); ++g)
        for (int h = 0; h < G_->order(); ++h)
            require(maps_equal(act_[static_cast<size_t>(g)] * act_[static_cast<size_t>(h)],
                               act_[static_cast<size_t>(G_->mul(g, h))]),
                    errc::not_a_homomorphism,
                    "matrices violate the relation at (" + std::to_string(g) + "," +
                        std::to_string(h) + ")");
}

bool GModule::is_free() const {
    for (int e : profile_)
        if (e != d()) return false;
    return true;
}

ModElt GModule::zero_elt() const { return ModElt(static_cast<size_t>(rank()), W_->zero()); }

ModElt GModule::basis_elt(int slot, int fq_index) const {
    ModElt x = zero_elt();
    FqElem b = FqElem::one(W_->field());
    if (fq_index > 0) b = FqElem::gen(W_->field()).pow(fq_index);
    x[static_cast<size_t>(slot)] = W_->teichmuller(b);
    return canonical(std::move(x));
}

ModElt GModule::canonical(ModElt x) const {
    require(int(x.size()) == rank(), errc::shape_mismatch, "element has wrong rank");
    for (int i = 0; i < rank(); ++i)
        x[static_cast<size_t>(i)] =
            truncate_elt(W_, x[static_cast<size_t>(i)], profile_[static_cast<size_t>(i)]);
    return x;
}

ModElt GModule::apply(int g, const ModElt& x) const {
    return canonical(act_[static_cast<size_t>(g)].apply(x));
}

ModElt GModule::add(const ModElt& x, const ModElt& y) const {
    ModElt z = x;
    for (int i = 0; i < rank(); ++i)
        z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + y[static_cast<size_t>(i)];
    return canonical(std::move(z));
}

ModElt GModule::sub(const ModElt& x, const ModElt& y) const {
    ModElt z = x;
    for (int i = 0; i < rank(); ++i)
        z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] - y[static_cast<size_t>(i)];
    return canonical(std::move(z));
}

ModElt GModule::scale(const WittVec& s, const ModElt& x) const {
    ModElt z = x;
    for (auto& v : z) v = s * v;
    return canonical(std::move(z));
}

bool GModule::elt_is_zero(const ModElt& x) const {
    for (const auto& v : canonical(x))
        if (!v.is_zero()) return false;
    return true;
}

bool GModule::elt_equal(const ModElt& x, const ModElt& y) const {
    return canonical(x) == canonical(y);
}

bool GModule::maps_equal(const WMatrix& A, const WMatrix& B) const {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (truncate_elt(W_, A.at(i, j), profile_[static_cast<size_t>(i)]) !=
                truncate_elt(W_, B.at(i, j), profile_[static_cast<size_t>(i)]))
                return false;
    return true;
}

bool GModule::same_shape(const GModule& o) const {
    return W_ == o.W_ && G_ == o.G_ && profile_ == o.profile_;
}

bool GModule::equal_actions(const GModule& o) const {
    if (!same_shape(o)) return false;
    for (int g = 0; g < G_->order(); ++g)
        if (!maps_equal(act_[static_cast<size_t>(g)], o.act_[static_cast<size_t>(g)])) return false;
    return true;
}

GModule GModule::with_group(GroupPtr H) const {
    require(H->table() == G_->table(), errc::shape_mismatch,
            "group relabeling requires identical multiplication tables");
    GModule M = *this;
    M.G_ = std::move(H);
    return M;
}

GModule::Flat GModule::flatten(int D) const {
    int m = W_->field()->m();
    require(D >= d(), errc::bad_length, "flattening precision below module length");
    Flat F;
    F.R = ZpdRing(W_->p(), D);
    F.dim = rank() * m;
    F.tor.resize(static_cast<size_t>(F.dim));
    for (int i = 0; i < rank(); ++i)
        for (int l = 0; l < m; ++l)
            F.tor[static_cast<size_t>(i * m + l)] = profile_[static_cast<size_t>(i)];
    F.lattice = ZpdMat::zeros(F.R, F.dim, F.dim);
    for (int j = 0; j < F.dim; ++j)
        F.lattice.at(j, j) = F.R.pshift(D - F.tor[static_cast<size_t>(j)]);
    F.act.reserve(static_cast<size_t>(G_->order()));
    for (int g = 0; g < G_->order(); ++g) {
        ZpdMat A = ZpdMat::zeros(F.R, F.dim, F.dim);
        for (int j = 0; j < rank(); ++j)
            for (int l = 0; l < m; ++l) {
                ZpdVec col = flatten_elt(D, apply(g, basis_elt(j, l)));
                long denom = powl_of(W_->p(), D - profile_[static_cast<size_t>(j)]);
                for (int i = 0; i < F.dim; ++i) {
                    require(col[static_cast<size_t>(i)] % denom == 0,
                            errc::internal_integrality_failure, "flat action scaling failed");
                    A.at(i, j * m + l) = col[static_cast<size_t>(i)] / denom;
                }
            }
        F.act.push_back(std::move(A));
    }
    return F;
}

ZpdVec GModule::flatten_elt(int D, const ModElt& x) const {
    int m = W_->field()->m();
    ModElt cx = canonical(x);
    ZpdVec v(static_cast<size_t>(rank() * m), 0);
    long mod = powl_of(W_->p(), D);
    for (int i = 0; i < rank(); ++i) {
        int e = profile_[static_cast<size_t>(i)];
        std::vector<long> z = theta_inv(W_, e, cx[static_cast<size_t>(i)]);
        long scale = powl_of(W_->p(), D - e);
        for (int l = 0; l < m; ++l)
            v[static_cast<size_t>(i * m + l)] = (z[static_cast<size_t>(l)] * scale) % mod;
    }
    return v;
}

ModElt GModule::unflatten_elt(int D, const ZpdVec& v) const {
    int m = W_->field()->m();
    require(int(v.size()) == rank() * m, errc::shape_mismatch, "flat vector has wrong dimension");
    ModElt x = zero_elt();
    long mod = powl_of(W_->p(), D);
    for (int i = 0; i < rank(); ++i) {
        int e = profile_[static_cast<size_t>(i)];
        long scale = powl_of(W_->p(), D - e);
        std::vector<long> z(static_cast<size_t>(m));
        for (int l = 0; l < m; ++l) {
            long c = ((v[static_cast<size_t>(i * m + l)] % mod) + mod) % mod;
            require(c % scale == 0, errc::internal_integrality_failure,
                    "flat vector is off the module lattice");
            z[static_cast<size_t>(l)] = c / scale;
        }
        x[static_cast<size_t>(i)] = theta(W_, e, z);
    }
    return x;
}

std::string GModule::describe() const {
    std::ostringstream os;
    os << "module over W_" << d() << "(" << W_->field()->describe() << "), profile [";
    for (size_t i = 0; i < profile_.size(); ++i) os << (i ? "," : "") << profile_[i];
    os << "], group order " << G_->order();
    return os.str();
}

GModMap GModMap::identity(const GModule& M) {
    return GModMap{M, M, WMatrix::identity(M.ring(), M.rank())};
}

GModMap GModMap::zero(const GModule& src, const GModule& dst) {
    const WittRing* W = src.d() >= dst.d() ? src.ring() : dst.ring();
    return GModMap{src, dst, WMatrix::zeros(W, dst.rank(), src.rank())};
}

GModMap GModMap::reduction(const GModule& M, int r) {
    return GModMap{M, reduce_module(M, r), WMatrix::identity(M.ring(), M.rank())};
}

ModElt GModMap::apply(const ModElt& x) const {
    const WittRing* Wbig = mat.W;
    ModElt lifted(x.size());
    for (size_t i = 0; i < x.size(); ++i) lifted[i] = Wbig->lift_pad(x[i]);
    std::vector<WittVec> y = mat.apply(lifted);
    ModElt out(static_cast<size_t>(dst.rank()));
    for (int i = 0; i < dst.rank(); ++i)
        out[static_cast<size_t>(i)] = dst.ring()->lift_pad(Wbig->reduce(y[static_cast<size_t>(i)], dst.d()));
    return dst.canonical(std::move(out));
}

bool GModMap::is_equivariant() const {
    if (src.group() != dst.group()) return false;
    int m = src.ring()->field()->m();
    for (int g = 0; g < src.group()->order(); ++g)
        for (int j = 0; j < src.rank(); ++j)
            for (int l = 0; l < m; ++l) {
                ModElt b = src.basis_elt(j, l);
                if (!dst.elt_equal(apply(src.apply(g, b)), dst.apply(g, apply(b)))) return false;
            }
    return true;
}

ZpdMat GModMap::flat_matrix(int D) const {
    int m = src.ring()->field()->m();
    ZpdRing R(src.ring()->p(), D);
    ZpdMat A = ZpdMat::zeros(R, dst.rank() * m, src.rank() * m);
    for (int j = 0; j < src.rank(); ++j) {
        long denom = powl_of(src.ring()->p(), D - src.profile()[static_cast<size_t>(j)]);
        for (int l = 0; l < m; ++l) {
            ZpdVec col = dst.flatten_elt(D, apply(src.basis_elt(j, l)));
            for (int i = 0; i < dst.rank() * m; ++i) {
                require(col[static_cast<size_t>(i)] % denom == 0,
                        errc::internal_integrality_failure, "flat morphism scaling failed");
                A.at(i, j * m + l) = col[static_cast<size_t>(i)] / denom;
            }
        }
    }
    return A;
}

GModMap GModMap::compose(const GModMap& inner) const {
    require(inner.dst.same_shape(src), errc::shape_mismatch, "composition shape mismatch");
    const WittRing* Wbig =
        mat.W->d() >= inner.mat.W->d() ? mat.W : inner.mat.W;
    WMatrix prod = mat.lifted(Wbig) * inner.mat.lifted(Wbig);
    return GModMap{inner.src, dst, std::move(prod)};
}

GModule direct_sum(const GModule& A, const GModule& B) {
    require(A.ring() == B.ring() && A.group() == B.group(), errc::mixed_rings,
            "direct sum needs matching ring and group");
    std::vector<int> profile = A.profile();
    profile.insert(profile.end(), B.profile().begin(), B.profile().end());
    std::vector<WMatrix> table;
    for (int g = 0; g < A.group()->order(); ++g) {
        WMatrix M = WMatrix::zeros(A.ring(), A.rank() + B.rank(), A.rank() + B.rank());
        for (int i = 0; i < A.rank(); ++i)
            for (int j = 0; j < A.rank(); ++j) M.at(i, j) = A.action(g).at(i, j);
        for (int i = 0; i < B.rank(); ++i)
            for (int j = 0; j < B.rank(); ++j) M.at(A.rank() + i, A.rank() + j) = B.action(g).at(i, j);
        table.push_back(std::move(M));
    }
    return GModule::from_action_table(A.group(), A.ring(), std::move(profile), std::move(table));
}

GModule tensor(const GModule& A, const GModule& B) {
    require(A.ring() == B.ring() && A.group() == B.group(), errc::mixed_rings,
            "tensor needs matching ring and group");
    std::vector<int> profile;
    for (int i = 0; i < A.rank(); ++i)
        for (int j = 0; j < B.rank(); ++j)
            profile.push_back(std::min(A.profile()[static_cast<size_t>(i)],
                                       B.profile()[static_cast<size_t>(j)]));
    std::vector<WMatrix> table;
    for (int g = 0; g < A.group()->order(); ++g) table.push_back(wkron(A.action(g), B.action(g)));
    return GModule::from_action_table(A.group(), A.ring(), std::move(profile), std::move(table));
}

GModule hom_module(const GModule& A, const GModule& B) {
    require(A.ring() == B.ring() && A.group() == B.group(), errc::mixed_rings,
            "hom needs matching ring and group");
    require(A.is_free(), errc::non_free_dual, "hom/dual requires a free source module");
    int ra = A.rank(), rb = B.rank();
    // basis E_(t,s) at index t * rank(B) + s (t in A, s in B), so that the
    // action table coincides with dual(A) ⊗ B on the nose
    std::vector<int> profile;
    for (int t = 0; t < ra; ++t)
        for (int s = 0; s < rb; ++s) profile.push_back(B.profile()[static_cast<size_t>(s)]);
    std::vector<WMatrix> table;
    for (int g = 0; g < A.group()->order(); ++g) {
        WMatrix Ainv = A.action(A.group()->inv(g));
        const WMatrix& Bg = B.action(g);
        WMatrix M = WMatrix::zeros(A.ring(), ra * rb, ra * rb);
        for (int t2 = 0; t2 < ra; ++t2)
            for (int s2 = 0; s2 < rb; ++s2)
                for (int t = 0; t < ra; ++t)
                    for (int s = 0; s < rb; ++s)
                        M.at(t2 * rb + s2, t * rb + s) = Bg.at(s2, s) * Ainv.at(t, t2);
        table.push_back(std::move(M));
    }
    return GModule::from_action_table(A.group(), A.ring(), std::move(profile), std::move(table));
}

GModule dual_module(const GModule& A) {
    return hom_module(A, GModule::trivial(A.ring(), A.group(), {A.d()}));
}

ModElt hom_elt(const GModule& H, const WMatrix& f, const GModule& A, const GModule& B) {
    require(f.rows == B.rank() && f.cols == A.rank(), errc::shape_mismatch, "hom element shape");
    ModElt x(static_cast<size_t>(H.rank()));
    for (int t = 0; t < A.rank(); ++t)
        for (int s = 0; s < B.rank(); ++s)
            x[static_cast<size_t>(t * B.rank() + s)] = H.ring()->lift_pad(f.at(s, t));
    return H.canonical(std::move(x));
}

WMatrix hom_elt_matrix(const GModule& H, const ModElt& x, const GModule& A, const GModule& B) {
    WMatrix f = WMatrix::zeros(H.ring(), B.rank(), A.rank());
    for (int t = 0; t < A.rank(); ++t)
        for (int s = 0; s < B.rank(); ++s)
            f.at(s, t) = x[static_cast<size_t>(t * B.rank() + s)];
    return f;
}

FixedPoints fixed_points(const GModule& M, const Subgroup& H) {
    require(H.parent == M.group(), errc::not_a_subgroup, "fixed points under a foreign subgroup");
    int D = M.d();
    GModule::Flat F = M.flatten(D);
    auto hsub = H.as_group();
    std::vector<int> gens_parent;
    for (int g : hsub.group->generators())
        gens_parent.push_back(hsub.to_parent[static_cast<size_t>(g)]);
    if (gens_parent.empty()) gens_parent.push_back(0);
    // stack (act(g) - I) * lattice and take the kernel
    ZpdMat stacked;
    bool first = true;
    for (int g : gens_parent) {
        ZpdMat block = zmul(F.R, zsub(F.R, F.act[static_cast<size_t>(g)],
                                      ZpdMat::identity(F.R, F.dim)),
                            F.lattice);
        stacked = first ? block : zvstack(stacked, block);
        first = false;
    }
    auto nf = normal_form(F.R, stacked);
    ZpdMat K = zkernel(F.R, nf);
    // fixed elements as module elements
    std::vector<ModElt> gens;
    for (int j = 0; j < K.cols; ++j) {
        ZpdVec col(static_cast<size_t>(F.dim));
        for (int i = 0; i < F.dim; ++i) col[static_cast<size_t>(i)] = K.at(i, j);
        ModElt x = M.unflatten_elt(D, zapply(F.R, F.lattice, col));
        if (!M.elt_is_zero(x)) gens.push_back(std::move(x));
    }
    // extract a W-basis via the free embedding x_i -> p^(d - e_i) x_i
    const WittRing* W = M.ring();
    WittElemRing WR{W};
    FixedPoints out;
    if (!gens.empty()) {
        WMatrix B = WMatrix::zeros(W, M.rank(), int(gens.size()));
        for (int j = 0; j < int(gens.size()); ++j)
            for (int i = 0; i < M.rank(); ++i)
                B.at(i, j) = gens[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                             W->from_int(powl_of(W->p(), D - M.profile()[static_cast<size_t>(i)]));
        WittSmith nfw = wsnf(B);
        for (int i = 0; i < int(nfw.val.size()); ++i) {
            int v = nfw.val[static_cast<size_t>(i)];
            if (v >= D) continue;
            ModElt b(static_cast<size_t>(M.rank()));
            for (int r = 0; r < M.rank(); ++r) {
                WittVec w = nfw.Uinv.at(r, i) * WR.pshift(v);
                b[static_cast<size_t>(r)] = WR.div_pow(w, D - M.profile()[static_cast<size_t>(r)]);
            }
            out.basis.push_back(M.canonical(std::move(b)));
            out.profile.push_back(D - v);
        }
    }
    out.as_module = GModule::trivial(W, hsub.group, out.profile);
    return out;
}

Character Character::trivial(const WittRing* W, GroupPtr G) {
    return Character{W, G, std::vector<WittVec>(static_cast<size_t>(G->order()), W->one())};
}

Character Character::from_values(const WittRing* W, GroupPtr G, std::vector<WittVec> values) {
    require(int(values.size()) == G->order(), errc::bad_request, "one value per group element");
    for (const auto& v : values) {
        require(v.ring() == W, errc::mixed_rings, "character value ring mismatch");
        require(v.is_unit(), errc::not_a_unit, "character values must be units");
    }
    for (int g = 0; g < G->order(); ++g)
        for (int h = 0; h < G->order(); ++h)
            require(values[static_cast<size_t>(G->mul(g, h))] ==
                        values[static_cast<size_t>(g)] * values[static_cast<size_t>(h)],
                    errc::not_a_homomorphism, "character is not multiplicative");
    return Character{W, std::move(G), std::move(values)};
}

Character Character::power(int i) const {
    std::vector<WittVec> vals;
    vals.reserve(values.size());
    for (const auto& v : values) vals.push_back(v.pow(i));
    return Character{W, G, std::move(vals)};
}

Character Character::reduced(int r) const {
    std::vector<WittVec> vals;
    vals.reserve(values.size());
    for (const auto& v : values) vals.push_back(W->reduce(v, r));
    return Character{WittRing::get(W->field(), r), G, std::move(vals)};
}

Character Character::restricted(const Subgroup& H) const {
    auto hs = H.as_group();
    std::vector<WittVec> vals;
    for (int g = 0; g < hs.group->order(); ++g)
        vals.push_back(values[static_cast<size_t>(hs.to_parent[static_cast<size_t>(g)])]);
    return Character{W, hs.group, std::move(vals)};
}

GModule Character::rank1_module() const {
    std::vector<WMatrix> table;
    for (int g = 0; g < G->order(); ++g) {
        WMatrix m = WMatrix::zeros(W, 1, 1);
        m.at(0, 0) = values[static_cast<size_t>(g)];
        table.push_back(std::move(m));
    }
    return GModule::from_action_table(G, W, {W->d()}, std::move(table));
}

bool Character::is_trivial() const {
    for (const auto& v : values)
        if (v != W->one()) return false;
    return true;
}

bool Character::equal(const Character& o) const {
    return W == o.W && G == o.G && values == o.values;
}

GModule twist(const GModule& M, const Character& chi, int i) {
    require(chi.G == M.group(), errc::mixed_rings, "twist by a character of another group");
    require(chi.W->field() == M.ring()->field() && chi.W->d() >= M.d(), errc::mixed_rings,
            "character ring must dominate the module ring");
    std::vector<WMatrix> table;
    for (int g = 0; g < M.group()->order(); ++g) {
        WittVec s = chi.W->reduce(chi(g), M.d()).pow(i);
        table.push_back(M.action(g).scaled(s));
    }
    return GModule::from_action_table(M.group(), M.ring(), M.profile(), std::move(table));
}

GModule frobenius_twist(const GModule& M, int i) {
    std::vector<WMatrix> table;
    for (int g = 0; g < M.group()->order(); ++g) table.push_back(M.action(g).frobenius(i));
    return GModule::from_action_table(M.group(), M.ring(), M.profile(), std::move(table));
}

GModule restrict_module(const GModule& M, const Subgroup& H) {
    require(H.parent == M.group(), errc::not_a_subgroup, "restriction along a foreign subgroup");
    auto hs = H.as_group();
    std::vector<WMatrix> table;
    for (int g = 0; g < hs.group->order(); ++g)
        table.push_back(M.action(hs.to_parent[static_cast<size_t>(g)]));
    return GModule::from_action_table(hs.group, M.ring(), M.profile(), std::move(table));
}

GModule induce(const GModule& M, const Subgroup& G0) {
    require(M.group()->order() == G0.order(), errc::not_a_subgroup,
            "module must live over the subgroup (canonical labeling)");
    const auto& G = *G0.parent;
    auto sub = G0.as_group();
    std::vector<int> reps = coset_reps(G0);
    int nc = int(reps.size()), r = M.rank();
    std::vector<int> profile;
    for (int c = 0; c < nc; ++c)
        profile.insert(profile.end(), M.profile().begin(), M.profile().end());
    std::vector<WMatrix> table;
    for (int g = 0; g < G.order(); ++g) {
        WMatrix A = WMatrix::zeros(M.ring(), nc * r, nc * r);
        for (int c = 0; c < nc; ++c) {
            int gtc = G.mul(g, reps[static_cast<size_t>(c)]);
            // find the coset of g t_c and the subgroup element connecting them
            int c2 = -1;
            for (int k = 0; k < nc && c2 < 0; ++k) {
                int h = G.mul(G.inv(reps[static_cast<size_t>(k)]), gtc);
                if (G0.contains(h)) c2 = k;
            }
            int h = G.mul(G.inv(reps[static_cast<size_t>(c2)]), gtc);
            int hsub = sub.from_parent[static_cast<size_t>(h)];
            const WMatrix& block = M.action(hsub);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) A.at(c2 * r + i, c * r + j) = block.at(i, j);
        }
        table.push_back(std::move(A));
    }
    return GModule::from_action_table(G0.parent, M.ring(), std::move(profile), std::move(table));
}

GModule reduce_module(const GModule& M, int r) {
    require(r >= 1 && r <= M.d(), errc::bad_length, "reduction length out of range");
    const WittRing* Wr = WittRing::get(M.ring()->field(), r);
    std::vector<int> profile;
    for (int e : M.profile()) profile.push_back(std::min(e, r));
    std::vector<WMatrix> table;
    for (int g = 0; g < M.group()->order(); ++g) table.push_back(M.action(g).reduced(r));
    return GModule::from_action_table(M.group(), Wr, std::move(profile), std::move(table));
}

FqElem find_embedding_root(const FieldDesc* small, const FieldDesc* big) {
    require(small->p() == big->p(), errc::no_embedding, "different characteristics");
    for (long idx = 0; idx < big->q(); ++idx) {
        FqElem cand = FqElem::from_index(big, idx);
        FqElem acc = FqElem::zero(big);
        FqElem power = FqElem::one(big);
        for (int i = 0; i <= small->m(); ++i) {
            acc = acc + power.scaled(small->modulus()[static_cast<size_t>(i)]);
            power = power * cand;
        }
        if (acc.is_zero()) return cand;
    }
    fail(errc::no_embedding, small->describe() + " has no root of its modulus in " + big->describe());
}

GModule extend_scalars(const GModule& M, const FieldDesc* big, std::optional<FqElem> root) {
    FqElem r0 = root ? *root : find_embedding_root(M.ring()->field(), big);
    auto embed = [&](const FqElem& x) {
        FqElem acc = FqElem::zero(big);
        FqElem power = FqElem::one(big);
        for (int l = 0; l < M.ring()->field()->m(); ++l) {
            acc = acc + power.scaled(x.coord(l));
            power = power * r0;
        }
        return acc;
    };
    const WittRing* Wbig = WittRing::get(big, M.d());
    std::vector<WMatrix> table;
    for (int g = 0; g < M.group()->order(); ++g) {
        WMatrix A = WMatrix::zeros(Wbig, M.rank(), M.rank());
        for (int i = 0; i < M.rank(); ++i)
            for (int j = 0; j < M.rank(); ++j) {
                std::vector<FqElem> coords;
                for (int k = 0; k < M.d(); ++k) coords.push_back(embed(M.action(g).at(i, j).coord(k)));
                A.at(i, j) = Wbig->from_coords(coords);
            }
        table.push_back(std::move(A));
    }
    return GModule::from_action_table(M.group(), Wbig, M.profile(), std::move(table));
}

NormSplitting norm_splitting(const GModule& V, const Subgroup& G0) {
    require(G0.parent == V.group(), errc::not_a_subgroup, "splitting along a foreign subgroup");
    const auto& G = *V.group();
    int index = G.order() / G0.order();
    require(index % V.ring()->p() != 0, errc::index_divisible_by_p,
            "[G:G_0] = " + std::to_string(index) + " is divisible by p");
    const WittRing* W = V.ring();

    NormSplitting out;
    out.induced = induce(restrict_module(V, G0), G0);
    std::vector<int> reps = coset_reps(G0);
    int nc = int(reps.size()), r = V.rank();

    out.i_map = WMatrix::zeros(W, nc * r, r);
    out.n_map = WMatrix::zeros(W, r, nc * r);
    for (int c = 0; c < nc; ++c) {
        const WMatrix& down = V.action(G.inv(reps[static_cast<size_t>(c)]));
        const WMatrix& up = V.action(reps[static_cast<size_t>(c)]);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                out.i_map.at(c * r + i, j) = down.at(i, j);
                out.n_map.at(i, c * r + j) = up.at(i, j);
            }
    }
    // N o i = index * id
    WMatrix ni = out.n_map * out.i_map;
    require(V.maps_equal(ni, WMatrix::identity(W, r).scaled(W->from_int(index))),
            errc::internal_integrality_failure, "norm composite is not multiplication by the index");
    WittVec invidx = W->from_int(index).inv();
    out.idempotent = (out.i_map * out.n_map).scaled(invidx);
    require(out.idempotent * out.idempotent == out.idempotent, errc::internal_integrality_failure,
            "splitting endomorphism is not idempotent");

    // W = ker(N) = im(1 - e), a free direct summand
    WMatrix complement_proj = WMatrix::identity(W, nc * r) - out.idempotent;
    WittSmith nfc = wsnf(complement_proj);
    int wrank = nc * r - r;
    for (int i = 0; i < wrank; ++i)
        require(nfc.val[static_cast<size_t>(i)] == 0, errc::internal_integrality_failure,
                "complement is not a free summand");
    out.w_basis = WMatrix::zeros(W, nc * r, wrank);
    for (int i = 0; i < nc * r; ++i)
        for (int j = 0; j < wrank; ++j) out.w_basis.at(i, j) = nfc.Uinv.at(i, j);
    // basis change [i-basis | w-basis]
    out.basis_change = whstack(out.i_map, out.w_basis);
    WMatrix S_inv = out.basis_change.inverse();
    std::vector<WMatrix> wact;
    for (int g = 0; g < G.order(); ++g) {
        WMatrix conj = S_inv * out.induced.action(g) * out.basis_change;
        // exact block-diagonal with top block = V's action
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                require(conj.at(i, j) == V.action(g).at(i, j), errc::internal_integrality_failure,
                        "image summand does not reproduce the original action");
        for (int i = 0; i < r; ++i)
            for (int j = r; j < nc * r; ++j)
                require(conj.at(i, j).is_zero() && conj.at(j, i).is_zero(),
                        errc::internal_integrality_failure, "splitting is not block diagonal");
        WMatrix wblock = WMatrix::zeros(W, wrank, wrank);
        for (int i = 0; i < wrank; ++i)
            for (int j = 0; j < wrank; ++j) wblock.at(i, j) = conj.at(r + i, r + j);
        wact.push_back(std::move(wblock));
    }
    out.complement = GModule::from_action_table(V.group(), W,
                                                std::vector<int>(static_cast<size_t>(wrank), V.d()),
                                                std::move(wact));
    return out;
}

} // namespace wittlift
