#include "wittlift/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wittlift {

namespace {

long powl_of(int p, int e) {
    long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// Streaming row-module echelonization over Z/p^d: rows are inserted one at a
// time and reduced against the current pivots, keeping at most one pivot row
// per column. The stored rows generate the same row module, so kernels can be
// computed from the small generator matrix instead of the full constraint
// matrix.
class RowAccumulator {
public:
    RowAccumulator(const ZpdRing& R, int cols) : R_(R), cols_(cols), col_pivot_(static_cast<size_t>(cols), -1) {}

    void insert(ZpdVec row) {
        for (int c = 0; c < cols_;) {
            long x = row[static_cast<size_t>(c)];
            if (x == 0) {
                ++c;
                continue;
            }
            int v = R_.val(x);
            int pr = col_pivot_[static_cast<size_t>(c)];
            if (pr < 0) {
                long unit = R_.div_pow(x, v);
                long scale = R_.unit_inv(unit);
                for (auto& e : row) e = R_.mul(e, scale);
                col_pivot_[static_cast<size_t>(c)] = int(rows_.size());
                pivot_col_.push_back(c);
                pivot_val_.push_back(v);
                rows_.push_back(std::move(row));
                return;
            }
            int pv = pivot_val_[static_cast<size_t>(pr)];
            if (v >= pv) {
                long q = R_.div_pow(x, pv);
                const ZpdVec& prow = rows_[static_cast<size_t>(pr)];
                for (int j = c; j < cols_; ++j)
                    row[static_cast<size_t>(j)] = R_.sub(row[static_cast<size_t>(j)], R_.mul(q, prow[static_cast<size_t>(j)]));
            } else {
                long unit = R_.div_pow(x, v);
                long scale = R_.unit_inv(unit);
                for (auto& e : row) e = R_.mul(e, scale);
                std::swap(rows_[static_cast<size_t>(pr)], row);
                pivot_val_[static_cast<size_t>(pr)] = v;
            }
        }
    }

    // generator rows as a matrix
    ZpdMat matrix() const {
        ZpdMat M = ZpdMat::zeros(R_, int(rows_.size()), cols_);
        for (size_t i = 0; i < rows_.size(); ++i)
            for (int j = 0; j < cols_; ++j) M.at(int(i), j) = rows_[i][static_cast<size_t>(j)];
        return M;
    }

private:
    ZpdRing R_;
    int cols_;
    std::vector<ZpdVec> rows_;
    std::vector<int> pivot_col_, pivot_val_;
    std::vector<int> col_pivot_;
};

int norm_slot_count(int order, int degree) {
    int s = 1;
    for (int i = 0; i < degree; ++i) s *= order - 1;
    return s;
}

// index of a normalized tuple (all components nonidentity)
int norm_index(int order, int degree, int g, int h = 0) {
    if (degree == 1) return g - 1;
    return (g - 1) * (order - 1) + (h - 1);
}

} // namespace

Cochain Cochain::zero(const GModule& M, int degree) {
    require(degree >= 0 && degree <= 2, errc::bad_request, "cochain degree must be 0, 1 or 2");
    Cochain c;
    c.degree = degree;
    c.module = M;
    size_t n = 1;
    for (int i = 0; i < degree; ++i) n *= static_cast<size_t>(M.group()->order());
    c.table.assign(n, M.zero_elt());
    return c;
}

Cochain Cochain::add(const Cochain& o) const {
    require(degree == o.degree && module.same_shape(o.module), errc::shape_mismatch,
            "cochain sum shape");
    Cochain r = *this;
    for (size_t i = 0; i < table.size(); ++i) r.table[i] = module.add(r.table[i], o.table[i]);
    return r;
}

Cochain Cochain::sub(const Cochain& o) const {
    require(degree == o.degree && module.same_shape(o.module), errc::shape_mismatch,
            "cochain diff shape");
    Cochain r = *this;
    for (size_t i = 0; i < table.size(); ++i) r.table[i] = module.sub(r.table[i], o.table[i]);
    return r;
}

bool Cochain::is_zero() const {
    for (const auto& x : table)
        if (!module.elt_is_zero(x)) return false;
    return true;
}

Cochain differential(const Cochain& c) {
    const GModule& M = c.module;
    int n = M.group()->order();
    Cochain d = Cochain::zero(M, c.degree + 1);
    if (c.degree == 0) {
        const ModElt& x = c.table[0];
        for (int g = 0; g < n; ++g) d.at1(g) = M.sub(M.apply(g, x), x);
    } else if (c.degree == 1) {
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h)
                d.at2(g, h) = M.add(M.sub(M.apply(g, c.at1(h)), c.at1(M.group()->mul(g, h))),
                                    c.at1(g));
    } else {
        fail(errc::bad_request, "differentials are materialized only up to degree 2");
    }
    return d;
}

// d^2 c evaluated pointwise (not materialized as a cochain table).
static ModElt d2_value(const Cochain& c, int g, int h, int l) {
    const GModule& M = c.module;
    auto mul = [&](int a, int b) { return M.group()->mul(a, b); };
    ModElt v = M.apply(g, c.at2(h, l));
    v = M.sub(v, c.at2(mul(g, h), l));
    v = M.add(v, c.at2(g, mul(h, l)));
    v = M.sub(v, c.at2(g, h));
    return v;
}

bool is_cocycle(const Cochain& c) {
    const GModule& M = c.module;
    int n = M.group()->order();
    if (c.degree == 0) {
        for (int g = 0; g < n; ++g)
            if (!M.elt_is_zero(M.sub(M.apply(g, c.table[0]), c.table[0]))) return false;
        return true;
    }
    if (c.degree == 1) {
        return differential(c).is_zero();
    }
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int l = 0; l < n; ++l)
                if (!M.elt_is_zero(d2_value(c, g, h, l))) return false;
    return true;
}

Cochain normalize_cocycle(const Cochain& c) {
    const GModule& M = c.module;
    if (c.degree == 1) {
        require(M.elt_is_zero(c.at1(0)), errc::not_a_cocycle, "1-cocycle with c(1) != 0");
        return c;
    }
    if (c.degree != 2) return c;
    // subtract d(b) for the constant 1-cochain b = c(1,1)
    ModElt v = c.at2(0, 0);
    Cochain r = c;
    int n = M.group()->order();
    for (int g = 0; g < n; ++g) {
        ModElt gv = M.apply(g, v);
        for (int h = 0; h < n; ++h) r.at2(g, h) = M.sub(r.at2(g, h), gv);
    }
    for (int h = 0; h < n; ++h)
        require(M.elt_is_zero(r.at2(0, h)) && M.elt_is_zero(r.at2(h, 0)), errc::not_a_cocycle,
                "cochain does not normalize; not a cocycle");
    return r;
}

long CohomologyGroup::order() const {
    long o = 1;
    for (int w : torsion_exps) o *= powl_of(p, w);
    return o;
}

std::string CohomologyGroup::orders_str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < torsion_exps.size(); ++i)
        os << (i ? "," : "") << powl_of(p, torsion_exps[i]);
    os << "]";
    return os.str();
}

ZpdVec CohomologyGroup::to_ambient(const Cochain& z) const {
    int n = G->order();
    if (pres.mode == Presentation::Mode::bar) {
        if (degree == 0) return M.flatten_elt(D, z.table[0]);
        Cochain nz = degree == 2 ? normalize_cocycle(z) : z;
        if (degree == 1)
            require(M.elt_is_zero(nz.at1(0)), errc::not_a_cocycle, "cochain is not normalized");
        int slots = norm_slot_count(n, degree);
        int fdim = M.rank() * M.ring()->field()->m();
        ZpdVec out(static_cast<size_t>(slots) * static_cast<size_t>(fdim), 0);
        for (int g = 1; g < n; ++g) {
            if (degree == 1) {
                ZpdVec f = M.flatten_elt(D, nz.at1(g));
                std::copy(f.begin(), f.end(),
                          out.begin() + long(norm_index(n, 1, g)) * fdim);
            } else {
                for (int h = 1; h < n; ++h) {
                    ZpdVec f = M.flatten_elt(D, nz.at2(g, h));
                    std::copy(f.begin(), f.end(),
                              out.begin() + long(norm_index(n, 2, g, h)) * fdim);
                }
            }
        }
        return out;
    }
    // periodic extraction: degree 1 evaluates at sigma; degree 2 takes
    // sum_i z(sigma^i, sigma), which the cocycle identity makes G-invariant.
    if (degree == 0) return M.flatten_elt(D, z.table[0]);
    int sigma = G->cyclic_generator();
    if (degree == 1) return M.flatten_elt(D, z.at1(sigma));
    ModElt acc = M.zero_elt();
    int e = 0;
    for (int i = 0; i < n; ++i) {
        acc = M.add(acc, z.at2(e, sigma));
        e = G->mul(e, sigma);
    }
    return M.flatten_elt(D, acc);
}

std::vector<long> CohomologyGroup::coordinates(const Cochain& z) const {
    require(z.degree == degree, errc::shape_mismatch, "cocycle degree mismatch");
    ZpdVec amb = to_ambient(z);
    ZpdVec x;
    require(zsolvable(amb, x), errc::not_a_cocycle,
            "element is not a cocycle of this presentation");
    ZpdVec tx = zapply(pres.R, pres.T, x);
    std::vector<long> coords;
    for (size_t i = 0; i < factorrows().size(); ++i) {
        long mod = powl_of(p, torsion_exps[i]);
        coords.push_back(((tx[static_cast<size_t>(factorrows()[i])] % mod) + mod) % mod);
    }
    return coords;
}

bool CohomologyGroup::is_coboundary(const Cochain& z) const {
    for (long c : coordinates(z))
        if (c != 0) return false;
    return true;
}

bool CohomologyGroup::same_class(const Cochain& a, const Cochain& b) const {
    return is_coboundary(a.sub(b));
}

Cochain CohomologyGroup::rep_combination(const std::vector<long>& coords) const {
    require(coords.size() == torsion_exps.size(), errc::shape_mismatch,
            "coordinate count mismatch");
    Cochain acc = Cochain::zero(reps.empty() ? M : reps[0].module, degree);
    for (size_t i = 0; i < coords.size(); ++i) {
        Cochain term = reps[i];
        long mod = powl_of(p, torsion_exps[i]);
        long k = ((coords[i] % mod) + mod) % mod;
        Cochain scaled = Cochain::zero(term.module, degree);
        for (size_t s = 0; s < term.table.size(); ++s)
            scaled.table[s] = term.module.scale(term.module.ring()->from_int(k), term.table[s]);
        acc = acc.add(scaled);
    }
    return acc;
}

namespace {

struct PresentationBuild {
    ZpdRing R;
    ZpdMat zgens;
    std::vector<ZpdVec> boundary_cols;
};

// Shared tail: relations of the cocycle generators + boundary expressions,
// Smith form of the combined presentation, factor extraction.
void finish_presentation(CohomologyGroup& H, PresentationBuild&& B,
                         const std::function<Cochain(const ZpdVec&)>& make_rep) {
    const ZpdRing& R = B.R;
    H.pres.R = R;
    H.pres.zgens = B.zgens;
    H.pres.zsolve = normal_form(R, B.zgens);
    int k = B.zgens.cols;
    ZpdMat relations = zkernel(R, H.pres.zsolve);
    ZpdMat M0 = relations;
    if (!B.boundary_cols.empty()) {
        ZpdMat Y = ZpdMat::zeros(R, k, int(B.boundary_cols.size()));
        for (size_t j = 0; j < B.boundary_cols.size(); ++j) {
            ZpdVec y;
            require(zsolve(R, H.pres.zsolve, B.boundary_cols[j], y),
                    errc::internal_integrality_failure,
                    "boundary is not a lattice cocycle");
            for (int i = 0; i < k; ++i) Y.at(i, int(j)) = y[static_cast<size_t>(i)];
        }
        M0 = zhstack(relations, Y);
    }
    auto snf = smith_normal_form(R, M0);
    H.pres.T = snf.U;
    for (int i = 0; i < k; ++i) {
        int v = (i < int(snf.val.size())) ? snf.val[static_cast<size_t>(i)] : R.d;
        if (v == 0) continue;
        H.pres.factor_rows.push_back(i);
        H.torsion_exps.push_back(std::min(v, R.d));
        // representative: zgens * (Uinv e_i)
        ZpdVec x(static_cast<size_t>(k), 0);
        for (int r = 0; r < k; ++r) x[static_cast<size_t>(r)] = snf.Uinv.at(r, i);
        ZpdVec amb = zapply(R, B.zgens, x);
        H.reps.push_back(make_rep(amb));
    }
}

} // namespace

bool CohomologyGroup::zsolvable(const ZpdVec& amb, ZpdVec& x) const {
    return zsolve(pres.R, pres.zsolve, amb, x);
}

CohomologyGroup cohomology_group(const GModule& M, int degree) {
    require(degree >= 0 && degree <= 2, errc::bad_request, "degree capped at 2");
    int n = M.group()->order();
    if (degree >= 2)
        require(n <= kH2GroupBudget, errc::budget_exceeded,
                "H^2 computations are capped at group order " + std::to_string(kH2GroupBudget));
    if (degree == 1)
        require(n <= kH1GroupBudget, errc::budget_exceeded,
                "H^1 computations are capped at group order " + std::to_string(kH1GroupBudget));
    int D = M.d();
    GModule::Flat F = M.flatten(D);
    int fdim = F.dim;
    CohomologyGroup H;
    H.G = M.group();
    H.M = M;
    H.degree = degree;
    H.p = M.ring()->p();
    H.D = D;
    H.pres.mode = CohomologyGroup::Presentation::Mode::bar;

    PresentationBuild B{F.R, ZpdMat(), {}};
    int slots = degree == 0 ? 1 : norm_slot_count(n, degree);
    int dim = slots * fdim;

    // cocycle constraints, streamed through the row accumulator
    RowAccumulator acc(F.R, dim);
    ZpdVec row(static_cast<size_t>(dim));
    auto clear_row = [&] { std::fill(row.begin(), row.end(), 0); };
    auto add_block = [&](int slot, const ZpdMat& A, int r, long sign, int colscale_of_slot) {
        // row += sign * (A row r) * lattice, into the given slot block
        for (int j = 0; j < fdim; ++j) {
            long v = A.at(r, j);
            if (v == 0) continue;
            long scaled = F.R.mul(v, F.lattice.at(j, j));
            long& dst = row[static_cast<size_t>(slot * fdim + j)];
            dst = sign > 0 ? F.R.add(dst, scaled) : F.R.sub(dst, scaled);
        }
        (void)colscale_of_slot;
    };
    ZpdMat I = ZpdMat::identity(F.R, fdim);

    if (degree == 0) {
        for (int g = 1; g < n; ++g)
            for (int r = 0; r < fdim; ++r) {
                clear_row();
                add_block(0, F.act[static_cast<size_t>(g)], r, +1, 0);
                add_block(0, I, r, -1, 0);
                acc.insert(row);
            }
    } else if (degree == 1) {
        for (int g = 1; g < n; ++g)
            for (int h = 1; h < n; ++h) {
                int gh = M.group()->mul(g, h);
                for (int r = 0; r < fdim; ++r) {
                    clear_row();
                    add_block(norm_index(n, 1, h), F.act[static_cast<size_t>(g)], r, +1, 0);
                    add_block(norm_index(n, 1, g), I, r, +1, 0);
                    if (gh != 0) add_block(norm_index(n, 1, gh), I, r, -1, 0);
                    acc.insert(row);
                }
            }
    } else {
        for (int g = 1; g < n; ++g)
            for (int h = 1; h < n; ++h)
                for (int l = 1; l < n; ++l) {
                    int gh = M.group()->mul(g, h), hl = M.group()->mul(h, l);
                    for (int r = 0; r < fdim; ++r) {
                        clear_row();
                        add_block(norm_index(n, 2, h, l), F.act[static_cast<size_t>(g)], r, +1, 0);
                        if (gh != 0) add_block(norm_index(n, 2, gh, l), I, r, -1, 0);
                        if (hl != 0) add_block(norm_index(n, 2, g, hl), I, r, +1, 0);
                        add_block(norm_index(n, 2, g, h), I, r, -1, 0);
                        acc.insert(row);
                    }
                }
    }
    // kernel of (d o lattice): generators of the cocycle lattice
    ZpdMat constraints = acc.matrix();
    ZpdMat K = constraints.rows == 0 ? ZpdMat::identity(F.R, dim)
                                     : zkernel(F.R, normal_form(F.R, constraints));
    // zgens = blockdiag(lattice) * K
    B.zgens = ZpdMat::zeros(F.R, dim, K.cols);
    for (int i = 0; i < dim; ++i) {
        long e = F.lattice.at(i % fdim, i % fdim);
        for (int j = 0; j < K.cols; ++j) B.zgens.at(i, j) = F.R.mul(e, K.at(i, j));
    }

    // boundaries d(C^(degree-1) lattice)
    if (degree >= 1) {
        int m = M.ring()->field()->m();
        int prev_slots = degree == 1 ? 1 : n; // degree-0 cochains: one slot; degree-1: one per element
        for (int s = 0; s < prev_slots; ++s) {
            if (degree == 2 && s == 0) continue; // normalized: c(1) = 0
            for (int j = 0; j < M.rank(); ++j)
                for (int l = 0; l < m; ++l) {
                    Cochain b = Cochain::zero(M, degree - 1);
                    if (degree == 1)
                        b.table[0] = M.basis_elt(j, l);
                    else
                        b.at1(s) = M.basis_elt(j, l);
                    Cochain db = differential(b);
                    CohomologyGroup tmp; // reuse ambient packing
                    tmp.G = H.G;
                    tmp.M = M;
                    tmp.degree = degree;
                    tmp.p = H.p;
                    tmp.D = D;
                    tmp.pres.mode = CohomologyGroup::Presentation::Mode::bar;
                    B.boundary_cols.push_back(tmp.to_ambient(db));
                }
        }
    }

    finish_presentation(H, std::move(B), [&, n, fdim](const ZpdVec& amb) {
        Cochain c = Cochain::zero(M, degree);
        if (degree == 0) {
            c.table[0] = M.unflatten_elt(D, amb);
        } else if (degree == 1) {
            for (int g = 1; g < n; ++g) {
                ZpdVec f(amb.begin() + long(norm_index(n, 1, g)) * fdim,
                         amb.begin() + long(norm_index(n, 1, g) + 1) * fdim);
                c.at1(g) = M.unflatten_elt(D, f);
            }
        } else {
            for (int g = 1; g < n; ++g)
                for (int h = 1; h < n; ++h) {
                    ZpdVec f(amb.begin() + long(norm_index(n, 2, g, h)) * fdim,
                             amb.begin() + long(norm_index(n, 2, g, h) + 1) * fdim);
                    c.at2(g, h) = M.unflatten_elt(D, f);
                }
        }
        return c;
    });
    return H;
}

CohomologyGroup cohomology_subgroup(const GModule& M, const Subgroup& H, int degree) {
    return cohomology_group(restrict_module(M, H), degree);
}

CohomologyGroup cyclic_oracle(const GModule& M, int degree) {
    require(M.group()->is_cyclic(), errc::not_cyclic, "periodic oracle needs a cyclic group");
    require(degree >= 0 && degree <= 2, errc::bad_request, "degree capped at 2");
    int n = M.group()->order();
    int sigma = M.group()->cyclic_generator();
    int D = M.d();
    GModule::Flat F = M.flatten(D);
    const ZpdRing& R = F.R;

    ZpdMat A = F.act[static_cast<size_t>(sigma)];
    ZpdMat AmI = zsub(R, A, ZpdMat::identity(R, F.dim));
    ZpdMat N = ZpdMat::zeros(R, F.dim, F.dim);
    {
        ZpdMat power = ZpdMat::identity(R, F.dim);
        for (int i = 0; i < n; ++i) {
            N = zadd(R, N, power);
            power = zmul(R, power, A);
        }
    }
    const ZpdMat& kermat = degree == 1 ? N : AmI;
    const ZpdMat* boundmat = degree == 0 ? nullptr : (degree == 1 ? &AmI : &N);

    CohomologyGroup H;
    H.G = M.group();
    H.M = M;
    H.degree = degree;
    H.p = M.ring()->p();
    H.D = D;
    H.pres.mode = degree == 0   ? CohomologyGroup::Presentation::Mode::periodic0
                  : degree == 1 ? CohomologyGroup::Presentation::Mode::periodic_odd
                                : CohomologyGroup::Presentation::Mode::periodic_even;

    PresentationBuild B{R, ZpdMat(), {}};
    ZpdMat KE = zmul(R, kermat, F.lattice);
    ZpdMat K = zkernel(R, normal_form(R, KE));
    B.zgens = zmul(R, F.lattice, K);
    if (boundmat) {
        ZpdMat BE = zmul(R, *boundmat, F.lattice);
        for (int j = 0; j < BE.cols; ++j) {
            ZpdVec col(static_cast<size_t>(F.dim));
            for (int i = 0; i < F.dim; ++i) col[static_cast<size_t>(i)] = BE.at(i, j);
            B.boundary_cols.push_back(std::move(col));
        }
    }

    finish_presentation(H, std::move(B), [&, sigma, n](const ZpdVec& amb) {
        ModElt u = M.unflatten_elt(D, amb);
        Cochain c = Cochain::zero(M, degree);
        if (degree == 0) {
            c.table[0] = u;
        } else if (degree == 1) {
            // c(sigma^j) = sum_{i<j} sigma^i . u
            ModElt acc = M.zero_elt();
            int e = 0;
            for (int j = 0; j < n; ++j) {
                c.at1(e) = acc;
                acc = M.add(acc, M.apply(e, u));
                e = M.group()->mul(e, sigma);
            }
        } else {
            // carry cocycle: c(sigma^a, sigma^b) = u when a + b >= n
            int e = 0;
            std::vector<int> elt_pow(static_cast<size_t>(n), 0);
            for (int a = 0; a < n; ++a) {
                elt_pow[static_cast<size_t>(e)] = a;
                e = M.group()->mul(e, sigma);
            }
            for (int g = 0; g < n; ++g)
                for (int h = 0; h < n; ++h)
                    if (elt_pow[static_cast<size_t>(g)] + elt_pow[static_cast<size_t>(h)] >= n) c.at2(g, h) = u;
        }
        return c;
    });
    return H;
}

Cochain map_cochain(const GModMap& f, const Cochain& c) {
    require(c.module.same_shape(f.src), errc::shape_mismatch, "cochain module mismatch");
    Cochain out = Cochain::zero(f.dst, c.degree);
    for (size_t i = 0; i < c.table.size(); ++i) out.table[i] = f.apply(c.table[i]);
    return out;
}

ZpdMat induced_map_matrix(const GModMap& f, const CohomologyGroup& Hsrc,
                          const CohomologyGroup& Hdst) {
    require(f.is_equivariant(), errc::not_equivariant, "induced map of a non-equivariant morphism");
    ZpdRing R(Hdst.p, Hdst.D);
    ZpdMat A = ZpdMat::zeros(R, int(Hdst.torsion_exps.size()), int(Hsrc.torsion_exps.size()));
    for (size_t j = 0; j < Hsrc.torsion_exps.size(); ++j) {
        std::vector<long> coords = Hdst.coordinates(map_cochain(f, Hsrc.reps[j]));
        for (size_t i = 0; i < coords.size(); ++i) A.at(int(i), int(j)) = R.norm(coords[i]);
    }
    return A;
}

namespace {

// Surjectivity of the presented map A: ⊕Z/p^(w_src) -> ⊕Z/p^(w_dst):
// the span of [A | diag(p^(w_dst))] must be everything.
bool presented_surjective(const ZpdRing& R, const ZpdMat& A, const std::vector<int>& wdst,
                          int* witness_index) {
    if (wdst.empty()) return true;
    ZpdMat rel = ZpdMat::zeros(R, int(wdst.size()), int(wdst.size()));
    for (size_t i = 0; i < wdst.size(); ++i) rel.at(int(i), int(i)) = R.pshift(wdst[i]);
    ZpdMat M = A.cols > 0 ? zhstack(A, rel) : rel;
    auto snf = smith_normal_form(R, M);
    for (size_t i = 0; i < wdst.size(); ++i) {
        int v = i < snf.val.size() ? snf.val[i] : R.d;
        if (v > 0) {
            if (witness_index) {
                // an uncovered class: Uinv e_i in factor coordinates
                *witness_index = int(i);
            }
            return false;
        }
    }
    return true;
}

} // namespace

SurjectivityReport is_n_surjective(const GModMap& f, int degree) {
    require(f.src.group() == f.dst.group(), errc::shape_mismatch,
            "surjectivity sweep needs one group");
    SurjectivityReport rep;
    rep.all = true;
    for (const auto& H : f.src.group()->subgroups()) {
        GModMap fh{restrict_module(f.src, H), restrict_module(f.dst, H), f.mat};
        CohomologyGroup hs = cohomology_group(fh.src, degree);
        CohomologyGroup hd = cohomology_group(fh.dst, degree);
        ZpdMat A = induced_map_matrix(fh, hs, hd);
        int widx = -1;
        bool ok = presented_surjective(hd.pres.R, A, hd.torsion_exps, &widx);
        SurjectivityItem item;
        item.H = H;
        item.surjective = ok;
        item.src_orders = hs.torsion_exps;
        item.dst_orders = hd.torsion_exps;
        if (!ok) {
            // build the uncovered class from the combined presentation
            ZpdRing R = hd.pres.R;
            ZpdMat rel = ZpdMat::zeros(R, int(hd.torsion_exps.size()), int(hd.torsion_exps.size()));
            for (size_t i = 0; i < hd.torsion_exps.size(); ++i)
                rel.at(int(i), int(i)) = R.pshift(hd.torsion_exps[i]);
            ZpdMat Mfull = A.cols > 0 ? zhstack(A, rel) : rel;
            auto snf = smith_normal_form(R, Mfull);
            std::vector<long> coords(hd.torsion_exps.size(), 0);
            for (size_t r = 0; r < hd.torsion_exps.size(); ++r)
                coords[r] = snf.Uinv.at(int(r), widx);
            item.witness = hd.rep_combination(coords);
            rep.all = false;
        }
        rep.items.push_back(std::move(item));
    }
    return rep;
}

std::optional<std::vector<long>> solve_class_preimage(const GModMap& f,
                                                      const CohomologyGroup& Hsrc,
                                                      const CohomologyGroup& Hdst,
                                                      const std::vector<long>& target_coords) {
    ZpdRing R = Hdst.pres.R;
    ZpdMat A = induced_map_matrix(f, Hsrc, Hdst);
    int t = int(Hdst.torsion_exps.size());
    ZpdMat rel = ZpdMat::zeros(R, t, t);
    for (int i = 0; i < t; ++i) rel.at(i, i) = R.pshift(Hdst.torsion_exps[static_cast<size_t>(i)]);
    ZpdMat M = A.cols > 0 ? zhstack(A, rel) : rel;
    ZpdVec b(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) b[static_cast<size_t>(i)] = R.norm(target_coords[static_cast<size_t>(i)]);
    ZpdVec x;
    if (!zsolve(R, normal_form(R, M), b, x)) return std::nullopt;
    std::vector<long> out;
    for (int j = 0; j < A.cols; ++j) out.push_back(x[static_cast<size_t>(j)]);
    return out;
}

ShapiroData shapiro_prepare(const Character& chi, const GSet& X) {
    require(chi.G == X.group, errc::shape_mismatch, "character and G-set group mismatch");
    ShapiroData S;
    S.H = X.group;
    S.chi = chi;
    S.X = X;
    S.module = twist(GModule::permutation(chi.W, X), chi, 1);
    S.orbs = orbits(X);
    S.transversal.assign(static_cast<size_t>(X.size), 0);
    for (const auto& orb : S.orbs) {
        for (int x : orb.points) {
            for (int t = 0; t < S.H->order(); ++t)
                if (X.apply(t, orb.base) == x) {
                    S.transversal[static_cast<size_t>(x)] = t;
                    break;
                }
        }
        S.stabs.push_back(orb.stabilizer.as_group());
        S.stab_chis.push_back(chi.restricted(orb.stabilizer));
        S.stab_mods.push_back(S.stab_chis.back().rank1_module());
    }
    return S;
}

std::vector<Cochain> shapiro_forward(const ShapiroData& S, const Cochain& c) {
    require(c.degree == 1 && c.module.same_shape(S.module), errc::shape_mismatch,
            "Shapiro transport expects a 1-cochain on the twisted permutation module");
    std::vector<Cochain> parts;
    for (size_t oi = 0; oi < S.orbs.size(); ++oi) {
        const auto& orb = S.orbs[oi];
        const auto& stab = S.stabs[oi];
        Cochain part = Cochain::zero(S.stab_mods[oi], 1);
        for (int hs = 0; hs < stab.group->order(); ++hs) {
            int h = stab.to_parent[static_cast<size_t>(hs)];
            part.at1(hs) = {c.at1(h)[static_cast<size_t>(orb.base)]};
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

Cochain shapiro_backward(const ShapiroData& S, const std::vector<Cochain>& parts) {
    require(parts.size() == S.orbs.size(), errc::shape_mismatch, "one cocycle per orbit expected");
    Cochain c = Cochain::zero(S.module, 1);
    const WittRing* W = S.chi.W;
    for (size_t oi = 0; oi < S.orbs.size(); ++oi) {
        const auto& orb = S.orbs[oi];
        const auto& stab = S.stabs[oi];
        for (int g = 0; g < S.H->order(); ++g) {
            for (int x : orb.points) {
                int ginvx = S.X.apply(S.H->inv(g), x);
                int tx = S.transversal[static_cast<size_t>(x)];
                int h = S.H->mul(S.H->mul(S.H->inv(tx), g), S.transversal[static_cast<size_t>(ginvx)]);
                int hs = stab.from_parent[static_cast<size_t>(h)];
                require(hs >= 0, errc::internal_integrality_failure,
                        "transversal transport left the stabilizer");
                WittVec val = S.chi(tx) * parts[oi].at1(hs)[0];
                c.at1(g)[static_cast<size_t>(x)] = W->lift_pad(W->reduce(val, S.module.d()));
            }
        }
    }
    return c;
}

} // namespace wittlift
