#include "wittlift/yoneda.hpp"

namespace wittlift {

namespace {

long powl_of(int p, int e) {
    long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// Solve f(x) = target inside the source lattice, where f is given by the
// ambient flat matrix (columns respect the scaled lattices).
bool solve_in_lattice(const GModule& src, const GModule& dst, const ZpdMat& flat_f, int D,
                      const ModElt& target, ModElt& out) {
    ZpdRing R(src.ring()->p(), D);
    GModule::Flat Fs = src.flatten(D);
    ZpdMat comp = zmul(R, flat_f, Fs.lattice);
    ZpdVec b = dst.flatten_elt(D, target);
    ZpdVec y;
    if (!zsolve(R, normal_form(R, comp), b, y)) return false;
    out = src.unflatten_elt(D, zapply(R, Fs.lattice, y));
    return true;
}

ModElt matrix_column_elt(const GModule& M, const WMatrix& A, int j) {
    ModElt x(static_cast<size_t>(M.rank()));
    for (int i = 0; i < M.rank(); ++i) x[static_cast<size_t>(i)] = A.at(i, j);
    return M.canonical(std::move(x));
}

} // namespace

Extension1 Extension1::make(GModule sub, GModule mid, GModule quo, WMatrix incl, WMatrix proj) {
    Extension1 e{std::move(sub), std::move(mid), std::move(quo), std::move(incl), std::move(proj)};
    e.validate();
    return e;
}

void Extension1::validate() const {
    require(sub.ring() == mid.ring() && mid.ring() == quo.ring(), errc::mixed_rings,
            "extension terms over different rings");
    require(sub.group() == mid.group() && mid.group() == quo.group(), errc::mixed_rings,
            "extension terms over different groups");
    require(quo.is_free(), errc::not_free, "the quotient term must be free");
    require(incl.rows == mid.rank() && incl.cols == sub.rank(), errc::shape_mismatch,
            "inclusion shape");
    require(proj.rows == quo.rank() && proj.cols == mid.rank(), errc::shape_mismatch,
            "projection shape");
    GModMap fi{sub, mid, incl};
    GModMap fp{mid, quo, proj};
    require(fi.is_equivariant(), errc::not_equivariant, "inclusion is not equivariant");
    require(fp.is_equivariant(), errc::not_equivariant, "projection is not equivariant");

    int D = mid.d();
    ZpdRing R(mid.ring()->p(), D);
    GModule::Flat Fs = sub.flatten(D), Fm = mid.flatten(D), Fq = quo.flatten(D);
    ZpdMat fincl = fi.flat_matrix(D), fproj = fp.flat_matrix(D);

    // injectivity: kernel of incl on the sub lattice is zero
    {
        ZpdMat comp = zmul(R, fincl, Fs.lattice);
        ZpdMat K = zkernel(R, normal_form(R, comp));
        ZpdMat latk = zmul(R, Fs.lattice, K);
        require(zis_zero(latk), errc::not_exact, "inclusion is not injective");
    }
    // surjectivity: every quo lattice generator has a preimage
    {
        ZpdMat comp = zmul(R, fproj, Fm.lattice);
        auto nf = normal_form(R, comp);
        require(zspans(R, nf, Fq.lattice), errc::not_exact, "projection is not surjective");
    }
    // exactness in the middle: im(incl) = ker(proj) as lattices
    {
        ZpdMat image = zmul(R, fincl, Fs.lattice);
        ZpdMat comp = zmul(R, fproj, Fm.lattice);
        ZpdMat K = zkernel(R, normal_form(R, comp));
        ZpdMat kernel_lat = zmul(R, Fm.lattice, K);
        auto nf_im = normal_form(R, image);
        auto nf_ker = normal_form(R, kernel_lat);
        require(zspans(R, nf_im, kernel_lat), errc::not_exact,
                "kernel of the projection is not contained in the image");
        require(zspans(R, nf_ker, image), errc::not_exact,
                "image of the inclusion is not contained in the kernel");
    }
}

WMatrix default_section(const Extension1& e) {
    int D = e.mid.d();
    GModMap fp{e.mid, e.quo, e.proj};
    ZpdMat fproj = fp.flat_matrix(D);
    WMatrix s = WMatrix::zeros(e.mid.ring(), e.mid.rank(), e.quo.rank());
    for (int t = 0; t < e.quo.rank(); ++t) {
        ModElt target = e.quo.basis_elt(t, 0);
        ModElt pre;
        require(solve_in_lattice(e.mid, e.quo, fproj, D, target, pre), errc::not_exact,
                "projection admits no section");
        for (int i = 0; i < e.mid.rank(); ++i) s.at(i, t) = pre[static_cast<size_t>(i)];
    }
    return s;
}

ExtClass1 class_with_section(const Extension1& e, const WMatrix& s) {
    // sanity: proj o s = id on the quotient
    require(e.quo.maps_equal(e.proj * s, WMatrix::identity(e.quo.ring(), e.quo.rank())),
            errc::not_exact, "matrix is not a section of the projection");
    ExtClass1 out;
    out.hom = hom_module(e.quo, e.sub);
    out.cocycle = Cochain::zero(out.hom, 1);
    int D = e.mid.d();
    GModMap fi{e.sub, e.mid, e.incl};
    ZpdMat fincl = fi.flat_matrix(D);
    const auto& G = *e.mid.group();
    for (int g = 0; g < G.order(); ++g) {
        WMatrix twisted = e.mid.action(g) * s * e.quo.action(G.inv(g));
        WMatrix diff = twisted - s; // lands in ker(proj) = im(incl)
        WMatrix b = WMatrix::zeros(e.sub.ring(), e.sub.rank(), e.quo.rank());
        for (int t = 0; t < e.quo.rank(); ++t) {
            ModElt val = matrix_column_elt(e.mid, diff, t);
            ModElt pre;
            require(solve_in_lattice(e.sub, e.mid, fincl, D, val, pre), errc::not_exact,
                    "section defect is not in the image of the inclusion");
            for (int i = 0; i < e.sub.rank(); ++i) b.at(i, t) = pre[static_cast<size_t>(i)];
        }
        out.cocycle.at1(g) = hom_elt(out.hom, b, e.quo, e.sub);
    }
    require(is_cocycle(out.cocycle), errc::internal_integrality_failure,
            "extension produced a non-cocycle");
    out.h1 = cohomology_group(out.hom, 1);
    out.coords = out.h1.coordinates(out.cocycle);
    return out;
}

ExtClass1 class_of_extension(const Extension1& e) {
    return class_with_section(e, default_section(e));
}

Extension1 extension_of_class(const Cochain& c, const GModule& quo, const GModule& sub) {
    require(c.degree == 1, errc::bad_request, "extension classes live in degree 1");
    require(is_cocycle(c), errc::not_a_cocycle, "table violates the cocycle identity");
    GModule hom = hom_module(quo, sub);
    require(c.module.same_shape(hom), errc::shape_mismatch,
            "cocycle values must lie in Hom(quo, sub)");
    const WittRing* W = quo.ring();
    const auto& G = *quo.group();
    int rs = sub.rank(), rq = quo.rank();
    std::vector<int> profile = sub.profile();
    profile.insert(profile.end(), quo.profile().begin(), quo.profile().end());
    std::vector<WMatrix> table;
    for (int g = 0; g < G.order(); ++g) {
        WMatrix cg = hom_elt_matrix(hom, c.at1(g), quo, sub) * quo.action(g);
        WMatrix M = WMatrix::zeros(W, rs + rq, rs + rq);
        for (int i = 0; i < rs; ++i)
            for (int j = 0; j < rs; ++j) M.at(i, j) = sub.action(g).at(i, j);
        for (int i = 0; i < rs; ++i)
            for (int j = 0; j < rq; ++j) M.at(i, rs + j) = cg.at(i, j);
        for (int i = 0; i < rq; ++i)
            for (int j = 0; j < rq; ++j) M.at(rs + i, rs + j) = quo.action(g).at(i, j);
        table.push_back(std::move(M));
    }
    GModule mid = GModule::from_action_table(quo.group(), W, std::move(profile), std::move(table));
    WMatrix incl = WMatrix::zeros(W, rs + rq, rs);
    for (int i = 0; i < rs; ++i) incl.at(i, i) = W->one();
    WMatrix proj = WMatrix::zeros(W, rq, rs + rq);
    for (int i = 0; i < rq; ++i) proj.at(i, rs + i) = W->one();
    return Extension1::make(sub, std::move(mid), quo, std::move(incl), std::move(proj));
}

Extension1 pushforward(const Extension1& e, const GModMap& f) {
    require(f.src.same_shape(e.sub) && f.src.equal_actions(e.sub), errc::shape_mismatch,
            "pushforward along a map with the wrong source");
    require(f.is_equivariant(), errc::not_equivariant, "pushforward map is not equivariant");
    ExtClass1 cls = class_of_extension(e);
    GModule hom2 = hom_module(e.quo, f.dst);
    Cochain c2 = Cochain::zero(hom2, 1);
    for (int g = 0; g < e.quo.group()->order(); ++g) {
        WMatrix cg = hom_elt_matrix(cls.hom, cls.cocycle.at1(g), e.quo, e.sub);
        WMatrix fcg = WMatrix::zeros(f.dst.ring(), f.dst.rank(), e.quo.rank());
        for (int t = 0; t < e.quo.rank(); ++t) {
            ModElt v = f.apply(matrix_column_elt(e.sub, cg, t));
            for (int i = 0; i < f.dst.rank(); ++i) fcg.at(i, t) = v[static_cast<size_t>(i)];
        }
        c2.at1(g) = hom_elt(hom2, fcg, e.quo, f.dst);
    }
    return extension_of_class(c2, e.quo, f.dst);
}

Extension1 pullback(const Extension1& e, const GModMap& g) {
    require(g.dst.same_shape(e.quo) && g.dst.equal_actions(e.quo), errc::shape_mismatch,
            "pullback along a map with the wrong target");
    require(g.src.is_free(), errc::not_free, "pullback source must be free");
    require(g.is_equivariant(), errc::not_equivariant, "pullback map is not equivariant");
    ExtClass1 cls = class_of_extension(e);
    GModule hom2 = hom_module(g.src, e.sub);
    const WittRing* W = e.sub.ring();
    Cochain c2 = Cochain::zero(hom2, 1);
    for (int el = 0; el < e.quo.group()->order(); ++el) {
        WMatrix cg = hom_elt_matrix(cls.hom, cls.cocycle.at1(el), e.quo, e.sub);
        WMatrix comp = cg * g.mat.lifted(W);
        c2.at1(el) = hom_elt(hom2, comp, g.src, e.sub);
    }
    return extension_of_class(c2, g.src, e.sub);
}

Extension1 baer_sum(const Extension1& e1, const Extension1& e2) {
    require(e1.sub.equal_actions(e2.sub) && e1.quo.equal_actions(e2.quo), errc::shape_mismatch,
            "Baer sum operands must share the outer terms");
    ExtClass1 c1 = class_of_extension(e1);
    ExtClass1 c2 = class_of_extension(e2);
    return extension_of_class(c1.cocycle.add(c2.cocycle), e1.quo, e1.sub);
}

namespace {

// Enumeration of the p^e-torsion elements of a module, coordinate-lex order.
std::vector<ModElt> torsion_elements(const GModule& M, int e, long budget) {
    const WittRing* W = M.ring();
    int m = W->field()->m();
    long count = 1;
    std::vector<long> slot_count;
    for (int f : M.profile()) {
        long c = powl_of(W->p(), std::min(e, f) * m);
        slot_count.push_back(c);
        count *= c;
        require(count <= budget, errc::budget_exceeded, "linkage enumeration exceeds the budget");
    }
    std::vector<ModElt> out;
    out.reserve(static_cast<size_t>(count));
    for (long code = 0; code < count; ++code) {
        ModElt x = M.zero_elt();
        long c = code;
        for (int i = 0; i < M.rank(); ++i) {
            int f = M.profile()[static_cast<size_t>(i)];
            long local = c % slot_count[static_cast<size_t>(i)];
            c /= slot_count[static_cast<size_t>(i)];
            // digits of the min(e,f)-torsion part, placed at valuation f - min(e,f)
            int t = std::min(e, f);
            long pt = powl_of(W->p(), t);
            std::vector<long> z(static_cast<size_t>(m), 0);
            long shift = powl_of(W->p(), f - t);
            for (int l = 0; l < m; ++l) {
                z[static_cast<size_t>(l)] = (local % pt) * shift;
                local /= pt;
            }
            x[static_cast<size_t>(i)] = theta(W, f, z);
        }
        out.push_back(M.canonical(std::move(x)));
    }
    return out;
}

// phi given by generator images: phi(x) = sum_i lift(x_i) * cols[i]
ModElt phi_apply(const GModule& src, const GModule& dst, const std::vector<ModElt>& cols,
                 const ModElt& x) {
    ModElt acc = dst.zero_elt();
    for (int i = 0; i < src.rank(); ++i)
        acc = dst.add(acc, dst.scale(x[static_cast<size_t>(i)], cols[static_cast<size_t>(i)]));
    return acc;
}

} // namespace

bool linked_brute(const Extension1& e1, const Extension1& e2, long budget) {
    require(e1.sub.equal_actions(e2.sub) && e1.quo.equal_actions(e2.quo), errc::shape_mismatch,
            "linkage needs identical outer terms");
    const GModule& M1 = e1.mid;
    const GModule& M2 = e2.mid;
    const auto& G = *M1.group();
    int m = M1.ring()->field()->m();

    // candidate images per generator slot of mid1 (torsion-compatible)
    std::vector<std::vector<ModElt>> cand;
    long total = 1;
    for (int e : M1.profile()) {
        cand.push_back(torsion_elements(M2, e, budget));
        total *= long(cand.back().size());
        require(total <= budget, errc::budget_exceeded, "linkage enumeration exceeds the budget");
    }

    std::vector<size_t> pick(static_cast<size_t>(M1.rank()), 0);
    std::vector<ModElt> cols(static_cast<size_t>(M1.rank()), M2.zero_elt());
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (int i = 0; i < M1.rank(); ++i) {
            pick[static_cast<size_t>(i)] = static_cast<size_t>(c % long(cand[static_cast<size_t>(i)].size()));
            c /= long(cand[static_cast<size_t>(i)].size());
            cols[static_cast<size_t>(i)] = cand[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]];
        }
        // phi o incl1 = incl2 on sub generators
        bool ok = true;
        for (int j = 0; j < e1.sub.rank() && ok; ++j)
            for (int l = 0; l < m && ok; ++l) {
                ModElt sb = e1.sub.basis_elt(j, l);
                ModElt lhs = phi_apply(M1, M2, cols, GModMap{e1.sub, M1, e1.incl}.apply(sb));
                ModElt rhs = GModMap{e2.sub, M2, e2.incl}.apply(sb);
                ok = M2.elt_equal(lhs, rhs);
            }
        // proj2 o phi = proj1 on mid generators
        for (int j = 0; j < M1.rank() && ok; ++j)
            for (int l = 0; l < m && ok; ++l) {
                ModElt mb = M1.basis_elt(j, l);
                ModElt lhs = GModMap{M2, e2.quo, e2.proj}.apply(phi_apply(M1, M2, cols, mb));
                ModElt rhs = GModMap{M1, e1.quo, e1.proj}.apply(mb);
                ok = e1.quo.elt_equal(lhs, rhs);
            }
        // equivariance on the group generators
        for (int gi : G.generators()) {
            if (!ok) break;
            for (int j = 0; j < M1.rank() && ok; ++j)
                for (int l = 0; l < m && ok; ++l) {
                    ModElt mb = M1.basis_elt(j, l);
                    ModElt lhs = phi_apply(M1, M2, cols, M1.apply(gi, mb));
                    ModElt rhs = M2.apply(gi, phi_apply(M1, M2, cols, mb));
                    ok = M2.elt_equal(lhs, rhs);
                }
        }
        if (ok) return true;
    }
    return false;
}

} // namespace wittlift
