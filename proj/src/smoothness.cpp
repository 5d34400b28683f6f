#include "wittlift/smoothness.hpp"

#include <algorithm>

namespace wittlift {

const SurjectivityItem* CyclotomicCertificate::find_subgroup(
    const std::vector<int>& elements) const {
    for (const auto& item : report.items)
        if (item.H.elements == elements) return &item;
    return nullptr;
}

CyclotomicCertificate check_cyclotomic(GroupPtr G, const Character& chi, int n, int d) {
    require(chi.G == G, errc::shape_mismatch, "character belongs to another group");
    require(chi.W->d() == d + 1, errc::bad_length,
            "depth-d certificates need character values in W_(d+1)");
    CyclotomicCertificate cert;
    cert.G = G;
    cert.chi = chi;
    cert.n = n;
    cert.d = d;
    GModule tensor_power = chi.power(n).rank1_module();
    cert.report = is_n_surjective(GModMap::reduction(tensor_power, 1), n);
    cert.pass = cert.report.all;
    return cert;
}

std::vector<Character> enumerate_characters(GroupPtr G, const WittRing* We, long budget) {
    auto ab = G->abelianization();
    const auto& Q = *ab.group;
    // unit values of exact order dividing each generator order
    std::vector<int> gens = Q.generators();
    if (gens.empty() || (gens.size() == 1 && gens[0] == 0)) gens = {0};
    std::vector<std::vector<WittVec>> cands;
    long total = 1;
    for (int gidx : gens) {
        int o = Q.element_order(gidx);
        std::vector<WittVec> vals;
        for (long idx = 0; idx < We->size(); ++idx) {
            WittVec u = We->from_enum_index(idx);
            if (!u.is_unit()) continue;
            if (u.pow(o) == We->one()) vals.push_back(u);
        }
        total *= long(vals.size());
        require(total <= budget, errc::budget_exceeded,
                "character sweep exceeds the budget of " + std::to_string(budget));
        cands.push_back(std::move(vals));
    }
    std::vector<Character> out;
    std::vector<size_t> pick(gens.size(), 0);
    const auto& tree = Q.word_tree();
    for (long code = 0; code < total; ++code) {
        long c = code;
        for (size_t i = 0; i < gens.size(); ++i) {
            pick[i] = static_cast<size_t>(c % long(cands[i].size()));
            c /= long(cands[i].size());
        }
        // extend along the word tree and verify multiplicativity
        std::vector<WittVec> vals(static_cast<size_t>(Q.order()), We->one());
        for (int idx = 1; idx < Q.order(); ++idx) {
            int y = tree.order[static_cast<size_t>(idx)];
            vals[static_cast<size_t>(y)] =
                cands[static_cast<size_t>(tree.gen[static_cast<size_t>(y)])]
                     [pick[static_cast<size_t>(tree.gen[static_cast<size_t>(y)])]] *
                vals[static_cast<size_t>(tree.parent[static_cast<size_t>(y)])];
        }
        bool ok = true;
        for (int a = 0; a < Q.order() && ok; ++a)
            for (int b = 0; b < Q.order() && ok; ++b)
                ok = vals[static_cast<size_t>(Q.mul(a, b))] ==
                     vals[static_cast<size_t>(a)] * vals[static_cast<size_t>(b)];
        if (!ok) continue;
        // pull back to G
        std::vector<WittVec> pulled;
        pulled.reserve(static_cast<size_t>(G->order()));
        for (int g = 0; g < G->order(); ++g)
            pulled.push_back(vals[static_cast<size_t>(ab.proj[static_cast<size_t>(g)])]);
        out.push_back(Character::from_values(We, G, std::move(pulled)));
    }
    // drop duplicates (distinct generator assignments can pull back equally)
    std::vector<Character> dedup;
    for (auto& chi : out) {
        bool seen = false;
        for (const auto& have : dedup) seen = seen || have.equal(chi);
        if (!seen) dedup.push_back(std::move(chi));
    }
    return dedup;
}

SmoothSearchResult smooth_search(GroupPtr G, int n, int d, const FieldDesc* fd) {
    const WittRing* We = WittRing::get(fd, d + 1);
    SmoothSearchResult res;
    for (const Character& chi : enumerate_characters(G, We)) {
        CyclotomicCertificate cert = check_cyclotomic(G, chi, n, d);
        if (cert.pass) {
            res.found = true;
            res.witness = std::move(cert);
            return res;
        }
        res.failures.push_back(std::move(cert));
    }
    return res;
}

Cd1Report cd1_check(GroupPtr G, int p, int n, int d, const FieldDesc* fd) {
    require(fd->p() == p, errc::bad_request, "field characteristic must match p");
    const WittRing* W1 = WittRing::get(FieldDesc::get(p, 1), 1);
    Cd1Report rep;
    rep.pass = true;
    GModule Fp = GModule::trivial(W1, G, {1});
    for (const auto& H : G->subgroups()) {
        CohomologyGroup h2 = cohomology_subgroup(Fp, H, 2);
        Cd1Report::Item item;
        item.H = H;
        item.h2_zero = h2.is_zero();
        item.orders = h2.torsion_exps;
        if (!item.h2_zero && rep.pass) {
            rep.pass = false;
            rep.witness = H;
        }
        rep.items.push_back(std::move(item));
    }
    if (rep.pass) {
        // every rank-1 free module must then be n-cyclotomic
        const WittRing* We = WittRing::get(fd, d + 1);
        for (const Character& chi : enumerate_characters(G, We)) {
            bool ok = check_cyclotomic(G, chi, n, d).pass;
            rep.rank1_checks.emplace_back(chi, ok);
            rep.pass = rep.pass && ok;
        }
    }
    return rep;
}

TofpResult tofp_property(const CyclotomicCertificate& cert, const GModMap& pi) {
    require(cert.pass, errc::certificate_required, "the certificate must pass first");
    require(pi.src.group() == cert.G && pi.dst.group() == cert.G, errc::shape_mismatch,
            "surjection must live over the certified group");
    require(pi.src.d() == cert.d + 1 && pi.dst.ring()->field() == pi.src.ring()->field(),
            errc::bad_length, "surjection must be between W_(d+1)-modules");
    // trivial actions only
    for (int g = 0; g < cert.G->order(); ++g) {
        require(pi.src.maps_equal(pi.src.action(g), WMatrix::identity(pi.src.ring(), pi.src.rank())),
                errc::bad_request, "source action must be trivial");
        require(pi.dst.maps_equal(pi.dst.action(g), WMatrix::identity(pi.dst.ring(), pi.dst.rank())),
                errc::bad_request, "target action must be trivial");
    }
    // pi surjective on the lattices
    {
        int D = pi.src.d();
        ZpdRing R(pi.src.ring()->p(), D);
        GModule::Flat Fs = pi.src.flatten(D), Fd = pi.dst.flatten(D);
        ZpdMat comp = zmul(R, pi.flat_matrix(D), Fs.lattice);
        require(zspans(R, normal_form(R, comp), Fd.lattice), errc::not_surjective,
                "the given map is not surjective");
    }
    GModule src_tw = twist(pi.src, cert.chi, cert.n);
    GModule dst_tw = twist(pi.dst, cert.chi, cert.n);
    GModMap pin{src_tw, dst_tw, pi.mat};
    TofpResult out;
    out.report = is_n_surjective(pin, cert.n);
    out.pass = out.report.all;
    return out;
}

} // namespace wittlift
