#include "wittlift/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace wittlift {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    fail(errc::parse_error, where + ": " + what);
}

long get_long(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer()) bad(where, std::string("missing integer '") + key + "'");
    return j[key].get<long>();
}

} // namespace

json field_to_json(const FieldDesc* fd) {
    json j;
    j["p"] = fd->p();
    j["m"] = fd->m();
    if (fd->m() > 1) j["modulus"] = fd->modulus();
    return j;
}

const FieldDesc* field_from_json(const json& j) {
    int p = int(get_long(j, "p", "field"));
    int m = j.contains("m") ? int(get_long(j, "m", "field")) : 1;
    // prime fields have a canonical modulus; a stored one is ignored
    if (m == 1) return FieldDesc::get(p, 1);
    if (!j.contains("modulus") || !j["modulus"].is_array())
        bad("field", "an irreducible modulus array is required when m > 1");
    std::vector<int> modulus;
    for (const auto& c : j["modulus"]) modulus.push_back(c.get<int>());
    return FieldDesc::get(p, m, std::move(modulus));
}

json ring_to_json(const WittRing* W) {
    json j = field_to_json(W->field());
    j["d"] = W->d();
    return j;
}

const WittRing* ring_from_json(const json& j) {
    return WittRing::get(field_from_json(j), int(get_long(j, "d", "ring")));
}

json witt_to_json(const WittVec& v) {
    json j = json::array();
    for (int i = 0; i < v.ring()->d(); ++i) j.push_back(v.coord(i).coords());
    return j;
}

WittVec witt_from_json(const WittRing* W, const json& j) {
    if (!j.is_array() || int(j.size()) != W->d()) bad("witt", "expected d coordinate arrays");
    std::vector<FqElem> coords;
    for (const auto& cj : j) {
        if (!cj.is_array() || int(cj.size()) != W->field()->m())
            bad("witt", "coordinate has wrong field degree");
        std::array<uint8_t, kMaxExtDegree> c{};
        for (int l = 0; l < W->field()->m(); ++l) {
            long v = cj[size_t(l)].get<long>();
            long r = v % W->p();
            c[size_t(l)] = uint8_t(r < 0 ? r + W->p() : r);
        }
        coords.push_back(FqElem(W->field(), c));
    }
    return W->from_coords(coords);
}

json group_to_json(const FiniteGroup& G) {
    json j;
    j["table"] = G.table();
    j["generators"] = G.generators();
    return j;
}

GroupPtr group_from_json(const json& j) {
    if (j.contains("degree") && j.contains("generators")) {
        std::vector<std::vector<int>> gens;
        for (const auto& g : j["generators"]) gens.push_back(g.get<std::vector<int>>());
        return FiniteGroup::from_permutations(int(get_long(j, "degree", "group")), gens);
    }
    if (j.contains("table")) {
        std::vector<std::vector<int>> table;
        for (const auto& row : j["table"]) table.push_back(row.get<std::vector<int>>());
        std::vector<int> gens;
        if (j.contains("generators")) gens = j["generators"].get<std::vector<int>>();
        return FiniteGroup::from_table(std::move(table), std::move(gens));
    }
    bad("group", "expected either degree+generators or a table");
}

json wmatrix_to_json(const WMatrix& A) {
    json j = json::array();
    for (int i = 0; i < A.rows; ++i) {
        json row = json::array();
        for (int k = 0; k < A.cols; ++k) row.push_back(witt_to_json(A.at(i, k)));
        j.push_back(std::move(row));
    }
    return j;
}

WMatrix wmatrix_from_json(const WittRing* W, const json& j) {
    if (!j.is_array()) bad("matrix", "expected an array of rows");
    int rows = int(j.size());
    int cols = rows ? int(j[0].size()) : 0;
    WMatrix A = WMatrix::zeros(W, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (int(j[size_t(i)].size()) != cols) bad("matrix", "ragged rows");
        for (int k = 0; k < cols; ++k) A.at(i, k) = witt_from_json(W, j[size_t(i)][size_t(k)]);
    }
    return A;
}

json modelt_to_json(const GModule& M, const ModElt& x) {
    json j = json::array();
    ModElt cx = M.canonical(x);
    for (int i = 0; i < M.rank(); ++i) {
        json slot = json::array();
        for (int k = 0; k < M.profile()[size_t(i)]; ++k) slot.push_back(cx[size_t(i)].coord(k).coords());
        j.push_back(std::move(slot));
    }
    return j;
}

ModElt modelt_from_json(const GModule& M, const json& j) {
    if (!j.is_array() || int(j.size()) != M.rank()) bad("element", "slot count mismatch");
    ModElt x = M.zero_elt();
    const WittRing* W = M.ring();
    for (int i = 0; i < M.rank(); ++i) {
        const json& slot = j[size_t(i)];
        int e = M.profile()[size_t(i)];
        if (!slot.is_array() || int(slot.size()) != e) bad("element", "slot torsion mismatch");
        std::vector<FqElem> coords;
        for (int k = 0; k < W->d(); ++k) {
            if (k < e) {
                std::array<uint8_t, kMaxExtDegree> c{};
                for (int l = 0; l < W->field()->m(); ++l)
                    c[size_t(l)] = uint8_t(slot[size_t(k)][size_t(l)].get<long>() % W->p());
                coords.push_back(FqElem(W->field(), c));
            } else {
                coords.push_back(FqElem::zero(W->field()));
            }
        }
        x[size_t(i)] = W->from_coords(coords);
    }
    return M.canonical(std::move(x));
}

json gmodule_to_json(const GModule& M) {
    json j;
    j["ring"] = ring_to_json(M.ring());
    j["group"] = group_to_json(*M.group());
    j["profile"] = M.profile();
    json gens = json::array();
    for (int g : M.group()->generators()) gens.push_back(wmatrix_to_json(M.action(g)));
    j["generators"] = std::move(gens);
    return j;
}

GModule gmodule_from_json(const json& j) {
    if (!j.contains("ring") || !j.contains("group")) bad("rep", "needs ring and group");
    const WittRing* W = ring_from_json(j["ring"]);
    GroupPtr G = group_from_json(j["group"]);
    std::vector<int> profile;
    if (j.contains("profile"))
        profile = j["profile"].get<std::vector<int>>();
    if (!j.contains("generators") || !j["generators"].is_array())
        bad("rep", "needs generator matrices");
    std::vector<WMatrix> gens;
    for (const auto& mj : j["generators"]) gens.push_back(wmatrix_from_json(W, mj));
    if (profile.empty() && !gens.empty())
        profile.assign(size_t(gens[0].rows), W->d());
    return GModule::from_generators(std::move(G), W, std::move(profile), gens);
}

json character_to_json(const Character& chi) {
    json j;
    j["ring"] = ring_to_json(chi.W);
    json vals = json::array();
    for (const auto& v : chi.values) vals.push_back(witt_to_json(v));
    j["values"] = std::move(vals);
    return j;
}

Character character_from_json(const json& j, GroupPtr G) {
    if (!j.contains("ring") || !j.contains("values")) bad("chi", "needs ring and values");
    const WittRing* W = ring_from_json(j["ring"]);
    const json& vals = j["values"];
    if (int(vals.size()) != G->order()) bad("chi.values", "one value per group element expected");
    std::vector<WittVec> values;
    for (const auto& vj : vals) values.push_back(witt_from_json(W, vj));
    return Character::from_values(W, std::move(G), std::move(values));
}

json cochain_to_json(const Cochain& c) {
    const GModule& M = c.module;
    int n = M.group()->order();
    if (c.degree == 0) return modelt_to_json(M, c.table[0]);
    if (c.degree == 1) {
        json j = json::array();
        for (int g = 0; g < n; ++g) j.push_back(modelt_to_json(M, c.at1(g)));
        return j;
    }
    json j = json::array();
    for (int g = 0; g < n; ++g) {
        json row = json::array();
        for (int h = 0; h < n; ++h) row.push_back(modelt_to_json(M, c.at2(g, h)));
        j.push_back(std::move(row));
    }
    return j;
}

Cochain cochain_from_json(const GModule& M, int degree, const json& j) {
    Cochain c = Cochain::zero(M, degree);
    int n = M.group()->order();
    if (degree == 0) {
        c.table[0] = modelt_from_json(M, j);
    } else if (degree == 1) {
        if (int(j.size()) != n) bad("cochain", "table size mismatch");
        for (int g = 0; g < n; ++g) c.at1(g) = modelt_from_json(M, j[size_t(g)]);
    } else {
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) c.at2(g, h) = modelt_from_json(M, j[size_t(g)][size_t(h)]);
    }
    return c;
}

json cohomology_to_json(const CohomologyGroup& H) {
    json j;
    json orders = json::array();
    long p = H.p;
    for (int w : H.torsion_exps) {
        long o = 1;
        for (int i = 0; i < w; ++i) o *= p;
        orders.push_back(o);
    }
    j["degree"] = H.degree;
    j["orders"] = std::move(orders);
    json reps = json::array();
    for (const auto& r : H.reps) reps.push_back(cochain_to_json(r));
    j["representatives"] = std::move(reps);
    return j;
}

json surjectivity_to_json(const SurjectivityReport& rep, GroupPtr) {
    json j;
    j["all_surjective"] = rep.all;
    json items = json::array();
    for (const auto& item : rep.items) {
        json ij;
        ij["subgroup"] = item.H.elements;
        ij["surjective"] = item.surjective;
        ij["source_orders"] = item.src_orders;
        ij["target_orders"] = item.dst_orders;
        if (item.witness) ij["witness"] = cochain_to_json(*item.witness);
        items.push_back(std::move(ij));
    }
    j["subgroups"] = std::move(items);
    return j;
}

json certificate_to_json(const CyclotomicCertificate& cert) {
    json j;
    j["group"] = group_to_json(*cert.G);
    j["chi"] = character_to_json(cert.chi);
    j["n"] = cert.n;
    j["d"] = cert.d;
    j["pass"] = cert.pass;
    j["report"] = surjectivity_to_json(cert.report, cert.G);
    return j;
}

CyclotomicCertificate certificate_from_json(const json& j) {
    GroupPtr G = group_from_json(j.at("group"));
    Character chi = character_from_json(j.at("chi"), G);
    int n = int(get_long(j, "n", "certificate"));
    int d = int(get_long(j, "d", "certificate"));
    CyclotomicCertificate cert = check_cyclotomic(G, chi, n, d);
    if (j.contains("pass") && j["pass"].get<bool>() != cert.pass)
        bad("certificate", "stored verdict contradicts the recomputation");
    return cert;
}

json extension_to_json(const Extension1& e) {
    json j;
    j["sub"] = gmodule_to_json(e.sub);
    j["mid"] = gmodule_to_json(e.mid);
    j["quo"] = gmodule_to_json(e.quo);
    j["incl"] = wmatrix_to_json(e.incl);
    j["proj"] = wmatrix_to_json(e.proj);
    return j;
}

Extension1 extension_from_json(const json& j) {
    GModule sub = gmodule_from_json(j.at("sub"));
    GModule mid_raw = gmodule_from_json(j.at("mid"));
    GModule quo_raw = gmodule_from_json(j.at("quo"));
    // all three must live over one group object
    GModule mid = mid_raw.with_group(sub.group());
    GModule quo = quo_raw.with_group(sub.group());
    WMatrix incl = wmatrix_from_json(mid.ring(), j.at("incl"));
    WMatrix proj = wmatrix_from_json(mid.ring(), j.at("proj"));
    return Extension1::make(std::move(sub), std::move(mid), std::move(quo), std::move(incl),
                            std::move(proj));
}

json lift_result_to_json(const LiftResult& r) {
    json j;
    j["status"] = lift_status_name(r.status);
    if (r.lift_p2) j["lift_p2"] = gmodule_to_json(*r.lift_p2);
    if (r.G0) j["stable_subgroup"] = r.G0->elements;
    if (r.stable_lift) j["stable_lift"] = gmodule_to_json(*r.stable_lift);
    if (r.complement) j["complement"] = gmodule_to_json(*r.complement);
    if (r.sum_lift) j["sum_lift"] = gmodule_to_json(*r.sum_lift);
    if (r.failed_stabilizer) j["failed_stabilizer"] = *r.failed_stabilizer;
    j["transcript"] = r.transcript;
    return j;
}

json obstruction_to_json(const ObstructionReport& rep) {
    json j;
    j["class"] = rep.klass;
    j["orders"] = cohomology_to_json(rep.h2)["orders"];
    j["vanishes"] = rep.vanishes;
    j["cocycle"] = cochain_to_json(rep.cocycle);
    if (rep.cobounding) j["cobounding"] = cochain_to_json(*rep.cobounding);
    return j;
}

std::vector<int> subgroup_elements_from_json(const json& j) {
    const json& arr = j.contains("elements") ? j["elements"] : j;
    if (!arr.is_array()) bad("subgroup", "expected an element array");
    return arr.get<std::vector<int>>();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(bool(out), errc::bad_request, "cannot write " + tmp);
        out << content;
    }
    require(std::rename(tmp.c_str(), path.c_str()) == 0, errc::bad_request,
            "cannot move " + tmp + " into place");
}

} // namespace wittlift
