#include "wittlift/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include "wittlift/report.hpp"

namespace fs = std::filesystem;

namespace wittlift {
namespace corpus {

namespace {

GroupPtr cyclic(int n) {
    std::vector<int> cyc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<size_t>(i)] = (i + 1) % n;
    return FiniteGroup::from_permutations(std::max(n, 1), n == 1 ? std::vector<std::vector<int>>{}
                                                                 : std::vector<std::vector<int>>{cyc});
}

GroupPtr quaternion8() {
    // elements (unit, sign): 1,-1,i,-i,j,-j,k,-k with index u*2+s
    // unit products with signs: i*j=k, j*k=i, k*i=j, squares of i,j,k = -1
    static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // sgn[a][b]: sign of the unit product e_a e_b, units e = (1, i, j, k):
    // i*i=-1, i*j=k, i*k=-j, j*i=-k, j*j=-1, j*k=i, k*i=j, k*j=-i, k*k=-1
    static const int sgn[4][4] = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
            int u = umul[ua][ub];
            int s = (sa + sb + sgn[ua][ub]) % 2;
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = u * 2 + s;
        }
    return FiniteGroup::from_table(std::move(table), {2, 4});
}

const WittRing* W(int p, int m, int d) {
    if (m == 1) return WittRing::get(FieldDesc::get(p, 1), d);
    return WittRing::get(FieldDesc::get(2, 2, {1, 1, 1}), d);
}

WMatrix wm(const WittRing* Wr, int n, std::vector<long> residues) {
    WMatrix A = WMatrix::zeros(Wr, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A.at(i, j) = Wr->from_int(residues[static_cast<size_t>(i * n + j)]);
    return A;
}

GModule first_class_extension(GroupPtr G, const GModule& outer) {
    GModule hom = hom_module(outer, outer);
    CohomologyGroup h1 = cohomology_group(hom, 1);
    require(!h1.is_zero(), errc::internal_integrality_failure,
            "corpus extension needs a nonzero class");
    return extension_of_class(h1.reps[0], outer, outer).mid;
}

} // namespace

std::vector<std::string> group_names() {
    return {"trivial", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10",
            "C11", "C12", "C2xC2", "S3", "D4", "Q8", "A4", "S4"};
}

namespace {
GroupPtr group_uncached(const std::string& name);
} // namespace

GroupPtr group(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, GroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    GroupPtr G = group_uncached(name);
    cache.emplace(name, G);
    return G;
}

namespace {
GroupPtr group_uncached(const std::string& name) {
    if (name == "trivial") return cyclic(1);
    if (name.size() >= 2 && name[0] == 'C' && name != "C2xC2") {
        int n = std::stoi(name.substr(1));
        return cyclic(n);
    }
    if (name == "C2xC2") return FiniteGroup::from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
    if (name == "S3") return FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}});
    if (name == "D4") return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}});
    if (name == "Q8") return quaternion8();
    if (name == "A4") return FiniteGroup::from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    if (name == "S4") return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {1, 0, 2, 3}});
    fail(errc::bad_request, "unknown fixture group " + name);
}
} // namespace

std::vector<std::string> rep_names() {
    return {"c2_identity2",   "c2_unipotent", "c2_lower",      "c2_swap",
            "c2_sign_z4",     "c2_swap_f3",   "c3_unipotent",  "c4_unipotent",
            "s3_standard_f3", "s3_sign_f3",   "v4_pair",       "d4_quot",
            "c2_omega_f4",    "c2_ext4",      "v4_ext4",       "c2_sum4",
            "c2_reg_plus_triv"};
}

std::string rep_group(const std::string& name) {
    if (name.rfind("c2_", 0) == 0) return "C2";
    if (name.rfind("c3_", 0) == 0) return "C3";
    if (name.rfind("c4_", 0) == 0) return "C4";
    if (name.rfind("s3_", 0) == 0) return "S3";
    if (name.rfind("v4_", 0) == 0) return "C2xC2";
    if (name.rfind("d4_", 0) == 0) return "D4";
    fail(errc::bad_request, "unknown fixture representation " + name);
}

GModule rep(const std::string& name) {
    if (name == "c2_identity2")
        return GModule::trivial(W(2, 1, 1), group("C2"), {1, 1});
    if (name == "c2_unipotent")
        return GModule::from_generators(group("C2"), W(2, 1, 1), {1, 1},
                                        {wm(W(2, 1, 1), 2, {1, 1, 0, 1})});
    if (name == "c2_lower")
        return GModule::from_generators(group("C2"), W(2, 1, 1), {1, 1},
                                        {wm(W(2, 1, 1), 2, {1, 0, 1, 1})});
    if (name == "c2_swap")
        return GModule::permutation(W(2, 1, 1), GSet::regular(group("C2")));
    if (name == "c2_sign_z4")
        return GModule::from_generators(group("C2"), W(2, 1, 2), {2}, {wm(W(2, 1, 2), 1, {3})});
    if (name == "c2_swap_f3")
        return GModule::permutation(W(3, 1, 1), GSet::regular(group("C2")));
    if (name == "c3_unipotent")
        return GModule::from_generators(group("C3"), W(3, 1, 1), {1, 1},
                                        {wm(W(3, 1, 1), 2, {1, 1, 0, 1})});
    if (name == "c4_unipotent")
        return GModule::from_generators(group("C4"), W(2, 1, 1), {1, 1},
                                        {wm(W(2, 1, 1), 2, {1, 1, 0, 1})});
    if (name == "s3_standard_f3")
        return GModule::from_generators(group("S3"), W(3, 1, 1), {1, 1},
                                        {wm(W(3, 1, 1), 2, {2, 2, 1, 0}),
                                         wm(W(3, 1, 1), 2, {0, 2, 2, 0})});
    if (name == "s3_sign_f3") {
        auto s3 = group("S3");
        auto a3 = s3->commutator_subgroup();
        std::vector<WMatrix> gens;
        for (int g : s3->generators())
            gens.push_back(wm(W(3, 1, 1), 1,
                              {std::binary_search(a3.begin(), a3.end(), g) ? 1L : 2L}));
        return GModule::from_generators(s3, W(3, 1, 1), {1}, gens);
    }
    if (name == "v4_pair")
        return GModule::from_generators(group("C2xC2"), W(2, 1, 1), {1, 1},
                                        {wm(W(2, 1, 1), 2, {1, 1, 0, 1}),
                                         wm(W(2, 1, 1), 2, {1, 0, 0, 1})});
    if (name == "d4_quot")
        return GModule::from_generators(group("D4"), W(2, 1, 1), {1, 1},
                                        {wm(W(2, 1, 1), 2, {1, 1, 0, 1}),
                                         wm(W(2, 1, 1), 2, {1, 0, 0, 1})});
    if (name == "c2_omega_f4") {
        const WittRing* W4 = W(2, 2, 1);
        WMatrix m = WMatrix::identity(W4, 2);
        m.at(0, 1) = W4->teichmuller(FqElem::gen(W4->field()));
        return GModule::from_generators(group("C2"), W4, {1, 1}, {m});
    }
    if (name == "c2_ext4")
        return first_class_extension(group("C2"), GModule::trivial(W(2, 1, 1), group("C2"), {1, 1}));
    if (name == "v4_ext4") {
        auto v4 = group("C2xC2");
        GModule perm = GModule::permutation(W(2, 1, 1), GSet::cosets(v4, {0, 3}));
        return first_class_extension(v4, perm);
    }
    if (name == "c2_sum4") {
        GModule reg = GModule::permutation(W(2, 1, 1), GSet::regular(group("C2")));
        return direct_sum(reg, reg);
    }
    if (name == "c2_reg_plus_triv") {
        GModule reg = GModule::permutation(W(2, 1, 1), GSet::regular(group("C2")));
        return direct_sum(reg, GModule::trivial(W(2, 1, 1), group("C2"), {1}));
    }
    fail(errc::bad_request, "unknown fixture representation " + name);
}

std::vector<std::string> chi_names() {
    return {"chi_c2_minus1", "chi_c2_trivial_z4", "chi_c2_trivial_z9", "chi_v4_diag",
            "chi_s3_sign_z4"};
}

std::string chi_group(const std::string& name) {
    if (name.rfind("chi_c2_", 0) == 0) return "C2";
    if (name.rfind("chi_v4_", 0) == 0) return "C2xC2";
    if (name.rfind("chi_s3_", 0) == 0) return "S3";
    fail(errc::bad_request, "unknown fixture character " + name);
}

Character chi(const std::string& name) {
    if (name == "chi_c2_minus1") {
        const WittRing* We = W(2, 1, 2);
        return Character::from_values(We, group("C2"), {We->one(), We->from_int(3)});
    }
    if (name == "chi_c2_trivial_z4") return Character::trivial(W(2, 1, 2), group("C2"));
    if (name == "chi_c2_trivial_z9") return Character::trivial(W(3, 1, 2), group("C2"));
    if (name == "chi_v4_diag") {
        // -1 exactly on the diagonal involution (element 3 = product of the generators)
        const WittRing* We = W(2, 1, 2);
        auto v4 = group("C2xC2");
        std::vector<WittVec> vals{We->one(), We->from_int(3), We->one(), We->from_int(3)};
        return Character::from_values(We, v4, vals);
    }
    if (name == "chi_s3_sign_z4") {
        const WittRing* We = W(2, 1, 2);
        auto s3 = group("S3");
        auto a3 = s3->commutator_subgroup();
        std::vector<WittVec> vals;
        for (int g = 0; g < 6; ++g)
            vals.push_back(std::binary_search(a3.begin(), a3.end(), g) ? We->one()
                                                                       : We->from_int(3));
        return Character::from_values(We, s3, vals);
    }
    fail(errc::bad_request, "unknown fixture character " + name);
}

} // namespace corpus

namespace {

void write_checked(const std::string& path, const std::string& content, bool expectation,
                   std::vector<std::string>& files) {
    if (expectation && fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::string old((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        require(old == content, errc::oracle_disagreement,
                "stored expectation disagrees with the oracle: " + path);
    }
    write_atomic(path, content);
    files.push_back(path);
}

std::string dumps(const json& j) { return j.dump(2) + "\n"; }

} // namespace

RegenResult regen_fixtures(const std::string& dir) {
    fs::create_directories(fs::path(dir) / "groups");
    fs::create_directories(fs::path(dir) / "reps");
    fs::create_directories(fs::path(dir) / "chi");
    fs::create_directories(fs::path(dir) / "expectations");
    RegenResult out;

    // permutation-style group inputs
    for (const auto& name : corpus::group_names()) {
        GroupPtr G = corpus::group(name);
        json j = group_to_json(*G);
        write_checked((fs::path(dir) / "groups" / (name + ".json")).string(), dumps(j), false,
                      out.files);
    }
    for (const auto& name : corpus::rep_names()) {
        json j = gmodule_to_json(corpus::rep(name));
        write_checked((fs::path(dir) / "reps" / (name + ".json")).string(), dumps(j), false,
                      out.files);
    }
    for (const auto& name : corpus::chi_names()) {
        json j = character_to_json(corpus::chi(name));
        j["group"] = corpus::chi_group(name);
        write_checked((fs::path(dir) / "chi" / (name + ".json")).string(), dumps(j), false,
                      out.files);
    }

    // expectation: ghost components of every element at small (p, d),
    // computed from the canonical coordinate lifts over the integers
    {
        json j;
        for (auto [p, d] : std::vector<std::pair<int, int>>{
                 {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
            const WittRing* Wr = WittRing::get(FieldDesc::get(p, 1), d);
            json table = json::array();
            for (long i = 0; i < Wr->size(); ++i) {
                GhostVec g = Wr->ghost(Wr->from_enum_index(i));
                json row = json::array();
                for (const auto& v : g.values) row.push_back(v.str());
                table.push_back(std::move(row));
            }
            j["p" + std::to_string(p) + "_d" + std::to_string(d)] = std::move(table);
        }
        write_checked((fs::path(dir) / "expectations" / "ghost_components.json").string(),
                      dumps(j), true, out.files);
    }

    // expectation: cyclic cohomology orders from the periodic formulas
    {
        json j;
        for (int n = 1; n <= 12; ++n) {
            GroupPtr G = corpus::group(n == 1 ? "trivial" : "C" + std::to_string(n));
            for (int p : {2, 3}) {
                for (int d : {1, 2}) {
                    const WittRing* Wr = WittRing::get(FieldDesc::get(p, 1), d);
                    std::vector<std::pair<std::string, GModule>> modules;
                    modules.emplace_back("trivial_free",
                                         GModule::trivial(Wr, G, std::vector<int>(1, d)));
                    if (d == 2) modules.emplace_back("trivial_k", GModule::trivial(Wr, G, {1}));
                    for (const auto& [mname, M] : modules) {
                        for (int deg = 0; deg <= 2; ++deg) {
                            CohomologyGroup H = cyclic_oracle(M, deg);
                            std::string key = "C" + std::to_string(n) + "_p" + std::to_string(p) +
                                              "_d" + std::to_string(d) + "_" + mname + "_H" +
                                              std::to_string(deg);
                            json orders = json::array();
                            for (int w : H.torsion_exps) {
                                long o = 1;
                                for (int i = 0; i < w; ++i) o *= p;
                                orders.push_back(o);
                            }
                            j[key] = std::move(orders);
                        }
                    }
                }
            }
        }
        write_checked((fs::path(dir) / "expectations" / "cyclic_cohomology.json").string(),
                      dumps(j), true, out.files);
    }

    // expectation: exhaustive lift verdicts for the 2-dimensional corpus
    {
        json j;
        for (const auto& name :
             {"c2_identity2", "c2_unipotent", "c2_lower", "c2_swap", "c3_unipotent",
              "c4_unipotent", "s3_standard_f3", "v4_pair", "d4_quot", "c2_omega_f4"}) {
            GModule rho = corpus::rep(name);
            BruteForceResult bf = brute_force_lift(rho);
            json e;
            e["found"] = bf.found;
            e["tried"] = bf.tried;
            if (bf.found) e["lift_digest"] = digest_hex(dumps(gmodule_to_json(*bf.lift)));
            j[name] = std::move(e);
        }
        write_checked((fs::path(dir) / "expectations" / "brute_lift.json").string(), dumps(j),
                      true, out.files);
    }

    // digest index
    {
        std::sort(out.files.begin(), out.files.end());
        std::string listing;
        for (const auto& f : out.files) {
            std::ifstream in(f, std::ios::binary);
            std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            listing += fs::path(f).lexically_relative(dir).generic_string() + " " + digest_hex(bytes) + "\n";
        }
        out.digest = digest_hex(listing);
        write_atomic((fs::path(dir) / "expectations" / "DIGEST").string(),
                     listing + "total " + out.digest + "\n");
        out.files.push_back((fs::path(dir) / "expectations" / "DIGEST").string());
    }
    return out;
}

} // namespace wittlift
