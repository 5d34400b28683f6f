#include "wittlift/dispatch.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <fstream>

#include "wittlift/fixtures.hpp"
#include "wittlift/report.hpp"

namespace wittlift {

namespace {

int exit_for(errc code) {
    switch (code) {
        case errc::budget_exceeded:
            return 3;
        case errc::not_a_lift:
        case errc::class_nonzero:
        case errc::not_found:
        case errc::not_surjective:
            return 1;
        default:
            return 2;
    }
}

struct Ctx {
    std::vector<std::string> inputs;
    json load(const std::string& path) {
        json j = load_json_file(path);
        inputs.push_back(path);
        return j;
    }
    std::string digest() const {
        if (inputs.empty()) return digest_hex("");
        try {
            return digest_of_files(inputs);
        } catch (const Error&) {
            return digest_hex("");
        }
    }
};

const FieldDesc* field_from_flags(int p, int m, const std::vector<int>& modulus) {
    if (m == 1) return FieldDesc::get(p, 1);
    return FieldDesc::get(p, m, modulus);
}

std::string textify(const json& rep) {
    std::string out;
    out += rep["tool"].get<std::string>() + "\n";
    out += "command: " + rep["command"].get<std::string>() + "\n";
    out += "status: " + rep["status"].get<std::string>() + "\n";
    if (rep.contains("result") && rep["result"].contains("status"))
        out += "verdict: " + rep["result"]["status"].get<std::string>() + "\n";
    return out;
}

} // namespace

DispatchResult dispatch(const std::vector<std::string>& args) {
    CLI::App app{"exact truncated Witt vectors, finite-group cohomology, and representation lifting"};
    app.name("wittlift");

    std::string out_path, format = "json";
    app.add_option("--out", out_path, "write the report to this path (atomic)");
    app.add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    // flags shared by several subcommands
    struct {
        std::string a, b, rep, group, chi, cert, subgroup, lift, ext, e1, e2, dir = "fixtures", op;
        int p = 2, m = 1, d = 1, n = 1, r = 1, degree = 1;
        std::vector<int> modulus;
        long budget = 0;
        bool use_oracle = false;
    } f;

    auto* witt = app.add_subcommand("witt", "ring operations in W_d(F_q)");
    auto* witt_eval = witt->add_subcommand("eval", "evaluate one ring operation");
    witt_eval->add_option("--p", f.p)->required();
    witt_eval->add_option("--m", f.m);
    witt_eval->add_option("--modulus", f.modulus);
    witt_eval->add_option("--d", f.d)->required();
    witt_eval->add_option("--op", f.op, "add|mul|neg|inv|ver|frob|reduce")->required();
    witt_eval->add_option("--a", f.a)->required();
    witt_eval->add_option("--b", f.b);
    witt_eval->add_option("--r", f.r);

    auto* cohom = app.add_subcommand("cohom", "group cohomology");
    auto* cohom_c = cohom->add_subcommand("compute", "H^n of a representation");
    cohom_c->add_option("--rep", f.rep)->required();
    cohom_c->add_option("--n", f.n)->required();
    cohom_c->add_option("--subgroup", f.subgroup);
    cohom_c->add_flag("--oracle", f.use_oracle, "use the periodic cyclic formulas");

    auto* ext = app.add_subcommand("ext", "Yoneda 1-extensions");
    auto* ext_class = ext->add_subcommand("class", "class of an extension");
    ext_class->add_option("--ext", f.ext)->required();
    auto* ext_linked = ext->add_subcommand("linked", "exhaustive linkage search");
    ext_linked->add_option("--e1", f.e1)->required();
    ext_linked->add_option("--e2", f.e2)->required();
    ext_linked->add_option("--budget", f.budget);

    auto* smooth = app.add_subcommand("smooth", "cyclotomic certificates");
    auto* smooth_check = smooth->add_subcommand("check", "verify one character");
    smooth_check->add_option("--group", f.group)->required();
    smooth_check->add_option("--chi", f.chi)->required();
    smooth_check->add_option("--n", f.n);
    smooth_check->add_option("--d", f.d);
    auto* smooth_search_c = smooth->add_subcommand("search", "sweep all characters");
    smooth_search_c->add_option("--group", f.group)->required();
    smooth_search_c->add_option("--n", f.n);
    smooth_search_c->add_option("--d", f.d);
    smooth_search_c->add_option("--p", f.p)->required();
    smooth_search_c->add_option("--m", f.m);
    smooth_search_c->add_option("--modulus", f.modulus);
    auto* smooth_cd1 = smooth->add_subcommand("cd1", "H^2 vanishing sweep");
    smooth_cd1->add_option("--group", f.group)->required();
    smooth_cd1->add_option("--p", f.p)->required();
    smooth_cd1->add_option("--n", f.n);
    smooth_cd1->add_option("--d", f.d);

    auto* lift = app.add_subcommand("lift", "representation lifting");
    auto* lift_p2 = lift->add_subcommand("p2", "one-step obstruction lift");
    lift_p2->add_option("--rep", f.rep)->required();
    auto* lift_d2 = lift->add_subcommand("dim2", "dimension-2 pipeline");
    lift_d2->add_option("--rep", f.rep)->required();
    lift_d2->add_option("--cert", f.cert)->required();
    auto* lift_d4 = lift->add_subcommand("dim4", "dimension-4 pipeline over F_2");
    lift_d4->add_option("--rep", f.rep)->required();
    lift_d4->add_option("--cert", f.cert)->required();
    auto* lift_st = lift->add_subcommand("stable", "norm-splitting upgrade");
    lift_st->add_option("--rep", f.rep)->required();
    lift_st->add_option("--subgroup", f.subgroup)->required();
    lift_st->add_option("--lift", f.lift)->required();

    auto* oracle = app.add_subcommand("oracle", "independent verification oracles");
    auto* oracle_brute = oracle->add_subcommand("brute", "exhaustive lift search");
    oracle_brute->add_option("--rep", f.rep)->required();
    oracle_brute->add_option("--budget", f.budget);
    auto* oracle_ghost = oracle->add_subcommand("ghost", "ghost-component comparison");
    oracle_ghost->add_option("--p", f.p)->required();
    oracle_ghost->add_option("--d", f.d)->required();
    oracle_ghost->add_option("--op", f.op, "add|mul|neg")->required();
    oracle_ghost->add_option("--a", f.a)->required();
    oracle_ghost->add_option("--b", f.b)->required();

    auto* fixtures = app.add_subcommand("fixtures", "fixture corpus");
    auto* fixtures_regen = fixtures->add_subcommand("regen", "regenerate from the oracles");
    fixtures_regen->add_option("--dir", f.dir);

    // let --out / --format given after a subcommand reach the top level
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    std::vector<std::string> argv_like = args;
    std::reverse(argv_like.begin(), argv_like.end()); // CLI11 consumes reversed
    std::string command_line = "wittlift";
    for (const auto& a : args) command_line += " " + a;

    json report;
    report["tool"] = kToolVersion;
    report["command"] = command_line;
    DispatchResult res;
    auto t0 = std::chrono::steady_clock::now();
    Ctx ctx;
    int code = 0;
    json result;
    std::string status = "ok";

    try {
        app.parse(argv_like);
        Budgets budgets = Budgets::current();

        if (witt_eval->parsed()) {
            const WittRing* W = WittRing::get(field_from_flags(f.p, f.m, f.modulus), f.d);
            WittVec a = witt_from_json(W, ctx.load(f.a));
            WittVec value = a;
            if (f.op == "add" || f.op == "mul") {
                require(!f.b.empty(), errc::bad_request, "--b is required for " + f.op);
                WittVec b = witt_from_json(W, ctx.load(f.b));
                value = f.op == "add" ? a + b : a * b;
            } else if (f.op == "neg") {
                value = -a;
            } else if (f.op == "inv") {
                value = a.inv();
            } else if (f.op == "ver") {
                value = W->verschiebung(a);
            } else if (f.op == "frob") {
                value = W->frobenius(a);
            } else if (f.op == "reduce") {
                value = W->reduce(a, f.r);
            } else {
                fail(errc::bad_request, "unknown operation " + f.op);
            }
            result["value"] = witt_to_json(value);
        } else if (cohom_c->parsed()) {
            GModule M = gmodule_from_json(ctx.load(f.rep));
            CohomologyGroup H;
            if (!f.subgroup.empty()) {
                auto els = subgroup_elements_from_json(ctx.load(f.subgroup));
                H = cohomology_subgroup(M, M.group()->subgroup(els), f.n);
            } else if (f.use_oracle) {
                H = cyclic_oracle(M, f.n);
            } else {
                H = cohomology_group(M, f.n);
            }
            result = cohomology_to_json(H);
        } else if (ext_class->parsed()) {
            Extension1 e = extension_from_json(ctx.load(f.ext));
            ExtClass1 cls = class_of_extension(e);
            result["coords"] = cls.coords;
            result["h1"] = cohomology_to_json(cls.h1);
        } else if (ext_linked->parsed()) {
            Extension1 e1 = extension_from_json(ctx.load(f.e1));
            Extension1 e2raw = extension_from_json(ctx.load(f.e2));
            // the two files carry their own group objects; relabel the second
            // extension onto the first one's group (tables must agree)
            Extension1 e2 = Extension1::make(
                e2raw.sub.with_group(e1.sub.group()), e2raw.mid.with_group(e1.sub.group()),
                e2raw.quo.with_group(e1.sub.group()), e2raw.incl, e2raw.proj);
            long budget = f.budget > 0 ? f.budget : budgets.linked;
            bool linked = linked_brute(e1, e2, budget);
            result["linked"] = linked;
            if (!linked) {
                code = 1;
                status = "negative";
            }
        } else if (smooth_check->parsed()) {
            GroupPtr G = group_from_json(ctx.load(f.group));
            Character chi = character_from_json(ctx.load(f.chi), G);
            CyclotomicCertificate cert = check_cyclotomic(G, chi, f.n, f.d);
            result = certificate_to_json(cert);
            if (!cert.pass) {
                code = 1;
                status = "negative";
            }
        } else if (smooth_search_c->parsed()) {
            GroupPtr G = group_from_json(ctx.load(f.group));
            SmoothSearchResult r = smooth_search(G, f.n, f.d, field_from_flags(f.p, f.m, f.modulus));
            result["found"] = r.found;
            if (r.found) {
                result["witness"] = certificate_to_json(*r.witness);
                result["characters_tried"] = int(r.failures.size()) + 1;
            } else {
                json fails = json::array();
                for (const auto& cert : r.failures) fails.push_back(certificate_to_json(cert));
                result["failures"] = std::move(fails);
                code = 1;
                status = "negative";
            }
        } else if (smooth_cd1->parsed()) {
            GroupPtr G = group_from_json(ctx.load(f.group));
            Cd1Report r = cd1_check(G, f.p, f.n, f.d, FieldDesc::get(f.p, 1));
            result["pass"] = r.pass;
            json items = json::array();
            for (const auto& item : r.items) {
                json ij;
                ij["subgroup"] = item.H.elements;
                ij["h2_zero"] = item.h2_zero;
                items.push_back(std::move(ij));
            }
            result["subgroups"] = std::move(items);
            if (r.witness) result["witness"] = r.witness->elements;
            if (!r.pass) {
                code = 1;
                status = "negative";
            }
        } else if (lift_p2->parsed()) {
            GModule rho = gmodule_from_json(ctx.load(f.rep));
            ObstructionReport rep = obstruction_p_next(rho);
            result["obstruction"] = obstruction_to_json(rep);
            if (rep.vanishes) {
                GModule lifted = solve_lift(rep);
                result["status"] = "lifted";
                result["lift"] = gmodule_to_json(lifted);
            } else {
                result["status"] = "obstructed";
                code = 1;
                status = "negative";
            }
        } else if (lift_d2->parsed() || lift_d4->parsed()) {
            GModule rho = gmodule_from_json(ctx.load(f.rep));
            json cj = ctx.load(f.cert);
            // accept either a bare certificate or a full `smooth check` report
            if (cj.contains("result") && cj["result"].contains("chi")) cj = cj["result"];
            if (cj.contains("witness") && cj["witness"].contains("chi")) cj = cj["witness"];
            // the certificate group must be the representation's group object
            CyclotomicCertificate cert;
            {
                Character chi = character_from_json(cj.at("chi"), rho.group());
                cert = check_cyclotomic(rho.group(), chi, int(cj.at("n").get<long>()),
                                        int(cj.at("d").get<long>()));
                if (cj.contains("pass"))
                    require(cj["pass"].get<bool>() == cert.pass, errc::parse_error,
                            "stored certificate verdict contradicts the recomputation");
            }
            LiftResult r = lift_d2->parsed() ? lift_dim2(rho, cert) : lift_dim4_f2(rho, cert);
            result = lift_result_to_json(r);
            if (r.status != LiftStatus::lifted) {
                code = 1;
                status = "negative";
            }
        } else if (lift_st->parsed()) {
            GModule V = gmodule_from_json(ctx.load(f.rep));
            auto els = subgroup_elements_from_json(ctx.load(f.subgroup));
            Subgroup G0 = V.group()->subgroup(els);
            json lj = ctx.load(f.lift);
            GModule Vd = gmodule_from_json(lj).with_group(G0.as_group().group);
            StableUpgrade up = stable_lift_upgrade(V, G0, Vd);
            result["complement"] = gmodule_to_json(up.complement);
            result["sum_lift"] = gmodule_to_json(up.sum_lift);
        } else if (oracle_brute->parsed()) {
            GModule rho = gmodule_from_json(ctx.load(f.rep));
            long budget = f.budget > 0 ? f.budget : budgets.brute_force;
            BruteForceResult bf = brute_force_lift(rho, budget);
            result["found"] = bf.found;
            result["tried"] = bf.tried;
            result["exhausted"] = bf.exhausted;
            if (bf.found) {
                result["lift"] = gmodule_to_json(*bf.lift);
            } else {
                code = 1;
                status = "negative";
            }
        } else if (oracle_ghost->parsed()) {
            const WittRing* W = WittRing::get(FieldDesc::get(f.p, 1), f.d);
            WittVec a = witt_from_json(W, ctx.load(f.a));
            WittVec b = witt_from_json(W, ctx.load(f.b));
            WittOp op = f.op == "add" ? WittOp::add : f.op == "mul" ? WittOp::mul : WittOp::neg;
            bool agree = W->ghost_compare(op, a, b);
            result["agree"] = agree;
            json ga = json::array(), gb = json::array();
            for (const auto& v : W->ghost(a).values) ga.push_back(v.str());
            for (const auto& v : W->ghost(b).values) gb.push_back(v.str());
            result["ghost_a"] = std::move(ga);
            result["ghost_b"] = std::move(gb);
            if (!agree) {
                code = 1;
                status = "negative";
            }
        } else if (fixtures_regen->parsed()) {
            RegenResult r = regen_fixtures(f.dir);
            result["files"] = int(r.files.size());
            result["digest"] = r.digest;
        } else {
            fail(errc::bad_request, "no subcommand given; see --help");
        }
    } catch (const CLI::CallForHelp&) {
        result["help"] = app.help();
    } catch (const CLI::ParseError& e) {
        code = 2;
        status = "error";
        result["error"] = std::string("usage: ") + e.what();
    } catch (const Error& e) {
        code = exit_for(e.code());
        status = code == 1 ? "negative" : "error";
        result["error"] = e.what();
    } catch (const std::exception& e) {
        code = 2;
        status = "error";
        result["error"] = e.what();
    }

    auto t1 = std::chrono::steady_clock::now();
    report["input_digest"] = ctx.digest();
    report["status"] = status;
    report["exit_code"] = code;
    report["result"] = std::move(result);
    report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    res.exit_code = code;
    res.report = format == "text" ? textify(report) : report.dump(2) + "\n";
    if (!out_path.empty()) {
        try {
            write_atomic(out_path, res.report);
        } catch (const Error& e) {
            res.exit_code = 2;
            res.report = std::string(e.what()) + "\n";
        }
    }
    return res;
}

} // namespace wittlift
