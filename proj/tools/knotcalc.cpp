#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotcalc/config.hpp"
#include "knotcalc/covers.hpp"
#include "knotcalc/knot.hpp"
#include "knotcalc/obstruction.hpp"
#include "knotcalc/relation.hpp"
#include "knotcalc/reproduce.hpp"
#include "knotcalc/rewriter.hpp"

using nlohmann::json;
using namespace kc;

namespace {

enum Exit { kOk = 0, kRegression = 1, kInput = 2, kBudget = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& arg) {
    std::stringstream ss;
    if (arg == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(arg);
        if (!in) throw InputError("cannot read " + arg);
        ss << in.rdbuf();
    }
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

Knot load_knot(const std::string& arg) {
    if (arg == "-" || std::filesystem::is_regular_file(arg)) return Knot::from_json(read_json(arg));
    return parse_knot(arg);
}

std::string mat_str(const IntegerMatrix& M) {
    json a = json::array();
    for (size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).get_str());
        a.push_back(row);
    }
    return a.dump();
}

json zvec(const ZVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

json envelope(const std::string& kind, const RunConfig& cfg) {
    return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"config", cfg.to_json()}};
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object() || j.is_array()) {
        if (j.empty()) out.push_back({path, j.dump()});
        size_t k = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++k) {
            std::string key = j.is_object() ? it.key() : std::to_string(k);
            flatten(*it, path.empty() ? key : path + "." + key, out);
        }
        return;
    }
    out.push_back({path, j.is_string() ? j.get<std::string>() : j.dump()});
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    for (auto& [k, v] : rows) std::cout << k << (format == "tsv" ? "\t" : ": ") << v << '\n';
}

json cmd_family(const std::string& spec, const RunConfig& cfg) {
    auto K = parse_knot(spec);
    auto j = envelope("knot", cfg);
    j["spec"] = K.spec();
    j["knot"] = K.to_json();
    return j;
}

json cmd_invariants(const Knot& K, const RunConfig& cfg) {
    auto j = envelope("invariants", cfg);
    j["spec"] = K.spec();
    j["seifert_matrix"] = json::parse(mat_str(K.seifert().matrix()));
    j["genus"] = K.genus();
    j["alexander"] = K.alexander().str();
    json f = json::array();
    for (auto& p : K.alexander_factors()) f.push_back(p.str());
    j["alexander_factors"] = f;
    auto prof = K.signature_profile();
    json bp = json::array();
    for (auto& b : prof.breakpoints) bp.push_back(b.str());
    j["signature"] = {{"at_minus_one", prof.value_at_minus_one()}, {"breakpoints_cos", bp}, {"arc_values", prof.values}};
    RhoProxy rho;
    rho.value = K.signature_integral(cfg.convention);
    int bits = digits_to_bits(cfg.precision_digits);
    rho.enclosure = rho.value.enclosure(bits);
    rho.sign = rho.value.certified_sign(64, std::max(4096, 4 * bits));
    j["signature_integral"] = rho.to_json(cfg.precision_digits);
    auto s = algebraically_slice(K.seifert(), cfg.budget);
    json w = json::array();
    for (auto& v : s.witness) w.push_back(zvec(v));
    j["algebraically_slice"] = {{"verdict", to_string(s.verdict)}, {"witness", w}, {"certificate", s.certificate},
                                {"examined", s.examined.get_str()}};
    return j;
}

json metabolizer_json(const GroupMetabolizer& m) {
    return {{"hermite", json::parse(mat_str(m.subgroup.hermite))}, {"order", m.subgroup.order.get_str()},
            {"self_annihilating", m.self_annihilating}, {"half_order", m.half_order},
            {"deck_invariant", m.invariant_under_deck}};
}

json cmd_branched_cover(const Knot& K, const RunConfig& cfg) {
    auto j = envelope("branched-cover", cfg);
    auto V = K.seifert();
    auto G = branched_cover_homology(V, cfg.r);
    j["spec"] = K.spec();
    j["r"] = cfg.r;
    j["group"] = G.structure();
    j["invariants"] = zvec(G.invariants());
    j["order"] = G.order().get_str();
    j["order_by_resultant"] = cover_order_by_resultant(V, cfg.r).get_str();
    if (!G.is_finite()) {
        j["linking_form"] = nullptr;
        j["metabolizers"] = nullptr;
        return j;
    }
    auto S = symmetric_cover_presentation(V, cfg.r);
    j["symmetric_invariants"] = zvec(S.invariants());
    json gram = json::array();
    auto L = G.gram_snf();
    for (size_t a = 0; a < L.rows(); ++a) {
        json row = json::array();
        for (size_t b = 0; b < L.cols(); ++b) row.push_back(L(a, b).get_str());
        gram.push_back(row);
    }
    j["linking_form"] = {{"gram", gram}, {"check", G.check_linking().empty() ? "ok" : G.check_linking()},
                         {"deck_check", G.check_deck_invariance().empty() ? "ok" : G.check_deck_invariance()}};
    json mets = json::array();
    for (auto& m : enumerate_metabolizers(G, true, cfg.budget)) mets.push_back(metabolizer_json(m));
    j["metabolizers"] = mets;
    try {
        auto mod = alexander_module_genus1(V, K.curve_labels());
        json pi = json::array();
        for (auto* s : {&mod.first, &mod.second}) {
            auto p = pi_r_projection(s->generator, G);
            auto mj = metabolizer_json(p);
            mj["summand"] = s->label.empty() ? json(zvec(s->generator)) : json(s->label);
            mj["relation"] = s->relation.str();
            pi.push_back(mj);
        }
        j["pi_r_images"] = pi;
    } catch (const UnsupportedDecomposition& e) {
        j["pi_r_images"] = nullptr;
        j["pi_r_note"] = e.what();
    }
    return j;
}

json load_rewrite_input(const std::string& arg, CobordismCertificate& out) {
    auto j = read_json(arg);
    if (j.contains("cuts")) {
        out = reduce(PatternSide::from_json(j));
    } else {
        auto D = SymmetricDiagram::from_json(j.contains("diagram") ? j.at("diagram") : j);
        out = reduce(D);
    }
    return out.to_json();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knotcalc: exact knot concordance invariants and symmetric band-move certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string convention = "mass-1", budget = "1000000", bound = "1000000";
    long m = 0;
    app.add_option("--convention", convention, "mass-1 | mass-2pi, optionally ,jump-averaging");
    app.add_option("--budget", budget, "enumeration budget");
    app.add_option("--precision", cfg.precision_digits, "decimal digits for enclosures and relation search")
        ->check(CLI::Range(5, 2000));
    app.add_option("--bound", bound, "coefficient bound for integer relations");
    app.add_option("--registry", cfg.registry_path, "fact registry JSON (default: $KNOTCALC_REGISTRY)");
    app.add_option("--format", cfg.format, "json | tsv | human")->check(CLI::IsMember({"json", "tsv", "human"}));
    auto* r_opt = app.add_option("--r", cfg.r, "cover degree")->check(CLI::Range(2u, 64u));
    auto* m_opt = app.add_option("--m", m, "R_m parameter")->check(CLI::PositiveNumber);

    std::string spec, knot_arg, input;
    auto* family = app.add_subcommand("family", "knot JSON for a family specification");
    family->add_option("spec", spec, "e.g. \"Rm(m=1; aJ=Ji(1); aD=Dplus(trefoil,0))\"");
    auto* invariants = app.add_subcommand("invariants", "Alexander polynomial, genus, signatures, sliceness");
    invariants->add_option("knot", knot_arg, "spec string, knot JSON file, or - for stdin")->required();
    auto* cover = app.add_subcommand("branched-cover", "homology, linking form and metabolizers of the r-fold cover");
    cover->add_option("knot", knot_arg, "spec string, knot JSON file, or -")->required();
    auto* obstruct = app.add_subcommand("obstruct", "metabolizer case analysis for an infected R_m");
    obstruct->add_option("knot", knot_arg, "spec string, knot JSON file, or -")->required();
    auto* rewrite = app.add_subcommand("rewrite", "reduce a symmetric diagram or pattern to a cobordism certificate");
    rewrite->add_option("input", input, "diagram or pattern JSON file, or -")->required();
    auto* verify = app.add_subcommand("verify", "replay and check a cobordism certificate");
    verify->add_option("input", input, "certificate JSON file, or -")->required();
    auto* repro = app.add_subcommand("reproduce-paper", "run every reproduction check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        cfg.convention = parse_convention(convention);
        cfg.budget = mpz_class(budget);
        cfg.bound = mpz_class(bound);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }

    try {
        if (*family) {
            if (spec.empty() && m_opt->count()) spec = "Rm(m=" + std::to_string(m) + ")";
            emit(cmd_family(spec, cfg), cfg.format);
        } else if (*invariants) {
            emit(cmd_invariants(load_knot(knot_arg), cfg), cfg.format);
        } else if (*cover) {
            emit(cmd_branched_cover(load_knot(knot_arg), cfg), cfg.format);
        } else if (*obstruct) {
            auto reg = FactRegistry::load(cfg.resolved_registry());
            emit(evaluate_obstruction(load_knot(knot_arg), cfg, reg).to_json(), cfg.format);
        } else if (*rewrite) {
            CobordismCertificate cert;
            auto j = load_rewrite_input(input, cert);
            j["config"] = cfg.to_json();
            emit(j, cfg.format);
        } else if (*verify) {
            auto cert = CobordismCertificate::from_json(read_json(input));
            auto v = verify_certificate(cert);
            auto j = envelope("certificate-verdict", cfg);
            j["verdict"] = v.to_json();
            emit(j, cfg.format);
            if (!v.valid) {
                std::cerr << "invalid certificate: " << v.error << '\n';
                return kRegression;
            }
        } else if (*repro) {
            ReproduceGrid grid;
            if (m_opt->count() && std::find(grid.m.begin(), grid.m.end(), m) == grid.m.end()) {
                grid.m.push_back(m);
                grid.cover_m.push_back(m);
            }
            if (r_opt->count() && std::find(grid.r.begin(), grid.r.end(), cfg.r) == grid.r.end())
                grid.r.push_back(cfg.r);
            auto rep = reproduce_paper(cfg, grid);
            if (cfg.format == "json") std::cout << rep.to_json().dump(2) << '\n';
            else if (cfg.format == "tsv") std::cout << rep.to_tsv();
            else std::cout << rep.to_human();
            for (auto& row : rep.rows)
                if (!row.pass) std::cerr << "FAILED " << row.id << ": " << row.observed << '\n';
            return rep.all_pass() ? kOk : kRegression;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const PrecisionError& e) {
        std::cerr << "precision insufficient: " << e.what() << '\n';
        return kBudget;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const RegistryError& e) {
        std::cerr << "registry error: " << e.what() << '\n';
        return kInput;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInput;
    } catch (const UnsupportedDecomposition& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kRegression;
    }
    return kOk;
}
