#include "knotcalc/obstruction.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>

namespace kc {

using nlohmann::json;

std::string to_string(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "unknown";
    }
}

namespace {

mpz_class form(const IntegerMatrix& V, const ZVec& x, const ZVec& y) {
    mpz_class s = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0) s += x[i] * V(i, j) * y[j];
    }
    return s;
}

bool is_primitive(const std::vector<ZVec>& cols) {
    if (cols.empty()) return true;
    IntegerMatrix M(cols[0].size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < cols[j].size(); ++i) M(i, j) = cols[j][i];
    for (auto& d : smith_normal_form(M).diagonal)
        if (abs(d) != 1) return false;
    return true;
}

json zvec_json(const ZVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
    return a;
}

bool is_odd_prime(unsigned r) {
    if (r < 3 || r % 2 == 0) return false;
    for (unsigned d = 3; d * d <= r; d += 2)
        if (r % d == 0) return false;
    return true;
}

}  // namespace

SlicenessResult algebraically_slice(const SeifertMatrix& S, const mpz_class& budget) {
    SlicenessResult res;
    size_t n = S.size(), g = S.genus();
    if (n == 0) {
        res.verdict = Truth::True;
        res.certificate = "trivial Seifert form";
        return res;
    }
    const IntegerMatrix& V = S.matrix();

    auto prof = signature_profile(S);
    if (int s = prof.value_at_minus_one(); s != 0) {
        res.verdict = Truth::False;
        res.certificate = "sigma(-1) = " + std::to_string(s) + " != 0";
        return res;
    }
    for (size_t a = 0; a < prof.values.size(); ++a)
        if (prof.values[a] != 0) {
            res.verdict = Truth::False;
            res.certificate = "sigma = " + std::to_string(prof.values[a]) + " on arc " + std::to_string(a);
            return res;
        }

    mpz_class det = abs(alexander_polynomial_raw(S).eval(mpz_class(-1)));
    if (!mpz_perfect_square_p(det.get_mpz_t())) {
        res.verdict = Truth::False;
        res.certificate = "|Delta(-1)| = " + det.get_str() + " is not a square";
        return res;
    }
    // isotropic vectors in growing boxes, then g mutually orthogonal ones spanning a summand
    for (long B = 1;; ++B) {
        mpz_class box;
        mpz_ui_pow_ui(box.get_mpz_t(), 2 * B + 1, n);
        if (res.examined + box > budget) break;
        std::vector<ZVec> iso;
        ZVec x(n, -B);
        for (;;) {
            ++res.examined;
            auto first = std::find_if(x.begin(), x.end(), [](const mpz_class& v) { return v != 0; });
            if (first != x.end() && *first > 0 && form(V, x, x) == 0) iso.push_back(x);
            size_t i = 0;
            while (i < n && x[i] == B) x[i++] = -B;
            if (i == n) break;
            ++x[i];
        }
        auto key = [](const ZVec& v) {
            mpz_class mx = 0, l1 = 0;
            for (auto& c : v) {
                mx = std::max(mx, mpz_class(abs(c)));
                l1 += abs(c);
            }
            return std::make_pair(mx, l1);
        };
        std::stable_sort(iso.begin(), iso.end(), [&](const ZVec& a, const ZVec& b) {
            auto ka = key(a), kb = key(b);
            if (ka != kb) return ka < kb;
            return a > b;
        });
        std::vector<ZVec> chosen;
        bool over = false;
        std::function<bool(size_t)> dfs = [&](size_t from) {
            if (chosen.size() == g) return true;
            for (size_t i = from; i < iso.size(); ++i) {
                if (++res.examined > budget) {
                    over = true;
                    return false;
                }
                bool ok = true;
                for (auto& c : chosen)
                    if (form(V, c, iso[i]) != 0 || form(V, iso[i], c) != 0) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                chosen.push_back(iso[i]);
                if (is_primitive(chosen) && dfs(i + 1)) return true;
                chosen.pop_back();
                if (over) return false;
            }
            return false;
        };
        if (dfs(0)) {
            res.verdict = Truth::True;
            res.witness = chosen;
            res.certificate = "V vanishes on a rank-" + std::to_string(g) + " summand";
            return res;
        }
        if (over) break;
    }
    res.verdict = Truth::Unknown;
    res.certificate = "no metabolizer found within budget " + budget.get_str();
    return res;
}

// ---------------------------------------------------------------- rho proxy

json RhoProxy::to_json(int digits) const {
    json j;
    j["exact"] = value.exact_string();
    j["convention"] = value.convention().name();
    j["decimal"] = enclosure.decimal(digits);
    j["enclosure"] = json::array({RealInterval::exact(enclosure.lower(), enclosure.precision()).decimal(digits),
                                  RealInterval::exact(enclosure.upper(), enclosure.precision()).decimal(digits)});
    j["certified_sign"] = sign ? json(*sign) : json(nullptr);
    return j;
}

RhoProxy rho_proxy(const Knot& companion, const RunConfig& config) {
    RhoProxy r;
    r.value = companion.signature_integral(config.convention);
    int bits = digits_to_bits(config.precision_digits);
    r.enclosure = r.value.enclosure(bits);
    r.sign = r.value.certified_sign(64, std::max(4096, 4 * bits));
    return r;
}

// ---------------------------------------------------------------- registry

json Fact::to_json() const {
    json j;
    j["id"] = id;
    j["kind"] = kind;
    j["statement"] = statement;
    if (!relation.empty()) j["relation"] = relation;
    if (!value.empty()) j["value"] = value;
    j["status"] = status;
    j["citation"] = citation;
    j["checks"] = checks;
    j["assumptions"] = assumptions;
    return j;
}

FactRegistry FactRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RegistryError("cannot open fact registry '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw RegistryError("fact registry '" + path + "' is not valid JSON: " + e.what());
    }
    return parse(j, path);
}

FactRegistry FactRegistry::parse(const json& j, const std::string& source) {
    auto fail = [&](const std::string& msg) { throw RegistryError("fact registry '" + source + "': " + msg); };
    if (!j.is_object() || !j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
        fail("missing or unsupported schema_version");
    if (!j.contains("facts") || !j["facts"].is_array()) fail("'facts' must be an array");
    FactRegistry reg;
    reg.source = source;
    std::set<std::string> ids;
    for (auto& f : j["facts"]) {
        auto str = [&](const char* key, bool required) -> std::string {
            if (!f.contains(key)) {
                if (required) fail(std::string("fact lacks '") + key + "'");
                return "";
            }
            if (!f[key].is_string() || (required && f[key].get<std::string>().empty()))
                fail(std::string("field '") + key + "' must be a nonempty string");
            return f[key].get<std::string>();
        };
        Fact x;
        x.id = str("id", true);
        x.kind = str("kind", true);
        x.statement = str("statement", true);
        x.status = str("status", true);
        x.citation = str("citation", true);
        if (!ids.insert(x.id).second) fail("duplicate fact id '" + x.id + "'");
        if (x.status != "established" && x.status != "conditional") fail("fact '" + x.id + "' has unknown status");
        if (x.kind == "d_invariant_bound") {
            x.relation = str("relation", true);
            x.value = str("value", true);
            if (x.relation != "<=" && x.relation != ">=") fail("fact '" + x.id + "' has unknown relation");
            try {
                mpq_class q(x.value);
                (void)q;
            } catch (...) {
                fail("fact '" + x.id + "' value is not a rational");
            }
        } else if (x.kind != "d_invariant_transfer") {
            fail("fact '" + x.id + "' has unknown kind '" + x.kind + "'");
        }
        if (!f.contains("applies_to") || !f["applies_to"].is_object()) fail("fact '" + x.id + "' lacks applies_to");
        const json& a = f["applies_to"];
        try {
            if (a.contains("m")) x.m = a["m"].get<std::vector<long>>();
            if (a.contains("aD")) x.aD = a["aD"].get<std::string>();
            if (a.contains("aJ")) x.aJ = a["aJ"].get<std::vector<std::string>>();
            if (a.contains("aJ_alias_prefix")) x.aJ_alias_prefix = a["aJ_alias_prefix"].get<std::string>();
            if (f.contains("checks")) x.checks = f["checks"].get<std::vector<std::string>>();
            if (f.contains("assumptions")) x.assumptions = f["assumptions"].get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            fail("fact '" + x.id + "' malformed: " + e.what());
        }
        if (a.value("metabolizer", "aJ") != "aJ") fail("fact '" + x.id + "' applies to an unsupported metabolizer");
        for (auto& c : x.checks)
            if (c != "r_odd_prime" && c != "cover_Z2_homology_sphere" && c != "pi_r_metabolizer" && c != "element_in_pi_r")
                fail("fact '" + x.id + "' has unknown check '" + c + "'");
        // companion specs must parse
        try {
            if (!x.aD.empty()) x.aD = parse_knot(x.aD).spec();
            for (auto& s : x.aJ) s = parse_knot(s).spec();
        } catch (const std::exception& e) {
            fail("fact '" + x.id + "' companion: " + e.what());
        }
        reg.facts.push_back(x);
    }
    return reg;
}

// ---------------------------------------------------------------- obstruction

json ObstructionReport::to_json() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "obstruction-report";
    j["knot"] = knot;
    j["knot_spec"] = knot_spec;
    j["algebraically_slice"] = {{"value", algebraically_slice}, {"witness", json::array()}};
    for (auto& w : witness) j["algebraically_slice"]["witness"].push_back(zvec_json(w));
    j["cases"] = json::array();
    for (auto& c : cases)
        j["cases"].push_back({{"metabolizer", c.metabolizer}, {"kind", c.kind}, {"verdict", c.verdict}, {"detail", c.detail}});
    j["assumptions"] = assumptions;
    j["conclusion"] = conclusion;
    j["config"] = config.to_json();
    return j;
}

ObstructionReport evaluate_obstruction(const Knot& K, const RunConfig& config, const FactRegistry& registry) {
    if (K.kind() != Knot::Kind::Leaf || K.base().genus() != 1)
        throw std::invalid_argument("evaluate_obstruction: expects a genus-one leaf knot of the R_m shape");
    const auto& labels = K.curve_labels();
    if (std::find(labels.begin(), labels.end(), "aJ") == labels.end() ||
        std::find(labels.begin(), labels.end(), "aD") == labels.end())
        throw std::invalid_argument("evaluate_obstruction: curves aJ and aD are required");

    ObstructionReport rep;
    rep.config = config;
    rep.knot_spec = K.spec();
    rep.knot = K.to_json();
    const SeifertMatrix& base = K.base();
    auto slice = algebraically_slice(base, config.budget);
    rep.algebraically_slice = slice.verdict == Truth::True;
    rep.witness = slice.witness;

    auto mets = blanchfield_metabolizers_genus1(base, labels);  // throws on other shapes
    auto iso = isometric_structure(base);
    auto module = alexander_module_genus1(base, labels);
    std::map<std::string, ZVec> gen{{module.first.label, module.first.generator}, {module.second.label, module.second.generator}};
    int digits = config.precision_digits;

    rep.assumptions.push_back({{"kind", "signature-convention"}, {"value", config.convention.name()}});
    rep.assumptions.push_back(
        {{"kind", "prime-set"},
         {"value", "r = " + std::to_string(config.r) + " is assumed to lie outside the finite prime set S; S is not computed"}});
    std::set<std::string> used;

    auto companion_at = [&](const std::string& label) {
        const Knot* c = K.companion(label);
        return c ? *c : unknot();
    };

    for (auto& met : mets) {
        ObstructionCase oc;
        oc.metabolizer = met.label;
        std::string other = met.label == "aJ" ? "aD" : "aJ";
        Knot comp = companion_at(other);
        auto rho = rho_proxy(comp, config);
        QVec up, uc;
        for (auto& c : gen[met.label]) up.push_back(mpq_class(c));
        for (auto& c : gen[other]) uc.push_back(mpq_class(c));
        mpq_class pairing = 0;
        for (size_t i = 0; i < up.size(); ++i)
            for (size_t j = 0; j < uc.size(); ++j) pairing += up[i] * iso.form(i, j) * uc[j];
        json detail;
        detail["generator"] = zvec_json(met.generator);
        detail["annihilator"] = met.annihilator.str();
        detail["rho_proxy"] = rho.to_json(digits);
        detail["rho_proxy"]["companion_curve"] = other;
        detail["rho_proxy"]["companion"] = comp.spec();
        detail["pairing_with_companion_curve"] = pairing.get_str();

        if (pairing != 0 && rho.sign && *rho.sign != 0) {
            oc.kind = "rho-proxy";
            oc.verdict = "obstructed";
            detail["argument"] = "a metabolizer forces the rho-invariant along " + met.label + " to vanish; the companion at " +
                                 other + " contributes a certified nonzero signature integral";
            oc.detail = detail;
            rep.cases.push_back(oc);
            continue;
        }

        // Heegaard Floer input from the registry
        const Fact *bound = nullptr, *transfer = nullptr;
        long m = K.family() == "Rm" ? K.parameter() : 0;
        std::string aD = companion_at("aD").spec();
        Knot aJk = companion_at("aJ");
        for (auto& f : registry.facts) {
            if (met.label != "aJ") break;
            if (f.kind == "d_invariant_bound") {
                if (!f.m.empty() && std::find(f.m.begin(), f.m.end(), m) == f.m.end()) continue;
                if (!f.aD.empty() && f.aD != aD) continue;
                if (!bound) bound = &f;
            } else {
                bool hit = std::find(f.aJ.begin(), f.aJ.end(), aJk.spec()) != f.aJ.end();
                if (!f.aJ_alias_prefix.empty() && aJk.alias().rfind(f.aJ_alias_prefix, 0) == 0) hit = true;
                if (aJk.is_unknot()) hit = true;  // nothing to transfer
                if (hit && !transfer) transfer = &f;
            }
        }
        if (bound && transfer) {
            json checks;
            bool all = true;
            auto cover = branched_cover_homology(base, config.r);
            auto run = [&](const std::string& c) {
                bool ok = false;
                if (c == "r_odd_prime") ok = is_odd_prime(config.r);
                if (c == "cover_Z2_homology_sphere") ok = cover.is_finite() && mpz_odd_p(cover.order().get_mpz_t());
                if (c == "pi_r_metabolizer" || c == "element_in_pi_r") {
                    if (!cover.is_finite()) {
                        ok = false;
                    } else {
                        auto pr = pi_r_projection(gen["aJ"], cover);
                        if (c == "pi_r_metabolizer") ok = pr.is_metabolizer() && pr.invariant_under_deck;
                        else {
                            ZVec x(cover.generators(), 0);
                            mpz_class two;
                            mpz_ui_pow_ui(two.get_mpz_t(), 2, config.r - 1);
                            for (size_t k = 0; k < gen["aJ"].size(); ++k) x[k] = two * gen["aJ"][k];
                            ok = subgroup_contains(cover, pr.subgroup, x);
                        }
                    }
                }
                checks[c] = ok;
                all = all && ok;
            };
            for (auto* f : {bound, transfer})
                for (auto& c : f->checks)
                    if (!checks.contains(c)) run(c);
            if (cover.is_finite()) {
                auto pr = pi_r_projection(gen["aJ"], cover);
                detail["cover"] = {{"r", config.r},
                                   {"group", cover.structure()},
                                   {"pi_r_order", pr.subgroup.order.get_str()},
                                   {"pi_r_metabolizer", pr.is_metabolizer()}};
            }
            detail["checks"] = checks;
            detail["facts"] = json::array({bound->to_json(), transfer->to_json()});
            if (all) {
                oc.kind = "d-invariant";
                bool conditional = bound->status == "conditional" || transfer->status == "conditional";
                oc.verdict = conditional ? "conditionally obstructed" : "obstructed";
                detail["argument"] = "a metabolizer forces d = 0 on the t-orbit of the lift x of aJ; the registered bound gives d " +
                                     bound->relation + " " + bound->value + " at 2^(r-1) x";
                for (auto* f : {bound, transfer}) used.insert(f->id);
            } else {
                oc.kind = "none";
                oc.verdict = "not obstructed";
                detail["argument"] = "registered facts apply but a machine check failed";
            }
        } else {
            oc.kind = "none";
            oc.verdict = "not obstructed";
            detail["argument"] = pairing == 0 ? "companion curve pairs trivially with the metabolizer"
                                              : (rho.sign ? "rho-proxy vanishes and no registered fact applies"
                                                          : "rho-proxy sign undecided and no registered fact applies");
        }
        detail["characters"] = "characters vanishing on pi^r(P): Casson-Gordon tau(K, chi) constant/vanishing required (not computed)";
        oc.detail = detail;
        rep.cases.push_back(oc);
    }

    for (auto& f : registry.facts)
        if (used.count(f.id)) {
            json a = f.to_json();
            a["kind_of_assumption"] = "registered-fact";
            rep.assumptions.push_back(a);
        }

    bool all_hard = true, all_some = true;
    for (auto& c : rep.cases) {
        if (c.verdict != "obstructed") all_hard = false;
        if (c.verdict == "not obstructed") all_some = false;
    }
    if (mets.empty())
        rep.conclusion = "obstructed";
    else if (all_hard)
        rep.conclusion = "obstructed";
    else if (all_some)
        rep.conclusion = "conditionally obstructed";
    else
        rep.conclusion = "not obstructed by implemented invariants";
    return rep;
}

// ---------------------------------------------------------------- independence

json IndependenceReport::to_json() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "independence-report";
    j["precision_digits"] = precision_digits;
    j["values"] = json::array();
    for (size_t i = 0; i < names.size(); ++i)
        j["values"].push_back({{"knot", names[i]},
                               {"exact", values[i].exact_string()},
                               {"decimal", enclosures[i].decimal(precision_digits)},
                               {"nonzero_certified", bool(nonzero[i])}});
    j["pairwise_distinct_certified"] = pairwise_distinct;
    j["equal_pairs"] = json::array();
    for (auto& p : equal_pairs) j["equal_pairs"].push_back({p.first, p.second});
    json rel;
    rel["label"] = "heuristic";
    rel["bound"] = relation.bound.get_str();
    rel["found"] = relation.found;
    rel["relation"] = json::array();
    for (auto& c : relation.relation) rel["relation"].push_back(c.get_str());
    rel["precision_bits"] = relation.precision_bits;
    rel["lattice_certified"] = relation.lattice_certified;
    rel["note"] = relation.note;
    j["integer_relation"] = rel;
    return j;
}

IndependenceReport independence_analysis(const std::vector<Knot>& family, const mpz_class& bound, int precision_digits,
                                          SignatureConvention conv) {
    IndependenceReport rep;
    rep.precision_digits = precision_digits;
    int bits = digits_to_bits(precision_digits);
    for (auto& k : family) {
        rep.names.push_back(k.spec());
        rep.values.push_back(k.signature_integral(conv));
        rep.enclosures.push_back(rep.values.back().enclosure(bits));
        auto s = rep.values.back().certified_sign(64, std::max(4096, 4 * bits));
        rep.nonzero.push_back(s && *s != 0);
    }
    rep.pairwise_distinct = true;
    for (size_t i = 0; i < family.size(); ++i)
        for (size_t j = i + 1; j < family.size(); ++j) {
            auto d = rep.values[i] + (-rep.values[j]);
            if (d.is_exactly_zero()) {
                rep.equal_pairs.push_back({i, j});
                rep.pairwise_distinct = false;
                continue;
            }
            auto s = d.certified_sign(64, std::max(4096, 4 * bits));
            if (!s || *s == 0) rep.pairwise_distinct = false;
        }
    rep.relation = integer_relation(rep.enclosures, bound);
    return rep;
}

}  // namespace kc
