#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>

#include "knotcalc/obstruction.hpp"

using namespace kc;
using nlohmann::json;

namespace {

const char* kInfectedR1 = "Rm(m=1; aJ=Dplus(trefoil, 0) # -trefoil; aD=Dplus(trefoil, 0))";

FactRegistry shipped() { return FactRegistry::load(RunConfig{}.resolved_registry()); }

json shipped_json() {
    std::ifstream in(RunConfig{}.resolved_registry());
    json j;
    in >> j;
    return j;
}

// midpoint rule over theta in (0, pi), mass-1 normalization
double numeric_integral(const Knot& k, int steps = 2000) {
    double total = 0;
    for (int i = 0; i < steps; ++i) {
        double theta = M_PI * (i + 0.5) / steps;
        mpq_class s(std::tan(theta / 2));
        total += k.signature_at_sample(s);
    }
    return total / steps;
}

bool brute_isotropic_primitive(const IntegerMatrix& V, long B) {
    for (long a = -B; a <= B; ++a)
        for (long b = -B; b <= B; ++b) {
            if (std::gcd(a, b) != 1) continue;
            mpz_class q = a * a * V(0, 0) + a * b * (V(0, 1) + V(1, 0)) + b * b * V(1, 1);
            if (q == 0) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("algebraic sliceness") {
    for (long m : {1, 3, 5, 7}) {
        auto r = algebraically_slice(make_Rm(m).seifert());
        CHECK(r.verdict == Truth::True);
        REQUIRE(r.witness.size() == 1);
        CHECK(r.witness[0] == ZVec{1, 0});
        auto V = make_Rm(m).seifert().matrix();
        CHECK(V(1, 1) == 0);  // e2 is a second witness
    }
    auto t = algebraically_slice(trefoil().seifert());
    CHECK(t.verdict == Truth::False);
    CHECK(t.certificate == "sigma(-1) = -2 != 0");
    CHECK(algebraically_slice(SeifertMatrix()).verdict == Truth::True);
    CHECK(algebraically_slice(SeifertMatrix(IntegerMatrix{{1, 1}, {0, -1}})).verdict == Truth::False);
    // K # -K is algebraically slice
    auto tt = algebraically_slice(parse_knot("trefoil # -trefoil").seifert());
    CHECK(tt.verdict == Truth::True);
    CHECK(tt.witness.size() == 2);
    // exhausted budget is never reported as false
    auto u = algebraically_slice(make_Rm(1).seifert(), 3);
    CHECK(u.verdict == Truth::Unknown);
}

TEST_CASE("algebraic sliceness against a brute-force isotropic search") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> u(-3, 3);
    int agree = 0;
    for (int trial = 0; trial < 150; ++trial) {
        IntegerMatrix V{{u(rng), u(rng)}, {0, u(rng)}};
        V(1, 0) = V(0, 1) - 1;
        SeifertMatrix S(V);
        auto r = algebraically_slice(S, 100000);
        bool brute = brute_isotropic_primitive(V, 4);
        if (r.verdict == Truth::False) CHECK(!brute);
        if (brute) CHECK(r.verdict == Truth::True);
        if (r.verdict == Truth::True) {
            auto& w = r.witness[0];
            mpz_class q = 0;
            for (size_t i = 0; i < 2; ++i)
                for (size_t j = 0; j < 2; ++j) q += w[i] * V(i, j) * w[j];
            CHECK(q == 0);
            ++agree;
        }
    }
    CHECK(agree > 0);
}

TEST_CASE("rho proxies") {
    RunConfig cfg;
    Knot J = parse_knot("Dplus(trefoil, 0) # -trefoil");
    for (auto mass : {SignatureConvention::Mass::One, SignatureConvention::Mass::TwoPi}) {
        RunConfig c = cfg;
        c.convention.mass = mass;
        auto r = rho_proxy(J, c);
        REQUIRE(r.sign);
        CHECK(*r.sign != 0);
        CHECK(!r.enclosure.contains_zero());
    }
    auto r = rho_proxy(J, cfg);
    CHECK(std::abs(r.enclosure.midpoint().get_d() - numeric_integral(J)) < 0.01);

    auto z = rho_proxy(unknot(), cfg);
    CHECK(z.value.is_exactly_zero());
    CHECK(z.sign == 0);

    auto j1 = rho_proxy(make_Ji(1), cfg);
    CHECK(!j1.enclosure.contains_zero());
    CHECK(j1.enclosure.width() < mpq_class(1, 10) / mpq_class(mpz_class("1" + std::string(60, '0'))));
    CHECK(std::abs(j1.enclosure.midpoint().get_d() - numeric_integral(make_Ji(1))) < 0.01);
    CHECK(std::abs(j1.enclosure.midpoint().get_d() - (2 - 2 * std::acos(7.0 / 8) / M_PI)) < 1e-12);

    // additivity
    Knot a = make_Ji(1), b = trefoil();
    auto sum = rho_proxy(Knot::sum({a, b}), cfg).value;
    auto parts = rho_proxy(a, cfg).value + rho_proxy(b, cfg).value;
    CHECK((sum + (-parts)).is_exactly_zero());
}

TEST_CASE("fact registry validation") {
    auto reg = shipped();
    CHECK(reg.facts.size() >= 2);
    for (auto& f : reg.facts) CHECK(!f.citation.empty());
    auto base = shipped_json();
    auto broken = [&](const std::function<void(json&)>& edit) {
        json j = base;
        edit(j);
        CHECK_THROWS_AS(FactRegistry::parse(j, "test"), RegistryError);
    };
    broken([](json& j) { j["facts"][0].erase("citation"); });
    broken([](json& j) { j["facts"][0]["status"] = "proved"; });
    broken([](json& j) { j["facts"][0]["value"] = "minus three halves"; });
    broken([](json& j) { j["facts"][0]["kind"] = "nu_plus"; });
    broken([](json& j) { j["schema_version"] = 7; });
    broken([](json& j) { j["facts"][1]["id"] = j["facts"][0]["id"]; });
    broken([](json& j) { j["facts"][0]["checks"] = {"check_nothing"}; });
    broken([](json& j) { j["facts"][0]["applies_to"]["aD"] = "Dplus(trefoil"; });
    CHECK_THROWS_AS(FactRegistry::load("/nonexistent/facts.json"), RegistryError);
}

TEST_CASE("obstruction reports") {
    RunConfig cfg;
    auto reg = shipped();

    auto rep = evaluate_obstruction(parse_knot(kInfectedR1), cfg, reg);
    CHECK(rep.algebraically_slice);
    CHECK(rep.conclusion == "obstructed");
    REQUIRE(rep.cases.size() == 2);
    for (auto& c : rep.cases) {
        CHECK(c.verdict == "obstructed");
        std::string other = c.metabolizer == "aJ" ? "aD" : "aJ";
        CHECK(c.detail["rho_proxy"]["companion_curve"] == other);
        if (c.metabolizer == "aD") {
            CHECK(c.kind == "rho-proxy");
            CHECK(c.detail["rho_proxy"]["companion"] == "Dplus(trefoil, 0) # -trefoil");
        } else {
            CHECK(c.kind == "d-invariant");
            bool has = false;
            for (auto& f : c.detail["facts"])
                if (f.value("relation", "") == "<=" && f.value("value", "") == "-3/2") has = true;
            CHECK(has);
        }
    }
    // citations of used facts are quoted in the assumptions
    const json j = rep.to_json();
    for (auto& f : reg.facts) {
        bool used = false, quoted = false;
        for (auto& c : j["cases"])
            if (c["detail"].contains("facts"))
                for (auto& g : c["detail"]["facts"])
                    if (g["id"] == f.id) used = true;
        for (auto& a : j["assumptions"])
            if (a.value("id", "") == f.id && a["citation"] == f.citation) quoted = true;
        if (used) CHECK(quoted);
    }
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["config"]["convention"] == "mass-1,no-jump-averaging");
    CHECK(evaluate_obstruction(parse_knot(kInfectedR1), cfg, reg).to_json().dump() == j.dump());

    auto slice = evaluate_obstruction(make_Rm(1), cfg, reg);
    CHECK(slice.conclusion == "not obstructed by implemented invariants");
    for (auto& c : slice.cases) CHECK(c.detail["rho_proxy"]["exact"] == "0");

    auto j1 = evaluate_obstruction(parse_knot("Rm(m=1; aJ=Ji(1); aD=Dplus(trefoil, 0))"), cfg, reg);
    CHECK(j1.conclusion == "conditionally obstructed");
    for (auto& c : j1.cases) {
        if (c.metabolizer == "aD") CHECK(c.verdict == "obstructed");
        if (c.metabolizer == "aJ") CHECK(c.verdict == "conditionally obstructed");
    }

    // without registered facts the d-invariant case stays open
    FactRegistry empty;
    auto bare = evaluate_obstruction(parse_knot(kInfectedR1), cfg, empty);
    CHECK(bare.conclusion == "not obstructed by implemented invariants");

    // an even cover degree fails the machine checks of the bound
    RunConfig even = cfg;
    even.r = 2;
    CHECK(evaluate_obstruction(parse_knot(kInfectedR1), even, reg).conclusion == "not obstructed by implemented invariants");

    CHECK_THROWS_AS(evaluate_obstruction(trefoil(), cfg, reg), std::invalid_argument);
    CHECK_THROWS(evaluate_obstruction(parse_knot("Dplus(trefoil, 0)"), cfg, reg));
}

TEST_CASE("slice inputs are never obstructed") {
    RunConfig cfg;
    auto reg = shipped();
    for (long m : {1, 3, 5, 7}) {
        Knot k = infect(infect(make_Rm(m), "aJ", unknot()), "aD", unknot());
        CHECK(algebraically_slice(k.base()).verdict == Truth::True);
        CHECK(evaluate_obstruction(k, cfg, reg).conclusion == "not obstructed by implemented invariants");
        CHECK(evaluate_obstruction(make_Rm(m), cfg, reg).conclusion == "not obstructed by implemented invariants");
    }
}

TEST_CASE("independence analysis") {
    std::vector<Knot> fam;
    for (int i = 1; i <= 5; ++i) fam.push_back(make_Ji(i));
    auto rep = independence_analysis(fam, 1000000, 60);
    for (bool b : rep.nonzero) CHECK(b);
    CHECK(rep.pairwise_distinct);
    CHECK(!rep.relation.found);
    CHECK(rep.to_json()["integer_relation"]["label"] == "heuristic");

    auto dup = independence_analysis({make_Ji(1), make_Ji(1)}, 1000000, 60);
    CHECK(!dup.pairwise_distinct);
    REQUIRE(dup.relation.found);
    CHECK(dup.relation.relation == std::vector<mpz_class>{1, -1});

    auto u = independence_analysis({unknot()}, 1000, 30);
    CHECK(!u.nonzero[0]);

    CHECK_THROWS_AS(independence_analysis(fam, 1000000, 5), PrecisionError);
}
