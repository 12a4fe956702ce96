// Acceptance gate: one line per criterion, with the runtime limit checked alongside the result.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "knotcalc/config.hpp"
#include "knotcalc/covers.hpp"
#include "knotcalc/knot.hpp"
#include "knotcalc/obstruction.hpp"
#include "knotcalc/relation.hpp"
#include "knotcalc/rewriter.hpp"

using namespace kc;

namespace {

struct Outcome {
    bool pass = false;
    std::string note;
};

LaurentPolynomial lin(long a, long b) { return LaurentPolynomial(0, {mpz_class(b), mpz_class(a)}); }

Outcome lambda_family() {
    for (long m : {1, 3, 5, 7}) {
        auto want = lin(m, -(m + 1)) * lin(m + 1, -m);
        auto got = alexander_polynomial(make_Rm(m).seifert());
        if (!LaurentPolynomial::equal_up_to_units(want, got)) return {false, "m=" + std::to_string(m) + " got " + got.str()};
    }
    return {true, "m in {1,3,5,7}"};
}

Outcome double_family() {
    const std::array<std::pair<long, long>, 5> pk{{{5, 2}, {13, 18}, {17, 32}, {29, 98}, {37, 162}}};
    for (long i = 1; i <= 5; ++i) {
        auto f = family_parameters(i);
        auto [p, k] = pk[i - 1];
        if (f.p != p || f.k != k || (p - 1) * (p - 1) / 8 != k) return {false, "parameters of J_" + std::to_string(i)};
        LaurentPolynomial want(-1, {mpz_class(2 * k), mpz_class(-(4 * k - 1)), mpz_class(2 * k)});
        auto got = make_Ji(i).alexander();
        if (!(got.normalized() == want.normalized())) return {false, "J_" + std::to_string(i) + " got " + got.str()};
    }
    return {true, "i = 1..5"};
}

Outcome covers() {
    for (long m : {1, 3, 5})
        for (unsigned r : {2u, 3u, 5u}) {
            mpz_class a, b;
            mpz_pow_ui(a.get_mpz_t(), mpz_class(m + 1).get_mpz_t(), r);
            mpz_pow_ui(b.get_mpz_t(), mpz_class(m).get_mpz_t(), r);
            mpz_class N = a - b;
            auto V = make_Rm(m).seifert();
            std::vector<mpz_class> want{N, N};
            auto circ = PresentedGroup(circulant_presentation_matrix(V.matrix(), r)).invariants();
            auto sym = PresentedGroup(symmetric_presentation_matrix(V.matrix(), r)).invariants();
            auto res = cover_order_by_resultant(V, r);
            if (circ != want || sym != want || res != N * N)
                return {false, "m=" + std::to_string(m) + " r=" + std::to_string(r)};
        }
    return {true, "(m, r) in {1,3,5} x {2,3,5}"};
}

Outcome infection() {
    for (long m : {1, 3, 5, 7}) {
        auto base = make_Rm(m);
        auto prof = base.signature_profile();
        for (long i = 1; i <= 5; ++i) {
            auto K = infect(infect(base, "aJ", make_Ji(i)), "aD", make_D());
            if (!(K.alexander() == base.alexander()) || !K.signature_profile().same_as(prof))
                return {false, "m=" + std::to_string(m) + " i=" + std::to_string(i)};
        }
    }
    return {true, "m in {1,3,5,7}, i = 1..5"};
}

Outcome metabolizers() {
    auto K = make_Rm(1);
    auto mets = blanchfield_metabolizers_genus1(K.seifert(), K.curve_labels());
    if (mets.size() != 2) return {false, "module metabolizers: " + std::to_string(mets.size())};
    auto G = branched_cover_homology(K.seifert(), 2);
    auto all = enumerate_metabolizers(G, true);
    if (all.size() != 2) return {false, "deck-invariant metabolizers: " + std::to_string(all.size())};
    auto mod = alexander_module_genus1(K.seifert(), K.curve_labels());
    for (auto* s : {&mod.first, &mod.second}) {
        auto p = pi_r_projection(s->generator, G);
        if (!p.is_metabolizer() || !p.invariant_under_deck) return {false, "pi^2 of " + s->label};
    }
    return {true, "2 module metabolizers, 2 deck-invariant, both pi^2 images metabolizers"};
}

QVec eigenvector(const RationalMatrix& t, const mpq_class& mu) {
    mpq_class a = t(0, 0) - mu, b = t(0, 1), c = t(1, 0), d = t(1, 1) - mu;
    if (a != 0 || b != 0) return {-b, a};
    return {d, -c};
}

Outcome splitting() {
    std::mt19937 rng(100);
    std::uniform_int_distribution<long> ub(1, 8), uc(-5, 5), coin(0, 1), el(-2, 2), sc(-3, 3);
    int done = 0, tries = 0;
    while (done < 100 && tries < 5000) {
        ++tries;
        auto make = [&](long b, long c) {
            IntegerMatrix P = IntegerMatrix::identity(2);
            for (int s = 0; s < 3; ++s) {
                IntegerMatrix E = IntegerMatrix::identity(2);
                E(s % 2, 1 - s % 2) = el(rng);
                P = P * E;
            }
            return SeifertMatrix(P.transpose() * IntegerMatrix{{0, b + 1}, {b, c}} * P);
        };
        long bk = ub(rng), bj = ub(rng);
        auto K = make(bk, uc(rng)), J = make(bj, uc(rng));
        if (!laurent_gcd_coprime(alexander_polynomial(K), alexander_polynomial(J)).coprime) continue;
        auto SK = isometric_structure(K), SJ = isometric_structure(J);
        mpq_class rk = coin(rng) ? mpq_class(bk + 1, bk) : mpq_class(bk, bk + 1);
        mpq_class rj = coin(rng) ? mpq_class(bj + 1, bj) : mpq_class(bj, bj + 1);
        rk.canonicalize();
        rj.canonicalize();
        QVec uk = eigenvector(SK.t, rk), uj = eigenvector(SJ.t, rj);
        long a = sc(rng), b = sc(rng), c = sc(rng), d = sc(rng);
        if (a * d - b * c == 0) continue;
        std::vector<QVec> PL{{a * uk[0], a * uk[1], b * uj[0], b * uj[1]}, {c * uk[0], c * uk[1], d * uj[0], d * uj[1]}};
        auto res = split_metabolizer(K, J, PL);
        std::vector<QVec> back;
        for (auto& v : res.P_K) back.push_back({v[0], v[1], 0, 0});
        for (auto& v : res.P_J) back.push_back({0, 0, v[0], v[1]});
        if (!same_span(back, PL) || !is_module_metabolizer(SK, res.P_K) || !is_module_metabolizer(SJ, res.P_J))
            return {false, "pair " + std::to_string(done)};
        ++done;
    }
    return {done == 100, std::to_string(done) + " coprime pairs round-tripped"};
}

Outcome rho_facts() {
    std::vector<Knot> fam;
    for (long i = 1; i <= 5; ++i) fam.push_back(make_Ji(i));
    auto rep = independence_analysis(fam, 1000000, 60);
    for (size_t i = 0; i < fam.size(); ++i)
        if (!rep.nonzero[i] || rep.enclosures[i].contains_zero()) return {false, "J_" + std::to_string(i + 1) + " not certified"};
    if (!rep.pairwise_distinct) return {false, "not pairwise distinct"};
    if (rep.relation.found) return {false, "integer relation found"};
    auto J = parse_knot("Dplus(trefoil, 0) # -trefoil");
    for (auto conv : {"mass-1", "mass-2pi"}) {
        RunConfig c;
        c.convention = parse_convention(conv);
        auto r = rho_proxy(J, c);
        if (!r.sign || *r.sign == 0 || r.enclosure.contains_zero()) return {false, std::string("J under ") + conv};
    }
    return {true, "5 nonzero, distinct, no relation within 10^6 at 60 digits (heuristic)"};
}

Outcome pipeline() {
    RunConfig cfg;
    auto reg = FactRegistry::load(cfg.resolved_registry());
    auto rep = evaluate_obstruction(parse_knot("Rm(m=1; aJ=Dplus(trefoil, 0) # -trefoil; aD=Dplus(trefoil, 0))"), cfg, reg);
    if (rep.conclusion != "obstructed") return {false, "infected R_1: " + rep.conclusion};
    bool rho = false, d = false;
    for (auto& c : rep.cases) {
        if (c.metabolizer == "aD")
            rho = c.kind == "rho-proxy" && c.verdict == "obstructed" && c.detail["rho_proxy"]["certified_sign"] != 0;
        if (c.metabolizer == "aJ")
            for (auto& f : c.detail.value("facts", nlohmann::json::array()))
                d = d || (c.verdict == "obstructed" && f.value("relation", "") == "<=" && f.value("value", "") == "-3/2");
    }
    if (!rho || !d) return {false, "case evidence missing"};
    auto triv = evaluate_obstruction(parse_knot("Rm(m=1; aJ=unknot; aD=unknot)"), cfg, reg);
    if (triv.conclusion != "not obstructed by implemented invariants") return {false, "R_1 trivial: " + triv.conclusion};
    return {true, "obstructed / not obstructed"};
}

Outcome rewriter() {
    std::mt19937_64 rng(909);
    size_t maxc = 0;
    for (int t = 0; t < 200; ++t) {
        auto P = random_pattern(rng, 10);
        auto D = initial_band_sums(P);
        maxc = std::max(maxc, D.crossing_count());
        if (D.crossing_count() > 20) return {false, "corpus exceeds 20 crossings"};
        auto E = D;
        while (E.crossing_count()) {
            E = band_move(E, find_reducible_crossing(E));
            if (!E.validate().empty()) return {false, "intermediate diagram invalid in diagram " + std::to_string(t)};
        }
        auto cert = reduce(P);
        auto v = verify_certificate(cert);
        if (!v.valid) return {false, "diagram " + std::to_string(t) + ": " + v.error};
        if (2 * v.band_moves != D.crossing_count()) return {false, "move count in diagram " + std::to_string(t)};
        for (auto g : v.genus)
            if (g != 0) return {false, "nonzero genus in diagram " + std::to_string(t)};
    }
    return {true, "200 diagrams, up to " + std::to_string(maxc) + " crossings"};
}

std::string cli;

Outcome determinism() {
    auto run = [](std::string& out) {
        std::string cmd = "\"" + cli + "\" reproduce-paper 2>/dev/null";
        FILE* p = popen(cmd.c_str(), "r");
        if (!p) return -1;
        std::array<char, 4096> buf;
        size_t n;
        while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
        return pclose(p);
    };
    std::string a, b;
    int ea = run(a), eb = run(b);
    if (ea != 0 || eb != 0) return {false, "reproduce-paper exit status " + std::to_string(ea) + "/" + std::to_string(eb)};
    if (a.empty()) return {false, "empty report"};
    return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to knotcalc>\n";
        return 2;
    }
    cli = argv[1];
    struct Criterion {
        int id;
        const char* name;
        double limit;  // seconds
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "lambda family", 1, lambda_family},
        {2, "double family J_i", 1, double_family},
        {3, "branched covers three-way", 10, covers},
        {4, "infection invariance", 1, infection},
        {5, "metabolizer structure", 1, metabolizers},
        {6, "metabolizer splitting", 30, splitting},
        {7, "rho-proxy facts", 60, rho_facts},
        {8, "obstruction pipeline", 5, pipeline},
        {9, "rewriter corpus", 60, rewriter},
        {10, "determinism", 120, determinism},
    };
    int failed = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.pass && dt < c.limit;
        failed += !ok;
        std::printf("%s  %2d %-28s %8.3fs (limit %gs)  %s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, dt, c.limit,
                    o.note.c_str(), o.pass && dt >= c.limit ? " [over time limit]" : "");
    }
    std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
