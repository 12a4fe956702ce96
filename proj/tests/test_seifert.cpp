#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "knotcalc/seifert.hpp"

using namespace kc;

namespace {

LaurentPolynomial lp(long lo, std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return LaurentPolynomial(lo, z);
}

const SeifertMatrix trefoil(IntegerMatrix{{-1, 1}, {0, -1}}, "T23");
const SeifertMatrix R1(IntegerMatrix{{0, 2}, {1, 0}}, "R1");
const SeifertMatrix J1(IntegerMatrix{{1, 1}, {0, 4}}, "J1");
const SeifertMatrix Dknot(IntegerMatrix{{-1, 1}, {0, 0}}, "D");
const SeifertMatrix fig8(IntegerMatrix{{1, 1}, {0, -1}}, "4_1");

// Leibniz expansion of det(V - t V^T) with Laurent entries
LaurentPolynomial leibniz_alexander(const IntegerMatrix& V) {
    size_t n = V.rows();
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPolynomial total;
    do {
        int sign = 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        LaurentPolynomial term(sign);
        for (size_t i = 0; i < n; ++i) term = term * LaurentPolynomial(0, {V(i, perm[i]), -V(perm[i], i)});
        total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

SeifertMatrix random_seifert(std::mt19937& rng, size_t g, long range = 3) {
    std::uniform_int_distribution<long> d(-range, range);
    size_t n = 2 * g;
    IntegerMatrix V(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) V(i, j) = V(j, i) = d(rng);
    for (size_t k = 0; k < g; ++k) V(2 * k, 2 * k + 1) += 1;
    // random unimodular change of basis
    IntegerMatrix P = IntegerMatrix::identity(n);
    std::uniform_int_distribution<size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> f(-1, 1);
    for (int k = 0; k < 4; ++k) {
        size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        IntegerMatrix E = IntegerMatrix::identity(n);
        E(i, j) = f(rng);
        P = P * E;
    }
    return SeifertMatrix(P.transpose() * V * P);
}

}  // namespace

TEST_CASE("alexander_polynomial examples") {
    CHECK(alexander_polynomial(R1) == lp(-1, {2, -5, 2}));
    CHECK(alexander_polynomial(J1) == lp(-1, {4, -7, 4}));
    CHECK(alexander_polynomial(Dknot) == LaurentPolynomial(1));
    CHECK(alexander_polynomial(trefoil) == lp(-1, {1, -1, 1}));
    CHECK(alexander_polynomial(fig8) == lp(-1, {1, -3, 1}));
    CHECK(alexander_polynomial(SeifertMatrix()) == LaurentPolynomial(1));
    CHECK(LaurentPolynomial::equal_up_to_units(alexander_polynomial(R1), lp(0, {-2, 1}) * lp(0, {-1, 2})));
    CHECK_THROWS_AS(SeifertMatrix(IntegerMatrix{{1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("alexander polynomial against Leibniz expansion, random matrices") {
    std::mt19937 rng(17);
    for (int it = 0; it < 60; ++it) {
        auto S = random_seifert(rng, 1 + it % 3);
        auto raw = alexander_polynomial_raw(S);
        CHECK(raw == leibniz_alexander(S.matrix()));
        auto d = alexander_polynomial(S);
        CHECK(abs(d.eval(mpz_class(1))) == 1);
        CHECK(d.is_symmetric());
    }
}

TEST_CASE("connected_sum") {
    auto a = connected_sum(R1, SeifertMatrix());
    CHECK(a.matrix() == R1.matrix());
    CHECK(alexander_polynomial(connected_sum(R1, J1)) == (alexander_polynomial(R1) * alexander_polynomial(J1)).normalized());
    auto tt = signature_profile(connected_sum(trefoil, trefoil));
    CHECK(tt.value_at_minus_one() == -4);
    CHECK(*tt.value_at(-1) == -4);
}

TEST_CASE("mirror_reverse") {
    auto mm = mirror_reverse(mirror_reverse(J1));
    CHECK(mm.matrix() == J1.matrix());
    auto a = signature_integral(trefoil), b = signature_integral(mirror_reverse(trefoil));
    CHECK((a + b).is_exactly_zero());
    CHECK(b.rational_part() == mpq_class(4, 3));
    CHECK(alexander_polynomial(mirror_reverse(J1)) == alexander_polynomial(J1));
    auto p = signature_profile(J1), q = signature_profile(mirror_reverse(J1));
    REQUIRE(p.values.size() == q.values.size());
    for (size_t j = 0; j < p.values.size(); ++j) CHECK(p.values[j] == -q.values[j]);
}

TEST_CASE("signature_profile examples") {
    auto t = signature_profile(trefoil);
    REQUIRE(t.breakpoints.size() == 1);
    CHECK(t.breakpoints[0].is_rational());
    CHECK(t.breakpoints[0].rational() == mpq_class(1, 2));
    CHECK(t.values == std::vector<int>{0, -2});
    CHECK_FALSE(t.value_at(mpq_class(1, 2)).has_value());
    CHECK(*t.value_at(mpq_class(1, 2), true) == -1);

    auto u = signature_profile(SeifertMatrix());
    CHECK(u.breakpoints.empty());
    CHECK(u.values == std::vector<int>{0});

    auto j = signature_profile(J1);
    REQUIRE(j.breakpoints.size() == 1);
    CHECK(j.breakpoints[0].rational() == mpq_class(7, 8));
    CHECK(j.values[0] == 0);
    CHECK(std::abs(j.values[1]) == 2);
    CHECK(j.values[1] == 2);

    // Delta = 1: no breakpoints, signature identically zero
    auto d = signature_profile(Dknot);
    CHECK(d.breakpoints.empty());
    CHECK(d.values == std::vector<int>{0});

    // figure eight: no unit-circle roots
    CHECK(signature_profile(fig8).breakpoints.empty());
}

TEST_CASE("signature_integral examples") {
    CHECK(signature_integral(SeifertMatrix()).is_exactly_zero());
    auto t = signature_integral(trefoil);
    CHECK(t.is_rational_form());
    CHECK(t.rational_part() == mpq_class(-4, 3));
    CHECK(t.exact_string() == "-4/3");
    auto e = t.enclosure(100);
    CHECK(e.contains(mpq_class(-4, 3)));

    SignatureConvention two_pi;
    two_pi.mass = SignatureConvention::Mass::TwoPi;
    auto t2 = signature_integral(trefoil, two_pi);
    CHECK(t2.rational_part() == mpq_class(-8, 3));  // coefficient of pi
    CHECK(t2.enclosure(100).contains_zero() == false);

    auto j = signature_integral(J1);
    CHECK_FALSE(j.is_rational_form());
    CHECK(j.exact_string() == "2 - 2*arccos(7/8)/pi");
    CHECK(*j.certified_sign() == 1);

    std::mt19937 rng(23);
    for (int it = 0; it < 20; ++it) {
        auto K = random_seifert(rng, 1 + it % 2);
        CHECK(signature_integral(connected_sum(K, mirror_reverse(K))).is_exactly_zero());
    }
}

TEST_CASE("alexander_module_genus1") {
    auto m = alexander_module_genus1(R1, {"aJ", "aD"});
    CHECK(m.first.relation == lp(0, {-2, 1}));
    CHECK(m.first.generator == std::vector<mpz_class>{1, 0});
    CHECK(m.first.label == "aJ");
    CHECK(m.second.relation == lp(0, {-1, 2}));
    CHECK(m.second.generator == std::vector<mpz_class>{0, 1});
    CHECK(m.second.label == "aD");
    for (long mm : {3, 5, 7}) {
        SeifertMatrix R(IntegerMatrix{{0, mm + 1}, {mm, 0}});
        auto d = alexander_module_genus1(R, {"aJ", "aD"});
        CHECK(d.first.relation == lp(0, {-(mm + 1), mm}));
        CHECK(d.second.relation == lp(0, {-mm, mm + 1}));
        CHECK(d.first.label == "aJ");
    }
    CHECK_THROWS_AS(alexander_module_genus1(fig8), UnsupportedDecomposition);
    CHECK_THROWS_AS(alexander_module_genus1(Dknot), UnsupportedDecomposition);
}

TEST_CASE("profile properties on random matrices") {
    std::mt19937 rng(31);
    for (int it = 0; it < 40; ++it) {
        size_t g = 1 + it % 3;
        auto K = random_seifert(rng, g);
        auto p = signature_profile(K);
        CHECK(p.values.front() == 0);
        for (int v : p.values) {
            CHECK(v % 2 == 0);
            CHECK(std::abs(v) <= static_cast<int>(2 * g));
        }
        CHECK(static_cast<long>(p.breakpoints.size()) <= alexander_polynomial(K).span());
        // sigma vanishes close to omega = 1
        CHECK(signature_at_sample(K.matrix(), mpq_class(1, 1000000)) == 0);
    }
}

TEST_CASE("integral additivity under connected sum, randomized") {
    std::mt19937 rng(37);
    for (int it = 0; it < 15; ++it) {
        auto a = random_seifert(rng, 1), b = random_seifert(rng, 1 + it % 2);
        auto lhs = signature_integral(connected_sum(a, b)).enclosure(120);
        auto rhs = (signature_integral(a) + signature_integral(b)).enclosure(120);
        auto rhs2 = signature_integral(a).enclosure(120) + signature_integral(b).enclosure(120);
        CHECK_FALSE(lhs.disjoint_from(rhs));
        CHECK_FALSE(lhs.disjoint_from(rhs2));
        CHECK(lhs.width() < mpq_class(1, 1000000));
    }
}

TEST_CASE("brute-force signature oracle at 1000 angles, genus one") {
    std::mt19937 rng(41);
    std::vector<SeifertMatrix> cases{trefoil, R1, J1, Dknot, fig8};
    for (int it = 0; it < 10; ++it) cases.push_back(random_seifert(rng, 1, 6));
    const int N = 1000, prec = 80;
    auto pi = RealInterval::pi(prec);
    for (auto& K : cases) {
        auto p = signature_profile(K);
        const IntegerMatrix& V = K.matrix();
        auto I = [&](const mpz_class& v) { return RealInterval::exact(mpq_class(v), prec); };
        int checked = 0;
        for (int k = 1; k < N; ++k) {
            mpq_class frac(k, N);
            frac.canonicalize();
            auto theta = pi * RealInterval::exact(frac, prec);
            auto x = RealInterval::cos(theta);
            auto one = RealInterval::exact(1, prec);
            auto y2 = one - x * x;
            auto omx = one - x;
            // H = (1 - omega) V + (1 - conj omega) V^T for the 2x2 case
            auto h11 = RealInterval::exact(2, prec) * omx * I(V(0, 0));
            auto h22 = RealInterval::exact(2, prec) * omx * I(V(1, 1));
            auto s = I(V(0, 1) + V(1, 0)), dlt = I(V(0, 1) - V(1, 0));
            auto h12sq = omx * omx * s * s + y2 * dlt * dlt;
            auto det = h11 * h22 - h12sq;
            int ds = det.certain_sign();
            if (ds == 0) continue;
            int brute = 0;
            if (ds > 0) {
                int ts = (h11 + h22).certain_sign();
                if (ts == 0) continue;
                brute = 2 * ts;
            }
            bool near = false;
            for (auto& b : p.breakpoints)
                if (!(b.upper() < x.lower() || x.upper() < b.lower())) near = true;
            if (near) continue;
            auto v = p.value_at(x.midpoint());
            REQUIRE(v.has_value());
            CHECK(*v == brute);
            ++checked;
        }
        CHECK(checked > 900);
    }
}
