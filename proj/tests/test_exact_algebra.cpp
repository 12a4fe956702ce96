#include "doctest.h"

#include <functional>
#include <random>

#include "knotcalc/interval.hpp"
#include "knotcalc/laurent.hpp"
#include "knotcalc/matrix.hpp"
#include "knotcalc/realroot.hpp"
#include "knotcalc/relation.hpp"

using namespace kc;

namespace {

LaurentPolynomial lp(long lo, std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return LaurentPolynomial(lo, z);
}

LaurentPolynomial random_laurent(std::mt19937& rng) {
    std::uniform_int_distribution<long> len(1, 5), lo(-3, 3), co(-9, 9);
    std::vector<long> c(len(rng));
    for (auto& v : c) v = co(rng);
    return lp(lo(rng), c);
}

IntegerMatrix random_matrix(std::mt19937& rng, size_t r, size_t c, long range) {
    std::uniform_int_distribution<long> d(-range, range);
    IntegerMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

void check_snf(const IntegerMatrix& M) {
    auto d = smith_normal_form(M);
    IntegerMatrix D = d.U * M * d.W;
    for (size_t i = 0; i < D.rows(); ++i)
        for (size_t j = 0; j < D.cols(); ++j) CHECK(D(i, j) == (i == j ? d.diagonal[i] : mpz_class(0)));
    CHECK(abs(determinant(d.U)) == 1);
    CHECK(abs(determinant(d.W)) == 1);
    for (size_t i = 0; i + 1 < d.diagonal.size(); ++i) {
        if (d.diagonal[i] == 0) CHECK(d.diagonal[i + 1] == 0);
        else CHECK(mpz_divisible_p(d.diagonal[i + 1].get_mpz_t(), d.diagonal[i].get_mpz_t()));
    }
}

}  // namespace

TEST_CASE("laurent_mul examples") {
    for (long m : {1, 3, 5}) {
        auto a = lp(0, {-(m + 1), m});
        auto b = lp(0, {-m, m + 1});
        auto p = laurent_mul(a, b);
        CHECK(p == lp(0, {m * (m + 1), -(m * m + (m + 1) * (m + 1)), m * (m + 1)}));
    }
    CHECK(laurent_mul(lp(0, {-1, 1}), lp(0, {-2, 1})) == lp(0, {2, -3, 1}));
    CHECK(laurent_mul(lp(0, {-2, 1}), lp(0, {-1, 2})) == lp(0, {2, -5, 2}));
    auto a = lp(-2, {3, 0, 1, 7});
    CHECK(laurent_mul(a, LaurentPolynomial(1)) == a);
    CHECK(laurent_mul(lp(0, {-2, 1}), LaurentPolynomial::monomial(1, -1)) == lp(-1, {-2, 1}));
}

TEST_CASE("laurent canonical form and printing") {
    auto z = lp(3, {0, 0});
    CHECK(z.is_zero());
    CHECK(z == LaurentPolynomial());
    auto a = lp(-2, {0, 5, 0});
    CHECK(a.min_exp() == -1);
    CHECK(a.max_exp() == -1);
    CHECK(lp(-1, {2, -5, 2}).str() == "2t - 5 + 2t^-1");
    CHECK(lp(0, {2, -5, 2}).normalized() == lp(-1, {2, -5, 2}));
    CHECK(lp(3, {-2, 5, -2}).normalized() == lp(-1, {2, -5, 2}));
    CHECK(LaurentPolynomial::equal_up_to_units(lp(4, {1, -1, 1}), lp(-7, {-1, 1, -1})));
    CHECK_FALSE(LaurentPolynomial::equal_up_to_units(lp(0, {1, -1, 1}), lp(0, {1, 1, 1})));
}

TEST_CASE("laurent ring axioms on random inputs") {
    std::mt19937 rng(7);
    for (int it = 0; it < 300; ++it) {
        auto a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == LaurentPolynomial());
        mpq_class x(3, 7);
        CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    }
}

TEST_CASE("chebyshev transform agrees with evaluation on the circle") {
    // Delta(t) = 4t - 7 + 4/t: on the circle 8cos(theta) - 7
    auto P = lp(-1, {4, -7, 4}).chebyshev_transform();
    CHECK(P == QPoly(std::vector<mpq_class>{-7, 8}));
    // t^2 + t^-2 = 2 T_2 = 4x^2 - 2
    CHECK(lp(-2, {1, 0, 0, 0, 1}).chebyshev_transform() == QPoly(std::vector<mpq_class>{-2, 0, 4}));
}

TEST_CASE("laurent_gcd_coprime") {
    auto a = lp(0, {-2, 1}), b = lp(0, {-1, 2});
    auto cert = laurent_gcd_coprime(a, b);
    REQUIRE(cert.coprime);
    CHECK(cert.c == 3);
    CHECK(cert.f * a + cert.g * b == LaurentPolynomial(3));

    CHECK_FALSE(laurent_gcd_coprime(a, a).coprime);

    auto lam1 = lp(0, {2, -5, 2});
    auto c2 = laurent_gcd_coprime(lam1, LaurentPolynomial(1));
    REQUIRE(c2.coprime);
    CHECK(c2.c == 1);

    CHECK_THROWS_AS(laurent_gcd_coprime(LaurentPolynomial(), a), std::invalid_argument);

    // common factor hidden under unit shifts
    CHECK_FALSE(laurent_gcd_coprime(lp(-3, {-2, 1}) * lp(0, {1, 1}), lp(5, {-2, 1}) * lp(0, {3, 1})).coprime);

    std::mt19937 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto x = random_laurent(rng), y = random_laurent(rng);
        if (x.is_zero() || y.is_zero()) continue;
        auto c = laurent_gcd_coprime(x, y);
        if (c.coprime) CHECK(c.f * x + c.g * y == LaurentPolynomial(c.c));
        // multiplying by a shared nonconstant factor destroys coprimality
        CHECK_FALSE(laurent_gcd_coprime(x * lp(0, {1, 3}), y * lp(2, {1, 3})).coprime);
    }
}

TEST_CASE("smith normal form examples") {
    auto d = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
    CHECK(d.diagonal == std::vector<mpz_class>{1, 6});
    d = smith_normal_form(IntegerMatrix(2, 2));
    CHECK(d.diagonal == std::vector<mpz_class>{0, 0});
    // circulant presentation of the double cover of R_1, built by hand
    IntegerMatrix V{{0, 2}, {1, 0}};
    IntegerMatrix C2{{0, 1}, {1, 0}};
    IntegerMatrix P = kronecker(C2, V.transpose()) - kronecker(IntegerMatrix::identity(2), V);
    d = smith_normal_form(P);
    CHECK(d.diagonal == std::vector<mpz_class>{1, 1, 3, 3});
    check_snf(P);
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int it = 0; it < 200; ++it) {
        size_t r = dim(rng), c = dim(rng);
        auto M = random_matrix(rng, r, c, 12);
        check_snf(M);
        if (r == c) {
            auto d = smith_normal_form(M);
            mpz_class prod = 1;
            for (auto& x : d.diagonal) prod *= x;
            CHECK(prod == abs(determinant(M)));
        }
    }
}

TEST_CASE("determinant against cofactor expansion") {
    std::function<mpz_class(const IntegerMatrix&)> cof = [&](const IntegerMatrix& m) -> mpz_class {
        size_t n = m.rows();
        if (n == 0) return 1;
        mpz_class s = 0;
        for (size_t j = 0; j < n; ++j) {
            IntegerMatrix minor(n - 1, n - 1);
            for (size_t i = 1; i < n; ++i)
                for (size_t k = 0, kk = 0; k < n; ++k)
                    if (k != j) minor(i - 1, kk++) = m(i, k);
            s += ((j % 2) ? -1 : 1) * m(0, j) * cof(minor);
        }
        return s;
    };
    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        size_t n = 1 + it % 5;
        auto M = random_matrix(rng, n, n, 4);
        CHECK(determinant(M) == cof(M));
    }
}

TEST_CASE("resultant examples") {
    auto r = resultant(lp(0, {2, -5, 2}), lp(0, {-1, 0, 1}));
    CHECK(r == -9);
    CHECK(abs(r) == 9);
    CHECK(resultant(lp(0, {-1, 1}), lp(0, {-1, 1})) == 0);
    CHECK(resultant(LaurentPolynomial(1), lp(-2, {3, 1, 4, 1, 5})) == 1);
}

TEST_CASE("resultant equals product over roots of factored inputs") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> root(1, 5), nroots(1, 4), sgn(0, 1);
    for (int it = 0; it < 100; ++it) {
        auto a = random_laurent(rng);
        if (a.is_zero()) continue;
        LaurentPolynomial b(1);
        mpz_class prod = 1;
        long k = nroots(rng);
        for (long j = 0; j < k; ++j) {
            // root 0 would be absorbed as a unit t^k
            long rt = root(rng) * (sgn(rng) ? 1 : -1);
            b = b * lp(0, {-rt, 1});
            prod *= a.to_qpoly().eval(mpq_class(rt)).get_num();
        }
        CHECK(abs(resultant(a, b)) == abs(prod));
    }
}

TEST_CASE("signature of symmetric matrices") {
    CHECK(signature(to_rational(IntegerMatrix{{-2, 1}, {1, -2}})) == -2);
    CHECK(signature(to_rational(IntegerMatrix{{0, 1}, {1, 0}})) == 0);
    CHECK(signature(to_rational(IntegerMatrix{{0, 0}, {0, 0}})) == 0);
    CHECK(signature(to_rational(IntegerMatrix{{1, 0, 0}, {0, 0, 2}, {0, 2, 0}})) == 1);
    // congruence invariance on random inputs
    std::mt19937 rng(21);
    for (int it = 0; it < 100; ++it) {
        auto A = random_matrix(rng, 4, 4, 3);
        auto S = A + A.transpose();
        auto P = random_matrix(rng, 4, 4, 2);
        if (determinant(P) == 0) continue;
        CHECK(signature(to_rational(S)) == signature(to_rational(P.transpose() * S * P)));
    }
}

TEST_CASE("real interval enclosures") {
    auto pi = RealInterval::pi(200);
    CHECK(pi.lower() < mpq_class(314159265358979, 100000000000000) + mpq_class(1, 10000000000));
    CHECK(pi.width() < mpq_class(1, 1000000000));
    auto a = RealInterval::acos(RealInterval::exact(mpq_class(1, 2), 128));
    auto third = pi * RealInterval::exact(mpq_class(1, 3), 128);
    CHECK_FALSE(a.disjoint_from(third));
    auto s = RealInterval::sqrt(RealInterval::exact(2, 100));
    auto sq = s * s;
    CHECK(sq.contains(2));
    CHECK_THROWS(RealInterval::acos(RealInterval::exact(2, 64)));
    CHECK_THROWS(RealInterval::exact(1, 64) / RealInterval(-1, 1, 64));
}

TEST_CASE("real root isolation") {
    // (x - 1/2)(x^2 - 2)
    QPoly P = QPoly(std::vector<mpq_class>{mpq_class(-1, 2), 1}) * QPoly(std::vector<mpq_class>{-2, 0, 1});
    auto roots = isolate_real_roots(P, -2, 2);
    REQUIRE(roots.size() == 3);
    CHECK(roots[1].enclosure(100).contains(mpq_class(1, 2)));
    CHECK(roots[0].enclosure(100).contains_zero() == false);
    auto e = roots[2].enclosure(100);
    CHECK((e * e).contains(2));
    // roots at the interval end points
    auto r2 = isolate_real_roots(QPoly(std::vector<mpq_class>{-1, 0, 1}), -1, 1);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].rational() == -1);
    CHECK(r2[1].rational() == 1);
    auto base = coprime_base({P, QPoly(std::vector<mpq_class>{-2, 0, 1}) * QPoly(std::vector<mpq_class>{3, 1})});
    size_t total = 0;
    for (auto& q : base) total += q.degree();
    CHECK(total == 4);
}

TEST_CASE("integer_relation examples") {
    int prec = 200;  // about 60 decimal digits
    std::vector<RealInterval> v{RealInterval::exact(1, prec), RealInterval::exact(2, prec), RealInterval::exact(3, prec)};
    auto r = integer_relation(v, 10);
    REQUIRE(r.found);
    CHECK(r.relation == std::vector<mpz_class>{1, 1, -1});

    std::vector<RealInterval> w{RealInterval::exact(1, prec), RealInterval::sqrt(RealInterval::exact(2, prec))};
    auto r2 = integer_relation(w, 1000);
    CHECK_FALSE(r2.found);
    CHECK(r2.precision_bits > 100);
    CHECK(r2.bound == 1000);
    CHECK(r2.lattice_certified);

    std::vector<RealInterval> coarse{RealInterval::exact(1, 40), RealInterval::sqrt(RealInterval::exact(2, 40))};
    CHECK_THROWS_AS(integer_relation(coarse, mpz_class(1000000)), PrecisionError);

    // a planted relation 3x - 7y + 2z = 0
    auto x = RealInterval::sqrt(RealInterval::exact(3, prec)), y = RealInterval::pi(prec);
    auto z = (RealInterval::exact(7, prec) * y - RealInterval::exact(3, prec) * x) / RealInterval::exact(2, prec);
    auto r3 = integer_relation({x, y, z}, 100);
    REQUIRE(r3.found);
    CHECK(r3.relation == std::vector<mpz_class>{3, -7, 2});
}
