#include "doctest.h"

#include "knotcalc/knot.hpp"

using namespace kc;

namespace {

LaurentPolynomial lp(long lo, std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return LaurentPolynomial(lo, z);
}

LaurentPolynomial lambda(long m) { return lp(0, {-(m + 1), m}) * lp(0, {-m, m + 1}); }

}  // namespace

TEST_CASE("make_Rm") {
    auto R1 = make_Rm(1);
    CHECK(R1.base().matrix() == IntegerMatrix{{0, 2}, {1, 0}});
    CHECK(LaurentPolynomial::equal_up_to_units(R1.alexander(), lp(0, {-2, 1}) * lp(0, {-1, 2})));
    CHECK(LaurentPolynomial::equal_up_to_units(make_Rm(3).alexander(), lp(0, {-4, 3}) * lp(0, {-3, 4})));
    for (long m = 1; m <= 15; m += 2) {
        auto R = make_Rm(m);
        CHECK(abs(determinant(R.base().matrix() - R.base().matrix().transpose())) == 1);
        CHECK(abs(R.alexander().eval(mpz_class(1))) == 1);
        CHECK(LaurentPolynomial::equal_up_to_units(R.alexander(), lambda(m)));
        CHECK(R.curve_labels() == std::vector<std::string>{"aJ", "aD"});
    }
    CHECK_THROWS_AS(make_Rm(2), std::invalid_argument);
    CHECK_THROWS_AS(make_Rm(-1), std::invalid_argument);
}

TEST_CASE("make_twisted_double") {
    auto J = make_twisted_double(Clasp::Minus, Knot::multiple(2, trefoil()), 4);
    CHECK(J.alexander() == lp(-1, {4, -7, 4}));
    CHECK(make_D().alexander() == LaurentPolynomial(1));
    for (long n = -6; n <= 6; ++n) {
        auto Dm = make_twisted_double(Clasp::Minus, trefoil(), n);
        CHECK(LaurentPolynomial::equal_up_to_units(Dm.alexander(), lp(-1, {n, -(2 * n - 1), n})));
    }
    // mirror identity: the base of D_+(k T_{2,-3}, -2k) is -(base of D_-(k T_{2,3}, 2k))^T up to a
    // unimodular change of basis
    IntegerMatrix X{{1, -1}, {0, 1}};
    for (long k : {2, 18, 32}) {
        auto minus = make_twisted_double(Clasp::Minus, Knot::multiple(k, trefoil()), 2 * k);
        auto plus = make_twisted_double(Clasp::Plus, Knot::multiple(k, Knot::mirror(trefoil())), -2 * k);
        IntegerMatrix mirrored = -minus.base().matrix().transpose();
        CHECK(X.transpose() * mirrored * X == plus.base().matrix());
        CHECK(plus.alexander() == minus.alexander());
        auto a = Knot::mirror(minus).signature_integral(), b = plus.signature_integral();
        CHECK((a + (-b)).is_exactly_zero());
    }
}

TEST_CASE("make_Ji and family parameters") {
    auto f1 = family_parameters(1);
    CHECK(f1.p == 5);
    CHECK(f1.k == 2);
    auto f2 = family_parameters(2);
    CHECK(f2.p == 13);
    CHECK(f2.k == 18);
    long expected[5][2] = {{5, 2}, {13, 18}, {17, 32}, {29, 98}, {37, 162}};
    for (int i = 1; i <= 5; ++i) {
        auto f = family_parameters(i);
        CHECK(f.p == expected[i - 1][0]);
        CHECK(f.k == expected[i - 1][1]);
    }
    long prev = 0;
    for (long i = 1; i <= 50; ++i) {
        auto f = family_parameters(i);
        CHECK(f.p % 4 == 1);
        CHECK(f.p > prev);
        CHECK((f.p - 1) * (f.p - 1) % 8 == 0);
        prev = f.p;
        auto J = make_Ji(i);
        CHECK(J.alexander().eval(mpz_class(1)) == 1);
    }
    auto J1 = make_Ji(1);
    CHECK(J1.family() == "Dminus");
    CHECK(J1.parameter() == 4);
    REQUIRE(J1.companion("band") != nullptr);
    CHECK(J1.companion("band")->count() == 2);
    auto J2 = make_Ji(2);
    CHECK(J2.companion("band")->count() == 18);
    CHECK(J2.parameter() == 36);
}

TEST_CASE("infect") {
    for (long m : {1, 3, 5, 7}) {
        for (long i : {1, 2, 3}) {
            auto K = infect(infect(make_Rm(m), "aJ", make_Ji(i)), "aD", make_D());
            CHECK(LaurentPolynomial::equal_up_to_units(K.alexander(), lambda(m)));
            CHECK(K.signature_profile().same_as(make_Rm(m).signature_profile()));
            CHECK(K.genus() == 1);
            REQUIRE(K.companion("aJ") != nullptr);
            CHECK(K.companion("aJ")->spec() == "Ji(" + std::to_string(i) + ")");
        }
    }
    auto U = infect(make_Rm(1), "aJ", unknot());
    CHECK(U.alexander() == make_Rm(1).alexander());
    CHECK_THROWS_AS(infect(U, "aJ", trefoil()), std::invalid_argument);
    CHECK_THROWS_AS(infect(make_Rm(1), "nope", trefoil()), std::invalid_argument);
    CHECK_THROWS_AS(infect(make_Rm(1), size_t(5), trefoil()), std::invalid_argument);
}

TEST_CASE("concordance genus construction") {
    for (size_t g = 1; g <= 4; ++g) {
        std::vector<Knot> parts;
        LaurentPolynomial prod(1);
        for (size_t i = 1; i <= g; ++i) {
            long m = 2 * static_cast<long>(i) - 1;
            parts.push_back(infect(infect(make_Rm(m), "aJ", make_Ji(1)), "aD", make_D()));
            prod = prod * lambda(m);
        }
        auto K = Knot::sum(parts);
        CHECK(K.alexander().span() == static_cast<long>(2 * g));
        CHECK(LaurentPolynomial::equal_up_to_units(K.alexander(), prod));
        CHECK(alexander_polynomial(K.seifert()) == K.alexander());
    }
}

TEST_CASE("structural invariants match the flattened Seifert form") {
    std::vector<Knot> ks{
        Knot::sum({make_D(), Knot::mirror(trefoil())}),
        Knot::sum({make_Ji(1), Knot::mirror(make_Rm(3)), Knot::multiple(3, trefoil())}),
        Knot::mirror(Knot::sum({trefoil(), make_Rm(1)})),
    };
    for (auto& K : ks) {
        SeifertMatrix S = K.seifert();
        CHECK(alexander_polynomial(S) == K.alexander());
        CHECK(kc::signature_profile(S).same_as(K.signature_profile()));
        auto a = kc::signature_integral(S), b = K.signature_integral();
        CHECK((a + (-b)).is_exactly_zero());
        auto c = SignatureIntegral::from_profile(K.signature_profile(), {});
        CHECK((a + (-c)).is_exactly_zero());
    }
    auto J = Knot::sum({make_D(), Knot::mirror(trefoil())});
    CHECK(J.signature_integral().rational_part() == mpq_class(4, 3));
}

TEST_CASE("knot spec parsing") {
    auto K = parse_knot("Rm(m=1; aJ=Ji(1); aD=Dplus(trefoil,0))");
    CHECK(K.family() == "Rm");
    CHECK(K.parameter() == 1);
    CHECK(K.companion("aJ")->spec() == "Ji(1)");
    CHECK(K.companion("aD")->family() == "Dplus");
    CHECK(K.spec() == "Rm(m=1; aJ=Ji(1); aD=Dplus(trefoil, 0))");
    CHECK(parse_knot(K.spec()).spec() == K.spec());

    auto R = parse_knot("Rm(m=1)");
    CHECK(R.base().matrix() == IntegerMatrix{{0, 2}, {1, 0}});

    auto J2 = parse_knot("Ji(2)");
    CHECK(J2.family() == "Dminus");
    CHECK(J2.parameter() == 36);
    CHECK(J2.with_alias("").spec() == "Dminus(18*trefoil, 36)");

    auto S = parse_knot("Dplus(trefoil, 0) # -trefoil");
    CHECK(S.kind() == Knot::Kind::Sum);
    CHECK(S.spec() == "Dplus(trefoil, 0) # -trefoil");
    CHECK(parse_knot("2*trefoil # -(Ji(1) # D)").spec() == "2*trefoil # -(Ji(1) # Dplus(trefoil, 0))");
    CHECK(parse_knot("seifert([[0,2],[1,0]])").base().matrix() == IntegerMatrix{{0, 2}, {1, 0}});
    CHECK(parse_knot("Dminus(trefoil, -3)").parameter() == -3);

    CHECK_THROWS_AS(parse_knot(""), ParseError);
    try {
        parse_knot("Rm(m=1; aJ=Ji(1)");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 16);
    }
    CHECK_THROWS_AS(parse_knot("Rm(m=2)"), ParseError);
    CHECK_THROWS_AS(parse_knot("foo"), ParseError);
    CHECK_THROWS_AS(parse_knot("Rm(m=1; aX=trefoil)"), ParseError);
}

TEST_CASE("knot JSON round trip") {
    auto K = parse_knot("Rm(m=3; aJ=Dplus(trefoil,0) # -trefoil; aD=Dplus(trefoil,0))");
    auto j = K.to_json();
    auto K2 = Knot::from_json(j);
    CHECK(K2.spec() == K.spec());
    CHECK(K2.to_json() == j);
    auto K3 = Knot::from_json(nlohmann::json{{"label", "R1"}, {"matrix", {{0, 2}, {1, 0}}}});
    CHECK(K3.base().matrix() == IntegerMatrix{{0, 2}, {1, 0}});
    CHECK(Knot::from_json(nlohmann::json{{"spec", "Ji(1)"}}).spec() == "Ji(1)");
    CHECK_THROWS(Knot::from_json(nlohmann::json{{"matrix", {{1, 0}, {0, 1}}}}));
}
