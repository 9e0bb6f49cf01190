#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padyn/errors.hpp>
#include <padyn/mpoly.hpp>
#include <padyn/parser.hpp>

#include <random>

using namespace padyn;

namespace {

MPoly P(const std::string& s) { return parse_poly(s); }

MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int nterms) {
    std::uniform_int_distribution<int> coef(-6, 6), expo(0, max_deg);
    MPoly acc;
    for (int t = 0; t < nterms; ++t) {
        int c = coef(rng);
        if (c == 0) c = 1;
        MPoly term = MPoly::constant(GRat(c));
        for (const auto& v : vars) term = term * MPoly::var(v).pow(static_cast<unsigned>(expo(rng)));
        acc = acc + term;
    }
    return acc;
}

}  // namespace

TEST_CASE("parser grammar") {
    CHECK(P("-Y^2") == -(MPoly::var("Y").pow(2)));
    CHECK(P("(X+Y)*(X-Y)+Z^2") == P("X^2-Y^2+Z^2"));
    CHECK_THROWS_AS(P("X+"), SyntaxError);
    try {
        P("X+");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 2);
    }
    CHECK_THROWS_AS(P("2X"), SyntaxError);  // juxtaposition is not multiplication
    CHECK(P("i*i") == MPoly::constant(GRat(-1)));
    CHECK(P("1/2*X+1/2*X") == P("X"));
    CHECK_THROWS_AS(parse_poly("X*W", std::vector<std::string>{"X", "Y", "Z"}), UnknownVariable);
}

TEST_CASE("ring operations") {
    CHECK(P("(X-Z)*(X+Z)") == P("X^2-Z^2"));
    CHECK(P("-Y^2").derivative("Y") == P("-2*Y"));
    MPoly p = P("X^3-2*X*Y+5"), q = P("Y^2-X");
    CHECK((p + q) - q == p);
    CHECK(p * q == q * p);
    CHECK(p.pow(3) == p * p * p);
}

TEST_CASE("gcd") {
    MPoly g1 = mpoly_gcd(P("X*(X-Z)"), P("(X+Z)*(X-Z)"));
    CHECK(g1 == P("X-Z"));
    CHECK(mpoly_gcd(P("X^2*Y-X*Y"), MPoly::zero()) == P("X^2*Y-X*Y").normalized());
    CHECK(mpoly_gcd(P("X+1"), P("X+2")).is_constant());
}

TEST_CASE("gcd property: gcd(p*r, q*r) divisible by r") {
    std::mt19937 rng(3);
    for (int t = 0; t < 25; ++t) {
        MPoly p = random_poly(rng, {"X", "Y"}, 2, 3);
        MPoly q = random_poly(rng, {"X", "Y"}, 2, 3);
        MPoly r = random_poly(rng, {"X", "Y"}, 2, 2);
        if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
        MPoly g = mpoly_gcd(p * r, q * r);
        CHECK(g.divisible_by(r.normalized(), nullptr));
    }
}

TEST_CASE("resultant") {
    MPoly r = mpoly_resultant(P("t-X"), P("t^2-Y"), "t");
    CHECK(r == P("X^2-Y"));
    // vanishes iff common root
    MPoly z = mpoly_resultant(P("(t-X)*(t-1)"), P("(t-X)*(t-2)"), "t");
    CHECK(z.is_zero());
    CHECK_THROWS_AS(mpoly_resultant(P("X"), MPoly::zero(), "t"), DegenerateInput);
}

TEST_CASE("resultant vanishing iff positive-degree gcd (random univariate)") {
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        MPoly p = random_poly(rng, {"t"}, 3, 3);
        MPoly q = random_poly(rng, {"t"}, 3, 3);
        if (p.degree_in("t") < 1 || q.degree_in("t") < 1) continue;
        MPoly res = mpoly_resultant(p, q, "t");
        MPoly g = mpoly_gcd(p, q);
        CHECK(res.is_zero() == (g.degree_in("t") > 0));
    }
}

TEST_CASE("squarefree") {
    CHECK(mpoly_squarefree(P("-4*Y*(X-Z)^2")) == P("X*Y-Y*Z").normalized());
    CHECK(mpoly_squarefree(P("X^2-Z^2")) == P("X^2-Z^2"));
    CHECK(mpoly_squarefree(P("(Z+2*Y)^3")) == P("Y+1/2*Z"));
    CHECK_THROWS_AS(mpoly_squarefree(MPoly::zero()), ZeroInput);
}

TEST_CASE("linear factors") {
    auto lf = mpoly_linear_factors(P("-4*Y*(X-Z)^2"));
    int total = 0;
    bool found_y = false, found_xz = false;
    for (const auto& [f, m] : lf.factors) {
        total += m;
        if (f == P("Y")) found_y = (m == 1);
        if (f == P("X-Z")) found_xz = (m == 2);
    }
    CHECK(total == 3);
    CHECK(found_y);
    CHECK(found_xz);
    CHECK(lf.cofactor.is_constant());

    auto lf2 = mpoly_linear_factors(P("X^2+Y^2"));
    CHECK(lf2.factors.size() == 2);
    MPoly prod = MPoly::constant(GRat(1));
    for (const auto& [f, m] : lf2.factors) prod = prod * f.pow(static_cast<unsigned>(m));
    CHECK(prod.normalized() == P("X^2+Y^2").normalized());
}

TEST_CASE("lowest degree form") {
    auto [d, f] = mpoly_lowest_degree_form(P("u+u^2"));
    CHECK(d == 1);
    CHECK(f == P("u"));
}

TEST_CASE("substitution") {
    // recentering: z := u - 9 moves s = (0,-9) to the origin
    MPoly p = P("y^2+z^2");
    std::map<std::string, MPoly> b{{"z", P("u-9")}};
    CHECK(p.substitute(b) == P("y^2+u^2-18*u+81"));
    std::map<std::string, MPoly> ident{{"y", P("y")}};
    CHECK(p.substitute(ident) == p);
    // simultaneous: swap x and y
    MPoly q = P("x^2-y");
    std::map<std::string, MPoly> swap_xy{{"x", P("y")}, {"y", P("x")}};
    CHECK(q.substitute(swap_xy) == P("y^2-x"));
}

TEST_CASE("substitute is a ring homomorphism (random)") {
    std::mt19937 rng(9);
    for (int t = 0; t < 25; ++t) {
        MPoly p = random_poly(rng, {"x", "y"}, 2, 3);
        MPoly q = random_poly(rng, {"x", "y"}, 2, 3);
        std::map<std::string, MPoly> sub{{"x", random_poly(rng, {"u"}, 2, 2)},
                                         {"y", random_poly(rng, {"u", "v"}, 1, 2)}};
        CHECK((p + q).substitute(sub) == p.substitute(sub) + q.substitute(sub));
        CHECK((p * q).substitute(sub) == p.substitute(sub) * q.substitute(sub));
    }
}

TEST_CASE("serialization round trip") {
    for (const std::string& s :
         {"-Y^2", "X*(X-Z)", "-(X+Z)*(X-Z)", "X*(X-Y)+2*Z^2", "(X+Y)*(X-Y)+Z^2", "Z^2",
          "2624400*y^2+2099520*u*y+419904*u^2"}) {
        MPoly p = P(s);
        MPoly q = parse_poly(p.str());
        CHECK(p == q);
    }
    // complex coefficients round trip too
    MPoly c = P("(2-3*i)*X^2+i*Y");
    CHECK(parse_poly(c.str()) == c);
}
