#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padyn/algebraic.hpp>
#include <padyn/dyadic.hpp>
#include <padyn/errors.hpp>
#include <padyn/rootisol.hpp>

#include <random>

using namespace padyn;

namespace {

UPoly up(std::vector<long> coeffs) {
    std::vector<GRat> c;
    for (long k : coeffs) c.push_back(GRat(k));
    return UPoly(std::move(c));
}

CBox box(double rl, double rh, double il, double ih) {
    auto d = [](double v) { return Dyadic::from_rat(Rat(static_cast<long>(v * 1024), 1024), 64, true); };
    return CBox(DyIv(d(rl), d(rh)), DyIv(d(il), d(ih)));
}

GRat random_grat(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    return GRat(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("dyadic arithmetic and rounding") {
    Dyadic a(Int(3), -2);  // 0.75
    Dyadic b(Int(5), -3);  // 0.625
    CHECK((a + b).to_rat() == Rat(11, 8));
    CHECK((a * b).to_rat() == Rat(15, 32));
    CHECK(Dyadic::cmp(a, b) > 0);

    Rat third(1, 3);
    Dyadic lo = Dyadic::from_rat(third, 20, true);
    Dyadic hi = Dyadic::from_rat(third, 20, false);
    CHECK(lo.to_rat() <= third);
    CHECK(third <= hi.to_rat());
    CHECK((hi - lo).to_rat() < Rat(1, 1 << 18));

    Dyadic s_lo = Dyadic(2).sqrt(30, true), s_hi = Dyadic(2).sqrt(30, false);
    CHECK(s_lo.to_rat() * s_lo.to_rat() <= 2);
    CHECK(s_hi.to_rat() * s_hi.to_rat() >= 2);
}

TEST_CASE("interval soundness on random Gaussian rationals") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        GRat x = random_grat(rng), y = random_grat(rng);
        CBox bx = CBox::of_grat(x, 64), by = CBox::of_grat(y, 64);
        GRat sum = x + y, prod = x * y;
        CBox bs = bx + by, bp = (bx * by).rounded_out(80);
        CHECK(bs.re.lo.to_rat() <= sum.re);
        CHECK(sum.re <= bs.re.hi.to_rat());
        CHECK(bp.re.lo.to_rat() <= prod.re);
        CHECK(prod.re <= bp.re.hi.to_rat());
        CHECK(bp.im.lo.to_rat() <= prod.im);
        CHECK(prod.im <= bp.im.hi.to_rat());
        if (!y.is_zero()) {
            CBox byy = CBox::of_grat(y, 96);
            if (!byy.contains_zero()) {
                GRat quot = x / y;
                CBox bq = bx.div(byy, 96);
                CHECK(bq.re.lo.to_rat() <= quot.re);
                CHECK(quot.re <= bq.re.hi.to_rat());
            }
        }
    }
}

TEST_CASE("precision monotonicity of enclosures") {
    GRat v(Rat(22, 7), Rat(-3, 11));
    Dyadic prev_width = CBox::of_grat(v, 32).width();
    for (unsigned prec = 64; prec <= 512; prec *= 2) {
        Dyadic w = CBox::of_grat(v, prec).width();
        CHECK(!(prev_width < w));
        prev_width = w;
    }
}

TEST_CASE("root isolation finds all roots with certification") {
    // (x^2+1)(x-2) has roots i, -i, 2
    UPoly p = up({-2, 1, -2, 1});
    auto boxes = isolate_all_roots(p);
    CHECK(boxes.size() == 3);
    int real_roots = 0;
    for (const auto& b : boxes)
        if (b.im.contains_zero()) ++real_roots;
    CHECK(real_roots == 1);
}

TEST_CASE("alg_from_root basics") {
    // x^2 + 1 around +i
    Alg i_root = Alg::from_root(up({1, 0, 1}), box(-0.5, 0.5, 0.5, 1.5));
    CHECK(alg_equals(i_root, GRat::I()));

    // x^2 + 2 in the upper half plane: sqrt(2) i, the imaginary part of r
    Alg s2i = Alg::from_root(up({2, 0, 1}), box(-1, 1, 0.25, 3));
    CHECK(!s2i.is_gaussian());
    Alg sq = s2i * s2i;
    CHECK(alg_equals(sq, GRat(-2)));

    // x^4 - 2x^2 + 2 around the principal value of sqrt(1+i)
    Alg g = Alg::from_root(up({2, 0, -2, 0, 1}), box(0.9, 1.3, 0.2, 0.6));
    Alg g2 = g * g;
    CHECK(alg_equals(g2, GRat(Rat(1), Rat(1))));

    CHECK_THROWS_AS(Alg::from_root(up({1, 0, 1}), box(5, 6, 5, 6)), NoRootInBox);
    CHECK_THROWS_AS(Alg::from_root(up({1, 0, 1}), box(-2, 2, -2, 2)), AmbiguousRoot);
}

TEST_CASE("alg_equals distinguishes conjugates") {
    // roots of x^2 + 2x + 3: -1 +- sqrt(2) i
    UPoly m = up({3, 2, 1});
    Alg plus = Alg::from_root(m, box(-2, 0, 0.5, 2));
    Alg minus = Alg::from_root(m, box(-2, 0, -2, -0.5));
    CHECK(!alg_equals(plus, minus));
    CHECK(alg_equals(plus, plus));
    // evaluate the stored annihilator symbolically: m(plus) = 0
    CHECK(plus.satisfies(m));
}

TEST_CASE("sqrt_branches") {
    auto [a, b] = Alg::sqrt_branches(Alg(GRat(4)));
    bool ok = (alg_equals(a, GRat(2)) && alg_equals(b, GRat(-2))) ||
              (alg_equals(a, GRat(-2)) && alg_equals(b, GRat(2)));
    CHECK(ok);

    // sqrt(1+i): both roots satisfy x^4 - 2x^2 + 2 = 0
    auto [c, d] = Alg::sqrt_branches(Alg(GRat(Rat(1), Rat(1))));
    UPoly quartic = up({2, 0, -2, 0, 1});
    CHECK(c.satisfies(quartic));
    CHECK(d.satisfies(quartic));
    CHECK(!alg_equals(c, d));

    // sqrt(2i) = {1+i, -1-i}
    auto [e, f] = Alg::sqrt_branches(Alg(GRat(Rat(0), Rat(2))));
    GRat onei(Rat(1), Rat(1));
    bool ok2 = (alg_equals(e, onei) && alg_equals(f, -onei)) ||
               (alg_equals(e, -onei) && alg_equals(f, onei));
    CHECK(ok2);

    CHECK_THROWS_AS(Alg::sqrt_branches(Alg(GRat(0))), ZeroInput);
}

TEST_CASE("equality is an equivalence relation on a random pool") {
    std::mt19937 rng(11);
    std::vector<Alg> pool;
    for (int k = 0; k < 6; ++k) {
        GRat g = random_grat(rng);
        if (g.is_zero()) g = GRat(1);
        auto [a, b] = Alg::sqrt_branches(Alg(g));
        pool.push_back(a);
        pool.push_back(b);
        pool.push_back(a + b);
        pool.push_back(a * b);
    }
    size_t n = pool.size();
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) eq[i][j] = alg_equals(pool[i], pool[j]);
    for (size_t i = 0; i < n; ++i) {
        CHECK(eq[i][i]);
        for (size_t j = 0; j < n; ++j) {
            CHECK(eq[i][j] == eq[j][i]);
            for (size_t k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
        }
    }
}
