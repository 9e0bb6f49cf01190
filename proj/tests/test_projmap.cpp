#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <padyn/errors.hpp>
#include <padyn/projmap.hpp>

using namespace padyn;

namespace {

ProjMap phi() { return ProjMap::from_definition(builtin_map("phi")); }
ProjMap psi() { return ProjMap::from_definition(builtin_map("psi")); }
MPoly P(const std::string& s) { return parse_poly(s); }

}  // namespace

TEST_CASE("normalize") {
    ProjMap f = phi();
    CHECK(f.deg == 2);
    // components with a common factor reduce to the identity
    MPoly W = P("X-Z");
    ProjMap id = ProjMap::normalize({P("X") * W, P("Y") * W, P("Z") * W});
    CHECK(id.deg == 1);
    CHECK(id == ProjMap::identity());
    CHECK_THROWS_AS(ProjMap::normalize({P("X^2"), P("Y"), P("Z")}), UnequalDegrees);
    CHECK_THROWS_AS(ProjMap::normalize({P("X^2+X"), P("Y^2"), P("Z^2")}), NotHomogeneous);
    CHECK_THROWS_AS(ProjMap::normalize({MPoly::zero(), MPoly::zero(), MPoly::zero()}), ZeroMap);
}

TEST_CASE("composition and degree sequence") {
    ProjMap f = phi();
    ProjMap f2 = iterate(f, 2);
    CHECK(f2.deg == 4);
    CHECK(compose(f, ProjMap::identity()) == f);
    CHECK(compose(ProjMap::identity(), f) == f);
    auto seq = degree_sequence(f, 5);
    CHECK(seq == std::vector<int>{2, 4, 8, 16, 32});
    auto seq_id = degree_sequence(ProjMap::identity(), 3);
    CHECK(seq_id == std::vector<int>{1, 1, 1});
    auto seq_psi = degree_sequence(psi(), 5);
    CHECK(seq_psi == std::vector<int>{2, 4, 8, 16, 32});
    CHECK(iterate(psi(), 3).deg == 8);
}

TEST_CASE("indeterminacy of the base maps") {
    auto ind = indeterminacy(phi());
    REQUIRE(ind.size() == 1);
    CHECK(ppoint_equal(ind[0], PPoint::gaussian(GRat(1), GRat(0), GRat(1))));
    auto ind_psi = indeterminacy(psi());
    REQUIRE(ind_psi.size() == 1);
    CHECK(ppoint_equal(ind_psi[0], PPoint::gaussian(GRat(1), GRat(1), GRat(0))));
}

TEST_CASE("critical locus") {
    auto cl = critical_locus(phi());
    bool y1 = false, xz2 = false;
    for (const auto& c : cl) {
        if (c.curve == P("Y")) y1 = (c.multiplicity == 1);
        if (c.curve == P("X-Z")) xz2 = (c.multiplicity == 2);
    }
    CHECK(y1);
    CHECK(xz2);
    CHECK(cl.size() == 2);

    // |Dpsi| = 4Z(X-Y)^2: the critical set {X=Y} u {Z=0}, exact multiplicities
    auto cl_psi = critical_locus(psi());
    bool xy2 = false, z1 = false;
    for (const auto& c : cl_psi) {
        if (c.curve == P("X-Y")) xy2 = (c.multiplicity == 2);
        if (c.curve == P("Z")) z1 = (c.multiplicity == 1);
    }
    CHECK(xy2);
    CHECK(z1);

    CHECK(critical_locus(ProjMap::identity()).empty());
}

TEST_CASE("collapsed curves") {
    auto cc = collapsed_curves(phi());
    REQUIRE(cc.size() == 1);  // L_coll collapses, L_Y does not
    CHECK(cc[0].curve == P("X-Z"));
    CHECK(ppoint_equal(cc[0].image, PPoint::gaussian(GRat(1), GRat(0), GRat(0))));

    auto cc_psi = collapsed_curves(psi());
    REQUIRE(cc_psi.size() == 1);
    CHECK(cc_psi[0].curve == P("X-Y"));
    CHECK(ppoint_equal(cc_psi[0].image, PPoint::gaussian(GRat(2), GRat(1), GRat(1))));
}

TEST_CASE("the four cycle closes exactly") {
    ProjMap f = phi();
    PPoint q1 = PPoint::gaussian(GRat(1), GRat(0), GRat(0));
    PPoint q2 = PPoint::gaussian(GRat(0), GRat(1), GRat(-1));
    PPoint q3 = PPoint::gaussian(GRat(-1), GRat(0), GRat(1));
    PPoint q4 = PPoint::gaussian(GRat(0), GRat(1), GRat(0));
    auto step = [&](const PPoint& p) {
        auto r = apply_map(f, p);
        REQUIRE(r.has_value());
        return *r;
    };
    CHECK(ppoint_equal(step(q1), q2));
    CHECK(ppoint_equal(step(q2), q3));
    CHECK(ppoint_equal(step(q3), q4));
    CHECK(ppoint_equal(step(q4), q1));
}

TEST_CASE("preimages") {
    ProjMap f = phi();
    auto fib = preimages(f, PPoint::gaussian(GRat(1), GRat(1), GRat(-1)));
    REQUIRE(fib.size() == 2);
    PPoint a = PPoint::gaussian(GRat(1), GRat::I(), GRat(0));
    PPoint b = PPoint::gaussian(GRat(1), -GRat::I(), GRat(0));
    bool hit_a = false, hit_b = false;
    for (auto& [p, m] : fib) {
        if (ppoint_equal(p, a)) hit_a = true;
        if (ppoint_equal(p, b)) hit_b = true;
        CHECK(m == 1);
    }
    CHECK(hit_a);
    CHECK(hit_b);

    // identity: preimage of q is q
    auto fid = preimages(ProjMap::identity(), PPoint::gaussian(GRat(3), GRat(-2), GRat(1)));
    REQUIRE(fid.size() == 1);
    CHECK(ppoint_equal(fid[0].first, PPoint::gaussian(GRat(3), GRat(-2), GRat(1))));

    // collapse image has a positive-dimensional fiber
    CHECK_THROWS_AS(preimages(f, PPoint::gaussian(GRat(1), GRat(0), GRat(0))),
                    PositiveDimensionalFiber);
}

TEST_CASE("topological degree") {
    CHECK(topological_degree(phi(), 3, 7) == 2);
    CHECK(topological_degree(psi(), 3, 7) == 2);
}

TEST_CASE("topological degree of the second iterate") {
    CHECK(topological_degree(iterate(phi(), 2), 3, 11) == 4);
}

TEST_CASE("topological degree is invariant under linear rotation") {
    std::array<std::array<GRat, 3>, 3> m = {{{GRat(1), GRat(2), GRat(0)},
                                             {GRat(0), GRat(1), GRat(-1)},
                                             {GRat(1), GRat(0), GRat(3)}}};
    ProjMap A = ProjMap::linear(m);
    CHECK(topological_degree(compose(A, phi()), 3, 13) == 2);
}

TEST_CASE("restriction to invariant lines") {
    // phi^2 on L_X in the coordinate z = Z/Y is the Basilica map z -> z^2 - 1
    ProjMap f2 = iterate(phi(), 2);
    LineRestriction r = restrict_to_line(f2, "X", 2, 1);
    CHECK(r.den.degree() == 0);
    UPoly basilica({GRat(-1), GRat(0), GRat(1)});
    CHECK(r.num == basilica);

    // psi on L_inf in the coordinate w = Y/X is w -> w + 1
    LineRestriction t = restrict_to_line(psi(), "Z", 1, 0);
    CHECK(t.is_translation());
    UPoly wplus1({GRat(1), GRat(1)});
    CHECK(t.num == wplus1);

    // identity restricts to the identity
    LineRestriction idr = restrict_to_line(ProjMap::identity(), "Y", 2, 0);
    CHECK(idr.num == UPoly::x());
    CHECK(idr.den.degree() == 0);

    CHECK_THROWS_AS(restrict_to_line(phi(), "X", 2, 1), NotInvariant);
}

TEST_CASE("restriction commutes with iteration") {
    ProjMap f2 = iterate(phi(), 2);
    ProjMap f4 = iterate(phi(), 4);
    LineRestriction r2 = restrict_to_line(f2, "X", 2, 1);
    LineRestriction r4 = restrict_to_line(f4, "X", 2, 1);
    REQUIRE(r2.den.degree() == 0);
    REQUIRE(r4.den.degree() == 0);
    UPoly square = r2.num.compose(r2.num);
    CHECK(square.monic() == r4.num.monic());
    CHECK((r2.num.lc() == r4.num.lc()));
}

TEST_CASE("algebraic stability") {
    auto cert = is_algebraically_stable_up_to(phi(), 8);
    CHECK(cert.stable);
    CHECK(cert.degrees_multiplicative);
    REQUIRE(cert.collapsed_orbits.size() == 1);
    const auto& rec = cert.collapsed_orbits[0];
    CHECK(rec.periodic);
    CHECK(rec.period == 4);
    CHECK(rec.preperiod == 0);
    CHECK(rec.hits_indeterminacy_at == -1);

    auto cert_psi = is_algebraically_stable_up_to(psi(), 8);
    CHECK(cert_psi.stable);
    REQUIRE(cert_psi.collapsed_orbits.size() == 1);
    CHECK(cert_psi.collapsed_orbits[0].periodic);
    CHECK(cert_psi.collapsed_orbits[0].period == 2);

    // A*phi with A sending q1 = [1:0:0] to p = [1:0:1] destroys stability
    std::array<std::array<GRat, 3>, 3> m = {{{GRat(1), GRat(0), GRat(0)},
                                             {GRat(0), GRat(1), GRat(0)},
                                             {GRat(1), GRat(0), GRat(1)}}};
    ProjMap A = ProjMap::linear(m);
    auto bad = is_algebraically_stable_up_to(compose(A, phi()), 8);
    CHECK(!bad.stable);
    bool hit1 = false;
    for (const auto& r : bad.collapsed_orbits) hit1 = hit1 || r.hits_indeterminacy_at == 1;
    CHECK(hit1);
}

TEST_CASE("composition degree bound property") {
    // deg(f o g) <= deg f * deg g with equality iff nothing was removed
    ProjMap f = phi();
    ProjMap g = psi();
    ProjMap fg = compose(f, g);
    CHECK(fg.deg <= f.deg * g.deg);
}

TEST_CASE("indeterminacy of phi^4 via the iterate bundle") {
    IterateData d4 = make_iterate_data(phi(), 4);
    CHECK(d4.composed.deg == 16);
    // 1 + 2 + 2 + 4 points
    CHECK(d4.indeterminacy_set.size() == 9);
    // contains p, [0:+-i:1], [1:0:-1+-i]
    auto has = [&](const PPoint& p) {
        for (const auto& q : d4.indeterminacy_set)
            if (ppoint_equal(q, p)) return true;
        return false;
    };
    CHECK(has(PPoint::gaussian(GRat(1), GRat(0), GRat(1))));
    CHECK(has(PPoint::gaussian(GRat(0), GRat::I(), GRat(1))));
    CHECK(has(PPoint::gaussian(GRat(0), -GRat::I(), GRat(1))));
    CHECK(has(PPoint::gaussian(GRat(1), GRat(0), GRat(-1) + GRat::I())));
    CHECK(has(PPoint::gaussian(GRat(1), GRat(0), GRat(-1) - GRat::I())));
}

TEST_CASE("finiteness checks against the NF set") {
    IterateData d4 = make_iterate_data(phi(), 4);
    // r = (0, -1 + sqrt(2) i) in the chart (y, z) = (Y/X, Z/X): finite
    UPoly m({GRat(Rat(3)), GRat(Rat(2)), GRat(Rat(1))});  // z^2 + 2z + 3
    CBox seed(DyIv(Dyadic(-2), Dyadic(0)), DyIv(Dyadic(0), Dyadic(2)));
    Alg z_r = Alg::from_root(m, seed);
    AlgFieldPtr F = std::make_shared<AlgField>(z_r);
    PPoint r_pt(F, {UPoly::constant(GRat(1)), UPoly(), UPoly::x()});
    auto chk = is_finite_at(d4, r_pt);
    CHECK(chk.finite);

    // p itself is indeterminate
    auto chk_p = is_finite_at(d4, PPoint::gaussian(GRat(1), GRat(0), GRat(1)));
    CHECK(!chk_p.finite);

    // a point of L_coll \ {p} is on a collapsed curve
    auto chk_c = is_finite_at(d4, PPoint::gaussian(GRat(2), GRat(5), GRat(2)));
    CHECK(!chk_c.finite);

    // every NF member fails finiteness for phi^4
    for (const GRat& z : {GRat(1), GRat(-1), GRat(0), GRat(-2), GRat(-1) + GRat::I(),
                          GRat(-1) - GRat::I()}) {
        auto c = is_finite_at(d4, PPoint::affine_gaussian(GRat(0), z));
        CHECK(!c.finite);
    }
}
