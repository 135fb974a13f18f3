#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "funcval/convex_fn.hpp"
#include "funcval/sublevel.hpp"

using namespace funcval;

namespace {

ConvexFn abs_fn() { return ConvexFn::make(1, {{Vec::of(1.0), 0.0}, {Vec::of(-1.0), 0.0}}, {}); }

ConvexFn half_line_fn() {
    // x/2 on [0, inf), +inf elsewhere.
    return ConvexFn::make(1, {{Vec::of(0.5), 0.0}}, {{Vec::of(-1.0), 0.0}});
}

ConvexFn linf_fn() {
    return ConvexFn::make(2, {{Vec::of(1.0, 0.0), 0.0},
                              {Vec::of(-1.0, 0.0), 0.0},
                              {Vec::of(0.0, 1.0), 0.0},
                              {Vec::of(0.0, -1.0), 0.0}},
                          {});
}

} // namespace

TEST_CASE("evaluation") {
    CHECK(abs_fn().evaluate(Vec::of(-3.0)) == doctest::Approx(3.0));
    const ConvexFn ind = ConvexFn::indicator(Polytope::box(Vec::of(0.0), Vec::of(1.0)));
    CHECK(std::isinf(ind.evaluate(Vec::of(2.0))));
    CHECK(ind.evaluate(Vec::of(0.5)) == 0.0);
    CHECK(half_line_fn().evaluate(Vec::of(4.0)) == doctest::Approx(2.0));
    CHECK(std::isinf(half_line_fn().evaluate(Vec::of(-1.0))));
    CHECK(std::isinf(ConvexFn::infinity(2).evaluate(Vec::of(0.0, 0.0))));
}

TEST_CASE("minimum and arg-min face") {
    const ConvexFn absf = abs_fn();
    const MinInfo& m_abs = absf.min_info();
    CHECK(m_abs.value == doctest::Approx(0.0));
    CHECK(m_abs.argmin.affine_dim() == 0);
    CHECK(m_abs.argmin.vertices()[0].norm() < 1e-9);

    const Polytope k = Polytope::box(Vec::of(-1.0, 0.0), Vec::of(1.0, 2.0));
    const ConvexFn shifted = ConvexFn::shifted_indicator(0.7, k);
    CHECK(shifted.min_info().value == doctest::Approx(0.7));
    CHECK(hausdorff_distance(shifted.min_info().argmin, k) < 1e-8);

    const ConvexFn two = ConvexFn::make(1, {{Vec::of(2.0), -1.0}, {Vec::of(-1.0), 1.0}}, {});
    CHECK(two.min_info().value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(two.min_info().argmin.vertices()[0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(ConvexFn::infinity(1).min_info(), std::logic_error);
}

TEST_CASE("join is the pointwise max") {
    const ConvexFn u = abs_fn();
    const ConvexFn uu = join(u, u);
    for (double x = -3.0; x <= 3.0; x += 0.25)
        CHECK(uu.evaluate(Vec::of(x)) == doctest::Approx(u.evaluate(Vec::of(x))).epsilon(1e-12));

    const Polytope a = Polytope::box(Vec::of(0.0), Vec::of(2.0));
    const Polytope b = Polytope::box(Vec::of(1.0), Vec::of(3.0));
    const ConvexFn jab = join(ConvexFn::indicator(a), ConvexFn::indicator(b));
    CHECK(jab.evaluate(Vec::of(1.5)) == 0.0);
    CHECK(std::isinf(jab.evaluate(Vec::of(0.5))));

    const ConvexFn slope = ConvexFn::make(1, {{Vec::of(0.5), 0.0}}, a.halfspaces());
    const ConvexFn mix = join(u, slope);
    for (double x = 0.0; x <= 2.0; x += 0.2)
        CHECK(mix.evaluate(Vec::of(x)) ==
              doctest::Approx(std::max(std::abs(x), 0.5 * x)).epsilon(1e-12));

    // Disjoint domains: the max is infinite everywhere.
    const ConvexFn far = ConvexFn::indicator(Polytope::box(Vec::of(5.0), Vec::of(6.0)));
    CHECK(join(ConvexFn::indicator(a), far).is_infty());
}

TEST_CASE("join is idempotent, commutative, associative on sampled values") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> pick(-2.5, 2.5);
    const ConvexFn a = abs_fn();
    const ConvexFn b = ConvexFn::make(1, {{Vec::of(0.5), 0.2}, {Vec::of(-2.0), -1.0}}, {});
    const ConvexFn c = ConvexFn::indicator(Polytope::box(Vec::of(-1.5), Vec::of(0.5)));
    const ConvexFn ab = join(a, b), ba = join(b, a);
    const ConvexFn ab_c = join(join(a, b), c), a_bc = join(a, join(b, c));
    const ConvexFn aa = join(a, a);
    for (int i = 0; i < 100; ++i) {
        const Vec x = Vec::of(pick(rng));
        CHECK(aa.evaluate(x) == doctest::Approx(a.evaluate(x)).epsilon(1e-12));
        const double lhs = ab.evaluate(x), rhs = ba.evaluate(x);
        if (std::isinf(lhs))
            CHECK(std::isinf(rhs));
        else
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        const double l2 = ab_c.evaluate(x), r2 = a_bc.evaluate(x);
        if (std::isinf(l2))
            CHECK(std::isinf(r2));
        else
            CHECK(l2 == doctest::Approx(r2).epsilon(1e-12));
    }
}

TEST_CASE("glued meet and join") {
    const Polytope q = Polytope::box(Vec::of(0.0), Vec::of(2.0));
    const ConvexFn zero = ConvexFn::make(1, {{Vec::of(0.0), 0.0}}, {{Vec::of(1.0), 10.0},
                                                                    {Vec::of(-1.0), 10.0}});
    const GluedQuadruple flat = meet_glued(zero, q, {Vec::of(1.0), 1.0});
    CHECK(flat.meet.evaluate(Vec::of(1.7)) == 0.0);
    CHECK(std::isinf(flat.meet.evaluate(Vec::of(2.5))));
    CHECK(flat.join.min_info().argmin.vertices()[0][0] == doctest::Approx(1.0));

    const ConvexFn h = abs_fn();
    const GluedQuadruple g = meet_glued(h, Polytope::box(Vec::of(-1.0), Vec::of(1.0)),
                                        {Vec::of(1.0), 0.0});
    CHECK(g.join.min_info().value ==
          doctest::Approx(std::max(g.u.min_info().value, g.v.min_info().value)).epsilon(1e-9));
    for (double x = -1.0; x <= 1.0; x += 0.1) {
        const double mu = g.u.evaluate(Vec::of(x));
        const double mv = g.v.evaluate(Vec::of(x));
        CHECK(g.meet.evaluate(Vec::of(x)) == doctest::Approx(std::min(mu, mv)).epsilon(1e-12));
        const double mj = g.join.evaluate(Vec::of(x));
        if (std::isinf(std::max(mu, mv)))
            CHECK(std::isinf(mj));
        else
            CHECK(mj == doctest::Approx(std::max(mu, mv)).epsilon(1e-12));
    }
}

TEST_CASE("addition of functions") {
    const ConvexFn u = abs_fn();
    // u + 0 = u (the zero function carried on a large box; a free constant is
    // not coercive and is rejected by construction).
    const ConvexFn zero =
        ConvexFn::indicator(Polytope::box(Vec::of(-50.0), Vec::of(50.0)));
    const ConvexFn sum = add(u, zero);
    for (double x = -2.0; x <= 2.0; x += 0.3)
        CHECK(sum.evaluate(Vec::of(x)) == doctest::Approx(u.evaluate(Vec::of(x))));
    CHECK(u.add_constant(0.0).evaluate(Vec::of(1.3)) == doctest::Approx(1.3));

    // |x1| + |x2| has sub-level diamonds of area 2 t^2.
    const ConvexFn a1 = ConvexFn::make(2, {{Vec::of(1.0, 0.0), 0.0}, {Vec::of(-1.0, 0.0), 0.0}},
                                       {{Vec::of(0.0, 1.0), 50.0}, {Vec::of(0.0, -1.0), 50.0}});
    const ConvexFn a2 = ConvexFn::make(2, {{Vec::of(0.0, 1.0), 0.0}, {Vec::of(0.0, -1.0), 0.0}},
                                       {{Vec::of(1.0, 0.0), 50.0}, {Vec::of(-1.0, 0.0), 50.0}});
    const ConvexFn l1 = add(a1, a2);
    for (const double t : {0.5, 1.0, 2.0})
        CHECK(sublevel_closed(l1, t).intrinsic_volumes()[2] ==
              doctest::Approx(2.0 * t * t).epsilon(1e-10));

    const Polytope k = Polytope::box(Vec::of(0.0), Vec::of(1.0));
    const ConvexFn restricted = add(u, ConvexFn::indicator(k));
    CHECK(std::isinf(restricted.evaluate(Vec::of(-0.5))));
    CHECK(restricted.evaluate(Vec::of(0.5)) == doctest::Approx(0.5));
}

TEST_CASE("horizontal scaling") {
    const ConvexFn u2 = abs_fn().scale_horizontal(2.0);
    CHECK(u2.evaluate(Vec::of(2.0)) == doctest::Approx(1.0));

    const Polytope k = Polytope::box(Vec::of(-1.0, 0.0), Vec::of(1.0, 1.0));
    const ConvexFn ik = ConvexFn::indicator(k).scale_horizontal(1.5);
    CHECK(hausdorff_distance(sublevel_closed(ik, 0.0), k.minkowski_scale(1.5)) < 1e-9);

    const ConvexFn same = abs_fn().scale_horizontal(1.0);
    for (double x = -2.0; x <= 2.0; x += 0.5)
        CHECK(same.evaluate(Vec::of(x)) == std::abs(x));

    // u_lambda(lambda x) = u(x) exactly.
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    const ConvexFn w = ConvexFn::make(1, {{Vec::of(1.5), 0.3}, {Vec::of(-0.7), -0.1}}, {});
    for (int i = 0; i < 50; ++i) {
        const double x = pick(rng);
        CHECK(w.scale_horizontal(3.0).evaluate(Vec::of(3.0 * x)) ==
              doctest::Approx(w.evaluate(Vec::of(x))).epsilon(1e-14));
    }

    CHECK_THROWS_AS(abs_fn().scale_horizontal(0.0), std::invalid_argument);
}

TEST_CASE("rigid motions of functions") {
    const ConvexFn u = abs_fn();
    const ConvexFn moved = u.apply_motion(RigidMotion::translation(Vec::of(-1.0)));
    // (u o T)(x) = u(x - 1): minimum sits at x = 1.
    CHECK(moved.min_info().argmin.vertices()[0][0] == doctest::Approx(1.0));

    std::array<std::array<double, 3>, 3> refl{{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    const ConvexFn mirrored = u.apply_motion(RigidMotion(1, refl, Vec::zero(1)));
    for (double x = -2.0; x <= 2.0; x += 0.25)
        CHECK(mirrored.evaluate(Vec::of(x)) == doctest::Approx(u.evaluate(Vec::of(x))));

    const ConvexFn l1 = add(
        ConvexFn::make(2, {{Vec::of(1.0, 0.0), 0.0}, {Vec::of(-1.0, 0.0), 0.0}},
                       {{Vec::of(0.0, 1.0), 50.0}, {Vec::of(0.0, -1.0), 50.0}}),
        ConvexFn::make(2, {{Vec::of(0.0, 1.0), 0.0}, {Vec::of(0.0, -1.0), 0.0}},
                       {{Vec::of(1.0, 0.0), 50.0}, {Vec::of(-1.0, 0.0), 50.0}}));
    const ConvexFn turned = l1.apply_motion(RigidMotion::rotation2d(M_PI / 2));
    for (double x = -1.0; x <= 1.0; x += 0.5)
        for (double y = -1.0; y <= 1.0; y += 0.5)
            CHECK(turned.evaluate(Vec::of(x, y)) ==
                  doctest::Approx(l1.evaluate(Vec::of(x, y))).epsilon(1e-12));
}

TEST_CASE("undergraph lift") {
    const ConvexFn lifted = abs_fn().lift_undergraph();
    CHECK(lifted.dim() == 2);
    CHECK(lifted.evaluate(Vec::of(1.0, -2.0)) == doctest::Approx(3.0));

    const ConvexFn flat = ConvexFn::indicator(Polytope::box(Vec::of(0.0), Vec::of(1.0)));
    const ConvexFn strip = flat.lift_undergraph();
    CHECK(strip.evaluate(Vec::of(0.5, 0.75)) == doctest::Approx(0.75));
    CHECK(std::isinf(strip.evaluate(Vec::of(2.0, 0.0))));

    const ConvexFn vhat = half_line_fn().lift_undergraph();
    const Polytope tri = sublevel_strict_closure(vhat, 1.0);
    CHECK(tri.intrinsic_volumes()[2] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(tri.vertices().size() == 3);

    CHECK_THROWS_AS(abs_fn().lift_undergraph(2), std::invalid_argument);
    CHECK_THROWS_AS(linf_fn().lift_undergraph().lift_undergraph(), std::invalid_argument);
}

TEST_CASE("dimension extension and restriction") {
    const ConvexFn ind = ConvexFn::indicator(Polytope::box(Vec::of(0.0), Vec::of(1.0)));
    const ConvexFn lifted = ind.extend_dim(2);
    CHECK(lifted.evaluate(Vec::of(0.5, 0.0)) == 0.0);
    CHECK(std::isinf(lifted.evaluate(Vec::of(0.5, 0.1))));
    CHECK(sublevel_closed(lifted, 0.0).affine_dim() == 1);

    const ConvexFn l1 = add(
        ConvexFn::make(2, {{Vec::of(1.0, 0.0), 0.0}, {Vec::of(-1.0, 0.0), 0.0}},
                       {{Vec::of(0.0, 1.0), 50.0}, {Vec::of(0.0, -1.0), 50.0}}),
        ConvexFn::make(2, {{Vec::of(0.0, 1.0), 0.0}, {Vec::of(0.0, -1.0), 0.0}},
                       {{Vec::of(1.0, 0.0), 50.0}, {Vec::of(-1.0, 0.0), 50.0}}));
    const ConvexFn sliced = l1.restrict_dim(1);
    for (double x = -2.0; x <= 2.0; x += 0.25)
        CHECK(sliced.evaluate(Vec::of(x)) == doctest::Approx(std::abs(x)).epsilon(1e-12));

    // Round trip on a function living in the x1-axis.
    const ConvexFn back = lifted.restrict_dim(1).extend_dim(2);
    for (double x = -0.5; x <= 1.5; x += 0.25) {
        const double a = lifted.evaluate(Vec::of(x, 0.0));
        const double b = back.evaluate(Vec::of(x, 0.0));
        if (std::isinf(a))
            CHECK(std::isinf(b));
        else
            CHECK(b == doctest::Approx(a));
    }
}

TEST_CASE("coercivity check and growth witness") {
    const CoercivityWitness w1 =
        coercivity_check(1, {{Vec::of(1.0), 0.0}, {Vec::of(-1.0), 0.0}});
    CHECK(w1.coercive);
    CHECK(w1.a == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_FALSE(coercivity_check(1, {{Vec::of(1.0), 0.0}}).coercive);

    const CoercivityWitness corners = coercivity_check(
        2, {{Vec::of(1.0, 1.0), 0.0}, {Vec::of(1.0, -1.0), 0.0}, {Vec::of(-1.0, 1.0), 0.0},
            {Vec::of(-1.0, -1.0), 0.0}});
    CHECK(corners.coercive);

    // Witness bound sampled over the plane, including a domain-backed case.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(-8.0, 8.0);
    const ConvexFn v = half_line_fn();
    const CoercivityWitness wv = v.growth_witness();
    CHECK(wv.a > 0.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec x = Vec::of(pick(rng));
        const double val = v.evaluate(x);
        if (std::isfinite(val)) CHECK(val >= wv.a * x.norm() + wv.b - 1e-9);
    }

    CHECK_THROWS_AS(ConvexFn::make(1, {{Vec::of(1.0), 0.0}}, {}), CoercivityError);
}

TEST_CASE("infinity element propagates") {
    const ConvexFn inf = ConvexFn::infinity(2);
    CHECK(inf.is_infty());
    CHECK(add(inf, linf_fn()).is_infty());
    CHECK(join(inf, linf_fn()).is_infty());
    CHECK(inf.scale_horizontal(2.0).is_infty());
    CHECK(ConvexFn::indicator(Polytope::empty(2)).is_infty());
}
