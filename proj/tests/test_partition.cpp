#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "funcval/harness.hpp"
#include "funcval/partition.hpp"

using namespace funcval;

namespace {

PolytopalPartition square_partition() {
    const Polytope square = Polytope::box(Vec::of(0.0, 0.0), Vec::of(2.0, 2.0));
    return make_partition(square, {square});
}

/// Three convex cells fanning out from an interior point of the square; the
/// interface planes do not extend across each other, so the partition is not
/// complete.
PolytopalPartition pinwheel_partition() {
    const Polytope square = Polytope::box(Vec::of(0.0, 0.0), Vec::of(2.0, 2.0));
    const Polytope c1 = Polytope::from_halfspaces(
        2, {{Vec::of(0.0, -1.0), 0.0}, {Vec::of(-0.8, 1.0), 0.0}, {Vec::of(0.8, 1.0), 1.6}});
    const Polytope c2 = Polytope::from_halfspaces(
        2, {{Vec::of(1.0, 0.0), 2.0}, {Vec::of(0.0, 1.0), 2.0}, {Vec::of(-0.8, -1.0), -1.6},
            {Vec::of(-1.2, -1.0), -2.0}});
    const Polytope c3 = Polytope::from_halfspaces(
        2, {{Vec::of(-1.0, 0.0), 0.0}, {Vec::of(0.8, -1.0), 0.0}, {Vec::of(1.2, 1.0), 2.0}});
    return make_partition(square, {c1, c2, c3});
}

} // namespace

TEST_CASE("refinement by a hyperplane") {
    const PolytopalPartition base = square_partition();
    const PolytopalPartition split = refine_by_hyperplane(base, {Vec::of(1.0, 0.0), 0.5});
    CHECK(split.cells.size() == 2);
    double total = 0.0;
    for (const Polytope& c : split.cells) total += c.intrinsic_volumes()[2];
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));

    // A plane missing the parent changes nothing.
    const PolytopalPartition missed = refine_by_hyperplane(base, {Vec::of(1.0, 0.0), 5.0});
    CHECK(missed.cells.size() == 1);
    CHECK(missed.cells[0].intrinsic_volumes()[2] == doctest::Approx(4.0));

    // Re-refining by the interface plane of an existing cut changes nothing.
    const PolytopalPartition again = refine_by_hyperplane(split, {Vec::of(1.0, 0.0), 0.5});
    CHECK(again.cells.size() == split.cells.size());
}

TEST_CASE("completion") {
    const PolytopalPartition single = square_partition();
    CHECK(complete(single).cells.size() == 1);
    CHECK(is_complete(single));

    // Two stacked rectangles with an interface crossing only one of them.
    const Polytope square = Polytope::box(Vec::of(0.0, 0.0), Vec::of(2.0, 2.0));
    const Polytope left = Polytope::box(Vec::of(0.0, 0.0), Vec::of(1.0, 2.0));
    const Polytope topright = Polytope::box(Vec::of(1.0, 1.0), Vec::of(2.0, 2.0));
    const Polytope botright = Polytope::box(Vec::of(1.0, 0.0), Vec::of(2.0, 1.0));
    const PolytopalPartition ell = make_partition(square, {left, topright, botright});
    CHECK_FALSE(is_complete(ell));
    const PolytopalPartition done = complete(ell);
    CHECK(done.cells.size() == 4);
    CHECK(is_complete(done));

    // Rectangular partitions stay rectangular: every completed cell is a box.
    for (const Polytope& cell : done.cells) {
        CHECK(cell.vertices().size() == 4);
        for (const Halfspace& h : cell.halfspaces())
            CHECK(std::abs(h.normal[0] * h.normal[1]) < 1e-12);
    }
}

TEST_CASE("completeness detection") {
    CHECK(is_complete(square_partition()));
    CHECK_FALSE(is_complete(pinwheel_partition()));
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const PolytopalPartition p = gen_rect_partition(rng, 2 + trial % 2, 3);
        CHECK(is_complete(complete(p)));
    }
}

TEST_CASE("inductive certificates") {
    const PolytopalPartition split =
        refine_by_hyperplane(square_partition(), {Vec::of(1.0, 0.0), 0.5});
    const InductiveCertificate two = inductive_certificate(split);
    CHECK(two.size() == 3);
    CHECK(two.back().left >= 0);
    CHECK(validate_certificate(two, split));

    // Completed 2x2 grid: 4 leaves + 2 half-merges + the parent.
    PolytopalPartition grid = refine_by_hyperplane(split, {Vec::of(0.0, 1.0), 1.0});
    grid.parent = split.parent;
    const InductiveCertificate four = inductive_certificate(grid);
    CHECK(four.size() == 7);
    CHECK(validate_certificate(four, grid));

    const InductiveCertificate leaf = inductive_certificate(square_partition());
    CHECK(leaf.size() == 1);
    CHECK(leaf[0].leaf);

    CHECK_THROWS_AS(inductive_certificate(pinwheel_partition()), NotCompleteError);
}

TEST_CASE("simple valuation decomposition") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 1 + trial % 3;
        const PolytopalPartition done = complete(gen_rect_partition(rng, dim, 2));
        GenConfig cfg;
        cfg.seed = rng();
        cfg.dim = dim;
        cfg.kind = DomainKind::Free;
        const ConvexFn u = gen_convex_fn(cfg);
        const RadonMeasure nu = gen_measure(rng, u.min_info().value - 1.0, true);
        const ValuationOracle oracle = make_oracle(IntegralValuation(dim, nu), dim);
        const double scale = std::abs(oracle(add(u, ConvexFn::indicator(done.parent)))) + 1.0;
        CHECK(verify_decomposition(oracle, u, done) <= 1e-8 * scale);
    }

    // Single cell: both sides identical.
    const ValuationOracle vol = make_oracle(IntegralValuation(2, RadonMeasure::dirac(1.0)), 2);
    const ConvexFn zero = ConvexFn::make(
        2, {{Vec::of(0.0, 0.0), 0.0}},
        Polytope::box(Vec::of(-9.0, -9.0), Vec::of(9.0, 9.0)).halfspaces());
    CHECK(verify_decomposition(vol, zero, square_partition()) <= 1e-12);

    // Vanishing case: a measure supported below every level reached.
    const ValuationOracle none = make_oracle(IntegralValuation(2, RadonMeasure::dirac(-1.0)), 2);
    CHECK(verify_decomposition(none, zero, square_partition()) == doctest::Approx(0.0));
}

TEST_CASE("riemann sandwich") {
    // Constant function: lower = value = upper.
    const Polytope k = Polytope::box(Vec::of(0.0, 0.0), Vec::of(1.5, 1.0));
    const PolytopalPartition pk = make_partition(k, {k});
    const IntegralValuation val(2, RadonMeasure::lebesgue(0.0, 2.0));
    const ConvexFn flat = ConvexFn::make(
        2, {{Vec::of(0.0, 0.0), 0.25}},
        Polytope::box(Vec::of(-9.0, -9.0), Vec::of(9.0, 9.0)).halfspaces());
    const RiemannSandwich exact = riemann_sandwich(val, flat, pk);
    const double expect = val.density()(0.25) * 1.5;
    CHECK(exact.lower == doctest::Approx(expect).epsilon(1e-10));
    CHECK(exact.upper == doctest::Approx(expect).epsilon(1e-10));
    CHECK(exact.value == doctest::Approx(expect).epsilon(1e-10));

    // |x| on [-1,1] against f = 1_{t<1}: bounds 0 and 2 around the value 2.
    const IntegralValuation ind(1, RadonMeasure::dirac(1.0));
    const ConvexFn absf = ConvexFn::make(1, {{Vec::of(1.0), 0.0}, {Vec::of(-1.0), 0.0}}, {});
    const Polytope seg = Polytope::box(Vec::of(-1.0), Vec::of(1.0));
    PolytopalPartition two = refine_by_hyperplane(make_partition(seg, {seg}), {Vec::of(1.0), 0.0});
    const RiemannSandwich s = riemann_sandwich(ind, absf, two);
    CHECK(s.lower == doctest::Approx(0.0));
    CHECK(s.upper == doctest::Approx(2.0));
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(s.lower <= s.value + 1e-9);
    CHECK(s.value <= s.upper + 1e-9);

    // Refinement shrinks the gap.
    PolytopalPartition fine = two;
    for (int i = 0; i < 3; ++i) fine = uniform_refine(fine);
    const RiemannSandwich sf = riemann_sandwich(ind, absf, fine);
    CHECK(sf.upper - sf.lower <= (s.upper - s.lower) + 1e-12);
}

TEST_CASE("partition invariants are enforced") {
    const Polytope square = Polytope::box(Vec::of(0.0, 0.0), Vec::of(2.0, 2.0));
    const Polytope half = Polytope::box(Vec::of(0.0, 0.0), Vec::of(1.0, 2.0));
    CHECK_THROWS_AS(make_partition(square, {half}), std::invalid_argument);
    CHECK_THROWS_AS(make_partition(square, {square, half}), std::invalid_argument);
    const Polytope seg = Polytope::segment(Vec::of(0.0, 0.0), Vec::of(2.0, 0.0));
    CHECK_THROWS_AS(make_partition(square, {square, seg}), std::invalid_argument);
}
