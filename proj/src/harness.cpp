#include "funcval/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace funcval {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

ConvexFn gen_convex_fn(const GenConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > 3 || cfg.pieces_min < 1 || cfg.pieces_max < cfg.pieces_min)
        throw BadConfigError("gen_convex_fn: bad config");
    std::mt19937_64 rng(cfg.seed);
    const int d = cfg.dim;
    const int count = uniform_int(rng, cfg.pieces_min, cfg.pieces_max);
    std::vector<AffinePiece> pieces;
    for (int i = 0; i < count; ++i) {
        Vec s = Vec::zero(d);
        for (int j = 0; j < d; ++j) s[j] = uniform(rng, -cfg.scale, cfg.scale);
        pieces.push_back({s, uniform(rng, -cfg.scale, cfg.scale)});
    }
    std::vector<Halfspace> domain;
    switch (cfg.kind) {
        case DomainKind::Box: {
            for (int j = 0; j < d; ++j) {
                const double center = uniform(rng, -1.0, 1.0);
                const double half = uniform(rng, 0.4, 1.2);
                Vec e = Vec::zero(d);
                e[j] = 1.0;
                domain.push_back({e, center + half});
                domain.push_back({e * -1.0, -(center - half)});
            }
            break;
        }
        case DomainKind::Simplex: {
            Vec v0 = Vec::zero(d);
            for (int j = 0; j < d; ++j) v0[j] = uniform(rng, -1.0, 1.0);
            const double side = uniform(rng, 0.8, 2.0);
            for (int j = 0; j < d; ++j) {
                Vec e = Vec::zero(d);
                e[j] = 1.0;
                domain.push_back({e * -1.0, -v0[j]});
            }
            Vec ones = Vec::zero(d);
            for (int j = 0; j < d; ++j) ones[j] = 1.0;
            domain.push_back({ones, ones.dot(v0) + side});
            break;
        }
        case DomainKind::Free: {
            for (int j = 0; j < d; ++j)
                for (const double sgn : {1.0, -1.0}) {
                    Vec e = Vec::zero(d);
                    e[j] = sgn * cfg.scale;
                    pieces.push_back({e, uniform(rng, -cfg.scale, 0.0)});
                }
            break;
        }
    }
    return ConvexFn::make(d, std::move(pieces), std::move(domain));
}

RadonMeasure gen_measure(std::mt19937_64& rng, double anchor, bool with_exp_tail) {
    std::vector<MeasureAtom> atoms;
    const int atom_count = uniform_int(rng, 0, 2);
    for (int i = 0; i < atom_count; ++i)
        atoms.push_back({anchor + uniform(rng, 0.0, 3.0), uniform(rng, 0.1, 1.5)});
    // Nonnegative quadratic in (t - lo), expanded to standard coefficients.
    const double lo = anchor + uniform(rng, 0.0, 1.0);
    const double hi = lo + uniform(rng, 0.5, 2.0);
    const double c0 = uniform(rng, 0.0, 1.0), c1 = uniform(rng, 0.0, 0.5), c2 = uniform(rng, 0.0, 0.3);
    std::vector<double> coef{c0 - c1 * lo + c2 * lo * lo, c1 - 2 * c2 * lo, c2};
    std::vector<PolyDensity> pieces{{lo, hi, coef}};
    std::optional<ExpTailDensity> tail;
    if (with_exp_tail) tail = ExpTailDensity{hi, uniform(rng, 0.2, 1.0)};
    return RadonMeasure::make(std::move(atoms), std::move(pieces), tail);
}

PolytopalPartition gen_rect_partition(std::mt19937_64& rng, int dim, int splits) {
    Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
    for (int j = 0; j < dim; ++j) {
        lo[j] = uniform(rng, -1.5, -0.5);
        hi[j] = uniform(rng, 0.5, 1.5);
    }
    PolytopalPartition p;
    p.parent = Polytope::box(lo, hi);
    p.cells = {p.parent};
    for (int s = 0; s < splits; ++s) {
        const int target = uniform_int(rng, 0, static_cast<int>(p.cells.size()) - 1);
        const int axis = uniform_int(rng, 0, dim - 1);
        Vec clo, chi;
        p.cells[target].bounding_box(clo, chi);
        const double cut = clo[axis] + (chi[axis] - clo[axis]) * uniform(rng, 0.3, 0.7);
        Vec e = Vec::zero(dim);
        e[axis] = 1.0;
        std::vector<Halfspace> below = p.cells[target].halfspaces();
        below.push_back({e, cut});
        std::vector<Halfspace> above = p.cells[target].halfspaces();
        above.push_back({e * -1.0, -cut});
        Polytope lo_cell = Polytope::from_halfspaces(dim, below);
        Polytope hi_cell = Polytope::from_halfspaces(dim, above);
        p.cells[target] = std::move(lo_cell);
        p.cells.push_back(std::move(hi_cell));
    }
    return p;
}

double undergraph_valuation(const ConvexFn& u, double t) {
    if (u.dim() != 1) throw std::invalid_argument("undergraph_valuation: needs a one-dimensional u");
    if (u.is_infty() || t <= u.min_info().value) return 0.0;
    const Polytope level = sublevel_strict_closure(u, t);
    if (level.is_empty() || level.affine_dim() < 1) return 0.0;
    double a = level.vertices()[0][0], b = a;
    for (const Vec& v : level.vertices()) {
        a = std::min(a, v[0]);
        b = std::max(b, v[0]);
    }
    // Graph arc length: split [a, b] where the active piece changes.
    std::vector<double> cuts{a, b};
    const auto& pieces = u.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            const double ds = pieces[i].slope[0] - pieces[j].slope[0];
            if (std::abs(ds) < 1e-12) continue;
            const double x = (pieces[j].intercept - pieces[i].intercept) / ds;
            if (x > a && x < b) cuts.push_back(x);
        }
    std::sort(cuts.begin(), cuts.end());
    double length = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double best = -std::numeric_limits<double>::infinity();
        double slope = 0.0;
        for (const AffinePiece& p : pieces) {
            const double v = p.slope[0] * mid + p.intercept;
            if (v > best) {
                best = v;
                slope = p.slope[0];
            }
        }
        length += (cuts[i + 1] - cuts[i]) * std::sqrt(1.0 + slope * slope);
    }
    return length;
}

double undergraph_lifted_v1(const ConvexFn& u, double t) {
    return sublevel_strict_closure(u.lift_undergraph(), t).intrinsic_volumes()[1];
}

double undergraph_lid_correction(const ConvexFn& u, double t) {
    if (u.is_infty() || t <= u.min_info().value) return 0.0;
    const Polytope level = sublevel_strict_closure(u, t);
    if (level.is_empty()) return 0.0;
    double a = level.vertices()[0][0], b = a;
    for (const Vec& v : level.vertices()) {
        a = std::min(a, v[0]);
        b = std::max(b, v[0]);
    }
    double lid = 0.0;
    for (const double e : {a, b}) {
        const double ue = u.evaluate(Vec::of(e));
        if (std::isfinite(ue) && ue < t - 1e-12) lid += t - ue;
    }
    return lid;
}

UndergraphStudy undergraph_lambda_sweep(const std::vector<double>& lambdas) {
    const ConvexFn absval =
        ConvexFn::make(1, {{Vec::of(1.0), 0.0}, {Vec::of(-1.0), 0.0}}, {});
    UndergraphStudy study;
    study.lambdas = lambdas;
    for (double lambda : lambdas) {
        const double v = undergraph_valuation(absval.scale_horizontal(lambda), 1.0);
        study.values.push_back(v);
        study.max_formula_error =
            std::max(study.max_formula_error, std::abs(v - 2.0 * std::sqrt(1.0 + lambda * lambda)));
    }
    const int degree = std::min<int>(3, static_cast<int>(lambdas.size()) - 1);
    const std::vector<double> fit = polyfit(study.lambdas, study.values, degree);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        study.poly_fit_residual =
            std::max(study.poly_fit_residual, std::abs(polyval(fit, lambdas[i]) - study.values[i]));
    return study;
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

namespace {

struct SuiteRun {
    SuiteReport report;
    double tol_override = 0.0;

    void record(const std::string& name, long trials, double residual, double default_tol) {
        CheckResult c;
        c.name = name;
        c.trials = trials;
        c.max_residual = residual;
        c.tolerance = tol_override > 0 ? tol_override : default_tol;
        c.pass = residual <= c.tolerance;
        report.checks.push_back(c);
        report.pass = report.pass && c.pass;
    }
};

ConvexFn gen_fn_for_trial(std::mt19937_64& rng, int dim) {
    GenConfig cfg;
    cfg.seed = rng();
    cfg.dim = dim;
    cfg.pieces_min = 2;
    cfg.pieces_max = dim == 3 ? 4 : 5;
    const int kind = uniform_int(rng, 0, 2);
    cfg.kind = kind == 0 ? DomainKind::Box : (kind == 1 ? DomainKind::Free : DomainKind::Simplex);
    return gen_convex_fn(cfg);
}

void routes_suite(SuiteRun& run, long trials, std::mt19937_64& rng) {
    double worst_sl = 0.0, worst_sb = 0.0, worst_zero = 0.0;
    long done = 0;
    for (int dim = 1; dim <= 3; ++dim) {
        for (long trial = 0; trial < trials; ++trial, ++done) {
            const ConvexFn u = gen_fn_for_trial(rng, dim);
            const double m = u.min_info().value;
            const RadonMeasure nu = gen_measure(rng, m - 1.0, trial % 2 == 0);
            const auto profiles = profile_all(u);
            for (int k = 0; k <= dim; ++k) {
                const IntegralValuation val(k, nu);
                const double s = eval_sublevel(val, profiles[k]);
                const double b = eval_beta(val, profiles[k]);
                worst_sb = std::max(worst_sb, std::abs(s - b) / (1.0 + std::abs(s)));
                if (k == dim) {
                    const double l = eval_layercake(val, u);
                    worst_sl = std::max(worst_sl, std::abs(s - l) / (1.0 + std::abs(s)));
                }
                if (k == 0)
                    worst_zero = std::max(
                        worst_zero, std::abs(s - eval_zero_homogeneous(val, u)) / (1.0 + std::abs(s)));
            }
        }
    }
    run.record("route_sublevel_vs_layercake", done, worst_sl, 1e-8);
    run.record("route_sublevel_vs_beta", done, worst_sb, 1e-6);
    run.record("zero_homogeneous_formula", done, worst_zero, 1e-12);
}

void lattice_suite(SuiteRun& run, long trials, std::mt19937_64& rng) {
    double worst_lattice = 0.0, worst_min = 0.0, worst_identity = 0.0;
    double worst_strict = 0.0, worst_concavity = 0.0, worst_argmin = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
        const int dim = 1 + static_cast<int>(trial % 3);
        const ConvexFn h = gen_fn_for_trial(rng, dim);
        Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
        for (int j = 0; j < dim; ++j) {
            lo[j] = uniform(rng, -1.5, -0.3);
            hi[j] = uniform(rng, 0.3, 1.5);
        }
        const Polytope q = Polytope::box(lo, hi);
        Vec normal = Vec::zero(dim);
        for (int j = 0; j < dim; ++j) normal[j] = uniform(rng, -1.0, 1.0);
        if (normal.norm() < 1e-6) normal[0] = 1.0;
        const Halfspace split{normal, normal.dot(q.any_interior_point())};
        const GluedQuadruple g = meet_glued(h, q, split);
        if (g.u.is_infty() || g.v.is_infty()) continue;

        // Sub-level lattice identities at sampled levels.
        const double base = g.meet.min_info().value;
        for (const double dt : {0.3, 1.0, 2.5}) {
            const double t = base + dt;
            const Polytope su = sublevel_strict_closure(g.u, t);
            const Polytope sv = sublevel_strict_closure(g.v, t);
            const Polytope sj = sublevel_strict_closure(g.join, t);
            const Polytope sm = sublevel_strict_closure(g.meet, t);
            if (!su.is_empty() && !sv.is_empty()) {
                const Polytope inter = su.intersect(sv);
                if (!inter.is_empty() && !sj.is_empty())
                    worst_lattice = std::max(worst_lattice, hausdorff_distance(inter, sj));
                // Union identity via two-sided vertex distances.
                double d_union = 0.0;
                for (const Vec& v : sm.vertices())
                    d_union = std::max(d_union, std::min(su.distance(v), sv.distance(v)));
                for (const Vec& v : su.vertices()) d_union = std::max(d_union, sm.distance(v));
                for (const Vec& v : sv.vertices()) d_union = std::max(d_union, sm.distance(v));
                worst_lattice = std::max(worst_lattice, d_union);
            }
        }
        if (!g.join.is_infty())
            worst_min = std::max(worst_min,
                                 std::abs(g.join.min_info().value -
                                          std::max(g.u.min_info().value, g.v.min_info().value)));

        const RadonMeasure nu = gen_measure(rng, base - 1.0, trial % 2 == 0);
        const int k = uniform_int(rng, 0, dim);
        const IntegralValuation val(k, nu);
        const ValuationOracle oracle = make_oracle(val, dim);
        const double scale = std::abs(oracle(g.u)) + std::abs(oracle(g.v)) + 1.0;
        worst_identity =
            std::max(worst_identity, check_valuation_identity(oracle, h, q, split) / scale);

        // Strict closure vs closed sub-level, and the arg-min face.
        const ConvexFn& u = g.u;
        const double m = u.min_info().value;
        for (const double dt : {1e-6 + 1e-9, 0.1, 1.0}) {
            const Polytope strict = sublevel_strict_closure(u, m + dt);
            const Polytope closed = sublevel_closed(u, m + dt);
            if (!strict.is_empty() && !closed.is_empty())
                worst_strict = std::max(worst_strict, hausdorff_distance(strict, closed));
        }
        if (!sublevel_strict_closure(u, m).is_empty()) worst_strict = std::max(worst_strict, 1.0);
        worst_argmin =
            std::max(worst_argmin, hausdorff_distance(u.min_info().argmin, sublevel_closed(u, m)));

        // Brunn-Minkowski concavity of v_k^{1/k} above the minimum.
        const auto profiles = profile_all(u);
        for (int kk = 1; kk <= dim; ++kk) {
            const auto& prof = profiles[kk];
            std::vector<double> grid(64), vals(64);
            for (int i = 0; i < 64; ++i) {
                grid[i] = m + 10.0 * (i + 1) / 65.0;
                vals[i] = std::pow(prof.value(grid[i]), 1.0 / kk);
            }
            for (int i = 0; i + 2 < 64; i += 2)
                worst_concavity = std::max(
                    worst_concavity, 0.5 * (vals[i] + vals[i + 2]) - vals[i + 1]);
        }
    }
    run.record("sublevel_lattice_identities", trials, worst_lattice, 1e-8);
    run.record("min_of_join", trials, worst_min, 1e-9);
    run.record("valuation_identity", trials, worst_identity, 1e-8);
    run.record("strict_vs_closed_sublevel", trials, worst_strict, 1e-9);
    run.record("argmin_face", trials, worst_argmin, 1e-8);
    run.record("profile_root_concavity", trials, worst_concavity, 1e-9);
}

void partitions_suite(SuiteRun& run, long trials, std::mt19937_64& rng) {
    double worst_idem = 0.0, worst_cert = 0.0, worst_decomp = 0.0, worst_riemann = 0.0,
           worst_gap = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
        const int dim = 1 + static_cast<int>(trial % 3);
        PolytopalPartition p = gen_rect_partition(rng, dim, uniform_int(rng, 1, 3));
        const PolytopalPartition done = complete(p);
        const PolytopalPartition twice = complete(done);
        std::vector<double> va, vb;
        for (const Polytope& c : done.cells) va.push_back(c.intrinsic_volumes()[dim]);
        for (const Polytope& c : twice.cells) vb.push_back(c.intrinsic_volumes()[dim]);
        std::sort(va.begin(), va.end());
        std::sort(vb.begin(), vb.end());
        if (va.size() != vb.size()) {
            worst_idem = std::max(worst_idem, 1.0);
        } else {
            for (std::size_t i = 0; i < va.size(); ++i)
                worst_idem = std::max(worst_idem, std::abs(va[i] - vb[i]));
        }
        const InductiveCertificate cert = inductive_certificate(done);
        if (!validate_certificate(cert, done)) worst_cert = std::max(worst_cert, 1.0);

        GenConfig cfg;
        cfg.seed = rng();
        cfg.dim = dim;
        cfg.kind = DomainKind::Free;
        const ConvexFn u = gen_convex_fn(cfg);
        const RadonMeasure nu = gen_measure(rng, u.min_info().value - 1.0, trial % 2 == 0);
        const IntegralValuation val(dim, nu);
        const ValuationOracle oracle = make_oracle(val, dim);
        const double scale = std::abs(oracle(add(u, ConvexFn::indicator(done.parent)))) + 1.0;
        worst_decomp = std::max(worst_decomp, verify_decomposition(oracle, u, done) / scale);

        const RiemannSandwich s = riemann_sandwich(val, u, done);
        worst_riemann = std::max({worst_riemann, s.lower - s.value, s.value - s.upper});
        const RiemannSandwich fine = riemann_sandwich(val, u, uniform_refine(done));
        worst_gap = std::max(worst_gap, (fine.upper - fine.lower) - (s.upper - s.lower));
    }
    run.record("complete_idempotent", trials, worst_idem, 1e-9);
    run.record("inductive_certificate_valid", trials, worst_cert, 0.5);
    run.record("simple_decomposition", trials, worst_decomp, 1e-8);
    run.record("riemann_sandwich_brackets", trials, worst_riemann, 1e-9);
    run.record("riemann_gap_shrinks", trials, worst_gap, 1e-12);
}

void undergraph_suite(SuiteRun& run, long trials, std::mt19937_64& rng) {
    const ConvexFn absval = ConvexFn::make(1, {{Vec::of(1.0), 0.0}, {Vec::of(-1.0), 0.0}}, {});
    const ConvexFn halfline =
        ConvexFn::make(1, {{Vec::of(0.5), 0.0}}, {{Vec::of(-1.0), 0.0}});
    double worst_exact = 0.0;
    for (const double t : {0.5, 1.0, 3.0}) {
        worst_exact = std::max(worst_exact,
                               std::abs(undergraph_valuation(absval, t) - 2.0 * std::sqrt(2.0) * t));
        worst_exact = std::max(worst_exact,
                               std::abs(undergraph_valuation(halfline, t) - std::sqrt(5.0) * t));
    }
    run.record("undergraph_closed_forms", 6, worst_exact, 1e-9);

    const UndergraphStudy study = undergraph_lambda_sweep({0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
    run.record("undergraph_lambda_formula", 6, study.max_formula_error, 1e-9);
    run.record("undergraph_nonpolynomial", 6,
               study.poly_fit_residual >= 1e-3 ? 0.0 : 1.0, 0.5);

    // The lift identity: V_1 of the lifted body = arc length + lid term.
    double worst_lift = 0.0;
    for (const double t : {0.5, 1.0, 2.0})
        for (const ConvexFn* u : {&absval, &halfline})
            worst_lift = std::max(worst_lift,
                                  std::abs(undergraph_lifted_v1(*u, t) -
                                           (undergraph_valuation(*u, t) +
                                            undergraph_lid_correction(*u, t))));
    run.record("undergraph_lift_identity", 6, worst_lift, 1e-9);

    double worst_identity = 0.0, worst_invariance = 0.0;
    long monotone_violations = 0;
    for (long trial = 0; trial < trials; ++trial) {
        GenConfig cfg;
        cfg.seed = rng();
        cfg.dim = 1;
        cfg.kind = trial % 2 == 0 ? DomainKind::Free : DomainKind::Box;
        const ConvexFn h = gen_convex_fn(cfg);
        const double t = h.min_info().value + uniform(rng, 0.5, 3.0);
        const Polytope q = Polytope::box(Vec::of(uniform(rng, -2.0, -0.2)),
                                         Vec::of(uniform(rng, 0.2, 2.0)));
        const Halfspace split{Vec::of(1.0), uniform(rng, -0.1, 0.1)};
        const GluedQuadruple g = meet_glued(h, q, split);
        const double residual = std::abs(undergraph_valuation(g.join, t) +
                                         undergraph_valuation(g.meet, t) -
                                         undergraph_valuation(g.u, t) - undergraph_valuation(g.v, t));
        worst_identity = std::max(worst_identity, residual);

        // Monotone under vertical shifts and domain restrictions.
        const double c = uniform(rng, 0.1, 1.0);
        if (undergraph_valuation(h.add_constant(c), t) > undergraph_valuation(h, t) + 1e-10)
            ++monotone_violations;
        const ConvexFn restricted = add(h, ConvexFn::indicator(q));
        if (!restricted.is_infty() &&
            undergraph_valuation(restricted, t) > undergraph_valuation(h, t) + 1e-10)
            ++monotone_violations;

        // Translation / reflection invariance.
        const RigidMotion shift = RigidMotion::translation(Vec::of(uniform(rng, -1.0, 1.0)));
        std::array<std::array<double, 3>, 3> refl{{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        const RigidMotion mirror(1, refl, Vec::zero(1));
        worst_invariance = std::max(
            worst_invariance,
            std::abs(undergraph_valuation(h.apply_motion(shift), t) - undergraph_valuation(h, t)));
        worst_invariance = std::max(
            worst_invariance,
            std::abs(undergraph_valuation(h.apply_motion(mirror), t) - undergraph_valuation(h, t)));
    }
    run.record("undergraph_valuation_identity", trials, worst_identity, 1e-8);
    run.record("undergraph_monotone", trials, double(monotone_violations), 0.5);
    run.record("undergraph_invariance", trials, worst_invariance, 1e-9);

    // Same strict sub-levels up to translation, different undergraph values.
    double worst_sensitivity = 0.0;
    for (const double t : {0.5, 1.0, 3.0}) {
        const Polytope su = sublevel_strict_closure(absval, t);
        const Polytope sv = sublevel_strict_closure(halfline, t);
        const double shift_dist =
            hausdorff_distance(su.apply_motion(RigidMotion::translation(Vec::of(t))), sv);
        worst_sensitivity = std::max(worst_sensitivity, shift_dist);
        const double gap = undergraph_valuation(absval, t) - undergraph_valuation(halfline, t);
        if (gap < (std::sqrt(8.0) - std::sqrt(5.0)) * t * (1.0 - 1e-9))
            worst_sensitivity = std::max(worst_sensitivity, 1.0);
    }
    run.record("undergraph_rearrangement_sensitivity", 3, worst_sensitivity, 1e-9);
}

void extras_suite(SuiteRun& run, long trials, std::mt19937_64& rng) {
    // Intrinsic-volume valuation property on box splits, motion invariance,
    // scaling homogeneity.
    double worst_val = 0.0, worst_motion = 0.0, worst_hom = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
        const int dim = 1 + static_cast<int>(trial % 3);
        Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
        for (int j = 0; j < dim; ++j) {
            lo[j] = uniform(rng, -2.0, -0.2);
            hi[j] = uniform(rng, 0.2, 2.0);
        }
        const Polytope k = Polytope::box(lo, hi);
        Vec n = Vec::zero(dim);
        for (int j = 0; j < dim; ++j) n[j] = uniform(rng, -1.0, 1.0);
        if (n.norm() < 1e-6) n[0] = 1.0;
        const double off = n.dot(k.any_interior_point());
        std::vector<Halfspace> ha = k.halfspaces(), hb = k.halfspaces();
        ha.push_back({n, off});
        hb.push_back({n * -1.0, -off});
        const Polytope ka = Polytope::from_halfspaces(dim, ha);
        const Polytope kb = Polytope::from_halfspaces(dim, hb);
        const Polytope kab = ka.intersect(kb);
        const double scale_vol = k.intrinsic_volumes()[dim] + 1.0;
        for (int kk = 0; kk <= dim; ++kk) {
            const double lhs = k.intrinsic_volumes()[kk] + kab.intrinsic_volumes()[kk];
            const double rhs = ka.intrinsic_volumes()[kk] + kb.intrinsic_volumes()[kk];
            worst_val = std::max(worst_val, std::abs(lhs - rhs) / scale_vol);
        }
        const RigidMotion motion =
            dim == 1 ? RigidMotion::translation(Vec::of(uniform(rng, -1.0, 1.0)))
            : dim == 2
                ? RigidMotion::rotation2d(uniform(rng, 0.0, M_PI))
                : RigidMotion::rotation3d(Vec::of(uniform(rng, -1, 1), uniform(rng, -1, 1),
                                                  uniform(rng, 1, 2)),
                                          uniform(rng, 0.0, M_PI));
        const Polytope moved = k.apply_motion(motion);
        const double s = uniform(rng, 0.3, 2.5);
        const Polytope scaled = k.minkowski_scale(s);
        for (int kk = 0; kk <= dim; ++kk) {
            const double rel = 1.0 + std::abs(k.intrinsic_volumes()[kk]);
            worst_motion = std::max(
                worst_motion,
                std::abs(moved.intrinsic_volumes()[kk] - k.intrinsic_volumes()[kk]) / rel);
            worst_hom = std::max(worst_hom,
                                 std::abs(scaled.intrinsic_volumes()[kk] -
                                          std::pow(s, kk) * k.intrinsic_volumes()[kk]) /
                                     rel);
        }
    }
    run.record("intrinsic_volume_valuation", trials, worst_val, 1e-9);
    run.record("intrinsic_volume_motion_invariance", trials, worst_motion, 1e-9);
    run.record("intrinsic_volume_homogeneity", trials, worst_hom, 1e-10);

    // Measure-side identity between the two integrability routes.
    double worst_ident = 0.0;
    for (long trial = 0; trial < 50; ++trial) {
        const RadonMeasure nu = gen_measure(rng, uniform(rng, -1.0, 1.0), trial % 2 == 0);
        const DensityFn f = DensityFn::tail_of(nu);
        for (int k = 1; k <= 3; ++k) {
            const double lhs = equivalent_f_condition(f, k);
            const double rhs = nu.moment(k) / k;
            worst_ident = std::max(worst_ident, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
    }
    run.record("tail_moment_identity", 50, worst_ident, 1e-9);

    // Homogeneity of integral valuations, plus the deliberate mis-order.
    double worst_hom_val = 0.0, worst_misorder = 0.0;
    for (long trial = 0; trial < std::min<long>(trials, 20); ++trial) {
        const int dim = 1 + static_cast<int>(trial % 3);
        GenConfig cfg;
        cfg.seed = rng();
        cfg.dim = dim;
        cfg.kind = DomainKind::Free;
        const ConvexFn u = gen_convex_fn(cfg);
        const int k = uniform_int(rng, 0, dim);
        const RadonMeasure nu = gen_measure(rng, u.min_info().value - 0.5, true);
        const ValuationOracle oracle = make_oracle(IntegralValuation(k, nu), dim);
        worst_hom_val =
            std::max(worst_hom_val, check_homogeneity(oracle, u, {0.5, 1.0, 2.0, 4.0}, k));
        const double mis = check_homogeneity(oracle, u, {2.0}, k + 1);
        if (mis < 0.5 - 1e-9) worst_misorder = std::max(worst_misorder, 0.5 - mis);
    }
    run.record("integral_valuation_homogeneity", std::min<long>(trials, 20), worst_hom_val, 1e-8);
    run.record("misordered_homogeneity_fails", std::min<long>(trials, 20), worst_misorder, 1e-9);

    // Density recovery, mollification consistency, monotonicity, exhaustion.
    double worst_recover = 0.0;
    for (int k = 0; k <= 3; ++k) {
        const RadonMeasure nu = gen_measure(rng, -0.5, true);
        const ValuationOracle oracle = make_oracle(IntegralValuation(k, nu), 3);
        for (int g = 0; g < 16; ++g) {
            const double t = -1.0 + 4.0 * g / 15.0;
            const GeometricDensities d = recover_densities(oracle, t, 1.0);
            for (int j = 0; j <= 3; ++j) {
                const double expect = j == k ? nu.tail(t) : 0.0;
                worst_recover = std::max(worst_recover, std::abs(d[j] - expect));
            }
        }
    }
    run.record("density_recovery", 4 * 16, worst_recover, 1e-8);

    double worst_mollify = 0.0;
    {
        const double eps = 0.1;
        const RadonMeasure nu = gen_measure(rng, -0.5, false);
        const IntegralValuation val(2, nu);
        const ValuationOracle oracle = make_oracle(val, 2);
        const ValuationOracle smooth = mollified_valuation(oracle, eps, 32);
        const DensityFn direct = mollify(val.density(), eps, 32);
        // Probe away from the density breakpoints so the opaque-oracle
        // quadrature integrates a smooth window.
        const std::vector<double> bps = nu.critical_points();
        int used = 0;
        for (double t = -1.5; t <= 3.5 && used < 8; t += 0.05) {
            double dist = 1e9;
            for (double b : bps) dist = std::min(dist, std::abs(t - b));
            if (dist <= 1.5 * eps) continue;
            const GeometricDensities d = recover_densities(smooth, t, 1.0);
            worst_mollify = std::max(worst_mollify, std::abs(d[2] - direct(t)));
            ++used;
        }
    }
    run.record("mollified_densities", 8, worst_mollify, 1e-6);

    long mono_violations = 0;
    double worst_mcont = 0.0;
    for (long trial = 0; trial < std::min<long>(trials, 25); ++trial) {
        const int dim = 1 + static_cast<int>(trial % 2);
        GenConfig cfg;
        cfg.seed = rng();
        cfg.dim = dim;
        cfg.kind = DomainKind::Free;
        const ConvexFn u = gen_convex_fn(cfg);
        const RadonMeasure nu = gen_measure(rng, u.min_info().value - 0.5, true);
        const ValuationOracle oracle = make_oracle(IntegralValuation(dim, nu), dim);
        std::vector<std::pair<ConvexFn, ConvexFn>> pairs;
        pairs.emplace_back(u.add_constant(uniform(rng, 0.1, 1.0)), u);
        // u plus max(0, w.x + c), assembled as the summed piece list.
        Vec w = Vec::zero(dim);
        for (int j = 0; j < dim; ++j) w[j] = uniform(rng, -0.5, 0.5);
        const double c = uniform(rng, 0.0, 0.5);
        std::vector<AffinePiece> summed;
        for (const AffinePiece& p : u.pieces()) {
            summed.push_back(p);
            summed.push_back({p.slope + w, p.intercept + c});
        }
        pairs.emplace_back(ConvexFn::make(dim, summed, u.domain()), u);
        mono_violations += check_monotone(oracle, pairs);

        std::vector<Polytope> exhaustion;
        for (const double r : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
            Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
            for (int j = 0; j < dim; ++j) {
                lo[j] = -r;
                hi[j] = r;
            }
            exhaustion.push_back(Polytope::box(lo, hi));
        }
        const auto diffs = check_mcontinuity(oracle, u, exhaustion);
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
            worst_mcont = std::max(worst_mcont, diffs[i + 1] - diffs[i] - 1e-12);
        worst_mcont = std::max(worst_mcont, diffs.back() - 1e-6);
    }
    run.record("monotone_pairs", std::min<long>(trials, 25) * 2, double(mono_violations), 0.5);
    run.record("m_continuity_exhaustion", std::min<long>(trials, 25), std::max(0.0, worst_mcont),
               1e-6);

    // A light Steiner cross-check of the intrinsic volumes.
    {
        std::mt19937_64 local(rng());
        Vec lo = Vec::zero(3), hi = Vec::zero(3);
        for (int j = 0; j < 3; ++j) {
            lo[j] = 0.0;
            hi[j] = uniform(local, 0.6, 1.8);
        }
        const Polytope box = Polytope::box(lo, hi);
        const auto fit = steiner_fit(box, {0.25, 0.5, 1.0, 2.0}, 1000000, local());
        double worst = 0.0;
        for (int k = 0; k <= 3; ++k)
            worst = std::max(worst, std::abs(fit[k] - box.intrinsic_volumes()[k]) /
                                        (1.0 + box.intrinsic_volumes()[k]));
        run.record("steiner_fit_boxes", 4, worst, 0.02);
    }
}

} // namespace

SuiteReport run_suite(const std::string& name, long trials, std::uint64_t seed, double tol_override) {
    if (trials <= 0) throw BadConfigError("run_suite: trials must be positive");
    SuiteRun run;
    run.tol_override = tol_override;
    run.report.suite = name;
    run.report.seed = seed;
    run.report.trials = trials;
    run.report.tol_override = tol_override;
    std::ostringstream stamp;
    stamp << name << '|' << trials << '|' << seed << '|' << tol_override;
    run.report.input_hash = fnv1a(stamp.str());

    std::mt19937_64 rng(seed);
    if (name == "routes") {
        routes_suite(run, trials, rng);
    } else if (name == "lattice") {
        lattice_suite(run, trials, rng);
    } else if (name == "partitions") {
        partitions_suite(run, trials, rng);
    } else if (name == "undergraph") {
        undergraph_suite(run, trials, rng);
    } else if (name == "all") {
        routes_suite(run, trials, rng);
        lattice_suite(run, trials, rng);
        partitions_suite(run, trials, rng);
        undergraph_suite(run, trials, rng);
        extras_suite(run, trials, rng);
    } else {
        throw BadConfigError("run_suite: unknown suite '" + name + "'");
    }
    return run.report;
}

} // namespace funcval
