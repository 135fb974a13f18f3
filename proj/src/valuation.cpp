#include "funcval/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace funcval {

namespace {

/// Bound on integral_T^inf V_k(K_t) e^{-t} dt from the growth witness
/// u >= a|x| + b: the sub-level at t fits in a box of half-side (t-b)/a, so
/// V_k <= C(n,k) (2(t-b)/a)^k.
double sublevel_exp_tail_bound(const CoercivityWitness& w, int dim, int k, double t_from) {
    const double growth = binomial(dim, k) * std::pow(2.0 / w.a, k);
    return growth * std::exp(-w.b) * upper_gamma_int(k, std::max(t_from - w.b, 0.0));
}

} // namespace

IntegralValuation::IntegralValuation(int k, RadonMeasure nu)
    : k_(k), nu_(std::move(nu)), f_(DensityFn::tail_of(nu_)) {
    if (k_ < 0 || k_ > 3) throw std::invalid_argument("IntegralValuation: k out of range");
    if (!std::isfinite(nu_.moment(k_)))
        throw std::invalid_argument("IntegralValuation: k-th moment is not finite");
}

double eval_sublevel(const IntegralValuation& val, const ConvexFn& u) {
    if (u.is_infty()) return 0.0;
    return eval_sublevel(val, profile(u, val.k()));
}

double eval_sublevel(const IntegralValuation& val, const SublevelProfile& prof) {
    const ConvexFn& u = prof.fn();
    if (u.is_infty()) return 0.0;
    const double m = prof.m_value();
    const RadonMeasure& nu = val.measure();

    double total = 0.0;
    for (const MeasureAtom& a : nu.atoms())
        if (a.location > m) total += a.weight * prof.value(a.location);

    auto panel_cuts = [&](double lo, double hi) {
        std::vector<double> cuts{lo, hi};
        for (double b : prof.breakpoints())
            if (b > lo && b < hi) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        return cuts;
    };
    auto integrate = [&](double lo, double hi, auto density) {
        double acc = 0.0;
        const std::vector<double> cuts = panel_cuts(lo, hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i];
            while (a < cuts[i + 1] - 1e-14) {
                const double b = std::min(cuts[i + 1], a + 4.0);
                acc += gauss_panel(a, b, 24, [&](double t) { return density(t) * prof.value(t); });
                a = b;
            }
        }
        return acc;
    };

    for (const PolyDensity& p : nu.pieces()) {
        const double lo = std::max(p.lo, m);
        if (p.hi > lo) total += integrate(lo, p.hi, [&](double t) { return polyval(p.coef, t); });
    }
    if (nu.exp_tail() && nu.exp_tail()->scale > 0) {
        const double c = nu.exp_tail()->scale;
        const CoercivityWitness w = u.growth_witness();
        double lo = std::max(nu.exp_tail()->lo, m);
        for (int window = 0; window < 500; ++window) {
            if (c * sublevel_exp_tail_bound(w, u.dim(), prof.k(), lo) <=
                1e-13 * (1.0 + std::abs(total)))
                break;
            total += integrate(lo, lo + 4.0, [&](double t) { return c * std::exp(-t); });
            lo += 4.0;
        }
    }
    return total;
}

double eval_layercake(const IntegralValuation& val, const ConvexFn& u) {
    if (u.is_infty()) return 0.0;
    if (val.k() != u.dim())
        throw DimensionMismatchError("eval_layercake: requires k = ambient dimension");
    const int n = u.dim();
    const DensityFn& f = val.density();
    const double m = u.min_info().value;

    // Degenerate domains contribute nothing to a simple valuation.
    if (sublevel_closed(u, m + 1.0).affine_dim() < n) return 0.0;

    const double c_exp = f.tail_exp_coefficient();
    const double support_hi = f.breakpoints().empty() ? m : f.breakpoints().back();

    const auto& pieces = u.pieces();
    double total = 0.0;

    // Flat pieces carry their whole dominance cell at one level.
    std::vector<int> sloped;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::vector<Halfspace> planes = u.domain();
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (j == i) continue;
            planes.push_back({pieces[j].slope - pieces[i].slope,
                              pieces[i].intercept - pieces[j].intercept});
        }
        if (pieces[i].slope.norm() <= 1e-12) {
            const Polytope cell = Polytope::from_halfspaces(n, planes);
            if (!cell.is_empty() && cell.affine_dim() == n)
                total += f(pieces[i].intercept) * cell.intrinsic_volumes()[n];
        } else {
            sloped.push_back(static_cast<int>(i));
        }
    }

    // Sloped cells, integrated band by band against level slices:
    // on the cell of piece (a, b), dx = H^{n-1}(slice_t) / |a| dt.
    const CoercivityWitness witness = u.growth_witness();
    const double band_width = 4.0;
    double lo = m;
    bool any_alive = !sloped.empty();
    for (int band = 0; band < 500 && any_alive; ++band) {
        const double hi = lo + band_width;
        if (c_exp == 0.0 && lo >= support_hi) break;
        if (c_exp > 0.0 && lo > support_hi &&
            c_exp * sublevel_exp_tail_bound(witness, n, n, lo) <= 1e-13 * (1.0 + std::abs(total)))
            break;
        bool saw_cells = false;
        for (int i : sloped) {
            const AffinePiece& piece = pieces[i];
            std::vector<Halfspace> planes = u.domain();
            for (std::size_t j = 0; j < pieces.size(); ++j) {
                if (static_cast<int>(j) == i) continue;
                planes.push_back({pieces[j].slope - piece.slope,
                                  piece.intercept - pieces[j].intercept});
            }
            planes.push_back({piece.slope, hi - piece.intercept});
            planes.push_back({piece.slope * -1.0, -(lo - piece.intercept)});
            const Polytope slab = Polytope::from_halfspaces(n, planes);
            if (slab.is_empty() || slab.affine_dim() < n) continue;
            saw_cells = true;
            std::vector<double> cuts{lo, hi};
            for (const Vec& v : slab.vertices()) cuts.push_back(piece.value(v));
            for (double b : f.breakpoints())
                if (b > lo && b < hi) cuts.push_back(b);
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end(),
                                   [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
                       cuts.end());
            const double inv_grad = 1.0 / piece.slope.norm();
            for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
                if (cuts[s + 1] < lo || cuts[s] > hi) continue;
                total += gauss_panel(std::max(cuts[s], lo), std::min(cuts[s + 1], hi), 10,
                                     [&](double t) {
                                         std::vector<Halfspace> sl = slab.halfspaces();
                                         sl.push_back({piece.slope, t - piece.intercept});
                                         sl.push_back({piece.slope * -1.0, -(t - piece.intercept)});
                                         const Polytope slice = Polytope::from_halfspaces(n, sl);
                                         return f(t) * slice.intrinsic_volumes()[n - 1] * inv_grad;
                                     });
            }
        }
        // Once past every bounded cell with no tail left, stop.
        if (!saw_cells && c_exp == 0.0 && lo > support_hi) any_alive = false;
        if (!saw_cells && band > 0 && lo > m + 1e3) any_alive = false;
        lo = hi;
    }
    return total;
}

double eval_beta(const IntegralValuation& val, const ConvexFn& u) {
    if (u.is_infty()) return 0.0;
    return beta_integral(u, val.k(), val.density());
}

double eval_beta(const IntegralValuation& val, const SublevelProfile& prof) {
    return beta_integral(prof, val.density());
}

double eval_zero_homogeneous(const IntegralValuation& val, const ConvexFn& u) {
    if (val.k() != 0) throw DimensionMismatchError("eval_zero_homogeneous: requires k = 0");
    if (u.is_infty()) return 0.0;
    return val.measure().tail(u.min_info().value);
}

ValuationOracle make_oracle(const IntegralValuation& val, int dim) {
    ValuationOracle o;
    o.dim = dim;
    o.simple = (val.k() == dim);
    o.homogeneous_order = val.k();
    o.eval = [val](const ConvexFn& u) { return eval_sublevel(val, u); };
    return o;
}

GeometricDensities recover_densities(const ValuationOracle& oracle, double t, double r) {
    if (r <= 0) throw std::invalid_argument("recover_densities: r must be positive");
    if (r < 1e-3)
        std::cerr << "recover_densities: warning, r below 1e-3 is ill-conditioned\n";
    const int n = oracle.dim;
    GeometricDensities out;
    out.n = n;
    // mu(t + I_K) for K = point, segment, square, cube of side r; each box
    // adds exactly one new intrinsic volume, so the system is triangular.
    auto mu_box = [&](int box_dim) {
        Vec lo = Vec::zero(n), hi = Vec::zero(n);
        for (int i = 0; i < box_dim; ++i) hi[i] = r;
        return oracle(ConvexFn::shifted_indicator(t, Polytope::box(lo, hi)));
    };
    out.f[0] = mu_box(0);
    if (n >= 1) out.f[1] = (mu_box(1) - out.f[0]) / r;
    if (n >= 2) out.f[2] = (mu_box(2) - out.f[0] - 2 * r * out.f[1]) / (r * r);
    if (n >= 3)
        out.f[3] = (mu_box(3) - out.f[0] - 3 * r * out.f[1] - 3 * r * r * out.f[2]) / (r * r * r);
    return out;
}

ValuationOracle mollified_valuation(const ValuationOracle& oracle, double eps, int quad_points) {
    if (eps <= 0) throw std::invalid_argument("mollified_valuation: eps must be positive");
    ValuationOracle out = oracle;
    out.eval = [oracle, eps, quad_points](const ConvexFn& u) {
        if (u.is_infty()) return 0.0;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += gauss_panel(-eps + eps * i / 4.0, -eps + eps * (i + 1) / 4.0, quad_points,
                               [&](double s) {
                                   return oracle(u.add_constant(-s)) * bump_kernel(s / eps) / eps;
                               });
        return acc;
    };
    return out;
}

double check_valuation_identity(const ValuationOracle& oracle, const ConvexFn& h, const Polytope& q,
                                const Halfspace& split) {
    const GluedQuadruple g = meet_glued(h, q, split);
    return std::abs(oracle(g.join) + oracle(g.meet) - oracle(g.u) - oracle(g.v));
}

double check_homogeneity(const ValuationOracle& oracle, const ConvexFn& u,
                         const std::vector<double>& lambdas, int order) {
    const double base = oracle(u);
    double worst = 0.0;
    for (double lambda : lambdas) {
        const double scaled = oracle(u.scale_horizontal(lambda));
        const double expected = std::pow(lambda, order) * base;
        const double denom = std::abs(expected) > 1e-12 ? std::abs(expected) : 1.0;
        worst = std::max(worst, std::abs(scaled - expected) / denom);
    }
    return worst;
}

std::vector<double> check_mcontinuity(const ValuationOracle& oracle, const ConvexFn& u,
                                      const std::vector<Polytope>& exhaustion) {
    const double limit = oracle(u);
    std::vector<double> diffs;
    for (const Polytope& p : exhaustion)
        diffs.push_back(std::abs(oracle(add(u, ConvexFn::indicator(p))) - limit));
    return diffs;
}

int check_monotone(const ValuationOracle& oracle,
                   const std::vector<std::pair<ConvexFn, ConvexFn>>& pairs) {
    int violations = 0;
    for (const auto& [hi, lo] : pairs) {
        const double mu_hi = oracle(hi), mu_lo = oracle(lo);
        if (mu_hi > mu_lo + 1e-10) ++violations;
        if (mu_hi < -1e-12 || mu_lo < -1e-12) ++violations;
    }
    return violations;
}

} // namespace funcval
