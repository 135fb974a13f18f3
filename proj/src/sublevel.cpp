#include "funcval/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace funcval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Halfspace> sublevel_halfspaces(const ConvexFn& u, double t) {
    std::vector<Halfspace> hs = u.domain();
    for (const AffinePiece& p : u.pieces()) hs.push_back({p.slope, t - p.intercept});
    return hs;
}

/// Levels of u at the vertices of the arrangement of piece-equality loci and
/// domain facet planes; between consecutive values the active-constraint
/// combinatorics of the sub-level sets is constant. An arrangement vertex is
/// a combinatorial event of K_t only when every piece involved in a chosen
/// equality locus actually attains the max there, so the rest are pruned.
std::vector<double> arrangement_levels(const ConvexFn& u) {
    const int d = u.dim();
    struct Plane {
        Halfspace h;
        int piece_a = -1; // -1 for domain facets
        int piece_b = -1;
    };
    std::vector<Plane> planes;
    const auto& pieces = u.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            Vec n = pieces[i].slope - pieces[j].slope;
            if (n.norm() > 1e-12)
                planes.push_back({{n, pieces[j].intercept - pieces[i].intercept},
                                  static_cast<int>(i), static_cast<int>(j)});
        }
    for (const Halfspace& h : u.domain()) planes.push_back({{h.normal, h.offset}, -1, -1});

    std::vector<double> levels{u.min_info().value};
    const int m = static_cast<int>(planes.size());
    std::vector<int> sel(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d) {
            double A[4][4] = {};
            double b[4] = {};
            for (int r = 0; r < d; ++r) {
                const Vec n = planes[sel[r]].h.normal;
                const double nn = n.norm();
                for (int c = 0; c < d; ++c) A[r][c] = n[c] / nn;
                b[r] = planes[sel[r]].h.offset / nn;
            }
            auto sol = solve_small(d, A, b);
            if (!sol) return;
            Vec x = Vec::zero(d);
            for (int c = 0; c < d; ++c) x[c] = (*sol)[c];
            const double v = u.evaluate(x);
            if (!std::isfinite(v)) return;
            const double tol = 1e-7 * (1.0 + std::abs(v));
            for (int r = 0; r < d; ++r) {
                if (planes[sel[r]].piece_a < 0) continue;
                if (pieces[planes[sel[r]].piece_a].value(x) < v - tol) return;
            }
            levels.push_back(v);
            return;
        }
        for (int i = start; i <= m - (d - depth); ++i) {
            sel[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    if (m >= d) rec(0, 0);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](double a, double b) { return std::abs(a - b) <= kIncidenceTol; }),
                 levels.end());
    return levels;
}

} // namespace

Polytope sublevel_closed(const ConvexFn& u, double t) {
    if (u.is_infty()) return Polytope::empty(u.dim());
    return Polytope::from_halfspaces(u.dim(), sublevel_halfspaces(u, t));
}

Polytope sublevel_strict_closure(const ConvexFn& u, double t) {
    if (u.is_infty() || t <= u.min_info().value) return Polytope::empty(u.dim());
    return sublevel_closed(u, t);
}

namespace detail {

LevelAnalysis::LevelAnalysis(ConvexFn u) : u_(std::move(u)) {
    if (u_.is_infty()) {
        m_ = kInf;
        return;
    }
    m_ = u_.min_info().value;
    argmin_volumes_ = u_.min_info().argmin.intrinsic_volumes();
    breakpoints_ = arrangement_levels(u_);
}

IntrinsicVolumes LevelAnalysis::volumes_at(double t) const {
    if (u_.is_infty() || t <= m_) return IntrinsicVolumes{u_.is_infty() ? 0 : u_.dim(), {0, 0, 0, 0}};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
    }
    IntrinsicVolumes iv = sublevel_closed(u_, t).intrinsic_volumes();
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(t, iv);
    return iv;
}

} // namespace detail

SublevelProfile::SublevelProfile(std::shared_ptr<detail::LevelAnalysis> shared, int k)
    : shared_(std::move(shared)), k_(k) {
    if (k_ < 0 || k_ > 3) throw std::invalid_argument("SublevelProfile: k out of range");
}

double SublevelProfile::value(double t) const { return shared_->volumes_at(t)[k_]; }

double SublevelProfile::derivative(double t, double lo, double hi) const {
    double h = 1e-6;
    if (t - lo < 2 * h) h = std::max((t - lo) / 2, 1e-9);
    if (hi - t < 2 * h) h = std::max(std::min(h, (hi - t) / 2), 1e-9);
    return (value(t + h) - value(t - h)) / (2 * h);
}

SublevelProfile profile(const ConvexFn& u, int k) {
    return SublevelProfile(std::make_shared<detail::LevelAnalysis>(u), k);
}

std::vector<SublevelProfile> profile_all(const ConvexFn& u) {
    auto shared = std::make_shared<detail::LevelAnalysis>(u);
    std::vector<SublevelProfile> out;
    for (int k = 0; k <= u.dim(); ++k) out.emplace_back(shared, k);
    return out;
}

double beta_integral(const ConvexFn& u, int k, const DensityFn& f) {
    if (u.is_infty()) return 0.0;
    return beta_integral(profile(u, k), f);
}

double beta_integral(const SublevelProfile& prof, const DensityFn& f) {
    const ConvexFn& u = prof.fn();
    if (u.is_infty()) return 0.0;
    const double m = prof.m_value();
    double total = f(m) * prof.atom_mass();
    if (prof.k() == 0) return total; // v_0 is flat above m(u)

    // Panel cuts: profile breakpoints and density breakpoints above m.
    std::vector<double> cuts{m};
    for (double b : prof.breakpoints())
        if (b > m) cuts.push_back(b);
    for (double b : f.breakpoints())
        if (b > m) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               cuts.end());

    auto panel = [&](double lo, double hi) {
        return gauss_panel(lo, hi, 24, [&](double t) { return f(t) * prof.derivative(t, lo, hi); });
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i];
        while (lo < cuts[i + 1] - 1e-14) {
            const double hi = std::min(cuts[i + 1], lo + 4.0);
            total += panel(lo, hi);
            lo = hi;
        }
    }

    // Exponential tail of f past the last cut, truncated once the remainder
    // bound drops below 1e-13 of the running total. The bound uses the
    // growth witness u >= a|x| + b: V_k(K_t) <= C(n,k) (2 (t-b) / a)^k.
    const double c = f.tail_exp_coefficient();
    if (c > 0) {
        const CoercivityWitness w = u.growth_witness();
        const double growth = binomial(u.dim(), prof.k()) * std::pow(2.0 / w.a, prof.k());
        double lo = cuts.back();
        for (int window = 0; window < 400; ++window) {
            const double bound = c * growth * std::exp(-w.b) * upper_gamma_int(prof.k(), lo - w.b);
            if (bound <= 1e-13 * (1.0 + std::abs(total))) break;
            total += panel(lo, lo + 4.0);
            lo += 4.0;
        }
    }
    return total;
}

} // namespace funcval
