#include "funcval/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace funcval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(const std::vector<double>& coef, double t) { return polyval(coef, t); }

/// integral of the polynomial over [a, b].
double poly_integral(const std::vector<double>& coef, double a, double b) {
    if (!(b > a)) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < coef.size(); ++j)
        acc += coef[j] / (j + 1) * (std::pow(b, double(j + 1)) - std::pow(a, double(j + 1)));
    return acc;
}

/// integral of t^k * poly(t) over [a, b].
double poly_moment_integral(const std::vector<double>& coef, int k, double a, double b) {
    if (!(b > a)) return 0.0;
    std::vector<double> shifted(coef.size() + k, 0.0);
    for (std::size_t j = 0; j < coef.size(); ++j) shifted[j + k] = coef[j];
    return poly_integral(shifted, a, b);
}

} // namespace

RadonMeasure RadonMeasure::make(std::vector<MeasureAtom> atoms, std::vector<PolyDensity> pieces,
                                std::optional<ExpTailDensity> exp_tail) {
    for (const MeasureAtom& a : atoms)
        if (a.weight < 0) throw std::invalid_argument("RadonMeasure: negative atom weight");
    std::sort(pieces.begin(), pieces.end(), [](const PolyDensity& a, const PolyDensity& b) {
        return a.lo < b.lo;
    });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const PolyDensity& p = pieces[i];
        if (!(p.hi > p.lo)) throw std::invalid_argument("RadonMeasure: empty density interval");
        for (int g = 0; g < 32; ++g) {
            const double t = p.lo + (p.hi - p.lo) * (g + 0.5) / 32.0;
            if (poly_eval(p.coef, t) < -1e-12)
                throw std::invalid_argument("RadonMeasure: density is negative");
        }
        if (i + 1 < pieces.size() && pieces[i + 1].lo < p.hi - 1e-12)
            throw std::invalid_argument("RadonMeasure: overlapping density segments");
    }
    if (exp_tail) {
        if (exp_tail->scale < 0) throw std::invalid_argument("RadonMeasure: negative tail scale");
        for (const PolyDensity& p : pieces)
            if (p.hi > exp_tail->lo + 1e-12)
                throw std::invalid_argument("RadonMeasure: density overlaps the exponential tail");
    }
    std::sort(atoms.begin(), atoms.end(), [](const MeasureAtom& a, const MeasureAtom& b) {
        return a.location < b.location;
    });
    RadonMeasure nu;
    nu.atoms_ = std::move(atoms);
    nu.pieces_ = std::move(pieces);
    nu.exp_tail_ = exp_tail;
    return nu;
}

RadonMeasure RadonMeasure::dirac(double location, double weight) {
    return make({{location, weight}}, {});
}

RadonMeasure RadonMeasure::lebesgue(double lo, double hi) { return make({}, {{lo, hi, {1.0}}}); }

RadonMeasure RadonMeasure::exponential(double lo, double scale) {
    return make({}, {}, ExpTailDensity{lo, scale});
}

double RadonMeasure::tail(double t) const {
    double acc = 0.0;
    for (const MeasureAtom& a : atoms_)
        if (a.location > t) acc += a.weight;
    for (const PolyDensity& p : pieces_) acc += poly_integral(p.coef, std::max(p.lo, t), p.hi);
    if (exp_tail_ && exp_tail_->scale > 0)
        acc += exp_tail_->scale * std::exp(-std::max(exp_tail_->lo, t));
    return acc;
}

double RadonMeasure::moment(int k) const {
    double acc = 0.0;
    for (const MeasureAtom& a : atoms_)
        if (a.location > 0) acc += a.weight * std::pow(a.location, double(k));
    for (const PolyDensity& p : pieces_)
        acc += poly_moment_integral(p.coef, k, std::max(p.lo, 0.0), p.hi);
    if (exp_tail_ && exp_tail_->scale > 0)
        acc += exp_tail_->scale * upper_gamma_int(k, std::max(exp_tail_->lo, 0.0));
    return acc;
}

std::vector<double> RadonMeasure::critical_points() const {
    std::vector<double> pts;
    for (const MeasureAtom& a : atoms_) pts.push_back(a.location);
    for (const PolyDensity& p : pieces_) {
        pts.push_back(p.lo);
        pts.push_back(p.hi);
    }
    if (exp_tail_) pts.push_back(exp_tail_->lo);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
              pts.end());
    return pts;
}

double DensitySegment::value(double t) const { return polyval(poly, t) + expc * std::exp(-t); }

DensityFn DensityFn::tail_of(const RadonMeasure& nu) {
    DensityFn f;
    f.breakpoints_ = nu.critical_points();
    const auto& bps = f.breakpoints_;
    // One segment per gap, including (-inf, first) and [last, inf).
    for (std::size_t i = 0; i <= bps.size(); ++i) {
        DensitySegment seg;
        seg.lo = (i == 0) ? -kInf : bps[i - 1];
        seg.hi = (i == bps.size()) ? kInf : bps[i];
        // Atoms strictly above the segment contribute a constant.
        double constant = 0.0;
        for (const MeasureAtom& a : nu.atoms())
            if (a.location > seg.lo) constant += a.weight;
        std::vector<double> poly{0.0};
        for (const PolyDensity& p : nu.pieces()) {
            if (p.hi <= seg.lo + 1e-12) continue;
            if (p.lo >= seg.hi - 1e-12) {
                constant += poly_integral(p.coef, p.lo, p.hi);
            } else {
                // Piece covers this gap: contributes P(hi) - P(t).
                double at_hi = 0.0;
                for (std::size_t j = 0; j < p.coef.size(); ++j) {
                    const double c = p.coef[j] / (j + 1);
                    at_hi += c * std::pow(p.hi, double(j + 1));
                    if (poly.size() < j + 2) poly.resize(j + 2, 0.0);
                    poly[j + 1] -= c;
                }
                constant += at_hi;
            }
        }
        if (nu.exp_tail() && nu.exp_tail()->scale > 0) {
            if (nu.exp_tail()->lo >= seg.hi - 1e-12)
                constant += nu.exp_tail()->scale * std::exp(-nu.exp_tail()->lo);
            else
                seg.expc += nu.exp_tail()->scale;
        }
        poly[0] += constant;
        seg.poly = std::move(poly);
        f.segments_.push_back(std::move(seg));
    }
    return f;
}

DensityFn DensityFn::from_callable(std::function<double(double)> fn, std::vector<double> breakpoints) {
    DensityFn f;
    f.callable_ = std::move(fn);
    std::sort(breakpoints.begin(), breakpoints.end());
    f.breakpoints_ = std::move(breakpoints);
    return f;
}

double DensityFn::operator()(double t) const {
    if (callable_) return callable_(t);
    std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin();
    return segments_[i].value(t);
}

double DensityFn::tail_exp_coefficient() const {
    if (callable_ || segments_.empty()) return 0.0;
    return segments_.back().expc;
}

double equivalent_f_condition(const DensityFn& f, int k) {
    if (k < 1) throw std::invalid_argument("equivalent_f_condition: k must be >= 1");
    if (!f.structured())
        throw std::invalid_argument("equivalent_f_condition: needs a structured density");
    double acc = 0.0;
    for (const DensitySegment& seg : f.segments()) {
        const double a = std::max(seg.lo, 0.0);
        const double b = seg.hi;
        if (!(b > a)) continue;
        if (std::isinf(b)) {
            // Past the last breakpoint only the exponential part survives.
            for (double c : seg.poly)
                if (std::abs(c) > 1e-12)
                    throw std::runtime_error("equivalent_f_condition: divergent integral");
            if (seg.expc > 0) acc += seg.expc * upper_gamma_int(k - 1, a);
            continue;
        }
        std::vector<double> shifted(seg.poly.size() + (k - 1), 0.0);
        for (std::size_t j = 0; j < seg.poly.size(); ++j) shifted[j + (k - 1)] = seg.poly[j];
        acc += poly_integral(shifted, a, b);
        if (seg.expc != 0.0)
            acc += seg.expc * (upper_gamma_int(k - 1, a) - upper_gamma_int(k - 1, b));
    }
    return acc;
}

namespace {

double bump_normalization() {
    // Composite 64-point panels; the integrand is flat at the endpoints, so a
    // single panel stalls around 1e-8 while eight reach machine precision.
    static const double c = [] {
        double mass = 0.0;
        for (int i = 0; i < 8; ++i)
            mass += gauss_panel(-1.0 + 0.25 * i, -1.0 + 0.25 * (i + 1), 64, [](double t) {
                const double d = 1.0 - t * t;
                return d > 0 ? std::exp(-1.0 / d) : 0.0;
            });
        return 1.0 / mass;
    }();
    return c;
}

} // namespace

double bump_kernel(double t) {
    const double d = 1.0 - t * t;
    if (d <= 0) return 0.0;
    return bump_normalization() * std::exp(-1.0 / d);
}

DensityFn mollify(const DensityFn& f, double eps, int quad_points) {
    if (eps <= 0) throw std::invalid_argument("mollify: eps must be positive");
    if (quad_points < 4) throw std::invalid_argument("mollify: too few quadrature points");
    std::vector<double> bps = f.breakpoints();
    auto smooth = [f, eps, quad_points, bps](double t) {
        // (f * g_eps)(t) = integral of f(s) g_eps(t - s) over s in [t-eps, t+eps],
        // panels split at the breakpoints of f.
        std::vector<double> cuts{t - eps, t + eps};
        for (double b : bps)
            if (b > t - eps && b < t + eps) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        double acc = 0.0;
        const double chunk = eps / 4.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double lo = cuts[i];
            while (lo < cuts[i + 1] - 1e-15) {
                const double hi = std::min(cuts[i + 1], lo + chunk);
                acc += gauss_panel(lo, hi, quad_points, [&](double s) {
                    return f(s) * bump_kernel((t - s) / eps) / eps;
                });
                lo = hi;
            }
        }
        return acc;
    };
    return DensityFn::from_callable(smooth, bps);
}

} // namespace funcval
