#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "funcval/numerics.hpp"

namespace funcval {

struct MeasureAtom {
    double location = 0.0;
    double weight = 0.0;
};

/// Polynomial density sum_j coef[j] t^j on [lo, hi].
struct PolyDensity {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> coef;
};

/// Density scale * e^{-t} on [lo, infinity).
struct ExpTailDensity {
    double lo = 0.0;
    double scale = 0.0;
};

/// Non-negative Radon measure on R: atoms plus piecewise-polynomial density
/// plus at most one exponential tail. Closed under every integral the
/// valuations need, in closed form.
class RadonMeasure {
  public:
    static RadonMeasure make(std::vector<MeasureAtom> atoms, std::vector<PolyDensity> pieces,
                             std::optional<ExpTailDensity> exp_tail = std::nullopt);
    static RadonMeasure dirac(double location, double weight = 1.0);
    static RadonMeasure lebesgue(double lo, double hi);
    static RadonMeasure exponential(double lo = 0.0, double scale = 1.0);

    const std::vector<MeasureAtom>& atoms() const { return atoms_; }
    const std::vector<PolyDensity>& pieces() const { return pieces_; }
    const std::optional<ExpTailDensity>& exp_tail() const { return exp_tail_; }

    /// f(t) = nu((t, infinity)); right-continuous by the strict inequality.
    double tail(double t) const;

    /// integral over (0, infinity) of t^k d nu.
    double moment(int k) const;

    double total_mass() const { return tail(-std::numeric_limits<double>::infinity()); }

    /// Atom locations and density segment edges, sorted.
    std::vector<double> critical_points() const;

  private:
    std::vector<MeasureAtom> atoms_;
    std::vector<PolyDensity> pieces_;
    std::optional<ExpTailDensity> exp_tail_;
};

/// Piece of a decreasing right-continuous density function:
/// f(t) = poly(t) + expc * e^{-t} on [lo, hi).
struct DensitySegment {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> poly;
    double expc = 0.0;
    double value(double t) const;
};

/// f: R -> [0, inf), decreasing and right-continuous. Either structured
/// (exact segments, as produced from a measure tail) or a sampled callable
/// (as produced by mollification).
class DensityFn {
  public:
    static DensityFn tail_of(const RadonMeasure& nu);
    static DensityFn from_callable(std::function<double(double)> fn, std::vector<double> breakpoints);

    double operator()(double t) const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool structured() const { return !segments_.empty() || callable_ == nullptr; }
    const std::vector<DensitySegment>& segments() const { return segments_; }

    /// Coefficient of e^{-t} past the last breakpoint (0 for compact support).
    double tail_exp_coefficient() const;

  private:
    std::vector<double> breakpoints_;
    std::vector<DensitySegment> segments_; // cover (-inf, inf) between breakpoints
    std::function<double(double)> callable_;
};

/// integral over (0,inf) of t^{k-1} f(t) dt, exact for structured f; equals
/// moment(nu, k) / k when f = tail(nu, .).
double equivalent_f_condition(const DensityFn& f, int k);

/// Smooth bump kernel supported on [-1,1], normalized to unit mass; the
/// normalization constant is fixed by 64-point quadrature.
double bump_kernel(double t);

/// Convolution f * g_eps sampled by Gauss-Legendre panels split at the
/// breakpoints of f.
DensityFn mollify(const DensityFn& f, double eps, int quad_points);

} // namespace funcval
