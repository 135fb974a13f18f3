#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "funcval/convex_fn.hpp"
#include "funcval/measure.hpp"

namespace funcval {

/// K_t = {u <= t}; bounded for every t by coercivity.
Polytope sublevel_closed(const ConvexFn& u, double t);

/// cl{u < t}: equals K_t for t > m(u) and is empty for t <= m(u).
Polytope sublevel_strict_closure(const ConvexFn& u, double t);

namespace detail {

/// Shared per-function level analysis: arrangement breakpoints plus a
/// memoized map t -> intrinsic volumes of cl{u < t}. Safe for concurrent
/// readers.
class LevelAnalysis {
  public:
    explicit LevelAnalysis(ConvexFn u);
    const ConvexFn& fn() const { return u_; }
    double m_value() const { return m_; }
    const IntrinsicVolumes& argmin_volumes() const { return argmin_volumes_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    IntrinsicVolumes volumes_at(double t) const;

  private:
    ConvexFn u_;
    double m_ = 0.0;
    IntrinsicVolumes argmin_volumes_;
    std::vector<double> breakpoints_;
    mutable std::mutex mutex_;
    mutable std::map<double, IntrinsicVolumes> cache_;
};

} // namespace detail

/// t -> v_k(u; t) = V_k(cl{u < t}), with the jump at m(u) carried separately
/// as the atom mass V_k(argmin).
class SublevelProfile {
  public:
    SublevelProfile(std::shared_ptr<detail::LevelAnalysis> shared, int k);

    int k() const { return k_; }
    double m_value() const { return shared_->m_value(); }
    double atom_mass() const { return shared_->argmin_volumes()[k_]; }
    const std::vector<double>& breakpoints() const { return shared_->breakpoints(); }
    const ConvexFn& fn() const { return shared_->fn(); }

    double value(double t) const; // 0 for t <= m(u)

    /// Centered difference of value() with step <= 1e-6, clipped to stay
    /// inside (lo, hi).
    double derivative(double t, double lo, double hi) const;

  private:
    std::shared_ptr<detail::LevelAnalysis> shared_;
    int k_;
};

SublevelProfile profile(const ConvexFn& u, int k);

/// Profiles for k = 0..dim sharing one memoized analysis.
std::vector<SublevelProfile> profile_all(const ConvexFn& u);

/// integral of f d beta_k(u; .) = f(m) V_k(argmin) + integral of f v_k' dt.
double beta_integral(const ConvexFn& u, int k, const DensityFn& f);
double beta_integral(const SublevelProfile& prof, const DensityFn& f);

} // namespace funcval
