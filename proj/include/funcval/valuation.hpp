#pragma once

#include <functional>

#include "funcval/sublevel.hpp"

namespace funcval {

struct DimensionMismatchError : std::invalid_argument {
    explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// mu(u) = integral of V_k(cl{u < t}) d nu(t). The measure class guarantees
/// the k-th moment is finite, so mu is defined on all of the function space.
class IntegralValuation {
  public:
    IntegralValuation(int k, RadonMeasure nu);
    int k() const { return k_; }
    const RadonMeasure& measure() const { return nu_; }
    const DensityFn& density() const { return f_; } // f(t) = nu((t, inf))

  private:
    int k_;
    RadonMeasure nu_;
    DensityFn f_;
};

/// Route 1: atoms against the strict-closure profile plus density quadrature
/// over breakpoint panels.
double eval_sublevel(const IntegralValuation& val, const ConvexFn& u);
double eval_sublevel(const IntegralValuation& val, const SublevelProfile& prof);

/// Route 2 (k = dim only): integral of f(u(x)) dx over the domain, cellwise
/// exact reduction to 1-D level-slice integrals.
double eval_layercake(const IntegralValuation& val, const ConvexFn& u);

/// Route 3: integral of f d beta_k(u; .).
double eval_beta(const IntegralValuation& val, const ConvexFn& u);
double eval_beta(const IntegralValuation& val, const SublevelProfile& prof);

/// k = 0 closed form: f(m(u)).
double eval_zero_homogeneous(const IntegralValuation& val, const ConvexFn& u);

/// Opaque valuation with declared properties; the checkers below test the
/// declarations, nothing is enforced.
struct ValuationOracle {
    int dim = 1;
    std::function<double(const ConvexFn&)> eval;
    bool invariant = true;
    bool monotone = true;
    bool m_continuous = true;
    bool simple = false;
    int homogeneous_order = -1; // -1: not declared homogeneous

    double operator()(const ConvexFn& u) const { return eval(u); }
};

ValuationOracle make_oracle(const IntegralValuation& val, int dim);

struct GeometricDensities {
    int n = 0;
    std::array<double, 4> f{0, 0, 0, 0};
    double operator[](int k) const { return f[static_cast<std::size_t>(k)]; }
};

/// Triangular solve of mu(t + I_K) = sum_k f_k(t) V_k(K) over boxes
/// K = point, segment, square, cube with side r. The densities exist for
/// invariant monotone valuations; for an oracle that is not actually a
/// valuation the returned numbers carry no meaning.
GeometricDensities recover_densities(const ValuationOracle& oracle, double t, double r);

/// mu_eps(u) = integral of mu(u - s) g_eps(s) ds by Gauss-Legendre.
ValuationOracle mollified_valuation(const ValuationOracle& oracle, double eps, int quad_points);

/// |mu(u v v) + mu(u ^ v) - mu(u) - mu(v)| on the glued family built from
/// (h, Q, split).
double check_valuation_identity(const ValuationOracle& oracle, const ConvexFn& h, const Polytope& q,
                                const Halfspace& split);

/// max over the lambda grid of |mu(u_lambda) - lambda^order mu(u)| relative
/// to |lambda^order mu(u)|.
double check_homogeneity(const ValuationOracle& oracle, const ConvexFn& u,
                         const std::vector<double>& lambdas, int order);

/// |mu(u + I_{P_i}) - mu(u)| along an exhaustion P_1 c P_2 c ...
std::vector<double> check_mcontinuity(const ValuationOracle& oracle, const ConvexFn& u,
                                      const std::vector<Polytope>& exhaustion);

/// Pairs (hi, lo) with hi >= lo pointwise; counts violations of
/// mu(hi) <= mu(lo) + 1e-10 and mu >= -1e-12.
int check_monotone(const ValuationOracle& oracle,
                   const std::vector<std::pair<ConvexFn, ConvexFn>>& pairs);

} // namespace funcval
