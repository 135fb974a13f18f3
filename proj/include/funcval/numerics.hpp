#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace funcval {

// Global geometric tolerances (see geometry.hpp for how they are applied).
constexpr double kIncidenceTol = 1e-9;     // vertex/halfspace incidence, dedup
constexpr double kOrthogonalityTol = 1e-12; // rotation matrix orthogonality
constexpr double kTinyPivot = 1e-11;       // singularity cutoff in small solves

/// Solves A x = b for n <= 4 by Gaussian elimination with partial pivoting.
/// Returns nullopt when the system is (numerically) singular.
std::optional<std::array<double, 4>> solve_small(int n, const double A[4][4], const double b[4]);

/// Gauss-Legendre nodes and weights on [-1,1]; cached per point count.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int points);

/// Integrates fn over [lo,hi] with a single Gauss-Legendre panel.
template <typename F>
double gauss_panel(double lo, double hi, int points, F&& fn) {
    if (!(hi > lo)) return 0.0;
    const GaussRule& rule = gauss_legendre(points);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * fn(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Least-squares polynomial fit of given degree; returns coefficients
/// (ascending powers). Uses normal equations, adequate for degree <= 5.
std::vector<double> polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree);

double polyval(const std::vector<double>& coef, double x);

/// k! * e^{-a} * sum_{j<=k} a^j / j!  ==  integral_a^inf t^k e^{-t} dt  (a >= 0).
double upper_gamma_int(int k, double a);

double binomial(int n, int k);

/// FNV-1a over a byte string; used for reproducibility stamps in reports.
std::uint64_t fnv1a(const std::string& bytes);

} // namespace funcval
