#pragma once

#include <random>
#include <string>

#include "funcval/partition.hpp"

namespace funcval {

struct BadConfigError : std::invalid_argument {
    explicit BadConfigError(const std::string& what) : std::invalid_argument(what) {}
};

enum class DomainKind { Box, Free, Simplex };

struct GenConfig {
    std::uint64_t seed = 1;
    int dim = 1;
    int pieces_min = 2;
    int pieces_max = 5;
    DomainKind kind = DomainKind::Box;
    double scale = 2.0;
};

/// Deterministic per config; free-domain outputs are made coercive by
/// augmenting with +-scale e_i slopes.
ConvexFn gen_convex_fn(const GenConfig& cfg);

/// Atoms plus a shifted nonnegative quadratic density near `anchor`,
/// optionally an exponential tail.
RadonMeasure gen_measure(std::mt19937_64& rng, double anchor, bool with_exp_tail);

/// Axis-aligned box partition grown by random cell splits; generally not
/// complete.
PolytopalPartition gen_rect_partition(std::mt19937_64& rng, int dim, int splits);

/// Length of the part of the graph of u (dim 1) lying strictly below level t.
/// For the |x| family this equals V_1(cl{u(x)+|y| < t}); when u drops below t
/// at a domain endpoint the lifted body gains a vertical side of height
/// 2(t - u) there, so the two quantities differ by the lid term.
double undergraph_valuation(const ConvexFn& u, double t);

/// V_1(cl{(u(x)+|y|) < t}) through the lift, for cross-checking.
double undergraph_lifted_v1(const ConvexFn& u, double t);

/// Sum of (t - u(e)) over sub-level endpoints e where u(e) < t.
double undergraph_lid_correction(const ConvexFn& u, double t);

struct UndergraphStudy {
    std::vector<double> lambdas;
    std::vector<double> values;          // V_1 of the lifted |x|/lambda family at level 1
    double max_formula_error = 0.0;      // against 2 sqrt(1 + lambda^2)
    double poly_fit_residual = 0.0;      // best degree-3 fit, max deviation
};
UndergraphStudy undergraph_lambda_sweep(const std::vector<double>& lambdas);

struct CheckResult {
    std::string name;
    long trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long trials = 0;
    double tol_override = 0.0;
    std::uint64_t input_hash = 0;
    std::vector<CheckResult> checks;
    bool pass = true;
};

/// Dispatches the named property suite: all | routes | lattice | partitions |
/// undergraph. tol_override > 0 replaces the per-check default tolerances.
SuiteReport run_suite(const std::string& name, long trials, std::uint64_t seed, double tol_override);

} // namespace funcval
