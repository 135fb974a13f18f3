#pragma once

#include <optional>
#include <vector>

#include "funcval/geometry.hpp"

namespace funcval {

struct CoercivityError : std::runtime_error {
    explicit CoercivityError(const std::string& what) : std::runtime_error(what) {}
};

struct AffinePiece {
    Vec slope;
    double intercept = 0.0;
    double value(const Vec& x) const { return slope.dot(x) + intercept; }
};

struct MinInfo {
    double value = 0.0;
    Polytope argmin; // the sub-level set at the minimum value
};

struct CoercivityWitness {
    bool coercive = false;
    double a = 0.0; // u(x) >= a|x| + b everywhere
    double b = 0.0;
};

/// Max-affine convex function with an optional halfspace-constrained domain
/// (empty constraint list = all of R^n). Coercivity is required at
/// construction: the recession cone of {domain normals, slopes} must be
/// trivial. The function identically +infinity is a distinguished value.
class ConvexFn {
  public:
    /// Throws CoercivityError when the data describe a non-coercive function
    /// with nonempty domain. An empty domain yields the infinity element.
    static ConvexFn make(int dim, std::vector<AffinePiece> pieces, std::vector<Halfspace> domain);
    static ConvexFn infinity(int dim);
    static ConvexFn indicator(const Polytope& body);                     // I_K
    static ConvexFn shifted_indicator(double level, const Polytope& body); // t + I_K

    int dim() const { return dim_; }
    bool is_infty() const { return infty_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    const std::vector<Halfspace>& domain() const { return domain_; }
    bool domain_free() const { return domain_.empty(); }

    /// +infinity outside the domain, max of the affine pieces inside.
    double evaluate(const Vec& x) const;

    /// Global minimum and the arg-min face, via vertex enumeration of the
    /// capped epigraph polytope. Throws on the infinity element.
    const MinInfo& min_info() const;

    ConvexFn add_constant(double c) const;
    ConvexFn scale_horizontal(double lambda) const; // u_lambda(x) = u(x/lambda)
    ConvexFn apply_motion(const RigidMotion& motion) const; // u o T
    ConvexFn lift_undergraph(int extra_dims = 1) const;     // u(x) + |y|
    ConvexFn extend_dim(int target_dim) const;
    ConvexFn restrict_dim(int target_dim) const;

    /// u(x) >= a|x| + b valid on all of R^n (domain constraints folded into
    /// the bound when the slopes alone are not coercive).
    CoercivityWitness growth_witness() const;

  private:
    ConvexFn() = default;
    int dim_ = 0;
    bool infty_ = false;
    std::vector<AffinePiece> pieces_;
    std::vector<Halfspace> domain_;
    std::optional<MinInfo> min_;
};

ConvexFn join(const ConvexFn& u, const ConvexFn& v); // pointwise max
ConvexFn add(const ConvexFn& u, const ConvexFn& v);

/// Coercivity of a free-domain max-affine function: true iff the origin is
/// interior to the convex hull of the slopes; on success the witness carries
/// the largest inscribed-ball radius a and b = min intercept.
CoercivityWitness coercivity_check(int dim, const std::vector<AffinePiece>& pieces);

/// Glued family over a common base h and a hyperplane split K = Q n H+,
/// L = Q n H-: u = h + I_K and v = h + I_L satisfy u ^ v = h + I_Q in C^n
/// by construction.
struct GluedQuadruple {
    ConvexFn u, v, meet, join;
    Polytope part_k, part_l;
};
GluedQuadruple meet_glued(const ConvexFn& h, const Polytope& q, const Halfspace& split);

} // namespace funcval
