#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "funcval/numerics.hpp"

namespace funcval {

struct UnboundedError : std::runtime_error {
    explicit UnboundedError(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyInputError : std::runtime_error {
    explicit EmptyInputError(const std::string& what) : std::runtime_error(what) {}
};
struct SampleBudgetError : std::invalid_argument {
    explicit SampleBudgetError(const std::string& what) : std::invalid_argument(what) {}
};

/// Point / direction in ambient dimension 1..3.
struct Vec {
    int dim = 0;
    std::array<double, 3> x{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(int d, std::array<double, 3> coords) : dim(d), x(coords) {}
    static Vec zero(int d) { return Vec(d, {0, 0, 0}); }
    static Vec of(double a) { return Vec(1, {a, 0, 0}); }
    static Vec of(double a, double b) { return Vec(2, {a, b, 0}); }
    static Vec of(double a, double b, double c) { return Vec(3, {a, b, c}); }

    double& operator[](int i) { return x[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator*(double s) const;
    double dot(const Vec& o) const;
    double norm() const;
    double dist(const Vec& o) const { return (*this - o).norm(); }
};

/// Closed halfspace {x : normal . x <= offset}. Stored with unit normal.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

/// Rigid motion x -> R x + t with R orthogonal (checked to 1e-12).
class RigidMotion {
  public:
    RigidMotion(int dim, const std::array<std::array<double, 3>, 3>& rotation, const Vec& translation);

    static RigidMotion identity(int dim);
    static RigidMotion translation(const Vec& t);
    static RigidMotion rotation2d(double angle);
    static RigidMotion rotation3d(const Vec& axis, double angle);

    int dim() const { return dim_; }
    Vec apply(const Vec& p) const;
    Vec apply_linear(const Vec& p) const;          // R p
    Vec apply_linear_transpose(const Vec& p) const; // R^T p
    const Vec& translation_part() const { return trans_; }

  private:
    int dim_;
    std::array<std::array<double, 3>, 3> rot_;
    Vec trans_;
};

/// Intrinsic volumes (V_0 .. V_dim). Lower-dimensional bodies are measured in
/// their affine hull; entries beyond the body's dimension are zero.
struct IntrinsicVolumes {
    int dim = 0; // ambient dimension
    std::array<double, 4> v{0, 0, 0, 0};
    double operator[](int k) const { return k <= dim ? v[static_cast<std::size_t>(k)] : 0.0; }
};

/// Volume of the unit k-ball, k = 0..3.
double unit_ball_volume(int k);

/// Directions u with s.u <= 0 for every s in `gens`; returns one such unit
/// direction if the cone is nontrivial, nullopt if it is {0}. Used for both
/// polytope boundedness (gens = halfspace normals) and coercivity of
/// max-affine functions (gens = slopes and domain normals).
std::optional<Vec> nontrivial_recession_direction(int dim, const std::vector<Vec>& gens);

/// Unit-normal form of a halfspace system: drops trivial rows, merges
/// parallel rows into the tightest offset. A zero-normal row with negative
/// offset makes the system infeasible.
std::vector<Halfspace> normalize_halfspaces(int dim, const std::vector<Halfspace>& raw,
                                            bool* infeasible = nullptr);

/// Compact convex polytope in ambient dimension <= 3. Immutable after
/// construction; H-rep and V-rep are kept synchronized, faces and intrinsic
/// volumes are computed eagerly.
class Polytope {
  public:
    Polytope() = default; // zero-dimensional empty placeholder

    /// Builds from halfspaces; enumerates vertices from d-subsets of boundary
    /// hyperplanes. Throws UnboundedError when the recession cone is
    /// nontrivial. An infeasible system yields the empty polytope.
    static Polytope from_halfspaces(int dim, std::vector<Halfspace> halfspaces);

    static Polytope empty(int dim);
    static Polytope point(const Vec& p);
    static Polytope box(const Vec& lo, const Vec& hi);
    static Polytope segment(const Vec& a, const Vec& b);

    int ambient_dim() const { return dim_; }
    bool is_empty() const { return empty_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Vec>& vertices() const { return vertices_; }

    /// -1 for empty, else the dimension of the affine hull of the vertices.
    int affine_dim() const { return affine_dim_; }

    const IntrinsicVolumes& intrinsic_volumes() const { return intrinsics_; }

    bool contains(const Vec& p, double tol = kIncidenceTol) const;
    double distance(const Vec& p) const;

    Polytope intersect(const Polytope& other) const;
    Polytope apply_motion(const RigidMotion& motion) const;
    Polytope minkowski_scale(double s) const;

    Vec any_interior_point() const; // centroid of vertices
    void bounding_box(Vec& lo, Vec& hi) const;

  private:
    void build_faces();
    void compute_intrinsics();

    int dim_ = 0;
    bool empty_ = true;
    std::vector<Halfspace> halfspaces_;
    std::vector<Vec> vertices_;
    int affine_dim_ = -1;
    IntrinsicVolumes intrinsics_;

    // Face structure for distance queries and 3D intrinsic volumes.
    std::vector<int> polygon_order_;             // dim-2 bodies: vertex cycle
    std::array<Vec, 2> polygon_basis_{};
    Vec polygon_centroid_{};
    std::vector<std::vector<int>> facet_cycles_; // dim-3 bodies: per-facet cycles
    std::vector<Vec> facet_normals_;
    std::vector<std::array<Vec, 2>> facet_bases_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 2>> edge_facets_;
};

double hausdorff_distance(const Polytope& p, const Polytope& q);

/// Monte-Carlo estimate of vol({x : dist(x, p) <= rho}) by jittered-grid
/// rejection sampling in an enclosing box. Deterministic per (seed, samples).
struct SteinerEstimate {
    double volume = 0.0;
    double std_error = 0.0;
};
SteinerEstimate steiner_mc_volume(const Polytope& p, double rho, long samples, std::uint64_t seed);

/// Recovers V_0..V_n from parallel-body volumes at the given radii by
/// least-squares against the Steiner polynomial.
std::vector<double> steiner_fit(const Polytope& p, const std::vector<double>& rhos, long samples,
                                std::uint64_t seed);

} // namespace funcval
