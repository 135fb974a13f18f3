#include "funcval/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

namespace funcval {

// Components past dim are kept at zero, so fixed-width arithmetic is safe.
Vec Vec::operator+(const Vec& o) const {
    Vec r = *this;
    r.x[0] += o.x[0];
    r.x[1] += o.x[1];
    r.x[2] += o.x[2];
    return r;
}
Vec Vec::operator-(const Vec& o) const {
    Vec r = *this;
    r.x[0] -= o.x[0];
    r.x[1] -= o.x[1];
    r.x[2] -= o.x[2];
    return r;
}
Vec Vec::operator*(double s) const {
    Vec r = *this;
    r.x[0] *= s;
    r.x[1] *= s;
    r.x[2] *= s;
    return r;
}
double Vec::dot(const Vec& o) const { return x[0] * o.x[0] + x[1] * o.x[1] + x[2] * o.x[2]; }
double Vec::norm() const { return std::sqrt(dot(*this)); }

namespace {

Vec cross3(const Vec& a, const Vec& b) {
    return Vec(3, {a.x[1] * b.x[2] - a.x[2] * b.x[1], a.x[2] * b.x[0] - a.x[0] * b.x[2],
                   a.x[0] * b.x[1] - a.x[1] * b.x[0]});
}

Vec perp2(const Vec& a) { return Vec(2, {-a.x[1], a.x[0], 0}); }

/// Orthonormal basis of span(dirs), Gram-Schmidt with absolute cutoff.
std::vector<Vec> orthonormal_span(int dim, const std::vector<Vec>& dirs, double tol) {
    std::vector<Vec> basis;
    for (const Vec& d : dirs) {
        Vec r = d;
        for (const Vec& b : basis) r = r - b * b.dot(r);
        const double n = r.norm();
        if (n > tol) {
            basis.push_back(r * (1.0 / n));
            if (static_cast<int>(basis.size()) == dim) break;
        }
    }
    return basis;
}

/// Orthonormal basis of the orthogonal complement of span(dirs).
std::vector<Vec> orthonormal_complement(int dim, const std::vector<Vec>& dirs) {
    std::vector<Vec> all = dirs;
    std::vector<Vec> span = orthonormal_span(dim, all, 1e-9);
    std::vector<Vec> comp;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::zero(dim);
        e[i] = 1.0;
        for (const Vec& b : span) e = e - b * b.dot(e);
        for (const Vec& b : comp) e = e - b * b.dot(e);
        const double n = e.norm();
        if (n > 1e-9) comp.push_back(e * (1.0 / n));
    }
    return comp;
}

} // namespace

RigidMotion::RigidMotion(int dim, const std::array<std::array<double, 3>, 3>& rotation,
                         const Vec& translation)
    : dim_(dim), rot_(rotation), trans_(translation) {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += rot_[k][i] * rot_[k][j];
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(s - expected) > kOrthogonalityTol)
                throw std::invalid_argument("RigidMotion: rotation matrix is not orthogonal");
        }
}

RigidMotion RigidMotion::identity(int dim) {
    std::array<std::array<double, 3>, 3> r{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    return RigidMotion(dim, r, Vec::zero(dim));
}

RigidMotion RigidMotion::translation(const Vec& t) {
    std::array<std::array<double, 3>, 3> r{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    return RigidMotion(t.dim, r, t);
}

RigidMotion RigidMotion::rotation2d(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    std::array<std::array<double, 3>, 3> r{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
    return RigidMotion(2, r, Vec::zero(2));
}

RigidMotion RigidMotion::rotation3d(const Vec& axis, double angle) {
    Vec u = axis;
    const double n = u.norm();
    if (n < 1e-12) throw std::invalid_argument("rotation3d: zero axis");
    u = u * (1.0 / n);
    const double c = std::cos(angle), s = std::sin(angle);
    std::array<std::array<double, 3>, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = (1 - c) * u[i] * u[j] + (i == j ? c : 0.0);
    r[0][1] -= s * u[2];
    r[0][2] += s * u[1];
    r[1][0] += s * u[2];
    r[1][2] -= s * u[0];
    r[2][0] -= s * u[1];
    r[2][1] += s * u[0];
    return RigidMotion(3, r, Vec::zero(3));
}

Vec RigidMotion::apply(const Vec& p) const { return apply_linear(p) + trans_; }

Vec RigidMotion::apply_linear(const Vec& p) const {
    Vec r = Vec::zero(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r[i] += rot_[i][j] * p[j];
    return r;
}

Vec RigidMotion::apply_linear_transpose(const Vec& p) const {
    Vec r = Vec::zero(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r[i] += rot_[j][i] * p[j];
    return r;
}

double unit_ball_volume(int k) {
    switch (k) {
        case 0: return 1.0;
        case 1: return 2.0;
        case 2: return M_PI;
        case 3: return 4.0 * M_PI / 3.0;
        default: throw std::invalid_argument("unit_ball_volume: k out of range");
    }
}

std::optional<Vec> nontrivial_recession_direction(int dim, const std::vector<Vec>& gens) {
    std::vector<Vec> nz;
    for (const Vec& g : gens)
        if (g.norm() > 1e-12) nz.push_back(g * (1.0 / g.norm()));

    std::vector<Vec> candidates;
    // Directions orthogonal to the whole generator span (non-pointed cones).
    for (const Vec& c : orthonormal_complement(dim, nz)) candidates.push_back(c);
    if (dim == 1) {
        candidates.push_back(Vec::of(1.0));
        candidates.push_back(Vec::of(-1.0));
    } else if (dim == 2) {
        for (const Vec& g : nz) {
            candidates.push_back(perp2(g));
            candidates.push_back(perp2(g) * -1.0);
        }
    } else {
        for (std::size_t i = 0; i < nz.size(); ++i)
            for (std::size_t j = i + 1; j < nz.size(); ++j) {
                Vec c = cross3(nz[i], nz[j]);
                if (c.norm() > 1e-9) {
                    c = c * (1.0 / c.norm());
                    candidates.push_back(c);
                    candidates.push_back(c * -1.0);
                }
            }
        for (const Vec& g : nz)
            for (const Vec& c : orthonormal_complement(dim, {g})) {
                candidates.push_back(c);
                candidates.push_back(c * -1.0);
            }
    }
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::zero(dim);
        e[i] = 1.0;
        candidates.push_back(e);
        candidates.push_back(e * -1.0);
    }

    for (const Vec& u : candidates) {
        double worst = -1.0;
        for (const Vec& g : nz) worst = std::max(worst, g.dot(u));
        if (nz.empty() || worst <= kIncidenceTol) return u;
    }
    return std::nullopt;
}

namespace {

struct NormalizedSystem {
    std::vector<Halfspace> halfspaces;
    bool infeasible = false;
};

/// Unit-normal form; drops trivial rows, groups parallel rows to the tightest
/// offset. A zero-normal row with negative offset marks the system infeasible.
NormalizedSystem normalize_system(int, const std::vector<Halfspace>& raw) {
    NormalizedSystem out;
    for (const Halfspace& h : raw) {
        const double n = h.normal.norm();
        if (n < 1e-12) {
            if (h.offset < -1e-12) out.infeasible = true;
            continue;
        }
        Halfspace u{h.normal * (1.0 / n), h.offset / n};
        bool merged = false;
        for (Halfspace& e : out.halfspaces) {
            if ((e.normal - u.normal).norm() <= kIncidenceTol) {
                e.offset = std::min(e.offset, u.offset);
                merged = true;
                break;
            }
        }
        if (!merged) out.halfspaces.push_back(u);
    }
    return out;
}

} // namespace

std::vector<Halfspace> normalize_halfspaces(int dim, const std::vector<Halfspace>& raw,
                                            bool* infeasible) {
    NormalizedSystem sys = normalize_system(dim, raw);
    if (infeasible) *infeasible = sys.infeasible;
    return sys.halfspaces;
}

namespace {

std::vector<Vec> enumerate_vertices(int dim, const std::vector<Halfspace>& hs) {
    std::vector<Vec> verts;
    const int m = static_cast<int>(hs.size());
    if (m < dim) return verts;
    std::vector<int> idx(dim);
    std::vector<int> stack;

    auto try_subset = [&](const std::vector<int>& sel) {
        double A[4][4] = {};
        double b[4] = {};
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) A[r][c] = hs[sel[r]].normal[c];
            b[r] = hs[sel[r]].offset;
        }
        auto sol = solve_small(dim, A, b);
        if (!sol) return;
        Vec v = Vec::zero(dim);
        for (int c = 0; c < dim; ++c) v[c] = (*sol)[c];
        // Additive incidence tolerance plus dot-product roundoff; a slack
        // proportional to |v| would wave far-out spurious candidates through.
        const double tol = kIncidenceTol + 1e-12 * v.norm();
        for (const Halfspace& h : hs)
            if (h.normal.dot(v) > h.offset + tol) return;
        for (const Vec& w : verts)
            if (v.dist(w) <= kIncidenceTol) return;
        verts.push_back(v);
    };

    // All dim-subsets of the hyperplanes.
    std::vector<int> sel(dim);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == dim) {
            try_subset(sel);
            return;
        }
        for (int i = start; i <= m - (dim - depth); ++i) {
            sel[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return verts;
}

int affine_dimension(const std::vector<Vec>& verts, int dim) {
    if (verts.empty()) return -1;
    std::vector<Vec> dirs;
    for (std::size_t i = 1; i < verts.size(); ++i) dirs.push_back(verts[i] - verts[0]);
    return static_cast<int>(orthonormal_span(dim, dirs, kIncidenceTol).size());
}

/// Sorts convex-position points into a cycle by angle around the centroid,
/// using the given in-plane orthonormal basis.
std::vector<int> order_cycle(const std::vector<Vec>& pts, const std::vector<int>& ids, const Vec& origin,
                             const Vec& b0, const Vec& b1) {
    std::vector<std::pair<double, int>> ang;
    for (int id : ids) {
        const Vec d = pts[id] - origin;
        ang.push_back({std::atan2(b1.dot(d), b0.dot(d)), id});
    }
    std::sort(ang.begin(), ang.end());
    std::vector<int> cycle;
    for (auto& a : ang) cycle.push_back(a.second);
    return cycle;
}

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
    const Vec ab = b - a;
    const double len2 = ab.dot(ab);
    double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return p.dist(a + ab * t);
}

} // namespace

Polytope Polytope::from_halfspaces(int dim, std::vector<Halfspace> halfspaces) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Polytope: ambient dimension must be 1..3");
    NormalizedSystem sys = normalize_system(dim, halfspaces);

    Polytope p;
    p.dim_ = dim;
    p.halfspaces_ = sys.halfspaces;
    if (sys.infeasible) {
        p.empty_ = true;
        return p;
    }
    if (auto dir = nontrivial_recession_direction(dim, [&] {
            std::vector<Vec> normals;
            for (const Halfspace& h : sys.halfspaces) normals.push_back(h.normal);
            return normals;
        }())) {
        throw UnboundedError("Polytope: recession cone is nontrivial");
    }
    p.vertices_ = enumerate_vertices(dim, sys.halfspaces);
    p.empty_ = p.vertices_.empty();
    p.affine_dim_ = affine_dimension(p.vertices_, dim);
    p.build_faces();
    p.compute_intrinsics();
    return p;
}

Polytope Polytope::empty(int dim) {
    Polytope p;
    p.dim_ = dim;
    p.empty_ = true;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::zero(dim);
        e[i] = 1.0;
        p.halfspaces_.push_back({e, -1.0});
        p.halfspaces_.push_back({e * -1.0, -1.0});
    }
    return p;
}

Polytope Polytope::point(const Vec& p) { return box(p, p); }

Polytope Polytope::box(const Vec& lo, const Vec& hi) {
    const int dim = lo.dim;
    std::vector<Halfspace> hs;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::zero(dim);
        e[i] = 1.0;
        hs.push_back({e, hi[i]});
        hs.push_back({e * -1.0, -lo[i]});
    }
    return from_halfspaces(dim, hs);
}

Polytope Polytope::segment(const Vec& a, const Vec& b) {
    const int dim = a.dim;
    const Vec d = b - a;
    if (d.norm() < 1e-12) return point(a);
    const Vec u = d * (1.0 / d.norm());
    std::vector<Halfspace> hs;
    hs.push_back({u, u.dot(b)});
    hs.push_back({u * -1.0, -u.dot(a)});
    for (const Vec& w : orthonormal_complement(dim, {u})) {
        hs.push_back({w, w.dot(a)});
        hs.push_back({w * -1.0, -w.dot(a)});
    }
    return from_halfspaces(dim, hs);
}

void Polytope::build_faces() {
    polygon_order_.clear();
    facet_cycles_.clear();
    facet_normals_.clear();
    facet_bases_.clear();
    edges_.clear();
    edge_facets_.clear();
    if (affine_dim_ == 2) {
        std::vector<Vec> dirs;
        Vec c = Vec::zero(dim_);
        for (const Vec& v : vertices_) c = c + v * (1.0 / vertices_.size());
        for (const Vec& v : vertices_) dirs.push_back(v - c);
        auto basis = orthonormal_span(dim_, dirs, kIncidenceTol);
        if (basis.size() < 2) return;
        std::vector<int> ids(vertices_.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        polygon_order_ = order_cycle(vertices_, ids, c, basis[0], basis[1]);
        polygon_basis_ = {basis[0], basis[1]};
        polygon_centroid_ = c;
    } else if (affine_dim_ == 3) {
        std::map<std::array<int, 2>, std::vector<int>> edge_map;
        for (const Halfspace& h : halfspaces_) {
            std::vector<int> incident;
            for (std::size_t i = 0; i < vertices_.size(); ++i) {
                const double tol = kIncidenceTol * (1.0 + vertices_[i].norm());
                if (std::abs(h.normal.dot(vertices_[i]) - h.offset) <= tol)
                    incident.push_back(static_cast<int>(i));
            }
            if (incident.size() < 3) continue;
            Vec c = Vec::zero(dim_);
            for (int id : incident) c = c + vertices_[id] * (1.0 / incident.size());
            std::vector<Vec> dirs;
            for (int id : incident) dirs.push_back(vertices_[id] - c);
            auto basis = orthonormal_span(dim_, dirs, kIncidenceTol);
            if (basis.size() < 2) continue;
            const int fid = static_cast<int>(facet_cycles_.size());
            facet_cycles_.push_back(order_cycle(vertices_, incident, c, basis[0], basis[1]));
            facet_normals_.push_back(h.normal);
            facet_bases_.push_back({basis[0], basis[1]});
            const auto& cyc = facet_cycles_.back();
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
                if (a > b) std::swap(a, b);
                edge_map[{a, b}].push_back(fid);
            }
        }
        for (const auto& [key, fids] : edge_map) {
            if (fids.size() == 2) {
                edges_.push_back(key);
                edge_facets_.push_back({fids[0], fids[1]});
            }
        }
    }
}

namespace {

double polygon_area(const std::vector<Vec>& verts, const std::vector<int>& cycle, const Vec& b0,
                    const Vec& b1) {
    double area2 = 0.0;
    const Vec origin = verts[cycle[0]];
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Vec d0 = verts[cycle[i]] - origin;
        const Vec d1 = verts[cycle[(i + 1) % cycle.size()]] - origin;
        area2 += b0.dot(d0) * b1.dot(d1) - b0.dot(d1) * b1.dot(d0);
    }
    return 0.5 * std::abs(area2);
}

double cycle_perimeter(const std::vector<Vec>& verts, const std::vector<int>& cycle) {
    double p = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        p += verts[cycle[i]].dist(verts[cycle[(i + 1) % cycle.size()]]);
    return p;
}

} // namespace

void Polytope::compute_intrinsics() {
    intrinsics_ = IntrinsicVolumes{dim_, {0, 0, 0, 0}};
    if (empty_) return;
    intrinsics_.v[0] = 1.0;
    if (affine_dim_ == 0) return;
    if (affine_dim_ == 1) {
        double len = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                len = std::max(len, vertices_[i].dist(vertices_[j]));
        intrinsics_.v[1] = len;
        return;
    }
    if (affine_dim_ == 2) {
        Vec c = Vec::zero(dim_);
        for (const Vec& v : vertices_) c = c + v * (1.0 / vertices_.size());
        std::vector<Vec> dirs;
        for (const Vec& v : vertices_) dirs.push_back(v - c);
        auto basis = orthonormal_span(dim_, dirs, kIncidenceTol);
        intrinsics_.v[1] = 0.5 * cycle_perimeter(vertices_, polygon_order_);
        intrinsics_.v[2] = polygon_area(vertices_, polygon_order_, basis[0], basis[1]);
        return;
    }
    // Full-dimensional body in R^3.
    Vec c = Vec::zero(dim_);
    for (const Vec& v : vertices_) c = c + v * (1.0 / vertices_.size());
    double volume = 0.0, surface = 0.0;
    for (std::size_t f = 0; f < facet_cycles_.size(); ++f) {
        const auto& cyc = facet_cycles_[f];
        Vec fc = Vec::zero(dim_);
        for (int id : cyc) fc = fc + vertices_[id] * (1.0 / cyc.size());
        std::vector<Vec> dirs;
        for (int id : cyc) dirs.push_back(vertices_[id] - fc);
        auto basis = orthonormal_span(dim_, dirs, kIncidenceTol);
        const double area = polygon_area(vertices_, cyc, basis[0], basis[1]);
        surface += area;
        volume += area * facet_normals_[f].dot(fc - c) / 3.0;
    }
    double mean_width_sum = 0.0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Vec n0 = facet_normals_[edge_facets_[e][0]];
        const Vec n1 = facet_normals_[edge_facets_[e][1]];
        const double ext_angle = std::atan2(cross3(n0, n1).norm(), n0.dot(n1));
        mean_width_sum += vertices_[edges_[e][0]].dist(vertices_[edges_[e][1]]) * ext_angle;
    }
    intrinsics_.v[1] = mean_width_sum / (2.0 * M_PI);
    intrinsics_.v[2] = 0.5 * surface;
    intrinsics_.v[3] = std::abs(volume);
}

bool Polytope::contains(const Vec& p, double tol) const {
    if (empty_) return false;
    const double t = tol * (1.0 + p.norm());
    for (const Halfspace& h : halfspaces_)
        if (h.normal.dot(p) > h.offset + t) return false;
    return true;
}

double Polytope::distance(const Vec& p) const {
    if (empty_) throw EmptyInputError("Polytope::distance: empty polytope");
    if (affine_dim_ == dim_ && contains(p, 1e-12)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    if (affine_dim_ <= 0) return p.dist(vertices_[0]);
    if (affine_dim_ == 1) {
        // Extreme points along the carrier line.
        const Vec d = vertices_.back() - vertices_.front();
        double lo = 0.0, hi = 0.0;
        Vec a = vertices_.front(), b = vertices_.front();
        for (const Vec& v : vertices_) {
            const double t = d.dot(v - vertices_.front());
            if (t < lo) { lo = t; a = v; }
            if (t > hi) { hi = t; b = v; }
        }
        return point_segment_distance(p, a, b);
    }
    if (affine_dim_ == 2) {
        const auto& cyc = polygon_order_;
        const Vec& b0 = polygon_basis_[0];
        const Vec& b1 = polygon_basis_[1];
        const Vec pc = p - polygon_centroid_;
        const Vec q = polygon_centroid_ + b0 * b0.dot(pc) + b1 * b1.dot(pc);
        bool inside = true;
        int sign = 0;
        for (std::size_t i = 0; i < cyc.size() && inside; ++i) {
            const Vec e0 = vertices_[cyc[i]], e1 = vertices_[cyc[(i + 1) % cyc.size()]];
            const double cr = b0.dot(e1 - e0) * b1.dot(q - e0) - b1.dot(e1 - e0) * b0.dot(q - e0);
            if (std::abs(cr) < 1e-12) continue;
            const int s = cr > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) inside = false;
        }
        if (inside) return p.dist(q);
        for (std::size_t i = 0; i < cyc.size(); ++i)
            best = std::min(best, point_segment_distance(p, vertices_[cyc[i]],
                                                         vertices_[cyc[(i + 1) % cyc.size()]]));
        return best;
    }
    // Full-dimensional in R^3: faces, edges, vertices.
    for (std::size_t f = 0; f < facet_cycles_.size(); ++f) {
        const auto& cyc = facet_cycles_[f];
        const Vec& n = facet_normals_[f];
        const Vec& b0 = facet_bases_[f][0];
        const Vec& b1 = facet_bases_[f][1];
        const double h = n.dot(p - vertices_[cyc[0]]);
        if (std::abs(h) >= best) continue;
        const Vec q = p - n * h;
        bool inside = true;
        int sign = 0;
        for (std::size_t i = 0; i < cyc.size() && inside; ++i) {
            const Vec e0 = vertices_[cyc[i]], e1 = vertices_[cyc[(i + 1) % cyc.size()]];
            const double cr = b0.dot(e1 - e0) * b1.dot(q - e0) - b1.dot(e1 - e0) * b0.dot(q - e0);
            if (std::abs(cr) < 1e-12) continue;
            const int s = cr > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) inside = false;
        }
        if (inside) best = std::min(best, std::abs(h));
    }
    for (const auto& e : edges_)
        best = std::min(best, point_segment_distance(p, vertices_[e[0]], vertices_[e[1]]));
    for (const Vec& v : vertices_) best = std::min(best, p.dist(v));
    return best;
}

Polytope Polytope::intersect(const Polytope& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("Polytope::intersect: dimension mismatch");
    if (empty_ || other.empty_) return Polytope::empty(dim_);
    std::vector<Halfspace> hs = halfspaces_;
    hs.insert(hs.end(), other.halfspaces_.begin(), other.halfspaces_.end());
    return from_halfspaces(dim_, hs);
}

Polytope Polytope::apply_motion(const RigidMotion& motion) const {
    if (motion.dim() != dim_) throw std::invalid_argument("apply_motion: dimension mismatch");
    Polytope p;
    p.dim_ = dim_;
    p.empty_ = empty_;
    p.affine_dim_ = affine_dim_;
    for (const Halfspace& h : halfspaces_) {
        const Vec n = motion.apply_linear(h.normal);
        p.halfspaces_.push_back({n, h.offset + n.dot(motion.translation_part())});
    }
    for (const Vec& v : vertices_) p.vertices_.push_back(motion.apply(v));
    p.build_faces();
    p.compute_intrinsics();
    return p;
}

Polytope Polytope::minkowski_scale(double s) const {
    if (s < 0) throw std::invalid_argument("minkowski_scale: negative factor");
    if (empty_) return Polytope::empty(dim_);
    if (s == 0.0) return Polytope::point(Vec::zero(dim_));
    Polytope p;
    p.dim_ = dim_;
    p.empty_ = empty_;
    p.affine_dim_ = affine_dim_;
    for (const Halfspace& h : halfspaces_) p.halfspaces_.push_back({h.normal, h.offset * s});
    for (const Vec& v : vertices_) p.vertices_.push_back(v * s);
    p.build_faces();
    p.compute_intrinsics();
    return p;
}

Vec Polytope::any_interior_point() const {
    if (empty_) throw EmptyInputError("any_interior_point: empty polytope");
    Vec c = Vec::zero(dim_);
    for (const Vec& v : vertices_) c = c + v * (1.0 / vertices_.size());
    return c;
}

void Polytope::bounding_box(Vec& lo, Vec& hi) const {
    if (empty_) throw EmptyInputError("bounding_box: empty polytope");
    lo = hi = vertices_[0];
    for (const Vec& v : vertices_)
        for (int i = 0; i < dim_; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
}

double hausdorff_distance(const Polytope& p, const Polytope& q) {
    if (p.is_empty() || q.is_empty()) throw EmptyInputError("hausdorff_distance: empty input");
    double d = 0.0;
    for (const Vec& v : p.vertices()) d = std::max(d, q.distance(v));
    for (const Vec& v : q.vertices()) d = std::max(d, p.distance(v));
    return d;
}

SteinerEstimate steiner_mc_volume(const Polytope& p, double rho, long samples, std::uint64_t seed) {
    if (samples < 10000) throw SampleBudgetError("steiner_mc_volume: needs at least 1e4 samples");
    if (rho < 0) throw std::invalid_argument("steiner_mc_volume: negative radius");
    if (p.is_empty()) throw EmptyInputError("steiner_mc_volume: empty polytope");
    const int d = p.ambient_dim();
    Vec lo, hi;
    p.bounding_box(lo, hi);
    double box_vol = 1.0;
    for (int i = 0; i < d; ++i) {
        lo[i] -= rho + 1e-9;
        hi[i] += rho + 1e-9;
        box_vol *= hi[i] - lo[i];
    }
    // Jittered grid: one uniform sample per cell of an axis grid.
    const long per_axis = std::max<long>(1, static_cast<long>(std::floor(std::pow(double(samples), 1.0 / d))));
    long total = 1;
    for (int i = 0; i < d; ++i) total *= per_axis;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    long hits = 0;
    std::array<long, 3> cell{0, 0, 0};
    for (long it = 0; it < total; ++it) {
        long rem = it;
        for (int i = 0; i < d; ++i) {
            cell[i] = rem % per_axis;
            rem /= per_axis;
        }
        Vec x = Vec::zero(d);
        for (int i = 0; i < d; ++i)
            x[i] = lo[i] + (hi[i] - lo[i]) * (cell[i] + unif(rng)) / per_axis;
        if (p.distance(x) <= rho) ++hits;
    }
    const double frac = double(hits) / double(total);
    SteinerEstimate est;
    est.volume = box_vol * frac;
    est.std_error = box_vol * std::sqrt(std::max(0.0, frac * (1.0 - frac) / double(total)));
    return est;
}

std::vector<double> steiner_fit(const Polytope& p, const std::vector<double>& rhos, long samples,
                                std::uint64_t seed) {
    const int n = p.ambient_dim();
    if (static_cast<int>(rhos.size()) < n + 1)
        throw std::invalid_argument("steiner_fit: need at least dim+1 radii");
    double ata[4][4] = {};
    double atb[4] = {};
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        const double y = steiner_mc_volume(p, rhos[i], samples, seed + i).volume;
        double row[4];
        for (int k = 0; k <= n; ++k)
            row[k] = unit_ball_volume(n - k) * std::pow(rhos[i], n - k);
        for (int a = 0; a <= n; ++a) {
            atb[a] += row[a] * y;
            for (int b = 0; b <= n; ++b) ata[a][b] += row[a] * row[b];
        }
    }
    auto sol = solve_small(n + 1, ata, atb);
    if (!sol) throw std::runtime_error("steiner_fit: singular fit");
    return std::vector<double>(sol->begin(), sol->begin() + n + 1);
}

} // namespace funcval
