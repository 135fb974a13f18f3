#include "funcval/convex_fn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace funcval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EpiRow {
    std::array<double, 4> normal{0, 0, 0, 0};
    double offset = 0.0;
};

/// Vertex enumeration in up to 4 dimensions for the capped epigraph. The
/// caller guarantees boundedness; rows are self-normalized here.
std::vector<std::array<double, 4>> enumerate_epigraph(int d, std::vector<EpiRow> rows) {
    for (EpiRow& r : rows) {
        double n = 0.0;
        for (int i = 0; i < d; ++i) n += r.normal[i] * r.normal[i];
        n = std::sqrt(n);
        if (n > 1e-12) {
            for (int i = 0; i < d; ++i) r.normal[i] /= n;
            r.offset /= n;
        }
    }
    std::vector<std::array<double, 4>> verts;
    const int m = static_cast<int>(rows.size());
    if (m < d) return verts;
    std::vector<int> sel(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d) {
            double A[4][4] = {};
            double b[4] = {};
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) A[r][c] = rows[sel[r]].normal[c];
                b[r] = rows[sel[r]].offset;
            }
            auto sol = solve_small(d, A, b);
            if (!sol) return;
            double nrm = 0.0;
            for (int c = 0; c < d; ++c) nrm += (*sol)[c] * (*sol)[c];
            const double tol = kIncidenceTol + 1e-12 * std::sqrt(nrm);
            for (const EpiRow& row : rows) {
                double dot = 0.0;
                for (int c = 0; c < d; ++c) dot += row.normal[c] * (*sol)[c];
                if (dot > row.offset + tol) return;
            }
            for (const auto& w : verts) {
                double dist2 = 0.0;
                for (int c = 0; c < d; ++c) dist2 += ((*sol)[c] - w[c]) * ((*sol)[c] - w[c]);
                if (dist2 <= kIncidenceTol * kIncidenceTol) return;
            }
            verts.push_back(*sol);
            return;
        }
        for (int i = start; i <= m - (d - depth); ++i) {
            sel[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return verts;
}

std::vector<AffinePiece> dedup_pieces(std::vector<AffinePiece> pieces) {
    std::vector<AffinePiece> out;
    for (const AffinePiece& p : pieces) {
        bool merged = false;
        for (AffinePiece& q : out) {
            if ((q.slope - p.slope).norm() <= 1e-12) {
                q.intercept = std::max(q.intercept, p.intercept);
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(p);
    }
    return out;
}

/// Minimum of the max-affine function over its domain, via the capped
/// epigraph in R^{d+1}. Returns nullopt when the domain is empty. The cap is
/// grown until the epigraph becomes visible; the min face never touches it.
std::optional<double> epigraph_min(int dim, const std::vector<AffinePiece>& pieces,
                                   const std::vector<Halfspace>& domain) {
    double base = 0.0;
    for (const AffinePiece& p : pieces) base = std::max(base, std::abs(p.intercept));
    for (const double extra : {1.0, 1e3, 1e6, 1e9}) {
        std::vector<EpiRow> rows;
        for (const AffinePiece& p : pieces) {
            EpiRow r;
            for (int i = 0; i < dim; ++i) r.normal[i] = p.slope[i];
            r.normal[dim] = -1.0;
            r.offset = -p.intercept;
            rows.push_back(r);
        }
        for (const Halfspace& h : domain) {
            EpiRow r;
            for (int i = 0; i < dim; ++i) r.normal[i] = h.normal[i];
            r.offset = h.offset;
            rows.push_back(r);
        }
        EpiRow cap;
        cap.normal[dim] = 1.0;
        cap.offset = base + extra;
        rows.push_back(cap);
        auto verts = enumerate_epigraph(dim + 1, rows);
        if (verts.empty()) continue;
        // Evaluate the pieces at each vertex instead of trusting the lifted
        // coordinate, and prefer vertices that satisfy the domain to machine
        // precision: the enumeration tolerance scales with |v| and can admit
        // points marginally outside the domain whose value undershoots the
        // constrained minimum.
        double m_strict = kInf, m_loose = kInf;
        for (const auto& v : verts) {
            Vec x = Vec::zero(dim);
            for (int i = 0; i < dim; ++i) x[i] = v[i];
            double val = -kInf;
            for (const AffinePiece& p : pieces) val = std::max(val, p.value(x));
            double violation = 0.0;
            for (const Halfspace& h : domain)
                violation = std::max(violation, h.normal.dot(x) - h.offset);
            if (violation <= 1e-12 * (1.0 + x.norm())) m_strict = std::min(m_strict, val);
            m_loose = std::min(m_loose, val);
        }
        return std::isfinite(m_strict) ? m_strict : m_loose;
    }
    return std::nullopt;
}

Polytope sublevel_polytope(int dim, const std::vector<AffinePiece>& pieces,
                           const std::vector<Halfspace>& domain, double t) {
    std::vector<Halfspace> hs = domain;
    for (const AffinePiece& p : pieces) hs.push_back({p.slope, t - p.intercept});
    return Polytope::from_halfspaces(dim, hs);
}

} // namespace

ConvexFn ConvexFn::make(int dim, std::vector<AffinePiece> pieces, std::vector<Halfspace> domain) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("ConvexFn: dimension must be 1..3");
    if (pieces.empty()) throw std::invalid_argument("ConvexFn: needs at least one affine piece");
    bool infeasible = false;
    std::vector<Halfspace> dom = normalize_halfspaces(dim, domain, &infeasible);
    if (infeasible) return infinity(dim);
    pieces = dedup_pieces(std::move(pieces));

    // Domain feasibility first, on a bounded enclosure: contradictory
    // constraint systems must collapse to the infinity element before the
    // epigraph machinery sees them.
    if (!dom.empty()) {
        double span = 1.0;
        for (const Halfspace& h : dom) span = std::max(span, std::abs(h.offset));
        std::vector<Halfspace> boxed = dom;
        for (int i = 0; i < dim; ++i) {
            Vec e = Vec::zero(dim);
            e[i] = 1.0;
            boxed.push_back({e, 1e6 * span});
            boxed.push_back({e * -1.0, 1e6 * span});
        }
        if (Polytope::from_halfspaces(dim, boxed).is_empty()) return infinity(dim);
    }

    std::vector<Vec> gens;
    for (const AffinePiece& p : pieces) gens.push_back(p.slope);
    for (const Halfspace& h : dom) gens.push_back(h.normal);
    if (nontrivial_recession_direction(dim, gens))
        throw CoercivityError("ConvexFn: function is not coercive");

    auto m = epigraph_min(dim, pieces, dom);
    if (!m) return infinity(dim);

    ConvexFn u;
    u.dim_ = dim;
    u.pieces_ = std::move(pieces);
    u.domain_ = std::move(dom);
    MinInfo info;
    info.value = *m;
    info.argmin = sublevel_polytope(dim, u.pieces_, u.domain_, *m);
    if (info.argmin.is_empty()) // borderline rounding at the optimal face
        info.argmin = sublevel_polytope(dim, u.pieces_, u.domain_, *m + 1e-10 * (1.0 + std::abs(*m)));
    u.min_ = std::move(info);
    return u;
}

ConvexFn ConvexFn::infinity(int dim) {
    ConvexFn u;
    u.dim_ = dim;
    u.infty_ = true;
    return u;
}

ConvexFn ConvexFn::indicator(const Polytope& body) {
    if (body.is_empty()) return infinity(body.ambient_dim());
    return make(body.ambient_dim(), {{Vec::zero(body.ambient_dim()), 0.0}}, body.halfspaces());
}

ConvexFn ConvexFn::shifted_indicator(double level, const Polytope& body) {
    if (body.is_empty()) return infinity(body.ambient_dim());
    return make(body.ambient_dim(), {{Vec::zero(body.ambient_dim()), level}}, body.halfspaces());
}

double ConvexFn::evaluate(const Vec& x) const {
    if (infty_) return kInf;
    const double tol = kIncidenceTol * (1.0 + x.norm());
    for (const Halfspace& h : domain_)
        if (h.normal.dot(x) > h.offset + tol) return kInf;
    double v = -kInf;
    for (const AffinePiece& p : pieces_) v = std::max(v, p.value(x));
    return v;
}

const MinInfo& ConvexFn::min_info() const {
    if (infty_) throw std::logic_error("min_info: the infinity element has no minimum");
    return *min_;
}

ConvexFn ConvexFn::add_constant(double c) const {
    if (infty_) return *this;
    std::vector<AffinePiece> pieces = pieces_;
    for (AffinePiece& p : pieces) p.intercept += c;
    return make(dim_, std::move(pieces), domain_);
}

ConvexFn ConvexFn::scale_horizontal(double lambda) const {
    if (lambda <= 0) throw std::invalid_argument("scale_horizontal: lambda must be positive");
    if (infty_) return *this;
    std::vector<AffinePiece> pieces = pieces_;
    for (AffinePiece& p : pieces) p.slope = p.slope * (1.0 / lambda);
    std::vector<Halfspace> dom = domain_;
    for (Halfspace& h : dom) h.offset *= lambda;
    return make(dim_, std::move(pieces), std::move(dom));
}

ConvexFn ConvexFn::apply_motion(const RigidMotion& motion) const {
    if (infty_) return *this;
    if (motion.dim() != dim_) throw std::invalid_argument("apply_motion: dimension mismatch");
    std::vector<AffinePiece> pieces;
    for (const AffinePiece& p : pieces_)
        pieces.push_back({motion.apply_linear_transpose(p.slope),
                          p.intercept + p.slope.dot(motion.translation_part())});
    std::vector<Halfspace> dom;
    for (const Halfspace& h : domain_)
        dom.push_back({motion.apply_linear_transpose(h.normal),
                       h.offset - h.normal.dot(motion.translation_part())});
    return make(dim_, std::move(pieces), std::move(dom));
}

ConvexFn ConvexFn::lift_undergraph(int extra_dims) const {
    if (extra_dims != 1)
        throw std::invalid_argument(
            "lift_undergraph: the Euclidean norm is piecewise linear only for one extra dimension");
    if (dim_ + 1 > 3) throw std::invalid_argument("lift_undergraph: ambient dimension would exceed 3");
    if (infty_) return infinity(dim_ + 1);
    const int nd = dim_ + 1;
    std::vector<AffinePiece> pieces;
    for (const AffinePiece& p : pieces_)
        for (const double sign : {1.0, -1.0}) {
            Vec s = Vec::zero(nd);
            for (int i = 0; i < dim_; ++i) s[i] = p.slope[i];
            s[dim_] = sign;
            pieces.push_back({s, p.intercept});
        }
    std::vector<Halfspace> dom;
    for (const Halfspace& h : domain_) {
        Vec n = Vec::zero(nd);
        for (int i = 0; i < dim_; ++i) n[i] = h.normal[i];
        dom.push_back({n, h.offset});
    }
    return make(nd, std::move(pieces), std::move(dom));
}

ConvexFn ConvexFn::extend_dim(int target_dim) const {
    if (target_dim < dim_ || target_dim > 3) throw std::invalid_argument("extend_dim: bad target");
    if (target_dim == dim_) return *this;
    if (infty_) return infinity(target_dim);
    std::vector<AffinePiece> pieces;
    for (const AffinePiece& p : pieces_) {
        Vec s = Vec::zero(target_dim);
        for (int i = 0; i < dim_; ++i) s[i] = p.slope[i];
        pieces.push_back({s, p.intercept});
    }
    std::vector<Halfspace> dom;
    for (const Halfspace& h : domain_) {
        Vec n = Vec::zero(target_dim);
        for (int i = 0; i < dim_; ++i) n[i] = h.normal[i];
        dom.push_back({n, h.offset});
    }
    for (int j = dim_; j < target_dim; ++j) {
        Vec e = Vec::zero(target_dim);
        e[j] = 1.0;
        dom.push_back({e, 0.0});
        dom.push_back({e * -1.0, 0.0});
    }
    return make(target_dim, std::move(pieces), std::move(dom));
}

ConvexFn ConvexFn::restrict_dim(int target_dim) const {
    if (target_dim < 1 || target_dim > dim_) throw std::invalid_argument("restrict_dim: bad target");
    if (target_dim == dim_) return *this;
    if (infty_) return infinity(target_dim);
    std::vector<AffinePiece> pieces;
    for (const AffinePiece& p : pieces_) {
        Vec s = Vec::zero(target_dim);
        for (int i = 0; i < target_dim; ++i) s[i] = p.slope[i];
        pieces.push_back({s, p.intercept});
    }
    std::vector<Halfspace> dom;
    for (const Halfspace& h : domain_) {
        Vec n = Vec::zero(target_dim);
        for (int i = 0; i < target_dim; ++i) n[i] = h.normal[i];
        dom.push_back({n, h.offset});
    }
    return make(target_dim, std::move(pieces), std::move(dom));
}

CoercivityWitness ConvexFn::growth_witness() const {
    if (infty_) return {true, 1.0, 0.0};
    // Fold domain constraints into extra affine minorants until the slope set
    // positively spans; gamma * (n.x - c) <= 0 on the domain for gamma >= 0.
    double gamma = 0.0;
    std::vector<AffinePiece> aug = pieces_;
    auto spans = [&](const std::vector<AffinePiece>& ps) {
        std::vector<Vec> gens;
        for (const AffinePiece& p : ps) gens.push_back(p.slope);
        return !nontrivial_recession_direction(dim_, gens).has_value();
    };
    if (!spans(aug)) {
        gamma = 1.0;
        for (int iter = 0; iter < 64; ++iter, gamma *= 2.0) {
            aug = pieces_;
            for (const AffinePiece& p : pieces_)
                for (const Halfspace& h : domain_)
                    aug.push_back({p.slope + h.normal * gamma, p.intercept - gamma * h.offset});
            aug = dedup_pieces(std::move(aug));
            if (spans(aug)) break;
        }
        if (!spans(aug)) throw CoercivityError("growth_witness: no linear minorant found");
    }
    CoercivityWitness w = coercivity_check(dim_, aug);
    return w;
}

ConvexFn join(const ConvexFn& u, const ConvexFn& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("join: dimension mismatch");
    if (u.is_infty() || v.is_infty()) return ConvexFn::infinity(u.dim());
    std::vector<AffinePiece> pieces = u.pieces();
    pieces.insert(pieces.end(), v.pieces().begin(), v.pieces().end());
    std::vector<Halfspace> dom = u.domain();
    dom.insert(dom.end(), v.domain().begin(), v.domain().end());
    return ConvexFn::make(u.dim(), std::move(pieces), std::move(dom));
}

ConvexFn add(const ConvexFn& u, const ConvexFn& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("add: dimension mismatch");
    if (u.is_infty() || v.is_infty()) return ConvexFn::infinity(u.dim());
    std::vector<AffinePiece> pieces;
    for (const AffinePiece& p : u.pieces())
        for (const AffinePiece& q : v.pieces())
            pieces.push_back({p.slope + q.slope, p.intercept + q.intercept});
    std::vector<Halfspace> dom = u.domain();
    dom.insert(dom.end(), v.domain().begin(), v.domain().end());
    return ConvexFn::make(u.dim(), std::move(pieces), std::move(dom));
}

CoercivityWitness coercivity_check(int dim, const std::vector<AffinePiece>& pieces) {
    CoercivityWitness w;
    std::vector<Vec> slopes;
    for (const AffinePiece& p : pieces) slopes.push_back(p.slope);
    if (nontrivial_recession_direction(dim, slopes)) return w; // not coercive
    // Largest ball around the origin inside conv(slopes), via the polar body:
    // the inradius is 1 / max |y| over {y : s.y <= 1 for all slopes s}.
    std::vector<Halfspace> polar;
    for (const Vec& s : slopes) polar.push_back({s, 1.0});
    Polytope dual = Polytope::from_halfspaces(dim, polar);
    double reach = 0.0;
    for (const Vec& y : dual.vertices()) reach = std::max(reach, y.norm());
    w.coercive = true;
    w.a = reach > 0 ? 1.0 / reach : 1.0;
    w.b = kInf;
    for (const AffinePiece& p : pieces) w.b = std::min(w.b, p.intercept);
    return w;
}

GluedQuadruple meet_glued(const ConvexFn& h, const Polytope& q, const Halfspace& split) {
    if (h.dim() != q.ambient_dim()) throw std::invalid_argument("meet_glued: dimension mismatch");
    // K = Q n {n.x <= c}, L = Q n {n.x >= c}.
    std::vector<Halfspace> hk = q.halfspaces();
    hk.push_back(split);
    std::vector<Halfspace> hl = q.halfspaces();
    hl.push_back({split.normal * -1.0, -split.offset});
    Polytope k = Polytope::from_halfspaces(q.ambient_dim(), hk);
    Polytope l = Polytope::from_halfspaces(q.ambient_dim(), hl);

    GluedQuadruple g{add(h, ConvexFn::indicator(k)), add(h, ConvexFn::indicator(l)),
                     add(h, ConvexFn::indicator(q)), add(h, ConvexFn::indicator(k.intersect(l))), k, l};
    return g;
}

} // namespace funcval
