#include "funcval/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace funcval {

namespace {

double cell_volume(const Polytope& p) {
    return p.is_empty() ? 0.0 : p.intrinsic_volumes()[p.ambient_dim()];
}

/// Canonical plane form: unit normal with the first significant component
/// positive, so opposite-facing facet halfspaces collapse to one plane.
Halfspace canonical_plane(const Halfspace& h) {
    Halfspace c = h;
    for (int i = 0; i < c.normal.dim; ++i) {
        if (std::abs(c.normal[i]) > 1e-9) {
            if (c.normal[i] < 0) {
                c.normal = c.normal * -1.0;
                c.offset = -c.offset;
            }
            break;
        }
    }
    return c;
}

bool plane_less(const Halfspace& a, const Halfspace& b) {
    for (int i = 0; i < a.normal.dim; ++i) {
        if (std::abs(a.normal[i] - b.normal[i]) > 1e-9) return a.normal[i] < b.normal[i];
    }
    return a.offset < b.offset - 1e-9;
}

bool plane_equal(const Halfspace& a, const Halfspace& b) {
    return !plane_less(a, b) && !plane_less(b, a);
}

/// Hyperplanes spanning an (n-1)-facet of any cell, canonical and sorted.
std::vector<Halfspace> facet_planes(const PolytopalPartition& p) {
    const int n = p.parent.ambient_dim();
    std::vector<Halfspace> planes;
    for (const Polytope& cell : p.cells) {
        for (const Halfspace& h : cell.halfspaces()) {
            int incident = 0;
            for (const Vec& v : cell.vertices())
                if (std::abs(h.normal.dot(v) - h.offset) <= kIncidenceTol * (1.0 + v.norm()))
                    ++incident;
            if (incident >= n) planes.push_back(canonical_plane(h));
        }
    }
    std::sort(planes.begin(), planes.end(), plane_less);
    planes.erase(std::unique(planes.begin(), planes.end(), plane_equal), planes.end());
    return planes;
}

std::vector<double> sorted_volumes(const PolytopalPartition& p) {
    std::vector<double> v;
    for (const Polytope& c : p.cells) v.push_back(cell_volume(c));
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

PolytopalPartition make_partition(Polytope parent, std::vector<Polytope> cells) {
    const int n = parent.ambient_dim();
    const double parent_vol = cell_volume(parent);
    if (parent.is_empty() || parent.affine_dim() != n)
        throw std::invalid_argument("make_partition: parent must have nonempty interior");
    double sum = 0.0;
    for (const Polytope& c : cells) {
        if (c.is_empty() || c.affine_dim() != n)
            throw std::invalid_argument("make_partition: cell without interior");
        sum += cell_volume(c);
    }
    if (std::abs(sum - parent_vol) > 1e-9 * std::max(1.0, parent_vol))
        throw std::invalid_argument("make_partition: cells do not cover the parent");
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j)
            if (cell_volume(cells[i].intersect(cells[j])) > 1e-9 * std::max(1.0, parent_vol))
                throw std::invalid_argument("make_partition: cells overlap");
    PolytopalPartition p;
    p.parent = std::move(parent);
    p.cells = std::move(cells);
    return p;
}

PolytopalPartition refine_by_hyperplane(const PolytopalPartition& p, const Halfspace& plane) {
    const int n = p.parent.ambient_dim();
    PolytopalPartition out;
    out.parent = p.parent;
    const Halfspace minus{plane.normal * -1.0, -plane.offset};
    for (const Polytope& cell : p.cells) {
        const double vol = cell_volume(cell);
        for (const Halfspace& side : {plane, minus}) {
            std::vector<Halfspace> hs = cell.halfspaces();
            hs.push_back(side);
            Polytope half = Polytope::from_halfspaces(n, hs);
            if (!half.is_empty() && half.affine_dim() == n &&
                cell_volume(half) > 1e-12 * std::max(1.0, vol))
                out.cells.push_back(std::move(half));
        }
    }
    return out;
}

PolytopalPartition complete(const PolytopalPartition& p) {
    PolytopalPartition out = p;
    for (const Halfspace& plane : facet_planes(p)) out = refine_by_hyperplane(out, plane);
    out.state = Completeness::Complete;
    return out;
}

bool is_complete(const PolytopalPartition& p) {
    const std::vector<double> base = sorted_volumes(p);
    for (const Halfspace& plane : facet_planes(p)) {
        const PolytopalPartition refined = refine_by_hyperplane(p, plane);
        if (refined.cells.size() != p.cells.size()) return false;
        const std::vector<double> vols = sorted_volumes(refined);
        for (std::size_t i = 0; i < vols.size(); ++i)
            if (std::abs(vols[i] - base[i]) > 1e-9 * std::max(1.0, base[i])) return false;
    }
    return true;
}

InductiveCertificate inductive_certificate(const PolytopalPartition& p) {
    if (!is_complete(p)) throw NotCompleteError("inductive_certificate: partition is not complete");
    const int n = p.parent.ambient_dim();
    InductiveCertificate cert;

    std::function<int(const Polytope&, const std::vector<int>&)> build =
        [&](const Polytope& parent, const std::vector<int>& cell_ids) -> int {
        if (cell_ids.size() == 1) {
            cert.push_back({p.cells[cell_ids[0]], true, -1, -1});
            return static_cast<int>(cert.size()) - 1;
        }
        // A facet plane of one of the cells that cuts the parent interior.
        PolytopalPartition sub;
        sub.parent = parent;
        for (int id : cell_ids) sub.cells.push_back(p.cells[id]);
        Halfspace split;
        bool found = false;
        for (const Halfspace& plane : facet_planes(sub)) {
            bool below = false, above = false;
            for (const Vec& v : parent.vertices()) {
                const double s = plane.normal.dot(v) - plane.offset;
                below = below || s < -kIncidenceTol * (1.0 + v.norm());
                above = above || s > kIncidenceTol * (1.0 + v.norm());
            }
            if (below && above) {
                split = plane;
                found = true;
                break;
            }
        }
        if (!found)
            throw NotCompleteError("inductive_certificate: no splitting facet plane found");
        std::vector<int> minus_ids, plus_ids;
        for (int id : cell_ids) {
            bool in_minus = true;
            for (const Vec& v : p.cells[id].vertices())
                if (split.normal.dot(v) > split.offset + kIncidenceTol * (1.0 + v.norm()))
                    in_minus = false;
            (in_minus ? minus_ids : plus_ids).push_back(id);
        }
        if (minus_ids.empty() || plus_ids.empty())
            throw NotCompleteError("inductive_certificate: splitting plane failed to separate cells");
        std::vector<Halfspace> hs_minus = parent.halfspaces();
        hs_minus.push_back(split);
        std::vector<Halfspace> hs_plus = parent.halfspaces();
        hs_plus.push_back({split.normal * -1.0, -split.offset});
        const int left = build(Polytope::from_halfspaces(n, hs_minus), minus_ids);
        const int right = build(Polytope::from_halfspaces(n, hs_plus), plus_ids);
        cert.push_back({parent, false, left, right});
        return static_cast<int>(cert.size()) - 1;
    };

    std::vector<int> all(p.cells.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    build(p.parent, all);
    return cert;
}

bool validate_certificate(const InductiveCertificate& cert, const PolytopalPartition& p) {
    if (cert.empty()) return false;
    const double parent_vol = cell_volume(p.parent);
    if (std::abs(cell_volume(cert.back().body) - parent_vol) > 1e-9 * std::max(1.0, parent_vol))
        return false;
    if (hausdorff_distance(cert.back().body, p.parent) > 1e-8) return false;

    std::vector<bool> used(p.cells.size(), false);
    for (std::size_t i = 0; i < cert.size(); ++i) {
        const CertificateEntry& e = cert[i];
        if (e.leaf) {
            bool matched = false;
            for (std::size_t c = 0; c < p.cells.size(); ++c) {
                if (used[c]) continue;
                if (hausdorff_distance(e.body, p.cells[c]) <= 1e-8) {
                    used[c] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        } else {
            if (e.left < 0 || e.right < 0 || e.left >= static_cast<int>(i) ||
                e.right >= static_cast<int>(i))
                return false;
            const Polytope& a = cert[e.left].body;
            const Polytope& b = cert[e.right].body;
            if (cell_volume(a.intersect(b)) > 1e-9 * std::max(1.0, parent_vol)) return false;
            const double vol = cell_volume(e.body);
            if (std::abs(cell_volume(a) + cell_volume(b) - vol) > 1e-9 * std::max(1.0, vol))
                return false;
            for (const Vec& v : a.vertices())
                if (!e.body.contains(v, 1e-8)) return false;
            for (const Vec& v : b.vertices())
                if (!e.body.contains(v, 1e-8)) return false;
        }
    }
    return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

double verify_decomposition(const ValuationOracle& oracle, const ConvexFn& u,
                            const PolytopalPartition& p) {
    double sum = 0.0;
    for (const Polytope& cell : p.cells) sum += oracle(add(u, ConvexFn::indicator(cell)));
    return std::abs(oracle(add(u, ConvexFn::indicator(p.parent))) - sum);
}

RiemannSandwich riemann_sandwich(const IntegralValuation& val, const ConvexFn& u,
                                 const PolytopalPartition& p) {
    const int n = p.parent.ambient_dim();
    if (val.k() != n) throw DimensionMismatchError("riemann_sandwich: requires k = dim");
    const DensityFn& f = val.density();
    RiemannSandwich s;
    s.value = eval_sublevel(val, add(u, ConvexFn::indicator(p.parent)));
    for (const Polytope& cell : p.cells) {
        const double vol = cell_volume(cell);
        double max_u = -std::numeric_limits<double>::infinity();
        for (const Vec& v : cell.vertices()) max_u = std::max(max_u, u.evaluate(v));
        const ConvexFn restricted = add(u, ConvexFn::indicator(cell));
        if (restricted.is_infty()) continue; // u is infinite on the whole cell
        const double min_u = restricted.min_info().value;
        s.lower += (std::isfinite(max_u) ? f(max_u) : 0.0) * vol;
        s.upper += f(min_u) * vol;
    }
    return s;
}

PolytopalPartition uniform_refine(const PolytopalPartition& p) {
    const int n = p.parent.ambient_dim();
    PolytopalPartition out;
    out.parent = p.parent;
    for (const Polytope& cell : p.cells) {
        std::vector<Polytope> parts{cell};
        Vec lo, hi;
        cell.bounding_box(lo, hi);
        for (int axis = 0; axis < n; ++axis) {
            const double mid = 0.5 * (lo[axis] + hi[axis]);
            Vec e = Vec::zero(n);
            e[axis] = 1.0;
            std::vector<Polytope> next;
            for (const Polytope& part : parts) {
                for (const Halfspace& side :
                     {Halfspace{e, mid}, Halfspace{e * -1.0, -mid}}) {
                    std::vector<Halfspace> hs = part.halfspaces();
                    hs.push_back(side);
                    Polytope half = Polytope::from_halfspaces(n, hs);
                    if (!half.is_empty() && half.affine_dim() == n &&
                        cell_volume(half) > 1e-12 * std::max(1.0, cell_volume(part)))
                        next.push_back(std::move(half));
                }
            }
            parts = std::move(next);
        }
        for (Polytope& part : parts) out.cells.push_back(std::move(part));
    }
    return out;
}

} // namespace funcval
