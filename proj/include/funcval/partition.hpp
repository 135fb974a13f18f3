#pragma once

#include "funcval/valuation.hpp"

namespace funcval {

struct NotCompleteError : std::runtime_error {
    explicit NotCompleteError(const std::string& what) : std::runtime_error(what) {}
};

enum class Completeness { Unknown, Complete, Incomplete };

/// Full-dimensional cells tiling a parent polytope: volumes add up to the
/// parent volume and pairwise intersections have negligible volume.
struct PolytopalPartition {
    Polytope parent;
    std::vector<Polytope> cells;
    Completeness state = Completeness::Unknown;
};

/// Validates the cover and interior-disjointness invariants.
PolytopalPartition make_partition(Polytope parent, std::vector<Polytope> cells);

/// Splits every cell by the plane {normal.x = offset}; halves without
/// interior are dropped.
PolytopalPartition refine_by_hyperplane(const PolytopalPartition& p, const Halfspace& plane);

/// Refines by every facet hyperplane of every cell, once each, in
/// lexicographic order of the canonical plane form.
PolytopalPartition complete(const PolytopalPartition& p);

bool is_complete(const PolytopalPartition& p);

/// Assembly order for the partition: leaves are cells, every merge glues two
/// earlier entries with interior-disjoint union, the last entry is the parent.
struct CertificateEntry {
    Polytope body;
    bool leaf = true;
    int left = -1;
    int right = -1;
};
using InductiveCertificate = std::vector<CertificateEntry>;

/// Requires a complete partition (throws NotCompleteError otherwise);
/// constructs the certificate by recursive hyperplane splitting.
InductiveCertificate inductive_certificate(const PolytopalPartition& p);

bool validate_certificate(const InductiveCertificate& cert, const PolytopalPartition& p);

/// |mu(u + I_parent) - sum_i mu(u + I_cell_i)| for a simple valuation oracle.
double verify_decomposition(const ValuationOracle& oracle, const ConvexFn& u,
                            const PolytopalPartition& p);

struct RiemannSandwich {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
};

/// Riemann bounds sum_i f(extrema of u on cell_i) V_n(cell_i) around
/// mu(u + I_parent), for a simple integral valuation (k = dim). The cell
/// maximum of the piecewise-linear u sits at a vertex; the minimum comes from
/// the epigraph program.
RiemannSandwich riemann_sandwich(const IntegralValuation& val, const ConvexFn& u,
                                 const PolytopalPartition& p);

/// Bisects every cell along every axis; cells shrink to at most half
/// diameter, so Riemann gaps cannot grow.
PolytopalPartition uniform_refine(const PolytopalPartition& p);

} // namespace funcval
