#include "funcval/io_json.hpp"

namespace funcval {

namespace {

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
    return a;
}

Vec vec_from_json(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument("vector has wrong length");
    Vec v = Vec::zero(dim);
    for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
    return v;
}

std::vector<Halfspace> halfspaces_from_json(const json& j, int dim) {
    std::vector<Halfspace> hs;
    for (const json& h : j) hs.push_back({vec_from_json(h.at("c"), dim), h.at("d").get<double>()});
    return hs;
}

} // namespace

json polytope_to_json(const Polytope& p) {
    json j;
    j["dim"] = p.ambient_dim();
    j["halfspaces"] = json::array();
    for (const Halfspace& h : p.halfspaces())
        j["halfspaces"].push_back({{"c", vec_to_json(h.normal)}, {"d", h.offset}});
    j["vertices"] = json::array();
    for (const Vec& v : p.vertices()) j["vertices"].push_back(vec_to_json(v));
    j["empty"] = p.is_empty();
    return j;
}

Polytope polytope_from_json(const json& j) {
    const int dim = j.at("dim").get<int>();
    return Polytope::from_halfspaces(dim, halfspaces_from_json(j.at("halfspaces"), dim));
}

json convex_fn_to_json(const ConvexFn& u) {
    json j;
    j["dim"] = u.dim();
    if (u.is_infty()) {
        j["infty"] = true;
        return j;
    }
    j["pieces"] = json::array();
    for (const AffinePiece& p : u.pieces())
        j["pieces"].push_back({{"a", vec_to_json(p.slope)}, {"b", p.intercept}});
    if (u.domain_free()) {
        j["domain"] = "free";
    } else {
        json d;
        d["dim"] = u.dim();
        d["halfspaces"] = json::array();
        for (const Halfspace& h : u.domain())
            d["halfspaces"].push_back({{"c", vec_to_json(h.normal)}, {"d", h.offset}});
        j["domain"] = d;
    }
    return j;
}

ConvexFn convex_fn_from_json(const json& j) {
    const int dim = j.at("dim").get<int>();
    if (j.value("infty", false)) return ConvexFn::infinity(dim);
    std::vector<AffinePiece> pieces;
    for (const json& p : j.at("pieces"))
        pieces.push_back({vec_from_json(p.at("a"), dim), p.at("b").get<double>()});
    std::vector<Halfspace> domain;
    if (j.contains("domain") && !(j.at("domain").is_string() && j.at("domain") == "free"))
        domain = halfspaces_from_json(j.at("domain").at("halfspaces"), dim);
    return ConvexFn::make(dim, std::move(pieces), std::move(domain));
}

json measure_to_json(const RadonMeasure& nu) {
    json j;
    j["atoms"] = json::array();
    for (const MeasureAtom& a : nu.atoms()) j["atoms"].push_back({{"t", a.location}, {"w", a.weight}});
    j["density"] = json::array();
    for (const PolyDensity& p : nu.pieces())
        j["density"].push_back({{"lo", p.lo}, {"hi", p.hi}, {"poly", p.coef}});
    if (nu.exp_tail() && nu.exp_tail()->scale > 0)
        j["density"].push_back({{"lo", nu.exp_tail()->lo}, {"exp", nu.exp_tail()->scale}});
    return j;
}

RadonMeasure measure_from_json(const json& j) {
    std::vector<MeasureAtom> atoms;
    if (j.contains("atoms"))
        for (const json& a : j.at("atoms"))
            atoms.push_back({a.at("t").get<double>(), a.at("w").get<double>()});
    std::vector<PolyDensity> pieces;
    std::optional<ExpTailDensity> tail;
    if (j.contains("density")) {
        for (const json& d : j.at("density")) {
            if (d.contains("exp")) {
                tail = ExpTailDensity{d.at("lo").get<double>(), d.at("exp").get<double>()};
            } else {
                PolyDensity p;
                p.lo = d.at("lo").get<double>();
                p.hi = d.at("hi").get<double>();
                p.coef = d.at("poly").get<std::vector<double>>();
                pieces.push_back(std::move(p));
            }
        }
    }
    return RadonMeasure::make(std::move(atoms), std::move(pieces), tail);
}

json partition_to_json(const PolytopalPartition& p) {
    json j;
    j["parent"] = polytope_to_json(p.parent);
    j["cells"] = json::array();
    for (const Polytope& c : p.cells) j["cells"].push_back(polytope_to_json(c));
    return j;
}

PolytopalPartition partition_from_json(const json& j) {
    Polytope parent = polytope_from_json(j.at("parent"));
    std::vector<Polytope> cells;
    for (const json& c : j.at("cells")) cells.push_back(polytope_from_json(c));
    return make_partition(std::move(parent), std::move(cells));
}

json certificate_to_json(const InductiveCertificate& cert) {
    json j = json::array();
    for (const CertificateEntry& e : cert) {
        json entry;
        entry["body"] = polytope_to_json(e.body);
        if (e.leaf)
            entry["leaf"] = true;
        else
            entry["merge"] = {e.left, e.right};
        j.push_back(entry);
    }
    return j;
}

json report_to_json(const SuiteReport& report) {
    json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["tol_override"] = report.tol_override;
    j["input_hash"] = report.input_hash;
    j["pass"] = report.pass;
    j["checks"] = json::array();
    for (const CheckResult& c : report.checks)
        j["checks"].push_back({{"check", c.name},
                               {"trials", c.trials},
                               {"max_residual", c.max_residual},
                               {"tolerance", c.tolerance},
                               {"seed", report.seed},
                               {"pass", c.pass}});
    return j;
}

ValuationOracle oracle_from_json(const json& j) {
    const int k = j.at("k").get<int>();
    const RadonMeasure nu = measure_from_json(j.at("measure"));
    const int dim = j.value("dim", std::max(k, 1));
    ValuationOracle oracle = make_oracle(IntegralValuation(k, nu), dim);
    if (j.contains("mollify_eps"))
        oracle = mollified_valuation(oracle, j.at("mollify_eps").get<double>(),
                                     j.value("quad_points", 32));
    return oracle;
}

} // namespace funcval
