#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "funcval/io_json.hpp"

using namespace funcval;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(9) << x;
    return os.str();
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:n" -> n equally spaced points on [a, b].
    double a = 0, b = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw std::invalid_argument("bad grid spec, expected a:b:n");
    std::vector<double> grid;
    for (int i = 0; i < n; ++i) grid.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return grid;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

int cmd_eval(const std::string& fn_path, const std::string& measure_path, int k,
             const std::string& route, bool all_routes) {
    const ConvexFn u = convex_fn_from_json(load_json(fn_path));
    const IntegralValuation val(k, measure_from_json(load_json(measure_path)));
    if (all_routes) {
        const double s = eval_sublevel(val, u);
        const double b = eval_beta(val, u);
        std::cout << "sublevel " << fmt(s) << "\n";
        std::cout << "beta " << fmt(b) << "\n";
        std::cout << "delta_sublevel_beta " << fmt(std::abs(s - b)) << "\n";
        if (!u.is_infty() && k == u.dim()) {
            const double l = eval_layercake(val, u);
            std::cout << "layercake " << fmt(l) << "\n";
            std::cout << "delta_sublevel_layercake " << fmt(std::abs(s - l)) << "\n";
        }
        return 0;
    }
    double v = 0.0;
    if (route == "sublevel")
        v = eval_sublevel(val, u);
    else if (route == "beta")
        v = eval_beta(val, u);
    else if (route == "layercake")
        v = eval_layercake(val, u);
    else
        throw std::invalid_argument("unknown route " + route);
    std::cout << fmt(v) << "\n";
    return 0;
}

int cmd_profile(const std::string& fn_path, int k, const std::string& out_path) {
    const ConvexFn u = convex_fn_from_json(load_json(fn_path));
    const SublevelProfile prof = profile(u, k);
    std::ostringstream os;
    os << "# breakpoints:";
    for (double b : prof.breakpoints()) os << ' ' << fmt(b);
    os << "\n# atom_mass: " << fmt(prof.atom_mass()) << " at m: " << fmt(prof.m_value()) << "\n";
    os << "t,v_" << k << "\n";
    std::vector<double> grid = prof.breakpoints();
    const double lo = prof.m_value() - 0.5;
    const double hi = (grid.empty() ? prof.m_value() : grid.back()) + 2.0;
    for (int i = 0; i <= 200; ++i) grid.push_back(lo + (hi - lo) * i / 200.0);
    std::sort(grid.begin(), grid.end());
    for (double t : grid) os << fmt(t) << ',' << fmt(prof.value(t)) << "\n";
    write_text(out_path, os.str());
    return 0;
}

int cmd_densities(const std::string& oracle_path, const std::string& grid_spec, double r,
                  const std::string& out_path) {
    const ValuationOracle oracle = oracle_from_json(load_json(oracle_path));
    std::ostringstream os;
    os << "t";
    for (int k = 0; k <= oracle.dim; ++k) os << ",f" << k;
    os << "\n";
    for (double t : parse_grid(grid_spec)) {
        const GeometricDensities d = recover_densities(oracle, t, r);
        os << fmt(t);
        for (int k = 0; k <= oracle.dim; ++k) os << ',' << fmt(d[k]);
        os << "\n";
    }
    if (out_path.empty())
        std::cout << os.str();
    else
        write_text(out_path, os.str());
    return 0;
}

int cmd_partition_complete(const std::string& in_path, const std::string& out_path,
                           const std::string& cert_path) {
    const PolytopalPartition p = partition_from_json(load_json(in_path));
    const PolytopalPartition done = complete(p);
    write_text(out_path, partition_to_json(done).dump(2) + "\n");
    if (!cert_path.empty())
        write_text(cert_path, certificate_to_json(inductive_certificate(done)).dump(2) + "\n");
    return 0;
}

int cmd_verify(const std::string& suite, long trials, std::uint64_t seed, double tol,
               const std::string& report_path) {
    const SuiteReport report = run_suite(suite, trials, seed, tol);
    for (const CheckResult& c : report.checks)
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << " trials=" << c.trials
                  << " max_residual=" << fmt(c.max_residual) << " tol=" << fmt(c.tolerance) << "\n";
    if (!report_path.empty()) write_text(report_path, report_to_json(report).dump(2) + "\n");
    return report.pass ? 0 : 2;
}

int cmd_undergraph(const std::string& lambda_spec, const std::string& out_path) {
    const UndergraphStudy study = undergraph_lambda_sweep(parse_list(lambda_spec));
    std::ostringstream os;
    os << "lambda,value,reference\n";
    for (std::size_t i = 0; i < study.lambdas.size(); ++i) {
        const double ref = 2.0 * std::sqrt(1.0 + study.lambdas[i] * study.lambdas[i]);
        os << fmt(study.lambdas[i]) << ',' << fmt(study.values[i]) << ',' << fmt(ref) << "\n";
    }
    if (out_path.empty()) {
        for (double v : study.values) std::cout << fmt(v) << "\n";
    } else {
        write_text(out_path, os.str());
        std::cout << "max_formula_error " << fmt(study.max_formula_error) << "\n";
        std::cout << "poly_fit_residual " << fmt(study.poly_fit_residual) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral valuations on coercive convex functions"};
    app.require_subcommand(1);

    std::string fn_path, measure_path, route = "sublevel", oracle_path, grid_spec = "0:1:5";
    std::string in_path, out_path, cert_path, report_path, suite = "all", lambda_spec = "1";
    int k = 0;
    long trials = 20;
    std::uint64_t seed = 1;
    double tol = 0.0, radius = 1.0;
    bool all_routes = false;

    CLI::App* eval = app.add_subcommand("eval", "evaluate an integral valuation on a function");
    eval->add_option("--fn", fn_path, "ConvexFn JSON file")->required();
    eval->add_option("--measure", measure_path, "measure JSON file")->required();
    eval->add_option("--k", k, "intrinsic-volume index")->required();
    eval->add_option("--route", route, "sublevel|layercake|beta");
    eval->add_flag("--all-routes", all_routes, "print every applicable route and deltas");

    CLI::App* prof = app.add_subcommand("profile", "dump t -> v_k(u;t) as CSV");
    prof->add_option("--fn", fn_path)->required();
    prof->add_option("--k", k)->required();
    prof->add_option("--out", out_path)->required();

    CLI::App* dens = app.add_subcommand("densities", "recover geometric densities of an oracle");
    dens->add_option("--oracle", oracle_path, "oracle spec JSON")->required();
    dens->add_option("--t", grid_spec, "grid a:b:n");
    dens->add_option("--r", radius, "box side for the triangular solve");
    dens->add_option("--out", out_path, "CSV output (stdout when omitted)");

    CLI::App* part = app.add_subcommand("partition", "partition operations");
    CLI::App* part_complete = part->add_subcommand("complete", "complete a polytopal partition");
    part_complete->add_option("--in", in_path)->required();
    part_complete->add_option("--out", out_path)->required();
    part_complete->add_option("--certificate", cert_path);

    CLI::App* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", suite, "all|routes|lattice|partitions|undergraph");
    verify->add_option("--trials", trials);
    verify->add_option("--seed", seed);
    verify->add_option("--tol", tol, "override per-check tolerances");
    verify->add_option("--report", report_path, "JSON report path");

    CLI::App* under = app.add_subcommand("undergraph", "lambda sweep of the undergraph length");
    under->add_option("--lambda", lambda_spec, "comma-separated lambda grid");
    under->add_option("--out", out_path, "CSV output (values to stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return cmd_eval(fn_path, measure_path, k, route, all_routes);
        if (prof->parsed()) return cmd_profile(fn_path, k, out_path);
        if (dens->parsed()) return cmd_densities(oracle_path, grid_spec, radius, out_path);
        if (part->parsed() && part_complete->parsed())
            return cmd_partition_complete(in_path, out_path, cert_path);
        if (verify->parsed()) return cmd_verify(suite, trials, seed, tol, report_path);
        if (under->parsed()) return cmd_undergraph(lambda_spec, out_path);
        std::cerr << app.help() << "\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
