#include "funcval/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

namespace funcval {

std::optional<std::array<double, 4>> solve_small(int n, const double A[4][4], const double b[4]) {
    double m[4][5];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m[r][c] = A[r][c];
        m[r][n] = b[r];
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < kTinyPivot) return std::nullopt;
        if (pivot != col)
            for (int c = col; c <= n; ++c) std::swap(m[pivot][c], m[col][c]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = m[r][col] / m[col][col];
            for (int c = col; c <= n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::array<double, 4> x{0, 0, 0, 0};
    for (int r = 0; r < n; ++r) x[r] = m[r][n] / m[r][r];
    return x;
}

namespace {

GaussRule compute_gauss(int points) {
    GaussRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (int i = 0; i < points; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= points; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int points) {
    if (points < 1 || points > 256) throw std::invalid_argument("gauss_legendre: bad point count");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_gauss(points)).first;
    return it->second;
}

std::vector<double> polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("polyfit: bad data");
    const int n = degree + 1;
    if (n > 4) throw std::invalid_argument("polyfit: degree too high");
    double ata[4][4] = {};
    double atb[4] = {};
    for (std::size_t s = 0; s < xs.size(); ++s) {
        double pw[4];
        pw[0] = 1.0;
        for (int i = 1; i < n; ++i) pw[i] = pw[i - 1] * xs[s];
        for (int i = 0; i < n; ++i) {
            atb[i] += pw[i] * ys[s];
            for (int j = 0; j < n; ++j) ata[i][j] += pw[i] * pw[j];
        }
    }
    auto sol = solve_small(n, ata, atb);
    if (!sol) throw std::runtime_error("polyfit: singular normal equations");
    return std::vector<double>(sol->begin(), sol->begin() + n);
}

double polyval(const std::vector<double>& coef, double x) {
    double acc = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

double upper_gamma_int(int k, double a) {
    if (a < 0) throw std::invalid_argument("upper_gamma_int: negative lower limit");
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    double sum = 0.0, term = 1.0; // a^j / j!
    for (int j = 0; j <= k; ++j) {
        sum += term;
        term *= a / (j + 1);
    }
    return fact * std::exp(-a) * sum;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace funcval
