#include "isoval/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

#include "isoval/constants.hpp"

namespace isoval {

double compensated_sum(std::span<const double> values) {
    KahanSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration from the Chebyshev-like initial guess; symmetric pair
    // (i, n-1-i) filled together.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> breakpoints, int points_per_panel) {
    std::vector<double> cuts{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    static thread_local std::vector<std::pair<int, GaussRule>> cache;
    const GaussRule* base = nullptr;
    for (auto& [np, r] : cache)
        if (np == points_per_panel) base = &r;
    if (!base) {
        cache.emplace_back(points_per_panel, gauss_legendre(points_per_panel));
        base = &cache.back().second;
    }
    KahanSum acc;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        const double half = 0.5 * (cuts[k + 1] - cuts[k]);
        if (half <= 0.0) continue;
        for (int i = 0; i < points_per_panel; ++i)
            acc.add(f(mid + half * base->nodes[i]) * half * base->weights[i]);
    }
    return acc.value();
}

namespace {

// Nodes stored as distances from the nearer endpoint so that evaluation
// points can hug an endpoint far below double spacing around 1. That keeps
// algebraic endpoint singularities (x - a)^alpha, alpha > -1, integrable to
// machine precision.
struct TanhSinhTable {
    struct Node {
        double delta;  // distance from the nearer endpoint, in [-1, 1] scale
        double weight;
        bool left;
    };
    std::vector<Node> nodes;

    TanhSinhTable() {
        const double h = 1.0 / 64.0;
        for (int k = -290; k <= 290; ++k) {
            const double t = k * h;
            const double y = 0.5 * kPi * std::sinh(t);
            // 1 - |tanh(y)| = 2 / (exp(2|y|) + 1), stable for large |y|
            const double delta = 2.0 / (std::exp(2.0 * std::abs(y)) + 1.0);
            const double sech = 1.0 / std::cosh(y);
            const double w = h * 0.5 * kPi * std::cosh(t) * sech * sech;
            if (delta < 1e-60 || w < 1e-60) continue;
            nodes.push_back({delta, w, y < 0.0});
        }
    }
};

}  // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    static const TanhSinhTable table;
    const double half = 0.5 * (b - a);
    if (half <= 0.0) return 0.0;
    KahanSum acc;
    for (const auto& node : table.nodes) {
        const double x = node.left ? a + half * node.delta : b - half * node.delta;
        acc.add(f(x) * node.weight);
    }
    return acc.value() * half;
}

}  // namespace isoval
