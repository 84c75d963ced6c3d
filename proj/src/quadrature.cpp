#include "innerent/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "innerent/errors.hpp"

namespace innerent {

namespace {

// Kronrod 15-point nodes on [0, 1] (symmetric) with the embedded Gauss 7 rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void validate(const QuadratureConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw DomainError("t_max must be positive");
    if (!(cfg.abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
    if (!(cfg.divergence_cap > 0.0)) throw DomainError("divergence_cap must be positive");
    if (cfg.max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
    if (cfg.radial_depth < 4 || cfg.radial_depth > 60) throw DomainError("radial_depth must lie in [4, 60]");
    if (!(cfg.radial_tol > 0.0)) throw DomainError("radial_tol must be positive");
}

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_intervals, double cap, int initial_panels) {
    IntegralResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    if (initial_panels < 1) initial_panels = 1;

    std::priority_queue<Panel> panels;
    double value = 0.0;
    double error = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == initial_panels) ? b : lo + width;
        Panel p = gauss_kronrod(f, lo, hi);
        value += p.value;
        error += p.error;
        panels.push(p);
    }

    int count = initial_panels;
    while (error > abs_tol && count < max_intervals) {
        if (cap > 0.0 && std::abs(value) > cap) break;
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval no longer splittable in double precision
            panels.push({worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    // recompute sums from the panels to shed accumulated rounding
    value = 0.0;
    error = 0.0;
    std::vector<Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    for (const auto& p : all) {
        value += p.value;
        error += p.error;
    }
    out.value = value;
    out.error = error;
    out.intervals = count;
    out.capped = cap > 0.0 && std::abs(value) > cap;
    out.converged = error <= abs_tol;
    return out;
}

}  // namespace innerent
