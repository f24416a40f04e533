#include "needlecast/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "needlecast/summation.hpp"

namespace needlecast {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights. QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double lo;
    double hi;
    double value;
    double err;
};

// One G7/K15 evaluation on [lo, hi] with QUADPACK-style error scaling.
PanelEstimate gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double center = 0.5 * (lo + hi);

    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j][0] = f1;
        fv[j][1] = f2;
        const double fsum = f1 + f2;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j][0] - reskh) + std::abs(fv[j][1] - reskh));
    }

    const double abs_half = std::abs(half);
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double epmach = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * epmach)) {
        err = std::max(epmach * 50.0 * resabs, err);
    }
    return {lo, hi, resk * half, err};
}

struct WorstFirst {
    bool operator()(const PanelEstimate& a, const PanelEstimate& b) const {
        return a.err < b.err;
    }
};

double panels_total(const std::vector<PanelEstimate>& panels) {
    std::vector<double> vals(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) vals[i] = panels[i].value;
    return pairwise_sum(vals);
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol, std::int64_t max_evals) {
    if (!(hi > lo)) return {0.0, 0.0, 0};

    std::priority_queue<PanelEstimate, std::vector<PanelEstimate>, WorstFirst> queue;
    std::int64_t evals = 15;
    queue.push(gk15(f, lo, hi));
    double total_err = queue.top().err;

    while (total_err > abs_tol && queue.top().err > 0.0) {
        if (evals + 30 > max_evals) {
            std::vector<PanelEstimate> rest;
            while (!queue.empty()) {
                rest.push_back(queue.top());
                queue.pop();
            }
            std::sort(rest.begin(), rest.end(),
                      [](const PanelEstimate& a, const PanelEstimate& b) {
                          return a.lo < b.lo;
                      });
            throw QuadratureError(
                "integrate_1d: evaluation budget exhausted before tolerance",
                {panels_total(rest), total_err, evals});
        }
        const PanelEstimate worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            // Interval too narrow to split; keep its estimate as-is.
            total_err -= worst.err;
            PanelEstimate frozen = worst;
            frozen.err = 0.0;
            queue.push(frozen);
            continue;
        }
        const PanelEstimate left = gk15(f, worst.lo, mid);
        const PanelEstimate right = gk15(f, mid, worst.hi);
        evals += 30;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    std::vector<PanelEstimate> panels;
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const PanelEstimate& a, const PanelEstimate& b) {
                  return a.lo < b.lo;
              });
    return {panels_total(panels), total_err, evals};
}

namespace {

constexpr double kPi = std::numbers::pi;

// Shared evaluation budget across nested integrals.
struct Budget {
    std::int64_t used = 0;
    std::int64_t cap = kDefaultQuadBudget;
};

// Outer-adaptive / inner-adaptive product rule over a region given as
// x in [xlo, xhi], y in [ylo(x), yhi(x)]. The inner integral is resolved to
// the absolute tolerance inner_tol for every outer node, so the outer
// integrand is within inner_tol of the true section integral; that adds at
// most inner_tol * (xhi - xlo) to the total error.
QuadResult integrate_product(
    const std::function<double(double, double)>& f, double xlo, double xhi,
    const std::function<double(double)>& ylo, const std::function<double(double)>& yhi,
    double tol, Budget& budget) {
    if (!(xhi > xlo)) return {0.0, 0.0, 0};

    const double outer_tol = 0.5 * tol;
    const double inner_tol = 0.5 * tol / (xhi - xlo);

    const auto section = [&](double x) {
        const double lo = ylo(x);
        const double hi = yhi(x);
        if (!(hi > lo)) return 0.0;
        const std::int64_t remaining = budget.cap - budget.used;
        if (remaining < 15) {
            throw QuadratureError("integrate_region: evaluation budget exhausted",
                                  {0.0, std::numeric_limits<double>::infinity(),
                                   budget.used});
        }
        const QuadResult inner = integrate_1d([&](double y) { return f(x, y); },
                                              lo, hi, inner_tol, remaining);
        budget.used += inner.evals;
        return inner.value;
    };

    QuadResult outer;
    try {
        outer = integrate_1d(section, xlo, xhi, outer_tol,
                             std::numeric_limits<std::int64_t>::max());
    } catch (const QuadratureError& e) {
        // Budget exhaustion surfaces from the inner call; re-tag with totals.
        throw QuadratureError(e.what(),
                              {e.best().value, e.best().err_est, budget.used});
    }
    return {outer.value, outer.err_est + inner_tol * (xhi - xlo), budget.used};
}

}  // namespace

QuadResult integrate_region(const std::function<double(const ClusterCenter&)>& f,
                            Region region, const LatticeParams& lat, double tol,
                            std::int64_t max_evals) {
    if (!(tol >= 1e-13)) {
        throw std::invalid_argument("integrate_region: tol must be >= 1e-13");
    }
    Budget budget{0, max_evals};
    const double half_a = lat.a() / 2.0;
    const double half_b = lat.b() / 2.0;

    const auto eval = [&f, region](double x, double y) {
        return f(ClusterCenter{x, y, region});
    };

    switch (region) {
        case Region::F1:
            return integrate_product(eval, 1.0, half_a, [](double) { return 1.0; },
                                     [&](double) { return half_b; }, tol, budget);
        case Region::F2:
            return integrate_product(eval, 0.0, 1.0, [](double) { return 1.0; },
                                     [&](double) { return half_b; }, tol, budget);
        case Region::F3:
            return integrate_product(eval, 1.0, half_a, [](double) { return 0.0; },
                                     [](double) { return 1.0; }, tol, budget);
        case Region::F4: {
            // x = sin(t): dx = cos(t) dt, lower boundary sqrt(1-x^2) = cos(t).
            const auto g = [&](double t, double y) { return std::cos(t) * eval(std::sin(t), y); };
            return integrate_product(g, 0.0, kPi / 2.0,
                                     [](double t) { return std::cos(t); },
                                     [](double) { return 1.0; }, tol, budget);
        }
        case Region::F5: {
            const auto g = [&](double t, double y) { return std::cos(t) * eval(std::sin(t), y); };
            return integrate_product(g, 0.0, kPi / 2.0, [](double) { return 0.0; },
                                     [](double t) { return std::cos(t); }, tol, budget);
        }
    }
    return {0.0, 0.0, 0};
}

}  // namespace needlecast
