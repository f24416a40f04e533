#include "needlecast/limit_law.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "needlecast/conditional_law.hpp"
#include "needlecast/quadrature.hpp"

namespace needlecast {

namespace {
constexpr double kPi = std::numbers::pi;
}

LimitLaw::LimitLaw(double lambda, double mu) : lambda_(lambda), mu_(mu) {
    if (!(std::isfinite(lambda) && lambda >= 0.0 && lambda <= 0.5)) {
        throw std::domain_error("LimitLaw: lambda must lie in [0, 1/2]");
    }
    if (!(std::isfinite(mu) && mu >= 0.0 && mu <= 0.5)) {
        throw std::domain_error("LimitLaw: mu must lie in [0, 1/2]");
    }
}

double limit_cdf(const LimitLaw& law, double x) {
    if (x < 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double l = law.lambda();
    const double m = law.mu();
    const double c = std::cos(kPi * x);
    const double s = std::sin(kPi * x);
    if (x < 0.5) {
        return 1.0 - 2.0 * (l + m) * c + 2.0 * (2.0 * c - kPi * x * s) * l * m;
    }
    return 1.0 + 2.0 * kPi * (x - 1.0) * l * m * s;
}

double limit_atom(const LimitLaw& law) {
    return (1.0 - 2.0 * law.lambda()) * (1.0 - 2.0 * law.mu());
}

double limit_moment(const LimitLaw& law, int k, double tol) {
    if (k < 1 || k > kMaxMomentOrder) {
        throw std::invalid_argument("limit_moment: order must be in [1, " +
                                    std::to_string(kMaxMomentOrder) + "]");
    }
    const double l = law.lambda();
    const double m = law.mu();
    const double c1 = 2.0 * kPi * (l + m) - 6.0 * kPi * l * m;
    const double c2 = -2.0 * kPi * kPi * l * m;
    const double c3 = 2.0 * kPi * l * m;

    // Each term's quadrature error enters scaled by its coefficient.
    const auto term = [&](double coeff, double lo, double hi,
                          const std::function<double(double)>& f) {
        if (coeff == 0.0) return 0.0;
        const double part_tol = tol / (3.0 * std::abs(coeff));
        return coeff * integrate_1d(f, lo, hi, part_tol).value;
    };

    double result = 0.0;
    result += term(c1, 0.0, 0.5,
                   [k](double x) { return std::pow(x, k) * std::sin(kPi * x); });
    result += term(c2, 0.0, 0.5,
                   [k](double x) { return std::pow(x, k + 1) * std::cos(kPi * x); });
    result += term(c3, 0.5, 1.0, [k](double x) {
        return std::pow(x, k) *
               (std::sin(kPi * x) - kPi * (1.0 - x) * std::cos(kPi * x));
    });
    return result;
}

}  // namespace needlecast
