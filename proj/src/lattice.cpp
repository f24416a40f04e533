#include "needlecast/lattice.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace needlecast {

namespace {
constexpr double kPi = std::numbers::pi;
}

LatticeParams::LatticeParams(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::domain_error("lattice sides must be finite");
    }
    if (a < 2.0 || b < 2.0) {
        throw std::domain_error("lattice requires min(a, b) >= 2, got a=" +
                                std::to_string(a) + " b=" + std::to_string(b));
    }
    lambda_ = 1.0 / a;
    mu_ = 1.0 / b;
}

const char* region_name(Region r) noexcept {
    switch (r) {
        case Region::F1: return "F1";
        case Region::F2: return "F2";
        case Region::F3: return "F3";
        case Region::F4: return "F4";
        case Region::F5: return "F5";
    }
    return "?";
}

ClusterCenter classify_region(double x, double y, const LatticeParams& lat) {
    if (!(x >= 0.0)) {
        throw std::domain_error("classify_region: x < 0 violates 0 <= x");
    }
    if (!(x <= lat.a() / 2.0)) {
        throw std::domain_error("classify_region: x > a/2 violates x <= a/2");
    }
    if (!(y >= 0.0)) {
        throw std::domain_error("classify_region: y < 0 violates 0 <= y");
    }
    if (!(y <= lat.b() / 2.0)) {
        throw std::domain_error("classify_region: y > b/2 violates y <= b/2");
    }

    // Precedence on shared boundaries: F5 > F4 > F2 > F3 > F1.
    if (x <= 1.0) {
        const double arc = std::sqrt(std::max(0.0, 1.0 - x * x));
        if (y <= arc) return {x, y, Region::F5};
        if (y <= 1.0) return {x, y, Region::F4};
        return {x, y, Region::F2};
    }
    if (y <= 1.0) return {x, y, Region::F3};
    return {x, y, Region::F1};
}

ClusterCenter make_cluster_center(Region region, double x, double y,
                                  const LatticeParams& lat) {
    const double eps = 1e-12;
    const auto fail = [&](const char* what) {
        throw std::domain_error(std::string("make_cluster_center: point not in ") +
                                region_name(region) + ": " + what);
    };
    if (x < -eps || x > lat.a() / 2.0 + eps) fail("x outside [0, a/2]");
    if (y < -eps || y > lat.b() / 2.0 + eps) fail("y outside [0, b/2]");
    const double arc = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, x) * std::min(1.0, x)));
    switch (region) {
        case Region::F1:
            if (x < 1.0 - eps || y < 1.0 - eps) fail("needs x >= 1, y >= 1");
            break;
        case Region::F2:
            if (x > 1.0 + eps || y < 1.0 - eps) fail("needs x <= 1, y >= 1");
            break;
        case Region::F3:
            if (x < 1.0 - eps || y > 1.0 + eps) fail("needs x >= 1, y <= 1");
            break;
        case Region::F4:
            if (x > 1.0 + eps || y > 1.0 + eps || y < arc - eps) {
                fail("needs x <= 1, sqrt(1-x^2) <= y <= 1");
            }
            break;
        case Region::F5:
            if (x > 1.0 + eps || y > arc + eps) fail("needs x <= 1, y <= sqrt(1-x^2)");
            break;
    }
    return {x, y, region};
}

CrossingProfile crossing_profile(const ClusterCenter& c) {
    switch (c.region) {
        case Region::F1:
            return {1.0, 0.0, 0.0};
        case Region::F2: {
            const double q1 = std::acos(c.x) / kPi;
            return {1.0 - q1, q1, 0.0};
        }
        case Region::F3: {
            const double q1 = std::acos(c.y) / kPi;
            return {1.0 - q1, q1, 0.0};
        }
        case Region::F4: {
            const double q1 = (std::acos(c.x) + std::acos(c.y)) / kPi;
            return {1.0 - q1, q1, 0.0};
        }
        case Region::F5: {
            const double q1 = 0.5;
            // Non-negative by the region inequality; clamp the rounding of
            // acos/asin on the arc itself.
            double q2 = (std::acos(c.y) - std::asin(c.x)) / (2.0 * kPi);
            if (q2 < 0.0) q2 = 0.0;
            return {1.0 - q1 - q2, q1, q2};
        }
    }
    return {1.0, 0.0, 0.0};
}

namespace {

// Count of integers k with lo < k*spacing <= hi: lines separate the
// half-open cells [k*spacing, (k+1)*spacing), so a base point sitting
// exactly on a line belongs to the cell on its upper side and crossing it
// requires reaching below. This is the continuous extension the q formulas
// take on the boundary of F (e.g. q0 = 1/4 at the origin).
int lines_hit(double lo, double hi, double spacing) {
    const auto k_lo = static_cast<long long>(std::floor(lo / spacing));
    const auto k_hi = static_cast<long long>(std::floor(hi / spacing));
    return static_cast<int>(k_hi - k_lo);
}

}  // namespace

int needle_crossings(double cx, double cy, double phi, const LatticeParams& lat) {
    const double ex = cx + std::cos(phi);
    const double ey = cy + std::sin(phi);
    const int vertical = lines_hit(std::min(cx, ex), std::max(cx, ex), lat.a());
    const int horizontal = lines_hit(std::min(cy, ey), std::max(cy, ey), lat.b());
    // A unit needle spans less than one cell per axis when min(a,b) >= 2.
    assert(vertical <= 1 && horizontal <= 1);
    return vertical + horizontal;
}

}  // namespace needlecast
