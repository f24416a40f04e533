#pragma once

#include <string>

namespace needlecast {

/// Rectangle lattice with cell sides a, b measured in needle lengths,
/// plus the reciprocals lambda = 1/a and mu = 1/b. Construction requires
/// min(a, b) >= 2 so that a unit needle can cross at most one vertical
/// and one horizontal lattice line.
class LatticeParams {
public:
    LatticeParams(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }

    /// The lattice with the roles of the axes exchanged.
    LatticeParams swapped() const { return {b_, a_}; }

private:
    double a_;
    double b_;
    double lambda_;
    double mu_;
};

/// Subregions of the fundamental subset F = [0, a/2] x [0, b/2]:
///   F1: x >= 1, y >= 1            (no line reachable)
///   F2: x <= 1, y >= 1            (vertical line reachable)
///   F3: x >= 1, y <= 1            (horizontal line reachable)
///   F4: x <= 1, sqrt(1-x^2) <= y <= 1
///   F5: x <= 1, y <= sqrt(1-x^2)  (one needle can cross both lines)
enum class Region { F1, F2, F3, F4, F5 };

const char* region_name(Region r) noexcept;

/// A point of F tagged with the subregion it lies in.
struct ClusterCenter {
    double x;
    double y;
    Region region;
};

/// Probabilities that a single needle anchored at a cluster center crosses
/// zero, one, or two lattice lines.
struct CrossingProfile {
    double q0;
    double q1;
    double q2;
};

/// Assigns the unique region tag to a point of F. Boundary points go to the
/// first match in the precedence order F5 > F4 > F2 > F3 > F1. Throws
/// std::domain_error when (x, y) lies outside F, naming the violated bound.
ClusterCenter classify_region(double x, double y, const LatticeParams& lat);

/// Checked constructor for a center with a caller-chosen region tag.
/// Validates the region's defining inequalities (with a small floating-point
/// slack on the curved boundary) and throws std::domain_error on violation.
ClusterCenter make_cluster_center(Region region, double x, double y,
                                  const LatticeParams& lat);

/// Per-needle crossing probabilities at a center; q0 + q1 + q2 == 1.
CrossingProfile crossing_profile(const ClusterCenter& c);

/// Number of lattice lines (x = k*a and y = m*b) crossed by the unit segment
/// from (cx, cy) at angle phi. An endpoint landing exactly on a line counts
/// as a crossing.
int needle_crossings(double cx, double cy, double phi, const LatticeParams& lat);

}  // namespace needlecast
