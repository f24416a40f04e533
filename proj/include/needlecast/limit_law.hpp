#pragma once

#include "needlecast/lattice.hpp"

namespace needlecast {

/// Parameters of the n -> infinity law: lambda = 1/a, mu = 1/b, each in
/// [0, 1/2]. Zero is admitted (the one-family limit a -> infinity) even
/// though no finite lattice produces it; callers flag that regime.
class LimitLaw {
public:
    LimitLaw(double lambda, double mu);
    static LimitLaw from_lattice(const LatticeParams& lat) {
        return {lat.lambda(), lat.mu()};
    }

    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }
    bool extrapolated() const noexcept { return lambda_ == 0.0 || mu_ == 0.0; }

private:
    double lambda_;
    double mu_;
};

/// Limit CDF: 0 below 0, two trigonometric branches on [0, 1/2) and
/// [1/2, 1), and 1 from 1 on. Both branches equal 1 - pi*lambda*mu at 1/2.
double limit_cdf(const LimitLaw& law, double x);

/// Mass of the atom at 0: (1 - 2 lambda)(1 - 2 mu).
double limit_atom(const LimitLaw& law);

/// k-th moment of the limit law (1 <= k <= kMaxMomentOrder) via the
/// three-integral closed form, each integral resolved adaptively so the
/// coefficient-weighted total error stays below tol.
double limit_moment(const LimitLaw& law, int k, double tol = 1e-10);

}  // namespace needlecast
