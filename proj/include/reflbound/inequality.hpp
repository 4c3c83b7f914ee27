#ifndef REFLBOUND_INEQUALITY_HPP
#define REFLBOUND_INEQUALITY_HPP

// The eigenvalue / conformal-volume inequality
//
//     lambda1 * Vol^(2/m) <= m * Vc^(2/m)
//
// for a compact m-dimensional Riemannian orbifold, and the volume bound it
// yields for arithmetic reflection orbifolds in dimension 3.

#include <cmath>
#include <numbers>

#include "reflbound/errors.hpp"

namespace reflbound::spectral {

template <typename Real = double>
struct InequalityCheck {
    Real lambda1 = 0;
    Real vol = 0;
    int dim_m = 2;
    Real conf_vol = 0;
    Real slack = 0; ///< m * Vc^(2/m) - lambda1 * Vol^(2/m); >= 0 iff the inequality holds

    bool holds() const { return slack >= 0; }
};

template <typename Real = double>
InequalityCheck<Real> li_yau_slack(Real lambda1, Real vol, int m, Real conf_vol)
{
    if (!(lambda1 >= 0)) {
        throw domain_error("li_yau_slack: lambda1 must be nonnegative");
    }
    if (!(vol > 0) || !(conf_vol > 0)) {
        throw domain_error("li_yau_slack: volume and conformal volume must be positive");
    }
    if (m < 2) {
        throw domain_error("li_yau_slack: dimension must be at least 2");
    }
    using std::pow;
    const Real exponent = Real(2) / Real(m);
    InequalityCheck<Real> check;
    check.lambda1 = lambda1;
    check.vol = vol;
    check.dim_m = m;
    check.conf_vol = conf_vol;
    check.slack = Real(m) * pow(conf_vol, exponent) - lambda1 * pow(vol, exponent);
    return check;
}

/// Volume of the round unit 3-sphere, 2 pi^2.
template <typename Real = double>
constexpr Real sphere3_volume = Real(2) * std::numbers::pi_v<Real> * std::numbers::pi_v<Real>;

/// Spectral gap of congruence arithmetic hyperbolic 3-orbifolds.
template <typename Real = double>
constexpr Real congruence_lambda1_floor = Real(3) / Real(4);

/// A finite subgroup of O(3) sits with index at most this in a reflection group.
inline constexpr int reflection_index_bound = 4;

template <typename Real = double>
struct BoundChain {
    Real lambda_min = congruence_lambda1_floor<Real>;
    Real vc_sphere3 = sphere3_volume<Real>;
    int index_bound = reflection_index_bound;
    Real vc_bound = 0;  ///< index_bound * vc_sphere3
    Real vol_bound = 0; ///< (3 * vc_bound^(2/3) / lambda_min)^(3/2)
};

/// Chains lambda_min * Vol^(2/3) <= lambda1 * Vol^(2/3) <= 3 Vc^(2/3) and
/// Vc <= index_bound * Vol(S^3) into an upper bound on Vol. With the
/// defaults the bound is 64 pi^2.
template <typename Real = double>
BoundChain<Real> volume_bound_chain(Real lambda_min = congruence_lambda1_floor<Real>,
                                    Real vc_sphere3 = sphere3_volume<Real>,
                                    int index_bound = reflection_index_bound)
{
    if (!(lambda_min > 0) || !(vc_sphere3 > 0)) {
        throw domain_error("volume_bound_chain: lambda_min and vc_sphere3 must be positive");
    }
    if (index_bound < 1) {
        throw domain_error("volume_bound_chain: index_bound must be at least 1");
    }
    using std::pow;
    BoundChain<Real> chain;
    chain.lambda_min = lambda_min;
    chain.vc_sphere3 = vc_sphere3;
    chain.index_bound = index_bound;
    chain.vc_bound = Real(index_bound) * vc_sphere3;
    chain.vol_bound = pow(Real(3) * pow(chain.vc_bound, Real(2) / Real(3)) / lambda_min,
                          Real(3) / Real(2));
    return chain;
}

} // namespace reflbound::spectral

#endif // REFLBOUND_INEQUALITY_HPP
