#pragma once

#include <numbers>
#include <vector>

namespace envlab {

// Parameter domain: the period [0, 2pi) for trigonometric families, or a
// closed interval for polynomial ones.
struct Domain {
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi;
    bool periodic = true;

    static Domain period() { return {}; }
    static Domain interval(double lo, double hi) { return {lo, hi, false}; }

    double length() const noexcept { return hi - lo; }
    // Periodic domains map x into [lo, hi); intervals return x unchanged.
    double wrap(double x) const noexcept;
    // Periodic domains use the shorter way around.
    double distance(double x, double y) const noexcept;
};

struct Root {
    double x = 0.0;
    int multiplicity = 1;
};

struct RootOptions {
    int samples = 4096;
    double x_tol = 1e-13;
    // A sign-preserving local minimum of |p| counts as an even-order root when
    // it falls below even_tol * max|p|.
    double even_tol = 1e-8;
    int max_multiplicity = 5;
    // Radius of the local jet used to estimate multiplicity.
    double cluster_radius = 1e-4;
    double merge_radius = 1e-8;
};

// All real roots of p on the domain.
//
// Odd-order roots come from sign changes on a uniform grid refined by
// bisection; even-order roots from sign changes of p' at which |p| is below
// the even tolerance. Each candidate is then polished: when the local jet says
// the root is a cluster of order k, it is moved onto the simple root of
// p^(k-1) and accepted only if p, ..., p^(k-2) vanish there too.
//
// Instantiated for TrigPoly and Polynomial.
template <class P>
std::vector<Root> find_roots(const P& p, const Domain& dom, const RootOptions& opt = {});

// Largest |p| over a uniform grid of the domain.
template <class P>
double sampled_max(const P& p, const Domain& dom, int samples = 4096);

}  // namespace envlab
