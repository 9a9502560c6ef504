#ifndef CARNOT_CONTACT_HPP_
#define CARNOT_CONTACT_HPP_

#include <array>
#include <functional>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/path.hpp"

namespace carnot {

struct ResidualReport {
    // index 0 corresponds to layer 2
    std::vector<double> per_layer_sup;
    std::vector<double> per_layer_l1;
    std::vector<int> excluded_nodes;

    double sup() const {
        double s = 0.0;
        for (double v : per_layer_sup) s = std::max(s, v);
        return s;
    }
};

struct NonHorizontalError : NumericError {
    NonHorizontalError(const std::string& msg, ResidualReport r)
        : NumericError(msg), report(std::move(r)) {}
    ResidualReport report;
};

// Velocity of a horizontal curve through gamma with first-layer velocity v1:
// fills the higher layers of the defining first-order system layer by layer.
Vec contact_velocity(const GradedAlgebra& alg, const Vec& gamma, const Vec& v1);

// Residual of the curve system at the grid nodes, per layer j >= 2, with
// second-order differences.  Endpoints of open curves are excluded and
// listed; closed curves wrap around.
ResidualReport contact_residual_curve(const GradedAlgebra& alg, const SampledPath& path);

// Horizontal lift of a first-layer curve from the start point init (layer-1
// part must vanish; layers >= 2 give the initial fiber position).  Classical
// one-step fourth-order integration against the cubic interpolant of gamma1;
// the first-layer part of the output matches the input exactly at nodes.
SampledPath horizontal_lift(const GradedAlgebra& alg, const SampledPath& gamma1, const Vec& init);

// Piecewise-horizontal interpolation on k equal subintervals: the
// first-layer velocity is replaced by its interval averages and each
// constant-velocity segment is lifted in closed form by the group product.
SampledPath piecewise_horizontal_approx(const GradedAlgebra& alg, const SampledPath& path, int k,
                                        double tol = 1e-6);

// Length of a horizontal path (trapezoid of |dgamma_1/dt|, fourth-order node
// derivatives).  Throws NonHorizontalError above tol.
double horizontal_length(const GradedAlgebra& alg, const SampledPath& path, double tol = 1e-6);

enum class SourceMetric { euclidean, gauge };

// Largest image/source distance ratio over distinct pairs; a sampled lower
// bound for the Lipschitz constant wrt the target gauge.
double lipschitz_ratio(const GradedAlgebra& alg,
                       const std::vector<std::pair<Vec, Vec>>& pairs, SourceMetric metric);

// Affine-horizontal maps of the first Heisenberg group: F1(x,t) = A x + a t + b
// plus the unique vertical component that makes the map horizontal.
struct HeisenbergAffineMap {
    std::array<std::array<double, 2>, 2> A;
    std::array<double, 2> a;
    std::array<double, 2> b;
    double tau;

    double f3(double x1, double x2, double t) const;
    Vec apply(const Vec& p) const;  // p = (x1, x2, t)
};

// Validates the two admissibility determinants and assembles the map.
HeisenbergAffineMap heisenberg_affine_vertical(const std::array<std::array<double, 2>, 2>& A,
                                               const std::array<double, 2>& a,
                                               const std::array<double, 2>& b, double tau);

// Sup of the pointwise contact residual of a self-map of h^1 over a set of
// base points, probing both horizontal flows with central differences of
// half-width delta.
double h1_map_contact_residual(const GradedAlgebra& h1, const std::function<Vec(const Vec&)>& map,
                               const std::vector<Vec>& points, double delta = 1e-4);

}  // namespace carnot

#endif  // CARNOT_CONTACT_HPP_
