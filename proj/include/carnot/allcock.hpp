#ifndef CARNOT_ALLCOCK_HPP_
#define CARNOT_ALLCOCK_HPP_

#include <string>
#include <vector>

#include "carnot/builtins.hpp"
#include "carnot/path.hpp"

namespace carnot {

// The R^s-valued 2-form on R^{mn} whose coefficients b^k_{lp} replicate the
// first-layer brackets of the model in every copy, plus its primitive.
struct MultiSymplecticForm {
    int m = 0;
    int s = 0;
    int copies = 0;
    std::vector<BracketTerm> pairs;  // a=l < b=p in [0,m), k in [0,s)

    int flat(int copy, int j) const { return copy * m + j; }

    // omega^k(u ^ v) for all k
    Vec omega(const Vec& u, const Vec& v) const;
    // pullback of the primitive along a segment midpoint: theta(c)(cdot)
    Vec theta_pullback(const Vec& c, const Vec& cdot) const;
};

struct AllcockGroup {
    ModelAlgebra model;
    int copies = 0;
    GradedAlgebra algebra;

    int m() const { return model.v_dim; }
    int s() const { return model.z_dim; }
    int horizontal_dim() const { return m() * copies; }
    int flat_index(int copy, int j) const { return copy * m() + j; }
    MultiSymplecticForm form() const;
};

// Glues n copies of the model first layer over the shared center; cross-copy
// first-layer brackets vanish.
AllcockGroup build_allcock(const ModelAlgebra& model, int n);

// Multi-symplectic area of a closed loop in R^{mn}: trapezoidal quadrature of
// the primitive pullback with fourth-order node velocities.
Vec theta_area(const MultiSymplecticForm& form, const SampledPath& loop);

// Loop a in the model first layer with [a, da/dt] = sigma, contracted to a
// point by the bracket-isotropic homotopy Gamma(tau, t).
struct IsotropicLoopKit {
    SampledPath a;          // dim = v_dim, N+1 nodes, closed
    HomotopyGrid Gamma;     // dim = v_dim
    double lambda = 0.0;
    double lip_bound = 0.0;  // measured Lip(Gamma)
    double a0_bound = 0.0;   // |a(0)|
    std::vector<double> S;   // cumulative center integral, (N+1) x s row-major
};

// sigma sampled at nodes (piecewise linear); zero mean up to tol required.
IsotropicLoopKit model_isotropic_kit(const ModelAlgebra& model, const SampledPath& sigma,
                                     double lambda, int n_t = -1, double mean_tol = 1e-6);

// Pipeline variant: sigma given as per-cell midpoint values (N x s,
// row-major); increments integrate exactly and the mean is projected out.
IsotropicLoopKit model_isotropic_kit_mid(const ModelAlgebra& model,
                                         const std::vector<double>& sigma_mid, int n_cells,
                                         double lambda, int n_t);

// Certificate that the free 2-step algebra on five generators fails to
// realize the explicit center curve as a bracket curve.
struct ObstructionCertificate {
    int grid = 0;
    double mean_sup = 0.0;           // |integral of sigma| componentwise sup
    double sigma12_sup = 0.0;        // forced-proportionality hypothesis
    double lambda_defined_frac = 0.0;
    double lambda_dev_from_one = 0.0;
    double final_mismatch = 0.0;     // sup |sigma_15 - lambda sigma_25|
    std::string verdict;             // "infeasible" or "inconclusive"
    double lsq_residual = 0.0;       // optimizer floor, L2 over [0,1]
    double lsq_start = 0.0;
    int lsq_iterations = 0;
};

ObstructionCertificate free52_obstruction(int N, int iterations = 3000, int starts = 3,
                                          std::uint64_t seed = 20250809);

}  // namespace carnot

#endif  // CARNOT_ALLCOCK_HPP_
