#ifndef CARNOT_PATH_HPP_
#define CARNOT_PATH_HPP_

#include <string>
#include <vector>

#include "carnot/common.hpp"

namespace carnot {

// Curve sampled on the uniform grid t_i = i/N over [0,1].
struct SampledPath {
    std::vector<Vec> values;  // N+1 rows
    bool closed = false;

    int segments() const { return static_cast<int>(values.size()) - 1; }
    int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
    double step() const { return 1.0 / segments(); }
    double time(int i) const { return static_cast<double>(i) / segments(); }

    bool endpoints_match(double tol = 1e-12) const {
        return !values.empty() && max_abs_diff(values.front(), values.back()) <= tol;
    }
    void require_valid() const;
};

SampledPath make_path(int n_segments, int dim, bool closed = false);

// CSV with header t,c_1,...,c_q and strictly increasing uniform t.
SampledPath read_curve_csv(const std::string& path);
void write_curve_csv(const std::string& path, const SampledPath& curve);

// Node derivatives on the uniform grid.  Order 2 uses central differences
// inside and one-sided second-order stencils at open endpoints; order 4 uses
// five-point stencils.  Closed curves wrap around.
std::vector<Vec> node_derivatives(const SampledPath& p, int order);

// Piecewise-cubic Lagrange interpolation on the uniform grid (4-node
// windows, wrapped when closed, clamped one-sided at open ends).
class CubicInterp {
  public:
    explicit CubicInterp(const SampledPath& p) : p_(&p) {}
    Vec value(double t) const;
    Vec derivative(double t) const;

  private:
    void weights(double t, int idx[4], double w[4], double dw[4]) const;
    const SampledPath* p_;
};

// Values on the uniform grid (tau_i, t_j) in [0,1]^2, row-major in tau.
struct HomotopyGrid {
    int n_tau = 0;
    int n_t = 0;
    int dim = 0;
    std::vector<double> data;  // (n_tau+1) * (n_t+1) * dim

    void resize(int nt, int ns, int d) {
        n_tau = nt;
        n_t = ns;
        dim = d;
        data.assign(static_cast<std::size_t>(nt + 1) * (ns + 1) * d, 0.0);
    }
    double* at(int i, int j) {
        return data.data() + (static_cast<std::size_t>(i) * (n_t + 1) + j) * dim;
    }
    const double* at(int i, int j) const {
        return data.data() + (static_cast<std::size_t>(i) * (n_t + 1) + j) * dim;
    }
    Vec node(int i, int j) const {
        const double* v = at(i, j);
        return Vec(v, v + dim);
    }
    void set_node(int i, int j, const Vec& v) {
        double* dst = at(i, j);
        for (int d = 0; d < dim; ++d) dst[d] = v[static_cast<std::size_t>(d)];
    }
    SampledPath row_t(int j) const {  // curve tau -> grid(tau, t_j)
        SampledPath p;
        p.values.reserve(static_cast<std::size_t>(n_tau) + 1);
        for (int i = 0; i <= n_tau; ++i) p.values.push_back(node(i, j));
        return p;
    }
    // Largest Frobenius norm of the difference-quotient Jacobian over cells.
    double measured_lip() const;
};

}  // namespace carnot

#endif  // CARNOT_PATH_HPP_
