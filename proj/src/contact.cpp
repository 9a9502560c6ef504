#include "carnot/contact.hpp"

#include <cmath>

namespace carnot {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// sum_{n=2..step} ((-1)^n / n!) pi_j([gamma, v]_{n-1}) for all j >= 2 at once
Vec contact_rhs(const GradedAlgebra& alg, const Vec& gamma, const Vec& v) {
    Vec rhs(static_cast<std::size_t>(alg.dim()), 0.0);
    Vec iter = v;  // [gamma, v]_{n-1}, starting at n=2
    for (int n = 2; n <= alg.step(); ++n) {
        iter = alg.bracket(gamma, iter);
        const double coef = ((n % 2 == 0) ? 1.0 : -1.0) / factorial(n);
        axpy(coef, iter, rhs);
    }
    for (int i = alg.layer_offset(1); i < alg.layer_offset(1) + alg.layer_dim(1); ++i)
        rhs[static_cast<std::size_t>(i)] = 0.0;
    return rhs;
}

}  // namespace

Vec contact_velocity(const GradedAlgebra& alg, const Vec& gamma, const Vec& v1) {
    Vec v(static_cast<std::size_t>(alg.dim()), 0.0);
    for (int i = alg.layer_offset(1); i < alg.layer_offset(1) + alg.layer_dim(1); ++i)
        v[static_cast<std::size_t>(i)] = v1[static_cast<std::size_t>(i)];
    // The layer-j right side only reads velocities of layers < j, so one
    // ascending sweep resolves the triangular system.
    for (int j = 2; j <= alg.step(); ++j) {
        const Vec rhs = contact_rhs(alg, gamma, v);
        for (int i = alg.layer_offset(j); i < alg.layer_offset(j) + alg.layer_dim(j); ++i)
            v[static_cast<std::size_t>(i)] = rhs[static_cast<std::size_t>(i)];
    }
    return v;
}

ResidualReport contact_residual_curve(const GradedAlgebra& alg, const SampledPath& path) {
    path.require_valid();
    alg.check_vector(path.values.front());
    if (path.segments() < 4) throw std::invalid_argument("contact residual: need at least 5 samples");

    const std::vector<Vec> vel = node_derivatives(path, 2);
    const int n = path.segments();
    ResidualReport rep;
    rep.per_layer_sup.assign(static_cast<std::size_t>(alg.step() - 1), 0.0);
    rep.per_layer_l1.assign(static_cast<std::size_t>(alg.step() - 1), 0.0);

    const int first = path.closed ? 0 : 1;
    const int last = path.closed ? n - 1 : n - 1;
    if (!path.closed) {
        rep.excluded_nodes.push_back(0);
        rep.excluded_nodes.push_back(n);
    }
    const double h = path.step();
    for (int i = first; i <= last; ++i) {
        const Vec& g = path.values[static_cast<std::size_t>(i)];
        const Vec& gd = vel[static_cast<std::size_t>(i)];
        const Vec rhs = contact_rhs(alg, g, gd);
        for (int j = 2; j <= alg.step(); ++j) {
            double s = 0.0;
            for (int c = alg.layer_offset(j); c < alg.layer_offset(j) + alg.layer_dim(j); ++c) {
                const double r = gd[static_cast<std::size_t>(c)] - rhs[static_cast<std::size_t>(c)];
                s += r * r;
            }
            s = std::sqrt(s);
            rep.per_layer_sup[static_cast<std::size_t>(j - 2)] =
                std::max(rep.per_layer_sup[static_cast<std::size_t>(j - 2)], s);
            rep.per_layer_l1[static_cast<std::size_t>(j - 2)] += s * h;
        }
    }
    return rep;
}

SampledPath horizontal_lift(const GradedAlgebra& alg, const SampledPath& gamma1, const Vec& init) {
    gamma1.require_valid();
    alg.check_vector(gamma1.values.front());
    alg.check_vector(init);
    for (int i = alg.layer_offset(1); i < alg.layer_offset(1) + alg.layer_dim(1); ++i)
        if (init[static_cast<std::size_t>(i)] != 0.0)
            throw std::invalid_argument("horizontal lift: init must have zero first-layer part");
    for (const Vec& v : gamma1.values)
        for (int j = 2; j <= alg.step(); ++j)
            if (alg.layer_norm(v, j) > 1e-12)
                throw std::invalid_argument("horizontal lift: input curve must lie in the first layer");

    const int n = gamma1.segments();
    const double h = gamma1.step();
    const CubicInterp interp(gamma1);

    SampledPath out = make_path(n, alg.dim());
    Vec state = add(init, gamma1.values.front());
    out.values[0] = state;

    auto rhs = [&](double t, const Vec& g) {
        return contact_velocity(alg, g, interp.derivative(t));
    };
    auto with_base = [&](const Vec& g, double t) {
        // keep the first-layer part on the interpolated curve
        Vec r = g;
        const Vec base = interp.value(t);
        for (int i = alg.layer_offset(1); i < alg.layer_offset(1) + alg.layer_dim(1); ++i)
            r[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)];
        return r;
    };

    for (int i = 0; i < n; ++i) {
        const double t = gamma1.time(i);
        const Vec k1 = rhs(t, state);
        Vec s2 = state;
        axpy(0.5 * h, k1, s2);
        const Vec k2 = rhs(t + 0.5 * h, with_base(s2, t + 0.5 * h));
        Vec s3 = state;
        axpy(0.5 * h, k2, s3);
        const Vec k3 = rhs(t + 0.5 * h, with_base(s3, t + 0.5 * h));
        Vec s4 = state;
        axpy(h, k3, s4);
        const Vec k4 = rhs(t + h, with_base(s4, t + h));
        axpy(h / 6.0, k1, state);
        axpy(h / 3.0, k2, state);
        axpy(h / 3.0, k3, state);
        axpy(h / 6.0, k4, state);
        // exact first-layer samples at nodes
        const Vec& a = gamma1.values[static_cast<std::size_t>(i + 1)];
        for (int c = alg.layer_offset(1); c < alg.layer_offset(1) + alg.layer_dim(1); ++c)
            state[static_cast<std::size_t>(c)] = a[static_cast<std::size_t>(c)];
        out.values[static_cast<std::size_t>(i + 1)] = state;
    }
    out.closed = out.endpoints_match();
    return out;
}

SampledPath piecewise_horizontal_approx(const GradedAlgebra& alg, const SampledPath& path, int k,
                                        double tol) {
    if (k < 1) throw std::invalid_argument("piecewise horizontal: k must be positive");
    path.require_valid();
    alg.check_vector(path.values.front());
    {
        const ResidualReport rep = contact_residual_curve(alg, path);
        if (rep.sup() > tol)
            throw NonHorizontalError("piecewise horizontal: input path is not horizontal (sup " +
                                         std::to_string(rep.sup()) + ")",
                                     rep);
    }

    const int n = path.segments();
    auto layer1_at = [&](double t) {
        // linear interpolation of the sampled first layer keeps interval
        // averages consistent with the sampled polyline
        const double pos = t * n;
        int cell = std::max(0, std::min(n - 1, static_cast<int>(std::floor(pos))));
        const double f = pos - cell;
        Vec r = scale(1.0 - f, path.values[static_cast<std::size_t>(cell)]);
        axpy(f, path.values[static_cast<std::size_t>(cell) + 1], r);
        return alg.layer_project(r, 1);
    };

    // Break points e_j = j/k; constant velocity per subinterval.
    std::vector<Vec> X(static_cast<std::size_t>(k));
    std::vector<Vec> corners(static_cast<std::size_t>(k) + 1);
    corners[0] = path.values.front();
    for (int j = 0; j < k; ++j) {
        const Vec a0 = layer1_at(static_cast<double>(j) / k);
        const Vec a1 = layer1_at(static_cast<double>(j + 1) / k);
        X[static_cast<std::size_t>(j)] = scale(static_cast<double>(k), sub(a1, a0));
        corners[static_cast<std::size_t>(j) + 1] =
            alg.bch(corners[static_cast<std::size_t>(j)], scale(1.0 / k, X[static_cast<std::size_t>(j)]));
    }

    SampledPath out = make_path(n, alg.dim());
    for (int i = 0; i <= n; ++i) {
        const double t = path.time(i);
        int j = std::min(k - 1, static_cast<int>(std::floor(t * k)));
        const double local = t - static_cast<double>(j) / k;
        out.values[static_cast<std::size_t>(i)] =
            alg.bch(corners[static_cast<std::size_t>(j)], scale(local, X[static_cast<std::size_t>(j)]));
    }
    out.closed = out.endpoints_match();
    return out;
}

double horizontal_length(const GradedAlgebra& alg, const SampledPath& path, double tol) {
    {
        const ResidualReport rep = contact_residual_curve(alg, path);
        if (rep.sup() > tol)
            throw NonHorizontalError("horizontal length: path is not horizontal (sup " +
                                         std::to_string(rep.sup()) + ")",
                                     rep);
    }
    const std::vector<Vec> vel = node_derivatives(path, 4);
    const int n = path.segments();
    const double h = path.step();
    double len = 0.0;
    for (int i = 0; i <= n; ++i) {
        const Vec v1 = alg.layer_project(vel[static_cast<std::size_t>(i)], 1);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        len += w * norm2(v1) * h;
    }
    return len;
}

double lipschitz_ratio(const GradedAlgebra& alg,
                       const std::vector<std::pair<Vec, Vec>>& pairs, SourceMetric metric) {
    if (pairs.size() < 2) throw std::invalid_argument("lipschitz ratio: need at least two pairs");
    double best = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            double ds = 0.0;
            switch (metric) {
                case SourceMetric::euclidean:
                    ds = norm2(sub(pairs[i].first, pairs[j].first));
                    break;
                case SourceMetric::gauge:
                    ds = alg.gauge_distance(pairs[i].first, pairs[j].first);
                    break;
            }
            const double di = alg.gauge_distance(pairs[i].second, pairs[j].second);
            if (ds == 0.0) {
                if (di > 0.0)
                    throw std::invalid_argument(
                        "lipschitz ratio: duplicate sources with distinct images");
                continue;
            }
            best = std::max(best, di / ds);
        }
    return best;
}

double HeisenbergAffineMap::f3(double x1, double x2, double t) const {
    const double det_bA1 = b[0] * A[1][0] - b[1] * A[0][0];
    const double det_bA2 = b[0] * A[1][1] - b[1] * A[0][1];
    const double det_ba = b[0] * a[1] - b[1] * a[0];
    const double detA = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    return tau + 0.5 * (x2 * det_bA2 + x1 * det_bA1) + t * (0.5 * det_ba + detA);
}

Vec HeisenbergAffineMap::apply(const Vec& p) const {
    const double x1 = p[0], x2 = p[1], t = p[2];
    return {A[0][0] * x1 + A[0][1] * x2 + a[0] * t + b[0],
            A[1][0] * x1 + A[1][1] * x2 + a[1] * t + b[1], f3(x1, x2, t)};
}

HeisenbergAffineMap heisenberg_affine_vertical(const std::array<std::array<double, 2>, 2>& A,
                                               const std::array<double, 2>& a,
                                               const std::array<double, 2>& b, double tau) {
    const double det1 = A[0][0] * a[1] - A[1][0] * a[0];  // det(A_1 a)
    const double det2 = A[0][1] * a[1] - A[1][1] * a[0];  // det(A_2 a)
    const double tol = 1e-10;
    if (std::fabs(det1) > tol)
        throw InadmissibleError("affine map rejected: det(A_1 a) = " + std::to_string(det1));
    if (std::fabs(det2) > tol)
        throw InadmissibleError("affine map rejected: det(A_2 a) = " + std::to_string(det2));
    return HeisenbergAffineMap{A, a, b, tau};
}

double h1_map_contact_residual(const GradedAlgebra& h1, const std::function<Vec(const Vec&)>& map,
                               const std::vector<Vec>& points, double delta) {
    if (h1.dim() != 3 || h1.step() != 2)
        throw std::invalid_argument("map residual: algebra must be the first Heisenberg group");
    double worst = 0.0;
    for (const Vec& p : points) {
        for (int dir = 0; dir < 2; ++dir) {
            Vec e(3, 0.0);
            e[static_cast<std::size_t>(dir)] = delta;
            const Vec fp = map(h1.bch(p, e));
            const Vec fm = map(h1.bch(p, negate(e)));
            const Vec f0 = map(p);
            // derivative of F along the horizontal flow
            Vec df = scale(1.0 / (2.0 * delta), sub(fp, fm));
            const double resid = df[2] - 0.5 * (f0[0] * df[1] - f0[1] * df[0]);
            worst = std::max(worst, std::fabs(resid));
        }
    }
    return worst;
}

}  // namespace carnot
