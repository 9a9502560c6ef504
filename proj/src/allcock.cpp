#include "carnot/allcock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "carnot/rng.hpp"

namespace carnot {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec MultiSymplecticForm::omega(const Vec& u, const Vec& v) const {
    const std::size_t mn = static_cast<std::size_t>(m) * copies;
    if (u.size() != mn || v.size() != mn)
        throw std::invalid_argument("omega: vectors must have length m*n");
    Vec out(static_cast<std::size_t>(s), 0.0);
    for (int j = 0; j < copies; ++j) {
        const int off = j * m;
        for (const BracketTerm& t : pairs) {
            const double cross = u[static_cast<std::size_t>(off + t.a)] * v[static_cast<std::size_t>(off + t.b)] -
                                 u[static_cast<std::size_t>(off + t.b)] * v[static_cast<std::size_t>(off + t.a)];
            if (cross != 0.0) out[static_cast<std::size_t>(t.k)] += t.value * cross;
        }
    }
    return out;
}

Vec MultiSymplecticForm::theta_pullback(const Vec& c, const Vec& cdot) const {
    const std::size_t mn = static_cast<std::size_t>(m) * copies;
    if (c.size() != mn || cdot.size() != mn)
        throw std::invalid_argument("theta: vectors must have length m*n");
    Vec out(static_cast<std::size_t>(s), 0.0);
    for (int j = 0; j < copies; ++j) {
        const int off = j * m;
        for (const BracketTerm& t : pairs)
            out[static_cast<std::size_t>(t.k)] +=
                0.5 * t.value *
                (c[static_cast<std::size_t>(off + t.a)] * cdot[static_cast<std::size_t>(off + t.b)] -
                 c[static_cast<std::size_t>(off + t.b)] * cdot[static_cast<std::size_t>(off + t.a)]);
    }
    return out;
}

MultiSymplecticForm AllcockGroup::form() const {
    MultiSymplecticForm f;
    f.m = m();
    f.s = s();
    f.copies = copies;
    for (const BracketTerm& t : model.structure.terms()) {
        if (model.structure.layer_of(t.a) != 1 || model.structure.layer_of(t.b) != 1) continue;
        f.pairs.push_back({t.a, t.b, t.k - model.v_dim, t.value});
    }
    return f;
}

AllcockGroup build_allcock(const ModelAlgebra& model, int n) {
    if (n < 1) throw std::invalid_argument("allcock group: need at least one copy");
    const int m = model.v_dim;
    const int s = model.z_dim;
    std::vector<BracketTerm> terms;
    for (int copy = 0; copy < n; ++copy) {
        const int off = copy * m;
        for (const BracketTerm& t : model.structure.terms()) {
            if (model.structure.layer_of(t.a) != 1 || model.structure.layer_of(t.b) != 1)
                throw std::invalid_argument("allcock group: model must be 2-step with layer-1 brackets");
            terms.push_back({off + t.a, off + t.b, n * m + (t.k - m), t.value});
        }
    }
    GradedAlgebra alg(2, {n * m, s}, terms,
                      "allcock(" + model.name + "," + std::to_string(n) + ")");
    return AllcockGroup{model, n, std::move(alg)};
}

Vec theta_area(const MultiSymplecticForm& form, const SampledPath& loop) {
    loop.require_valid();
    if (!loop.endpoints_match(1e-12))
        throw std::invalid_argument("theta area: curve must be closed");
    SampledPath c = loop;
    c.closed = true;
    const std::vector<Vec> vel = node_derivatives(c, 4);
    const int n = c.segments();
    const double h = c.step();
    Vec area(static_cast<std::size_t>(form.s), 0.0);
    for (int i = 0; i < n; ++i)
        axpy(h, form.theta_pullback(c.values[static_cast<std::size_t>(i)], vel[static_cast<std::size_t>(i)]), area);
    return area;
}

IsotropicLoopKit model_isotropic_kit_mid(const ModelAlgebra& model,
                                         const std::vector<double>& sigma_mid, int n_cells,
                                         double lambda, int n_t) {
    if (!(lambda > 0.0)) throw std::invalid_argument("loop kit: lambda must be positive");
    if (model.kit_w.empty())
        throw UnsupportedError("loop kit: model '" + model.name +
                               "' has no isotropic-loop construction");
    const int s = model.z_dim;
    const int m = model.v_dim;
    if (sigma_mid.size() != static_cast<std::size_t>(n_cells) * s)
        throw std::invalid_argument("loop kit: sigma size mismatch");
    if (n_t < 1) n_t = n_cells;

    // Project out the mean so the loop closes exactly.
    std::vector<double> inc(sigma_mid);
    for (int k = 0; k < s; ++k) {
        double total = 0.0;
        for (int i = 0; i < n_cells; ++i) total += inc[static_cast<std::size_t>(i) * s + k];
        const double mean = total / n_cells;
        for (int i = 0; i < n_cells; ++i) inc[static_cast<std::size_t>(i) * s + k] -= mean;
    }

    IsotropicLoopKit kit;
    kit.lambda = lambda;
    kit.S.assign(static_cast<std::size_t>(n_cells + 1) * s, 0.0);
    const double h = 1.0 / n_cells;
    for (int i = 0; i < n_cells; ++i)
        for (int k = 0; k < s; ++k)
            kit.S[static_cast<std::size_t>(i + 1) * s + k] =
                kit.S[static_cast<std::size_t>(i) * s + k] + h * inc[static_cast<std::size_t>(i) * s + k];
    for (int k = 0; k < s; ++k) kit.S[static_cast<std::size_t>(n_cells) * s + k] = 0.0;

    kit.a = make_path(n_cells, m);
    for (int i = 0; i <= n_cells; ++i) {
        Vec v = scale(lambda, model.kit_u0);
        for (int k = 0; k < s; ++k)
            axpy(kit.S[static_cast<std::size_t>(i) * s + k] / lambda, model.kit_w[static_cast<std::size_t>(k)], v);
        kit.a.values[static_cast<std::size_t>(i)] = v;
    }
    kit.a.closed = true;
    kit.a0_bound = norm2(kit.a.values.front());

    kit.Gamma.resize(n_cells, n_t, m);
    const Vec target = scale(lambda, model.kit_u0);
    for (int j = 0; j <= n_t; ++j) {
        const double t = static_cast<double>(j) / n_t;
        for (int i = 0; i <= n_cells; ++i) {
            Vec v = scale(1.0 - t, kit.a.values[static_cast<std::size_t>(i)]);
            axpy(t, target, v);
            kit.Gamma.set_node(i, j, v);
        }
    }
    kit.lip_bound = kit.Gamma.measured_lip();
    return kit;
}

IsotropicLoopKit model_isotropic_kit(const ModelAlgebra& model, const SampledPath& sigma,
                                     double lambda, int n_t, double mean_tol) {
    sigma.require_valid();
    if (sigma.dim() != model.z_dim)
        throw std::invalid_argument("loop kit: sigma must take values in the center");
    const int n = sigma.segments();
    const int s = model.z_dim;

    // trapezoid mean per component
    double supv = 0.0;
    for (const Vec& v : sigma.values) supv = std::max(supv, sup_norm(v));
    for (int k = 0; k < s; ++k) {
        double mean = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            mean += w * sigma.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / n;
        }
        if (std::fabs(mean) > mean_tol * std::max(1.0, supv))
            throw std::invalid_argument("loop kit: sigma has nonzero mean in component " +
                                        std::to_string(k + 1) + " (" + std::to_string(mean) + ")");
    }

    std::vector<double> inc(static_cast<std::size_t>(n) * s, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < s; ++k)
            inc[static_cast<std::size_t>(i) * s + k] =
                0.5 * (sigma.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                       sigma.values[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(k)]);
    return model_isotropic_kit_mid(model, inc, n, lambda, n_t < 1 ? n : n_t);
}

namespace {

// sigma_lp(t) on the five-generator free 2-step algebra; pair index in
// lexicographic order (1,2),(1,3),...,(4,5) (0-based here).
int pair_index(int l, int p) {
    int idx = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) {
            if (a == l && b == p) return idx;
            ++idx;
        }
    throw std::invalid_argument("pair index");
}

double free52_sigma(int l, int p, double t) {
    // 0-based pairs: (0,2),(1,2),(0,3),(1,3),(0,4) ramp; (0,1),(1,4) zero.
    const bool ramp = (l == 0 && p == 2) || (l == 1 && p == 2) || (l == 0 && p == 3) ||
                      (l == 1 && p == 3) || (l == 0 && p == 4);
    return ramp ? (t - 0.5) : 0.0;
}

struct LsqResult {
    double value = 0.0;
    double start = 0.0;
};

// Least-squares fit of a closed loop a with det(a_l a_p; a'_l a'_p) matching
// sigma at cell midpoints; Adam with analytic gradient.
LsqResult free52_lsq(int N, int iterations, int starts, std::uint64_t seed) {
    const int dims = 5;
    const double h = 1.0 / N;
    const int npairs = 10;
    std::vector<std::array<int, 2>> pairs;
    for (int l = 0; l < dims; ++l)
        for (int p = l + 1; p < dims; ++p) pairs.push_back({l, p});

    std::vector<double> target(static_cast<std::size_t>(N) * npairs);
    for (int i = 0; i < N; ++i) {
        const double tm = (i + 0.5) * h;
        for (int q = 0; q < npairs; ++q)
            target[static_cast<std::size_t>(i) * npairs + q] =
                free52_sigma(pairs[static_cast<std::size_t>(q)][0], pairs[static_cast<std::size_t>(q)][1], tm);
    }

    auto objective = [&](const std::vector<double>& a, std::vector<double>* grad) {
        if (grad) std::fill(grad->begin(), grad->end(), 0.0);
        double E = 0.0;
        for (int i = 0; i < N; ++i) {
            const int inext = (i + 1) % N;
            const double* ai = a.data() + static_cast<std::size_t>(i) * dims;
            const double* aj = a.data() + static_cast<std::size_t>(inext) * dims;
            double abar[5], adot[5];
            for (int d = 0; d < dims; ++d) {
                abar[d] = 0.5 * (ai[d] + aj[d]);
                adot[d] = (aj[d] - ai[d]) / h;
            }
            for (int q = 0; q < npairs; ++q) {
                const int l = pairs[static_cast<std::size_t>(q)][0];
                const int p = pairs[static_cast<std::size_t>(q)][1];
                const double r = abar[l] * adot[p] - abar[p] * adot[l] -
                                 target[static_cast<std::size_t>(i) * npairs + q];
                E += h * r * r;
                if (!grad) continue;
                const double c = 2.0 * h * r;
                (*grad)[static_cast<std::size_t>(i) * dims + l] += c * (0.5 * adot[p] + abar[p] / h);
                (*grad)[static_cast<std::size_t>(inext) * dims + l] += c * (0.5 * adot[p] - abar[p] / h);
                (*grad)[static_cast<std::size_t>(i) * dims + p] += c * (-0.5 * adot[l] - abar[l] / h);
                (*grad)[static_cast<std::size_t>(inext) * dims + p] += c * (-0.5 * adot[l] + abar[l] / h);
            }
        }
        return E;
    };

    LsqResult best;
    best.value = std::numeric_limits<double>::infinity();
    best.start = std::numeric_limits<double>::infinity();
    for (int run = 0; run < starts; ++run) {
        Rng rng(seed + static_cast<std::uint64_t>(run) * 7919);
        std::vector<double> a(static_cast<std::size_t>(N) * dims, 0.0);
        // smooth random loop init
        for (int d = 0; d < dims; ++d) {
            double c0 = rng.normal() * 0.4;
            double cs[3], cc[3];
            for (int k = 0; k < 3; ++k) {
                cs[k] = rng.normal() * 0.4 / (k + 1);
                cc[k] = rng.normal() * 0.4 / (k + 1);
            }
            for (int i = 0; i < N; ++i) {
                const double t = i * h;
                double v = c0;
                for (int k = 0; k < 3; ++k)
                    v += cs[k] * std::sin(2.0 * kPi * (k + 1) * t) +
                         cc[k] * std::cos(2.0 * kPi * (k + 1) * t);
                a[static_cast<std::size_t>(i) * dims + d] = v;
            }
        }

        std::vector<double> grad(a.size()), mom(a.size(), 0.0), vel(a.size(), 0.0);
        const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
        double E = objective(a, nullptr);
        const double E0 = E;
        for (int it = 1; it <= iterations; ++it) {
            E = objective(a, &grad);
            const double lr = 0.05 * (0.1 + 0.9 * 0.5 * (1.0 + std::cos(kPi * it / iterations)));
            const double b1t = 1.0 - std::pow(beta1, it);
            const double b2t = 1.0 - std::pow(beta2, it);
            for (std::size_t idx = 0; idx < a.size(); ++idx) {
                mom[idx] = beta1 * mom[idx] + (1 - beta1) * grad[idx];
                vel[idx] = beta2 * vel[idx] + (1 - beta2) * grad[idx] * grad[idx];
                a[idx] -= lr * (mom[idx] / b1t) / (std::sqrt(vel[idx] / b2t) + eps);
            }
        }
        E = objective(a, nullptr);
        if (E < best.value) {
            best.value = E;
            best.start = E0;
        }
    }
    best.value = std::sqrt(best.value);
    best.start = std::sqrt(best.start);
    return best;
}

}  // namespace

ObstructionCertificate free52_obstruction(int N, int iterations, int starts, std::uint64_t seed) {
    if (N < 64) throw std::invalid_argument("free52 obstruction: grid must be at least 64");
    ObstructionCertificate cert;
    cert.grid = N;

    // node-sampled sigma for the analytic chain
    const int npairs = 10;
    std::vector<Vec> sigma(static_cast<std::size_t>(N) + 1, Vec(npairs, 0.0));
    for (int i = 0; i <= N; ++i) {
        const double t = static_cast<double>(i) / N;
        for (int l = 0; l < 5; ++l)
            for (int p = l + 1; p < 5; ++p)
                sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(pair_index(l, p))] =
                    free52_sigma(l, p, t);
    }
    for (int q = 0; q < npairs; ++q) {
        double mean = 0.0;
        for (int i = 0; i <= N; ++i)
            mean += ((i == 0 || i == N) ? 0.5 : 1.0) * sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)] / N;
        cert.mean_sup = std::max(cert.mean_sup, std::fabs(mean));
    }

    const int q12 = pair_index(0, 1), q13 = pair_index(0, 2), q23 = pair_index(1, 2);
    const int q14 = pair_index(0, 3), q24 = pair_index(1, 3);
    const int q15 = pair_index(0, 4), q25 = pair_index(1, 4);
    const double tol = 1e-9;
    int defined = 0;
    for (int i = 0; i <= N; ++i) {
        const Vec& s = sigma[static_cast<std::size_t>(i)];
        cert.sigma12_sup = std::max(cert.sigma12_sup, std::fabs(s[static_cast<std::size_t>(q12)]));
        if (std::fabs(s[static_cast<std::size_t>(q23)]) > tol) {
            // sigma12 = 0 forces (a_1, a_1') parallel to (a_2, a_2'); the
            // factor lambda(t) must then satisfy sigma_1p = lambda sigma_2p.
            const double lam = s[static_cast<std::size_t>(q13)] / s[static_cast<std::size_t>(q23)];
            ++defined;
            cert.lambda_dev_from_one = std::max(cert.lambda_dev_from_one, std::fabs(lam - 1.0));
            if (std::fabs(s[static_cast<std::size_t>(q24)]) > tol)
                cert.lambda_dev_from_one = std::max(
                    cert.lambda_dev_from_one,
                    std::fabs(s[static_cast<std::size_t>(q14)] / s[static_cast<std::size_t>(q24)] - 1.0));
            cert.final_mismatch = std::max(
                cert.final_mismatch,
                std::fabs(s[static_cast<std::size_t>(q15)] - lam * s[static_cast<std::size_t>(q25)]));
        }
    }
    cert.lambda_defined_frac = static_cast<double>(defined) / (N + 1);
    const bool chain_ok = cert.sigma12_sup <= tol && cert.lambda_defined_frac > 0.5 &&
                          cert.lambda_dev_from_one <= 1e-9;
    cert.verdict = (chain_ok && cert.final_mismatch > 1e-3) ? "infeasible" : "inconclusive";

    const LsqResult lsq = free52_lsq(N, iterations, starts, seed);
    cert.lsq_residual = lsq.value;
    cert.lsq_start = lsq.start;
    cert.lsq_iterations = iterations;
    return cert;
}

}  // namespace carnot
