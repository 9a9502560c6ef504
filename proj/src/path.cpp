#include "carnot/path.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace carnot {

void SampledPath::require_valid() const {
    if (values.size() < 2) throw std::invalid_argument("path: need at least two samples");
    const std::size_t d = values.front().size();
    for (const Vec& v : values)
        if (v.size() != d) throw std::invalid_argument("path: ragged sample rows");
    if (closed && !endpoints_match())
        throw std::invalid_argument("path: closed flag set but endpoints differ");
}

SampledPath make_path(int n_segments, int dim, bool closed) {
    SampledPath p;
    p.closed = closed;
    p.values.assign(static_cast<std::size_t>(n_segments) + 1, Vec(static_cast<std::size_t>(dim), 0.0));
    return p;
}

SampledPath read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("curve csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("curve csv: empty file " + path);
    {
        std::istringstream hs(line);
        std::string col;
        if (!std::getline(hs, col, ',') || col != "t")
            throw FormatError("curve csv: line 1: header must start with 't'");
        int expect = 1;
        while (std::getline(hs, col, ',')) {
            if (col != "c_" + std::to_string(expect))
                throw FormatError("curve csv: line 1: expected column c_" + std::to_string(expect) +
                                  ", got '" + col + "'");
            ++expect;
        }
        if (expect == 1) throw FormatError("curve csv: line 1: no coordinate columns");
    }

    SampledPath p;
    std::vector<double> times;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        Vec row;
        bool first = true;
        while (std::getline(ls, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw FormatError("curve csv: line " + std::to_string(lineno) + ": bad number '" +
                                  cell + "'");
            if (first) {
                times.push_back(v);
                first = false;
            } else {
                row.push_back(v);
            }
        }
        if (first) throw FormatError("curve csv: line " + std::to_string(lineno) + ": empty row");
        if (!p.values.empty() && row.size() != p.values.front().size())
            throw FormatError("curve csv: line " + std::to_string(lineno) + ": expected " +
                              std::to_string(p.values.front().size()) + " coordinates");
        p.values.push_back(std::move(row));
    }
    if (p.values.size() < 2) throw FormatError("curve csv: need at least two samples");

    const int n = static_cast<int>(p.values.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        const double expect = static_cast<double>(i) / n;
        if (std::fabs(times[static_cast<std::size_t>(i)] - expect) > 1e-9)
            throw FormatError("curve csv: line " + std::to_string(i + 2) +
                              ": t must be uniform on [0,1], expected " + std::to_string(expect));
    }
    p.closed = p.endpoints_match();
    return p;
}

void write_curve_csv(const std::string& path, const SampledPath& curve) {
    std::ofstream out(path);
    if (!out) throw FormatError("curve csv: cannot write " + path);
    out << "t";
    for (int c = 1; c <= curve.dim(); ++c) out << ",c_" << c;
    out << "\n";
    char buf[32];
    const int n = curve.segments();
    for (int i = 0; i <= n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", curve.time(i));
        out << buf;
        for (double v : curve.values[static_cast<std::size_t>(i)]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << "\n";
    }
}

namespace {

int wrap_index(int i, int n) {
    // period n for closed curves sampled at n+1 nodes
    int r = i % n;
    if (r < 0) r += n;
    return r;
}

}  // namespace

std::vector<Vec> node_derivatives(const SampledPath& p, int order) {
    p.require_valid();
    const int n = p.segments();
    const double h = p.step();
    const int d = p.dim();
    std::vector<Vec> out(static_cast<std::size_t>(n) + 1, Vec(static_cast<std::size_t>(d), 0.0));

    auto val = [&](int i) -> const Vec& {
        if (p.closed) return p.values[static_cast<std::size_t>(wrap_index(i, n))];
        return p.values[static_cast<std::size_t>(std::max(0, std::min(n, i)))];
    };

    if (order == 2) {
        for (int i = 0; i <= n; ++i) {
            Vec& r = out[static_cast<std::size_t>(i)];
            if (p.closed || (i > 0 && i < n)) {
                for (int c = 0; c < d; ++c)
                    r[static_cast<std::size_t>(c)] =
                        (val(i + 1)[static_cast<std::size_t>(c)] - val(i - 1)[static_cast<std::size_t>(c)]) / (2 * h);
            } else if (i == 0) {
                for (int c = 0; c < d; ++c)
                    r[static_cast<std::size_t>(c)] =
                        (-3 * val(0)[static_cast<std::size_t>(c)] + 4 * val(1)[static_cast<std::size_t>(c)] -
                         val(2)[static_cast<std::size_t>(c)]) / (2 * h);
            } else {
                for (int c = 0; c < d; ++c)
                    r[static_cast<std::size_t>(c)] =
                        (3 * val(n)[static_cast<std::size_t>(c)] - 4 * val(n - 1)[static_cast<std::size_t>(c)] +
                         val(n - 2)[static_cast<std::size_t>(c)]) / (2 * h);
            }
        }
        return out;
    }
    if (order != 4) throw std::invalid_argument("node derivatives: order must be 2 or 4");
    if (n < 4) throw std::invalid_argument("node derivatives: need at least 5 samples for order 4");

    // Five-point stencils; offsets per node position for open curves.
    static const double stencils[5][5] = {
        {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4},   // forward
        {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12},
        {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12},  // central
        {-1.0 / 12, 1.0 / 2, -3.0 / 2, 5.0 / 6, 1.0 / 4},
        {1.0 / 4, -4.0 / 3, 3.0, -4.0, 25.0 / 12},      // backward
    };
    for (int i = 0; i <= n; ++i) {
        int kind = 2, base = i - 2;
        if (!p.closed) {
            if (i == 0) { kind = 0; base = 0; }
            else if (i == 1) { kind = 1; base = 0; }
            else if (i == n - 1) { kind = 3; base = n - 4; }
            else if (i == n) { kind = 4; base = n - 4; }
        }
        Vec& r = out[static_cast<std::size_t>(i)];
        for (int s = 0; s < 5; ++s) {
            const double w = stencils[kind][s];
            if (w == 0.0) continue;
            const Vec& v = val(base + s);
            for (int c = 0; c < d; ++c) r[static_cast<std::size_t>(c)] += w * v[static_cast<std::size_t>(c)] / h;
        }
    }
    return out;
}

void CubicInterp::weights(double t, int idx[4], double w[4], double dw[4]) const {
    const int n = p_->segments();
    double pos = t * n;
    int cell = static_cast<int>(std::floor(pos));
    if (!p_->closed) cell = std::max(0, std::min(n - 1, cell));
    int base = cell - 1;
    if (!p_->closed) base = std::max(0, std::min(n - 3, base));
    const double x = pos - base;  // in node units relative to window start
    for (int k = 0; k < 4; ++k) {
        if (p_->closed)
            idx[k] = wrap_index(base + k, n);
        else
            idx[k] = base + k;
        double num = 1.0, dnum = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j == k) continue;
            dnum = dnum * (x - j) + num;
            num *= (x - j);
        }
        double den = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != k) den *= (k - j);
        w[k] = num / den;
        dw[k] = dnum / den * n;  // chain rule d(pos)/dt = n
    }
}

Vec CubicInterp::value(double t) const {
    int idx[4];
    double w[4], dw[4];
    weights(t, idx, w, dw);
    Vec r(static_cast<std::size_t>(p_->dim()), 0.0);
    for (int k = 0; k < 4; ++k) axpy(w[k], p_->values[static_cast<std::size_t>(idx[k])], r);
    return r;
}

Vec CubicInterp::derivative(double t) const {
    int idx[4];
    double w[4], dw[4];
    weights(t, idx, w, dw);
    Vec r(static_cast<std::size_t>(p_->dim()), 0.0);
    for (int k = 0; k < 4; ++k) axpy(dw[k], p_->values[static_cast<std::size_t>(idx[k])], r);
    return r;
}

double HomotopyGrid::measured_lip() const {
    double best = 0.0;
    const double ht = 1.0 / n_tau;
    const double hs = 1.0 / n_t;
    for (int i = 0; i < n_tau; ++i)
        for (int j = 0; j < n_t; ++j) {
            const double* v00 = at(i, j);
            const double* v10 = at(i + 1, j);
            const double* v01 = at(i, j + 1);
            double dtau = 0.0, dt = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double a = (v10[d] - v00[d]) / ht;
                const double b = (v01[d] - v00[d]) / hs;
                dtau += a * a;
                dt += b * b;
            }
            best = std::max(best, dtau + dt);
        }
    return std::sqrt(best);
}

}  // namespace carnot
