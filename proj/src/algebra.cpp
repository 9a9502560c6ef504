#include "carnot/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace carnot {

namespace {

// K_{2p} = B_{2p}/(2p)! for the Dynkin recursion of the BCH terms.
constexpr double kBchK[] = {
    0.0,
    1.0 / 12.0,        // p=1
    -1.0 / 720.0,      // p=2
    1.0 / 30240.0,     // p=3
    -1.0 / 1209600.0,  // p=4
};

void compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (n >= 1) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first + (parts - 1) <= n; ++first) {
        cur.push_back(first);
        compositions(n - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

GradedAlgebra::GradedAlgebra(int step, std::vector<int> layer_dims,
                             std::vector<BracketTerm> brackets, std::string name)
    : name_(std::move(name)), step_(step), layer_dims_(std::move(layer_dims)) {
    if (step_ < 1 || static_cast<int>(layer_dims_.size()) != step_)
        throw std::invalid_argument("algebra: step must match the number of layer dimensions");
    dim_ = 0;
    offsets_.resize(layer_dims_.size());
    for (std::size_t j = 0; j < layer_dims_.size(); ++j) {
        if (layer_dims_[j] < 1) throw std::invalid_argument("algebra: empty layer");
        offsets_[j] = dim_;
        dim_ += layer_dims_[j];
    }
    layer_of_.resize(static_cast<std::size_t>(dim_));
    for (int j = 1; j <= step_; ++j)
        for (int i = layer_offset(j); i < layer_offset(j) + layer_dim(j); ++i)
            layer_of_[static_cast<std::size_t>(i)] = j;

    // Antisymmetric completion: store one value per unordered pair, a < b.
    std::map<std::tuple<int, int, int>, double> acc;
    for (const BracketTerm& t : brackets) {
        if (t.a < 0 || t.a >= dim_ || t.b < 0 || t.b >= dim_ || t.k < 0 || t.k >= dim_)
            throw std::invalid_argument("algebra: bracket index out of range");
        if (t.a == t.b) {
            if (t.value != 0.0) throw std::invalid_argument("algebra: [e_a,e_a] must vanish");
            continue;
        }
        int a = t.a, b = t.b;
        double v = t.value;
        if (a > b) {
            std::swap(a, b);
            v = -v;
        }
        acc[{a, b, t.k}] += v;
    }
    for (const auto& [key, v] : acc) {
        if (v == 0.0) continue;
        terms_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
    }
    validate();
    beta_ = compute_beta();
}

void GradedAlgebra::validate() const {
    for (const BracketTerm& t : terms_) {
        int la = layer_of(t.a), lb = layer_of(t.b), lk = layer_of(t.k);
        if (la + lb > step_)
            throw std::invalid_argument("algebra: bracket exceeds the nilpotency step");
        if (lk != la + lb)
            throw std::invalid_argument("algebra: grading violated by bracket (" +
                                        std::to_string(t.a) + "," + std::to_string(t.b) + ")");
    }
    // Jacobi on basis triples.
    const double tol = 1e-12;
    Vec ea(static_cast<std::size_t>(dim_)), eb(static_cast<std::size_t>(dim_)),
        ec(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a)
        for (int b = a + 1; b < dim_; ++b)
            for (int c = b + 1; c < dim_; ++c) {
                std::fill(ea.begin(), ea.end(), 0.0);
                std::fill(eb.begin(), eb.end(), 0.0);
                std::fill(ec.begin(), ec.end(), 0.0);
                ea[static_cast<std::size_t>(a)] = 1.0;
                eb[static_cast<std::size_t>(b)] = 1.0;
                ec[static_cast<std::size_t>(c)] = 1.0;
                Vec s = bracket(ea, bracket(eb, ec));
                axpy(1.0, bracket(eb, bracket(ec, ea)), s);
                axpy(1.0, bracket(ec, bracket(ea, eb)), s);
                if (sup_norm(s) > tol)
                    throw std::invalid_argument("algebra: Jacobi identity fails on basis triple (" +
                                                std::to_string(a) + "," + std::to_string(b) + "," +
                                                std::to_string(c) + ")");
            }
}

double GradedAlgebra::compute_beta() const {
    // beta = sqrt(sum_k sigma_max(A_k)^2) with (A_k)_{ab} = c^k_{ab}; each
    // sigma_max by power iteration on A_k^T A_k.
    double total = 0.0;
    for (int k = 0; k < dim_; ++k) {
        std::vector<double> A(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_), 0.0);
        bool any = false;
        for (const BracketTerm& t : terms_) {
            if (t.k != k) continue;
            A[static_cast<std::size_t>(t.a) * dim_ + t.b] = t.value;
            A[static_cast<std::size_t>(t.b) * dim_ + t.a] = -t.value;
            any = true;
        }
        if (!any) continue;
        Vec v(static_cast<std::size_t>(dim_), 1.0);
        double lambda = 0.0;
        for (int it = 0; it < 200; ++it) {
            Vec Av(static_cast<std::size_t>(dim_), 0.0);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    Av[static_cast<std::size_t>(i)] += A[static_cast<std::size_t>(i) * dim_ + j] * v[static_cast<std::size_t>(j)];
            Vec w(static_cast<std::size_t>(dim_), 0.0);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    w[static_cast<std::size_t>(j)] += A[static_cast<std::size_t>(i) * dim_ + j] * Av[static_cast<std::size_t>(i)];
            double n = norm2(w);
            if (n == 0.0) break;
            lambda = n;
            v = scale(1.0 / n, w);
        }
        total += lambda;  // lambda approximates sigma_max^2
    }
    return std::sqrt(total);
}

double GradedAlgebra::structure(int k, int a, int b) const {
    for (const BracketTerm& t : terms_) {
        if (t.k != k) continue;
        if (t.a == a && t.b == b) return t.value;
        if (t.a == b && t.b == a) return -t.value;
    }
    return 0.0;
}

void GradedAlgebra::check_vector(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("algebra: vector length " + std::to_string(x.size()) +
                                    " does not match dimension " + std::to_string(dim_));
}

Vec GradedAlgebra::bracket(const Vec& x, const Vec& y) const {
    check_vector(x);
    check_vector(y);
    Vec r(static_cast<std::size_t>(dim_), 0.0);
    for (const BracketTerm& t : terms_) {
        const double cross = x[static_cast<std::size_t>(t.a)] * y[static_cast<std::size_t>(t.b)] -
                             x[static_cast<std::size_t>(t.b)] * y[static_cast<std::size_t>(t.a)];
        if (cross != 0.0) r[static_cast<std::size_t>(t.k)] += t.value * cross;
    }
    return r;
}

Vec GradedAlgebra::iterated_bracket(const Vec& x, const Vec& y, int k) const {
    if (k < 0) throw std::invalid_argument("iterated bracket: negative depth");
    Vec r = y;
    for (int i = 0; i < k; ++i) r = bracket(x, r);
    return r;
}

Vec GradedAlgebra::bch(const Vec& x, const Vec& y) const {
    check_vector(x);
    check_vector(y);
    const Vec sum = add(x, y);
    if (step_ == 1) return sum;
    const Vec diff = sub(x, y);

    std::vector<Vec> c(static_cast<std::size_t>(step_) + 1);
    c[1] = sum;
    for (int n = 1; n < step_; ++n) {
        Vec t = scale(0.5, bracket(diff, c[static_cast<std::size_t>(n)]));
        for (int p = 1; 2 * p <= n; ++p) {
            if (p >= static_cast<int>(sizeof(kBchK) / sizeof(kBchK[0])))
                throw UnsupportedError("bch: step too large for tabulated coefficients");
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            compositions(n, 2 * p, cur, comps);
            for (const auto& ks : comps) {
                Vec v = sum;
                for (int i = 2 * p - 1; i >= 0; --i)
                    v = bracket(c[static_cast<std::size_t>(ks[static_cast<std::size_t>(i)])], v);
                axpy(kBchK[p], v, t);
            }
        }
        c[static_cast<std::size_t>(n) + 1] = scale(1.0 / (n + 1), t);
    }
    Vec r = c[1];
    for (int n = 2; n <= step_; ++n) axpy(1.0, c[static_cast<std::size_t>(n)], r);
    return r;
}

Vec GradedAlgebra::dilate(double r, const Vec& x) const {
    if (!(r > 0.0)) throw std::invalid_argument("dilate: factor must be positive");
    check_vector(x);
    Vec out(x);
    for (int j = 1; j <= step_; ++j) {
        const double f = std::pow(r, j);
        for (int i = layer_offset(j); i < layer_offset(j) + layer_dim(j); ++i)
            out[static_cast<std::size_t>(i)] *= f;
    }
    return out;
}

Vec GradedAlgebra::layer_project(const Vec& x, int j) const {
    if (j < 1 || j > step_) throw std::invalid_argument("layer projection: layer out of range");
    check_vector(x);
    Vec out(static_cast<std::size_t>(dim_), 0.0);
    for (int i = layer_offset(j); i < layer_offset(j) + layer_dim(j); ++i)
        out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    return out;
}

double GradedAlgebra::layer_norm(const Vec& x, int j) const {
    double s = 0.0;
    for (int i = layer_offset(j); i < layer_offset(j) + layer_dim(j); ++i)
        s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return std::sqrt(s);
}

double GradedAlgebra::homogeneous_norm(const Vec& x) const {
    check_vector(x);
    double s = 0.0;
    for (int j = 1; j <= step_; ++j)
        s += std::pow(layer_norm(x, j), 1.0 / static_cast<double>(j));
    return s;
}

double GradedAlgebra::gauge_distance(const Vec& x, const Vec& y) const {
    return homogeneous_norm(bch(negate(x), y));
}

GradedAlgebra algebra_from_json_text(const std::string& text, const std::string& name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("algebra json: ") + e.what());
    }
    try {
        const int step = j.at("step").get<int>();
        const std::vector<int> dims = j.at("layer_dims").get<std::vector<int>>();
        std::vector<BracketTerm> terms;
        for (const auto& row : j.at("brackets")) {
            if (!row.is_array() || row.size() != 4)
                throw FormatError("algebra json: bracket rows must be [a,b,k,value]");
            terms.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                             row[3].get<double>()});
        }
        return GradedAlgebra(step, dims, terms, name);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("algebra json: ") + e.what());
    }
}

GradedAlgebra algebra_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("algebra json: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return algebra_from_json_text(ss.str(), path);
}

std::string algebra_to_json_text(const GradedAlgebra& alg) {
    nlohmann::json j;
    j["step"] = alg.step();
    j["layer_dims"] = alg.layer_dims();
    nlohmann::json rows = nlohmann::json::array();
    for (const BracketTerm& t : alg.terms())
        rows.push_back({t.a, t.b, t.k, t.value});
    j["brackets"] = rows;
    return j.dump(2);
}

}  // namespace carnot
