#include "carnot/builtins.hpp"

#include <cmath>

namespace carnot {

namespace {

int parse_suffix(const std::string& spec, const std::string& head, int fallback) {
    if (spec.size() <= head.size()) return fallback;
    if (spec[head.size()] != ':') throw UnsupportedError("unknown algebra: " + spec);
    const std::string tail = spec.substr(head.size() + 1);
    try {
        const int v = std::stoi(tail);
        if (v < 1) throw UnsupportedError("algebra parameter must be positive: " + spec);
        return v;
    } catch (const std::invalid_argument&) {
        throw UnsupportedError("bad algebra parameter: " + spec);
    }
}

bool has_head(const std::string& spec, const std::string& head) {
    return spec == head || spec.rfind(head + ":", 0) == 0;
}

GradedAlgebra heisenberg_algebra() {
    return GradedAlgebra(2, {2, 1}, {{0, 1, 2, 1.0}}, "heisenberg");
}

GradedAlgebra cyclic_algebra(int s) {
    std::vector<BracketTerm> terms;
    for (int j = 1; j <= s; ++j) terms.push_back({0, j, s + 1 + (j - 1), 1.0});
    return GradedAlgebra(2, {s + 1, s}, terms, "cyclic:" + std::to_string(s));
}

GradedAlgebra multi_heisenberg_algebra(int s) {
    std::vector<BracketTerm> terms;
    for (int j = 0; j < s; ++j) terms.push_back({j, s + j, 2 * s + j, 1.0});
    return GradedAlgebra(2, {2 * s, s}, terms, "multiheis:" + std::to_string(s));
}

GradedAlgebra complexified_heisenberg_algebra() {
    // Basis (R0, R1, R2, R3 | Z1, Z2) with R1 = J1 R0, R2 = J2 R0,
    // R3 = J1 J2 R0 and anticommuting J's.
    std::vector<BracketTerm> terms = {
        {0, 1, 4, 1.0},
        {0, 2, 5, 1.0},
        {1, 3, 5, -1.0},
        {2, 3, 4, 1.0},
    };
    return GradedAlgebra(2, {4, 2}, terms, "complex-heis");
}

GradedAlgebra quaternionic_algebra() {
    // Three copies of the quaternionic H-type frame (R_l0, R_l1, R_l2, R_l3)
    // over a shared 3-dimensional center.
    std::vector<BracketTerm> terms;
    for (int l = 0; l < 3; ++l) {
        const int o = 4 * l;
        terms.push_back({o + 0, o + 1, 12 + 0, 1.0});
        terms.push_back({o + 0, o + 2, 12 + 1, 1.0});
        terms.push_back({o + 0, o + 3, 12 + 2, 1.0});
        terms.push_back({o + 1, o + 2, 12 + 2, 1.0});
        terms.push_back({o + 1, o + 3, 12 + 1, -1.0});
        terms.push_back({o + 2, o + 3, 12 + 0, 1.0});
    }
    return GradedAlgebra(2, {12, 3}, terms, "quaternionic");
}

GradedAlgebra parabolic_algebra(int n) {
    // Abelian graded group R^n x R with dilations (r x, r^2 t).
    return GradedAlgebra(2, {n, 1}, {}, "parabolic:" + std::to_string(n));
}

GradedAlgebra engel_algebra() {
    // 3-step test algebra: [X1,X2] = X3, [X1,X3] = X4.
    return GradedAlgebra(3, {2, 1, 1}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}, "engel");
}

GradedAlgebra free52_algebra() {
    // Free 2-step algebra on five generators; Z_{lp} = [X_l, X_p], l < p,
    // in lexicographic order.
    std::vector<BracketTerm> terms;
    int idx = 5;
    for (int l = 0; l < 5; ++l)
        for (int p = l + 1; p < 5; ++p) terms.push_back({l, p, idx++, 1.0});
    return GradedAlgebra(2, {5, 10}, terms, "free52");
}

Vec basis_vec(int dim, std::initializer_list<int> ones) {
    Vec v(static_cast<std::size_t>(dim), 0.0);
    for (int i : ones) v[static_cast<std::size_t>(i)] = 1.0;
    return v;
}

}  // namespace

GradedAlgebra make_algebra(const std::string& spec) {
    if (spec == "heisenberg") return heisenberg_algebra();
    if (has_head(spec, "cyclic")) return cyclic_algebra(parse_suffix(spec, "cyclic", 2));
    if (has_head(spec, "multiheis")) return multi_heisenberg_algebra(parse_suffix(spec, "multiheis", 2));
    if (spec == "complex-heis") return complexified_heisenberg_algebra();
    if (spec == "quaternionic") return quaternionic_algebra();
    if (has_head(spec, "parabolic")) return parabolic_algebra(parse_suffix(spec, "parabolic", 2));
    if (spec == "engel") return engel_algebra();
    if (spec == "free52") return free52_algebra();
    if (spec.rfind("custom:", 0) == 0) return algebra_from_json_file(spec.substr(7));
    throw UnsupportedError("unknown algebra: " + spec);
}

ModelAlgebra make_model(const std::string& spec) {
    ModelAlgebra model{spec, ModelKind::custom, make_algebra(spec), 0, 0, 0.0, false, {}, {}};
    const GradedAlgebra& g = model.structure;
    if (g.step() != 2) throw UnsupportedError("model algebra must be 2-step: " + spec);
    model.v_dim = g.layer_dim(1);
    model.z_dim = g.layer_dim(2);

    const int m = model.v_dim;
    if (spec == "heisenberg") {
        model.kind = ModelKind::heisenberg;
        model.C_suriso = 2.0;
        model.kit_u0 = basis_vec(m, {0});
        model.kit_w = {basis_vec(m, {1})};
    } else if (has_head(spec, "cyclic")) {
        model.kind = ModelKind::cyclic_ks;
        model.C_suriso = std::sqrt(2.0 * model.z_dim);
        model.kit_u0 = basis_vec(m, {0});
        for (int k = 0; k < model.z_dim; ++k) model.kit_w.push_back(basis_vec(m, {k + 1}));
    } else if (has_head(spec, "multiheis")) {
        model.kind = ModelKind::multi_heisenberg;
        model.C_suriso = std::sqrt(2.0 * model.z_dim);
        Vec u0(static_cast<std::size_t>(m), 0.0);
        for (int j = 0; j < model.z_dim; ++j) u0[static_cast<std::size_t>(j)] = 1.0;
        model.kit_u0 = u0;
        for (int k = 0; k < model.z_dim; ++k)
            model.kit_w.push_back(basis_vec(m, {model.z_dim + k}));
    } else if (spec == "complex-heis") {
        model.kind = ModelKind::complexified_heisenberg;
        model.C_suriso = 2.0;
        model.kit_u0 = basis_vec(m, {0});
        model.kit_w = {basis_vec(m, {1}), basis_vec(m, {2})};
    } else if (spec == "quaternionic") {
        model.kind = ModelKind::quaternionic_h3;
        model.C_suriso = std::sqrt(6.0);
        model.kit_u0 = basis_vec(m, {0, 4, 8});
        model.kit_w = {basis_vec(m, {1}), basis_vec(m, {6}), basis_vec(m, {11})};
    } else if (spec.rfind("custom:", 0) == 0) {
        model.kind = ModelKind::custom;
        model.surjective_on_isotropic_loops = false;
        return model;
    } else {
        throw UnsupportedError("not a model algebra: " + spec);
    }
    model.surjective_on_isotropic_loops = true;
    return model;
}

std::vector<std::string> builtin_algebra_names() {
    return {"heisenberg", "cyclic:s",  "multiheis:s", "complex-heis", "quaternionic",
            "parabolic:n", "engel",    "free52",      "custom:<file>"};
}

}  // namespace carnot
