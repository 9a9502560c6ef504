#ifndef CARNOT_BUILTINS_HPP_
#define CARNOT_BUILTINS_HPP_

#include <string>
#include <vector>

#include "carnot/algebra.hpp"

namespace carnot {

enum class ModelKind {
    heisenberg,
    cyclic_ks,
    multi_heisenberg,
    complexified_heisenberg,
    quaternionic_h3,
    custom,
};

// A 2-step model algebra n = v (+) z together with the data needed to
// realize center-valued curves as bracket curves of first-layer loops:
// a constant direction u0 and response vectors w_k with [u0, w_k] = Z_k
// and [w_j, w_k] = 0.
struct ModelAlgebra {
    std::string name;
    ModelKind kind = ModelKind::custom;
    GradedAlgebra structure;
    int v_dim = 0;
    int z_dim = 0;
    double C_suriso = 0.0;
    bool surjective_on_isotropic_loops = false;
    Vec kit_u0;               // length v_dim
    std::vector<Vec> kit_w;   // z_dim vectors of length v_dim
};

// Built-in graded algebras by name:
//   heisenberg | cyclic:s | multiheis:s | complex-heis | quaternionic
//   | parabolic[:n] | engel | free52 | custom:<json file>
GradedAlgebra make_algebra(const std::string& spec);

// Model registry for Allcock constructions (the subset of the above that is
// a 2-step model, plus custom 2-step files).
ModelAlgebra make_model(const std::string& spec);

std::vector<std::string> builtin_algebra_names();

}  // namespace carnot

#endif  // CARNOT_BUILTINS_HPP_
