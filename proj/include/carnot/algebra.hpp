#ifndef CARNOT_ALGEBRA_HPP_
#define CARNOT_ALGEBRA_HPP_

#include <string>
#include <vector>

#include "carnot/common.hpp"

namespace carnot {

// One structure-constant entry [e_a, e_b] += value * e_k (0-based indices).
struct BracketTerm {
    int a = 0;
    int b = 0;
    int k = 0;
    double value = 0.0;
};

// Graded nilpotent Lie algebra given by structure constants over an
// orthonormal basis ordered layer-major.  Group points are identified with
// algebra vectors through exponential coordinates, so the group product is
// the BCH series truncated at the step.
//
// Construction validates antisymmetry (by completion), the grading rule and
// the Jacobi identity on all basis triples.
class GradedAlgebra {
  public:
    GradedAlgebra(int step, std::vector<int> layer_dims, std::vector<BracketTerm> brackets,
                  std::string name = "");

    const std::string& name() const { return name_; }
    int step() const { return step_; }
    int dim() const { return dim_; }
    int layer_dim(int j) const { return layer_dims_[static_cast<std::size_t>(j - 1)]; }
    int layer_offset(int j) const { return offsets_[static_cast<std::size_t>(j - 1)]; }
    int layer_of(int index) const { return layer_of_[static_cast<std::size_t>(index)]; }
    const std::vector<int>& layer_dims() const { return layer_dims_; }

    // Antisymmetrized term list with a < b; one entry per (a,b,k).
    const std::vector<BracketTerm>& terms() const { return terms_; }
    double structure(int k, int a, int b) const;

    Vec bracket(const Vec& x, const Vec& y) const;
    Vec iterated_bracket(const Vec& x, const Vec& y, int k) const;
    Vec bch(const Vec& x, const Vec& y) const;
    Vec dilate(double r, const Vec& x) const;
    Vec layer_project(const Vec& x, int j) const;
    double layer_norm(const Vec& x, int j) const;
    double homogeneous_norm(const Vec& x) const;
    // Gauge quasi-distance |(-x) o y|; left invariant by construction.
    double gauge_distance(const Vec& x, const Vec& y) const;

    // Constant beta with ||[x,y]|| <= beta ||x|| ||y||, computed once from
    // the spectral norms of the structure slices.
    double bracket_norm_bound() const { return beta_; }

    void check_vector(const Vec& x) const;

  private:
    void validate() const;
    double compute_beta() const;

    std::string name_;
    int step_;
    int dim_;
    std::vector<int> layer_dims_;
    std::vector<int> offsets_;
    std::vector<int> layer_of_;
    std::vector<BracketTerm> terms_;
    double beta_ = 0.0;
};

// JSON schema: {"step": v, "layer_dims": [d1,...], "brackets": [[a,b,k,value],...]}
GradedAlgebra algebra_from_json_text(const std::string& text, const std::string& name = "custom");
GradedAlgebra algebra_from_json_file(const std::string& path);
std::string algebra_to_json_text(const GradedAlgebra& alg);

}  // namespace carnot

#endif  // CARNOT_ALGEBRA_HPP_
