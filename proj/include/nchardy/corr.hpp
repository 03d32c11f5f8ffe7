// W*-correspondences over finite-dimensional algebras, presented by structure
// tensors on a finite basis; internal tensor powers balanced over the left
// action, and balanced tensor products with represented spaces.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nchardy/matalg.hpp"

namespace nch {

// E with basis (e_1..e_d), right action tensors R_p (coords of e_i * a_p in
// column i), left action matrices Phi_p, and M-valued inner product stored
// row-major: inner_coords.row(i*d+j) = coords of <e_i, e_j>.
struct Correspondence {
  AlgebraPtr algebra;
  int dim = 0;
  std::vector<Mat> right;  // per algebra basis element
  std::vector<Mat> left;   // per algebra basis element
  Mat inner_coords;        // (dim*dim) x algebra->dim()

  AlgElement inner(const Vec& xi, const Vec& eta) const;  // <xi, eta>, linear in eta
  Mat right_mat(const AlgElement& a) const;
  Mat left_mat(const AlgElement& a) const;
  double vector_norm(const Vec& xi) const;  // sqrt of ||<xi,xi>||_M
};

struct AxiomCheck {
  std::string axiom;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool pass = true;
  void add(const std::string& axiom, double residual, double tol);
};

ValidationReport validate_correspondence(const Correspondence& e, const Tolerances& tol = {});

Correspondence free_correspondence(int d);
Correspondence graph_correspondence(int n_vertices,
                                    const std::vector<std::pair<int, int>>& edges);
// E^{(x)0} = M with <a,b> = a*b, both actions by multiplication.
Correspondence unit_correspondence(AlgebraPtr alg);

// Building block for random instances: the bimodule of n_k x n_l matrices
// between two blocks of M, with copies.  Always a valid correspondence.
Correspondence block_hom_correspondence(AlgebraPtr alg,
                                        const std::vector<std::tuple<int, int, int>>& parts);

// Internal tensor product (P (x)_phi Q) as a quotient of the algebraic
// tensor basis by the null space of the scalar Gram form.
struct TensorStep {
  Correspondence product;
  Mat expand;   // (dimP*dimQ) x dimR: chosen basis as elementary coefficients
  Mat project;  // dimR x (dimP*dimQ): classes of elementary tensors
};

TensorStep internal_tensor(const Correspondence& p, const Correspondence& q,
                           const Tolerances& tol = {});

// Cached chain E^{(x)k} built by right extension, with re-association maps.
class CorrChain {
public:
  CorrChain(Correspondence e, Tolerances tol = {});

  const AlgebraPtr& algebra() const { return e_.algebra; }
  const Correspondence& base() const { return e_; }
  const Correspondence& power(int k);
  int power_dim(int k) { return power(k).dim; }
  const Mat& expand(int k);   // power k basis -> (power k-1, E) elementary
  const Mat& project(int k);  // (power k-1, E) elementary -> power k

  // class map (E^a basis x E^b basis) elementary -> E^{a+b} basis
  Mat comb(int a, int b);

  // word coordinates: expansion of the chosen basis of E^k over the full
  // d^k-dimensional word basis, and the projection back (degree 0 uses the
  // algebra's coordinate basis).
  Mat word_expand(int k);
  Mat word_project(int k);

  const Tolerances& tol() const { return tol_; }

private:
  Correspondence e_;
  Tolerances tol_;
  std::vector<Correspondence> pow_;
  std::vector<Mat> expand_, project_;
  std::map<std::pair<int, int>, Mat> comb_;
  std::vector<Mat> wexp_, wproj_;
  void ensure(int k);
};

// Orthonormal model of P (x)_A K for a concrete action A of the base algebra
// on K.  fwd maps elementary coefficients (basis w_b of P outer, K coordinate
// inner) to orthonormal coordinates; bwd picks a representative.
struct BalancedSpace {
  int dim = 0;
  int elem_dim = 0;
  Mat fwd;
  Mat bwd;
};

BalancedSpace balanced_tensor(const Correspondence& p, const ConcreteAction& a,
                              const Tolerances& tol = {});

// Degree-zero space M (x)_A K identified with K itself (a (x) k -> A(a)k).
BalancedSpace balanced_degree_zero(const ConcreteAction& a);

// Minimal eigenvalue of the scalar Gram matrix (for positivity checks).
double balanced_gram_min_eigenvalue(const Correspondence& p, const ConcreteAction& a);

}  // namespace nch
