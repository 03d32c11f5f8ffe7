// Truncated graded Fock space F_N(E) (x)_A K, creation and left-action
// operators, and realized polynomial elements of the induced Hardy algebra.
#pragma once

#include <memory>

#include "nchardy/corr.hpp"

namespace nch {

class GradedSpace;
using GradedSpacePtr = std::shared_ptr<const GradedSpace>;

// Degree-homogeneous-patterned operator between graded spaces.  `arena` is
// the largest input degree on which the matrix agrees with the untruncated
// operator; blocks with shift outside [lo_shift, hi_shift] vanish.
struct GradedOperator {
  GradedSpacePtr dom;
  GradedSpacePtr cod;
  Mat mat;
  int lo_shift = 0;
  int hi_shift = 0;
  int arena = 0;
};

// Formal polynomial element of the tensor algebra: degree-0 coefficient in M
// plus one coefficient in E^{(x)n} per higher degree, stored over the chain's
// internal bases.
struct PolyOperator {
  std::vector<std::pair<int, Vec>> terms;
  int degree() const;
};

class GradedSpace : public std::enable_shared_from_this<GradedSpace> {
public:
  GradedSpace(std::shared_ptr<CorrChain> chain, ConcreteAction act, int trunc);

  const std::shared_ptr<CorrChain>& chain() const { return chain_; }
  const ConcreteAction& action() const { return act_; }
  const AlgebraPtr& algebra() const { return act_.algebra; }
  int trunc() const { return trunc_; }
  int carrier_dim() const { return act_.space_dim(); }

  int degree_dim(int n) const { return deg_[n].dim; }
  int offset(int n) const { return offsets_[n]; }
  int dim() const { return dim_; }
  const BalancedSpace& degree(int n) const { return deg_[n]; }

  // slice of a full vector at one degree
  Vec component(const Vec& v, int n) const;
  int top_degree(const Vec& v, double tiny = 1e-13) const;

  // payload coordinates: degree 0 directly in carrier coordinates, degree
  // n >= 1 over the word basis (d^n outer, carrier inner)
  Vec embed_component(int n, const Vec& word_coords) const;
  Vec extract_component(const Vec& v, int n) const;

  Mat sigma(const AlgElement& a) const;       // left action, all degrees
  const std::vector<Mat>& sigma_basis() const;  // per algebra basis element

  GradedOperator creation(const Vec& xi) const;
  GradedOperator left_action(const AlgElement& a) const;
  GradedOperator realize_poly(const PolyOperator& x) const;
  GradedOperator identity_op() const;

  // rho-generators: creations of the E basis followed by left actions of the
  // algebra basis
  const std::vector<GradedOperator>& generators() const;

  // E^{(x)k} (x) degree-n  ->  degree (k+n); input indexed (T_k basis outer,
  // degree-n coordinate inner).
  const Mat& raise_block(int k, int n) const;

  // V_k~(w_a (x) z) for z given in full space coordinates: exact whenever the
  // components of z live at degrees <= trunc - k.
  Vec apply_generalized_creation(int k, int a, const Vec& z) const;

private:
  std::shared_ptr<CorrChain> chain_;
  ConcreteAction act_;
  int trunc_;
  std::vector<BalancedSpace> deg_;
  std::vector<int> offsets_;
  int dim_ = 0;
  mutable std::vector<Mat> sigma_basis_;
  mutable std::vector<GradedOperator> gens_;
  mutable std::map<std::pair<int, int>, Mat> raise_;
};

GradedSpacePtr build_fock(std::shared_ptr<CorrChain> chain, const ConcreteAction& act, int trunc);
// Convenience: F_N(E) (x)_pi H for a faithful block representation.
GradedSpacePtr build_fock(const Correspondence& e, const Representation& rep, int trunc,
                          const Tolerances& tol = {});

GradedOperator compose(const GradedOperator& a, const GradedOperator& b);
GradedOperator adjoint_op(const GradedOperator& a);

// largest block norm violating the declared shift pattern
double shift_pattern_residual(const GradedOperator& op);

// degree shift range actually present in a matrix on graded spaces
std::pair<int, int> detect_shifts(const GradedSpace& cod, const GradedSpace& dom, const Mat& m,
                                  double tiny = 1e-12);

}  // namespace nch
