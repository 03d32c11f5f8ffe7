// Isometric covariant representations (V, sigma): the induced representation
// on a truncated Fock space, plain finite-dimensional ones, direct sums;
// generalized powers, the subspace shift, the endomorphism L and Wold data.
#pragma once

#include "nchardy/fock.hpp"

namespace nch {

struct Subspace {
  Mat basis;  // orthonormal columns in the ambient space
  int dim() const { return int(basis.cols()); }
  int ambient() const { return int(basis.rows()); }
  Mat proj() const { return projector(basis); }
};

// Uniform carrier model: a concrete space G with a *-action of M and the
// isometry V~ given by its elementary columns V(e_i) g_j.  Induced
// representations materialize their creation operators into this form, so
// truncation zeros are carried honestly.
class CovariantRep {
public:
  CovariantRep(std::shared_ptr<CorrChain> chain, ConcreteAction act, Mat vt1_elem);

  static CovariantRep induced(const GradedSpacePtr& fock);
  // E = C over C: V~ is any isometry G -> G (unitary at finite dimension)
  static CovariantRep scalar_isometry(const Mat& v);
  static CovariantRep direct_sum(const CovariantRep& a, const CovariantRep& b);

  const std::shared_ptr<CorrChain>& chain() const { return chain_; }
  const ConcreteAction& action() const { return act_; }
  int carrier_dim() const { return act_.space_dim(); }
  // attached Fock space when built by `induced`
  const GradedSpacePtr& fock() const { return fock_; }

  Mat v_of(const Vec& xi) const;  // V(xi): G -> G
  const Mat& vt1_elementary() const { return vt1_elem_; }

  // elementary columns of the generalized power V~_k over (T_k basis, G)
  Mat vtilde_elementary(int k) const;

  struct GeneralizedPower {
    int k = 0;
    BalancedSpace domain;  // E^{(x)k} (x)_sigma G
    Mat op;                // carrier_dim x domain.dim
  };
  GeneralizedPower generalized_power(int k) const;

  // ||V~_k^* V~_k - I|| restricted to E^{(x)k} (x) (span of columns `low`);
  // `low` = carrier subspace the power acts on without truncation loss.
  double power_isometry_residual(int k, const Mat& low) const;

  Subspace shift_subspace(const Subspace& m, const Tolerances& tol = {}) const;

  // L(x) = V~ (I (x) x) V~^*; x must commute with sigma(M).
  Mat endo_L(const Mat& x, const Tolerances& tol = {}) const;

  struct WoldData {
    std::vector<Mat> r;  // R_0..R_kmax
    std::vector<Mat> p;  // P_k = R_k - R_{k+1}
    Mat r_inf;
    bool stabilized = false;
    int stabilized_at = -1;
    Subspace induced_part;           // range(I - R_inf)
    Subspace fully_coisometric_part; // range(R_inf)
  };
  WoldData wold(int kmax, const Tolerances& tol = {}) const;

private:
  std::shared_ptr<CorrChain> chain_;
  ConcreteAction act_;
  Mat vt1_elem_;
  GradedSpacePtr fock_;
  mutable std::vector<Mat> vtk_elem_;
  void ensure_power(int k) const;
};

CovariantRep induced_covariant_rep(const GradedSpacePtr& fock);

}  // namespace nch
