// The dual correspondence E^pi over pi(M)', the Fourier transform between
// F(E) (x)_pi H and F(E^pi) (x)_iota H, the commutant representation, and
// factorization of induced Hardy-algebra elements through the dual picture.
#pragma once

#include "nchardy/factor.hpp"

namespace nch {

struct DualData {
  GradedSpacePtr space;        // the ambient F_N(E) (x)_pi H
  MatrixSubalgebra commutant;  // pi(M)' concretely
  WedderburnData wedderburn;   // abstract block structure of pi(M)'
  ConcreteAction iota;         // abstract commutant algebra acting on H
  Correspondence dual;         // E^pi over the abstract commutant algebra
  std::vector<Mat> eta;        // intertwiner basis, H -> degree-1 coordinates
  GnsPlacement place;          // GNS placement for the dual picture
};

DualData dual_correspondence(const GradedSpacePtr& f, const Representation& rep,
                             std::uint64_t seed = 13, const Tolerances& tol = {});

struct FourierData {
  GradedSpacePtr dual_space;  // F_N(E^pi) (x)_iota H
  std::vector<Mat> u_k;       // per-degree unitaries, E-side -> dual-side
  Mat u;                      // block diagonal assembly
  std::vector<double> unitarity;  // per-degree ||U_k^* U_k - I||
};

FourierData fourier_transform(const DualData& dd, const Tolerances& tol = {});

// (I_{E^(x)n} (x) eta) between consecutive degrees of the ambient space
Mat eta_lift(const GradedSpace& f, const Mat& eta, int n);

// Psi(eta): the degree-raising representation of the dual correspondence on
// F(E) (x)_pi H; eta must satisfy the intertwiner relation.
GradedOperator psi_rep(const GradedSpacePtr& f, const Mat& eta, const Tolerances& tol = {});

// nu(b) = I_F (x) b for b in pi(M)'
GradedOperator nu_rep(const GradedSpacePtr& f, const Mat& b, const Tolerances& tol = {});

// xi-hat = U_k L_xi for xi in E^(x)k; returns the map H -> dual degree-k
Mat xi_hat(const DualData& dd, const FourierData& fd, int k, const Vec& xi);

struct ElementFactorization {
  GradedOperator x_op;            // rho_pi(X)
  Mat x_tilde;                    // U rho_pi(X) U^*
  OperatorFactorization dual_fc;  // factorization in the dual picture
  Mat w;                          // U^* W-tilde : dual domain -> F(E) (x) H
  Mat y;                          // Y-tilde U   : F(E) (x) H -> dual domain
  ResidualTable checks;
};

ElementFactorization factor_element(const GradedSpacePtr& f, const DualData& dd,
                                    const FourierData& fd, const PolyOperator& x,
                                    const FactorOptions& opts = {});

// polynomials in the dual generators, realized on the ambient space; used to
// produce honest commutant elements
GradedOperator random_dual_polynomial(const GradedSpacePtr& f, const DualData& dd, int degree,
                                      Rng& rng, const Tolerances& tol = {});

}  // namespace nch
