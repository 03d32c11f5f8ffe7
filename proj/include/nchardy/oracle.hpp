// Independent ground truth: classical Blaschke inner-outer factorization of
// scalar polynomials and brute-force subspace routines used as cross checks.
#pragma once

#include "nchardy/indrep.hpp"

namespace nch {

struct PolySeries {
  Vec coeff;  // coeff(k) multiplies z^k
  int degree() const;
  Cx eval(Cx z) const;
  std::vector<Cx> roots() const;  // companion-matrix eigenvalues
};

PolySeries poly_from(const std::vector<Cx>& coeffs);
PolySeries poly_mul(const PolySeries& a, const PolySeries& b, int keep_deg);

struct BlaschkeSplit {
  Vec inner;  // power series to the requested degree
  Vec outer;
  int zero_order = 0;            // power of z split into the inner part
  std::vector<Cx> inside_roots;  // strictly inside the disc (excluding 0)
};

// Roots within distance `circle_tol` of the unit circle are rejected.
BlaschkeSplit blaschke_inner_outer(const PolySeries& p, int series_deg,
                                   double circle_tol = 1e-6);

// span of all words of length <= budget in `ops` applied to v
Subspace brute_cyclic_span(const std::vector<Mat>& ops, const Vec& v, int budget,
                           double reltol = 1e-9);

// m ominus span{ V_i m_j } for explicit shift generators
Subspace brute_wandering(const std::vector<Mat>& v_gens, const Subspace& m,
                         double inv_tol = 1e-8, double reltol = 1e-9);

}  // namespace nch
