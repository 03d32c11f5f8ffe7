// Inner-outer factorization of vectors in a truncated induced Fock space, of
// commutant elements, and Beurling decompositions of invariant subspaces.
#pragma once

#include "nchardy/indrep.hpp"

namespace nch {

struct ResidualRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResidualTable {
  std::vector<ResidualRow> rows;
  bool pass = true;
  void add(const std::string& name, double residual, double tol) {
    ResidualRow r{name, residual, tol, residual <= tol};
    pass = pass && r.pass;
    rows.push_back(r);
  }
};

struct FactorOptions {
  Tolerances tol;
  bool permuted_tie_break = false;  // alternate deterministic ordering
};

// tau(a) = <sigma(a) g0, g0> presented by one PSD matrix per algebra block.
struct DensityFunctional {
  AlgebraPtr algebra;
  std::vector<Mat> d;
  Cx value(const AlgElement& a) const;
  double total() const;  // tau(1)
};

// Placement of GNS components: an isometry onto (block k, first copy) per
// block of the carrier of pi.
struct GnsPlacement {
  int dim_h = 0;
  std::vector<Mat> first_copy;
};

GnsPlacement placement_from_representation(const Representation& rep);

struct GnsData {
  int slots = 0;          // ampliation index m
  Vec h_tau;              // in H^(m), slot index outermost
  Mat k_basis;            // orthonormal basis of K inside H^(m)
  ConcreteAction pi_hat;  // on H^(m)
  ConcreteAction mu;      // compression of pi_hat to K
};

ConcreteAction ampliate_concrete(const ConcreteAction& a, int m);

Subspace cyclic_subspace(const GradedSpace& f, const Vec& g, const Tolerances& tol = {});

// shift of a sigma(M)-invariant subspace under the induced creation maps
Subspace shift_subspace(const GradedSpace& f, const Subspace& m, const Tolerances& tol = {});

struct WanderingData {
  Subspace cyclic;
  Subspace wandering;
  Vec g0;
  int top_degree = 0;
};

WanderingData wandering_vector(const GradedSpace& f, const Vec& g, const Tolerances& tol = {});

DensityFunctional tau_density(const GradedSpace& f, const Vec& g0, const Tolerances& tol = {});

GnsData gns_vector(const DensityFunctional& tau, const ConcreteAction& pi,
                   const GnsPlacement& place, const FactorOptions& opts = {});

// The inner operator W = I (x) w0 from F_{N-d0}(E) (x)_mu K into the ambient
// Fock space, together with everything it is built from.
struct InnerData {
  GnsData gns;
  Mat w0;              // H^(m) -> ambient, zero on the complement of K
  GradedSpacePtr dom;  // F_{N-d0}(E) (x)_mu K
  Mat w;               // ambient_dim x dom->dim()
  int d0 = 0;
};

// shared builder: W = I (x) w0 realized degree by degree; exact because the
// domain is truncated at N - d0
InnerData build_inner_operator(const GradedSpacePtr& f, const GnsData& gns, const Mat& w0,
                               int d0, const FactorOptions& opts);

InnerData inner_from_vector(const GradedSpacePtr& f, const GnsPlacement& place, const Vec& g,
                            const FactorOptions& opts = {});

struct VectorFactorization {
  GradedSpacePtr space;
  Vec g;
  WanderingData wd;
  DensityFunctional tau;
  InnerData inner;
  Vec y;
  ResidualTable checks;
};

VectorFactorization factor_vector(const GradedSpacePtr& f, const GnsPlacement& place,
                                  const Vec& g, const FactorOptions& opts = {});

// truncated outerness: at every budget b <= budget_max the polynomial orbit
// of y fills the degrees <= b part of its space
bool outerness_ranks(const GradedSpace& dom, const Vec& y, int budget_max, double reltol,
                     std::vector<std::pair<int, int>>* got_want = nullptr);

struct UniquenessData {
  Mat u;
  ResidualTable checks;
};

UniquenessData uniqueness_unitary(const VectorFactorization& f1, const VectorFactorization& f2,
                                  const Tolerances& tol = {});

struct OperatorFactorization {
  GradedSpacePtr space;
  Subspace range;      // closure of S(F (x) H)
  Subspace wandering;  // range ominus shift(range)
  std::vector<CyclicPiece> pieces;
  std::vector<GnsData> piece_gns;
  InnerData inner;  // stacked W over the stacked K
  Mat y;            // outer operator, dom->dim() x space->dim()
  int d_s = 0;      // top degree shift of the input
  ResidualTable checks;
};

OperatorFactorization factor_commutant(const GradedSpacePtr& f, const GnsPlacement& place,
                                       const GradedOperator& s, const FactorOptions& opts = {});

struct BeurlingDecomposition {
  Subspace subspace;
  Subspace wandering;
  std::vector<CyclicPiece> pieces;
  std::vector<InnerData> inners;  // one inner operator per cyclic piece
  ResidualTable checks;
};

BeurlingDecomposition beurling_decompose(const GradedSpacePtr& f, const GnsPlacement& place,
                                         const Subspace& m, const FactorOptions& opts = {});

// masked intertwining residual ||(A X_dom - X_cod A) P_{<= arena}||
double intertwining_residual(const Mat& a, const GradedOperator& x_dom,
                             const GradedOperator& x_cod, int arena);

Mat degree_cutoff(const GradedSpace& sp, int b);  // projection onto degrees <= b

}  // namespace nch
