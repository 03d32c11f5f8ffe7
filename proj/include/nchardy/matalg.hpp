// Finite-dimensional W*-algebras (direct sums of full matrix blocks), their
// block-diagonal representations with multiplicities, commutants and
// block-structure recovery.
#pragma once

#include <memory>
#include <vector>

#include "nchardy/linalg.hpp"

namespace nch {

struct AlgElement {
  std::vector<Mat> blk;
};

// A finite direct sum of full matrix blocks M_{n_1} + ... + M_{n_r}.
// The canonical linear basis consists of the matrix units of every block,
// enumerated block-major and row-major inside a block; it is orthonormal
// for the Hilbert-Schmidt pairing sum_k tr(a_k^* b_k).
class Algebra {
public:
  explicit Algebra(std::vector<int> blocks);

  int num_blocks() const { return int(blocks_.size()); }
  int block_size(int k) const { return blocks_[k]; }
  const std::vector<int>& blocks() const { return blocks_; }
  int dim() const { return dim_; }  // sum of n_k^2

  AlgElement zero() const;
  AlgElement unit() const;
  AlgElement basis_element(int p) const;
  // (block, row, col) of basis index p
  void basis_label(int p, int& k, int& i, int& j) const;

  Vec coords(const AlgElement& a) const;
  AlgElement from_coords(const Vec& c) const;
  Vec unit_coords() const;

  AlgElement mul(const AlgElement& a, const AlgElement& b) const;
  AlgElement add(const AlgElement& a, const AlgElement& b) const;
  AlgElement scale(Cx s, const AlgElement& a) const;
  AlgElement star(const AlgElement& a) const;
  Cx hs_inner(const AlgElement& a, const AlgElement& b) const;  // linear in b
  Cx trace(const AlgElement& a) const;
  double norm(const AlgElement& a) const;  // largest block spectral norm

  // Matrix of left multiplication x -> a x (resp. right x -> x a) on the
  // coordinate space.
  Mat left_mult_matrix(const AlgElement& a) const;
  Mat right_mult_matrix(const AlgElement& a) const;
  // Coordinate matrix of the *-involution composed with reversal is not
  // linear; instead star_coords maps coords(a) -> coords(a*) antilinearly,
  // provided via conjugation of this matrix.
  Mat star_matrix() const;  // coords(a*) = star_matrix * conj(coords(a))

  bool same_structure(const Algebra& other) const { return blocks_ == other.blocks_; }

private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

Algebra make_algebra(const std::vector<int>& blocks);
AlgebraPtr make_algebra_ptr(const std::vector<int>& blocks);

// A normal *-action of an Algebra on a concrete finite space, stored as one
// matrix per canonical basis element.  Covers representations, their
// compressions to invariant subspaces, ampliations and the abstract-to-
// concrete map of a recovered block decomposition.
struct ConcreteAction {
  AlgebraPtr algebra;
  std::vector<Mat> mats;  // mats[p] = action of basis_element(p)

  int space_dim() const { return mats.empty() ? 0 : int(mats[0].rows()); }
  Mat apply(const AlgElement& a) const;
  Mat apply_coords(const Vec& c) const;
  Mat unit_matrix() const;
  bool is_unital(double tol) const;
};

// pi = block-diagonal representation: block k repeated m_k times.  Basis
// label of H is (block k, copy j, coordinate i), copy index outermost
// within the block.
class Representation {
public:
  Representation(AlgebraPtr alg, std::vector<int> mults);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<int>& multiplicities() const { return mults_; }
  int dim() const { return dim_; }
  bool faithful() const;

  Mat pi(const AlgElement& a) const;
  Mat pi_basis(int p) const;
  ConcreteAction action() const;

  // index of basis vector (block k, copy j, coordinate i)
  int basis_index(int k, int j, int i) const;

private:
  AlgebraPtr alg_;
  std::vector<int> mults_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

Representation make_representation(AlgebraPtr alg, const std::vector<int>& mults);

// pi-hat on H^(m) = C^m (tensor) H with slot index outermost.
ConcreteAction ampliation_action(const Representation& rep, int m);
Representation ampliation(const Representation& rep, int m);

// Compression of an action to the span of `basis` (orthonormal columns,
// invariant under the action).
ConcreteAction compress_action(const ConcreteAction& a, const Mat& basis, double tol_inv);

struct MatrixSubalgebra {
  int ambient = 0;
  std::vector<Mat> basis;  // Hilbert-Schmidt orthonormal
  bool star_closed = false;
  bool unital = false;

  int dim() const { return int(basis.size()); }
  Mat basis_as_columns() const;  // ambient^2 x dim, column-major vec
};

// {X : XA = AX for all A in ops and ops*}; solved through the vectorized
// commutation system and orthonormalized at reltol.
MatrixSubalgebra commutant_basis(const std::vector<Mat>& ops, int dim,
                                 const Tolerances& tol = {});

struct WedderburnData {
  Algebra algebra{std::vector<int>{1}};
  std::vector<int> mults;
  Mat change_of_basis;  // unitary Q; Q^* A Q block-diagonal for A in span
  // abstract coordinates of a concrete element of the span
  Vec to_abstract_coords(const Mat& concrete) const;
  Mat from_abstract(const AlgElement& a) const;
  ConcreteAction iota() const;  // abstract algebra acting on the ambient space

  std::vector<int> block_offsets;  // offset of block k inside Q's columns
};

// Recover the block structure (n_k) with multiplicities (m_k) of a *-closed
// unital subalgebra, together with a unitary realizing it block-diagonally.
// Seeded randomness picks generic elements of the center.
WedderburnData wedderburn_decompose(const MatrixSubalgebra& sub, std::uint64_t seed = 13,
                                    const Tolerances& tol = {});

struct CyclicPiece {
  Vec vector;  // normalized cyclic vector
  Mat basis;   // orthonormal basis of its orbit span
};

// Greedy orthogonal decomposition of an invariant subspace into cyclic
// pieces: largest residual norm first, ties broken by lowest index.
// `permuted` flips the tie-breaking order (used by the uniqueness tests).
std::vector<CyclicPiece> cyclic_decomposition(const std::vector<Mat>& action_mats,
                                              const Mat& subspace_basis,
                                              const Tolerances& tol = {},
                                              bool permuted = false);

}  // namespace nch
