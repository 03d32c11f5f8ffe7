#include "nchardy/matalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <numeric>

namespace nch {

Algebra::Algebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  require(!blocks_.empty(), Err::EmptyBlocks, "algebra needs at least one block");
  offsets_.resize(blocks_.size());
  for (size_t k = 0; k < blocks_.size(); ++k) {
    require(blocks_[k] >= 1, Err::InvalidBlock, "block sizes must be positive");
    offsets_[k] = dim_;
    dim_ += blocks_[k] * blocks_[k];
  }
}

AlgElement Algebra::zero() const {
  AlgElement a;
  for (int n : blocks_) a.blk.push_back(Mat::Zero(n, n));
  return a;
}

AlgElement Algebra::unit() const {
  AlgElement a;
  for (int n : blocks_) a.blk.push_back(Mat::Identity(n, n));
  return a;
}

AlgElement Algebra::basis_element(int p) const {
  int k, i, j;
  basis_label(p, k, i, j);
  AlgElement a = zero();
  a.blk[k](i, j) = 1.0;
  return a;
}

void Algebra::basis_label(int p, int& k, int& i, int& j) const {
  for (size_t b = 0; b < blocks_.size(); ++b) {
    int n = blocks_[b];
    if (p < offsets_[b] + n * n) {
      int loc = p - offsets_[b];
      k = int(b);
      i = loc / n;
      j = loc % n;
      return;
    }
  }
  fail(Err::DimensionMismatch, "basis index out of range");
}

Vec Algebra::coords(const AlgElement& a) const {
  Vec c(dim_);
  int p = 0;
  for (size_t k = 0; k < blocks_.size(); ++k)
    for (int i = 0; i < blocks_[k]; ++i)
      for (int j = 0; j < blocks_[k]; ++j) c(p++) = a.blk[k](i, j);
  return c;
}

AlgElement Algebra::from_coords(const Vec& c) const {
  require(c.size() == dim_, Err::DimensionMismatch, "coordinate size mismatch");
  AlgElement a = zero();
  int p = 0;
  for (size_t k = 0; k < blocks_.size(); ++k)
    for (int i = 0; i < blocks_[k]; ++i)
      for (int j = 0; j < blocks_[k]; ++j) a.blk[k](i, j) = c(p++);
  return a;
}

Vec Algebra::unit_coords() const { return coords(unit()); }

AlgElement Algebra::mul(const AlgElement& a, const AlgElement& b) const {
  AlgElement r = zero();
  for (size_t k = 0; k < blocks_.size(); ++k) r.blk[k] = a.blk[k] * b.blk[k];
  return r;
}

AlgElement Algebra::add(const AlgElement& a, const AlgElement& b) const {
  AlgElement r = zero();
  for (size_t k = 0; k < blocks_.size(); ++k) r.blk[k] = a.blk[k] + b.blk[k];
  return r;
}

AlgElement Algebra::scale(Cx s, const AlgElement& a) const {
  AlgElement r = zero();
  for (size_t k = 0; k < blocks_.size(); ++k) r.blk[k] = s * a.blk[k];
  return r;
}

AlgElement Algebra::star(const AlgElement& a) const {
  AlgElement r = zero();
  for (size_t k = 0; k < blocks_.size(); ++k) r.blk[k] = a.blk[k].adjoint();
  return r;
}

Cx Algebra::hs_inner(const AlgElement& a, const AlgElement& b) const {
  Cx s = 0.0;
  for (size_t k = 0; k < blocks_.size(); ++k) s += (a.blk[k].adjoint() * b.blk[k]).trace();
  return s;
}

Cx Algebra::trace(const AlgElement& a) const {
  Cx s = 0.0;
  for (const Mat& m : a.blk) s += m.trace();
  return s;
}

double Algebra::norm(const AlgElement& a) const {
  double n = 0.0;
  for (const Mat& m : a.blk) n = std::max(n, spectral_norm(m));
  return n;
}

Mat Algebra::left_mult_matrix(const AlgElement& a) const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int p = 0; p < dim_; ++p) m.col(p) = coords(mul(a, basis_element(p)));
  return m;
}

Mat Algebra::right_mult_matrix(const AlgElement& a) const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int p = 0; p < dim_; ++p) m.col(p) = coords(mul(basis_element(p), a));
  return m;
}

Mat Algebra::star_matrix() const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int p = 0; p < dim_; ++p) m.col(p) = coords(star(basis_element(p)));
  return m;
}

Algebra make_algebra(const std::vector<int>& blocks) { return Algebra(blocks); }

AlgebraPtr make_algebra_ptr(const std::vector<int>& blocks) {
  return std::make_shared<const Algebra>(blocks);
}

Mat ConcreteAction::apply(const AlgElement& a) const {
  return apply_coords(algebra->coords(a));
}

Mat ConcreteAction::apply_coords(const Vec& c) const {
  require(c.size() == Eigen::Index(mats.size()), Err::DimensionMismatch, "action coords");
  Mat m = Mat::Zero(space_dim(), space_dim());
  for (size_t p = 0; p < mats.size(); ++p)
    if (c(p) != Cx(0.0)) m += c(p) * mats[p];
  return m;
}

Mat ConcreteAction::unit_matrix() const { return apply(algebra->unit()); }

bool ConcreteAction::is_unital(double tol) const {
  return (unit_matrix() - Mat::Identity(space_dim(), space_dim())).norm() <= tol;
}

Representation::Representation(AlgebraPtr alg, std::vector<int> mults)
    : alg_(std::move(alg)), mults_(std::move(mults)) {
  require(int(mults_.size()) == alg_->num_blocks(), Err::DimensionMismatch,
          "one multiplicity per block");
  bool any = false;
  offsets_.resize(mults_.size());
  for (size_t k = 0; k < mults_.size(); ++k) {
    require(mults_[k] >= 0, Err::InvalidBlock, "multiplicities are non-negative");
    if (mults_[k] > 0) any = true;
    offsets_[k] = dim_;
    dim_ += alg_->block_size(int(k)) * mults_[k];
  }
  require(any, Err::NotFaithful, "representation acts on the zero space");
}

bool Representation::faithful() const {
  return std::all_of(mults_.begin(), mults_.end(), [](int m) { return m >= 1; });
}

Mat Representation::pi(const AlgElement& a) const {
  Mat m = Mat::Zero(dim_, dim_);
  for (int k = 0; k < alg_->num_blocks(); ++k) {
    int n = alg_->block_size(k);
    for (int j = 0; j < mults_[k]; ++j)
      m.block(offsets_[k] + j * n, offsets_[k] + j * n, n, n) = a.blk[k];
  }
  return m;
}

Mat Representation::pi_basis(int p) const { return pi(alg_->basis_element(p)); }

ConcreteAction Representation::action() const {
  ConcreteAction a;
  a.algebra = alg_;
  for (int p = 0; p < alg_->dim(); ++p) a.mats.push_back(pi_basis(p));
  return a;
}

int Representation::basis_index(int k, int j, int i) const {
  return offsets_[k] + j * alg_->block_size(k) + i;
}

Representation make_representation(AlgebraPtr alg, const std::vector<int>& mults) {
  return Representation(std::move(alg), mults);
}

ConcreteAction ampliation_action(const Representation& rep, int m) {
  require(m >= 1, Err::InvalidBlock, "ampliation index must be >= 1");
  ConcreteAction base = rep.action();
  ConcreteAction out;
  out.algebra = base.algebra;
  Mat im = Mat::Identity(m, m);
  for (const Mat& mat : base.mats) out.mats.push_back(kron(im, mat));
  return out;
}

Representation ampliation(const Representation& rep, int m) {
  require(m >= 1, Err::InvalidBlock, "ampliation index must be >= 1");
  std::vector<int> mults = rep.multiplicities();
  for (int& x : mults) x *= m;
  return Representation(rep.algebra(), mults);
}

ConcreteAction compress_action(const ConcreteAction& a, const Mat& basis, double tol_inv) {
  ConcreteAction out;
  out.algebra = a.algebra;
  for (const Mat& m : a.mats) {
    double leak = basis.cols() == 0 ? 0.0
                                    : spectral_norm(m * basis - basis * (basis.adjoint() * m * basis));
    require(leak <= tol_inv * (1.0 + spectral_norm(m)), Err::NotInvariant,
            "subspace not invariant under the action");
    out.mats.push_back(basis.adjoint() * m * basis);
  }
  return out;
}

Mat MatrixSubalgebra::basis_as_columns() const {
  Mat m(ambient * ambient, dim());
  for (int s = 0; s < dim(); ++s)
    m.col(s) = Eigen::Map<const Vec>(basis[s].data(), ambient * ambient);
  return m;
}

MatrixSubalgebra commutant_basis(const std::vector<Mat>& ops, int dim,
                                 const Tolerances& tol) {
  std::vector<Mat> gens;
  for (const Mat& a : ops) {
    require(a.rows() == dim && a.cols() == dim, Err::DimensionMismatch,
            "commutant_basis: operators must be dim x dim");
    gens.push_back(a);
    gens.push_back(a.adjoint());
  }
  Mat id = Mat::Identity(dim, dim);
  Mat stack(Eigen::Index(gens.size()) * dim * dim, dim * dim);
  for (size_t g = 0; g < gens.size(); ++g) {
    // column-major vec: vec(AX - XA) = (I (x) A - A^T (x) I) vec X
    stack.middleRows(Eigen::Index(g) * dim * dim, dim * dim) =
        kron(id, gens[g]) - kron(gens[g].transpose(), id);
  }
  Mat ns = gens.empty() ? Mat::Identity(dim * dim, dim * dim) : null_space(stack, tol.rank);

  MatrixSubalgebra sub;
  sub.ambient = dim;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Mat x(dim, dim);
    x = Eigen::Map<const Mat>(ns.col(c).data(), dim, dim);
    sub.basis.push_back(x);
  }
  // closure checks; the commutant of a self-adjoint set is *-closed and
  // unital by construction, so these should always pass.
  Mat cols = sub.basis_as_columns();
  Mat proj = projector(cols);
  auto inside = [&](const Mat& x) {
    Vec v = Eigen::Map<const Vec>(x.data(), dim * dim);
    return (v - proj * v).norm() <= tol.alg * (1.0 + v.norm());
  };
  sub.star_closed = true;
  for (const Mat& b : sub.basis)
    if (!inside(b.adjoint())) sub.star_closed = false;
  sub.unital = inside(Mat::Identity(dim, dim));
  return sub;
}

namespace {

struct CentralBlock {
  Mat projector;       // minimal central projection
  double eigenvalue;   // of the separating central element (for ordering)
};

// Orthonormal columns spanning the range of a (numerical) projection.
Mat range_of_projection(const Mat& p, double reltol) { return orthonormal_range(p, reltol); }

}  // namespace

WedderburnData wedderburn_decompose(const MatrixSubalgebra& sub, std::uint64_t seed,
                                    const Tolerances& tol) {
  require(sub.dim() > 0, Err::NotStarClosed, "empty subalgebra");
  const int n = sub.ambient;
  require(sub.star_closed && sub.unital, Err::NotStarClosed,
          "wedderburn_decompose needs a *-closed unital subalgebra");

  // 1. center of the subalgebra, inside subalgebra coordinates
  const int d = sub.dim();
  Mat sys(Eigen::Index(d) * n * n, d);
  for (int t = 0; t < d; ++t) {
    for (int s = 0; s < d; ++s) {
      Mat c = sub.basis[s] * sub.basis[t] - sub.basis[t] * sub.basis[s];
      sys.block(Eigen::Index(t) * n * n, s, n * n, 1) =
          Eigen::Map<const Vec>(c.data(), n * n);
    }
  }
  Mat zc = null_space(sys, tol.rank);
  std::vector<Mat> center;
  for (Eigen::Index c = 0; c < zc.cols(); ++c) {
    Mat z = Mat::Zero(n, n);
    for (int s = 0; s < d; ++s) z += zc(s, c) * sub.basis[s];
    center.push_back(z);
  }
  require(!center.empty(), Err::NotStarClosed, "unital algebra has trivial center?");

  Rng rng(seed);
  std::vector<CentralBlock> blocks;
  for (int attempt = 0; attempt < 8 && blocks.empty(); ++attempt) {
    Mat z = Mat::Zero(n, n);
    for (const Mat& zb : center) {
      Cx g = rng.cgaussian();
      z += g * zb + std::conj(g) * zb.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es((z + z.adjoint()) / 2.0);
    RVec ev = es.eigenvalues();
    // cluster eigenvalues
    double span = std::max(1.0, ev(ev.size() - 1) - ev(0));
    std::vector<std::pair<double, Mat>> clusters;
    int i = 0;
    while (i < ev.size()) {
      int j = i;
      while (j + 1 < ev.size() && ev(j + 1) - ev(j) < 1e-7 * span) ++j;
      Mat vs = es.eigenvectors().middleCols(i, j - i + 1);
      clusters.push_back({ev(i), vs * vs.adjoint()});
      i = j + 1;
    }
    if (int(clusters.size()) != int(center.size())) continue;  // eigenvalue collision, retry
    bool ok = true;
    for (auto& [lam, p] : clusters) {
      // each cluster projection must itself be central
      for (const Mat& b : sub.basis)
        if ((p * b - b * p).norm() > 1e-7 * (1.0 + b.norm())) ok = false;
    }
    if (!ok) continue;
    for (auto& [lam, p] : clusters) blocks.push_back({p, lam});
  }
  require(!blocks.empty(), Err::NotStarClosed, "could not separate central projections");

  // 2. per central block, identify M_{n_c} with multiplicity m_c and build
  //    the block's orthonormal basis ordered (copy j, coordinate i).
  struct BlockOut {
    int nsize, mult;
    Mat columns;
    double key;
  };
  std::vector<BlockOut> outs;
  for (auto& cb : blocks) {
    Mat range = range_of_projection(cb.projector, tol.rank);
    int rdim = int(range.cols());
    // compress subalgebra to the block
    std::vector<Mat> comp;
    for (const Mat& b : sub.basis) {
      Mat cbm = range.adjoint() * b * range;
      if (cbm.norm() > 1e-10) comp.push_back(cbm);
    }
    // dimension of the compressed span = n_c^2
    Mat colstack(rdim * rdim, Eigen::Index(comp.size()));
    for (size_t s = 0; s < comp.size(); ++s)
      colstack.col(Eigen::Index(s)) = Eigen::Map<const Vec>(comp[s].data(), rdim * rdim);
    int adim = numeric_rank(colstack, tol.rank);
    int nc = int(std::lround(std::sqrt(double(adim))));
    require(nc * nc == adim, Err::NotStarClosed, "block dimension is not a square");
    require(rdim % nc == 0, Err::NotStarClosed, "range not divisible by block size");
    int mc = rdim / nc;

    // generic self-adjoint element of the compressed algebra
    Mat x = Mat::Zero(rdim, rdim);
    for (const Mat& cm : comp) {
      Cx g = rng.cgaussian();
      x += g * cm + std::conj(g) * cm.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    RVec ev = es.eigenvalues();
    // expect nc eigenvalues of multiplicity mc each
    std::vector<Mat> eigproj;
    int i = 0;
    double span = std::max(1.0, ev(rdim - 1) - ev(0));
    while (i < rdim) {
      int j = i;
      while (j + 1 < rdim && ev(j + 1) - ev(j) < 1e-7 * span) ++j;
      eigproj.push_back(es.eigenvectors().middleCols(i, j - i + 1));
      i = j + 1;
    }
    require(int(eigproj.size()) == nc, Err::NotStarClosed,
            "unexpected spectral multiplicity pattern");

    // another generic element links the eigenspaces
    Mat x2 = Mat::Zero(rdim, rdim);
    for (const Mat& cm : comp) {
      Cx g = rng.cgaussian();
      x2 += g * cm + std::conj(g) * cm.adjoint();
    }
    Mat q1 = eigproj[0];
    phase_normalize_columns(q1);
    Mat cols(n, rdim);
    for (int i2 = 0; i2 < nc; ++i2) {
      Mat link;
      if (i2 == 0) {
        link = q1;
      } else {
        Mat w = eigproj[i2] * (eigproj[i2].adjoint() * x2 * q1);  // rdim x mc
        // isometry part of w: w = u s v^*, take u v^*
        Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
        require(svd.singularValues()(svd.singularValues().size() - 1) >
                    tol.rank * std::max(1.0, svd.singularValues()(0)),
                Err::NotStarClosed, "degenerate linking element");
        link = svd.matrixU() * svd.matrixV().adjoint();
      }
      // columns for copies j: ordering (copy j, coordinate i)
      for (int j2 = 0; j2 < mc; ++j2) cols.col(j2 * nc + i2) = range * link.col(j2);
    }
    outs.push_back({nc, mc, cols, cb.eigenvalue});
  }

  std::sort(outs.begin(), outs.end(), [](const BlockOut& a, const BlockOut& b) {
    if (a.nsize != b.nsize) return a.nsize > b.nsize;
    if (a.mult != b.mult) return a.mult > b.mult;
    return a.key < b.key;
  });

  WedderburnData wd;
  std::vector<int> bs;
  wd.change_of_basis = Mat(n, n);
  int off = 0;
  for (auto& o : outs) {
    bs.push_back(o.nsize);
    wd.mults.push_back(o.mult);
    wd.block_offsets.push_back(off);
    wd.change_of_basis.middleCols(off, o.nsize * o.mult) = o.columns;
    off += o.nsize * o.mult;
  }
  require(off == n, Err::NotStarClosed, "blocks do not exhaust the ambient space");
  wd.algebra = Algebra(bs);
  // polish: re-orthonormalize Q (it is unitary up to float error already)
  Eigen::HouseholderQR<Mat> qr(wd.change_of_basis);
  Mat qfix = qr.householderQ() * Mat::Identity(n, n);
  // keep the original column phases/order: Q from blocks is already near-
  // unitary, so only use qr correction if drift is detectable
  if ((wd.change_of_basis.adjoint() * wd.change_of_basis - Mat::Identity(n, n)).norm() > 1e-12) {
    // project to the nearest unitary via SVD
    Eigen::JacobiSVD<Mat> svd(wd.change_of_basis, Eigen::ComputeFullU | Eigen::ComputeFullV);
    wd.change_of_basis = svd.matrixU() * svd.matrixV().adjoint();
  }
  (void)qfix;
  return wd;
}

Vec WedderburnData::to_abstract_coords(const Mat& concrete) const {
  Mat conj = change_of_basis.adjoint() * concrete * change_of_basis;
  Vec c(algebra.dim());
  int p = 0;
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    int nk = algebra.block_size(k);
    // read the first copy of block k
    Mat blk = conj.block(block_offsets[k], block_offsets[k], nk, nk);
    for (int i = 0; i < nk; ++i)
      for (int j = 0; j < nk; ++j) c(p++) = blk(i, j);
  }
  return c;
}

Mat WedderburnData::from_abstract(const AlgElement& a) const {
  int n = int(change_of_basis.rows());
  Mat inner = Mat::Zero(n, n);
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    int nk = algebra.block_size(k);
    for (int j = 0; j < mults[k]; ++j)
      inner.block(block_offsets[k] + j * nk, block_offsets[k] + j * nk, nk, nk) = a.blk[k];
  }
  return change_of_basis * inner * change_of_basis.adjoint();
}

ConcreteAction WedderburnData::iota() const {
  ConcreteAction act;
  act.algebra = std::make_shared<const Algebra>(algebra);
  for (int p = 0; p < algebra.dim(); ++p)
    act.mats.push_back(from_abstract(algebra.basis_element(p)));
  return act;
}

std::vector<CyclicPiece> cyclic_decomposition(const std::vector<Mat>& action_mats,
                                              const Mat& subspace_basis,
                                              const Tolerances& tol, bool permuted) {
  std::vector<CyclicPiece> pieces;
  if (subspace_basis.cols() == 0) return pieces;
  // invariance check
  for (const Mat& a : action_mats) {
    Mat img = a * subspace_basis;
    Mat leak = img - subspace_basis * (subspace_basis.adjoint() * img);
    require(spectral_norm(leak) <= tol.inv * (1.0 + spectral_norm(a)), Err::NotInvariant,
            "cyclic_decomposition: subspace not invariant");
  }

  Mat accumulated(subspace_basis.rows(), 0);
  const int total = int(subspace_basis.cols());
  while (accumulated.cols() < total) {
    // candidate = remaining basis vector with the largest residual norm;
    // the permuted variant takes the first usable index instead.
    int pick = -1;
    double best = 1e-7;
    for (int c = 0; c < total; ++c) {
      double r = residual_outside(accumulated, subspace_basis.col(c));
      if (permuted) {
        if (r > 1e-7) {
          pick = c;
          break;
        }
      } else if (r > best + 1e-12) {
        best = r;
        pick = c;
      }
    }
    if (pick < 0) break;
    Vec v = subspace_basis.col(pick);
    if (accumulated.cols() > 0) v -= accumulated * (accumulated.adjoint() * v);
    v.normalize();
    // orbit span of v; the unit is in the algebra so v itself is included
    Mat orbit(subspace_basis.rows(), action_mats.size());
    for (size_t p = 0; p < action_mats.size(); ++p) orbit.col(Eigen::Index(p)) = action_mats[p] * v;
    Mat piece = orthonormal_range(orbit, tol.rank);
    if (accumulated.cols() > 0)
      piece = orthogonal_complement_within(piece, accumulated, tol.rank);
    CyclicPiece cp;
    cp.vector = v;
    cp.basis = piece;
    pieces.push_back(cp);
    Mat na(subspace_basis.rows(), accumulated.cols() + piece.cols());
    na << accumulated, piece;
    accumulated = orthonormal_range(na, tol.rank);
  }
  return pieces;
}

}  // namespace nch
