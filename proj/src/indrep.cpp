#include "nchardy/indrep.hpp"

namespace nch {

CovariantRep::CovariantRep(std::shared_ptr<CorrChain> chain, ConcreteAction act, Mat vt1_elem)
    : chain_(std::move(chain)), act_(std::move(act)), vt1_elem_(std::move(vt1_elem)) {
  const int g = act_.space_dim();
  require(vt1_elem_.rows() == g && vt1_elem_.cols() == Eigen::Index(chain_->base().dim) * g,
          Err::DimensionMismatch, "V~ elementary columns must be (dim E * dim G)");
}

CovariantRep CovariantRep::induced(const GradedSpacePtr& fock) {
  const int g = fock->dim();
  const int d = fock->chain()->base().dim;
  Mat vt(g, Eigen::Index(d) * g);
  for (int i = 0; i < d; ++i)
    vt.middleCols(Eigen::Index(i) * g, g) = fock->creation(Vec::Unit(d, i)).mat;
  ConcreteAction act;
  act.algebra = fock->algebra();
  act.mats = fock->sigma_basis();
  CovariantRep rep(fock->chain(), act, std::move(vt));
  rep.fock_ = fock;
  return rep;
}

CovariantRep CovariantRep::scalar_isometry(const Mat& v) {
  require(v.rows() == v.cols(), Err::DimensionMismatch, "square carrier expected");
  double iso = (v.adjoint() * v - Mat::Identity(v.cols(), v.cols())).norm();
  require(iso <= 1e-9, Err::NotInvariant, "scalar_isometry needs an isometric V");
  auto chain = std::make_shared<CorrChain>(free_correspondence(1));
  ConcreteAction act;
  act.algebra = chain->algebra();
  act.mats = {Mat::Identity(v.rows(), v.cols())};
  return CovariantRep(chain, act, v);
}

CovariantRep CovariantRep::direct_sum(const CovariantRep& a, const CovariantRep& b) {
  require(a.chain_->algebra()->same_structure(*b.chain_->algebra()), Err::AlgebraMismatch,
          "direct sum needs one base algebra");
  require(a.chain_->base().dim == b.chain_->base().dim, Err::AlgebraMismatch,
          "direct sum needs one correspondence");
  const int ga = a.carrier_dim(), gb = b.carrier_dim(), g = ga + gb;
  const int d = a.chain_->base().dim;
  ConcreteAction act;
  act.algebra = a.act_.algebra;
  for (size_t p = 0; p < a.act_.mats.size(); ++p) {
    Mat m = Mat::Zero(g, g);
    m.topLeftCorner(ga, ga) = a.act_.mats[p];
    m.bottomRightCorner(gb, gb) = b.act_.mats[p];
    act.mats.push_back(m);
  }
  Mat vt = Mat::Zero(g, Eigen::Index(d) * g);
  for (int i = 0; i < d; ++i) {
    vt.block(0, Eigen::Index(i) * g, ga, ga) = a.vt1_elem_.middleCols(Eigen::Index(i) * ga, ga);
    vt.block(ga, Eigen::Index(i) * g + ga, gb, gb) =
        b.vt1_elem_.middleCols(Eigen::Index(i) * gb, gb);
  }
  return CovariantRep(a.chain_, act, std::move(vt));
}

Mat CovariantRep::v_of(const Vec& xi) const {
  const int g = carrier_dim();
  Mat m = Mat::Zero(g, g);
  for (int i = 0; i < xi.size(); ++i)
    if (xi(i) != Cx(0.0)) m += xi(i) * vt1_elem_.middleCols(Eigen::Index(i) * g, g);
  return m;
}

void CovariantRep::ensure_power(int k) const {
  const int g = carrier_dim();
  if (vtk_elem_.empty()) {
    // k = 0: canonical identification M (x)_sigma G = G
    Mat v0(g, Eigen::Index(act_.algebra->dim()) * g);
    for (int p = 0; p < act_.algebra->dim(); ++p)
      v0.middleCols(Eigen::Index(p) * g, g) = act_.mats[p];
    vtk_elem_.push_back(std::move(v0));
    vtk_elem_.push_back(vt1_elem_);
  }
  while (int(vtk_elem_.size()) <= k) {
    int j = int(vtk_elem_.size());
    const Mat& prev = vtk_elem_[j - 1];
    const Mat& expand = chain_->expand(j);  // power j basis over (power j-1, E)
    const int rj = chain_->power_dim(j), rp = chain_->power_dim(j - 1);
    const int d = chain_->base().dim;
    Mat cur = Mat::Zero(g, Eigen::Index(rj) * g);
    for (int c = 0; c < rj; ++c) {
      for (int b = 0; b < rp; ++b)
        for (int i = 0; i < d; ++i) {
          Cx w = expand(b * d + i, c);
          if (w == Cx(0.0)) continue;
          cur.middleCols(Eigen::Index(c) * g, g) +=
              w * prev.middleCols(Eigen::Index(b) * g, g) *
              vt1_elem_.middleCols(Eigen::Index(i) * g, g);
        }
    }
    vtk_elem_.push_back(std::move(cur));
  }
}

Mat CovariantRep::vtilde_elementary(int k) const {
  ensure_power(k);
  return vtk_elem_[k];
}

CovariantRep::GeneralizedPower CovariantRep::generalized_power(int k) const {
  GeneralizedPower gp;
  gp.k = k;
  gp.domain = balanced_tensor(chain_->power(k), act_, chain_->tol());
  gp.op = vtilde_elementary(k) * gp.domain.bwd;
  return gp;
}

double CovariantRep::power_isometry_residual(int k, const Mat& low) const {
  // compress the action to span(low), balance, and test V~_k there
  ConcreteAction sub = compress_action(act_, low, 1e-8);
  BalancedSpace bs = balanced_tensor(chain_->power(k), sub, chain_->tol());
  const int rk = chain_->power_dim(k);
  Mat vk = vtilde_elementary(k) * kron(Mat::Identity(rk, rk), low) * bs.bwd;
  if (bs.dim == 0) return 0.0;
  return spectral_norm(Mat(vk.adjoint() * vk) - Mat::Identity(bs.dim, bs.dim));
}

Subspace CovariantRep::shift_subspace(const Subspace& m, const Tolerances& tol) const {
  const int g = carrier_dim();
  // sigma(M)-invariance of the input
  for (const Mat& s : act_.mats) {
    Mat img = s * m.basis;
    double leak = m.dim() == 0 ? 0.0 : spectral_norm(img - m.basis * (m.basis.adjoint() * img));
    require(leak <= tol.inv * (1.0 + spectral_norm(s)), Err::NotInvariant,
            "shift_subspace: input not sigma(M)-invariant");
  }
  const int d = chain_->base().dim;
  Mat images(g, Eigen::Index(d) * m.dim());
  for (int i = 0; i < d; ++i)
    images.middleCols(Eigen::Index(i) * m.dim(), m.dim()) =
        vt1_elem_.middleCols(Eigen::Index(i) * g, g) * m.basis;
  Subspace out;
  out.basis = orthonormal_range(images, tol.rank);
  return out;
}

Mat CovariantRep::endo_L(const Mat& x, const Tolerances& tol) const {
  const int g = carrier_dim();
  for (const Mat& s : act_.mats)
    require(spectral_norm(s * x - x * s) <= tol.inv * (1.0 + spectral_norm(x)),
            Err::NotInCommutant, "endo_L argument must commute with sigma(M)");
  BalancedSpace b1 = balanced_tensor(chain_->base(), act_, chain_->tol());
  Mat vt = vt1_elem_ * b1.bwd;
  Mat ix = b1.fwd * kron(Mat::Identity(chain_->base().dim, chain_->base().dim), x) * b1.bwd;
  return vt * ix * vt.adjoint();
}

CovariantRep::WoldData CovariantRep::wold(int kmax, const Tolerances& tol) const {
  require(kmax >= 1, Err::DegreeOverflow, "wold needs kmax >= 1");
  const int g = carrier_dim();
  WoldData wd;
  wd.r.push_back(Mat::Identity(g, g));
  for (int k = 1; k <= kmax; ++k) {
    Mat rng = orthonormal_range(vtilde_elementary(k), tol.rank);
    wd.r.push_back(projector(rng));
  }
  for (int k = 0; k < kmax; ++k) wd.p.push_back(wd.r[k] - wd.r[k + 1]);
  // stabilization: two consecutive equal projections, or an exactly dead tail
  const Mat& last = wd.r[kmax];
  if (spectral_norm(wd.r[kmax] - wd.r[kmax - 1]) <= 1e-10) {
    wd.stabilized = true;
    wd.stabilized_at = kmax - 1;
  } else if (numeric_rank(last, tol.rank) == 0) {
    wd.stabilized = true;
    wd.stabilized_at = kmax;
  }
  wd.r_inf = wd.stabilized ? last : Mat(Mat::Zero(g, g));
  if (wd.stabilized) {
    wd.fully_coisometric_part.basis = orthonormal_range(wd.r_inf, tol.rank);
    wd.induced_part.basis = orthonormal_range(Mat::Identity(g, g) - wd.r_inf, tol.rank);
  }
  return wd;
}

CovariantRep induced_covariant_rep(const GradedSpacePtr& fock) {
  return CovariantRep::induced(fock);
}

}  // namespace nch
