#include "nchardy/dual.hpp"

namespace nch {

namespace {

// descended (phi(a) (x) I_H) on the degree-1 coordinates
Mat left_on_degree1(const GradedSpace& f, int p) {
  const int dh = f.carrier_dim();
  const Correspondence& e = f.chain()->base();
  return f.degree(1).fwd * kron(e.left[p], Mat::Identity(dh, dh)) * f.degree(1).bwd;
}

}  // namespace

DualData dual_correspondence(const GradedSpacePtr& f, const Representation& rep,
                             std::uint64_t seed, const Tolerances& tol) {
  require(rep.faithful(), Err::NotFaithful, "dual correspondence needs a faithful pi");
  require(f->trunc() >= 1, Err::DegreeOverflow, "need at least one tensor degree");
  DualData dd;
  dd.space = f;
  const int dh = f->carrier_dim();

  std::vector<Mat> pi_mats = f->action().mats;
  dd.commutant = commutant_basis(pi_mats, dh, tol);
  dd.wedderburn = wedderburn_decompose(dd.commutant, seed, tol);
  dd.iota = dd.wedderburn.iota();

  // intertwiners eta: H -> E (x) H with eta pi(a) = (phi(a) (x) I) eta
  const int r1 = f->degree_dim(1);
  const int dm = f->algebra()->dim();
  Mat stack(Eigen::Index(dm) * r1 * dh, Eigen::Index(r1) * dh);
  for (int p = 0; p < dm; ++p) {
    Mat phi1 = left_on_degree1(*f, p);
    stack.middleRows(Eigen::Index(p) * r1 * dh, Eigen::Index(r1) * dh) =
        kron(pi_mats[p].transpose(), Mat::Identity(r1, r1)) -
        kron(Mat::Identity(dh, dh), phi1);
  }
  Mat ns = null_space(stack, tol.rank);
  for (Eigen::Index c = 0; c < ns.cols(); ++c)
    dd.eta.push_back(Eigen::Map<const Mat>(ns.col(c).data(), r1, dh));

  // structure tensors over the abstract commutant algebra
  const Algebra& mc = dd.wedderburn.algebra;
  const int de = int(dd.eta.size());
  Correspondence dual;
  dual.algebra = std::make_shared<const Algebra>(mc);
  dual.dim = de;
  dual.inner_coords = Mat::Zero(Eigen::Index(de) * de, mc.dim());
  auto hs_coords = [&](const Mat& x) {
    // coefficients of x in the eta basis (Hilbert-Schmidt orthonormal)
    Vec c(de);
    for (int b = 0; b < de; ++b) c(b) = (dd.eta[b].adjoint() * x).trace();
    return c;
  };
  for (int q = 0; q < mc.dim(); ++q) {
    Mat iq = dd.iota.mats[q];
    Mat r = Mat::Zero(de, de), l = Mat::Zero(de, de);
    // (I_E (x) b) descended to degree-1 coordinates
    Mat ib = f->degree(1).fwd *
             kron(Mat::Identity(f->chain()->base().dim, f->chain()->base().dim), iq) *
             f->degree(1).bwd;
    for (int al = 0; al < de; ++al) {
      r.col(al) = hs_coords(dd.eta[al] * iq);
      l.col(al) = hs_coords(ib * dd.eta[al]);
    }
    dual.right.push_back(r);
    dual.left.push_back(l);
  }
  for (int al = 0; al < de; ++al)
    for (int be = 0; be < de; ++be) {
      Mat ip = dd.eta[al].adjoint() * dd.eta[be];
      dual.inner_coords.row(Eigen::Index(al) * de + be) =
          dd.wedderburn.to_abstract_coords(ip).transpose();
    }
  dd.dual = std::move(dual);

  // GNS placement through the block-diagonalizing unitary
  dd.place.dim_h = dh;
  for (int k = 0; k < mc.num_blocks(); ++k) {
    int n = mc.block_size(k);
    Mat m(dh, n);
    for (int i = 0; i < n; ++i)
      m.col(i) = dd.wedderburn.change_of_basis.col(dd.wedderburn.block_offsets[k] + i);
    dd.place.first_copy.push_back(m);
  }
  return dd;
}

Mat eta_lift(const GradedSpace& f, const Mat& eta, int n) {
  require(n + 1 <= f.trunc(), Err::DegreeOverflow, "eta_lift target degree");
  if (n == 0) return eta;
  const int dh = f.carrier_dim();
  const int rn = f.chain()->power_dim(n);
  Mat eta_elem = f.degree(1).bwd * eta;  // H -> (E basis, H) elementary
  return f.degree(n + 1).fwd * kron(f.chain()->comb(n, 1), Mat::Identity(dh, dh)) *
         kron(Mat::Identity(rn, rn), eta_elem) * f.degree(n).bwd;
}

GradedOperator psi_rep(const GradedSpacePtr& f, const Mat& eta, const Tolerances& tol) {
  const int dh = f->carrier_dim();
  require(eta.rows() == f->degree_dim(1) && eta.cols() == dh, Err::DimensionMismatch,
          "eta maps H into the degree-1 coordinates");
  // intertwiner relation
  double worst = 0.0;
  for (int p = 0; p < f->algebra()->dim(); ++p) {
    Mat lhs = eta * f->action().mats[p];
    Mat rhs = left_on_degree1(*f, p) * eta;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  require(worst <= 1e-9 * (1.0 + eta.norm()), Err::NotIntertwiner,
          "psi_rep argument is not an intertwiner");
  GradedOperator op;
  op.dom = op.cod = f;
  op.mat = Mat::Zero(f->dim(), f->dim());
  for (int n = 0; n + 1 <= f->trunc(); ++n)
    op.mat.block(f->offset(n + 1), f->offset(n), f->degree_dim(n + 1), f->degree_dim(n)) =
        eta_lift(*f, eta, n);
  op.lo_shift = op.hi_shift = 1;
  op.arena = f->trunc() - 1;
  return op;
}

GradedOperator nu_rep(const GradedSpacePtr& f, const Mat& b, const Tolerances& tol) {
  const int dh = f->carrier_dim();
  require(b.rows() == dh && b.cols() == dh, Err::DimensionMismatch, "nu argument acts on H");
  double worst = 0.0;
  for (const Mat& pm : f->action().mats)
    worst = std::max(worst, (pm * b - b * pm).norm());
  require(worst <= tol.inv * (1.0 + b.norm()), Err::NotInCommutant,
          "nu argument must commute with pi(M)");
  GradedOperator op;
  op.dom = op.cod = f;
  op.mat = Mat::Zero(f->dim(), f->dim());
  for (int n = 0; n <= f->trunc(); ++n) {
    const int rn = f->chain()->power_dim(n);
    op.mat.block(f->offset(n), f->offset(n), f->degree_dim(n), f->degree_dim(n)) =
        f->degree(n).fwd * kron(Mat::Identity(rn, rn), b) * f->degree(n).bwd;
  }
  op.lo_shift = op.hi_shift = 0;
  op.arena = f->trunc();
  return op;
}

FourierData fourier_transform(const DualData& dd, const Tolerances& tol) {
  const GradedSpace& f = *dd.space;
  const int n = f.trunc();
  const int dh = f.carrier_dim();
  FourierData fd;
  auto dual_chain = std::make_shared<CorrChain>(dd.dual, tol);
  fd.dual_space = build_fock(dual_chain, dd.iota, n);
  const GradedSpace& g = *fd.dual_space;
  const int de = int(dd.eta.size());

  // U_0 = I on H; higher degrees are determined by the intertwining
  // U_{k+1} Psi(eta)|_k = rho_iota(T_eta)|_k U_k, solved in least squares and
  // certified unitary afterwards.
  fd.u_k.push_back(Mat::Identity(dh, dh));
  fd.unitarity.push_back(0.0);
  for (int k = 0; k + 1 <= n; ++k) {
    require(f.degree_dim(k + 1) == g.degree_dim(k + 1), Err::DimensionMismatch,
            "dual degree dimension must match");
    const int pk = f.degree_dim(k);
    Mat lhs(f.degree_dim(k + 1), Eigen::Index(de) * pk);
    Mat rhs(g.degree_dim(k + 1), Eigen::Index(de) * pk);
    for (int a = 0; a < de; ++a) {
      lhs.middleCols(Eigen::Index(a) * pk, pk) = eta_lift(f, dd.eta[a], k);
      const Mat& rb = g.raise_block(1, k);
      rhs.middleCols(Eigen::Index(a) * pk, pk) =
          rb.middleCols(Eigen::Index(a) * g.degree_dim(k), g.degree_dim(k)) * fd.u_k[k];
    }
    Mat uk1 = rhs * pinv(lhs, tol.rank);
    fd.unitarity.push_back(
        std::max(spectral_norm(Mat(uk1.adjoint() * uk1) -
                               Mat::Identity(f.degree_dim(k + 1), f.degree_dim(k + 1))),
                 spectral_norm(Mat(uk1 * uk1.adjoint()) -
                               Mat::Identity(g.degree_dim(k + 1), g.degree_dim(k + 1)))));
    fd.u_k.push_back(std::move(uk1));
  }
  fd.u = Mat::Zero(g.dim(), f.dim());
  for (int k = 0; k <= n; ++k)
    fd.u.block(g.offset(k), f.offset(k), g.degree_dim(k), f.degree_dim(k)) = fd.u_k[k];
  return fd;
}

Mat xi_hat(const DualData& dd, const FourierData& fd, int k, const Vec& xi) {
  const GradedSpace& f = *dd.space;
  require(k >= 0 && k <= f.trunc(), Err::DegreeOverflow, "xi_hat degree");
  const int dh = f.carrier_dim();
  require(xi.size() == f.chain()->power_dim(k), Err::DimensionMismatch,
          "xi lives in the k-th tensor power");
  Mat l_xi = f.degree(k).fwd * kron(xi, Mat::Identity(dh, dh));
  return fd.u_k[k] * l_xi;
}

ElementFactorization factor_element(const GradedSpacePtr& f, const DualData& dd,
                                    const FourierData& fd, const PolyOperator& x,
                                    const FactorOptions& opts) {
  ElementFactorization ef;
  ef.x_op = f->realize_poly(x);
  ef.x_tilde = fd.u * ef.x_op.mat * fd.u.adjoint();

  GradedOperator xt;
  xt.dom = xt.cod = fd.dual_space;
  xt.mat = ef.x_tilde;
  auto [lo, hi] = detect_shifts(*fd.dual_space, *fd.dual_space, ef.x_tilde, 1e-11);
  xt.lo_shift = lo;
  xt.hi_shift = hi;
  xt.arena = fd.dual_space->trunc() - hi;

  ef.dual_fc = factor_commutant(fd.dual_space, dd.place, xt, opts);
  ef.w = fd.u.adjoint() * ef.dual_fc.inner.w;
  ef.y = ef.dual_fc.y * fd.u;

  double xnorm = std::max(1e-300, spectral_norm(ef.x_op.mat));
  ef.checks.add("element-reconstruction", spectral_norm(ef.x_op.mat - ef.w * ef.y) / xnorm,
                1e-8);
  const int nd = ef.dual_fc.inner.dom->dim();
  ef.checks.add("element-inner-isometry",
                nd == 0 ? 0.0
                        : spectral_norm(Mat(ef.w.adjoint() * ef.w) - Mat::Identity(nd, nd)),
                1e-8);
  // intertwining against the dual generators pulled back by the Fourier
  // transform: rho^pi(S) = U^* rho_iota(S) U
  const auto& gd = ef.dual_fc.inner.dom->generators();
  const auto& gi = fd.dual_space->generators();
  double worst_w = 0.0, worst_y = 0.0;
  for (size_t i = 0; i < gd.size(); ++i) {
    int arena = gd[i].arena;
    if (arena < 0) continue;
    Mat rho_pi_s = fd.u.adjoint() * gi[i].mat * fd.u;
    Mat cut = degree_cutoff(*ef.dual_fc.inner.dom, arena);
    worst_w = std::max(worst_w,
                       spectral_norm((ef.w * gd[i].mat - rho_pi_s * ef.w) * cut));
    int arena_y = gi[i].arena - ef.dual_fc.d_s;
    if (arena_y >= 0) {
      Mat cuty = degree_cutoff(*f, arena_y);
      worst_y = std::max(worst_y,
                         spectral_norm((ef.y * rho_pi_s - gd[i].mat * ef.y) * cuty));
    }
  }
  ef.checks.add("element-inner-intertwining", worst_w, 1e-8);
  ef.checks.add("element-outer-intertwining", worst_y, 1e-8);
  // initial space of W equals the closure of the range of Y
  int rank_y = numeric_rank(ef.y, opts.tol.rank);
  ef.checks.add("element-initial-space-matches-outer-range",
                std::abs(double(rank_y) - double(nd)), 0.5);
  return ef;
}

GradedOperator random_dual_polynomial(const GradedSpacePtr& f, const DualData& dd, int degree,
                                      Rng& rng, const Tolerances& tol) {
  GradedOperator acc;
  acc.dom = acc.cod = f;
  acc.mat = Mat::Zero(f->dim(), f->dim());
  const int de = int(dd.eta.size());
  // degree-0 part: nu(b) for a random commutant element b
  Mat b = Mat::Zero(f->carrier_dim(), f->carrier_dim());
  for (const Mat& cb : dd.commutant.basis) b += rng.cgaussian() * cb;
  acc.mat += nu_rep(f, b, tol).mat;
  // degree k adds a random eta-mixture word of length k
  std::vector<GradedOperator> psis;
  for (int a = 0; a < de; ++a) psis.push_back(psi_rep(f, dd.eta[a], tol));
  Mat level = Mat::Identity(f->dim(), f->dim());
  for (int k = 1; k <= degree; ++k) {
    Mat mix = Mat::Zero(f->dim(), f->dim());
    for (int a = 0; a < de; ++a) mix += rng.cgaussian() * psis[a].mat;
    level = mix * level;
    acc.mat += level;
  }
  acc.lo_shift = 0;
  acc.hi_shift = degree;
  acc.arena = f->trunc();
  return acc;
}

}  // namespace nch
