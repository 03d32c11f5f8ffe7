#include "nchardy/factor.hpp"

#include <Eigen/Eigenvalues>

namespace nch {

Cx DensityFunctional::value(const AlgElement& a) const {
  Cx s = 0.0;
  for (size_t k = 0; k < d.size(); ++k) s += (d[k] * a.blk[k]).trace();
  return s;
}

double DensityFunctional::total() const {
  double s = 0.0;
  for (const Mat& m : d) s += m.trace().real();
  return s;
}

GnsPlacement placement_from_representation(const Representation& rep) {
  require(rep.faithful(), Err::NotFaithful, "GNS placement needs a faithful representation");
  GnsPlacement p;
  p.dim_h = rep.dim();
  for (int k = 0; k < rep.algebra()->num_blocks(); ++k) {
    int n = rep.algebra()->block_size(k);
    Mat m = Mat::Zero(rep.dim(), n);
    for (int i = 0; i < n; ++i) m(rep.basis_index(k, 0, i), i) = 1.0;
    p.first_copy.push_back(m);
  }
  return p;
}

ConcreteAction ampliate_concrete(const ConcreteAction& a, int m) {
  require(m >= 1, Err::InvalidBlock, "ampliation index must be >= 1");
  ConcreteAction out;
  out.algebra = a.algebra;
  Mat im = Mat::Identity(m, m);
  for (const Mat& x : a.mats) out.mats.push_back(kron(im, x));
  return out;
}

Mat degree_cutoff(const GradedSpace& sp, int b) {
  Mat p = Mat::Zero(sp.dim(), sp.dim());
  for (int n = 0; n <= std::min(b, sp.trunc()); ++n)
    p.block(sp.offset(n), sp.offset(n), sp.degree_dim(n), sp.degree_dim(n)) =
        Mat::Identity(sp.degree_dim(n), sp.degree_dim(n));
  return p;
}

namespace {

// span of sigma(M) g
Mat sigma_orbit(const GradedSpace& f, const Vec& g, double reltol) {
  const auto& sb = f.sigma_basis();
  Mat orbit(f.dim(), Eigen::Index(sb.size()));
  for (size_t p = 0; p < sb.size(); ++p) orbit.col(Eigen::Index(p)) = sb[p] * g;
  return orthonormal_range(orbit, reltol);
}

Mat creation_images(const GradedSpace& f, const Mat& basis) {
  const auto& gens = f.generators();
  const int d = f.chain()->base().dim;
  Mat img(f.dim(), Eigen::Index(d) * basis.cols());
  for (int i = 0; i < d; ++i)
    img.middleCols(Eigen::Index(i) * basis.cols(), basis.cols()) = gens[i].mat * basis;
  return img;
}

int top_degree_of_basis(const GradedSpace& f, const Mat& basis) {
  int d = 0;
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    d = std::max(d, f.top_degree(basis.col(c)));
  return d;
}

// w0 = B A^+ for one GNS block: A stacks pi-hat(a_p) h_tau, B stacks
// sigma(a_p) g0
Mat w0_from_gns(const GradedSpace& f, const GnsData& gns, const Vec& g0,
                const FactorOptions& opts) {
  const Algebra& m = *f.algebra();
  Mat a(gns.pi_hat.space_dim(), m.dim()), b(f.dim(), m.dim());
  for (int p = 0; p < m.dim(); ++p) {
    a.col(p) = gns.pi_hat.mats[p] * gns.h_tau;
    b.col(p) = f.sigma_basis()[p] * g0;
  }
  return b * pinv(a, opts.tol.rank);
}

// Stack per-piece GNS data into one ampliation (slot offsets in piece order)
// and assemble the combined w0.
GnsData stack_gns(const GradedSpace& f, const std::vector<GnsData>& parts,
                  const std::vector<Vec>& g0s, const FactorOptions& opts, Mat& w0_out) {
  const int dh = f.carrier_dim();
  int total = 0;
  for (const auto& g : parts) total += g.slots;
  GnsData out;
  out.slots = total;
  ConcreteAction base = f.action();
  out.pi_hat = ampliate_concrete(base, std::max(total, 1));
  out.h_tau = Vec::Zero(Eigen::Index(std::max(total, 1)) * dh);
  Mat kb(Eigen::Index(std::max(total, 1)) * dh, 0);
  w0_out = Mat::Zero(f.dim(), Eigen::Index(std::max(total, 1)) * dh);
  int off = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    const GnsData& gi = parts[i];
    if (gi.slots == 0) continue;
    out.h_tau.segment(Eigen::Index(off) * dh, Eigen::Index(gi.slots) * dh) = gi.h_tau;
    Mat emb = Mat::Zero(kb.rows(), gi.k_basis.cols());
    emb.middleRows(Eigen::Index(off) * dh, Eigen::Index(gi.slots) * dh) = gi.k_basis;
    Mat joined(kb.rows(), kb.cols() + emb.cols());
    joined << kb, emb;
    kb = joined;
    w0_out.middleCols(Eigen::Index(off) * dh, Eigen::Index(gi.slots) * dh) =
        w0_from_gns(f, gi, g0s[i], opts);
    off += gi.slots;
  }
  out.k_basis = kb;
  out.mu = compress_action(out.pi_hat, out.k_basis, 1e-8);
  return out;
}

}  // namespace

Subspace cyclic_subspace(const GradedSpace& f, const Vec& g, const Tolerances& tol) {
  require(g.norm() > 1e-13, Err::ZeroVector, "cyclic_subspace of the zero vector");
  Mat frontier = sigma_orbit(f, g, tol.rank);
  Mat acc = frontier;
  for (int k = 1; k <= f.trunc() && frontier.cols() > 0; ++k) {
    frontier = orthonormal_range(creation_images(f, frontier), tol.rank);
    if (frontier.cols() == 0) break;
    Mat joined(f.dim(), acc.cols() + frontier.cols());
    joined << acc, frontier;
    acc = orthonormal_range(joined, tol.rank);
  }
  return Subspace{acc};
}

Subspace shift_subspace(const GradedSpace& f, const Subspace& m, const Tolerances& tol) {
  for (const Mat& s : f.sigma_basis()) {
    Mat img = s * m.basis;
    double leak = m.dim() == 0 ? 0.0 : spectral_norm(img - m.basis * (m.basis.adjoint() * img));
    require(leak <= tol.inv * (1.0 + spectral_norm(s)), Err::NotInvariant,
            "shift_subspace: input not sigma(M)-invariant");
  }
  if (m.dim() == 0) return Subspace{Mat(f.dim(), 0)};
  return Subspace{orthonormal_range(creation_images(f, m.basis), tol.rank)};
}

WanderingData wandering_vector(const GradedSpace& f, const Vec& g, const Tolerances& tol) {
  WanderingData wd;
  wd.cyclic = cyclic_subspace(f, g, tol);
  Subspace shifted = shift_subspace(f, wd.cyclic, tol);
  wd.wandering.basis = orthogonal_complement_within(wd.cyclic.basis, shifted.basis, tol.rank);
  wd.g0 = wd.wandering.basis * (wd.wandering.basis.adjoint() * g);
  require(wd.g0.norm() > 1e-13, Err::ZeroVector,
          "wandering projection of a nonzero vector vanished");
  // span sigma(M) g0 must reproduce the wandering subspace
  Mat orbit = sigma_orbit(f, wd.g0, tol.rank);
  bool ok = orbit.cols() == wd.wandering.basis.cols() &&
            subspace_distance(orbit, wd.wandering.basis) <= 1e-8;
  require(ok, Err::LemmaViolation, "sigma(M) g0 does not span the wandering subspace");
  wd.top_degree = top_degree_of_basis(f, wd.wandering.basis);
  return wd;
}

DensityFunctional tau_density(const GradedSpace& f, const Vec& g0, const Tolerances& tol) {
  const Algebra& m = *f.algebra();
  DensityFunctional tau;
  tau.algebra = f.algebra();
  for (int k = 0; k < m.num_blocks(); ++k)
    tau.d.push_back(Mat::Zero(m.block_size(k), m.block_size(k)));
  const auto& sb = f.sigma_basis();
  for (int p = 0; p < m.dim(); ++p) {
    int k, i, j;
    m.basis_label(p, k, i, j);
    // tau(E_ij) = tr(D_k E_ij) = (D_k)_{ji}
    tau.d[k](j, i) = (sb[p] * g0).dot(g0);
  }
  double top = 1e-300;
  for (const Mat& dk : tau.d) {
    Eigen::SelfAdjointEigenSolver<Mat> es((dk + dk.adjoint()) / 2.0);
    if (es.eigenvalues().size())
      top = std::max(top, es.eigenvalues()(es.eigenvalues().size() - 1));
  }
  for (const Mat& dk : tau.d) {
    double herm = (dk - dk.adjoint()).norm();
    require(herm <= 1e-9 * std::max(1.0, top), Err::NotPSD, "density block not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((dk + dk.adjoint()) / 2.0);
    if (es.eigenvalues().size())
      require(es.eigenvalues()(0) >= -tol.rank * top, Err::NotPSD,
              "density block not positive semidefinite");
  }
  return tau;
}

GnsData gns_vector(const DensityFunctional& tau, const ConcreteAction& pi,
                   const GnsPlacement& place, const FactorOptions& opts) {
  const Algebra& m = *tau.algebra;
  require(int(place.first_copy.size()) == m.num_blocks(), Err::DimensionMismatch,
          "one placement isometry per block");
  struct Slot {
    double lambda;
    int block;
    int idx;
    Vec v;
  };
  std::vector<Slot> slots;
  double top = 1e-300;
  std::vector<Eigen::SelfAdjointEigenSolver<Mat>> eigs;
  for (int k = 0; k < m.num_blocks(); ++k) {
    eigs.emplace_back(Mat((tau.d[k] + tau.d[k].adjoint()) / 2.0));
    for (int j = 0; j < eigs[k].eigenvalues().size(); ++j)
      top = std::max(top, eigs[k].eigenvalues()(j));
  }
  for (int k = 0; k < m.num_blocks(); ++k) {
    for (int j = 0; j < eigs[k].eigenvalues().size(); ++j) {
      double lam = eigs[k].eigenvalues()(j);
      if (lam > opts.tol.rank * top) {
        Vec v = eigs[k].eigenvectors().col(j);
        phase_normalize_column(v);
        slots.push_back({lam, k, j, v});
      }
    }
  }
  std::sort(slots.begin(), slots.end(), [&](const Slot& a, const Slot& b) {
    bool less;
    if (a.lambda != b.lambda)
      less = a.lambda > b.lambda;
    else if (a.block != b.block)
      less = a.block < b.block;
    else
      less = a.idx < b.idx;
    return opts.permuted_tie_break ? !less : less;
  });

  GnsData out;
  out.slots = int(slots.size());
  const int dh = place.dim_h;
  out.pi_hat = ampliate_concrete(pi, std::max(out.slots, 1));
  out.h_tau = Vec::Zero(Eigen::Index(std::max(out.slots, 1)) * dh);
  for (int s = 0; s < out.slots; ++s)
    out.h_tau.segment(Eigen::Index(s) * dh, dh) =
        std::sqrt(slots[s].lambda) * (place.first_copy[slots[s].block] * slots[s].v);
  if (out.slots == 0) {
    out.k_basis = Mat(dh, 0);
    out.mu = compress_action(out.pi_hat, out.k_basis, 1e-8);
    return out;
  }
  Mat orbit(out.pi_hat.space_dim(), m.dim());
  for (int p = 0; p < m.dim(); ++p) orbit.col(p) = out.pi_hat.mats[p] * out.h_tau;
  out.k_basis = orthonormal_range(orbit, opts.tol.rank);
  out.mu = compress_action(out.pi_hat, out.k_basis, 1e-8);
  return out;
}

InnerData build_inner_operator(const GradedSpacePtr& f, const GnsData& gns, const Mat& w0,
                               int d0, const FactorOptions& opts) {
  InnerData in;
  in.gns = gns;
  in.w0 = w0;
  in.d0 = d0;
  const int n_dom = std::max(0, f->trunc() - d0);
  in.dom = build_fock(f->chain(), gns.mu, n_dom);
  const GradedSpace& dom = *in.dom;
  const int kk = int(gns.k_basis.cols());
  in.w = Mat::Zero(f->dim(), dom.dim());
  if (kk == 0) return in;
  std::vector<Vec> z(kk);
  for (int j = 0; j < kk; ++j) z[j] = w0 * gns.k_basis.col(j);
  for (int k = 0; k <= n_dom; ++k) {
    const int rk = f->chain()->power_dim(k);
    Mat elem(f->dim(), Eigen::Index(rk) * kk);
    for (int a = 0; a < rk; ++a)
      for (int j = 0; j < kk; ++j)
        elem.col(Eigen::Index(a) * kk + j) = f->apply_generalized_creation(k, a, z[j]);
    in.w.middleCols(dom.offset(k), dom.degree_dim(k)) = elem * dom.degree(k).bwd;
  }
  return in;
}

namespace {

void add_inner_checks(ResidualTable& t, const GradedSpace& f, const InnerData& in,
                      const Mat& range_proj) {
  const GradedSpace& dom = *in.dom;
  const int nd = dom.dim();
  t.add("inner-isometry", nd == 0 ? 0.0
                                  : spectral_norm(Mat(in.w.adjoint() * in.w) -
                                                  Mat::Identity(nd, nd)),
        1e-8);
  t.add("inner-final-subspace", spectral_norm(Mat(in.w * in.w.adjoint()) - range_proj), 1e-8);
  t.add("w0-partial-isometry", (in.w0 * in.w0.adjoint() * in.w0 - in.w0).norm(), 1e-9);
  // generator pairing: creations then left actions, same order on both sides
  const auto& gd = dom.generators();
  const auto& gf = f.generators();
  double worst = 0.0;
  for (size_t i = 0; i < gd.size(); ++i) {
    int arena = gd[i].arena;
    if (arena < 0) continue;
    worst = std::max(worst, intertwining_residual(in.w, gd[i], gf[i], arena));
  }
  t.add("inner-intertwining", worst, 1e-8);
}

}  // namespace

InnerData inner_from_vector(const GradedSpacePtr& f, const GnsPlacement& place, const Vec& g,
                            const FactorOptions& opts) {
  WanderingData wd = wandering_vector(*f, g, opts.tol);
  DensityFunctional tau = tau_density(*f, wd.g0, opts.tol);
  GnsData gns = gns_vector(tau, f->action(), place, opts);
  Mat w0 = w0_from_gns(*f, gns, wd.g0, opts);
  return build_inner_operator(f, gns, w0, wd.top_degree, opts);
}

VectorFactorization factor_vector(const GradedSpacePtr& f, const GnsPlacement& place,
                                  const Vec& g, const FactorOptions& opts) {
  require(g.norm() > 1e-13, Err::ZeroVector, "factor_vector of the zero vector");
  VectorFactorization vf;
  vf.space = f;
  vf.g = g;
  vf.wd = wandering_vector(*f, g, opts.tol);
  vf.tau = tau_density(*f, vf.wd.g0, opts.tol);
  GnsData gns = gns_vector(vf.tau, f->action(), place, opts);
  Mat w0 = w0_from_gns(*f, gns, vf.wd.g0, opts);
  vf.inner = build_inner_operator(f, gns, w0, vf.wd.top_degree, opts);
  vf.y = vf.inner.w.adjoint() * g;

  // cross checks
  double gn = g.norm();
  vf.checks.add("reconstruction", (g - vf.inner.w * vf.y).norm() / gn, 1e-8);
  add_inner_checks(vf.checks, *f, vf.inner, vf.wd.cyclic.proj());
  // GNS realizes tau
  double tres = 0.0;
  for (int p = 0; p < f->algebra()->dim(); ++p) {
    Cx lhs = vf.tau.value(f->algebra()->basis_element(p));
    Cx rhs = (vf.inner.gns.pi_hat.mats[p] * vf.inner.gns.h_tau).dot(vf.inner.gns.h_tau);
    tres = std::max(tres, std::abs(lhs - rhs));
  }
  vf.checks.add("gns-realizes-tau", tres, 1e-10 * std::max(1.0, vf.tau.total()));
  vf.checks.add("wandering-span-dimension",
                std::abs(double(vf.wd.wandering.dim()) -
                         double(sigma_orbit(*f, vf.wd.g0, opts.tol.rank).cols())),
                0.5);
  int budget = std::max(0, vf.inner.dom->trunc() - vf.inner.dom->top_degree(vf.y));
  bool outer = outerness_ranks(*vf.inner.dom, vf.y, budget, opts.tol.rank);
  vf.checks.add("outer-part-orbit-ranks", outer ? 0.0 : 1.0, 0.5);
  return vf;
}

bool outerness_ranks(const GradedSpace& dom, const Vec& y, int budget_max, double reltol,
                     std::vector<std::pair<int, int>>* got_want) {
  bool ok = true;
  for (int b = 0; b <= budget_max; ++b) {
    Mat cut = degree_cutoff(dom, b);
    Mat layer = sigma_orbit(dom, y, reltol);
    Mat acc = orthonormal_range(cut * layer, reltol);
    for (int k = 1; k <= b; ++k) {
      layer = orthonormal_range(creation_images(dom, layer), reltol);
      if (layer.cols() == 0) break;
      Mat cutl = cut * layer;
      Mat joined(dom.dim(), acc.cols() + cutl.cols());
      joined << acc, cutl;
      acc = orthonormal_range(joined, reltol);
    }
    int want = 0;
    for (int n = 0; n <= std::min(b, dom.trunc()); ++n) want += dom.degree_dim(n);
    int got = int(acc.cols());
    if (got_want) got_want->push_back({got, want});
    ok = ok && (got == want);
  }
  return ok;
}

UniquenessData uniqueness_unitary(const VectorFactorization& f1, const VectorFactorization& f2,
                                  const Tolerances& tol) {
  require(f1.space->dim() == f2.space->dim(), Err::MismatchedInput,
          "factorizations live on different spaces");
  require((f1.g - f2.g).norm() <= 1e-10 * std::max(1.0, f1.g.norm()), Err::MismatchedInput,
          "factorizations are of different vectors");
  require(f1.inner.dom->trunc() == f2.inner.dom->trunc(), Err::MismatchedInput,
          "domains have different truncation");
  UniquenessData u;
  u.u = f2.inner.w.adjoint() * f1.inner.w;
  const int n1 = f1.inner.dom->dim();
  const int n2 = f2.inner.dom->dim();
  u.checks.add("uniqueness-unitary-left",
               spectral_norm(Mat(u.u.adjoint() * u.u) - Mat::Identity(n1, n1)), 1e-8);
  u.checks.add("uniqueness-unitary-right",
               spectral_norm(Mat(u.u * u.u.adjoint()) - Mat::Identity(n2, n2)), 1e-8);
  u.checks.add("uniqueness-maps-outer-parts", (u.u * f1.y - f2.y).norm(), 1e-8);
  const auto& g1 = f1.inner.dom->generators();
  const auto& g2 = f2.inner.dom->generators();
  double worst = 0.0;
  for (size_t i = 0; i < g1.size(); ++i) {
    int arena = std::min(g1[i].arena, g2[i].arena);
    if (arena < 0) continue;
    worst = std::max(worst, intertwining_residual(u.u, g1[i], g2[i], arena));
  }
  u.checks.add("uniqueness-intertwining", worst, 1e-8);
  return u;
}

OperatorFactorization factor_commutant(const GradedSpacePtr& f, const GnsPlacement& place,
                                       const GradedOperator& s, const FactorOptions& opts) {
  require(spectral_norm(s.mat) > 1e-13, Err::ZeroVector, "factor_commutant of zero");
  OperatorFactorization of;
  of.space = f;
  double snorm = spectral_norm(s.mat);
  // membership in the commutant of the realized generators
  double comm = 0.0;
  for (const auto& gen : f->generators())
    comm = std::max(comm, spectral_norm(s.mat * gen.mat - gen.mat * s.mat));
  require(comm <= opts.tol.inv * (1.0 + snorm), Err::NotInCommutant,
          "operator does not commute with the realized generators");
  auto [lo, hi] = detect_shifts(*f, *f, s.mat);
  require(lo >= 0, Err::NotInCommutant, "commutant elements cannot lower degree");
  of.d_s = hi;

  of.range.basis = orthonormal_range(s.mat, opts.tol.rank);
  Subspace shifted = shift_subspace(*f, of.range, opts.tol);
  of.wandering.basis =
      orthogonal_complement_within(of.range.basis, shifted.basis, opts.tol.rank);
  const int d0 = top_degree_of_basis(*f, of.wandering.basis);
  of.pieces = cyclic_decomposition(f->sigma_basis(), of.wandering.basis, opts.tol,
                                   opts.permuted_tie_break);

  std::vector<Vec> g0s;
  for (const auto& piece : of.pieces) {
    DensityFunctional tau = tau_density(*f, piece.vector, opts.tol);
    of.piece_gns.push_back(gns_vector(tau, f->action(), place, opts));
    g0s.push_back(piece.vector);
  }
  Mat w0;
  GnsData stacked = stack_gns(*f, of.piece_gns, g0s, opts, w0);
  of.inner = build_inner_operator(f, stacked, w0, d0, opts);
  of.y = of.inner.w.adjoint() * s.mat;

  // certification: the wandering pieces must rebuild the whole range
  double recon = spectral_norm(Mat(of.inner.w * of.inner.w.adjoint()) - of.range.proj());
  if (recon > 1e-8)
    fail(Err::TruncationInsufficient,
         "wandering subspace does not rebuild the range at this truncation; raise it");
  of.checks.add("wold-reconstruction", recon, 1e-8);
  of.checks.add("reconstruction", spectral_norm(s.mat - of.inner.w * of.y) / snorm, 1e-8);
  add_inner_checks(of.checks, *f, of.inner, of.range.proj());

  const GradedSpace& dom = *of.inner.dom;
  const auto& gd = dom.generators();
  const auto& gf = f->generators();
  double worst = 0.0;
  for (size_t i = 0; i < gd.size(); ++i) {
    int arena = gd[i].arena - of.d_s;
    if (arena < 0) continue;
    worst = std::max(worst, intertwining_residual(of.y, gf[i], gd[i], arena));
  }
  of.checks.add("outer-intertwining", worst, 1e-8);

  // outer operator fills every budget
  bool outer_ok = true;
  int budget = std::min(dom.trunc(), f->trunc() - of.d_s);
  for (int b = 0; b <= budget; ++b) {
    int want = 0;
    for (int n = 0; n <= std::min(b, dom.trunc()); ++n) want += dom.degree_dim(n);
    int got = numeric_rank(degree_cutoff(dom, b) * of.y, opts.tol.rank);
    outer_ok = outer_ok && (got == want);
  }
  of.checks.add("outer-range-ranks", outer_ok ? 0.0 : 1.0, 0.5);
  return of;
}

BeurlingDecomposition beurling_decompose(const GradedSpacePtr& f, const GnsPlacement& place,
                                         const Subspace& m, const FactorOptions& opts) {
  BeurlingDecomposition bd;
  bd.subspace = m;
  for (const auto& gen : f->generators()) {
    Mat img = gen.mat * m.basis;
    double leak = m.dim() == 0 ? 0.0 : spectral_norm(img - m.basis * (m.basis.adjoint() * img));
    require(leak <= opts.tol.inv * (1.0 + spectral_norm(gen.mat)), Err::NotInvariant,
            "beurling_decompose: subspace not invariant under the generators");
  }
  Subspace shifted = shift_subspace(*f, m, opts.tol);
  bd.wandering.basis = orthogonal_complement_within(m.basis, shifted.basis, opts.tol.rank);
  bd.pieces = cyclic_decomposition(f->sigma_basis(), bd.wandering.basis, opts.tol,
                                   opts.permuted_tie_break);

  Mat total = Mat::Zero(f->dim(), f->dim());
  for (const auto& piece : bd.pieces) {
    DensityFunctional tau = tau_density(*f, piece.vector, opts.tol);
    GnsData gns = gns_vector(tau, f->action(), place, opts);
    Mat w0 = w0_from_gns(*f, gns, piece.vector, opts);
    int d0 = top_degree_of_basis(*f, piece.basis);
    InnerData in = build_inner_operator(f, gns, w0, d0, opts);
    total += in.w * in.w.adjoint();
    bd.inners.push_back(std::move(in));
  }
  double ortho = 0.0;
  for (size_t i = 0; i < bd.inners.size(); ++i)
    for (size_t j = i + 1; j < bd.inners.size(); ++j)
      ortho = std::max(ortho, spectral_norm(bd.inners[i].w.adjoint() * bd.inners[j].w));
  bd.checks.add("ranges-pairwise-orthogonal", ortho, 1e-9);
  double recon = spectral_norm(total - m.proj());
  if (recon > 1e-8)
    fail(Err::TruncationInsufficient,
         "inner ranges do not rebuild the invariant subspace at this truncation");
  bd.checks.add("ranges-rebuild-subspace", recon, 1e-8);
  double iso = 0.0;
  for (const auto& in : bd.inners) {
    if (in.dom->dim() == 0) continue;
    iso = std::max(iso, spectral_norm(Mat(in.w.adjoint() * in.w) -
                                      Mat::Identity(in.dom->dim(), in.dom->dim())));
  }
  bd.checks.add("pieces-isometric", iso, 1e-8);
  return bd;
}

double intertwining_residual(const Mat& a, const GradedOperator& x_dom,
                             const GradedOperator& x_cod, int arena) {
  Mat cut = degree_cutoff(*x_dom.dom, arena);
  return spectral_norm((a * x_dom.mat - x_cod.mat * a) * cut);
}

}  // namespace nch
