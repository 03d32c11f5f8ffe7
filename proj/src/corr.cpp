#include "nchardy/corr.hpp"

#include <Eigen/Eigenvalues>

namespace nch {

AlgElement Correspondence::inner(const Vec& xi, const Vec& eta) const {
  require(xi.size() == dim && eta.size() == dim, Err::DimensionMismatch, "inner: vector size");
  Vec c = Vec::Zero(algebra->dim());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Cx w = std::conj(xi(i)) * eta(j);
      if (w != Cx(0.0)) c += w * inner_coords.row(i * dim + j).transpose();
    }
  return algebra->from_coords(c);
}

Mat Correspondence::right_mat(const AlgElement& a) const {
  Vec c = algebra->coords(a);
  Mat m = Mat::Zero(dim, dim);
  for (int p = 0; p < algebra->dim(); ++p)
    if (c(p) != Cx(0.0)) m += c(p) * right[p];
  return m;
}

Mat Correspondence::left_mat(const AlgElement& a) const {
  Vec c = algebra->coords(a);
  Mat m = Mat::Zero(dim, dim);
  for (int p = 0; p < algebra->dim(); ++p)
    if (c(p) != Cx(0.0)) m += c(p) * left[p];
  return m;
}

double Correspondence::vector_norm(const Vec& xi) const {
  return std::sqrt(std::max(0.0, algebra->norm(inner(xi, xi))));
}

void ValidationReport::add(const std::string& axiom, double residual, double tol) {
  AxiomCheck c{axiom, residual, tol, residual <= tol};
  pass = pass && c.pass;
  checks.push_back(c);
}

namespace {

// scalar Gram of the module inner product: S[(i,j)] block = trace pairing
Mat module_gram_as_matrix(const Correspondence& e) {
  // assembles <e_i,e_j> as a (d*dimM-ish) block matrix is awkward; for the
  // positivity axiom we use the block matrix [<e_i,e_j>] acting on C^{d*n}
  // per algebra block and take its minimal eigenvalue over blocks.
  return Mat();
}

}  // namespace

ValidationReport validate_correspondence(const Correspondence& e, const Tolerances& tol) {
  const Algebra& m = *e.algebra;
  require(int(e.right.size()) == m.dim() && int(e.left.size()) == m.dim(),
          Err::DimensionMismatch, "structure tensors per algebra basis element");
  require(e.inner_coords.rows() == Eigen::Index(e.dim) * e.dim &&
              e.inner_coords.cols() == m.dim(),
          Err::DimensionMismatch, "inner product tensor shape");

  ValidationReport rep;
  auto basisvec = [&](int i) {
    Vec v = Vec::Zero(e.dim);
    v(i) = 1.0;
    return v;
  };

  // <xi, eta a> = <xi, eta> a
  double r1 = 0.0;
  for (int p = 0; p < m.dim(); ++p) {
    AlgElement a = m.basis_element(p);
    Mat ra = e.right[p];
    for (int i = 0; i < e.dim; ++i)
      for (int j = 0; j < e.dim; ++j) {
        AlgElement lhs = e.inner(basisvec(i), ra.col(j));
        AlgElement rhs = m.mul(e.inner(basisvec(i), basisvec(j)), a);
        double d = 0.0;
        for (size_t k = 0; k < lhs.blk.size(); ++k) d += (lhs.blk[k] - rhs.blk[k]).norm();
        r1 = std::max(r1, d);
      }
  }
  rep.add("inner-right-linearity", r1, tol.alg);

  // <xi,eta>^* = <eta,xi>
  double r2 = 0.0;
  for (int i = 0; i < e.dim; ++i)
    for (int j = 0; j < e.dim; ++j) {
      AlgElement lhs = m.star(e.inner(basisvec(i), basisvec(j)));
      AlgElement rhs = e.inner(basisvec(j), basisvec(i));
      double d = 0.0;
      for (size_t k = 0; k < lhs.blk.size(); ++k) d += (lhs.blk[k] - rhs.blk[k]).norm();
      r2 = std::max(r2, d);
    }
  rep.add("inner-hermitian", r2, tol.alg);

  // <phi(a) xi, eta> = <xi, phi(a*) eta>  (adjointable left action)
  double r3 = 0.0;
  for (int p = 0; p < m.dim(); ++p) {
    Mat la = e.left[p];
    Mat las = e.left_mat(m.star(m.basis_element(p)));
    for (int i = 0; i < e.dim; ++i)
      for (int j = 0; j < e.dim; ++j) {
        AlgElement lhs = e.inner(la.col(i), basisvec(j));
        AlgElement rhs = e.inner(basisvec(i), las.col(j));
        double d = 0.0;
        for (size_t k = 0; k < lhs.blk.size(); ++k) d += (lhs.blk[k] - rhs.blk[k]).norm();
        r3 = std::max(r3, d);
      }
  }
  rep.add("left-action-adjointable", r3, tol.alg);

  // phi is a unital *-homomorphism
  double rhom = 0.0;
  for (int p = 0; p < m.dim(); ++p)
    for (int q = 0; q < m.dim(); ++q) {
      Mat lhs = e.left[p] * e.left[q];
      Mat rhs = e.left_mat(m.mul(m.basis_element(p), m.basis_element(q)));
      rhom = std::max(rhom, (lhs - rhs).norm());
    }
  rep.add("left-action-multiplicative", rhom, tol.alg);
  double runit = (e.left_mat(m.unit()) - Mat::Identity(e.dim, e.dim)).norm();
  rep.add("left-action-unital", runit, tol.alg);
  double rright = (e.right_mat(m.unit()) - Mat::Identity(e.dim, e.dim)).norm();
  rep.add("right-action-unital", rright, tol.alg);
  double rrmul = 0.0;
  for (int p = 0; p < m.dim(); ++p)
    for (int q = 0; q < m.dim(); ++q) {
      Mat lhs = e.right_mat(m.mul(m.basis_element(p), m.basis_element(q)));
      Mat rhs = e.right[q] * e.right[p];  // (xi a) b ordering
      rrmul = std::max(rrmul, (lhs - rhs).norm());
    }
  rep.add("right-action-associative", rrmul, tol.alg);

  // positivity: the block matrix [<e_i,e_j>] over each algebra block is PSD
  double min_eig = 0.0;
  for (int k = 0; k < m.num_blocks(); ++k) {
    int n = m.block_size(k);
    Mat g(e.dim * n, e.dim * n);
    for (int i = 0; i < e.dim; ++i)
      for (int j = 0; j < e.dim; ++j) {
        AlgElement ip = e.inner(Vec::Unit(e.dim, i), Vec::Unit(e.dim, j));
        g.block(i * n, j * n, n, n) = ip.blk[k];
      }
    Eigen::SelfAdjointEigenSolver<Mat> es((g + g.adjoint()) / 2.0);
    double lo = es.eigenvalues()(0);
    double hi = std::max(1.0, es.eigenvalues()(es.eigenvalues().size() - 1));
    min_eig = std::min(min_eig, lo / hi);
  }
  rep.add("inner-positive", std::max(0.0, -min_eig), tol.rank);

  return rep;
}

Correspondence free_correspondence(int d) {
  require(d >= 1, Err::InvalidBlock, "free correspondence needs d >= 1");
  Correspondence e;
  e.algebra = make_algebra_ptr({1});
  e.dim = d;
  e.right = {Mat::Identity(d, d)};
  e.left = {Mat::Identity(d, d)};
  e.inner_coords = Mat::Zero(d * d, 1);
  for (int i = 0; i < d; ++i) e.inner_coords(i * d + i, 0) = 1.0;
  return e;
}

Correspondence graph_correspondence(int n_vertices,
                                    const std::vector<std::pair<int, int>>& edges) {
  require(n_vertices >= 1, Err::InvalidBlock, "graph needs vertices");
  Correspondence e;
  e.algebra = make_algebra_ptr(std::vector<int>(n_vertices, 1));
  e.dim = int(edges.size());
  for (auto [s, d] : edges)
    require(s >= 1 && s <= n_vertices && d >= 1 && d <= n_vertices, Err::InvalidEdge,
            "edge endpoints out of range (vertices are 1-based)");
  for (int v = 0; v < n_vertices; ++v) {
    Mat r = Mat::Zero(e.dim, e.dim), l = Mat::Zero(e.dim, e.dim);
    for (int t = 0; t < e.dim; ++t) {
      if (edges[t].first == v + 1) r(t, t) = 1.0;   // e * delta_src = e
      if (edges[t].second == v + 1) l(t, t) = 1.0;  // phi(delta_dst) e = e
    }
    e.right.push_back(r);
    e.left.push_back(l);
  }
  e.inner_coords = Mat::Zero(e.dim * e.dim, n_vertices);
  for (int t = 0; t < e.dim; ++t)
    e.inner_coords(t * e.dim + t, edges[t].first - 1) = 1.0;  // <e,e> = delta_src
  return e;
}

Correspondence unit_correspondence(AlgebraPtr alg) {
  Correspondence e;
  e.algebra = alg;
  e.dim = alg->dim();
  for (int p = 0; p < alg->dim(); ++p) {
    AlgElement a = alg->basis_element(p);
    e.right.push_back(alg->right_mult_matrix(a));
    e.left.push_back(alg->left_mult_matrix(a));
  }
  e.inner_coords = Mat::Zero(e.dim * e.dim, alg->dim());
  for (int i = 0; i < e.dim; ++i)
    for (int j = 0; j < e.dim; ++j) {
      AlgElement ip = alg->mul(alg->star(alg->basis_element(i)), alg->basis_element(j));
      e.inner_coords.row(i * e.dim + j) = alg->coords(ip).transpose();
    }
  return e;
}

Correspondence block_hom_correspondence(AlgebraPtr alg,
                                        const std::vector<std::tuple<int, int, int>>& parts) {
  // Each part (k, l, c): c copies of the n_k x n_l matrix bimodule; the left
  // action hits block k, the right action block l, and <x,y> = x^* y lands in
  // block l.
  Correspondence e;
  e.algebra = alg;
  int d = 0;
  for (auto [k, l, c] : parts) d += alg->block_size(k) * alg->block_size(l) * c;
  e.dim = d;
  e.inner_coords = Mat::Zero(d * d, alg->dim());
  for (int p = 0; p < alg->dim(); ++p) {
    e.right.push_back(Mat::Zero(d, d));
    e.left.push_back(Mat::Zero(d, d));
  }
  // basis layout: per part, per copy, row-major matrix entries
  int off = 0;
  for (auto [k, l, c] : parts) {
    int nk = alg->block_size(k), nl = alg->block_size(l);
    for (int copy = 0; copy < c; ++copy) {
      auto idx = [&](int i, int j) { return off + copy * nk * nl + i * nl + j; };
      for (int p = 0; p < alg->dim(); ++p) {
        int bk, bi, bj;
        alg->basis_label(p, bk, bi, bj);
        // right action by E^{l}_{bi bj}: (x B)_{i j} = x_{i bi} delta... x B, B in block l
        if (bk == l) {
          for (int i = 0; i < nk; ++i)
            for (int j = 0; j < nl; ++j)
              if (j == bi) {
                // column of x that multiplies into position (i, bj)
                e.right[p](idx(i, bj), idx(i, j)) += 1.0;
              }
        }
        // left action by block k: (A x)_{i j} = sum_s A_{i s} x_{s j}
        if (bk == k) {
          for (int j = 0; j < nl; ++j) e.left[p](idx(bi, j), idx(bj, j)) += 1.0;
        }
      }
      // inner product <x, y> = x^* y in block l: <E_{ij}, E_{st}> = delta_{is} E^l_{jt}
      for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nl; ++j)
          for (int t = 0; t < nl; ++t) {
            // coords of E^l_{jt} in the algebra
            AlgElement a = alg->zero();
            a.blk[l](j, t) = 1.0;
            e.inner_coords.row(idx(i, j) * d + idx(i, t)) += alg->coords(a).transpose();
          }
    }
    off += nk * nl * c;
  }
  return e;
}

TensorStep internal_tensor(const Correspondence& p, const Correspondence& q,
                           const Tolerances& tol) {
  require(p.algebra->same_structure(*q.algebra), Err::AlgebraMismatch,
          "internal tensor product needs a common base algebra");
  const Algebra& m = *p.algebra;
  const int dp = p.dim, dq = q.dim, de = dp * dq;

  // M-valued Gram of elementary tensors: <a (x) b, a' (x) b'> =
  // <b, phi_q(<a,a'>) b'>
  std::vector<Vec> gram_coords(size_t(de) * de);
  Mat scalar = Mat::Zero(de, de);
  for (int a = 0; a < dp; ++a)
    for (int a2 = 0; a2 < dp; ++a2) {
      AlgElement ipa = p.inner(Vec::Unit(dp, a), Vec::Unit(dp, a2));
      Mat phi = q.left_mat(ipa);
      for (int b = 0; b < dq; ++b)
        for (int b2 = 0; b2 < dq; ++b2) {
          AlgElement val = q.inner(Vec::Unit(dq, b), phi.col(b2));
          int r = a * dq + b, c = a2 * dq + b2;
          gram_coords[size_t(r) * de + c] = m.coords(val);
          scalar(r, c) = m.trace(val);
        }
    }

  Eigen::SelfAdjointEigenSolver<Mat> es((scalar + scalar.adjoint()) / 2.0);
  RVec ev = es.eigenvalues();
  double top = std::max(0.0, ev.size() ? ev(ev.size() - 1) : 0.0);
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > tol.rank * std::max(top, 1e-300)) keep.push_back(i);
  // descending eigenvalue order for a deterministic, well-conditioned basis
  std::reverse(keep.begin(), keep.end());
  const int dn = int(keep.size());

  Mat expand(de, dn);
  for (int c = 0; c < dn; ++c) expand.col(c) = es.eigenvectors().col(keep[c]);
  phase_normalize_columns(expand);
  // class of an elementary vector x: coords = Lambda^-1 V^* S x
  Mat project(dn, de);
  for (int c = 0; c < dn; ++c)
    project.row(c) = (expand.col(c).adjoint() * scalar) / ev(keep[c]);

  TensorStep st;
  st.expand = expand;
  st.project = project;
  Correspondence r;
  r.algebra = p.algebra;
  r.dim = dn;
  // inner product on the quotient basis
  r.inner_coords = Mat::Zero(dn * dn, m.dim());
  for (int c = 0; c < dn; ++c)
    for (int c2 = 0; c2 < dn; ++c2) {
      Vec acc = Vec::Zero(m.dim());
      for (int x = 0; x < de; ++x)
        for (int y = 0; y < de; ++y) {
          Cx w = std::conj(expand(x, c)) * expand(y, c2);
          if (w != Cx(0.0)) acc += w * gram_coords[size_t(x) * de + y];
        }
      r.inner_coords.row(c * dn + c2) = acc.transpose();
    }
  // left action phi(a) (x) I and right action I (x) R(a), descended
  Mat iq = Mat::Identity(dq, dq);
  Mat ip = Mat::Identity(dp, dp);
  for (int pb = 0; pb < m.dim(); ++pb) {
    r.left.push_back(project * kron(p.left[pb], iq) * expand);
    r.right.push_back(project * kron(ip, q.right[pb]) * expand);
  }
  st.product = std::move(r);
  return st;
}

CorrChain::CorrChain(Correspondence e, Tolerances tol) : e_(std::move(e)), tol_(tol) {
  pow_.push_back(unit_correspondence(e_.algebra));
  pow_.push_back(e_);
  expand_.push_back(Mat());  // unused slot for k=0
  project_.push_back(Mat());
  expand_.push_back(Mat::Identity(e_.dim, e_.dim));
  project_.push_back(Mat::Identity(e_.dim, e_.dim));
}

void CorrChain::ensure(int k) {
  require(k >= 0, Err::DegreeOverflow, "negative tensor power");
  while (int(pow_.size()) <= k) {
    TensorStep st = internal_tensor(pow_.back(), e_, tol_);
    pow_.push_back(st.product);
    expand_.push_back(st.expand);
    project_.push_back(st.project);
  }
}

const Correspondence& CorrChain::power(int k) {
  ensure(k);
  return pow_[k];
}

const Mat& CorrChain::expand(int k) {
  ensure(k);
  return expand_[k];
}

const Mat& CorrChain::project(int k) {
  ensure(k);
  return project_[k];
}

Mat CorrChain::comb(int a, int b) {
  require(a >= 0 && b >= 0, Err::DegreeOverflow, "comb indices");
  auto it = comb_.find({a, b});
  if (it != comb_.end()) return it->second;
  ensure(a + b);
  Mat out;
  if (b == 0) {
    // u (x) m  ->  u * m
    const Correspondence& pa = pow_[a];
    const int dm = algebra()->dim();
    out = Mat::Zero(pa.dim, pa.dim * dm);
    for (int al = 0; al < pa.dim; ++al)
      for (int q = 0; q < dm; ++q) out.col(al * dm + q) = pa.right[q].col(al);
  } else if (a == 0) {
    // m (x) w  ->  phi_b(m) w
    const Correspondence& pb = pow_[b];
    const int dm = algebra()->dim();
    out = Mat::Zero(pb.dim, dm * pb.dim);
    for (int q = 0; q < dm; ++q)
      for (int be = 0; be < pb.dim; ++be) out.col(q * pb.dim + be) = pb.left[q].col(be);
  } else if (b == 1) {
    out = project(a + 1);
  } else {
    Mat inner = comb(a, b - 1);
    // (I_{r_a} (x) expand_b) then (comb(a,b-1) (x) I_d) then project_{a+b}
    const int ra = pow_[a].dim;
    out = project(a + b) * kron(inner, Mat::Identity(e_.dim, e_.dim)) *
          kron(Mat::Identity(ra, ra), expand(b));
  }
  comb_[{a, b}] = out;
  return out;
}

Mat CorrChain::word_expand(int k) {
  ensure(k);
  while (int(wexp_.size()) <= k) {
    int j = int(wexp_.size());
    if (j == 0)
      wexp_.push_back(Mat::Identity(algebra()->dim(), algebra()->dim()));
    else if (j == 1)
      wexp_.push_back(Mat::Identity(e_.dim, e_.dim));
    else
      wexp_.push_back(kron(wexp_[j - 1], Mat::Identity(e_.dim, e_.dim)) * expand(j));
  }
  return wexp_[k];
}

Mat CorrChain::word_project(int k) {
  ensure(k);
  while (int(wproj_.size()) <= k) {
    int j = int(wproj_.size());
    if (j == 0)
      wproj_.push_back(Mat::Identity(algebra()->dim(), algebra()->dim()));
    else if (j == 1)
      wproj_.push_back(Mat::Identity(e_.dim, e_.dim));
    else
      wproj_.push_back(project(j) * kron(wproj_[j - 1], Mat::Identity(e_.dim, e_.dim)));
  }
  return wproj_[k];
}

namespace {

Mat scalar_gram(const Correspondence& p, const ConcreteAction& a) {
  const int dp = p.dim, dk = a.space_dim();
  Mat s(dp * dk, dp * dk);
  for (int b = 0; b < dp; ++b)
    for (int c = 0; c < dp; ++c) {
      AlgElement ip = p.inner(Vec::Unit(dp, b), Vec::Unit(dp, c));
      s.block(b * dk, c * dk, dk, dk) = a.apply(ip);
    }
  return (s + Mat(s.adjoint())) / 2.0;
}

}  // namespace

BalancedSpace balanced_tensor(const Correspondence& p, const ConcreteAction& a,
                              const Tolerances& tol) {
  require(p.algebra->same_structure(*a.algebra), Err::AlgebraMismatch,
          "balanced tensor: base algebra mismatch");
  const int dk = a.space_dim();
  Mat s = scalar_gram(p, a);
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  RVec ev = es.eigenvalues();
  double top = ev.size() ? std::max(0.0, ev(ev.size() - 1)) : 0.0;
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > tol.rank * std::max(top, 1e-300)) keep.push_back(i);
  std::reverse(keep.begin(), keep.end());

  BalancedSpace b;
  b.elem_dim = p.dim * dk;
  b.dim = int(keep.size());
  b.fwd = Mat(b.dim, b.elem_dim);
  b.bwd = Mat(b.elem_dim, b.dim);
  for (int c = 0; c < b.dim; ++c) {
    Vec v = es.eigenvectors().col(keep[c]);
    phase_normalize_column(v);
    double rt = std::sqrt(ev(keep[c]));
    b.fwd.row(c) = rt * v.adjoint();
    b.bwd.col(c) = v / rt;
  }
  return b;
}

BalancedSpace balanced_degree_zero(const ConcreteAction& a) {
  const int dk = a.space_dim();
  const int dm = a.algebra->dim();
  BalancedSpace b;
  b.elem_dim = dm * dk;
  b.dim = dk;
  b.fwd = Mat(dk, b.elem_dim);
  for (int p = 0; p < dm; ++p) b.fwd.middleCols(p * dk, dk) = a.mats[p];
  Vec uc = a.algebra->unit_coords();
  b.bwd = Mat::Zero(b.elem_dim, dk);
  for (int p = 0; p < dm; ++p)
    if (uc(p) != Cx(0.0)) b.bwd.middleRows(p * dk, dk) = uc(p) * Mat::Identity(dk, dk);
  return b;
}

double balanced_gram_min_eigenvalue(const Correspondence& p, const ConcreteAction& a) {
  Mat s = scalar_gram(p, a);
  if (s.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  return es.eigenvalues()(0);
}

}  // namespace nch
