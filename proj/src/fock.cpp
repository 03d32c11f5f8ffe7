#include "nchardy/fock.hpp"

namespace nch {

int PolyOperator::degree() const {
  int d = 0;
  for (const auto& [n, c] : terms) d = std::max(d, n);
  return d;
}

GradedSpace::GradedSpace(std::shared_ptr<CorrChain> chain, ConcreteAction act, int trunc)
    : chain_(std::move(chain)), act_(std::move(act)), trunc_(trunc) {
  require(trunc_ >= 0, Err::DegreeOverflow, "truncation degree must be >= 0");
  require(chain_->algebra()->same_structure(*act_.algebra), Err::AlgebraMismatch,
          "Fock space: correspondence and action share the base algebra");
  require(act_.is_unital(1e-8), Err::NotFaithful, "carrier action must be unital");
  deg_.push_back(balanced_degree_zero(act_));
  for (int n = 1; n <= trunc_; ++n)
    deg_.push_back(balanced_tensor(chain_->power(n), act_, chain_->tol()));
  offsets_.resize(trunc_ + 1);
  for (int n = 0; n <= trunc_; ++n) {
    offsets_[n] = dim_;
    dim_ += deg_[n].dim;
  }
}

Vec GradedSpace::component(const Vec& v, int n) const {
  return v.segment(offsets_[n], deg_[n].dim);
}

int GradedSpace::top_degree(const Vec& v, double tiny) const {
  int top = 0;
  for (int n = 0; n <= trunc_; ++n)
    if (component(v, n).norm() > tiny) top = n;
  return top;
}

Vec GradedSpace::embed_component(int n, const Vec& word_coords) const {
  require(n >= 0 && n <= trunc_, Err::DegreeOverflow, "component degree exceeds truncation");
  Vec out = Vec::Zero(dim_);
  if (n == 0) {
    require(word_coords.size() == carrier_dim(), Err::DimensionMismatch,
            "degree-0 payload is in carrier coordinates");
    out.segment(offsets_[0], deg_[0].dim) = word_coords;
    return out;
  }
  const int k = carrier_dim();
  Mat wp = chain_->word_project(n);
  require(word_coords.size() == wp.cols() * k, Err::DimensionMismatch,
          "degree payload must have d^n * dim(K) entries");
  Vec elem = kron(wp, Mat::Identity(k, k)) * word_coords;
  out.segment(offsets_[n], deg_[n].dim) = deg_[n].fwd * elem;
  return out;
}

Vec GradedSpace::extract_component(const Vec& v, int n) const {
  require(n >= 0 && n <= trunc_, Err::DegreeOverflow, "component degree exceeds truncation");
  if (n == 0) return component(v, 0);
  const int k = carrier_dim();
  Mat we = chain_->word_expand(n);
  return kron(we, Mat::Identity(k, k)) * (deg_[n].bwd * component(v, n));
}

const std::vector<Mat>& GradedSpace::sigma_basis() const {
  if (sigma_basis_.empty()) {
    for (int p = 0; p < algebra()->dim(); ++p)
      sigma_basis_.push_back(left_action(algebra()->basis_element(p)).mat);
  }
  return sigma_basis_;
}

Mat GradedSpace::sigma(const AlgElement& a) const {
  Vec c = algebra()->coords(a);
  Mat m = Mat::Zero(dim_, dim_);
  const auto& sb = sigma_basis();
  for (int p = 0; p < c.size(); ++p)
    if (c(p) != Cx(0.0)) m += c(p) * sb[p];
  return m;
}

const Mat& GradedSpace::raise_block(int k, int n) const {
  require(k >= 0 && n >= 0 && k + n <= trunc_, Err::DegreeOverflow, "raise_block degrees");
  auto it = raise_.find({k, n});
  if (it != raise_.end()) return it->second;
  const int kd = carrier_dim();
  Mat comb = chain_->comb(k, n);
  const int rk = chain_->power_dim(k);
  Mat out = deg_[k + n].fwd * kron(comb, Mat::Identity(kd, kd)) *
            kron(Mat::Identity(rk, rk), deg_[n].bwd);
  return raise_.emplace(std::make_pair(k, n), std::move(out)).first->second;
}

Vec GradedSpace::apply_generalized_creation(int k, int a, const Vec& z) const {
  Vec out = Vec::Zero(dim_);
  for (int n = 0; n + k <= trunc_; ++n) {
    Vec zn = component(z, n);
    if (zn.norm() == 0.0) continue;
    const Mat& rb = raise_block(k, n);
    out.segment(offsets_[k + n], deg_[k + n].dim) += rb.middleCols(a * deg_[n].dim, deg_[n].dim) * zn;
  }
  return out;
}

GradedOperator GradedSpace::creation(const Vec& xi) const {
  require(xi.size() == chain_->base().dim, Err::WrongCorrespondence,
          "creation coefficient lives in E");
  GradedOperator op;
  op.dom = op.cod = shared_from_this();
  op.mat = Mat::Zero(dim_, dim_);
  for (int n = 0; n + 1 <= trunc_; ++n) {
    const Mat& rb = raise_block(1, n);
    Mat block = Mat::Zero(deg_[n + 1].dim, deg_[n].dim);
    for (int i = 0; i < xi.size(); ++i)
      if (xi(i) != Cx(0.0)) block += xi(i) * rb.middleCols(i * deg_[n].dim, deg_[n].dim);
    op.mat.block(offsets_[n + 1], offsets_[n], deg_[n + 1].dim, deg_[n].dim) = block;
  }
  op.lo_shift = op.hi_shift = 1;
  op.arena = trunc_ - 1;
  return op;
}

GradedOperator GradedSpace::left_action(const AlgElement& a) const {
  GradedOperator op;
  op.dom = op.cod = shared_from_this();
  op.mat = Mat::Zero(dim_, dim_);
  const int kd = carrier_dim();
  for (int n = 0; n <= trunc_; ++n) {
    Mat phi = chain_->power(n).left_mat(a);
    op.mat.block(offsets_[n], offsets_[n], deg_[n].dim, deg_[n].dim) =
        deg_[n].fwd * kron(phi, Mat::Identity(kd, kd)) * deg_[n].bwd;
  }
  op.lo_shift = op.hi_shift = 0;
  op.arena = trunc_;
  return op;
}

GradedOperator GradedSpace::realize_poly(const PolyOperator& x) const {
  require(x.degree() <= trunc_, Err::DegreeOverflow,
          "polynomial degree exceeds the truncation");
  GradedOperator op;
  op.dom = op.cod = shared_from_this();
  op.mat = Mat::Zero(dim_, dim_);
  op.lo_shift = x.degree();
  op.hi_shift = 0;
  for (const auto& [n, coeff] : x.terms) {
    if (n == 0) {
      op.mat += left_action(algebra()->from_coords(coeff)).mat;
      op.hi_shift = std::max(op.hi_shift, 0);
      op.lo_shift = std::min(op.lo_shift, 0);
    } else {
      require(coeff.size() == chain_->power_dim(n), Err::DimensionMismatch,
              "coefficient size vs tensor power basis");
      for (int m = 0; m + n <= trunc_; ++m) {
        const Mat& rb = raise_block(n, m);
        Mat block = Mat::Zero(deg_[m + n].dim, deg_[m].dim);
        for (int a = 0; a < coeff.size(); ++a)
          if (coeff(a) != Cx(0.0)) block += coeff(a) * rb.middleCols(a * deg_[m].dim, deg_[m].dim);
        op.mat.block(offsets_[m + n], offsets_[m], deg_[m + n].dim, deg_[m].dim) += block;
      }
      op.hi_shift = std::max(op.hi_shift, n);
      op.lo_shift = std::min(op.lo_shift, n);
    }
  }
  if (x.terms.empty()) op.lo_shift = op.hi_shift = 0;
  op.arena = trunc_ - x.degree();
  return op;
}

GradedOperator GradedSpace::identity_op() const {
  GradedOperator op;
  op.dom = op.cod = shared_from_this();
  op.mat = Mat::Identity(dim_, dim_);
  op.lo_shift = op.hi_shift = 0;
  op.arena = trunc_;
  return op;
}

const std::vector<GradedOperator>& GradedSpace::generators() const {
  if (gens_.empty()) {
    for (int i = 0; i < chain_->base().dim; ++i)
      gens_.push_back(creation(Vec::Unit(chain_->base().dim, i)));
    for (int p = 0; p < algebra()->dim(); ++p)
      gens_.push_back(left_action(algebra()->basis_element(p)));
  }
  return gens_;
}

GradedSpacePtr build_fock(std::shared_ptr<CorrChain> chain, const ConcreteAction& act,
                          int trunc) {
  return std::make_shared<const GradedSpace>(std::move(chain), act, trunc);
}

GradedSpacePtr build_fock(const Correspondence& e, const Representation& rep, int trunc,
                          const Tolerances& tol) {
  require(rep.faithful(), Err::NotFaithful, "build_fock needs a faithful representation");
  require(e.algebra->same_structure(*rep.algebra()), Err::AlgebraMismatch,
          "correspondence and representation base algebra");
  auto chain = std::make_shared<CorrChain>(e, tol);
  return build_fock(chain, rep.action(), trunc);
}

GradedOperator compose(const GradedOperator& a, const GradedOperator& b) {
  require(a.dom.get() == b.cod.get(), Err::DimensionMismatch, "compose: spaces do not chain");
  GradedOperator op;
  op.dom = b.dom;
  op.cod = a.cod;
  op.mat = a.mat * b.mat;
  op.lo_shift = a.lo_shift + b.lo_shift;
  op.hi_shift = a.hi_shift + b.hi_shift;
  op.arena = std::min(b.arena, a.arena - b.hi_shift);
  return op;
}

GradedOperator adjoint_op(const GradedOperator& a) {
  GradedOperator op;
  op.dom = a.cod;
  op.cod = a.dom;
  op.mat = a.mat.adjoint();
  op.lo_shift = -a.hi_shift;
  op.hi_shift = -a.lo_shift;
  op.arena = a.cod->trunc();
  return op;
}

double shift_pattern_residual(const GradedOperator& op) {
  double r = 0.0;
  const GradedSpace& cod = *op.cod;
  const GradedSpace& dom = *op.dom;
  for (int m = 0; m <= cod.trunc(); ++m)
    for (int n = 0; n <= dom.trunc(); ++n) {
      int s = m - n;
      if (s >= op.lo_shift && s <= op.hi_shift) continue;
      r = std::max(r, op.mat.block(cod.offset(m), dom.offset(n), cod.degree_dim(m),
                                   dom.degree_dim(n))
                          .norm());
    }
  return r;
}

std::pair<int, int> detect_shifts(const GradedSpace& cod, const GradedSpace& dom, const Mat& m,
                                  double tiny) {
  int lo = 0, hi = 0;
  bool seen = false;
  for (int a = 0; a <= cod.trunc(); ++a)
    for (int b = 0; b <= dom.trunc(); ++b) {
      if (m.block(cod.offset(a), dom.offset(b), cod.degree_dim(a), dom.degree_dim(b)).norm() >
          tiny) {
        int s = a - b;
        if (!seen) {
          lo = hi = s;
          seen = true;
        } else {
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
      }
    }
  return {lo, hi};
}

}  // namespace nch
