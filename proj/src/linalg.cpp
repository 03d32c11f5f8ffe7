#include "nchardy/linalg.hpp"

#include <Eigen/SVD>

namespace nch {

const char* err_name(Err e) {
  switch (e) {
    case Err::EmptyBlocks: return "EmptyBlocks";
    case Err::InvalidBlock: return "InvalidBlock";
    case Err::NotFaithful: return "NotFaithful";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotStarClosed: return "NotStarClosed";
    case Err::NotInvariant: return "NotInvariant";
    case Err::AlgebraMismatch: return "AlgebraMismatch";
    case Err::InvalidEdge: return "InvalidEdge";
    case Err::WrongCorrespondence: return "WrongCorrespondence";
    case Err::DegreeOverflow: return "DegreeOverflow";
    case Err::NotInCommutant: return "NotInCommutant";
    case Err::NotIntertwiner: return "NotIntertwiner";
    case Err::ZeroVector: return "ZeroVector";
    case Err::LemmaViolation: return "LemmaViolation";
    case Err::NotPSD: return "NotPSD";
    case Err::MismatchedInput: return "MismatchedInput";
    case Err::TruncationInsufficient: return "TruncationInsufficient";
    case Err::RootOnCircle: return "RootOnCircle";
    case Err::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

void phase_normalize_column(Eigen::Ref<Vec> col) {
  double maxmod = 0.0;
  for (Eigen::Index i = 0; i < col.size(); ++i) maxmod = std::max(maxmod, std::abs(col(i)));
  if (maxmod == 0.0) return;
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col(i)) >= maxmod * (1.0 - 1e-8)) {
      Cx ph = col(i) / std::abs(col(i));
      col *= std::conj(ph);
      return;
    }
  }
}

void phase_normalize_columns(Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) phase_normalize_column(m.col(j));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double spectral_norm(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

namespace {
Eigen::JacobiSVD<Mat> thin_svd(const Mat& m) {
  return Eigen::JacobiSVD<Mat>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}
}  // namespace

Mat orthonormal_range(const Mat& m, double reltol) {
  if (m.rows() == 0 || m.cols() == 0) return Mat(m.rows(), 0);
  auto svd = thin_svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Mat(m.rows(), 0);
  int r = 0;
  while (r < sv.size() && sv(r) > reltol * sv(0)) ++r;
  Mat u = svd.matrixU().leftCols(r);
  phase_normalize_columns(u);
  return u;
}

Mat null_space(const Mat& m, double reltol) {
  if (m.cols() == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    while (r < sv.size() && sv(r) > reltol * sv(0)) ++r;
  Mat v = svd.matrixV().rightCols(m.cols() - r);
  phase_normalize_columns(v);
  return v;
}

Mat pinv(const Mat& m, double reltol) {
  if (m.rows() == 0 || m.cols() == 0) return Mat(m.cols(), m.rows());
  auto svd = thin_svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Mat::Zero(m.cols(), m.rows());
  Vec inv = Vec::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > reltol * sv(0)) inv(i) = Cx(1.0 / sv(i), 0.0);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

int numeric_rank(const Mat& m, double reltol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto sv = m.jacobiSvd().singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  while (r < sv.size() && sv(r) > reltol * sv(0)) ++r;
  return r;
}

double subspace_distance(const Mat& u1, const Mat& u2) {
  if (u1.rows() != u2.rows()) fail(Err::DimensionMismatch, "subspace_distance: ambient mismatch");
  Mat p1 = projector(u1), p2 = projector(u2);
  return spectral_norm(p1 - p2);
}

double residual_outside(const Mat& basis, const Vec& v) {
  if (basis.cols() == 0) return v.norm();
  return (v - basis * (basis.adjoint() * v)).norm();
}

Mat projector(const Mat& basis) {
  if (basis.cols() == 0) return Mat::Zero(basis.rows(), basis.rows());
  return basis * basis.adjoint();
}

Mat orthogonal_complement_within(const Mat& a, const Mat& b, double reltol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Mat res = a;
  if (b.cols() > 0) res -= b * (b.adjoint() * a);
  return orthonormal_range(res, reltol);
}

}  // namespace nch
