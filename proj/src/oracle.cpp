#include "nchardy/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace nch {

int PolySeries::degree() const {
  for (int k = int(coeff.size()) - 1; k >= 0; --k)
    if (std::abs(coeff(k)) > 0.0) return k;
  return 0;
}

Cx PolySeries::eval(Cx z) const {
  Cx v = 0.0;
  for (int k = int(coeff.size()) - 1; k >= 0; --k) v = v * z + coeff(k);
  return v;
}

std::vector<Cx> PolySeries::roots() const {
  int d = degree();
  std::vector<Cx> out;
  if (d == 0) return out;
  Mat comp = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeff(i) / coeff(d);
  Eigen::ComplexEigenSolver<Mat> es(comp);
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](Cx a, Cx b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

PolySeries poly_from(const std::vector<Cx>& coeffs) {
  PolySeries p;
  p.coeff = Vec::Zero(std::max<size_t>(coeffs.size(), 1));
  for (size_t i = 0; i < coeffs.size(); ++i) p.coeff(Eigen::Index(i)) = coeffs[i];
  return p;
}

PolySeries poly_mul(const PolySeries& a, const PolySeries& b, int keep_deg) {
  PolySeries r;
  r.coeff = Vec::Zero(keep_deg + 1);
  for (int i = 0; i < a.coeff.size(); ++i)
    for (int j = 0; j < b.coeff.size(); ++j)
      if (i + j <= keep_deg) r.coeff(i + j) += a.coeff(i) * b.coeff(j);
  return r;
}

namespace {

// multiply a truncated series by (z - a)/(1 - conj(a) z) = (z - a) * sum_k
// (conj(a) z)^k
Vec blaschke_factor_series(const Vec& s, Cx a, int deg) {
  // first multiply by the geometric series, then by (z - a)
  Vec g = Vec::Zero(deg + 1);
  Cx ac = std::conj(a);
  // t = s * sum (ac z)^k
  Vec t = Vec::Zero(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    Cx pw = 1.0;
    for (int j = k; j >= 0; --j) {
      t(k) += (j < s.size() ? s(j) : Cx(0.0)) * pw;
      pw *= ac;
    }
  }
  for (int k = 0; k <= deg; ++k) {
    g(k) = -a * t(k);
    if (k >= 1) g(k) += t(k - 1);
  }
  return g;
}

}  // namespace

BlaschkeSplit blaschke_inner_outer(const PolySeries& p, int series_deg, double circle_tol) {
  require(p.coeff.size() > 0 && p.coeff.norm() > 0.0, Err::ZeroVector,
          "cannot factor the zero polynomial");
  BlaschkeSplit out;
  // strip z^m0
  int m0 = 0;
  while (m0 < p.coeff.size() && std::abs(p.coeff(m0)) < 1e-14 * p.coeff.norm()) ++m0;
  out.zero_order = m0;
  PolySeries core;
  core.coeff = p.coeff.segment(m0, p.coeff.size() - m0);

  std::vector<Cx> rts = core.roots();
  std::vector<Cx> outside;
  for (Cx r : rts) {
    require(std::abs(std::abs(r) - 1.0) > circle_tol, Err::RootOnCircle,
            "root too close to the unit circle");
    if (std::abs(r) < 1.0)
      out.inside_roots.push_back(r);
    else
      outside.push_back(r);
  }
  int d = core.degree();
  Cx lead = core.coeff(d);

  // outer = lead * prod_inside (1 - conj(r) z) * prod_outside (z - r)
  PolySeries outer = poly_from({lead});
  for (Cx r : out.inside_roots) outer = poly_mul(outer, poly_from({Cx(1.0), -std::conj(r)}), series_deg);
  for (Cx r : outside) outer = poly_mul(outer, poly_from({-r, Cx(1.0)}), series_deg);

  // inner = z^m0 * prod_inside (z - r)/(1 - conj(r) z), as a series
  Vec inner = Vec::Zero(series_deg + 1);
  if (m0 <= series_deg) inner(m0) = 1.0;
  for (Cx r : out.inside_roots) inner = blaschke_factor_series(inner, r, series_deg);

  out.inner = inner;
  out.outer = Vec::Zero(series_deg + 1);
  for (int k = 0; k <= series_deg && k < outer.coeff.size(); ++k) out.outer(k) = outer.coeff(k);

  // product cross-check through the series degree
  Vec prod = Vec::Zero(series_deg + 1);
  for (int i = 0; i <= series_deg; ++i)
    for (int j = 0; j + i <= series_deg; ++j) prod(i + j) += out.inner(i) * out.outer(j);
  double res = 0.0;
  for (int k = 0; k <= series_deg; ++k)
    res = std::max(res, std::abs(prod(k) - (k < p.coeff.size() ? p.coeff(k) : Cx(0.0))));
  require(res <= 1e-8 * std::max(1.0, double(p.coeff.norm())), Err::RootOnCircle,
          "inner * outer does not reproduce the polynomial");
  return out;
}

Subspace brute_cyclic_span(const std::vector<Mat>& ops, const Vec& v, int budget,
                           double reltol) {
  require(budget >= 0, Err::DegreeOverflow, "budget must be >= 0");
  Mat acc(v.size(), 1);
  acc.col(0) = v;
  acc = orthonormal_range(acc, reltol);
  Mat frontier = acc;
  for (int k = 1; k <= budget && frontier.cols() > 0; ++k) {
    Mat img(v.size(), Eigen::Index(ops.size()) * frontier.cols());
    for (size_t p = 0; p < ops.size(); ++p)
      img.middleCols(Eigen::Index(p) * frontier.cols(), frontier.cols()) =
          ops[p] * frontier;
    frontier = orthonormal_range(img, reltol);
    if (frontier.cols() == 0) break;
    Mat joined(v.size(), acc.cols() + frontier.cols());
    joined << acc, frontier;
    Mat bigger = orthonormal_range(joined, reltol);
    if (bigger.cols() == acc.cols()) {
      acc = bigger;
      break;  // stabilized
    }
    acc = bigger;
  }
  return Subspace{acc};
}

Subspace brute_wandering(const std::vector<Mat>& v_gens, const Subspace& m, double inv_tol,
                         double reltol) {
  for (const Mat& v : v_gens) {
    Mat img = v * m.basis;
    double leak = m.dim() == 0 ? 0.0 : spectral_norm(img - m.basis * (m.basis.adjoint() * img));
    require(leak <= inv_tol * (1.0 + spectral_norm(v)), Err::NotInvariant,
            "brute_wandering: subspace not invariant");
  }
  if (m.dim() == 0) return m;
  Mat img(m.ambient(), Eigen::Index(v_gens.size()) * m.dim());
  for (size_t p = 0; p < v_gens.size(); ++p)
    img.middleCols(Eigen::Index(p) * m.dim(), m.dim()) = v_gens[p] * m.basis;
  Mat shifted = orthonormal_range(img, reltol);
  return Subspace{orthogonal_complement_within(m.basis, shifted, reltol)};
}

}  // namespace nch
