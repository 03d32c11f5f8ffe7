// Dense-matrix utilities: rank-revealing orthonormalization, null spaces,
// pseudo-inverses, subspace geometry and the deterministic phase convention.
#pragma once

#include "nchardy/types.hpp"

namespace nch {

// Rotate a nonzero column so that its first entry of (near-)maximal modulus
// becomes real positive.  Keeps eigen/SVD bases reproducible across runs.
void phase_normalize_column(Eigen::Ref<Vec> col);
void phase_normalize_columns(Mat& m);

Mat kron(const Mat& a, const Mat& b);

double spectral_norm(const Mat& m);

// Orthonormal basis of the column span; columns with singular value
// <= reltol * sigma_max are dropped.
Mat orthonormal_range(const Mat& m, double reltol);

// Orthonormal basis of {x : m x = 0} at relative tolerance reltol.
Mat null_space(const Mat& m, double reltol);

// Moore-Penrose inverse with singular values below reltol * sigma_max
// treated as zero.
Mat pinv(const Mat& m, double reltol);

int numeric_rank(const Mat& m, double reltol);

// Columns of u1/u2 are orthonormal bases; returns ||P1 - P2||_2.
double subspace_distance(const Mat& u1, const Mat& u2);

// || (I - P_basis) v || — how far v sticks out of the subspace.
double residual_outside(const Mat& basis, const Vec& v);

Mat projector(const Mat& basis);

// Orthonormal basis of span(a) ominus span(b); b orthonormal.
Mat orthogonal_complement_within(const Mat& a, const Mat& b, double reltol);

inline Mat adjoint(const Mat& m) { return m.adjoint(); }

}  // namespace nch
