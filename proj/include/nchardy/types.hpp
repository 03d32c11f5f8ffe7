// Core scalar/matrix aliases, error codes and tolerance configuration shared
// by every module of the toolkit.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nch {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

enum class Err {
  EmptyBlocks,
  InvalidBlock,
  NotFaithful,
  DimensionMismatch,
  NotStarClosed,
  NotInvariant,
  AlgebraMismatch,
  InvalidEdge,
  WrongCorrespondence,
  DegreeOverflow,
  NotInCommutant,
  NotIntertwiner,
  ZeroVector,
  LemmaViolation,
  NotPSD,
  MismatchedInput,
  TruncationInsufficient,
  RootOnCircle,
  SchemaError,
};

const char* err_name(Err e);

class NchError : public std::runtime_error {
public:
  NchError(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw NchError(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

// Single source of truth for the numerical cutoffs.  `rank` is relative to
// the largest singular/eigen value of the matrix being decided.
struct Tolerances {
  double rank = 1e-9;
  double alg = 1e-8;
  double inv = 1e-8;
};

// Deterministic random source.  Uniform doubles are derived from the raw
// 64-bit stream directly so that the sequence does not depend on the
// standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // xorshift* variant; fixed here so streams are reproducible everywhere.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1Dull;
  }

  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
  }

  double gaussian() {
    // Box-Muller; both uniforms pulled even when one is wasted, keeping the
    // stream position independent of branch outcomes.
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Cx cgaussian() {
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-std::log(u1));
    return Cx(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
  }

private:
  std::uint64_t state_;
};

}  // namespace nch
