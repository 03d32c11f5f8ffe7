// Command dispatch shared by the CLI and the acceptance suite.
#pragma once

#include "nchardy/report.hpp"

namespace nch {

struct RunFlags {
  int trunc_override = -1;
  double tol_rank = -1.0;
  double tol_alg = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int count = 0;
  int degree = 6;
  bool emit_matrices = false;
};

// returns the report; exit status is 0 iff report["verdict"] == "pass"
nlohmann::json run_validate(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_factor_vector(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_factor_commutant(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_factor_element(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_wold(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_dual(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_beurling(const InstanceSpec& spec, const RunFlags& flags);
nlohmann::json run_classical_compare(const RunFlags& flags);
nlohmann::json run_verify(const RunFlags& flags);

nlohmann::json dispatch_command(const std::string& command, const InstanceSpec* spec,
                                const RunFlags& flags);

// building blocks reused by the acceptance suite
GradedOperator build_commutant_payload(const BuiltInstance& b, const InstanceSpec& spec,
                                       DualData* dd_out = nullptr);
Subspace invariant_subspace_payload(const BuiltInstance& b, const InstanceSpec& spec);

struct ClassicalCompareResult {
  double outer_resid = 0.0;
  double inner_resid = 0.0;
  double element_outer_resid = 0.0;
  double element_inner_resid = 0.0;
  bool pass = false;
};

// one scalar polynomial through the E = M = C pipeline against the oracle
ClassicalCompareResult classical_compare_poly(const Vec& coeffs, int trunc, double match_tol);

// random polynomial with all roots at distance >= 0.1 from the unit circle
Vec random_offcircle_poly(Rng& rng, int maxdeg);

InstanceSpec apply_flags(const InstanceSpec& spec, const RunFlags& flags);

}  // namespace nch
