// Instance files: JSON descriptions of the algebra, representation,
// correspondence, truncation, tolerances and payload of one run.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "nchardy/dual.hpp"
#include "nchardy/factor.hpp"

namespace nch {

struct CorrSpec {
  std::string kind;  // "free" | "graph" | "explicit"
  int d = 1;         // free
  int vertices = 0;  // graph
  std::vector<std::pair<int, int>> edges;
  int dim = 0;  // explicit
  std::vector<Mat> right, left;
  Mat inner;  // (dim*dim) x algebra dim
};

struct WoldSpec {
  std::string kind;  // "induced" | "unitary" | "direct_sum"
  int dim = 2;       // carrier of the unitary part
  std::uint64_t seed = 1;
  int kmax = -1;  // default: trunc + 1
};

struct InstanceSpec {
  int schema_version = 1;
  std::vector<int> blocks{1};
  std::vector<int> multiplicities{1};
  CorrSpec corr{.kind = "free", .d = 1};
  int trunc = 4;
  Tolerances tol;
  std::uint64_t seed = 1;

  std::string payload_kind;               // "vector" | "poly" | "dual_poly_random" |
                                          // "subspace_vectors" | "wold" | none
  std::map<int, Vec> vector_components;   // word coordinates per degree
  std::vector<std::map<int, Vec>> subspace_vectors;
  std::map<int, Vec> poly_terms;
  int dual_poly_degree = 1;
  std::uint64_t dual_poly_seed = 1;
  WoldSpec wold;
};

InstanceSpec parse_instance_file(const std::string& path);
InstanceSpec parse_instance_text(const std::string& text);
std::string instance_echo_json(const InstanceSpec& spec);

struct BuiltInstance {
  AlgebraPtr alg;
  std::optional<Representation> rep;
  Correspondence e;
  std::shared_ptr<CorrChain> chain;
  GradedSpacePtr fock;
  GnsPlacement place;
};

Correspondence correspondence_from_spec(const CorrSpec& cs, const AlgebraPtr& alg);
BuiltInstance build_instance(const InstanceSpec& spec);

// payload helpers
Vec embed_payload_vector(const GradedSpace& f, const std::map<int, Vec>& components);
PolyOperator poly_from_payload(CorrChain& chain, const std::map<int, Vec>& terms);

// deterministic generators used by `verify` and the acceptance suite
InstanceSpec random_vector_instance(Rng& rng);
InstanceSpec random_commutant_instance(Rng& rng);
InstanceSpec random_beurling_instance(Rng& rng);

}  // namespace nch
