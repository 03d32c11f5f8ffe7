#include "nchardy/instance.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace nch {

using nlohmann::json;

namespace {

Cx cx_from(const json& j) {
  require(j.is_array() && j.size() == 2, Err::SchemaError, "complex numbers are [re, im]");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

json cx_to(Cx z) { return json::array({z.real(), z.imag()}); }

Vec vec_from(const json& j) {
  require(j.is_array(), Err::SchemaError, "expected an array of complex pairs");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = cx_from(j[i]);
  return v;
}

Mat mat_from(const json& j, int rows, int cols) {
  Vec flat = vec_from(j);
  require(flat.size() == Eigen::Index(rows) * cols, Err::SchemaError,
          "dense array has the wrong length");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = flat(Eigen::Index(r) * cols + c);
  return m;
}

json vec_to(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cx_to(v(i)));
  return a;
}

std::map<int, Vec> components_from(const json& j) {
  require(j.is_object(), Err::SchemaError, "components are keyed by degree");
  std::map<int, Vec> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int deg = std::stoi(it.key());
    require(deg >= 0, Err::SchemaError, "degrees are non-negative");
    out[deg] = vec_from(it.value());
  }
  return out;
}

}  // namespace

InstanceSpec parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    fail(Err::SchemaError, std::string("invalid JSON: ") + ex.what());
  }
  InstanceSpec s;
  try {
    if (j.contains("schema_version")) s.schema_version = j["schema_version"].get<int>();
    require(j.contains("algebra") && j["algebra"].contains("blocks"), Err::SchemaError,
            "missing algebra.blocks");
    s.blocks = j["algebra"]["blocks"].get<std::vector<int>>();
    if (j.contains("multiplicities"))
      s.multiplicities = j["multiplicities"].get<std::vector<int>>();
    else
      s.multiplicities.assign(s.blocks.size(), 1);

    require(j.contains("correspondence"), Err::SchemaError, "missing correspondence");
    const json& c = j["correspondence"];
    s.corr.kind = c.at("kind").get<std::string>();
    if (s.corr.kind == "free") {
      s.corr.d = c.at("d").get<int>();
    } else if (s.corr.kind == "graph") {
      s.corr.vertices = c.at("vertices").get<int>();
      for (const auto& e : c.at("edges"))
        s.corr.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    } else if (s.corr.kind == "explicit") {
      s.corr.dim = c.at("dim").get<int>();
      int dm = 0;
      for (int n : s.blocks) dm += n * n;
      for (const auto& r : c.at("right"))
        s.corr.right.push_back(mat_from(r, s.corr.dim, s.corr.dim));
      for (const auto& l : c.at("left"))
        s.corr.left.push_back(mat_from(l, s.corr.dim, s.corr.dim));
      s.corr.inner = mat_from(c.at("inner"), s.corr.dim * s.corr.dim, dm);
      require(int(s.corr.right.size()) == dm && int(s.corr.left.size()) == dm,
              Err::SchemaError, "explicit tensors need one matrix per algebra basis element");
    } else {
      fail(Err::SchemaError, "unknown correspondence kind: " + s.corr.kind);
    }

    if (j.contains("trunc")) s.trunc = j["trunc"].get<int>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      if (t.contains("rank")) s.tol.rank = t["rank"].get<double>();
      if (t.contains("alg")) s.tol.alg = t["alg"].get<double>();
      if (t.contains("inv")) s.tol.inv = t["inv"].get<double>();
    }

    if (j.contains("payload")) {
      const json& p = j["payload"];
      s.payload_kind = p.at("kind").get<std::string>();
      if (s.payload_kind == "vector") {
        s.vector_components = components_from(p.at("components"));
      } else if (s.payload_kind == "poly") {
        s.poly_terms = components_from(p.at("components"));
      } else if (s.payload_kind == "dual_poly_random") {
        s.dual_poly_degree = p.at("degree").get<int>();
        s.dual_poly_seed = p.at("seed").get<std::uint64_t>();
      } else if (s.payload_kind == "subspace_vectors") {
        for (const auto& v : p.at("vectors")) s.subspace_vectors.push_back(components_from(v));
      } else if (s.payload_kind == "wold") {
        s.wold.kind = p.at("carrier").get<std::string>();
        if (p.contains("dim")) s.wold.dim = p["dim"].get<int>();
        if (p.contains("seed")) s.wold.seed = p["seed"].get<std::uint64_t>();
        if (p.contains("kmax")) s.wold.kmax = p["kmax"].get<int>();
      } else {
        fail(Err::SchemaError, "unknown payload kind: " + s.payload_kind);
      }
    }
  } catch (const NchError&) {
    throw;
  } catch (const std::exception& ex) {
    fail(Err::SchemaError, std::string("malformed instance: ") + ex.what());
  }
  return s;
}

InstanceSpec parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::SchemaError, "cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

std::string instance_echo_json(const InstanceSpec& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["algebra"]["blocks"] = s.blocks;
  j["multiplicities"] = s.multiplicities;
  json c;
  c["kind"] = s.corr.kind;
  if (s.corr.kind == "free") c["d"] = s.corr.d;
  if (s.corr.kind == "graph") {
    c["vertices"] = s.corr.vertices;
    json e = json::array();
    for (auto [a, b] : s.corr.edges) e.push_back(json::array({a, b}));
    c["edges"] = e;
  }
  if (s.corr.kind == "explicit") c["dim"] = s.corr.dim;
  j["correspondence"] = c;
  j["trunc"] = s.trunc;
  j["seed"] = s.seed;
  j["tolerances"] = {{"rank", s.tol.rank}, {"alg", s.tol.alg}, {"inv", s.tol.inv}};
  if (!s.payload_kind.empty()) {
    json p;
    p["kind"] = s.payload_kind;
    if (s.payload_kind == "vector") {
      json comp;
      for (const auto& [d, v] : s.vector_components) comp[std::to_string(d)] = vec_to(v);
      p["components"] = comp;
    } else if (s.payload_kind == "poly") {
      json comp;
      for (const auto& [d, v] : s.poly_terms) comp[std::to_string(d)] = vec_to(v);
      p["components"] = comp;
    } else if (s.payload_kind == "dual_poly_random") {
      p["degree"] = s.dual_poly_degree;
      p["seed"] = s.dual_poly_seed;
    } else if (s.payload_kind == "subspace_vectors") {
      json vs = json::array();
      for (const auto& m : s.subspace_vectors) {
        json comp;
        for (const auto& [d, v] : m) comp[std::to_string(d)] = vec_to(v);
        vs.push_back(comp);
      }
      p["vectors"] = vs;
    } else if (s.payload_kind == "wold") {
      p["carrier"] = s.wold.kind;
      p["dim"] = s.wold.dim;
      p["seed"] = s.wold.seed;
      p["kmax"] = s.wold.kmax;
    }
    j["payload"] = p;
  }
  return j.dump();
}

Correspondence correspondence_from_spec(const CorrSpec& cs, const AlgebraPtr& alg) {
  if (cs.kind == "free") {
    require(alg->num_blocks() == 1 && alg->block_size(0) == 1, Err::AlgebraMismatch,
            "free correspondences live over the scalars");
    return free_correspondence(cs.d);
  }
  if (cs.kind == "graph") {
    require(alg->num_blocks() == cs.vertices, Err::AlgebraMismatch,
            "graph correspondences need one scalar block per vertex");
    for (int k = 0; k < alg->num_blocks(); ++k)
      require(alg->block_size(k) == 1, Err::AlgebraMismatch, "graph blocks are scalar");
    return graph_correspondence(cs.vertices, cs.edges);
  }
  require(cs.kind == "explicit", Err::SchemaError, "unknown correspondence kind");
  Correspondence e;
  e.algebra = alg;
  e.dim = cs.dim;
  e.right = cs.right;
  e.left = cs.left;
  e.inner_coords = cs.inner;
  return e;
}

BuiltInstance build_instance(const InstanceSpec& spec) {
  BuiltInstance b;
  b.alg = make_algebra_ptr(spec.blocks);
  b.rep = make_representation(b.alg, spec.multiplicities);
  b.e = correspondence_from_spec(spec.corr, b.alg);
  ValidationReport vr = validate_correspondence(b.e, spec.tol);
  if (!vr.pass) {
    std::string which;
    for (const auto& c : vr.checks)
      if (!c.pass) which += (which.empty() ? "" : ", ") + c.axiom;
    fail(Err::WrongCorrespondence, "correspondence axioms fail: " + which);
  }
  require(b.rep->faithful(), Err::NotFaithful, "instance representation must be faithful");
  b.chain = std::make_shared<CorrChain>(b.e, spec.tol);
  b.fock = build_fock(b.chain, b.rep->action(), spec.trunc);
  b.place = placement_from_representation(*b.rep);
  return b;
}

Vec embed_payload_vector(const GradedSpace& f, const std::map<int, Vec>& components) {
  Vec g = Vec::Zero(f.dim());
  for (const auto& [deg, v] : components) g += f.embed_component(deg, v);
  return g;
}

PolyOperator poly_from_payload(CorrChain& chain, const std::map<int, Vec>& terms) {
  PolyOperator x;
  CorrChain& ch = chain;
  for (const auto& [deg, v] : terms) {
    if (deg == 0) {
      require(v.size() == ch.algebra()->dim(), Err::DimensionMismatch,
              "degree-0 coefficient lives in the algebra");
      x.terms.push_back({0, v});
    } else {
      Mat wp = ch.word_project(deg);
      require(v.size() == wp.cols(), Err::DimensionMismatch,
              "degree-k coefficient has d^k word entries");
      x.terms.push_back({deg, wp * v});
    }
  }
  return x;
}

namespace {

// one random complex gaussian vector of the word dimension at a degree
Vec random_degree_payload(Rng& rng, Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.cgaussian();
  return v;
}

// correspondence + representation skeleton within the generator bounds
void random_base(Rng& rng, InstanceSpec& s, bool need_dual_cheap) {
  int kind = rng.uniform_int(0, need_dual_cheap ? 1 : 2);
  if (kind == 0) {
    s.blocks = {1};
    s.multiplicities = {rng.uniform_int(1, 2)};
    s.corr.kind = "free";
    s.corr.d = rng.uniform_int(1, need_dual_cheap ? 2 : 3);
  } else if (kind == 1) {
    int v = rng.uniform_int(1, 2);
    s.blocks.assign(v, 1);
    s.multiplicities.clear();
    for (int i = 0; i < v; ++i) s.multiplicities.push_back(rng.uniform_int(1, 2));
    s.corr.kind = "graph";
    s.corr.vertices = v;
    int ne = rng.uniform_int(1, 3);
    s.corr.edges.clear();
    for (int t = 0; t < ne; ++t)
      s.corr.edges.push_back({rng.uniform_int(1, v), rng.uniform_int(1, v)});
  } else {
    // explicit block-hom correspondence over a two-block algebra
    int which = rng.uniform_int(0, 2);
    if (which == 0)
      s.blocks = {2};
    else if (which == 1)
      s.blocks = {1, 1};
    else
      s.blocks = {2, 1};
    s.multiplicities.clear();
    for (size_t i = 0; i < s.blocks.size(); ++i)
      s.multiplicities.push_back(rng.uniform_int(1, 2));
    AlgebraPtr alg = make_algebra_ptr(s.blocks);
    // assemble parts with total dimension <= 3
    std::vector<std::tuple<int, int, int>> parts;
    int total = 0;
    for (int attempt = 0; attempt < 6 && total < 3; ++attempt) {
      int k = rng.uniform_int(0, alg->num_blocks() - 1);
      int l = rng.uniform_int(0, alg->num_blocks() - 1);
      int d = alg->block_size(k) * alg->block_size(l);
      if (total + d <= 3) {
        parts.push_back({k, l, 1});
        total += d;
      }
    }
    if (parts.empty()) parts.push_back({alg->num_blocks() - 1, alg->num_blocks() - 1, 1});
    Correspondence e = block_hom_correspondence(alg, parts);
    s.corr.kind = "explicit";
    s.corr.dim = e.dim;
    s.corr.right = e.right;
    s.corr.left = e.left;
    s.corr.inner = e.inner_coords;
  }
}

int fock_dim_estimate(const InstanceSpec& s) {
  int dim_h = 0;
  for (size_t k = 0; k < s.blocks.size(); ++k) dim_h += s.blocks[k] * s.multiplicities[k];
  int d = s.corr.kind == "free" ? s.corr.d
          : s.corr.kind == "graph" ? int(s.corr.edges.size())
                                   : s.corr.dim;
  double total = 0, layer = 1;
  for (int n = 0; n <= s.trunc; ++n) {
    total += layer * dim_h;
    layer *= std::max(d, 1);
  }
  return int(std::min(total, 1e9));
}

}  // namespace

InstanceSpec random_vector_instance(Rng& rng) {
  InstanceSpec s;
  random_base(rng, s, false);
  int dg = rng.uniform_int(0, 3);
  s.trunc = std::min(5, dg + 2 + rng.uniform_int(0, 3));
  while (fock_dim_estimate(s) > 600 && s.trunc > dg + 2) --s.trunc;
  s.payload_kind = "vector";

  // word dimensions per degree
  int dim_h = 0;
  for (size_t k = 0; k < s.blocks.size(); ++k) dim_h += s.blocks[k] * s.multiplicities[k];
  int d = s.corr.kind == "free" ? s.corr.d
          : s.corr.kind == "graph" ? int(s.corr.edges.size())
                                   : s.corr.dim;
  int dm = 0;
  for (int n : s.blocks) dm += n * n;
  Eigen::Index words = 1;
  for (int deg = 0; deg <= dg; ++deg) {
    Eigen::Index n = deg == 0 ? dim_h : words * d * dim_h;
    s.vector_components[deg] = random_degree_payload(rng, n);
    if (deg > 0) words *= d;
    else words = 1;
  }
  (void)dm;
  return s;
}

InstanceSpec random_commutant_instance(Rng& rng) {
  InstanceSpec s;
  random_base(rng, s, true);
  s.trunc = 5;
  while (fock_dim_estimate(s) > 300 && s.trunc > 3) --s.trunc;
  s.payload_kind = "dual_poly_random";
  s.dual_poly_degree = rng.uniform_int(0, 2);
  s.dual_poly_seed = rng.next_u64() | 1;
  return s;
}

InstanceSpec random_beurling_instance(Rng& rng) {
  InstanceSpec s;
  random_base(rng, s, false);
  s.trunc = std::min(5, 4 + rng.uniform_int(0, 1));
  while (fock_dim_estimate(s) > 400 && s.trunc > 3) --s.trunc;
  s.payload_kind = "subspace_vectors";
  int nv = rng.uniform_int(1, 2);
  int dim_h = 0;
  for (size_t k = 0; k < s.blocks.size(); ++k) dim_h += s.blocks[k] * s.multiplicities[k];
  int d = s.corr.kind == "free" ? s.corr.d
          : s.corr.kind == "graph" ? int(s.corr.edges.size())
                                   : s.corr.dim;
  for (int t = 0; t < nv; ++t) {
    int dg = rng.uniform_int(0, std::min(2, s.trunc - 2));
    std::map<int, Vec> comp;
    Eigen::Index words = 1;
    for (int deg = 0; deg <= dg; ++deg) {
      Eigen::Index n = deg == 0 ? dim_h : words * d * dim_h;
      comp[deg] = random_degree_payload(rng, n);
      if (deg > 0) words *= d;
    }
    s.subspace_vectors.push_back(comp);
  }
  return s;
}

}  // namespace nch
