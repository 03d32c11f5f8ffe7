#include "nchardy/runner.hpp"

#include <chrono>

#include "nchardy/oracle.hpp"

namespace nch {

using nlohmann::json;

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

// run `body` into a report, converting library errors into error reports
json guarded(const std::string& command, const InstanceSpec* spec,
             const std::function<void(ReportBuilder&)>& body) {
  ReportBuilder rb(command, spec);
  double t0 = now_ms();
  try {
    body(rb);
  } catch (const NchError& ex) {
    rb.set_error(err_name(ex.code()), ex.what());
  }
  rb.set_timing(now_ms() - t0);
  return rb.finish();
}

}  // namespace

InstanceSpec apply_flags(const InstanceSpec& spec, const RunFlags& flags) {
  InstanceSpec s = spec;
  if (flags.trunc_override >= 0) s.trunc = flags.trunc_override;
  if (flags.tol_rank > 0) s.tol.rank = flags.tol_rank;
  if (flags.tol_alg > 0) s.tol.alg = flags.tol_alg;
  if (flags.seed_set) s.seed = flags.seed;
  return s;
}

json run_validate(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("validate", &spec, [&](ReportBuilder& rb) {
    AlgebraPtr alg = make_algebra_ptr(spec.blocks);
    Representation rep = make_representation(alg, spec.multiplicities);
    rb.add_row("representation-faithful", rep.faithful() ? 0.0 : 1.0, 0.5);
    Correspondence e = correspondence_from_spec(spec.corr, alg);
    ValidationReport vr = validate_correspondence(e, spec.tol);
    rb.add_rows(vr);
    rb.set_dimension("dim_E", e.dim);
    rb.set_dimension("dim_H", rep.dim());
    if (vr.pass && rep.faithful()) {
      auto chain = std::make_shared<CorrChain>(e, spec.tol);
      GradedSpacePtr f = build_fock(chain, rep.action(), spec.trunc);
      rb.set_dimension("dim_fock", f->dim());
      // Gram positivity at every degree
      double worst = 0.0;
      for (int n = 1; n <= spec.trunc; ++n) {
        double lo = balanced_gram_min_eigenvalue(chain->power(n), rep.action());
        worst = std::max(worst, std::max(0.0, -lo));
      }
      rb.add_row("fock-gram-positive", worst, spec.tol.rank);
    }
  });
}

json run_factor_vector(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("factor-vector", &spec, [&](ReportBuilder& rb) {
    require(spec.payload_kind == "vector", Err::SchemaError,
            "factor-vector needs a vector payload");
    BuiltInstance b = build_instance(spec);
    Vec g = embed_payload_vector(*b.fock, spec.vector_components);
    FactorOptions opts;
    opts.tol = spec.tol;
    VectorFactorization vf = factor_vector(b.fock, b.place, g, opts);
    rb.add_rows(vf.checks);
    rb.set_dimension("dim_fock", b.fock->dim());
    rb.set_dimension("dim_cyclic", vf.wd.cyclic.dim());
    rb.set_dimension("dim_wandering", vf.wd.wandering.dim());
    rb.set_dimension("ampliation_slots", vf.inner.gns.slots);
    rb.set_dimension("dim_K", vf.inner.gns.k_basis.cols());
    rb.set_dimension("wandering_top_degree", vf.wd.top_degree);
    rb.set_dimension("dom_trunc", vf.inner.dom->trunc());
    if (flags.emit_matrices) {
      rb.add_matrix("W", vf.inner.w);
      rb.add_vector("y", vf.y);
      rb.add_vector("g0", vf.wd.g0);
    }
  });
}

GradedOperator build_commutant_payload(const BuiltInstance& b, const InstanceSpec& spec,
                                       DualData* dd_out) {
  require(spec.payload_kind == "dual_poly_random", Err::SchemaError,
          "commutant payload is a seeded dual polynomial");
  DualData dd = dual_correspondence(b.fock, *b.rep, spec.seed, spec.tol);
  Rng rng(spec.dual_poly_seed);
  GradedOperator s =
      random_dual_polynomial(b.fock, dd, spec.dual_poly_degree, rng, spec.tol);
  if (dd_out) *dd_out = std::move(dd);
  return s;
}

json run_factor_commutant(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("factor-commutant", &spec, [&](ReportBuilder& rb) {
    BuiltInstance b = build_instance(spec);
    GradedOperator s = build_commutant_payload(b, spec);
    FactorOptions opts;
    opts.tol = spec.tol;
    OperatorFactorization of = factor_commutant(b.fock, b.place, s, opts);
    rb.add_rows(of.checks);
    rb.set_dimension("dim_fock", b.fock->dim());
    rb.set_dimension("dim_range", of.range.dim());
    rb.set_dimension("dim_wandering", of.wandering.dim());
    rb.set_dimension("cyclic_pieces", of.pieces.size());
    rb.set_dimension("degree_shift", of.d_s);
    rb.set_dimension("dim_K", of.inner.gns.k_basis.cols());
    if (flags.emit_matrices) {
      rb.add_matrix("W", of.inner.w);
      rb.add_matrix("Y", of.y);
    }
  });
}

json run_factor_element(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("factor-element", &spec, [&](ReportBuilder& rb) {
    require(spec.payload_kind == "poly", Err::SchemaError,
            "factor-element needs a polynomial payload");
    BuiltInstance b = build_instance(spec);
    PolyOperator x = poly_from_payload(*b.chain, spec.poly_terms);
    DualData dd = dual_correspondence(b.fock, *b.rep, spec.seed, spec.tol);
    FourierData fd = fourier_transform(dd, spec.tol);
    FactorOptions opts;
    opts.tol = spec.tol;
    ElementFactorization ef = factor_element(b.fock, dd, fd, x, opts);
    rb.add_rows(ef.checks);
    rb.add_rows(ef.dual_fc.checks);
    rb.set_dimension("dim_fock", b.fock->dim());
    rb.set_dimension("dim_dual", dd.dual.dim);
    rb.set_dimension("dim_K", ef.dual_fc.inner.gns.k_basis.cols());
    double worst_u = 0.0;
    for (double u : fd.unitarity) worst_u = std::max(worst_u, u);
    rb.add_row("fourier-unitarity", worst_u, 1e-9);
    if (flags.emit_matrices) {
      rb.add_matrix("W", ef.w);
      rb.add_matrix("Y", ef.y);
    }
  });
}

json run_wold(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("wold", &spec, [&](ReportBuilder& rb) {
    require(spec.payload_kind == "wold", Err::SchemaError, "wold needs a carrier payload");
    const WoldSpec& ws = spec.wold;
    Tolerances tol = spec.tol;
    if (ws.kind == "induced" || ws.kind == "direct_sum") {
      BuiltInstance b = build_instance(spec);
      CovariantRep rep = CovariantRep::induced(b.fock);
      int g1 = b.fock->dim();
      if (ws.kind == "direct_sum") {
        require(spec.corr.kind == "free" && spec.corr.d == 1, Err::SchemaError,
                "direct_sum instances use the scalar correspondence");
        Rng rng(ws.seed);
        Mat a(ws.dim, ws.dim);
        for (int i = 0; i < ws.dim; ++i)
          for (int j = 0; j < ws.dim; ++j) a(i, j) = rng.cgaussian();
        Eigen::HouseholderQR<Mat> qr(a);
        Mat u = qr.householderQ() * Mat::Identity(ws.dim, ws.dim);
        rep = CovariantRep::direct_sum(rep, CovariantRep::scalar_isometry(u));
      }
      int kmax = ws.kmax > 0 ? ws.kmax : spec.trunc + 1;
      auto wd = rep.wold(kmax, tol);
      rb.set_dimension("carrier_dim", rep.carrier_dim());
      rb.set_dimension("stabilized_at", wd.stabilized_at);
      rb.add_row("wold-stabilized", wd.stabilized ? 0.0 : 1.0, 0.5);
      // R_k vs the degree tail projections on the induced block
      double worst = 0.0;
      for (int k = 0; k <= std::min(kmax, b.fock->trunc()); ++k) {
        Mat tail = Mat::Identity(b.fock->dim(), b.fock->dim()) -
                   degree_cutoff(*b.fock, k - 1);
        worst = std::max(worst,
                         spectral_norm(wd.r[k].topLeftCorner(g1, g1) - tail));
      }
      rb.add_row("induced-tail-projections", worst, 1e-9);
      if (ws.kind == "induced") {
        rb.add_row("r-infinity-vanishes", spectral_norm(wd.r_inf), 1e-9);
        // L^n(P_m) = P_{n+m} inside the arena
        Mat x = wd.p[0];
        double lres = 0.0;
        for (int n = 1; n + 1 < int(wd.p.size()) && n <= 2; ++n) {
          x = rep.endo_L(x, tol);
          lres = std::max(lres, spectral_norm(x - wd.p[n]));
        }
        rb.add_row("endomorphism-powers-shift-defect", lres, 1e-9);
      } else {
        int g2 = rep.carrier_dim() - g1;
        Mat want = Mat::Zero(rep.carrier_dim(), rep.carrier_dim());
        want.bottomRightCorner(g2, g2) = Mat::Identity(g2, g2);
        rb.add_row("direct-sum-coisometric-part", spectral_norm(wd.r_inf - want), 1e-9);
        Mat ind_want = Mat::Zero(rep.carrier_dim(), rep.carrier_dim());
        ind_want.topLeftCorner(g1, g1) = Mat::Identity(g1, g1);
        rb.add_row("direct-sum-induced-part",
                   spectral_norm(wd.induced_part.proj() - ind_want), 1e-9);
      }
    } else if (ws.kind == "unitary") {
      Rng rng(ws.seed);
      Mat a(ws.dim, ws.dim);
      for (int i = 0; i < ws.dim; ++i)
        for (int j = 0; j < ws.dim; ++j) a(i, j) = rng.cgaussian();
      Eigen::HouseholderQR<Mat> qr(a);
      Mat u = qr.householderQ() * Mat::Identity(ws.dim, ws.dim);
      CovariantRep rep = CovariantRep::scalar_isometry(u);
      int kmax = ws.kmax > 0 ? ws.kmax : 4;
      auto wd = rep.wold(kmax, tol);
      rb.add_row("wold-stabilized", wd.stabilized ? 0.0 : 1.0, 0.5);
      rb.add_row("unitary-fully-coisometric",
                 spectral_norm(wd.r_inf - Mat::Identity(ws.dim, ws.dim)), 1e-9);
    } else {
      fail(Err::SchemaError, "unknown wold carrier: " + ws.kind);
    }
  });
}

json run_dual(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("dual", &spec, [&](ReportBuilder& rb) {
    BuiltInstance b = build_instance(spec);
    DualData dd = dual_correspondence(b.fock, *b.rep, spec.seed, spec.tol);
    rb.set_dimension("dim_dual", dd.dual.dim);
    rb.set_dimension("dim_commutant", dd.commutant.dim());
    {
      json blocks = json::array();
      for (int k = 0; k < dd.wedderburn.algebra.num_blocks(); ++k)
        blocks.push_back(dd.wedderburn.algebra.block_size(k));
      rb.set_info("commutant_blocks", blocks);
    }
    ValidationReport vr = validate_correspondence(dd.dual, spec.tol);
    rb.add_rows(vr);

    FourierData fd = fourier_transform(dd, spec.tol);
    double worst_u = 0.0;
    for (double u : fd.unitarity) worst_u = std::max(worst_u, u);
    rb.add_row("fourier-unitarity", worst_u, 1e-9);

    // the transform intertwines the two actions of the commutant
    double eq_res = 0.0;
    for (const Mat& cb : dd.commutant.basis) {
      GradedOperator nu = nu_rep(b.fock, cb, spec.tol);
      AlgElement abs_b = dd.wedderburn.algebra.from_coords(
          dd.wedderburn.to_abstract_coords(cb));
      GradedOperator lhs = fd.dual_space->left_action(abs_b);
      eq_res = std::max(eq_res, spectral_norm(fd.u * nu.mat - lhs.mat * fd.u));
    }
    rb.add_row("fourier-intertwines-commutant", eq_res, 1e-9);

    // generator-level commutation of the dual representation
    double comm = 0.0;
    Mat cut = degree_cutoff(*b.fock, b.fock->trunc() - 2);
    for (const Mat& eta : dd.eta) {
      GradedOperator psi = psi_rep(b.fock, eta, spec.tol);
      for (const auto& gen : b.fock->generators())
        comm = std::max(comm,
                        spectral_norm((psi.mat * gen.mat - gen.mat * psi.mat) * cut));
    }
    for (const Mat& cb : dd.commutant.basis) {
      GradedOperator nu = nu_rep(b.fock, cb, spec.tol);
      for (const auto& gen : b.fock->generators())
        comm = std::max(comm,
                        spectral_norm((nu.mat * gen.mat - gen.mat * nu.mat) * cut));
    }
    rb.add_row("dual-generators-commute", comm, 1e-9);

    // U^* T_eta U = Psi(eta) on the arena
    double eq21 = 0.0;
    for (size_t a = 0; a < dd.eta.size(); ++a) {
      GradedOperator psi = psi_rep(b.fock, dd.eta[a], spec.tol);
      GradedOperator te = fd.dual_space->creation(Vec::Unit(int(dd.eta.size()), int(a)));
      eq21 = std::max(
          eq21, spectral_norm((fd.u.adjoint() * te.mat * fd.u - psi.mat) * cut));
    }
    rb.add_row("dual-creation-pullback", eq21, 1e-9);

    // inner products survive the canonical identification of E with its
    // second dual
    Rng rng(spec.seed + 7);
    double xres = 0.0;
    for (int k = 1; k <= std::min(2, b.fock->trunc()); ++k) {
      Vec xi(b.chain->power_dim(k));
      for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = rng.cgaussian();
      Mat xh = xi_hat(dd, fd, k, xi);
      AlgElement ip = b.chain->power(k).inner(xi, xi);
      xres = std::max(xres, (Mat(xh.adjoint() * xh) - b.rep->pi(ip)).norm());
    }
    rb.add_row("second-dual-inner-products", xres, 1e-9);

    // scalar case: dimension of the realized commutant algebra
    if (b.alg->num_blocks() == 1 && b.alg->block_size(0) == 1 && b.e.dim == 1 &&
        b.rep->dim() == 1) {
      const int n = b.fock->trunc();
      std::vector<Mat> gens;
      for (const auto& g : b.fock->generators()) gens.push_back(g.mat);
      MatrixSubalgebra comm1 = commutant_basis(gens, b.fock->dim(), spec.tol);
      rb.add_row("classical-commutant-dimension",
                 std::abs(double(comm1.dim()) - double(n + 1)), 0.5);
      MatrixSubalgebra comm2 = commutant_basis(comm1.basis, b.fock->dim(), spec.tol);
      rb.add_row("classical-double-commutant-dimension",
                 std::abs(double(comm2.dim()) - double(n + 1)), 0.5);
      // realized dual polynomials span the commutant
      Mat psi = psi_rep(b.fock, dd.eta[0], spec.tol).mat;
      Mat cols(b.fock->dim() * b.fock->dim(), n + 1);
      Mat pw = Mat::Identity(b.fock->dim(), b.fock->dim());
      for (int k = 0; k <= n; ++k) {
        cols.col(k) = Eigen::Map<const Vec>(pw.data(), pw.size());
        pw = psi * pw;
      }
      rb.add_row("classical-dual-polynomials-span",
                 std::abs(double(numeric_rank(cols, spec.tol.rank)) - double(n + 1)), 0.5);
    }
  });
}

json run_beurling(const InstanceSpec& spec0, const RunFlags& flags) {
  InstanceSpec spec = apply_flags(spec0, flags);
  return guarded("beurling", &spec, [&](ReportBuilder& rb) {
    BuiltInstance b = build_instance(spec);
    Subspace m = invariant_subspace_payload(b, spec);
    FactorOptions opts;
    opts.tol = spec.tol;
    BeurlingDecomposition bd = beurling_decompose(b.fock, b.place, m, opts);
    rb.add_rows(bd.checks);
    rb.set_dimension("dim_subspace", m.dim());
    rb.set_dimension("dim_wandering", bd.wandering.dim());
    rb.set_dimension("pieces", bd.inners.size());
  });
}

Subspace invariant_subspace_payload(const BuiltInstance& b, const InstanceSpec& spec) {
  require(spec.payload_kind == "subspace_vectors", Err::SchemaError,
          "beurling needs cyclic generating vectors");
  Mat acc(b.fock->dim(), 0);
  for (const auto& comp : spec.subspace_vectors) {
    Vec g = embed_payload_vector(*b.fock, comp);
    Subspace mg = cyclic_subspace(*b.fock, g, spec.tol);
    Mat joined(b.fock->dim(), acc.cols() + mg.basis.cols());
    joined << acc, mg.basis;
    acc = orthonormal_range(joined, spec.tol.rank);
  }
  return Subspace{acc};
}

json run_classical_compare(const RunFlags& flags) {
  return guarded("classical-compare", nullptr, [&](ReportBuilder& rb) {
    const int count = flags.count > 0 ? flags.count : 10;
    const int trunc = flags.trunc_override > 0 ? flags.trunc_override : 10;
    Rng rng(flags.seed_set ? flags.seed : 11);
    int agree = 0;
    for (int i = 0; i < count; ++i) {
      Vec p = random_offcircle_poly(rng, flags.degree);
      ClassicalCompareResult r = classical_compare_poly(p, trunc, 1e-6);
      std::string tag = "poly-" + std::to_string(i);
      rb.add_row(tag + "-outer-match", r.outer_resid, 1e-6);
      rb.add_row(tag + "-inner-match", r.inner_resid, 1e-6);
      rb.add_row(tag + "-element-outer-match", r.element_outer_resid, 1e-6);
      rb.add_row(tag + "-element-inner-match", r.element_inner_resid, 1e-6);
      if (r.pass) ++agree;
    }
    rb.set_dimension("agreeing_polynomials", agree);
    rb.set_dimension("count", count);
  });
}

Vec random_offcircle_poly(Rng& rng, int maxdeg) {
  int deg = rng.uniform_int(1, std::max(1, maxdeg));
  std::vector<Cx> roots;
  for (int i = 0; i < deg; ++i) {
    int where = rng.uniform_int(0, 2);
    double r;
    if (where == 0)
      r = 0.0 + 0.9 * rng.uniform();  // inside (includes roots at zero)
    else if (where == 1)
      r = 1.1 + 0.9 * rng.uniform();  // outside
    else
      r = 0.0;  // exact monomial factor
    double th = 2.0 * M_PI * rng.uniform();
    roots.push_back(Cx(r * std::cos(th), r * std::sin(th)));
  }
  PolySeries p = poly_from({rng.cgaussian()});
  for (Cx r : roots) p = poly_mul(p, poly_from({-r, Cx(1.0)}), deg);
  return p.coeff;
}

ClassicalCompareResult classical_compare_poly(const Vec& coeffs, int trunc, double match_tol) {
  ClassicalCompareResult out;
  PolySeries p;
  p.coeff = coeffs;
  BlaschkeSplit oracle = blaschke_inner_outer(p, trunc);

  InstanceSpec spec;
  spec.blocks = {1};
  spec.multiplicities = {1};
  spec.corr.kind = "free";
  spec.corr.d = 1;
  spec.trunc = trunc;
  BuiltInstance b = build_instance(spec);
  std::map<int, Vec> comp;
  for (int k = 0; k < coeffs.size() && k <= trunc; ++k) {
    Vec v(1);
    v(0) = coeffs(k);
    comp[k] = v;
  }
  Vec g = embed_payload_vector(*b.fock, comp);
  FactorOptions opts;
  VectorFactorization vf = factor_vector(b.fock, b.place, g, opts);

  auto aligned_max_diff = [&](const Vec& got, const Vec& want) {
    // single unimodular phase fixed on the largest oracle coefficient
    int pivot = 0;
    double best = 0.0;
    for (int k = 0; k < want.size(); ++k)
      if (std::abs(want(k)) > best) {
        best = std::abs(want(k));
        pivot = k;
      }
    if (best == 0.0 || pivot >= got.size() || std::abs(got(pivot)) == 0.0) return 1.0;
    Cx phase = want(pivot) / got(pivot);
    phase /= std::abs(phase);
    double diff = 0.0;
    for (int k = 0; k < want.size(); ++k) {
      Cx have = k < got.size() ? phase * got(k) : Cx(0.0);
      diff = std::max(diff, std::abs(have - want(k)));
    }
    return diff;
  };

  // outer part against the oracle outer series
  Vec y_coeff = Vec::Zero(trunc + 1);
  for (int k = 0; k <= vf.inner.dom->trunc(); ++k) {
    Vec c = vf.inner.dom->extract_component(vf.y, k);
    if (c.size() == 1) y_coeff(k) = c(0);
  }
  out.outer_resid = aligned_max_diff(y_coeff, oracle.outer);

  // inner part: the W-image of the vacuum as a series
  Vec wcol = vf.inner.w.col(0);
  Vec w_coeff = Vec::Zero(trunc + 1);
  for (int k = 0; k <= trunc; ++k) {
    Vec c = b.fock->extract_component(wcol, k);
    if (c.size() == 1) w_coeff(k) = c(0);
  }
  out.inner_resid = aligned_max_diff(w_coeff, oracle.inner);

  // the element route through the dual picture
  std::map<int, Vec> terms;
  for (int k = 0; k < coeffs.size() && k <= trunc; ++k) {
    Vec v(1);
    v(0) = coeffs(k);
    terms[k] = v;
  }
  PolyOperator x = poly_from_payload(*b.chain, terms);
  DualData dd = dual_correspondence(b.fock, *b.rep, spec.seed, spec.tol);
  FourierData fd = fourier_transform(dd, spec.tol);
  ElementFactorization ef = factor_element(b.fock, dd, fd, x, opts);
  Vec wcol2 = ef.w.col(0);
  Vec w2_coeff = Vec::Zero(trunc + 1);
  for (int k = 0; k <= trunc; ++k) {
    Vec c = b.fock->extract_component(wcol2, k);
    if (c.size() == 1) w2_coeff(k) = c(0);
  }
  out.element_inner_resid = aligned_max_diff(w2_coeff, oracle.inner);
  Vec ycol2 = ef.y.col(0);  // Y applied to the vacuum
  Vec y2_coeff = Vec::Zero(trunc + 1);
  for (int k = 0; k <= ef.dual_fc.inner.dom->trunc(); ++k) {
    Vec c = ef.dual_fc.inner.dom->extract_component(ycol2, k);
    if (c.size() == 1) y2_coeff(k) = c(0);
  }
  out.element_outer_resid = aligned_max_diff(y2_coeff, oracle.outer);

  out.pass = out.outer_resid <= match_tol && out.inner_resid <= match_tol &&
             out.element_outer_resid <= match_tol && out.element_inner_resid <= match_tol;
  return out;
}

json run_verify(const RunFlags& flags) {
  return guarded("verify", nullptr, [&](ReportBuilder& rb) {
    const int count = flags.count > 0 ? flags.count : 20;
    Rng rng(flags.seed_set ? flags.seed : 7);
    int ok = 0;
    for (int i = 0; i < count; ++i) {
      InstanceSpec spec = random_vector_instance(rng);
      std::string tag = "instance-" + std::to_string(i);
      try {
        BuiltInstance b = build_instance(spec);
        Vec g = embed_payload_vector(*b.fock, spec.vector_components);
        FactorOptions opts;
        opts.tol = spec.tol;
        VectorFactorization vf = factor_vector(b.fock, b.place, g, opts);
        double worst = 0.0;
        bool pass = vf.checks.pass;
        for (const auto& r : vf.checks.rows)
          if (r.tolerance <= 1e-6) worst = std::max(worst, r.residual);
        rb.add_row(tag + "-factor-vector", pass ? worst : 1.0, 1e-7);
        if (pass) ++ok;
      } catch (const NchError& ex) {
        rb.add_row(tag + "-error(" + err_name(ex.code()) + ")", 1.0, 0.5);
      }
    }
    rb.set_dimension("instances_passing", ok);
    rb.set_dimension("count", count);
  });
}

json dispatch_command(const std::string& command, const InstanceSpec* spec,
                      const RunFlags& flags) {
  if (command == "classical-compare") return run_classical_compare(flags);
  if (command == "verify") return run_verify(flags);
  require(spec != nullptr, Err::SchemaError, "this command needs an --instance file");
  if (command == "validate") return run_validate(*spec, flags);
  if (command == "factor-vector") return run_factor_vector(*spec, flags);
  if (command == "factor-commutant") return run_factor_commutant(*spec, flags);
  if (command == "factor-element") return run_factor_element(*spec, flags);
  if (command == "wold") return run_wold(*spec, flags);
  if (command == "dual") return run_dual(*spec, flags);
  if (command == "beurling") return run_beurling(*spec, flags);
  fail(Err::SchemaError, "unknown command: " + command);
}

}  // namespace nch
