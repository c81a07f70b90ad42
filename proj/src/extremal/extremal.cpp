#include "sympspec/extremal/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sympspec/error.hpp"
#include "sympspec/linalg/decompositions.hpp"
#include "sympspec/inequalities/majorization.hpp"

namespace sympspec::extremal {

using geometry::SymplecticBasis;

namespace {

constexpr double kMember = linalg::kMembershipTolerance;
constexpr double kNearEps[] = {1e-1, 1e-3, 1e-6};

double pair_value(const Matrix& a, const Vector& x, const Vector& y) {
  return 0.5 * (linalg::dot(x, a * x) + linalg::dot(y, a * y));
}

// W n {chosen}^{perp s}
Subspace feasible(const Subspace& w, const std::vector<Vector>& chosen) {
  if (chosen.empty()) return w;
  const Matrix c = Matrix::from_columns(chosen, w.ambient());
  const Matrix jw = symplectic::standard_form(w.ambient() / 2) * w.basis();
  const Subspace kernel = linalg::null_space(linalg::transpose_times(c, jw));
  if (kernel.dim() == 0) return Subspace(w.ambient());
  return linalg::orthonormalize(w.basis() * kernel.basis());
}

// Relative rounding bound eta of a sampled compression. Forming S^T A S
// perturbs A_M by E with ||E|| <~ dim eps ||S||_F^2 ||A||, and
// A_M + E >= (1 - eta) A_M for eta = ||E|| / lambda_min(A_M). Symplectic
// eigenvalues are monotone and homogeneous, so each moves by at most a
// factor eta, and log det by at most about dim eta.
double relative_rounding(const PositiveDefiniteMatrix& a, const SymplecticTupleSet& t,
                         const Matrix& a_m) {
  const double dim = static_cast<double>(a_m.rows());
  const double s2 = std::pow(linalg::frobenius_norm(t.matrix()), 2);
  const double e = dim * std::numeric_limits<double>::epsilon() * s2 * a.max_eigenvalue();
  const Vector lam = linalg::sym_eig(a_m).eigenvalues;
  const double lo = *std::min_element(lam.begin(), lam.end());
  return lo > 0.0 ? e / lo : std::numeric_limits<double>::infinity();
}

double tuple_scale(const SymplecticTupleSet& t) {
  return std::max(1.0, std::pow(linalg::frobenius_norm(t.matrix()), 2));
}

std::string describe(const SymplecticTupleSet& t, const std::string& how) {
  std::ostringstream s;
  s << how << " (k=" << t.size() << ")";
  return s.str();
}

void check_index_set(const PositiveDefiniteMatrix& a, const std::vector<std::size_t>& idx) {
  geometry::validate_index_set(idx, a.half_dim());
}

std::string fmt(const char* what, double value, double bound) {
  std::ostringstream s;
  s.precision(17);
  s << what << ": " << value << " vs " << bound;
  return s.str();
}

// Draws `opts.samples` tuples from the chain, half of them near `anchor`.
template <class Visit>
void sample_chain(const SubspaceChain& chain, const SymplecticTupleSet& anchor,
                  const ExtremalOptions& opts, Rng& rng, ExtremalCertificate& cert,
                  Visit&& visit) {
  const auto near = static_cast<std::size_t>(opts.near_optimal_fraction *
                                             static_cast<double>(opts.samples));
  for (std::size_t s = 0; s < opts.samples; ++s) {
    SampleOptions so;
    if (s < near) {
      so.anchor = &anchor;
      so.eps = kNearEps[s % std::size(kNearEps)];
    }
    TupleSample ts = sample_tuple_in_chain(chain, rng, so);
    if (!ts.tuple) {
      ++cert.skipped_samples;
      continue;
    }
    ++cert.samples;
    visit(*ts.tuple, s < near ? "near-optimal sample" : "uniform sample");
  }
}

void finalize(ExtremalCertificate& cert) {
  const double scale = std::max(1.0, std::abs(cert.claimed_value));
  cert.slack = cert.sampled_min - cert.claimed_value;
  if (cert.samples > 0 && cert.sampled_min - cert.claimed_value < -cert.tolerance * scale) {
    cert.violations.push_back(fmt("sampled value below claimed", cert.sampled_min,
                                  cert.claimed_value));
  }
  if (cert.witnesses > 0) {
    cert.upper_slack = cert.claimed_value - cert.witness_max;
    if (cert.upper_slack < -cert.tolerance * scale) {
      cert.violations.push_back(fmt("constructed witness above claimed", cert.witness_max,
                                    cert.claimed_value));
    }
  }
}

}  // namespace

PoincareWitness poincare_witness(const PositiveDefiniteMatrix& a, const Subspace& m,
                                 const WilliamsonDecomposition& w, Rng& rng) {
  const std::size_t n = a.half_dim();
  if (m.ambient() != 2 * n) throw ValidationError("poincare_witness: ambient mismatch");
  if (m.dim() < n + 1 || m.dim() > 2 * n) {
    throw ValidationError("poincare_witness: need n+1 <= dim M <= 2n");
  }
  const std::size_t k = 2 * n - m.dim() + 1;
  const SymplecticBasis b(w.m);
  std::vector<std::size_t> cols(n + k);
  for (std::size_t i = 0; i < n + k; ++i) cols[i] = i;
  const Subspace nk = linalg::orthonormalize(w.m.select_columns(cols));
  const Subspace x = linalg::intersect(m, nk);
  const Subspace sharp = geometry::subspace_prime_sharp(x, b).sharp;
  if (sharp.dim() == 0) throw NumericalError("poincare_witness: empty prime-invariant part");

  PoincareWitness out;
  const Vector raw = linalg::random_unit_vector(sharp, rng);
  out.u = linalg::scaled(raw, 1.0 / geometry::b_norm(raw, b));
  out.v = geometry::b_complement(out.u, b);
  out.value = pair_value(a.matrix(), out.u, out.v);
  return out;
}

TupleSample sample_tuple_in_chain(const SubspaceChain& chain, Rng& rng,
                                  const SampleOptions& opts) {
  if (chain.direction != geometry::ChainDirection::Decreasing) {
    throw ValidationError("sample_tuple_in_chain: chain must be decreasing");
  }
  chain.validate(false);
  const std::size_t k = chain.size();
  const std::size_t dim = chain.ambient();
  if (opts.anchor != nullptr && opts.anchor->size() != k) {
    throw ValidationError("sample_tuple_in_chain: anchor has the wrong size");
  }

  TupleSample out;
  while (out.attempts < opts.max_attempts) {
    ++out.attempts;
    SymplecticTupleSet t;
    t.x.resize(k);
    t.y.resize(k);
    std::vector<Vector> chosen;
    bool ok = true;
    for (std::size_t j = k; j-- > 0 && ok;) {
      const Subspace f = feasible(chain.subspaces[j], chosen);
      if (f.dim() < 2) {
        ok = false;
        break;
      }
      Vector x, y;
      if (opts.anchor != nullptr) {
        auto jitter = [&](const Vector& base) {
          Vector g = rng.normal_vector(dim);
          const double s = opts.eps * linalg::norm2(base) / std::sqrt(static_cast<double>(dim));
          return f.project(linalg::add(base, linalg::scaled(g, s)));
        };
        x = jitter(opts.anchor->x[j]);
        y = jitter(opts.anchor->y[j]);
      } else {
        // The skew-partner P_F(J^T x) pairs with x at <x, J y> = |P_F J^T x|^2,
        // so mixing it in keeps the pair away from degenerate scalings.
        x = linalg::random_unit_vector(f, rng);
        const Vector partner = linalg::normalized(f.project(symplectic::apply_jt(x)));
        const Vector g = linalg::random_unit_vector(f, rng);
        const double theta = rng.uniform(0.0, 1.5);
        y = linalg::add(linalg::scaled(partner, std::cos(theta)), linalg::scaled(g, std::sin(theta)));
      }
      const double pairing = symplectic::symplectic_inner(x, y);
      if (!(std::abs(pairing) > 1e-3 * linalg::norm2(x) * linalg::norm2(y))) {
        ok = false;
        break;
      }
      // x -> a x, y -> b y with a b <x, J y> = 1 keeps the pair's span; equal
      // norms keep ||S||_F small, which is what the compression's rounding
      // error scales with.
      const double nx = linalg::norm2(x), ny = linalg::norm2(y);
      x = linalg::scaled(x, std::sqrt(ny / (nx * std::abs(pairing))));
      y = linalg::scaled(y, std::copysign(std::sqrt(nx / (ny * std::abs(pairing))), pairing));
      chosen.push_back(x);
      chosen.push_back(y);
      t.x[j] = std::move(x);
      t.y[j] = std::move(y);
    }
    if (!ok) continue;
    bool members = true;
    for (std::size_t j = 0; j < k && members; ++j) {
      members = chain.subspaces[j].contains(t.x[j], kMember) &&
                chain.subspaces[j].contains(t.y[j], kMember);
    }
    if (members && t.defect() <= kMember * tuple_scale(t)) {
      out.tuple = std::move(t);
      return out;
    }
  }
  return out;
}

SymplecticTupleSet eigen_tuple(const WilliamsonDecomposition& w,
                               const std::vector<std::size_t>& index_set) {
  geometry::validate_index_set(index_set, w.half_dim());
  SymplecticTupleSet t;
  for (std::size_t i : index_set) {
    const auto p = w.pair(i - 1);
    t.x.push_back(p.u);
    t.y.push_back(p.v);
  }
  return t;
}

ExtremalCertificate maxmin_check(const PositiveDefiniteMatrix& a, std::size_t k, Rng& rng,
                                 const ExtremalOptions& opts) {
  const std::size_t n = a.half_dim();
  if (k < 1 || k > n) throw ValidationError("maxmin_check: k outside 1..n");
  const auto w = symplectic::williamson(a);
  const SymplecticBasis b(w.m);
  const Matrix& am = a.matrix();

  ExtremalCertificate cert;
  cert.kind = "maxmin";
  cert.tolerance = opts.tol;
  cert.claimed_value = w.d[k - 1];
  cert.witness = eigen_tuple(w, {k});
  const double at_eigen = cert.witness.half_trace_sum(am);
  cert.equality_gap = std::abs(at_eigen - cert.claimed_value);
  cert.achieved_at = "eigenpair (u_k, v_k)";

  const SubspaceChain chain = geometry::canonical_decreasing_chain(b, {k});
  sample_chain(chain, cert.witness, opts, rng, cert,
               [&](const SymplecticTupleSet& t, const char* how) {
                 const double v = t.half_trace_sum(am);
                 if (v < cert.sampled_min) {
                   cert.sampled_min = v;
                   cert.achieved_at = describe(t, how);
                 }
               });

  for (std::size_t c = 0; c < opts.chains; ++c) {
    const Subspace m = linalg::random_subspace(2 * n, 2 * n - k + 1, rng);
    try {
      const PoincareWitness pw = poincare_witness(a, m, w, rng);
      ++cert.witnesses;
      const double pairing = symplectic::symplectic_inner(pw.u, pw.v);
      if (std::abs(pairing - 1.0) > kMember) {
        cert.violations.push_back(fmt("poincare witness pairing", pairing, 1.0));
      }
      if (pw.value > cert.witness_max) {
        cert.witness_max = pw.value;
        cert.worst_upper_witness = SymplecticTupleSet{{pw.u}, {pw.v}};
      }
    } catch (const NumericalError&) {
      ++cert.failed_witnesses;
    }
  }

  finalize(cert);
  if (cert.equality_gap > opts.equality_tol * std::max(1.0, cert.claimed_value)) {
    cert.violations.push_back(fmt("eigenpair value", at_eigen, cert.claimed_value));
  }
  return cert;
}

namespace {

struct UpperWitness {
  geometry::DualChainResult chain;
  SymplecticTupleSet w_tuple;
  SymplecticTupleSet v_tuple;
};

// One random decreasing chain paired with the canonical increasing chain of
// the eigenbasis, then the dual-chain construction.
std::optional<UpperWitness> construct_upper(const SymplecticBasis& b,
                                            const std::vector<std::size_t>& idx, Rng& rng) {
  const std::size_t n = b.half_rank();
  const SubspaceChain wchain = geometry::random_decreasing_chain(n, idx, rng);
  const SubspaceChain vchain = geometry::canonical_increasing_chain(b, idx);
  try {
    UpperWitness u;
    u.chain = geometry::dual_chain_construct(vchain, wchain, b, rng);
    u.w_tuple = geometry::complement_tuple(u.chain.w, b);
    u.v_tuple = geometry::complement_tuple(u.chain.v, b);
    return u;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

}  // namespace

ExtremalCertificate wielandt_certify(const PositiveDefiniteMatrix& a,
                                     const std::vector<std::size_t>& index_set, Rng& rng,
                                     const ExtremalOptions& opts) {
  check_index_set(a, index_set);
  const auto w = symplectic::williamson(a);
  const SymplecticBasis b(w.m);
  const Matrix& am = a.matrix();

  ExtremalCertificate cert;
  cert.kind = "wielandt";
  cert.tolerance = opts.tol;
  for (std::size_t i : index_set) cert.claimed_value += w.d[i - 1];
  cert.witness = eigen_tuple(w, index_set);
  const double at_eigen = cert.witness.half_trace_sum(am);
  cert.equality_gap = std::abs(at_eigen - cert.claimed_value);
  cert.achieved_at = "eigen tuple";

  const SubspaceChain chain = geometry::canonical_decreasing_chain(b, index_set);
  sample_chain(chain, cert.witness, opts, rng, cert,
               [&](const SymplecticTupleSet& t, const char* how) {
                 const double v = t.half_trace_sum(am);
                 if (v < cert.sampled_min) {
                   cert.sampled_min = v;
                   cert.achieved_at = describe(t, how);
                 }
               });

  double worst_trace = 0.0;
  for (std::size_t c = 0; c < opts.chains; ++c) {
    auto up = construct_upper(b, index_set, rng);
    if (!up) {
      ++cert.failed_witnesses;
      continue;
    }
    ++cert.witnesses;
    const auto tc = geometry::same_span_trace_check(am, up->w_tuple, up->v_tuple, b);
    worst_trace = std::max(worst_trace, tc.relative_gap());
    const double value = up->w_tuple.half_trace_sum(am);
    if (value > cert.witness_max) {
      cert.witness_max = value;
      cert.worst_upper_witness = up->w_tuple;
    }
  }
  cert.metric("worst_trace_gap", worst_trace);

  finalize(cert);
  if (worst_trace > 1e-9) cert.violations.push_back(fmt("trace equality gap", worst_trace, 1e-9));
  if (cert.equality_gap > opts.equality_tol * std::max(1.0, cert.claimed_value)) {
    cert.violations.push_back(fmt("eigen tuple value", at_eigen, cert.claimed_value));
  }
  return cert;
}

ExtremalCertificate phi_extremal_check(const PositiveDefiniteMatrix& a,
                                       const std::vector<std::size_t>& index_set,
                                       const SpectralFunctional& phi, Rng& rng,
                                       const ExtremalOptions& opts) {
  if (!phi.admissible()) {
    throw ValidationError("functional '" + phi.name +
                          "' is not flagged Schur-concave, symmetric and monotone");
  }
  check_index_set(a, index_set);
  const auto w = symplectic::williamson(a);
  const SymplecticBasis b(w.m);
  const Matrix& am = a.matrix();

  Vector d_sel;
  for (std::size_t i : index_set) d_sel.push_back(w.d[i - 1]);
  double log_claimed_det = 0.0;
  for (double d : d_sel) log_claimed_det += 2.0 * std::log(d);

  ExtremalCertificate cert;
  cert.kind = "phi-extremal:" + phi.name;
  cert.tolerance = opts.tol;
  cert.claimed_value = phi(d_sel);
  cert.witness = eigen_tuple(w, index_set);
  const auto at_eigen = symplectic::compress(a, cert.witness);
  const double phi_eigen = phi(at_eigen.d_m);
  cert.equality_gap = std::abs(phi_eigen - cert.claimed_value);
  cert.achieved_at = "eigen tuple";

  double worst_domination = std::numeric_limits<double>::infinity();
  double worst_det = std::numeric_limits<double>::infinity();
  // Slacks plus their rounding bounds; the verdicts use these.
  double worst_det_excess = std::numeric_limits<double>::infinity();
  double worst_domination_excess = std::numeric_limits<double>::infinity();
  double max_eta = 0.0;
  const SubspaceChain chain = geometry::canonical_decreasing_chain(b, index_set);
  sample_chain(chain, cert.witness, opts, rng, cert,
               [&](const SymplecticTupleSet& t, const char* how) {
                 symplectic::Compression comp;
                 try {
                   comp = symplectic::compress(a, t);
                 } catch (const Error&) {
                   ++cert.skipped_samples;
                   --cert.samples;
                   return;
                 }
                 const double eta = relative_rounding(a, t, comp.a_m);
                 max_eta = std::max(max_eta, eta);
                 for (std::size_t j = 0; j < d_sel.size(); ++j) {
                   const double s = std::max(1.0, d_sel[j]);
                   const double gap = (comp.d_m[j] - d_sel[j]) / s;
                   worst_domination = std::min(worst_domination, gap);
                   worst_domination_excess =
                       std::min(worst_domination_excess, gap + eta * comp.d_m[j] / s);
                 }
                 const double det_slack = comp.log_det - log_claimed_det;
                 worst_det = std::min(worst_det, det_slack);
                 worst_det_excess = std::min(
                     worst_det_excess, det_slack + static_cast<double>(comp.a_m.rows()) * eta);
                 const double v = phi(comp.d_m);
                 if (v < cert.sampled_min) {
                   cert.sampled_min = v;
                   cert.achieved_at = describe(t, how);
                 }
               });
  if (cert.samples > 0) {
    cert.metric("worst_domination_excess", worst_domination_excess);
    cert.metric("worst_log_det_excess", worst_det_excess);
    cert.metric("max_relative_rounding", max_eta);
    if (worst_domination_excess < -opts.tol) {
      cert.violations.push_back(fmt("elementwise domination", worst_domination, 0.0));
    }
    if (worst_det_excess < std::log1p(-1e-8)) {
      cert.violations.push_back(fmt("det(A_M) below product", worst_det, 0.0));
    }
  }

  double worst_major = std::numeric_limits<double>::infinity();
  double worst_alpha = std::numeric_limits<double>::infinity();
  double worst_lemma = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < opts.chains; ++c) {
    auto up = construct_upper(b, index_set, rng);
    if (!up) {
      ++cert.failed_witnesses;
      continue;
    }
    ++cert.witnesses;
    const auto comp = symplectic::compress(a, up->w_tuple);
    const Vector alpha = up->v_tuple.half_traces(am);
    const double scale = std::max(1.0, cert.claimed_value);

    const inequalities::MajorizationVector ma(alpha), md(comp.d_m);
    worst_major = std::min(worst_major, inequalities::supermajorization_margin(ma, md) / scale);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      worst_alpha = std::min(worst_alpha, (d_sel[j] - alpha[j]) / std::max(1.0, d_sel[j]));
    }
    const double phi_u = phi(comp.d_m);
    const double phi_alpha = phi(alpha);
    worst_lemma = std::min(worst_lemma, (phi_alpha - phi_u) / scale);
    if (phi_u > cert.witness_max) {
      cert.witness_max = phi_u;
      cert.worst_upper_witness = up->w_tuple;
    }
  }
  if (cert.witnesses > 0) {
    cert.metric("worst_supermajorization_margin", worst_major);
    cert.metric("worst_half_trace_gap", worst_alpha);
    cert.metric("worst_lemma_gap", worst_lemma);
    if (worst_major < -opts.tol) {
      cert.violations.push_back(fmt("half-traces not supermajorised by d_U", worst_major, 0.0));
    }
    if (worst_alpha < -opts.tol) {
      cert.violations.push_back(fmt("half-trace above d_{i_j}", worst_alpha, 0.0));
    }
    if (worst_lemma < -opts.tol) {
      cert.violations.push_back(fmt("phi(d_U) above phi(alpha)", worst_lemma, 0.0));
    }
  }

  finalize(cert);
  if (cert.equality_gap > opts.tol * std::max(1.0, std::abs(cert.claimed_value))) {
    cert.violations.push_back(fmt("eigen tuple value", phi_eigen, cert.claimed_value));
  }
  return cert;
}

ExtremalCertificate det_product_check(const PositiveDefiniteMatrix& a,
                                      const std::vector<std::size_t>& index_set, Rng& rng,
                                      const ExtremalOptions& opts) {
  check_index_set(a, index_set);
  const auto w = symplectic::williamson(a);
  const SymplecticBasis b(w.m);

  double log_claimed = 0.0;
  for (std::size_t i : index_set) log_claimed += 2.0 * std::log(w.d[i - 1]);

  ExtremalCertificate cert;
  cert.kind = "det-product";
  cert.tolerance = 1e-8;
  cert.claimed_value = std::exp(log_claimed);
  cert.witness = eigen_tuple(w, index_set);
  const double log_eigen = symplectic::compress(a, cert.witness).log_det;
  cert.equality_gap = std::abs(std::expm1(log_eigen - log_claimed)) * cert.claimed_value;
  cert.achieved_at = "eigen tuple";

  double worst_log = std::numeric_limits<double>::infinity();
  double worst_excess = std::numeric_limits<double>::infinity();
  double max_eta = 0.0;
  const SubspaceChain chain = geometry::canonical_decreasing_chain(b, index_set);
  sample_chain(chain, cert.witness, opts, rng, cert,
               [&](const SymplecticTupleSet& t, const char* how) {
                 symplectic::Compression comp;
                 try {
                   comp = symplectic::compress(a, t);
                 } catch (const Error&) {
                   ++cert.skipped_samples;
                   --cert.samples;
                   return;
                 }
                 const double log_det = comp.log_det;
                 const double eta = relative_rounding(a, t, comp.a_m);
                 max_eta = std::max(max_eta, eta);
                 worst_excess = std::min(worst_excess, log_det - log_claimed +
                                                           static_cast<double>(comp.a_m.rows()) * eta);
                 if (log_det - log_claimed < worst_log) {
                   worst_log = log_det - log_claimed;
                   cert.achieved_at = describe(t, how);
                 }
               });
  if (cert.samples > 0) {
    cert.sampled_min = std::exp(log_claimed + worst_log);
    cert.slack = cert.sampled_min - cert.claimed_value;
    cert.metric("worst_log_det_excess", worst_excess);
    cert.metric("max_relative_rounding", max_eta);
    if (worst_excess < std::log1p(-1e-8)) {
      cert.violations.push_back(fmt("det(A_M) below product", cert.sampled_min, cert.claimed_value));
    }
  }
  if (std::abs(std::expm1(log_eigen - log_claimed)) > 1e-8) {
    cert.violations.push_back(fmt("eigen tuple determinant", std::exp(log_eigen), cert.claimed_value));
  }
  return cert;
}

}  // namespace sympspec::extremal
