#include "sympspec/geometry/chains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympspec/error.hpp"

namespace sympspec::geometry {

using symplectic::apply_jt;

namespace {

constexpr int kMaxAttempts = 20;
constexpr double kTol = linalg::kMembershipTolerance;

// Everything below works in B-coordinates, where the B-inner product is
// Euclidean and the prime map is J^T.

Subspace prime_of(const Subspace& w) {
  Matrix p(w.ambient(), w.dim());
  for (std::size_t j = 0; j < w.dim(); ++j) p.set_column(j, apply_jt(w.basis().column(j)));
  return Subspace::from_orthonormal(std::move(p));
}

Subspace sharp_of(const Subspace& w) {
  Subspace s = linalg::intersect(w, prime_of(w));
  if (s.dim() % 2 != 0) {
    std::ostringstream msg;
    msg << "sharp subspace came out with odd dimension " << s.dim();
    throw NumericalError(msg.str());
  }
  return s;
}

Subspace pair_span(const std::vector<Vector>& xs, std::size_t dim) {
  std::vector<Vector> cols = xs;
  for (const auto& x : xs) cols.push_back(apply_jt(x));
  return linalg::span_of(cols, dim);
}

Vector draw(const Subspace& f, Rng& rng, const char* what) {
  if (f.dim() == 0) {
    throw NumericalError(std::string("empty feasible subspace for ") + what);
  }
  return linalg::random_unit_vector(f, rng);
}

ChainExtension extend_coords(const std::vector<Subspace>& chain, const std::vector<Vector>& ws,
                             Rng& rng) {
  const std::size_t k = chain.size();
  const std::size_t dim = chain.front().ambient();
  if (k == 1) {
    Vector v = draw(sharp_of(chain[0]), rng, "chain base case");
    return {v, {v}, 1};
  }
  const std::vector<Subspace> tail(chain.begin() + 1, chain.end());
  const std::vector<Vector> tail_ws(ws.begin() + 1, ws.end());
  const ChainExtension inner = extend_coords(tail, tail_ws, rng);
  const Vector& u = inner.v;

  const Subspace big_u = pair_span(ws, dim);
  ChainExtension out;
  if (big_u.distance(u) <= kTol) {
    // The recursive family already spans U; extend it by a fresh pair.
    const Subspace f = linalg::intersect(sharp_of(chain[0]), linalg::orthogonal_complement(big_u));
    out.v = draw(f, rng, "chain extension");
    out.vs.push_back(out.v);
  } else {
    out.v = linalg::normalized(linalg::subtract(u, big_u.project(u)));
    const Subspace u0 = linalg::sum(big_u, pair_span({out.v}, dim));
    const Subspace taken = pair_span(inner.vs, dim);
    const Subspace f = linalg::intersect(u0, linalg::orthogonal_complement(taken));
    out.vs.push_back(draw(f, rng, "chain extension"));
  }
  out.vs.insert(out.vs.end(), inner.vs.begin(), inner.vs.end());
  return out;
}

struct DualCoords {
  std::vector<Vector> v;
  std::vector<Vector> w;
};

DualCoords dual_coords(const std::vector<Subspace>& vc, const std::vector<Subspace>& wc,
                       std::size_t k, Rng& rng) {
  const std::size_t dim = vc.front().ambient();
  if (k == 1) {
    const Vector x =
        draw(linalg::intersect(sharp_of(vc[0]), sharp_of(wc[0])), rng, "dual chain base case");
    return {{x}, {x}};
  }
  DualCoords prev = dual_coords(vc, wc, k - 1, rng);
  std::vector<Subspace> s(k);
  for (std::size_t j = 0; j < k; ++j) s[j] = linalg::intersect(vc[k - 1], wc[j]);
  const ChainExtension ext = extend_coords(s, prev.w, rng);

  const Subspace taken = pair_span(prev.v, dim);
  prev.v.push_back(linalg::normalized(linalg::subtract(ext.v, taken.project(ext.v))));
  return {std::move(prev.v), ext.vs};
}

double worst_membership(const std::vector<Vector>& xs, const std::vector<Subspace>& spaces,
                        const SymplecticBasis& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (const Vector& y : {xs[j], b_complement(xs[j], b)}) {
      worst = std::max(worst, spaces[j].distance(y) / linalg::norm2(y));
    }
  }
  return worst;
}

Subspace ambient_pair_span(const std::vector<Vector>& xs, const SymplecticBasis& b) {
  std::vector<Vector> cols = xs;
  for (const auto& x : xs) cols.push_back(b_complement(x, b));
  return linalg::span_of(cols, b.ambient());
}

void require_full(const SymplecticBasis& b) {
  if (!b.spans_ambient()) throw ValidationError("chain constructions need a full symplectic basis");
}

std::vector<Subspace> to_coords(const std::vector<Subspace>& spaces, const SymplecticBasis& b) {
  std::vector<Subspace> out;
  out.reserve(spaces.size());
  for (const auto& s : spaces) {
    out.push_back(b.to_coordinates(s));
    if (out.back().dim() != s.dim()) throw NumericalError("rank lost mapping a subspace to coordinates");
  }
  return out;
}

}  // namespace

void validate_index_set(const std::vector<std::size_t>& index_set, std::size_t n) {
  if (index_set.empty()) throw ValidationError("index set is empty");
  for (std::size_t j = 0; j < index_set.size(); ++j) {
    if (index_set[j] < 1 || index_set[j] > n) {
      std::ostringstream msg;
      msg << "index " << index_set[j] << " outside 1.." << n;
      throw ValidationError(msg.str());
    }
    if (j > 0 && index_set[j] <= index_set[j - 1]) {
      throw ValidationError("index set must be strictly increasing");
    }
  }
}

void SubspaceChain::validate(bool exact_dims) const {
  if (subspaces.empty()) throw ValidationError("empty chain");
  if (subspaces.size() != index_set.size()) throw ValidationError("chain length differs from index set");
  const std::size_t dim = ambient();
  if (dim % 2 != 0) throw ValidationError("chain ambient dimension must be even");
  const std::size_t n = dim / 2;
  validate_index_set(index_set, n);
  for (std::size_t j = 0; j < subspaces.size(); ++j) {
    const Subspace& s = subspaces[j];
    if (s.ambient() != dim) throw ValidationError("chain members live in different spaces");
    const std::size_t want = direction == ChainDirection::Increasing ? n + index_set[j]
                                                                     : 2 * n - index_set[j] + 1;
    if (exact_dims ? s.dim() != want : s.dim() < want) {
      std::ostringstream msg;
      msg << "chain member " << j + 1 << " has dimension " << s.dim() << ", expected "
          << (exact_dims ? "" : "at least ") << want;
      throw ValidationError(msg.str());
    }
    if (j > 0) {
      const Subspace& small = direction == ChainDirection::Increasing ? subspaces[j - 1] : s;
      const Subspace& large = direction == ChainDirection::Increasing ? s : subspaces[j - 1];
      if (!large.contains(small, kTol)) {
        std::ostringstream msg;
        msg << "chain members " << j << " and " << j + 1 << " are not nested";
        throw ValidationError(msg.str());
      }
    }
  }
}

SubspaceChain canonical_decreasing_chain(const SymplecticBasis& b,
                                         const std::vector<std::size_t>& index_set) {
  require_full(b);
  const std::size_t n = b.half_rank();
  validate_index_set(index_set, n);
  SubspaceChain chain{{}, ChainDirection::Decreasing, index_set};
  for (std::size_t i : index_set) {
    std::vector<Vector> cols;
    for (std::size_t r = 0; r < n; ++r) cols.push_back(b.u(r));
    for (std::size_t r = i - 1; r < n; ++r) cols.push_back(b.v(r));
    chain.subspaces.push_back(linalg::span_of(cols, b.ambient()));
  }
  return chain;
}

SubspaceChain canonical_increasing_chain(const SymplecticBasis& b,
                                         const std::vector<std::size_t>& index_set) {
  require_full(b);
  const std::size_t n = b.half_rank();
  validate_index_set(index_set, n);
  SubspaceChain chain{{}, ChainDirection::Increasing, index_set};
  for (std::size_t i : index_set) {
    std::vector<Vector> cols;
    for (std::size_t r = 0; r < n; ++r) cols.push_back(b.u(r));
    for (std::size_t r = 0; r < i; ++r) cols.push_back(b.v(r));
    chain.subspaces.push_back(linalg::span_of(cols, b.ambient()));
  }
  return chain;
}

namespace {

SubspaceChain flag_chain(std::size_t n, const std::vector<std::size_t>& index_set, Rng& rng,
                         ChainDirection dir) {
  validate_index_set(index_set, n);
  const Matrix q = linalg::random_orthogonal(2 * n, rng);
  SubspaceChain chain{{}, dir, index_set};
  for (std::size_t i : index_set) {
    const std::size_t d = dir == ChainDirection::Increasing ? n + i : 2 * n - i + 1;
    chain.subspaces.push_back(Subspace::from_orthonormal(q.block(0, 0, 2 * n, d)));
  }
  return chain;
}

}  // namespace

SubspaceChain random_decreasing_chain(std::size_t n, const std::vector<std::size_t>& index_set,
                                      Rng& rng) {
  return flag_chain(n, index_set, rng, ChainDirection::Decreasing);
}

SubspaceChain random_increasing_chain(std::size_t n, const std::vector<std::size_t>& index_set,
                                      Rng& rng) {
  return flag_chain(n, index_set, rng, ChainDirection::Increasing);
}

std::vector<std::size_t> random_index_set(std::size_t n, Rng& rng) {
  if (n == 0) throw ValidationError("random_index_set: n must be positive");
  std::vector<std::size_t> out;
  while (out.empty()) {
    for (std::size_t i = 1; i <= n; ++i)
      if (rng.next_u64() & 1U) out.push_back(i);
  }
  return out;
}

ChainExtension chain_extend(const std::vector<Subspace>& chain, const std::vector<Vector>& ws,
                            const SymplecticBasis& b, Rng& rng) {
  require_full(b);
  const std::size_t k = chain.size();
  const std::size_t n = b.half_rank();
  if (k == 0) throw ValidationError("chain_extend: empty chain");
  if (ws.size() + 1 != k) throw ValidationError("chain_extend: need k-1 vectors for k subspaces");
  for (std::size_t j = 0; j < k; ++j) {
    if (chain[j].ambient() != b.ambient()) throw ValidationError("chain_extend: ambient mismatch");
    if (chain[j].dim() < n + k - j) {
      std::ostringstream msg;
      msg << "chain_extend: dim W_" << j + 1 << " = " << chain[j].dim() << " < " << n + k - j;
      throw ValidationError(msg.str());
    }
    if (j > 0 && !chain[j - 1].contains(chain[j], kTol)) {
      throw ValidationError("chain_extend: chain is not decreasing");
    }
  }
  for (std::size_t j = 0; j < ws.size(); ++j) {
    if (!in_sharp(ws[j], chain[j], b)) {
      throw ValidationError("chain_extend: w_j is not in the sharp part of W_j");
    }
  }
  if (b_orthosymplectic_defect(ws, b) > kTol) {
    throw ValidationError("chain_extend: w's are not B-orthonormal and skew-orthogonal");
  }

  const std::vector<Subspace> cc = to_coords(chain, b);
  std::vector<Vector> wc;
  for (const auto& w : ws) wc.push_back(b.coordinates(w));
  const Subspace target_base = ambient_pair_span(ws, b);

  std::string last_failure;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    try {
      ChainExtension c = extend_coords(cc, wc, rng);
      ChainExtension out;
      out.v = b.from_coordinates(c.v);
      for (const auto& x : c.vs) out.vs.push_back(b.from_coordinates(x));
      out.attempts = static_cast<std::size_t>(attempt);

      double skew = 0.0;
      for (const auto& w : ws) skew = std::max(skew, std::abs(symplectic::symplectic_inner(w, out.v)));
      const bool ok =
          in_sharp(out.v, chain[0], b) && skew <= kTol &&
          b_orthosymplectic_defect(out.vs, b) <= kTol &&
          worst_membership(out.vs, chain, b) <= kTol &&
          linalg::subspace_distance(ambient_pair_span(out.vs, b),
                                    linalg::sum(target_base, ambient_pair_span({out.v}, b))) <= kTol;
      if (ok) return out;
      last_failure = "postcondition check failed";
    } catch (const NumericalError& e) {
      last_failure = e.what();
    }
  }
  throw NumericalError("chain_extend: gave up after 20 attempts (" + last_failure + ")");
}

DualChainResult dual_chain_construct(const SubspaceChain& increasing,
                                     const SubspaceChain& decreasing, const SymplecticBasis& b,
                                     Rng& rng) {
  require_full(b);
  if (increasing.direction != ChainDirection::Increasing ||
      decreasing.direction != ChainDirection::Decreasing) {
    throw ValidationError("dual_chain_construct: chain directions swapped");
  }
  if (increasing.index_set != decreasing.index_set) {
    throw ValidationError("dual_chain_construct: chains use different index sets");
  }
  if (increasing.ambient() != b.ambient() || decreasing.ambient() != b.ambient()) {
    throw ValidationError("dual_chain_construct: ambient mismatch");
  }
  increasing.validate();
  decreasing.validate();

  const std::size_t k = increasing.size();
  const std::vector<Subspace> vc = to_coords(increasing.subspaces, b);
  const std::vector<Subspace> wc = to_coords(decreasing.subspaces, b);

  std::string last_failure;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    try {
      const DualCoords c = dual_coords(vc, wc, k, rng);
      DualChainResult out;
      for (const auto& x : c.v) out.v.push_back(b.from_coordinates(x));
      for (const auto& x : c.w) out.w.push_back(b.from_coordinates(x));
      out.attempts = static_cast<std::size_t>(attempt);
      out.v_defect = b_orthosymplectic_defect(out.v, b);
      out.w_defect = b_orthosymplectic_defect(out.w, b);
      out.span_angle =
          linalg::subspace_distance(ambient_pair_span(out.v, b), ambient_pair_span(out.w, b));
      out.membership = std::max(worst_membership(out.v, increasing.subspaces, b),
                                worst_membership(out.w, decreasing.subspaces, b));
      if (out.v_defect <= kTol && out.w_defect <= kTol && out.span_angle <= kTol &&
          out.membership <= kTol) {
        return out;
      }
      std::ostringstream msg;
      msg << "postconditions: defects " << out.v_defect << ", " << out.w_defect << ", angle "
          << out.span_angle << ", membership " << out.membership;
      last_failure = msg.str();
    } catch (const NumericalError& e) {
      last_failure = e.what();
    }
  }
  throw NumericalError("dual_chain_construct: gave up after 20 attempts (" + last_failure + ")");
}

double TraceCheck::relative_gap() const {
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

TraceCheck same_span_trace_check(const Matrix& a, const symplectic::SymplecticTupleSet& x,
                                 const symplectic::SymplecticTupleSet& v,
                                 const SymplecticBasis& eigenbasis) {
  require_full(eigenbasis);
  if (x.size() == 0 || x.size() != v.size()) {
    throw ValidationError("same_span_trace_check: tuples must be nonempty and of equal size");
  }
  if (a.rows() != eigenbasis.ambient() || x.ambient() != a.rows() || v.ambient() != a.rows()) {
    throw ValidationError("same_span_trace_check: dimension mismatch");
  }
  auto b_defect = [&](const symplectic::SymplecticTupleSet& t) {
    const Matrix c = eigenbasis.coordinates(t.matrix());
    const double gram = linalg::frobenius_norm(linalg::transpose_times(c, c) -
                                               Matrix::identity(c.cols()));
    return std::max(gram, t.defect());
  };
  if (b_defect(x) > kTol || b_defect(v) > kTol) {
    throw ValidationError("same_span_trace_check: tuple is not B-orthosymplectic");
  }
  const Subspace sx = linalg::orthonormalize(x.matrix());
  const Subspace sv = linalg::orthonormalize(v.matrix());
  if (linalg::subspace_distance(sx, sv) > kTol) {
    throw ValidationError("same_span_trace_check: tuples span different subspaces");
  }

  const std::size_t n = eigenbasis.half_rank();
  Vector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector u = eigenbasis.u(i);
    const Vector w = eigenbasis.v(i);
    d[i] = 0.5 * (linalg::dot(u, a * u) + linalg::dot(w, a * w));
  }
  const BDiagonalOperator dt(eigenbasis, d);

  auto quad = [&](const symplectic::SymplecticTupleSet& t, double& direct, double& op) {
    direct = op = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      direct += linalg::dot(t.x[j], a * t.x[j]) + linalg::dot(t.y[j], a * t.y[j]);
      op += dt.quadratic(t.x[j]) + dt.quadratic(t.y[j]);
    }
  };
  TraceCheck out;
  quad(x, out.lhs, out.lhs_operator);
  quad(v, out.rhs, out.rhs_operator);
  return out;
}

}  // namespace sympspec::geometry
