// Copyright 2026 The kidecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kidecomp/staralgebra.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

namespace kidecomp {
namespace {

constexpr double kLeakageTol = 1e-8;
constexpr int kMaxReseeds = 8;

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

// Incremental Gram-Schmidt over vectorized matrices.
class SpanBuilder {
 public:
  SpanBuilder(Index d, double rel_tol, double abs_tol)
      : d_(d), rel_tol_(rel_tol), abs_tol_(abs_tol) {}

  bool add(const ComplexMatrix& m) {
    ComplexVector v = vec(m);
    const double norm = v.norm();
    if (norm <= abs_tol_) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : columns_) v -= q * q.dot(v);
    }
    const double rest = v.norm();
    if (rest <= rel_tol_ * norm) return false;
    columns_.push_back(v / rest);
    if (static_cast<Index>(columns_.size()) > d_ * d_) {
      raise(ErrorCode::kBasisOverflow, "span exceeds d^2; tolerances are too tight");
    }
    return true;
  }

  Index size() const { return static_cast<Index>(columns_.size()); }
  ComplexMatrix element(Index i) const { return unvec(columns_[i], d_); }

  AlgebraBasis finish() const {
    AlgebraBasis out;
    out.dim = d_;
    for (const auto& c : columns_) out.basis.push_back(unvec(c, d_));
    return out;
  }

 private:
  Index d_;
  double rel_tol_;
  double abs_tol_;
  std::vector<ComplexVector> columns_;
};

void check_square_family(std::span<const ComplexMatrix> gens) {
  if (gens.empty()) raise(ErrorCode::kDimensionMismatch, "no generators");
  const Index d = gens[0].rows();
  for (const auto& g : gens) {
    if (g.rows() != d || g.cols() != d) {
      raise(ErrorCode::kDimensionMismatch, "generators must be square and share a dimension");
    }
  }
}

// Orthonormal basis of span(gens), used to shrink the stacked commutator map.
std::vector<ComplexMatrix> span_reduce(std::span<const ComplexMatrix> gens, bool with_adjoints,
                                       const Tolerances& tol) {
  const Index d = gens[0].rows();
  SpanBuilder span(d, tol.rank, tol.zero);
  for (const auto& g : gens) {
    span.add(g);
    if (with_adjoints) span.add(g.adjoint());
  }
  std::vector<ComplexMatrix> out;
  for (Index i = 0; i < span.size(); ++i) out.push_back(span.element(i));
  return out;
}

ComplexMatrix commutator_map(std::span<const ComplexMatrix> action_a,
                             std::span<const ComplexMatrix> action_b) {
  // vec(L A - B L) = (A^T (x) I_b - I_a (x) B) vec(L)
  const Index da = action_a[0].rows();
  const Index db = action_b[0].rows();
  const Index n = da * db;
  const auto k = static_cast<Index>(action_a.size());
  ComplexMatrix stacked = ComplexMatrix::Zero(k * n, n);
  const ComplexMatrix ia = ComplexMatrix::Identity(da, da);
  const ComplexMatrix ib = ComplexMatrix::Identity(db, db);
  for (Index i = 0; i < k; ++i) {
    stacked.middleRows(i * n, n) =
        kron(action_a[i].transpose(), ib) - kron(ia, action_b[i]);
  }
  return stacked;
}

// Fixed-coefficient combination sum_i c_i g_i, made Hermitian when asked.
ComplexMatrix pencil(std::span<const ComplexMatrix> gens, bool symmetrize) {
  std::mt19937_64 engine(0x6a09e667f3bcc909ULL);
  auto draw = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 - 0.5; };
  ComplexMatrix p = ComplexMatrix::Zero(gens[0].rows(), gens[0].cols());
  for (const auto& g : gens) {
    if (symmetrize) {
      const Complex c(draw(), draw());
      p += c * g + std::conj(c) * g.adjoint();
    } else {
      p += draw() * g;
    }
  }
  return hermitian_part(p);
}

// Solutions L of L a_i = b_i L written as L = U_b Y U_a^dagger, where the
// columns of U diagonalize fixed pencils and Y lives on the cells joining
// matching pencil eigenvalues.
struct PencilSolve {
  ComplexMatrix ua;
  ComplexMatrix ub;
  std::vector<std::pair<Index, Index>> cells;  // (row in b, column in a)
  ComplexMatrix y;                             // one solution per column
};

std::optional<PencilSolve> pencil_solve(std::span<const ComplexMatrix> action_a,
                                        std::span<const ComplexMatrix> action_b,
                                        bool symmetrize, bool allow_full, double scale,
                                        const Tolerances& tol) {
  if (!symmetrize) {
    for (auto set : {action_a, action_b})
      for (const auto& g : set)
        if ((g - g.adjoint()).norm() > 1e-12 * std::max(1.0, g.norm())) return std::nullopt;
  }
  const Index da = action_a[0].rows();
  const Index db = action_b[0].rows();
  const EigenSystem ea = hermitian_eig(pencil(action_a, symmetrize));
  const EigenSystem eb = hermitian_eig(pencil(action_b, symmetrize));
  const double spread = std::max(ea.values.cwiseAbs().maxCoeff(), eb.values.cwiseAbs().maxCoeff());
  PencilSolve ps;
  ps.ua = ea.vectors;
  ps.ub = eb.vectors;
  const double delta = std::sqrt(tol.rank) * spread;
  for (Index q = 0; q < da; ++q)
    for (Index p = 0; p < db; ++p)
      if (std::abs(eb.values(p) - ea.values(q)) <= delta) ps.cells.emplace_back(p, q);
  const auto m = static_cast<Index>(ps.cells.size());
  const Index n = da * db;
  if (m == n && !allow_full) return std::nullopt;
  if (m == 0) {
    ps.y = ComplexMatrix(0, 0);
    return ps;
  }

  ComplexMatrix r(0, m);
  for (std::size_t i = 0; i < action_a.size(); ++i) {
    const ComplexMatrix a = ea.vectors.adjoint() * action_a[i] * ea.vectors;
    const ComplexMatrix b = eb.vectors.adjoint() * action_b[i] * eb.vectors;
    ComplexMatrix c = ComplexMatrix::Zero(r.rows() + n, m);
    c.topRows(r.rows()) = r;
    for (Index j = 0; j < m; ++j) {
      const auto [p, q] = ps.cells[static_cast<std::size_t>(j)];
      for (Index col = 0; col < da; ++col) c(r.rows() + p + col * db, j) += a(q, col);
      for (Index row = 0; row < db; ++row) c(r.rows() + row + q * db, j) -= b(row, p);
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(c);
    const Index keep = std::min(c.rows(), m);
    r = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
  }
  ps.y = nullspace(r, tol.rank, tol.zero, scale);
  return ps;
}

ComplexMatrix cell_matrix(const PencilSolve& ps, const ComplexVector& y) {
  ComplexMatrix lp = ComplexMatrix::Zero(ps.ub.cols(), ps.ua.cols());
  for (std::size_t j = 0; j < ps.cells.size(); ++j) {
    lp(ps.cells[j].first, ps.cells[j].second) = y(static_cast<Index>(j));
  }
  return ps.ub * lp * ps.ua.adjoint();
}

// vec(L) for every solution, as the full commutator_map solve returns them.
ComplexMatrix solution_columns(const PencilSolve& ps) {
  const Index n = ps.ua.cols() * ps.ub.cols();
  ComplexMatrix out(n, ps.y.cols());
  for (Index k = 0; k < ps.y.cols(); ++k) out.col(k) = vec(cell_matrix(ps, ps.y.col(k)));
  return out;
}

// Orthonormal Hermitian basis of an adjoint-closed solution space (a = b).
std::vector<ComplexMatrix> hermitian_solutions(const PencilSolve& ps) {
  const Index d = ps.ua.cols();
  const auto m = static_cast<Index>(ps.cells.size());
  const Index k = ps.y.cols();
  std::vector<ComplexMatrix> out;
  if (k == 0) return out;
  // Y -> Y^dagger permutes cells when U_a = U_b.
  std::vector<Index> where(static_cast<std::size_t>(d * d), -1);
  for (Index j = 0; j < m; ++j) {
    const auto [p, q] = ps.cells[static_cast<std::size_t>(j)];
    where[static_cast<std::size_t>(p + q * d)] = j;
  }
  std::vector<Index> flip(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    const auto [p, q] = ps.cells[static_cast<std::size_t>(j)];
    flip[static_cast<std::size_t>(j)] = where[static_cast<std::size_t>(q + p * d)];
  }
  RealMatrix parts(2 * m, 2 * k);
  for (Index c = 0; c < k; ++c) {
    for (Index j = 0; j < m; ++j) {
      const Complex y = ps.y(j, c);
      const Complex yt = std::conj(ps.y(flip[static_cast<std::size_t>(j)], c));
      const Complex re = 0.5 * (y + yt);
      const Complex im = Complex(0.0, -0.5) * (y - yt);
      parts(j, 2 * c) = re.real();
      parts(m + j, 2 * c) = re.imag();
      parts(j, 2 * c + 1) = im.real();
      parts(m + j, 2 * c + 1) = im.imag();
    }
  }
  const Eigen::ColPivHouseholderQR<RealMatrix> qr(parts);
  const RealMatrix q = qr.householderQ() * RealMatrix::Identity(2 * m, k);
  for (Index c = 0; c < k; ++c) {
    const ComplexVector y =
        q.col(c).head(m).cast<Complex>() + Complex(0.0, 1.0) * q.col(c).tail(m).cast<Complex>();
    out.push_back(hermitian_part(cell_matrix(ps, y)));
  }
  return out;
}

// E_ii, (E_ij + E_ji)/sqrt2, i(E_ij - E_ji)/sqrt2.
std::vector<ComplexMatrix> hermitian_matrix_units(Index d) {
  std::vector<ComplexMatrix> out;
  const double h = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, i) = 1.0;
    out.push_back(std::move(e));
    for (Index j = i + 1; j < d; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(i, j) = s(j, i) = h;
      out.push_back(std::move(s));
      ComplexMatrix t = ComplexMatrix::Zero(d, d);
      t(i, j) = Complex(0.0, h);
      t(j, i) = Complex(0.0, -h);
      out.push_back(std::move(t));
    }
  }
  return out;
}

void fix_phase_and_norm(ComplexMatrix& m) {
  const double norm = m.norm();
  if (norm > 0.0) m /= norm;
  Index best = 0;
  double best_mag = -1.0;
  for (Index i = 0; i < m.size(); ++i) {
    const double mag = std::abs(m.data()[i]);
    // Prefer the earliest entry among near-ties so the choice is stable.
    if (mag > best_mag * (1.0 + 1e-12) + 1e-14) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag > 0.0) m *= std::conj(m.data()[best]) / best_mag;
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t idx) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (idx + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Commutant of the action restricted to the invariant subspace with isometry
// `w`, as the compression w^dagger C w. Gram spectrum is {0, 1}.
AlgebraBasis compress(const AlgebraBasis& comm, const ComplexMatrix& w) {
  const Index m = w.cols();
  const Index count = comm.size();
  ComplexMatrix cols(m * m, count);
  for (Index i = 0; i < count; ++i) {
    cols.col(i) = vec(w.adjoint() * comm.basis[static_cast<std::size_t>(i)] * w);
  }
  AlgebraBasis out;
  out.dim = m;
  if (m * m < count) {
    // same nonzero spectrum, smaller matrix
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(cols * cols.adjoint()));
    for (Index i = 0; i < m * m; ++i) {
      if (es.eigenvalues()(i) > 0.5) out.basis.push_back(unvec(es.eigenvectors().col(i), m));
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(cols.adjoint() * cols));
  for (Index i = 0; i < count; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 0.5) out.basis.push_back(unvec(cols * es.eigenvectors().col(i) / std::sqrt(lam), m));
  }
  return out;
}

void split_simple(std::span<const ComplexMatrix> gens, const ComplexMatrix& basis,
                  const AlgebraBasis& comm, std::uint64_t seed, const Tolerances& tol,
                  std::vector<ComplexMatrix>& out) {
  const Index m = basis.cols();
  if (m == 1 || comm.size() <= 1) {
    out.push_back(basis);
    return;
  }
  const ComplexMatrix sample = hermitian_part(comm.project(seeded_random_hermitian(m, seed)));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sample);
  const RealVector& ev = es.eigenvalues();
  const double spread = ev(m - 1) - ev(0);
  if (!(spread > tol.zero)) {
    raise(ErrorCode::kDegenerateSample, "commutant sample is scalar");
  }
  std::vector<Index> starts{0};
  for (Index i = 1; i < m; ++i) {
    if (ev(i) - ev(i - 1) >= tol.cluster * spread) starts.push_back(i);
  }
  starts.push_back(m);
  if (starts.size() <= 2) {
    raise(ErrorCode::kDegenerateSample, "commutant sample has a single cluster");
  }
  for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
    const ComplexMatrix w = es.eigenvectors().middleCols(starts[c], starts[c + 1] - starts[c]);
    const ComplexMatrix sub = basis * w;
    if (invariance_leakage(gens, sub) > kLeakageTol) {
      raise(ErrorCode::kDegenerateSample, "eigenvalue cluster is not an invariant subspace");
    }
    if (sub.cols() == 1) {
      out.push_back(sub);
      continue;
    }
    split_simple(gens, sub, compress(comm, w), child_seed(seed, c), tol, out);
  }
}

}  // namespace

double AlgebraBasis::distance_to_span(const ComplexMatrix& m) const {
  return (m - project(m)).norm();
}

ComplexMatrix AlgebraBasis::project(const ComplexMatrix& m) const {
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& b : basis) out += b * b.conjugate().cwiseProduct(m).sum();
  return out;
}

AlgebraBasis generate_algebra(std::span<const ComplexMatrix> generators, bool include_identity,
                              const Tolerances& tol) {
  check_square_family(generators);
  const Index d = generators[0].rows();
  SpanBuilder span(d, tol.rank, tol.zero);
  std::vector<ComplexMatrix> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    if (hermiticity_defect(g) > tol.sym * std::max(1.0, g.norm())) letters.push_back(g.adjoint());
  }
  if (include_identity) span.add(ComplexMatrix::Identity(d, d));
  for (const auto& g : letters) span.add(g);

  // Breadth-first: left-multiply each newly added element by every letter.
  Index frontier_begin = 0;
  while (frontier_begin < span.size()) {
    const Index frontier_end = span.size();
    for (Index i = frontier_begin; i < frontier_end; ++i) {
      const ComplexMatrix e = span.element(i);
      for (const auto& g : letters) span.add(g * e);
    }
    frontier_begin = frontier_end;
  }
  // Pairwise closure passes.
  bool grew = true;
  while (grew) {
    grew = false;
    const Index n = span.size();
    for (Index i = 0; i < n; ++i) {
      const ComplexMatrix a = span.element(i);
      grew |= span.add(a.adjoint());
      for (Index j = 0; j < n; ++j) grew |= span.add(a * span.element(j));
    }
  }
  return span.finish();
}

AlgebraBasis commutant(const AlgebraBasis& algebra, const Tolerances& tol) {
  if (algebra.basis.empty()) {
    return AlgebraBasis{algebra.dim, hermitian_matrix_units(algebra.dim)};
  }
  return commutant_of(algebra.basis, tol);
}

AlgebraBasis commutant_of(std::span<const ComplexMatrix> generators, const Tolerances& tol) {
  check_square_family(generators);
  const Index d = generators[0].rows();
  const std::vector<ComplexMatrix> reduced = span_reduce(generators, true, tol);
  AlgebraBasis out;
  out.dim = d;
  if (reduced.empty()) {
    return commutant(AlgebraBasis{d, {}}, tol);
  }
  bool scalar = true;
  for (const auto& g : reduced) {
    const Complex mean = g.trace() / static_cast<double>(d);
    scalar &= (g - mean * ComplexMatrix::Identity(d, d)).norm() <= tol.rank;
  }
  if (scalar) {
    out.basis = hermitian_matrix_units(d);
    return out;
  }
  // Span basis elements have unit norm, so the map scale is 1.
  const std::optional<PencilSolve> ps = pencil_solve(reduced, reduced, true, true, 1.0, tol);
  out.basis = hermitian_solutions(*ps);
  return out;
}

std::vector<ComplexMatrix> restrict_to(std::span<const ComplexMatrix> generators,
                                       const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(basis.adjoint() * g * basis);
  return out;
}

double invariance_leakage(std::span<const ComplexMatrix> generators, const ComplexMatrix& basis) {
  double worst = 0.0;
  for (const auto& g : generators) {
    const ComplexMatrix image = g * basis;
    const ComplexMatrix leak = image - basis * (basis.adjoint() * image);
    worst = std::max(worst, leak.norm() / std::max(1.0, g.norm()));
  }
  return worst;
}

std::vector<ComplexMatrix> intertwiners(std::span<const ComplexMatrix> action_a,
                                        std::span<const ComplexMatrix> action_b,
                                        const Tolerances& tol) {
  if (action_a.empty() || action_a.size() != action_b.size()) {
    raise(ErrorCode::kDimensionMismatch, "intertwiners need matching generator lists");
  }
  const Index da = action_a[0].rows();
  const Index db = action_b[0].rows();
  double scale = 0.0;
  for (const auto& a : action_a) scale = std::max(scale, a.norm());
  for (const auto& b : action_b) scale = std::max(scale, b.norm());
  const std::optional<PencilSolve> fast = pencil_solve(action_a, action_b, false, false, scale, tol);
  const ComplexMatrix null = fast ? solution_columns(*fast)
                                  : nullspace(commutator_map(action_a, action_b), tol.rank,
                                              tol.zero, scale);
  std::vector<ComplexMatrix> out;
  for (Index c = 0; c < null.cols(); ++c) {
    ComplexMatrix lam = Eigen::Map<const ComplexMatrix>(null.col(c).data(), db, da);
    fix_phase_and_norm(lam);
    out.push_back(std::move(lam));
  }
  return out;
}

std::vector<ComplexMatrix> intertwiner_space(std::span<const ComplexMatrix> generators,
                                             const ComplexMatrix& basis_a,
                                             const ComplexMatrix& basis_b,
                                             const Tolerances& tol) {
  check_square_family(generators);
  if (invariance_leakage(generators, basis_a) > kLeakageTol ||
      invariance_leakage(generators, basis_b) > kLeakageTol) {
    raise(ErrorCode::kNotInvariant, "subspace is not invariant under the generators");
  }
  return intertwiners(restrict_to(generators, basis_a), restrict_to(generators, basis_b), tol);
}

IsotypicDecomposition isotypic_decompose(std::span<const ComplexMatrix> generators,
                                         std::uint64_t seed, const Tolerances& tol) {
  check_square_family(generators);
  const Index d = generators[0].rows();
  ComplexMatrix gram = ComplexMatrix::Zero(d, d);
  for (const auto& g : generators) gram += g.adjoint() * g;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gram_es(hermitian_part(gram), Eigen::EigenvaluesOnly);
  const double gmax = gram_es.eigenvalues()(d - 1);
  const double gmin = std::max(gram_es.eigenvalues()(0), 0.0);
  if (!(gmax > 0.0) || std::sqrt(gmin) <= tol.rank * std::sqrt(gmax)) {
    raise(ErrorCode::kSupportDeficient, "generators share a nontrivial kernel");
  }

  const AlgebraBasis comm = commutant_of(generators, tol);
  for (int attempt = 0; attempt < kMaxReseeds; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    std::vector<ComplexMatrix> simple;
    try {
      split_simple(generators, ComplexMatrix::Identity(d, d), comm, s, tol, simple);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kDegenerateSample) continue;
      throw;
    }

    IsotypicDecomposition out;
    out.dim = d;
    out.seed_used = s;
    std::vector<std::vector<ComplexMatrix>> actions;
    for (const auto& sub : simple) {
      out.residual_check = std::max(out.residual_check, invariance_leakage(generators, sub));
      std::vector<ComplexMatrix> act = restrict_to(generators, sub);
      bool placed = false;
      for (std::size_t c = 0; c < out.components.size() && !placed; ++c) {
        if (out.components[c].simple_dim != sub.cols()) continue;
        if (!intertwiners(actions[c], act, tol).empty()) {
          out.components[c].submodules.push_back(sub);
          placed = true;
        }
      }
      if (!placed) {
        out.components.push_back({{sub}, sub.cols()});
        actions.push_back(std::move(act));
      }
    }
    return out;
  }
  raise(ErrorCode::kDegenerateSample,
        "no clean commutant split after " + std::to_string(kMaxReseeds) + " seeds");
}

}  // namespace kidecomp
