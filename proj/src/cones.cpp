#include "hoqt/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "hoqt/error.hpp"
#include "hoqt/parprod.hpp"

namespace hoqt {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::member: return "member";
    case Decision::non_member: return "non_member";
    case Decision::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Method m) { return m == Method::choi ? "choi" : "definitional"; }

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Real-spanning Hermitian basis of d x d matrices: E_ii, E_ij + E_ji,
// i(E_ij - E_ji).
std::vector<Matrix> hermitian_basis(Index d) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      Matrix h = Matrix::Zero(d, d);
      if (i == j) {
        h(i, i) = 1.0;
        out.push_back(std::move(h));
        continue;
      }
      h(i, j) = 1.0;
      h(j, i) = 1.0;
      out.push_back(h);
      h(i, j) = Complex(0.0, 1.0);
      h(j, i) = Complex(0.0, -1.0);
      out.push_back(std::move(h));
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

Index max_leaf_dim(const Type& t, const SystemRegistry& reg) {
  if (t.is_elementary()) return hilbert_dim(t, reg);
  return std::max(max_leaf_dim(t.input(), reg), max_leaf_dim(t.output(), reg));
}

// Labels absent from `reg`: Z, Y, X, ... then P0, P1, ...
std::vector<std::string> fresh_labels(const SystemRegistry& reg, std::size_t count) {
  std::vector<std::string> out;
  for (char c = 'Z'; c >= 'A' && out.size() < count; --c) {
    if (c == 'I') continue;
    std::string label(1, c);
    if (!reg.contains(label)) out.push_back(std::move(label));
  }
  for (int k = 0; out.size() < count; ++k) {
    std::string label = "P" + std::to_string(k);
    if (!reg.contains(label)) out.push_back(std::move(label));
  }
  return out;
}

int leaf_qubits_for(const TypedMap& m, const ProbeOptions& probes) {
  if (probes.leaf_qubits > 0) return probes.leaf_qubits;
  const Index d = max_leaf_dim(m.type(), m.registry());
  int q = 1;
  while ((Index{1} << q) < d && q < 3) ++q;
  return q;
}

int count_leaves(const Shape& s) { return s.is_leaf() ? 1 : count_leaves(s.left()) + count_leaves(s.right()); }

}  // namespace

// ---------------------------------------------------------------------------
// H

bool in_H(const TypedMap& m, double tol) {
  const Type& x = m.type();
  if (x.is_elementary()) {
    const Matrix& op = m.matrix();
    const double scale = std::max(1.0, max_abs(op));
    if (x.is_trivial()) return std::abs(op(0, 0).imag()) <= tol * scale;
    return max_abs(op - op.adjoint()) <= tol * scale;
  }
  const ChoiLinearization input_lin(x.input(), m.registry());
  for (const Matrix& h : hermitian_basis(input_lin.dim())) {
    if (!in_H(apply(m, input_lin.unchoi(h, m.registry_ptr())), tol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// K

ConeVerdict psd_verdict(const Matrix& op, double tol) {
  ConeVerdict v;
  v.method = Method::choi;
  v.tolerance = tol;
  const double scale = std::max(1.0, max_abs(op));
  const Matrix herm = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double radius = lambda.cwiseAbs().maxCoeff();
  const double threshold = -tol * std::max(1.0, radius);
  v.min_eigenvalue = lambda.minCoeff();

  const double skew = max_abs(op - op.adjoint());
  if (skew > tol * scale) {
    v.decision = Decision::non_member;
    Witness w;
    w.note = "not Hermitian: max |X - X^dagger| = " + num(skew);
    v.witness = std::move(w);
    return v;
  }
  if (*v.min_eigenvalue >= threshold) {
    v.decision = Decision::member;
    return v;
  }
  v.decision = Decision::non_member;
  Witness w;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < threshold) w.spectrum.push_back(lambda(i));
  }
  w.note = "eigenvalues below " + num(threshold);
  v.witness = std::move(w);
  return v;
}

ConeVerdict in_K_choi(const TypedMap& m, double tol) {
  ConeVerdict v = psd_verdict(choi(m), tol);
  v.method = Method::choi;
  return v;
}

ConeVerdict in_K_definitional(const TypedMap& m, double tol, const ProbeOptions& probes) {
  const Type& x = m.type();
  if (x.is_elementary()) {
    ConeVerdict v = psd_verdict(m.matrix(), tol);
    v.method = Method::definitional;
    return v;
  }

  ConeVerdict verdict;
  verdict.method = Method::definitional;
  verdict.tolerance = tol;
  verdict.decision = Decision::inconclusive;

  const int n = x.order();
  const int qubits = leaf_qubits_for(m, probes);
  const std::vector<Shape> shapes = shapes_of_height(n - 1);

  ProbeOptions inner = probes;
  inner.probes_per_type = probes.inner_probes;

  RandomOptions no_choi;
  no_choi.allow_choi_generated = false;

  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const Shape& shape = shapes[si];
    const auto leaves = static_cast<std::size_t>(count_leaves(shape));
    const std::vector<std::string> labels = fresh_labels(m.registry(), leaves * static_cast<std::size_t>(qubits));

    SystemRegistry extended = m.registry();
    for (const auto& l : labels) extended = extended.with(l, 2);
    const RegistryPtr ext = make_registry(std::move(extended));

    const Type z = label_shape(shape, [&](int leaf) {
      std::vector<std::string> word(labels.begin() + leaf * qubits, labels.begin() + (leaf + 1) * qubits);
      return Type::elementary(std::move(word));
    });

    // (M [x] id_{z->z}) : (a [x] z) -> (b [x] z)
    const TypedMap lifted = parmap(m.rebased(ext), identity_map(z, ext));
    const Type& probe_input_type = lifted.type().input();

    for (int p = 0; p < probes.probes_per_type; ++p) {
      const std::uint64_t probe_seed = mix_seed(probes.seed, si, static_cast<std::uint64_t>(p));
      const TypedMap rho = random_cone_element(probe_input_type, Cone::K, probe_seed, ext, no_choi).map;
      const TypedMap out = apply(lifted, rho);
      ++verdict.probes_used;

      inner.seed = mix_seed(probe_seed, 0x1234, 0);
      const ConeVerdict sub = in_K_definitional(out, tol, inner);
      verdict.probes_used += sub.probes_used;
      if (sub.decision != Decision::non_member) continue;

      verdict.decision = Decision::non_member;
      verdict.min_eigenvalue = sub.min_eigenvalue;
      Witness w;
      w.probe_type = format_type(z);
      w.probe_seed = probe_seed;
      if (sub.witness) {
        w.spectrum = sub.witness->spectrum;
        w.note = "output of type " + format_type(out.type()) + " rejected";
        if (sub.witness->probe_type) {
          w.note += " by inner probe " + *sub.witness->probe_type + " seed " +
                    std::to_string(*sub.witness->probe_seed);
        }
        if (!sub.witness->note.empty()) w.note += "; " + sub.witness->note;
      }
      verdict.witness = std::move(w);
      return verdict;
    }
  }
  return verdict;
}

ConeVerdict in_K(const TypedMap& m, double tol, Method method, const ProbeOptions& probes) {
  return method == Method::choi ? in_K_choi(m, tol) : in_K_definitional(m, tol, probes);
}

// ---------------------------------------------------------------------------
// Decomposition

std::pair<TypedMap, TypedMap> jordan_decompose(const TypedMap& m, double tol) {
  if (!in_H(m, tol)) {
    throw Error("map of type " + format_type(m.type()) + " is not Hermitian-preserving; no K decomposition");
  }
  const ChoiLinearization lin(m.type(), m.registry());
  const Matrix c = lin.choi(m);
  const Matrix herm = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Matrix& vecs = eig.eigenvectors();
  const double radius = lambda.size() == 0 ? 0.0 : lambda.cwiseAbs().maxCoeff();
  // Eigenvalues at roundoff level belong to neither part.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, radius);

  Eigen::VectorXd pos = Eigen::VectorXd::Zero(lambda.size());
  Eigen::VectorXd neg = Eigen::VectorXd::Zero(lambda.size());
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > floor) pos(i) = lambda(i);
    if (lambda(i) < -floor) neg(i) = -lambda(i);
  }
  const Matrix c_plus = vecs * pos.cast<Complex>().asDiagonal() * vecs.adjoint();
  const Matrix c_minus = vecs * neg.cast<Complex>().asDiagonal() * vecs.adjoint();
  return {lin.unchoi(c_plus, m.registry_ptr()), lin.unchoi(c_minus, m.registry_ptr())};
}

double dual_pair_check(const TypedMap& m, const TypedMap& n) {
  if (m.type() != n.type()) {
    throw TypeMismatchError("dual pairing needs equal types, got " + format_type(m.type()) + " and " +
                            format_type(n.type()));
  }
  require_same_registry(m.registry(), n.registry());
  const ChoiLinearization lin(m.type(), m.registry());
  return (lin.choi(m).adjoint() * lin.choi(n)).trace().real();
}

}  // namespace hoqt
