#pragma once

// Hand-rolled generators and independent reference computations shared by
// the test binaries.

#include <random>
#include <string>
#include <vector>

#include "hoqt/linmap.hpp"
#include "hoqt/parprod.hpp"
#include "hoqt/types.hpp"

namespace support {

using hoqt::Complex;
using hoqt::Index;
using hoqt::Matrix;

struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  double real() { return std::uniform_real_distribution<double>(-1.0, 1.0)(engine); }
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t seed() { return engine(); }

  std::mt19937_64 engine;
};

inline hoqt::RegistryPtr qubits(const std::string& letters) {
  std::vector<std::string> labels;
  for (char c : letters) labels.emplace_back(1, c);
  return hoqt::make_registry(hoqt::SystemRegistry::qubits(labels));
}

inline hoqt::Type parse(const std::string& s) { return hoqt::parse_type(s); }

/// Random word over `pool`, length in [min_len, max_len].
inline hoqt::Type random_word(Rng& rng, const std::string& pool, int min_len, int max_len) {
  std::vector<std::string> word;
  const int n = rng.uniform(min_len, max_len);
  for (int i = 0; i < n; ++i) word.emplace_back(1, pool[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(pool.size()) - 1))]);
  return hoqt::Type::elementary(std::move(word));
}

/// Random type of exactly the given order.
inline hoqt::Type random_type(Rng& rng, int order, const std::string& pool = "ABCDEFGH", int max_word = 2,
                              int min_word = 0) {
  if (order == 0) return random_word(rng, pool, min_word, max_word);
  const int which = rng.uniform(0, 2);
  const int lo_left = which == 1 ? rng.uniform(0, order - 1) : order - 1;
  const int lo_right = which == 0 ? rng.uniform(0, order - 1) : order - 1;
  return hoqt::Type::arrow(random_type(rng, lo_left, pool, max_word, min_word),
                           random_type(rng, lo_right, pool, max_word, min_word));
}

inline Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.real(), rng.real());
  }
  return m;
}

inline hoqt::TypedMap random_map(Rng& rng, const hoqt::Type& x, const hoqt::RegistryPtr& reg) {
  const auto [r, c] = hoqt::matrix_shape(x, *reg);
  return hoqt::TypedMap(x, reg, random_matrix(rng, r, c));
}

/// Textbook Kronecker product by explicit index arithmetic.
inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Largest deviation from the defining equation of the case that applies to
// (type(m), type(n)), probed on canonical basis inputs.
inline double defining_equation_error(const hoqt::TypedMap& m, const hoqt::TypedMap& n) {
  using namespace hoqt;
  const Type& x = m.type();
  const Type& y = n.type();
  const TypedMap p = parmap(m, n);
  const RegistryPtr& reg = m.registry_ptr();
  double err = 0.0;
  switch (product_case(x, y)) {
    case ProductCase::elementary:
      return max_abs(p.matrix() - naive_kron(m.matrix(), n.matrix()));
    case ProductCase::asymmetric_left:
      for (const auto& s : canonical_basis(y.input(), reg)) {
        err = std::max(err, max_abs_diff(apply(p, s), parmap(m, apply(n, s))));
      }
      return err;
    case ProductCase::symmetric:
      for (const auto& r : canonical_basis(x.input(), reg)) {
        for (const auto& s : canonical_basis(y.input(), reg)) {
          err = std::max(err, max_abs_diff(apply(p, parmap(r, s)), parmap(apply(m, r), apply(n, s))));
        }
      }
      return err;
    case ProductCase::asymmetric_right:
      for (const auto& r : canonical_basis(x.input(), reg)) {
        err = std::max(err, max_abs_diff(apply(p, r), parmap(apply(m, r), n)));
      }
      return err;
  }
  return err;
}

}  // namespace support
