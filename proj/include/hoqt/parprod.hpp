#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hoqt/linmap.hpp"

namespace hoqt {

/// Linear isomorphism L(x) (x) L(y) -> L(x [x] y) carrying e_i (x) e_j to the
/// vectorized product e_i [x] e_j.
///
/// Column i * space_dim(y) + j of `phi` is vectorize(e_i [x] e_j). Construction
/// fails with SpanningError unless the smallest singular value exceeds
/// kSpanningThreshold times the largest. When every column has exactly one
/// nonzero in distinct rows (the usual situation), the singular values and
/// the inverse are read off that structure exactly.
class ParallelIso {
 public:
  static constexpr double kSpanningThreshold = 1e-8;

  ParallelIso(Type left, Type right, RegistryPtr registry, Matrix phi);

  const Type& left() const { return left_; }
  const Type& right() const { return right_; }
  const RegistryPtr& registry() const { return registry_; }
  const Matrix& phi() const { return phi_; }
  const Matrix& inverse() const { return inverse_; }

  double sigma_min() const { return sigma_min_; }
  double sigma_max() const { return sigma_max_; }
  double condition_number() const { return sigma_max_ / sigma_min_; }
  bool is_monomial() const { return !row_of_column_.empty(); }

  /// phi * m
  Matrix times(const Matrix& m) const;
  /// m * phi^{-1}
  Matrix times_inverse_from_right(const Matrix& m) const;

 private:
  Type left_;
  Type right_;
  RegistryPtr registry_;
  Matrix phi_;
  Matrix inverse_;
  double sigma_min_ = 0.0;
  double sigma_max_ = 0.0;
  // Monomial structure: column j has its only nonzero value_of_column_[j] at
  // row row_of_column_[j].
  std::vector<Index> row_of_column_;
  std::vector<Complex> value_of_column_;
};

/// Memoized per (x, y, dimensions of the labels involved); thread safe.
std::shared_ptr<const ParallelIso> parallel_iso(const Type& x, const Type& y, const RegistryPtr& reg);

/// Builds phi without consulting or filling the memo.
std::shared_ptr<const ParallelIso> build_parallel_iso(const Type& x, const Type& y, const RegistryPtr& reg);

void clear_parallel_iso_cache();

/// Parallel product of typed maps; result type is partype(type(m), type(n)).
TypedMap parmap(const TypedMap& m, const TypedMap& n);

enum class Side { left, right };

/// Matrix of tau |-> f [x] tau (Side::left) or tau |-> tau [x] f
/// (Side::right) for tau : y, assembled column by column over the canonical
/// basis of L(y).
Matrix append_fixed(const TypedMap& f, Side side, const Type& y);

}  // namespace hoqt
