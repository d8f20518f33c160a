#include "hoqt/parprod.hpp"

#include <mutex>
#include <set>
#include <string>
#include <unordered_map>

#include <Eigen/SVD>

#include "hoqt/error.hpp"
#include "hoqt/kernels.hpp"

namespace hoqt {

// ---------------------------------------------------------------------------
// ParallelIso

namespace {

bool detect_monomial(const Matrix& phi, std::vector<Index>& rows, std::vector<Complex>& values) {
  if (phi.rows() != phi.cols()) return false;
  const Index n = phi.cols();
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  rows.assign(static_cast<std::size_t>(n), -1);
  values.assign(static_cast<std::size_t>(n), Complex{});
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (phi(i, j) == Complex{}) continue;
      if (rows[static_cast<std::size_t>(j)] >= 0 || taken[static_cast<std::size_t>(i)]) {
        rows.clear();
        values.clear();
        return false;
      }
      rows[static_cast<std::size_t>(j)] = i;
      values[static_cast<std::size_t>(j)] = phi(i, j);
      taken[static_cast<std::size_t>(i)] = true;
    }
    if (rows[static_cast<std::size_t>(j)] < 0) {
      rows.clear();
      values.clear();
      return false;
    }
  }
  return true;
}

}  // namespace

ParallelIso::ParallelIso(Type left, Type right, RegistryPtr registry, Matrix phi)
    : left_(std::move(left)), right_(std::move(right)), registry_(std::move(registry)), phi_(std::move(phi)) {
  const std::string pair = format_type(left_) + " and " + format_type(right_);
  if (phi_.rows() != phi_.cols()) {
    throw SpanningError("parallel-product basis for " + pair + " is not square (" + std::to_string(phi_.rows()) +
                        "x" + std::to_string(phi_.cols()) + ")");
  }
  const Index n = phi_.cols();
  if (detect_monomial(phi_, row_of_column_, value_of_column_)) {
    sigma_min_ = std::abs(value_of_column_.front());
    sigma_max_ = sigma_min_;
    for (const auto& v : value_of_column_) {
      sigma_min_ = std::min(sigma_min_, std::abs(v));
      sigma_max_ = std::max(sigma_max_, std::abs(v));
    }
  } else {
    Eigen::BDCSVD<Matrix> svd(phi_);
    const auto& s = svd.singularValues();
    sigma_max_ = n > 0 ? s(0) : 1.0;
    sigma_min_ = n > 0 ? s(n - 1) : 1.0;
  }
  if (n == 0 || !(sigma_min_ > kSpanningThreshold * sigma_max_)) {
    throw SpanningError("products of basis elements fail to span L(" + format_type(left_) + " [x] " +
                        format_type(right_) + "): sigma_min=" + std::to_string(sigma_min_) +
                        ", sigma_max=" + std::to_string(sigma_max_));
  }
  if (is_monomial()) {
    inverse_ = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
      inverse_(j, row_of_column_[static_cast<std::size_t>(j)]) = 1.0 / value_of_column_[static_cast<std::size_t>(j)];
    }
  } else {
    inverse_ = phi_.partialPivLu().inverse();
  }
}

Matrix ParallelIso::times(const Matrix& m) const {
  if (!is_monomial()) return phi_ * m;
  Matrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.rows(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    out.row(row_of_column_[k]) = value_of_column_[k] * m.row(j);
  }
  return out;
}

Matrix ParallelIso::times_inverse_from_right(const Matrix& m) const {
  if (!is_monomial()) return m * inverse_;
  // (m * phi^{-1}) column r = m column j / v_j where phi(r, j) = v_j.
  Matrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    out.col(row_of_column_[k]) = m.col(j) / value_of_column_[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Memo

namespace {

void collect_labels(const Type& t, std::set<std::string>& out) {
  if (t.is_arrow()) {
    collect_labels(t.input(), out);
    collect_labels(t.output(), out);
    return;
  }
  out.insert(t.labels().begin(), t.labels().end());
}

std::string iso_key(const Type& x, const Type& y, const SystemRegistry& reg) {
  std::set<std::string> labels;
  collect_labels(x, labels);
  collect_labels(y, labels);
  std::string key = format_type(x) + "|" + format_type(y) + "|";
  for (const auto& l : labels) key += l + "=" + std::to_string(reg.dim(l)) + ";";
  return key;
}

struct IsoCache {
  std::mutex mutex;
  std::unordered_map<std::string, std::shared_ptr<const ParallelIso>> entries;
};

IsoCache& iso_cache() {
  static IsoCache cache;
  return cache;
}

}  // namespace

std::shared_ptr<const ParallelIso> build_parallel_iso(const Type& x, const Type& y, const RegistryPtr& reg) {
  const Index dx = space_dim(x, *reg);
  const Index dy = space_dim(y, *reg);
  const Type product = partype(x, y);
  const Index rows = space_dim(product, *reg);
  Matrix phi = kernels::assemble_columns(rows, dx * dy, [&](Index col) {
    const TypedMap ei = basis_element(x, reg, col / dy);
    const TypedMap ej = basis_element(y, reg, col % dy);
    return vectorize(parmap(ei, ej));
  });
  return std::make_shared<const ParallelIso>(x, y, reg, std::move(phi));
}

std::shared_ptr<const ParallelIso> parallel_iso(const Type& x, const Type& y, const RegistryPtr& reg) {
  const std::string key = iso_key(x, y, *reg);
  auto& cache = iso_cache();
  {
    std::lock_guard lock(cache.mutex);
    if (const auto it = cache.entries.find(key); it != cache.entries.end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate build yields the same value.
  auto iso = build_parallel_iso(x, y, reg);
  std::lock_guard lock(cache.mutex);
  return cache.entries.emplace(key, std::move(iso)).first->second;
}

void clear_parallel_iso_cache() {
  auto& cache = iso_cache();
  std::lock_guard lock(cache.mutex);
  cache.entries.clear();
}

// ---------------------------------------------------------------------------
// Products

Matrix append_fixed(const TypedMap& f, Side side, const Type& y) {
  const RegistryPtr& reg = f.registry_ptr();
  const Type product = side == Side::left ? partype(f.type(), y) : partype(y, f.type());
  const Index cols = space_dim(y, *reg);
  return kernels::assemble_columns(space_dim(product, *reg), cols, [&](Index k) {
    const TypedMap tau = basis_element(y, reg, k);
    return vectorize(side == Side::left ? parmap(f, tau) : parmap(tau, f));
  });
}

TypedMap parmap(const TypedMap& m, const TypedMap& n) {
  require_same_registry(m.registry(), n.registry());
  const Type& x = m.type();
  const Type& y = n.type();
  const RegistryPtr& reg = m.registry_ptr();
  Type result_type = partype(x, y);

  switch (product_case(x, y)) {
    case ProductCase::elementary:
      return TypedMap(std::move(result_type), reg, kernels::kron(m.matrix(), n.matrix()));

    case ProductCase::asymmetric_left: {
      // (M [x] N)(s) = M [x] N(s)
      const Matrix lift = append_fixed(m, Side::left, y.output());
      return TypedMap(std::move(result_type), reg, lift * n.matrix());
    }

    case ProductCase::symmetric: {
      // (M [x] N)(r [x] s) = M(r) [x] N(s), extended linearly through phi.
      const auto in_iso = parallel_iso(x.input(), y.input(), reg);
      const auto out_iso = parallel_iso(x.output(), y.output(), reg);
      const Matrix tensor = kernels::kron(m.matrix(), n.matrix());
      return TypedMap(std::move(result_type), reg, in_iso->times_inverse_from_right(out_iso->times(tensor)));
    }

    case ProductCase::asymmetric_right: {
      // (M [x] N)(r) = M(r) [x] N
      const Matrix lift = append_fixed(n, Side::right, x.output());
      return TypedMap(std::move(result_type), reg, lift * m.matrix());
    }
  }
  throw Error("unreachable parallel-product case");
}

}  // namespace hoqt
