#include "hoqt/kernels.hpp"

#include <exception>
#include <mutex>
#include <string>

#include "hoqt/error.hpp"

namespace hoqt::kernels {
namespace {

// Small problems are not worth a parallel region.
constexpr Index kParallelThreshold = 4096;

void check_column(const Vector& v, Index rows, Index j) {
  if (v.size() != rows) {
    throw Error("column " + std::to_string(j) + " has length " + std::to_string(v.size()) + ", expected " +
                std::to_string(rows));
  }
}

}  // namespace

Matrix kron_serial(const Matrix& a, const Matrix& b) {
  const Index br = b.rows();
  const Index bc = b.cols();
  Matrix out(a.rows() * br, a.cols() * bc);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const Complex s = a(i, j);
      for (Index q = 0; q < bc; ++q) {
        for (Index p = 0; p < br; ++p) out(i * br + p, j * bc + q) = s * b(p, q);
      }
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.size() * b.size() < kParallelThreshold) return kron_serial(a, b);
  const Index br = b.rows();
  const Index bc = b.cols();
  const Index acols = a.cols();
  const Index arows = a.rows();
  Matrix out(arows * br, acols * bc);
#pragma omp parallel for collapse(2) schedule(static)
  for (Index j = 0; j < acols; ++j) {
    for (Index i = 0; i < arows; ++i) {
      const Complex s = a(i, j);
      for (Index q = 0; q < bc; ++q) {
        for (Index p = 0; p < br; ++p) out(i * br + p, j * bc + q) = s * b(p, q);
      }
    }
  }
  return out;
}

Matrix assemble_columns_serial(Index rows, Index cols, const ColumnFn& column) {
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    Vector v = column(j);
    check_column(v, rows, j);
    out.col(j) = v;
  }
  return out;
}

Matrix assemble_columns(Index rows, Index cols, const ColumnFn& column) {
  Matrix out(rows, cols);
  parallel_for(cols, [&](Index j) {
    Vector v = column(j);
    check_column(v, rows, j);
    out.col(j) = v;
  });
  return out;
}

Vector scatter_serial(const Vector& in, const std::vector<Index>& perm, Index out_size) {
  Vector out = Vector::Zero(out_size);
  for (std::size_t k = 0; k < perm.size(); ++k) out(perm[k]) = in(static_cast<Index>(k));
  return out;
}

Vector scatter(const Vector& in, const std::vector<Index>& perm, Index out_size) {
  const auto n = static_cast<Index>(perm.size());
  if (n < kParallelThreshold) return scatter_serial(in, perm, out_size);
  Vector out = Vector::Zero(out_size);
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < n; ++k) out(perm[static_cast<std::size_t>(k)]) = in(k);
  return out;
}

void parallel_for(Index n, const std::function<void(Index)>& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
  for (Index i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hoqt::kernels
