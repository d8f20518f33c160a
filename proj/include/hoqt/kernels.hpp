#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version used by the
// library and a serial reference kept for tests and benchmarks; both produce
// bit-identical results.

#include <functional>
#include <vector>

#include "hoqt/linmap.hpp"

namespace hoqt::kernels {

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_serial(const Matrix& a, const Matrix& b);

/// Matrix whose j-th column is column(j), for j in [0, cols).
using ColumnFn = std::function<Vector(Index)>;
Matrix assemble_columns(Index rows, Index cols, const ColumnFn& column);
Matrix assemble_columns_serial(Index rows, Index cols, const ColumnFn& column);

/// out[perm[k]] = in[k].
Vector scatter(const Vector& in, const std::vector<Index>& perm, Index out_size);
Vector scatter_serial(const Vector& in, const std::vector<Index>& perm, Index out_size);

/// Runs body(i) for i in [0, n). Exceptions thrown by any iteration are
/// rethrown on the calling thread after the loop.
void parallel_for(Index n, const std::function<void(Index)>& body);

}  // namespace hoqt::kernels
