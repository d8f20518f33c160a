#include <string>

#include "hoqt/cones.hpp"
#include "hoqt/error.hpp"
#include "hoqt/kernels.hpp"

namespace hoqt {
namespace {

struct Linearized {
  Index dim = 1;
  std::vector<Index> perm;
};

Linearized linearize(const Type& x, const SystemRegistry& reg) {
  Linearized out;
  if (x.is_elementary()) {
    out.dim = hilbert_dim(x, reg);
    out.perm.resize(static_cast<std::size_t>(out.dim * out.dim));
    for (std::size_t k = 0; k < out.perm.size(); ++k) out.perm[k] = static_cast<Index>(k);
    return out;
  }
  const Linearized in = linearize(x.input(), reg);
  const Linearized res = linearize(x.output(), reg);
  const Index da = in.dim;
  const Index db = res.dim;
  const auto sa = static_cast<Index>(in.perm.size());
  const auto sb = static_cast<Index>(res.perm.size());
  out.dim = da * db;
  out.perm.resize(static_cast<std::size_t>(sa * sb));
  // Coordinate (k, l) of the sb x sa matrix sends input basis element l,
  // linearized to E_ij, onto output basis element k, linearized to E_pq; it
  // lands in block (i, j) of sum E_ij (x) M~(E_ij) at local entry (p, q).
  for (Index k = 0; k < sb; ++k) {
    const Index pq = res.perm[static_cast<std::size_t>(k)];
    const Index p = pq / db;
    const Index q = pq % db;
    for (Index l = 0; l < sa; ++l) {
      const Index ij = in.perm[static_cast<std::size_t>(l)];
      const Index i = ij / da;
      const Index j = ij % da;
      out.perm[static_cast<std::size_t>(k * sa + l)] = (i * db + p) * out.dim + (j * db + q);
    }
  }
  return out;
}

}  // namespace

ChoiLinearization::ChoiLinearization(Type source, const SystemRegistry& reg) : source_(std::move(source)) {
  Linearized lin = linearize(source_, reg);
  dim_ = lin.dim;
  permutation_ = std::move(lin.perm);
}

Matrix ChoiLinearization::forward_matrix() const {
  const auto n = static_cast<Index>(permutation_.size());
  Matrix f = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) f(permutation_[static_cast<std::size_t>(k)], k) = 1.0;
  return f;
}

Matrix ChoiLinearization::choi(const TypedMap& m) const {
  if (m.type() != source_) {
    throw TypeMismatchError("Choi linearization of " + format_type(source_) + " applied to a map of type " +
                            format_type(m.type()));
  }
  const Vector flat = kernels::scatter(vectorize(m), permutation_, dim_ * dim_);
  return unflatten_rows(flat, dim_, dim_);
}

TypedMap ChoiLinearization::unchoi(const Matrix& c, RegistryPtr reg) const {
  if (c.rows() != dim_ || c.cols() != dim_) {
    throw TypeMismatchError("Choi matrix of type " + format_type(source_) + " must be " + std::to_string(dim_) +
                            "x" + std::to_string(dim_) + ", got " + std::to_string(c.rows()) + "x" +
                            std::to_string(c.cols()));
  }
  const Vector flat = flatten_rows(c);
  Vector coords(static_cast<Index>(permutation_.size()));
  for (std::size_t k = 0; k < permutation_.size(); ++k) coords(static_cast<Index>(k)) = flat(permutation_[k]);
  return devectorize(coords, source_, std::move(reg));
}

Index choi_dim(const Type& x, const SystemRegistry& reg) {
  if (x.is_elementary()) return hilbert_dim(x, reg);
  return choi_dim(x.input(), reg) * choi_dim(x.output(), reg);
}

Matrix choi(const TypedMap& m) { return ChoiLinearization(m.type(), m.registry()).choi(m); }

TypedMap unchoi(const Matrix& c, const Type& x, RegistryPtr reg) {
  const ChoiLinearization lin(x, *reg);
  return lin.unchoi(c, std::move(reg));
}

}  // namespace hoqt
