#include "hoqt/linmap.hpp"

#include <string>

#include "hoqt/error.hpp"

namespace hoqt {

Index hilbert_dim(const Type& elementary, const SystemRegistry& reg) {
  if (!elementary.is_elementary()) {
    throw TypeMismatchError("hilbert_dim needs an elementary type, got " + format_type(elementary));
  }
  Index d = 1;
  for (const auto& label : elementary.labels()) d *= reg.dim(label);
  return d;
}

Index space_dim(const Type& x, const SystemRegistry& reg) {
  if (x.is_elementary()) {
    const Index d = hilbert_dim(x, reg);
    return d * d;
  }
  return space_dim(x.input(), reg) * space_dim(x.output(), reg);
}

std::pair<Index, Index> matrix_shape(const Type& x, const SystemRegistry& reg) {
  if (x.is_elementary()) {
    const Index d = hilbert_dim(x, reg);
    return {d, d};
  }
  return {space_dim(x.output(), reg), space_dim(x.input(), reg)};
}

void require_same_registry(const SystemRegistry& a, const SystemRegistry& b) {
  if (&a == &b || a == b) return;
  throw RegistryMismatchError("maps built over different registries {" + a.fingerprint() + "} and {" +
                              b.fingerprint() + "}");
}

TypedMap::TypedMap(Type type, RegistryPtr registry, Matrix matrix)
    : type_(std::move(type)), registry_(std::move(registry)), matrix_(std::move(matrix)) {
  if (registry_ == nullptr) throw Error("typed map needs a registry");
  const auto [rows, cols] = matrix_shape(type_, *registry_);
  if (matrix_.rows() != rows || matrix_.cols() != cols) {
    throw TypeMismatchError("matrix of shape " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + " does not represent type " + format_type(type_) +
                            " (expected " + std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
  if (!matrix_.allFinite()) throw Error("typed map of type " + format_type(type_) + " has non-finite entries");
}

TypedMap TypedMap::zero(Type type, RegistryPtr registry) {
  const auto [rows, cols] = matrix_shape(type, *registry);
  return TypedMap(std::move(type), std::move(registry), Matrix::Zero(rows, cols));
}

namespace {

void require_labels_kept(const Type& t, const SystemRegistry& from, const SystemRegistry& to) {
  if (t.is_arrow()) {
    require_labels_kept(t.input(), from, to);
    require_labels_kept(t.output(), from, to);
    return;
  }
  for (const auto& l : t.labels()) {
    if (from.dim(l) != to.dim(l)) {
      throw RegistryMismatchError("label '" + l + "' changes dimension from " + std::to_string(from.dim(l)) +
                                  " to " + std::to_string(to.dim(l)));
    }
  }
}

void require_same_type(const TypedMap& a, const TypedMap& b, const char* what) {
  if (a.type() != b.type()) {
    throw TypeMismatchError(std::string(what) + ": types " + format_type(a.type()) + " and " +
                            format_type(b.type()) + " differ");
  }
  require_same_registry(a.registry(), b.registry());
}

}  // namespace

TypedMap TypedMap::rebased(RegistryPtr registry) const {
  require_labels_kept(type_, *registry_, *registry);
  return TypedMap(type_, std::move(registry), matrix_);
}

TypedMap operator+(const TypedMap& a, const TypedMap& b) {
  require_same_type(a, b, "sum");
  return TypedMap(a.type_, a.registry_, a.matrix_ + b.matrix_);
}

TypedMap operator-(const TypedMap& a, const TypedMap& b) {
  require_same_type(a, b, "difference");
  return TypedMap(a.type_, a.registry_, a.matrix_ - b.matrix_);
}

TypedMap operator*(Complex s, const TypedMap& m) { return TypedMap(m.type_, m.registry_, s * m.matrix_); }

Vector flatten_rows(const Matrix& m) {
  Vector v(m.size());
  const Index cols = m.cols();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < cols; ++j) v(i * cols + j) = m(i, j);
  }
  return v;
}

Matrix unflatten_rows(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw TypeMismatchError("vector of length " + std::to_string(v.size()) + " cannot fill a " +
                            std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

Vector vectorize(const TypedMap& m) { return flatten_rows(m.matrix()); }

TypedMap devectorize(const Vector& v, const Type& x, RegistryPtr reg) {
  const auto [rows, cols] = matrix_shape(x, *reg);
  return TypedMap(x, std::move(reg), unflatten_rows(v, rows, cols));
}

TypedMap basis_element(const Type& x, RegistryPtr reg, Index k) {
  const auto [rows, cols] = matrix_shape(x, *reg);
  if (k < 0 || k >= rows * cols) throw Error("basis index out of range for " + format_type(x));
  Matrix m = Matrix::Zero(rows, cols);
  m(k / cols, k % cols) = 1.0;
  return TypedMap(x, std::move(reg), std::move(m));
}

std::vector<TypedMap> canonical_basis(const Type& x, RegistryPtr reg) {
  const Index n = space_dim(x, *reg);
  std::vector<TypedMap> basis;
  basis.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) basis.push_back(basis_element(x, reg, k));
  return basis;
}

TypedMap apply(const TypedMap& map, const TypedMap& input) {
  if (map.type().is_elementary()) {
    throw TypeMismatchError("cannot apply elementary-typed " + format_type(map.type()) + " to an input");
  }
  if (map.type().input() != input.type()) {
    throw TypeMismatchError("map of type " + format_type(map.type()) + " cannot take input of type " +
                            format_type(input.type()));
  }
  require_same_registry(map.registry(), input.registry());
  return devectorize(map.matrix() * vectorize(input), map.type().output(), map.registry_ptr());
}

TypedMap compose(const TypedMap& n, const TypedMap& m) {
  if (n.type().is_elementary() || m.type().is_elementary()) {
    throw TypeMismatchError("compose needs two arrow-typed maps, got " + format_type(n.type()) + " and " +
                            format_type(m.type()));
  }
  if (m.type().output() != n.type().input()) {
    throw TypeMismatchError("cannot compose " + format_type(n.type()) + " after " + format_type(m.type()));
  }
  require_same_registry(n.registry(), m.registry());
  return TypedMap(Type::arrow(m.type().input(), n.type().output()), m.registry_ptr(), n.matrix() * m.matrix());
}

Complex hs_inner(const TypedMap& f, const TypedMap& g) {
  require_same_type(f, g, "inner product");
  return f.matrix().conjugate().cwiseProduct(g.matrix()).sum();
}

TypedMap identity_map(const Type& z, RegistryPtr reg) {
  const Index n = space_dim(z, *reg);
  return TypedMap(Type::arrow(z, z), std::move(reg), Matrix::Identity(n, n));
}

double max_abs_diff(const TypedMap& a, const TypedMap& b) {
  require_same_type(a, b, "comparison");
  if (a.matrix().size() == 0) return 0.0;
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace hoqt
