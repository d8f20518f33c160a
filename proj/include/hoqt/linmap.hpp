#pragma once

// Concrete coordinates for every map space L(x).
//
// Coordinate convention "rowmajor-v1":
//  * tensor factors follow the order of labels in the word;
//  * L(e) for an elementary e is the space of d x d operators, basis E_ij in
//    row-major order (i outer, j inner); vectorization stacks rows;
//  * L(a->b) is stored as a space_dim(b) x space_dim(a) matrix acting on
//    vectorized inputs, with the same row-major basis and vectorization;
//  * L(I) is a 1 x 1 matrix holding a scalar.

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hoqt/registry.hpp"
#include "hoqt/types.hpp"

namespace hoqt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr std::string_view kCoordinateConvention = "rowmajor-v1";

/// Product of the label dimensions of an elementary type; 1 for `I`.
Index hilbert_dim(const Type& elementary, const SystemRegistry& reg);

/// Dimension of L(x).
Index space_dim(const Type& x, const SystemRegistry& reg);

/// (rows, cols) of the coordinate matrix of an element of L(x).
std::pair<Index, Index> matrix_shape(const Type& x, const SystemRegistry& reg);

/// An element of L(type) in canonical coordinates.
class TypedMap {
 public:
  /// Validates the matrix shape and rejects non-finite entries.
  TypedMap(Type type, RegistryPtr registry, Matrix matrix);

  static TypedMap zero(Type type, RegistryPtr registry);

  const Type& type() const { return type_; }
  const SystemRegistry& registry() const { return *registry_; }
  const RegistryPtr& registry_ptr() const { return registry_; }
  const Matrix& matrix() const { return matrix_; }

  /// Same coordinates, attached to `registry`. Every label of the type must
  /// keep its dimension.
  TypedMap rebased(RegistryPtr registry) const;

  friend TypedMap operator+(const TypedMap& a, const TypedMap& b);
  friend TypedMap operator-(const TypedMap& a, const TypedMap& b);
  friend TypedMap operator*(Complex s, const TypedMap& m);

 private:
  Type type_;
  RegistryPtr registry_;
  Matrix matrix_;
};

/// Throws RegistryMismatchError unless both registries have equal contents.
void require_same_registry(const SystemRegistry& a, const SystemRegistry& b);

Vector vectorize(const TypedMap& m);
TypedMap devectorize(const Vector& v, const Type& x, RegistryPtr reg);

/// Row-major flattening of any matrix, and its inverse.
Vector flatten_rows(const Matrix& m);
Matrix unflatten_rows(const Vector& v, Index rows, Index cols);

/// The space_dim(x) matrix units of L(x) in coordinate order.
std::vector<TypedMap> canonical_basis(const Type& x, RegistryPtr reg);
/// The k-th canonical basis element alone.
TypedMap basis_element(const Type& x, RegistryPtr reg, Index k);

TypedMap apply(const TypedMap& map, const TypedMap& input);

/// N o M for M : a->b and N : b->c.
TypedMap compose(const TypedMap& n, const TypedMap& m);

/// Hilbert-Schmidt inner product, conjugate-linear in `f`.
Complex hs_inner(const TypedMap& f, const TypedMap& g);

TypedMap identity_map(const Type& z, RegistryPtr reg);

/// Largest absolute entry difference; types must agree.
double max_abs_diff(const TypedMap& a, const TypedMap& b);

}  // namespace hoqt
