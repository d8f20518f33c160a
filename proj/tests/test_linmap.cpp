#include <doctest.h>

#include <limits>

#include "hoqt/error.hpp"
#include "hoqt/linmap.hpp"
#include "support.hpp"

using namespace hoqt;
using support::parse;

TEST_CASE("dimensions") {
  const auto reg = make_registry(SystemRegistry::from_inline("A=2,B=3,C=2"));
  CHECK(hilbert_dim(parse("I"), *reg) == 1);
  CHECK(hilbert_dim(parse("AB"), *reg) == 6);
  CHECK(space_dim(parse("I"), *reg) == 1);
  CHECK(space_dim(parse("AB"), *reg) == 36);
  CHECK(space_dim(parse("A->B"), *reg) == 36);
  CHECK(space_dim(parse("(A->B)->C"), *reg) == 144);
  CHECK(matrix_shape(parse("A->B"), *reg) == std::pair<Index, Index>{9, 4});
  CHECK(matrix_shape(parse("B"), *reg) == std::pair<Index, Index>{3, 3});
  CHECK(matrix_shape(parse("I"), *reg) == std::pair<Index, Index>{1, 1});
  CHECK_THROWS_AS(hilbert_dim(parse("A->B"), *reg), TypeMismatchError);
  CHECK_THROWS_AS(space_dim(parse("D"), *reg), UnknownLabelError);
}

TEST_CASE("typed map validation") {
  const auto reg = support::qubits("AB");
  CHECK_THROWS_AS(TypedMap(parse("A"), reg, Matrix::Zero(4, 4)), TypeMismatchError);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(TypedMap(parse("A"), reg, bad), Error);
}

TEST_CASE("row-major vectorization and canonical basis") {
  const auto reg = support::qubits("AB");
  const auto basis = canonical_basis(parse("A"), reg);
  REQUIRE(basis.size() == 4);
  // E01 sits at index 1.
  CHECK(basis[1].matrix()(0, 1) == Complex(1.0));
  const Vector v = vectorize(basis[1]);
  for (Index k = 0; k < 4; ++k) CHECK(v(k) == Complex(k == 1 ? 1.0 : 0.0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex ip = hs_inner(basis[i], basis[j]);
      CHECK(ip == Complex(i == j ? 1.0 : 0.0));
      // Tr(f^dagger g)
      CHECK(std::abs(ip - (basis[i].matrix().adjoint() * basis[j].matrix()).trace()) < 1e-15);
    }
  }
  const auto arrow_basis = canonical_basis(parse("A->B"), reg);
  CHECK(arrow_basis.size() == 16);
  CHECK(arrow_basis[5].matrix()(1, 1) == Complex(1.0));
}

TEST_CASE("devectorize inverts vectorize") {
  support::Rng rng(3);
  const auto reg = support::qubits("ABC");
  for (const char* s : {"I", "A", "AB", "A->B", "(A->B)->C"}) {
    const TypedMap m = support::random_map(rng, parse(s), reg);
    CHECK(max_abs_diff(devectorize(vectorize(m), m.type(), reg), m) == 0.0);
  }
  CHECK_THROWS_AS(devectorize(Vector::Zero(3), parse("A"), reg), TypeMismatchError);
}

TEST_CASE("apply and compose") {
  support::Rng rng(4);
  const auto reg = support::qubits("ABC");
  const TypedMap m = support::random_map(rng, parse("A->B"), reg);
  const TypedMap n = support::random_map(rng, parse("B->C"), reg);
  const TypedMap rho = support::random_map(rng, parse("A"), reg);
  const TypedMap nm = compose(n, m);
  CHECK(nm.type() == parse("A->C"));
  CHECK(max_abs_diff(apply(nm, rho), apply(n, apply(m, rho))) < 1e-12);

  const TypedMap same = compose(identity_map(parse("B"), reg), m);
  CHECK(same.matrix() == m.matrix());
  CHECK(compose(m, identity_map(parse("A"), reg)).matrix() == m.matrix());

  CHECK_THROWS_AS(apply(m, support::random_map(rng, parse("B"), reg)), TypeMismatchError);
  CHECK_THROWS_AS(apply(rho, rho), TypeMismatchError);
  CHECK_THROWS_AS(compose(m, n), TypeMismatchError);
}

TEST_CASE("registry identity is by content") {
  support::Rng rng(8);
  const auto r1 = support::qubits("AB");
  const auto r2 = support::qubits("AB");
  const auto r3 = make_registry(SystemRegistry::from_inline("A=2,B=3"));
  const TypedMap m = support::random_map(rng, parse("A->B"), r1);
  CHECK_NOTHROW(apply(m, support::random_map(rng, parse("A"), r2)));
  CHECK_THROWS_AS(apply(m, support::random_map(rng, parse("A"), r3)), RegistryMismatchError);

  const auto wider = make_registry(r1->with("C", 5));
  CHECK(m.rebased(wider).matrix() == m.matrix());
  CHECK_THROWS_AS(m.rebased(r3), RegistryMismatchError);
}

TEST_CASE("inner product is conjugate-linear on the left") {
  support::Rng rng(9);
  const auto reg = support::qubits("AB");
  const TypedMap f = support::random_map(rng, parse("A->B"), reg);
  const TypedMap g = support::random_map(rng, parse("A->B"), reg);
  const Complex s(0.3, -1.7);
  CHECK(std::abs(hs_inner(s * f, g) - std::conj(s) * hs_inner(f, g)) < 1e-12);
  CHECK(std::abs(hs_inner(f, s * g) - s * hs_inner(f, g)) < 1e-12);
  CHECK(std::abs(hs_inner(f, g) - std::conj(hs_inner(g, f))) < 1e-12);
  CHECK(hs_inner(f, f).real() > 0.0);
}

TEST_CASE("linear structure") {
  support::Rng rng(10);
  const auto reg = support::qubits("AB");
  const TypedMap f = support::random_map(rng, parse("AB"), reg);
  const TypedMap g = support::random_map(rng, parse("AB"), reg);
  CHECK(max_abs_diff((f + g) - g, f) < 1e-15);
  CHECK(TypedMap::zero(parse("A->B"), reg).matrix().isZero());
  CHECK_THROWS_AS(f + support::random_map(rng, parse("BA"), reg), TypeMismatchError);
}
