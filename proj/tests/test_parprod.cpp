#include <doctest.h>

#include "hoqt/error.hpp"
#include "hoqt/parprod.hpp"
#include "support.hpp"

using namespace hoqt;
using support::parse;


TEST_CASE("result types follow partype") {
  support::Rng rng(1);
  const auto reg = support::qubits("ABCD");
  const TypedMap state = support::random_map(rng, parse("A"), reg);
  const TypedMap channel = support::random_map(rng, parse("C->D"), reg);
  CHECK(format_type(parmap(state, channel).type()) == "C->AD");
  CHECK(format_type(parmap(channel, state).type()) == "C->DA");
}

TEST_CASE("elementary case is the Kronecker product bit for bit") {
  support::Rng rng(2);
  const auto reg = make_registry(SystemRegistry::from_inline("A=3,B=2,C=2"));
  const TypedMap m = support::random_map(rng, parse("AB"), reg);
  const TypedMap n = support::random_map(rng, parse("C"), reg);
  CHECK(parmap(m, n).matrix() == support::naive_kron(m.matrix(), n.matrix()));
  const TypedMap scalar = TypedMap(parse("I"), reg, Matrix::Constant(1, 1, Complex(2.0, -1.0)));
  CHECK(parmap(scalar, n).matrix() == Complex(2.0, -1.0) * n.matrix());
}

TEST_CASE("defining equations on basis inputs") {
  support::Rng rng(3);
  const auto reg = make_registry(SystemRegistry::from_inline("A=2,B=3,C=2,D=2,E=2,F=2"));
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"A", "B"},           {"AB", "I"},            {"A", "C->D"},           {"I", "C->D"},
      {"A->B", "C"},        {"A->B", "C->D"},       {"A->(B->C)", "(D->E)->F"}, {"(A->B)->C", "D->E"},
      {"A", "(C->D)->E"},   {"I->A", "C->D"},       {"A->B", "(C->D)->(E->F)"},
  };
  for (const auto& [xs, ys] : pairs) {
    CAPTURE(xs);
    CAPTURE(ys);
    const TypedMap m = support::random_map(rng, parse(xs), reg);
    const TypedMap n = support::random_map(rng, parse(ys), reg);
    CHECK(support::defining_equation_error(m, n) <= 1e-10);
  }
}

TEST_CASE("parmap is bilinear") {
  support::Rng rng(4);
  const auto reg = support::qubits("ABCDEF");
  for (const auto& [xs, ys] : std::vector<std::pair<const char*, const char*>>{{"A->B", "C->D"}, {"A", "C->(D->E)"}}) {
    const Type x = parse(xs);
    const Type y = parse(ys);
    const TypedMap m1 = support::random_map(rng, x, reg);
    const TypedMap m2 = support::random_map(rng, x, reg);
    const TypedMap n = support::random_map(rng, y, reg);
    const Complex s(0.7, 0.2);
    CHECK(max_abs_diff(parmap(m1 + s * m2, n), parmap(m1, n) + s * parmap(m2, n)) < 1e-12);
    CHECK(max_abs_diff(parmap(n, m1 + s * m2), parmap(n, m1) + s * parmap(n, m2)) < 1e-12);
  }
}

TEST_CASE("order-1 product agrees with the channel tensor product") {
  // Under row-major vectorization the tensor product of channels on
  // operators X (x) Y is the conjugated permutation of kron(M, N).
  support::Rng rng(5);
  const auto reg = support::qubits("ABCD");
  const TypedMap m = support::random_map(rng, parse("A->B"), reg);
  const TypedMap n = support::random_map(rng, parse("C->D"), reg);
  const TypedMap p = parmap(m, n);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = support::random_matrix(rng, 2, 2);
    const Matrix y = support::random_matrix(rng, 2, 2);
    const TypedMap xy(parse("AC"), reg, support::naive_kron(x, y));
    const Matrix mx = apply(m, TypedMap(parse("A"), reg, x)).matrix();
    const Matrix ny = apply(n, TypedMap(parse("C"), reg, y)).matrix();
    CHECK(support::max_abs(apply(p, xy).matrix() - support::naive_kron(mx, ny)) < 1e-12);
  }
}

TEST_CASE("parallel iso is a permutation on qubit pairs and is memoized") {
  const auto reg = support::qubits("ABCD");
  const auto iso = parallel_iso(parse("A->B"), parse("C->D"), reg);
  CHECK(iso->is_monomial());
  CHECK(iso->sigma_min() == 1.0);
  CHECK(iso->sigma_max() == 1.0);
  const Index n = iso->phi().rows();
  CHECK(support::max_abs(iso->phi() * iso->inverse() - Matrix::Identity(n, n)) == 0.0);
  CHECK(parallel_iso(parse("A->B"), parse("C->D"), support::qubits("ABCD")) == iso);
  const auto wide = make_registry(SystemRegistry::from_inline("A=3,B=2,C=2,D=2"));
  CHECK(parallel_iso(parse("A->B"), parse("C->D"), wide) != iso);

  const auto fresh = build_parallel_iso(parse("A->B"), parse("C->D"), reg);
  CHECK(fresh->phi() == iso->phi());
}

TEST_CASE("dense fallback and spanning failure") {
  support::Rng rng(6);
  const auto reg = support::qubits("AB");
  const Matrix phi = support::random_matrix(rng, 16, 16);
  const ParallelIso iso(parse("A"), parse("B"), reg, phi);
  CHECK_FALSE(iso.is_monomial());
  const Matrix m = support::random_matrix(rng, 16, 16);
  CHECK(support::max_abs(iso.times(m) - phi * m) < 1e-12);
  CHECK(support::max_abs(iso.times_inverse_from_right(m) * phi - m) < 1e-9);

  Matrix singular = phi;
  singular.col(3) = singular.col(5);
  CHECK_THROWS_AS(ParallelIso(parse("A"), parse("B"), reg, singular), SpanningError);
}

TEST_CASE("append_fixed agrees with column-wise parmap") {
  support::Rng rng(7);
  const auto reg = support::qubits("ABC");
  const TypedMap f = support::random_map(rng, parse("A"), reg);
  const Type y = parse("B->C");
  const Matrix lift = append_fixed(f, Side::left, y);
  const auto basis = canonical_basis(y, reg);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    CHECK(support::max_abs(lift.col(static_cast<Index>(k)) - vectorize(parmap(f, basis[k]))) == 0.0);
  }
}

// Only for equal orders; otherwise an asymmetric case applies and the result
// type is not (a [x] c)->(a [x] c).
TEST_CASE("product of identities is the identity") {
  const auto reg = support::qubits("ABCDEF");
  for (const auto& [as, cs] : std::vector<std::pair<const char*, const char*>>{
           {"A", "C"}, {"I", "AB"}, {"A->B", "C->D"}, {"(A->B)->C", "D->(E->F)"}}) {
    const TypedMap p = parmap(identity_map(parse(as), reg), identity_map(parse(cs), reg));
    CHECK(p.type() == Type::arrow(partype(parse(as), parse(cs)), partype(parse(as), parse(cs))));
    CHECK(p.matrix() == Matrix::Identity(p.matrix().rows(), p.matrix().cols()));
  }
}

TEST_CASE("append_fixed examples") {
  support::Rng rng(8);
  const auto reg = support::qubits("AB");
  const TypedMap scalar(parse("I"), reg, Matrix::Constant(1, 1, Complex(0.5, 2.0)));
  CHECK(append_fixed(scalar, Side::left, parse("A")) == Complex(0.5, 2.0) * Matrix::Identity(4, 4));

  const TypedMap rho = support::random_map(rng, parse("A"), reg);
  const Matrix lift = append_fixed(rho, Side::left, parse("B"));
  for (int t = 0; t < 4; ++t) {
    const Matrix tau = support::random_matrix(rng, 2, 2);
    const Vector expected = flatten_rows(support::naive_kron(rho.matrix(), tau));
    CHECK(support::max_abs(lift * flatten_rows(tau) - expected) < 1e-12);
  }
}
