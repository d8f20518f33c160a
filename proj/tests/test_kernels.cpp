#include <doctest.h>

#include <omp.h>

#include <atomic>
#include <stdexcept>

#include "hoqt/kernels.hpp"
#include "support.hpp"

using namespace hoqt;

namespace {

bool bit_identical(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

}  // namespace

TEST_CASE("kron matches the index-arithmetic reference") {
  support::Rng rng(1);
  for (auto [r1, c1, r2, c2] : std::vector<std::array<Index, 4>>{{1, 1, 1, 1}, {2, 3, 4, 1}, {16, 16, 16, 16}, {4, 64, 64, 4}}) {
    const Matrix a = support::random_matrix(rng, r1, c1);
    const Matrix b = support::random_matrix(rng, r2, c2);
    const Matrix expected = support::naive_kron(a, b);
    CHECK(bit_identical(kernels::kron(a, b), expected));
    CHECK(bit_identical(kernels::kron_serial(a, b), expected));
  }
}

TEST_CASE("parallel and serial kernels agree bit for bit across thread counts") {
  support::Rng rng(2);
  const Matrix a = support::random_matrix(rng, 32, 16);
  const Matrix b = support::random_matrix(rng, 16, 32);
  const Vector base = support::random_matrix(rng, 64, 1).col(0);
  auto column = [&](Index j) -> Vector { return base * Complex(static_cast<double>(j), 1.0); };

  std::vector<Index> perm(4096);
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<Index>((k * 1237) % perm.size());
  const Vector in = support::random_matrix(rng, 4096, 1).col(0);

  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    CHECK(bit_identical(kernels::kron(a, b), kernels::kron_serial(a, b)));
    CHECK(bit_identical(kernels::assemble_columns(64, 300, column), kernels::assemble_columns_serial(64, 300, column)));
    CHECK(bit_identical(kernels::scatter(in, perm, 4096), kernels::scatter_serial(in, perm, 4096)));
  }
  omp_set_num_threads(saved);
}

TEST_CASE("scatter places entries") {
  Vector in(3);
  in << 1.0, 2.0, 3.0;
  const Vector out = kernels::scatter_serial(in, {2, 0, 4}, 5);
  CHECK(out(2) == Complex(1.0));
  CHECK(out(0) == Complex(2.0));
  CHECK(out(4) == Complex(3.0));
  CHECK(out(1) == Complex(0.0));
}

TEST_CASE("parallel_for visits every index and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  kernels::parallel_for(1000, [&](Index i) { hits[static_cast<std::size_t>(i)]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(kernels::parallel_for(100,
                                        [](Index i) {
                                          if (i == 37) throw std::runtime_error("boom");
                                        }),
                  std::runtime_error);
}
