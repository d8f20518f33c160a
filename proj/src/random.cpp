#include <cmath>
#include <random>
#include <string>

#include "hoqt/cones.hpp"
#include "hoqt/error.hpp"
#include "hoqt/kernels.hpp"
#include "hoqt/parprod.hpp"

namespace hoqt {
namespace {

void collect_leaves(const Type& t, std::vector<std::vector<std::string>>& out) {
  if (t.is_elementary()) {
    out.push_back(t.labels());
    return;
  }
  collect_leaves(t.input(), out);
  collect_leaves(t.output(), out);
}

class Generator {
 public:
  Generator(std::uint64_t seed, RegistryPtr reg, const RandomOptions& options)
      : rng_(seed), reg_(std::move(reg)), options_(options) {}

  bool choi_generated() const { return choi_generated_; }

  TypedMap k_element(const Type& x) {
    switch (x.order()) {
      case 0: return TypedMap(x, reg_, positive_operator(hilbert_dim(x, *reg_)));
      case 1: return kraus_map(x);
      default: break;
    }
    std::vector<int> routes;
    if (label_count(x) >= 2) routes.push_back(0);
    routes.push_back(1);
    if (options_.allow_choi_generated) routes.push_back(2);
    const int route = routes[std::uniform_int_distribution<std::size_t>(0, routes.size() - 1)(rng_)];
    switch (route) {
      case 0: return split_product(x);
      case 1: return prepare_measure(x);
      default: return from_choi(x);
    }
  }

  TypedMap h_element(const Type& x) {
    std::uniform_real_distribution<double> weight(0.25, 2.0);
    const double alpha = weight(rng_);
    const double beta = weight(rng_);
    const TypedMap plus = k_element(x);
    const TypedMap minus = k_element(x);
    return Complex(alpha) * plus - Complex(beta) * minus;
  }

 private:
  Matrix gaussian(Index rows, Index cols) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng_), normal(rng_));
    }
    return g;
  }

  Index random_rank(Index d) {
    if (std::bernoulli_distribution(0.5)(rng_)) return 1;
    return std::uniform_int_distribution<Index>(1, d)(rng_);
  }

  Matrix positive_operator(Index d) {
    const Index r = random_rank(d);
    const Matrix g = gaussian(d, r);
    return g * g.adjoint() / static_cast<double>(r);
  }

  // Order one: Kraus form sum_k K . K^dagger.
  TypedMap kraus_map(const Type& x) {
    const Index da = hilbert_dim(x.input(), *reg_);
    const Index db = hilbert_dim(x.output(), *reg_);
    const Index r = random_rank(da * db);
    Matrix m = Matrix::Zero(db * db, da * da);
    const double scale = 1.0 / std::sqrt(static_cast<double>(da * r));
    for (Index k = 0; k < r; ++k) {
      const Matrix kraus = scale * gaussian(db, da);
      m += kernels::kron(kraus, kraus.conjugate());
    }
    return TypedMap(x, reg_, std::move(m));
  }

  static std::size_t label_count(const Type& x) {
    std::vector<std::vector<std::string>> leaves;
    collect_leaves(x, leaves);
    std::size_t n = 0;
    for (const auto& w : leaves) n += w.size();
    return n;
  }

  // Every leaf word cut into prefix and suffix; x = x1 [x] x2 with both sides
  // carrying at least one label.
  TypedMap split_product(const Type& x) {
    std::vector<std::vector<std::string>> leaves;
    collect_leaves(x, leaves);
    std::vector<std::size_t> cuts(leaves.size(), 0);
    bool valid = false;
    for (int attempt = 0; attempt < 16 && !valid; ++attempt) {
      std::size_t left = 0;
      std::size_t right = 0;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        cuts[i] = std::uniform_int_distribution<std::size_t>(0, leaves[i].size())(rng_);
        left += cuts[i];
        right += leaves[i].size() - cuts[i];
      }
      valid = left > 0 && right > 0;
    }
    if (!valid) {
      std::fill(cuts.begin(), cuts.end(), 0);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].empty()) {
          cuts[i] = 1;
          break;
        }
      }
    }
    const Shape shape = structure(x);
    const Type x1 = label_shape(shape, [&](int i) {
      const auto& w = leaves[static_cast<std::size_t>(i)];
      return Type::elementary({w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cuts[static_cast<std::size_t>(i)])});
    });
    const Type x2 = label_shape(shape, [&](int i) {
      const auto& w = leaves[static_cast<std::size_t>(i)];
      return Type::elementary({w.begin() + static_cast<std::ptrdiff_t>(cuts[static_cast<std::size_t>(i)]), w.end()});
    });
    const TypedMap m1 = k_element(x1);
    const TypedMap m2 = k_element(x2);
    TypedMap product = parmap(m1, m2);
    if (product.type() != x) {
      throw Error("split of " + format_type(x) + " recombined to " + format_type(product.type()));
    }
    return product;
  }

  // sum_k prepare(tau_k) o measure(sigma_k) for sigma_k in K(a), tau_k in K(b).
  TypedMap prepare_measure(const Type& x) {
    const Type& a = x.input();
    const Type& b = x.output();
    const int terms = std::uniform_int_distribution<int>(1, 3)(rng_);
    Matrix m = Matrix::Zero(space_dim(b, *reg_), space_dim(a, *reg_));
    for (int k = 0; k < terms; ++k) {
      const Vector sigma = vectorize(k_element(a));
      const Vector tau = vectorize(k_element(b));
      m += tau * sigma.adjoint();
    }
    return TypedMap(x, reg_, std::move(m));
  }

  TypedMap from_choi(const Type& x) {
    choi_generated_ = true;
    return unchoi(positive_operator(choi_dim(x, *reg_)), x, reg_);
  }

  std::mt19937_64 rng_;
  RegistryPtr reg_;
  RandomOptions options_;
  bool choi_generated_ = false;
};

}  // namespace

RandomElement random_cone_element(const Type& x, Cone cone, std::uint64_t seed, const RegistryPtr& reg,
                                  const RandomOptions& options) {
  Generator gen(seed, reg, options);
  TypedMap m = cone == Cone::K ? gen.k_element(x) : gen.h_element(x);
  return {std::move(m), gen.choi_generated()};
}

}  // namespace hoqt
