#pragma once

// Generalized complete positivity (the K cones), Hermitian preservation (the
// H spaces), and the recursive Choi linearization used to decide them.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoqt/linmap.hpp"

namespace hoqt {

// ---------------------------------------------------------------------------
// Choi linearization

/// Linear bijection L(x) -> operators on C^D with D = choi_dim(x).
///
/// Identity on elementary types. For a->b the map is first transported to
/// the linearized input and output spaces and then sent through the usual
/// Choi-Jamiolkowski correspondence sum_ij E_ij (x) M~(E_ij). Under the
/// row-major convention this is a coordinate permutation, stored as
/// `permutation()[k]` = row-major flat index of coordinate k.
class ChoiLinearization {
 public:
  ChoiLinearization(Type source, const SystemRegistry& reg);

  const Type& source() const { return source_; }
  Index dim() const { return dim_; }
  const std::vector<Index>& permutation() const { return permutation_; }

  /// Dense forward matrix: coordinates of L(x) -> row-major coordinates.
  Matrix forward_matrix() const;

  Matrix choi(const TypedMap& m) const;
  TypedMap unchoi(const Matrix& c, RegistryPtr reg) const;

 private:
  Type source_;
  Index dim_ = 1;
  std::vector<Index> permutation_;
};

/// D_ch: 1 for I, hilbert_dim for elementary types, product over arrows.
Index choi_dim(const Type& x, const SystemRegistry& reg);

Matrix choi(const TypedMap& m);
TypedMap unchoi(const Matrix& c, const Type& x, RegistryPtr reg);

// ---------------------------------------------------------------------------
// Verdicts

enum class Decision { member, non_member, inconclusive };
enum class Method { choi, definitional };

const char* to_string(Decision d);
const char* to_string(Method m);

struct Witness {
  /// Definitional method: the probe type z and the seed of the probe input.
  std::optional<std::string> probe_type;
  std::optional<std::uint64_t> probe_seed;
  /// Offending eigenvalues (those below the acceptance threshold).
  std::vector<double> spectrum;
  std::string note;
};

struct ConeVerdict {
  Decision decision = Decision::inconclusive;
  Method method = Method::choi;
  double tolerance = 0.0;
  std::optional<double> min_eigenvalue;
  std::optional<Witness> witness;
  int probes_used = 0;
};

inline constexpr double kDefaultTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Membership

/// Hermitian (elementary) or Hermitian-preserving (arrow) up to `tol`.
bool in_H(const TypedMap& m, double tol = kDefaultTolerance);

struct ProbeOptions {
  /// Probe inputs per probe type z at the outermost level.
  int probes_per_type = 16;
  /// Probe inputs per probe type in the recursive checks of outputs.
  int inner_probes = 4;
  /// Qubits per elementary leaf of z; 0 sizes leaves to the largest
  /// elementary Hilbert dimension in the checked type (at most 3 qubits).
  int leaf_qubits = 0;
  std::uint64_t seed = 0;
};

/// Choi method: member iff the smallest eigenvalue of the (Hermitian) Choi
/// matrix is >= -tol * max(1, spectral radius).
ConeVerdict in_K_choi(const TypedMap& m, double tol = kDefaultTolerance);

/// Definitional sampler: exact at order 0; at higher orders it can only
/// refute (non_member with witness) or report inconclusive.
ConeVerdict in_K_definitional(const TypedMap& m, double tol = kDefaultTolerance, const ProbeOptions& probes = {});

ConeVerdict in_K(const TypedMap& m, double tol = kDefaultTolerance, Method method = Method::choi,
                 const ProbeOptions& probes = {});

/// Smallest eigenvalue test for an elementary-typed operator (or scalar).
ConeVerdict psd_verdict(const Matrix& op, double tol);

// ---------------------------------------------------------------------------
// Generation and decomposition

enum class Cone { K, H };

struct RandomOptions {
  /// Allow elements obtained as unchoi of a random PSD matrix.
  bool allow_choi_generated = true;
};

struct RandomElement {
  TypedMap map;
  /// Some ingredient was produced through unchoi; never use such elements to
  /// validate the linearization itself.
  bool choi_generated = false;
};

/// Deterministic per (x, cone, seed, registry).
RandomElement random_cone_element(const Type& x, Cone cone, std::uint64_t seed, const RegistryPtr& reg,
                                  const RandomOptions& options = {});

/// M = M_plus - M_minus with both parts in K, split by the sign of the Choi
/// spectrum. Throws unless in_H(m, tol).
std::pair<TypedMap, TypedMap> jordan_decompose(const TypedMap& m, double tol = kDefaultTolerance);

/// Re <choi(M), choi(N)>_HS.
double dual_pair_check(const TypedMap& m, const TypedMap& n);

}  // namespace hoqt
