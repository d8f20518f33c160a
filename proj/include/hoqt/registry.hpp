#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hoqt {

/// Assignment of a Hilbert-space dimension to each system label.
///
/// Immutable once built. `I` is reserved for the trivial system and can never
/// be registered; its dimension is implicitly 1. Two registries are
/// interchangeable exactly when their fingerprints match.
class SystemRegistry {
 public:
  SystemRegistry() = default;
  explicit SystemRegistry(std::map<std::string, int> dims);

  /// Parses the inline form `A=2,B=3`.
  static SystemRegistry from_inline(std::string_view spec);
  /// Parses a flat `label = dimension` document; `#` starts a comment.
  static SystemRegistry from_config_text(std::string_view text);
  /// Every label in `labels` mapped to dimension 2.
  static SystemRegistry qubits(const std::vector<std::string>& labels);

  int dim(const std::string& label) const;
  bool contains(const std::string& label) const { return dims_.count(label) != 0; }
  bool empty() const { return dims_.empty(); }
  const std::map<std::string, int>& dims() const { return dims_; }

  /// Longest registered label length; drives greedy tokenization.
  std::size_t max_label_length() const { return max_label_length_; }

  /// Copy with `label` added or overridden.
  SystemRegistry with(const std::string& label, int dim) const;
  /// Entries of `other` override entries of `*this`.
  SystemRegistry overridden_by(const SystemRegistry& other) const;
  /// Union of both; throws RegistryMismatchError on conflicting dimensions.
  SystemRegistry merged_with(const SystemRegistry& other) const;

  /// Canonical `A=2;B=3` rendering.
  std::string fingerprint() const;

  friend bool operator==(const SystemRegistry& a, const SystemRegistry& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::map<std::string, int> dims_;
  std::size_t max_label_length_ = 0;
};

using RegistryPtr = std::shared_ptr<const SystemRegistry>;

inline RegistryPtr make_registry(SystemRegistry reg) {
  return std::make_shared<const SystemRegistry>(std::move(reg));
}

}  // namespace hoqt
