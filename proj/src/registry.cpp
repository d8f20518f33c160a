#include "hoqt/registry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "hoqt/error.hpp"

namespace hoqt {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_label(std::string_view label) {
  if (label.empty() || label == "I") return false;
  if (!std::isupper(static_cast<unsigned char>(label.front()))) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void parse_entry(std::string_view entry, std::map<std::string, int>& out) {
  const auto eq = entry.find('=');
  if (eq == std::string_view::npos) {
    throw FormatError("registry entry '" + std::string(entry) + "' is not of the form label=dimension");
  }
  const auto label = trim(entry.substr(0, eq));
  const auto value = trim(entry.substr(eq + 1));
  int dim = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dim);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw FormatError("dimension '" + std::string(value) + "' for label '" + std::string(label) +
                      "' is not an integer");
  }
  out[std::string(label)] = dim;
}

}  // namespace

SystemRegistry::SystemRegistry(std::map<std::string, int> dims) : dims_(std::move(dims)) {
  for (const auto& [label, dim] : dims_) {
    if (!valid_label(label)) {
      throw FormatError("invalid system label '" + label +
                        "' (labels start with an uppercase letter and 'I' is reserved)");
    }
    if (dim < 1) {
      throw FormatError("dimension of '" + label + "' must be positive, got " + std::to_string(dim));
    }
    max_label_length_ = std::max(max_label_length_, label.size());
  }
}

SystemRegistry SystemRegistry::from_inline(std::string_view spec) {
  std::map<std::string, int> dims;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto entry = trim(spec.substr(0, comma));
    if (!entry.empty()) parse_entry(entry, dims);
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return SystemRegistry(std::move(dims));
}

SystemRegistry SystemRegistry::from_config_text(std::string_view text) {
  std::map<std::string, int> dims;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (!view.empty()) parse_entry(view, dims);
  }
  return SystemRegistry(std::move(dims));
}

SystemRegistry SystemRegistry::qubits(const std::vector<std::string>& labels) {
  std::map<std::string, int> dims;
  for (const auto& l : labels) dims[l] = 2;
  return SystemRegistry(std::move(dims));
}

int SystemRegistry::dim(const std::string& label) const {
  const auto it = dims_.find(label);
  if (it == dims_.end()) throw UnknownLabelError(label);
  return it->second;
}

SystemRegistry SystemRegistry::with(const std::string& label, int dim) const {
  auto dims = dims_;
  dims[label] = dim;
  return SystemRegistry(std::move(dims));
}

SystemRegistry SystemRegistry::overridden_by(const SystemRegistry& other) const {
  auto dims = dims_;
  for (const auto& [label, dim] : other.dims_) dims[label] = dim;
  return SystemRegistry(std::move(dims));
}

SystemRegistry SystemRegistry::merged_with(const SystemRegistry& other) const {
  auto dims = dims_;
  for (const auto& [label, dim] : other.dims_) {
    const auto [it, inserted] = dims.emplace(label, dim);
    if (!inserted && it->second != dim) {
      throw RegistryMismatchError("label '" + label + "' has dimension " + std::to_string(it->second) +
                                  " in one registry and " + std::to_string(dim) + " in the other");
    }
  }
  return SystemRegistry(std::move(dims));
}

std::string SystemRegistry::fingerprint() const {
  std::string out;
  for (const auto& [label, dim] : dims_) {
    if (!out.empty()) out += ';';
    out += label + '=' + std::to_string(dim);
  }
  return out;
}

}  // namespace hoqt
