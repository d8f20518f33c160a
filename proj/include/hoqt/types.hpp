#pragma once

// The type language: elementary words over system labels and arrows between
// types. Values are immutable and cheap to copy (shared tree nodes).

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hoqt/registry.hpp"

namespace hoqt {

class Type {
 public:
  /// The trivial type `I` (empty word).
  Type();

  static Type trivial() { return Type(); }
  static Type elementary(std::vector<std::string> labels);
  static Type arrow(Type input, Type output);

  bool is_elementary() const;
  bool is_arrow() const { return !is_elementary(); }
  bool is_trivial() const { return is_elementary() && labels().empty(); }

  /// Word of system labels. Requires is_elementary().
  const std::vector<std::string>& labels() const;
  /// Requires is_arrow().
  const Type& input() const;
  const Type& output() const;

  /// Tree height; cached at construction.
  int order() const;
  std::size_t hash() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Unlabeled binary tree underlying a type.
class Shape {
 public:
  Shape();  // leaf
  static Shape leaf() { return Shape(); }
  static Shape node(Shape left, Shape right);

  bool is_leaf() const { return node_ == nullptr; }
  const Shape& left() const;
  const Shape& right() const;
  int height() const;

  friend bool operator==(const Shape& a, const Shape& b);
  friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Front end

/// Parses `word | expr -> expr | ( expr )`. Without a registry every label is
/// a single uppercase letter other than `I`; with a registry, words are split
/// by greedy longest match against the registered labels.
Type parse_type(std::string_view src);
Type parse_type(std::string_view src, const SystemRegistry& registry);

/// Minimal-bracket canonical form, e.g. `AB->(C->D)`.
std::string format_type(const Type& t);

/// Multi-line drawing with `->` vertices over their two children.
std::string render_tree(const Type& t);

// ---------------------------------------------------------------------------
// Tree queries

inline int order(const Type& t) { return t.order(); }

Shape structure(const Type& t);
bool same_structure(const Type& x, const Type& y);
std::string format_shape(const Shape& s);

/// Unique (input, output) of an arrow; TypeMismatchError for elementary types.
std::pair<Type, Type> decompose_arrow(const Type& t);

/// Every shape of exactly the given height, in a fixed order.
std::vector<Shape> shapes_of_height(int height);

/// Replaces the leaves of `s`, left to right, with `leaf(index)`.
Type label_shape(const Shape& s, const std::function<Type(int)>& leaf);

// ---------------------------------------------------------------------------
// Parallel product on types

enum class ProductCase { elementary, asymmetric_left, symmetric, asymmetric_right };

const char* to_string(ProductCase c);

/// Which defining case applies to the pair (x, y).
ProductCase product_case(const Type& x, const Type& y);

struct PartypeStep {
  int depth = 0;
  ProductCase kind = ProductCase::elementary;
  Type left;
  Type right;
  Type result;
};

/// Parallel product type. When `trace` is given, one step per recursive call
/// is appended in pre-order.
Type partype(const Type& x, const Type& y, std::vector<PartypeStep>* trace = nullptr);

/// Left `I ->` insertion until both trees share a structure.
std::pair<Type, Type> pad(const Type& x, const Type& y);

/// Label-wise product of two same-structure types.
Type overlay(const Type& x, const Type& y);

}  // namespace hoqt

template <>
struct std::hash<hoqt::Type> {
  std::size_t operator()(const hoqt::Type& t) const noexcept { return t.hash(); }
};
