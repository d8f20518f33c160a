#include "hoqt/types.hpp"

#include <algorithm>
#include <variant>

#include "hoqt/error.hpp"

namespace hoqt {

// ---------------------------------------------------------------------------
// Type

struct Type::Node {
  struct Arrow {
    Type input;
    Type output;
  };
  std::variant<std::vector<std::string>, Arrow> value;
  int order = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t word_hash(const std::vector<std::string>& labels) {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : labels) h = combine(h, std::hash<std::string>{}(l));
  return h;
}

}  // namespace

Type::Type() : node_(nullptr) {}

Type Type::elementary(std::vector<std::string> labels) {
  if (labels.empty()) return Type();
  for (const auto& l : labels) {
    if (l.empty() || l == "I") throw Error("'" + l + "' is not a usable system label");
  }
  auto node = std::make_shared<Node>();
  node->hash = word_hash(labels);
  node->value = std::move(labels);
  return Type(std::move(node));
}

Type Type::arrow(Type input, Type output) {
  auto node = std::make_shared<Node>();
  node->order = 1 + std::max(input.order(), output.order());
  node->hash = combine(combine(0x51ed27ULL, input.hash()), output.hash());
  node->value = Node::Arrow{std::move(input), std::move(output)};
  return Type(std::move(node));
}

bool Type::is_elementary() const {
  return node_ == nullptr || std::holds_alternative<std::vector<std::string>>(node_->value);
}

const std::vector<std::string>& Type::labels() const {
  static const std::vector<std::string> kEmpty;
  if (node_ == nullptr) return kEmpty;
  if (const auto* w = std::get_if<std::vector<std::string>>(&node_->value)) return *w;
  throw TypeMismatchError("arrow type " + format_type(*this) + " has no label word");
}

const Type& Type::input() const {
  if (is_elementary()) throw TypeMismatchError("elementary type " + format_type(*this) + " has no input type");
  return std::get<Node::Arrow>(node_->value).input;
}

const Type& Type::output() const {
  if (is_elementary()) throw TypeMismatchError("elementary type " + format_type(*this) + " has no output type");
  return std::get<Node::Arrow>(node_->value).output;
}

int Type::order() const { return node_ == nullptr ? 0 : node_->order; }

std::size_t Type::hash() const { return node_ == nullptr ? word_hash({}) : node_->hash; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.order() != b.order()) return false;
  if (a.is_elementary() != b.is_elementary()) return false;
  if (a.is_elementary()) return a.labels() == b.labels();
  return a.input() == b.input() && a.output() == b.output();
}

// ---------------------------------------------------------------------------
// Shape

struct Shape::Node {
  Shape left;
  Shape right;
  int height = 1;
};

Shape::Shape() = default;

Shape Shape::node(Shape left, Shape right) {
  Shape s;
  auto n = std::make_shared<Node>();
  n->height = 1 + std::max(left.height(), right.height());
  n->left = std::move(left);
  n->right = std::move(right);
  s.node_ = std::move(n);
  return s;
}

const Shape& Shape::left() const {
  if (is_leaf()) throw StructureMismatchError("leaf shape has no children");
  return node_->left;
}

const Shape& Shape::right() const {
  if (is_leaf()) throw StructureMismatchError("leaf shape has no children");
  return node_->right;
}

int Shape::height() const { return is_leaf() ? 0 : node_->height; }

bool operator==(const Shape& a, const Shape& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() || b.is_leaf()) return false;
  return a.height() == b.height() && a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view src, const SystemRegistry* registry) : src_(src), registry_(registry) {}

  Type parse() {
    skip_space();
    if (at_end()) throw ParseError("empty type expression", pos_, "a type");
    Type t = expr();
    skip_space();
    if (!at_end()) {
      if (peek_arrow()) throw AmbiguityError(pos_);
      throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_,
                       "'->' or end of input");
    }
    return t;
  }

 private:
  // expr := term [ arrow term ]
  Type expr() {
    Type left = term();
    skip_space();
    if (!peek_arrow()) return left;
    consume_arrow();
    Type right = term();
    skip_space();
    if (peek_arrow()) throw AmbiguityError(pos_);
    return Type::arrow(std::move(left), std::move(right));
  }

  // term := word | ( expr )
  Type term() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of input", pos_, "a word or '('");
    if (src_[pos_] == '(') {
      ++pos_;
      Type inner = expr();
      skip_space();
      if (at_end() || src_[pos_] != ')') throw ParseError("unclosed parenthesis", pos_, "')'");
      ++pos_;
      return inner;
    }
    return word();
  }

  Type word() {
    const std::size_t start = pos_;
    while (!at_end() && is_word_char(src_[pos_])) ++pos_;
    if (pos_ == start) {
      throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_,
                       "a system label, 'I' or '('");
    }
    const std::string_view run = src_.substr(start, pos_ - start);
    if (run == "I") return Type::trivial();
    return Type::elementary(registry_ != nullptr ? split_registered(run, start) : split_letters(run, start));
  }

  std::vector<std::string> split_letters(std::string_view run, std::size_t start) const {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < run.size(); ++i) {
      const char c = run[i];
      if (c == 'I') {
        throw ParseError("'I' denotes the trivial type and cannot appear inside a word", start + i,
                         "a system label");
      }
      if (c < 'A' || c > 'Z') {
        throw ParseError("'" + std::string(1, c) + "' is not a system label", start + i,
                         "an uppercase letter");
      }
      labels.emplace_back(1, c);
    }
    return labels;
  }

  std::vector<std::string> split_registered(std::string_view run, std::size_t start) const {
    std::vector<std::string> labels;
    std::size_t i = 0;
    while (i < run.size()) {
      std::size_t len = std::min(registry_->max_label_length(), run.size() - i);
      for (; len > 0; --len) {
        if (registry_->contains(std::string(run.substr(i, len)))) break;
      }
      if (len == 0) {
        if (run[i] == 'I') {
          throw ParseError("'I' denotes the trivial type and cannot appear inside a word", start + i,
                           "a system label");
        }
        throw UnknownLabelError(std::string(run.substr(i)));
      }
      labels.emplace_back(run.substr(i, len));
      i += len;
    }
    return labels;
  }

  static bool is_word_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  }

  bool peek_arrow() const { return arrow_length() != 0; }

  std::size_t arrow_length() const {
    if (src_.substr(pos_, 2) == "->") return 2;
    if (src_.substr(pos_, 3) == "\xE2\x87\x92") return 3;  // U+21D2
    return 0;
  }

  void consume_arrow() { pos_ += arrow_length(); }

  void skip_space() {
    while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= src_.size(); }

  std::string_view src_;
  const SystemRegistry* registry_;
  std::size_t pos_ = 0;
};

}  // namespace

Type parse_type(std::string_view src) { return Parser(src, nullptr).parse(); }

Type parse_type(std::string_view src, const SystemRegistry& registry) {
  return Parser(src, &registry).parse();
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

std::string word_string(const Type& t) {
  if (t.labels().empty()) return "I";
  std::string out;
  for (const auto& l : t.labels()) out += l;
  return out;
}

std::string bracketed(const Type& t) {
  return t.is_arrow() ? "(" + format_type(t) + ")" : format_type(t);
}

}  // namespace

std::string format_type(const Type& t) {
  if (t.is_elementary()) return word_string(t);
  return bracketed(t.input()) + "->" + bracketed(t.output());
}

namespace {

// A rendered subtree: lines padded to a common width, plus the column of the
// subtree's root symbol.
struct Block {
  std::vector<std::string> lines;
  std::size_t width = 0;
  std::size_t root = 0;
};

Block render_block(const Type& t) {
  if (t.is_elementary()) {
    Block b;
    b.lines.push_back(word_string(t));
    b.width = b.lines.front().size();
    b.root = (b.width - 1) / 2;
    return b;
  }
  constexpr std::size_t kGap = 2;
  const Block l = render_block(t.input());
  const Block r = render_block(t.output());
  Block b;
  b.width = l.width + kGap + r.width;
  const std::size_t left_root = l.root;
  const std::size_t right_root = l.width + kGap + r.root;
  b.root = (left_root + right_root) / 2;

  std::string top(b.width, ' ');
  top[b.root] = '-';
  top[b.root + 1] = '>';
  std::string edges(b.width, ' ');
  edges[left_root] = '/';
  edges[right_root] = '\\';
  b.lines.push_back(std::move(top));
  b.lines.push_back(std::move(edges));

  const std::size_t rows = std::max(l.lines.size(), r.lines.size());
  for (std::size_t i = 0; i < rows; ++i) {
    std::string row = i < l.lines.size() ? l.lines[i] : std::string(l.width, ' ');
    row += std::string(kGap, ' ');
    row += i < r.lines.size() ? r.lines[i] : std::string(r.width, ' ');
    b.lines.push_back(std::move(row));
  }
  return b;
}

}  // namespace

std::string render_tree(const Type& t) {
  const Block b = render_block(t);
  std::string out;
  for (auto line : b.lines) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure

Shape structure(const Type& t) {
  if (t.is_elementary()) return Shape::leaf();
  return Shape::node(structure(t.input()), structure(t.output()));
}

bool same_structure(const Type& x, const Type& y) {
  if (x.is_elementary() || y.is_elementary()) return x.is_elementary() && y.is_elementary();
  return x.order() == y.order() && same_structure(x.input(), y.input()) &&
         same_structure(x.output(), y.output());
}

std::string format_shape(const Shape& s) {
  if (s.is_leaf()) return "*";
  return "[" + format_shape(s.left()) + " " + format_shape(s.right()) + "]";
}

std::pair<Type, Type> decompose_arrow(const Type& t) {
  if (t.is_elementary()) {
    throw TypeMismatchError("elementary type " + format_type(t) + " has no input/output decomposition");
  }
  return {t.input(), t.output()};
}

std::vector<Shape> shapes_of_height(int height) {
  if (height < 0) return {};
  if (height == 0) return {Shape::leaf()};
  // Children: at least one of height-1, the other of any lower height.
  std::vector<std::vector<Shape>> by_height;
  for (int h = 0; h < height; ++h) by_height.push_back(shapes_of_height(h));
  std::vector<Shape> out;
  for (int hl = 0; hl < height; ++hl) {
    for (int hr = 0; hr < height; ++hr) {
      if (std::max(hl, hr) != height - 1) continue;
      for (const auto& l : by_height[hl]) {
        for (const auto& r : by_height[hr]) out.push_back(Shape::node(l, r));
      }
    }
  }
  return out;
}

namespace {

Type label_shape_impl(const Shape& s, const std::function<Type(int)>& leaf, int& next) {
  if (s.is_leaf()) return leaf(next++);
  Type in = label_shape_impl(s.left(), leaf, next);
  Type out = label_shape_impl(s.right(), leaf, next);
  return Type::arrow(std::move(in), std::move(out));
}

}  // namespace

Type label_shape(const Shape& s, const std::function<Type(int)>& leaf) {
  int next = 0;
  return label_shape_impl(s, leaf, next);
}

// ---------------------------------------------------------------------------
// Parallel product

const char* to_string(ProductCase c) {
  switch (c) {
    case ProductCase::elementary: return "elementary";
    case ProductCase::asymmetric_left: return "asymmetric-left";
    case ProductCase::symmetric: return "symmetric";
    case ProductCase::asymmetric_right: return "asymmetric-right";
  }
  return "?";
}

ProductCase product_case(const Type& x, const Type& y) {
  if (x.is_elementary() && y.is_elementary()) return ProductCase::elementary;
  if (x.order() < y.order()) return ProductCase::asymmetric_left;
  if (x.order() > y.order()) return ProductCase::asymmetric_right;
  return ProductCase::symmetric;
}

namespace {

Type partype_impl(const Type& x, const Type& y, std::vector<PartypeStep>* trace, int depth) {
  const ProductCase kind = product_case(x, y);
  std::size_t slot = 0;
  if (trace != nullptr) {
    slot = trace->size();
    trace->push_back({depth, kind, x, y, Type()});
  }
  Type result;
  switch (kind) {
    case ProductCase::elementary: {
      auto labels = x.labels();
      labels.insert(labels.end(), y.labels().begin(), y.labels().end());
      result = Type::elementary(std::move(labels));
      break;
    }
    case ProductCase::asymmetric_left:
      result = Type::arrow(y.input(), partype_impl(x, y.output(), trace, depth + 1));
      break;
    case ProductCase::symmetric: {
      Type in = partype_impl(x.input(), y.input(), trace, depth + 1);
      Type out = partype_impl(x.output(), y.output(), trace, depth + 1);
      result = Type::arrow(std::move(in), std::move(out));
      break;
    }
    case ProductCase::asymmetric_right:
      result = Type::arrow(x.input(), partype_impl(x.output(), y, trace, depth + 1));
      break;
  }
  if (trace != nullptr) (*trace)[slot].result = result;
  return result;
}

std::pair<Type, Type> pad_impl(Type x, Type y) {
  if (x.order() < y.order()) x = Type::arrow(Type::trivial(), std::move(x));
  else if (y.order() < x.order()) y = Type::arrow(Type::trivial(), std::move(y));
  if (x.is_elementary() && y.is_elementary()) return {std::move(x), std::move(y)};
  auto [in_x, in_y] = pad_impl(x.input(), y.input());
  auto [out_x, out_y] = pad_impl(x.output(), y.output());
  return {Type::arrow(std::move(in_x), std::move(out_x)), Type::arrow(std::move(in_y), std::move(out_y))};
}

}  // namespace

Type partype(const Type& x, const Type& y, std::vector<PartypeStep>* trace) {
  return partype_impl(x, y, trace, 0);
}

std::pair<Type, Type> pad(const Type& x, const Type& y) {
  auto padded = pad_impl(x, y);
  // Left-only insertion always equalizes; surface it loudly if it ever does not.
  if (!same_structure(padded.first, padded.second)) {
    throw StructureMismatchError("left-only padding failed to equalize " + format_type(x) + " and " +
                                 format_type(y));
  }
  return padded;
}

Type overlay(const Type& x, const Type& y) {
  if (x.is_elementary() && y.is_elementary()) {
    auto labels = x.labels();
    labels.insert(labels.end(), y.labels().begin(), y.labels().end());
    return Type::elementary(std::move(labels));
  }
  if (x.is_elementary() || y.is_elementary()) {
    throw StructureMismatchError("cannot overlay " + format_type(x) + " and " + format_type(y) +
                                 ": structures differ");
  }
  return Type::arrow(overlay(x.input(), y.input()), overlay(x.output(), y.output()));
}

}  // namespace hoqt
