#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geo4/errors.hpp"
#include "geo4/lexer.hpp"
#include "geo4/rational.hpp"

namespace geo4 {

struct RecipeNode;
using NodePtr = std::shared_ptr<const RecipeNode>;

/// Argument value: integer, p/q, "string", bare identifier or nested node.
struct Value {
  enum class Kind { Int, Rat, Str, Ident, Node } kind = Kind::Int;
  std::int64_t i = 0;
  Rational r{0};
  std::string s; // Str and Ident
  NodePtr node;

  static Value integer(std::int64_t v) { return {Kind::Int, v, Rational(0), {}, {}}; }
  static Value rational(Rational v) { return {Kind::Rat, 0, v, {}, {}}; }
  static Value string(std::string v) { return {Kind::Str, 0, Rational(0), std::move(v), {}}; }
  static Value ident(std::string v) { return {Kind::Ident, 0, Rational(0), std::move(v), {}}; }
  static Value of(NodePtr n) { return {Kind::Node, 0, Rational(0), {}, std::move(n)}; }
};

inline bool operator==(const Value &a, const Value &b);

struct Arg {
  std::string key; // empty for positional arguments
  Value value;
};

/// One construction step `Head(positional..., key=value...)`. Node-valued
/// arguments other than `attest=Cert(...)` are the children.
struct RecipeNode {
  std::string head;
  std::vector<Arg> args;
  int line = 0;
  int column = 0;

  [[nodiscard]] const Value *find(std::string_view key) const {
    for (const auto &a : args)
      if (a.key == key)
        return &a.value;
    return nullptr;
  }
  [[nodiscard]] bool has(std::string_view key) const { return find(key) != nullptr; }

  [[nodiscard]] std::optional<std::int64_t> get_int(std::string_view key) const {
    const Value *v = find(key);
    if (!v)
      return std::nullopt;
    if (v->kind != Value::Kind::Int)
      throw ParseError("argument '" + std::string(key) + "' of " + head +
                           " must be an integer",
                       line, column);
    return v->i;
  }
  [[nodiscard]] std::int64_t int_or(std::string_view key, std::int64_t def) const {
    return get_int(key).value_or(def);
  }
  [[nodiscard]] std::int64_t require_int(std::string_view key) const {
    auto v = get_int(key);
    if (!v)
      throw ParseError(head + " needs '" + std::string(key) + "='", line, column);
    return *v;
  }
  /// Accepts an integer or p/q.
  [[nodiscard]] std::optional<Rational> get_rational(std::string_view key) const {
    const Value *v = find(key);
    if (!v)
      return std::nullopt;
    if (v->kind == Value::Kind::Int)
      return Rational(v->i);
    if (v->kind == Value::Kind::Rat)
      return v->r;
    throw ParseError("argument '" + std::string(key) + "' of " + head +
                         " must be a number",
                     line, column);
  }
  /// String or identifier value.
  [[nodiscard]] std::optional<std::string> get_text(std::string_view key) const {
    const Value *v = find(key);
    if (!v)
      return std::nullopt;
    if (v->kind != Value::Kind::Str && v->kind != Value::Kind::Ident)
      throw ParseError("argument '" + std::string(key) + "' of " + head +
                           " must be a name or string",
                       line, column);
    return v->s;
  }
  /// First positional identifier, e.g. the block name.
  [[nodiscard]] std::optional<std::string> name() const {
    for (const auto &a : args)
      if (a.key.empty() && a.value.kind == Value::Kind::Ident)
        return a.value.s;
    return std::nullopt;
  }
  [[nodiscard]] std::vector<NodePtr> children() const {
    std::vector<NodePtr> out;
    for (const auto &a : args)
      if (a.value.kind == Value::Kind::Node && a.value.node->head != "Cert")
        out.push_back(a.value.node);
    return out;
  }
  [[nodiscard]] std::vector<NodePtr> certificates() const {
    std::vector<NodePtr> out;
    for (const auto &a : args)
      if (a.value.kind == Value::Kind::Node && a.value.node->head == "Cert")
        out.push_back(a.value.node);
    return out;
  }
};

/// Structural equality; source positions are ignored.
inline bool operator==(const RecipeNode &a, const RecipeNode &b) {
  if (a.head != b.head || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (a.args[i].key != b.args[i].key || !(a.args[i].value == b.args[i].value))
      return false;
  return true;
}

inline bool operator==(const Value &a, const Value &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Value::Kind::Int:
    return a.i == b.i;
  case Value::Kind::Rat:
    return a.r == b.r;
  case Value::Kind::Str:
  case Value::Kind::Ident:
    return a.s == b.s;
  case Value::Kind::Node:
    return *a.node == *b.node;
  }
  return false;
}

/// A construction tree with an optional identifier (the fixture file stem or
/// the planner's rule id).
struct Recipe {
  std::string id;
  NodePtr root;
};

inline bool operator==(const Recipe &a, const Recipe &b) {
  return *a.root == *b.root;
}

// ---------------------------------------------------------------------------
// Building helpers used by the planner and the block table

class NodeBuilder {
public:
  explicit NodeBuilder(std::string head) { n_.head = std::move(head); }

  NodeBuilder &pos(std::string ident) {
    n_.args.push_back({"", Value::ident(std::move(ident))});
    return *this;
  }
  NodeBuilder &child(NodePtr c) {
    n_.args.push_back({"", Value::of(std::move(c))});
    return *this;
  }
  NodeBuilder &kv(std::string key, std::int64_t v) {
    n_.args.push_back({std::move(key), Value::integer(v)});
    return *this;
  }
  NodeBuilder &kv(std::string key, Rational v) {
    n_.args.push_back({std::move(key), Value::rational(v)});
    return *this;
  }
  NodeBuilder &kv_ident(std::string key, std::string v) {
    n_.args.push_back({std::move(key), Value::ident(std::move(v))});
    return *this;
  }
  NodeBuilder &kv_str(std::string key, std::string v) {
    n_.args.push_back({std::move(key), Value::string(std::move(v))});
    return *this;
  }
  NodeBuilder &chars(std::int64_t e, std::int64_t sigma) {
    kv("e", e);
    return kv("sigma", sigma);
  }
  NodeBuilder &attest(std::string kind, std::string why) {
    auto c = std::make_shared<RecipeNode>();
    c->head = "Cert";
    c->args.push_back({"", Value::ident(std::move(kind))});
    c->args.push_back({"why", Value::string(std::move(why))});
    n_.args.push_back({"attest", Value::of(std::move(c))});
    return *this;
  }
  [[nodiscard]] NodePtr build() const { return std::make_shared<RecipeNode>(n_); }

private:
  RecipeNode n_;
};

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline NodePtr parse_node(Cursor &cur);

inline Value parse_value(Cursor &cur) {
  if (cur.peek() == '"')
    return Value::string(cur.quoted());
  if (cur.at_integer()) {
    int line = cur.line(), col = cur.column();
    std::int64_t p = cur.integer();
    if (!cur.accept('/'))
      return Value::integer(p);
    std::int64_t q = cur.integer();
    if (q == 0)
      throw ParseError("zero denominator", line, col);
    return Value::rational(Rational(p, q));
  }
  if (!cur.at_ident())
    cur.fail("expected a value" + cur.found());
  int line = cur.line(), col = cur.column();
  std::string id = cur.ident();
  if (cur.peek() != '(')
    return Value::ident(std::move(id));
  auto n = parse_node(cur);
  auto m = std::make_shared<RecipeNode>(*n);
  m->head = std::move(id);
  m->line = line;
  m->column = col;
  return Value::of(m);
}

/// Parses the argument list; the caller has consumed the head identifier.
inline NodePtr parse_node(Cursor &cur) {
  auto n = std::make_shared<RecipeNode>();
  n->line = cur.line();
  n->column = cur.column();
  cur.expect('(');
  if (cur.accept(')'))
    return n;
  do {
    if (cur.at_ident()) {
      int line = cur.line(), col = cur.column();
      std::string id = cur.ident();
      if (cur.accept('=')) {
        n->args.push_back({std::move(id), parse_value(cur)});
      } else if (cur.peek() == '(') {
        auto c = std::make_shared<RecipeNode>(*parse_node(cur));
        c->head = std::move(id);
        c->line = line;
        c->column = col;
        n->args.push_back({"", Value::of(c)});
      } else {
        n->args.push_back({"", Value::ident(std::move(id))});
      }
    } else {
      n->args.push_back({"", parse_value(cur)});
    }
  } while (cur.accept(','));
  cur.expect(')');
  return n;
}

inline std::string escape(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void print_node(const RecipeNode &n, int depth, std::string &out);

inline std::string print_scalar(const Value &v) {
  switch (v.kind) {
  case Value::Kind::Int:
    return std::to_string(v.i);
  case Value::Kind::Rat:
    return std::to_string(v.r.numerator()) + "/" + std::to_string(v.r.denominator());
  case Value::Kind::Str:
    return escape(v.s);
  case Value::Kind::Ident:
    return v.s;
  case Value::Kind::Node: {
    std::string s;
    print_node(*v.node, 0, s);
    return s;
  }
  }
  return {};
}

inline bool is_leaf(const RecipeNode &n) {
  for (const auto &a : n.args)
    if (a.value.kind == Value::Kind::Node)
      return false;
  return true;
}

/// Leaves and certificates stay on one line; other nodes put each argument
/// on its own line.
inline void print_node(const RecipeNode &n, int depth, std::string &out) {
  out += n.head + "(";
  if (is_leaf(n)) {
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i)
        out += ", ";
      if (!n.args[i].key.empty())
        out += n.args[i].key + "=";
      out += print_scalar(n.args[i].value);
    }
    out += ")";
    return;
  }
  std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  for (std::size_t i = 0; i < n.args.size(); ++i) {
    out += "\n" + pad;
    const auto &a = n.args[i];
    if (!a.key.empty())
      out += a.key + "=";
    if (a.value.kind == Value::Kind::Node)
      print_node(*a.value.node, depth + 1, out);
    else
      out += print_scalar(a.value);
    if (i + 1 < n.args.size())
      out += ",";
  }
  out += ")";
}

} // namespace detail

/// Parses one node, e.g. `Z2(g=2, Block(XgLF, g=2))`. `#` starts a comment.
inline Recipe parse_recipe(std::string_view text, std::string id = {}) {
  Cursor cur(text);
  if (!cur.at_ident())
    cur.fail("expected a node" + cur.found());
  int line = cur.line(), col = cur.column();
  std::string head = cur.ident();
  if (cur.peek() != '(')
    cur.fail("expected '('" + cur.found());
  auto n = std::make_shared<RecipeNode>(*detail::parse_node(cur));
  n->head = std::move(head);
  n->line = line;
  n->column = col;
  if (!cur.eof())
    cur.fail("trailing input" + cur.found());
  return {std::move(id), n};
}

inline std::string print_recipe(const Recipe &r) {
  std::string out;
  detail::print_node(*r.root, 0, out);
  return out + "\n";
}

inline std::string print_node(const RecipeNode &n) {
  std::string out;
  detail::print_node(n, 0, out);
  return out;
}

} // namespace geo4
