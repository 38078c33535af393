#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mjq/value.hpp"

namespace mjq {

struct SourcePos {
  int line = 0;
  int col = 0;
};

enum class BinOp {
  // Complex operators.
  Pipe,
  Comma,
  Assign,     // =
  Update,     // |=
  AddUpdate,  // +=
  SubUpdate,  // -=
  MulUpdate,  // *=
  DivUpdate,  // /=
  ModUpdate,  // %=
  AltUpdate,  // //=
  Alt,        // //
  Or,
  And,
  // Cartesian operators.
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
};

bool is_cartesian(BinOp op);
/// For the arithmetic update operators, the arithmetic operator they apply.
std::optional<BinOp> arith_of_update(BinOp op);
std::string_view spelling(BinOp op);

enum class FoldKind {
  Reduce,
  Foreach,
  For,  // internal only: like foreach, but also yields the initial accumulator
};

enum class Native { Error, Keys, Length };

/// Resolution of a named call. Unresolved calls are looked up by name and
/// arity at evaluation time.
struct CallTarget {
  enum class Kind { Unresolved, Definition, Native };
  Kind kind = Kind::Unresolved;
  int index = -1;
};

struct Filter;
using FilterPtr = std::shared_ptr<const Filter>;

struct PathPart {
  enum class Kind { All, At, From, Until, Range };
  Kind kind = Kind::All;
  FilterPtr lo;  // At, From, Range
  FilterPtr hi;  // Until, Range
  bool optional = false;
};

namespace ast {
struct NumLit { Number value; };
struct StrLit { std::string value; };
struct Identity {};
struct Paren { FilterPtr inner; };
struct TryShorthand { FilterPtr inner; };
struct ArrayCtor { FilterPtr inner; };  // null inner: "[]"
struct ObjectCtor { std::vector<std::pair<FilterPtr, FilterPtr>> entries; };
struct Path { FilterPtr base; std::vector<PathPart> parts; };
struct Binary { BinOp op; FilterPtr lhs; FilterPtr rhs; };
struct BindAs { FilterPtr source; std::string var; FilterPtr body; };
struct Fold { FoldKind kind; FilterPtr source; std::string var; FilterPtr init; FilterPtr body; };
struct Var { std::string name; };
struct Label { std::string name; FilterPtr body; };
struct Break { std::string name; };
struct IfThenElse { FilterPtr cond; FilterPtr then_branch; FilterPtr else_branch; };
struct TryCatch { FilterPtr body; FilterPtr handler; };
struct CallArg { std::string name; };
struct Call { std::string name; std::vector<FilterPtr> args; CallTarget target; };
}  // namespace ast

/// A filter tree. HIR and MIR share this representation; MIR is the subset
/// accepted by is_mir(). Variable and label names are stored without "$".
struct Filter {
  using Node = std::variant<ast::NumLit, ast::StrLit, ast::Identity, ast::Paren, ast::TryShorthand,
                            ast::ArrayCtor, ast::ObjectCtor, ast::Path, ast::Binary, ast::BindAs,
                            ast::Fold, ast::Var, ast::Label, ast::Break, ast::IfThenElse,
                            ast::TryCatch, ast::CallArg, ast::Call>;
  Node node;
  SourcePos pos;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

template <class T>
FilterPtr make_filter(T node, SourcePos pos = {}) {
  return std::make_shared<const Filter>(Filter{Filter::Node(std::move(node)), pos});
}

struct Definition {
  std::string name;
  std::vector<std::string> params;
  FilterPtr body;
  SourcePos pos;
};

struct Program {
  std::vector<Definition> defs;
  FilterPtr main;
};

/// Structural equality, ignoring source positions, call resolution and
/// grouping parentheses.
bool same_structure(const Filter& a, const Filter& b);
bool same_structure(const Program& a, const Program& b);

const Filter& strip_parens(const Filter& f);

/// The MIR predicate.
bool is_mir(const Filter& f);

}  // namespace mjq
