#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mjq/ast.hpp"
#include "mjq/stream.hpp"
#include "mjq/value.hpp"

namespace mjq {

/// Lowered definitions with resolved calls, plus the main filter.
struct CompiledProgram {
  std::vector<Definition> defs;
  FilterPtr main;
};

/// Persistent evaluation environment: variables, filter arguments and labels.
/// Binding returns a new context that shares its parent.
class Context {
 public:
  struct Closure;

  Context() = default;
  explicit Context(std::shared_ptr<const CompiledProgram> program) : program_(std::move(program)) {}

  Context bind_var(std::string name, Value v) const;
  Context bind_arg(std::string name, FilterPtr f, Context c) const;
  Context bind_label(std::string name, std::uint64_t id) const;

  const Value* var(std::string_view name) const;
  const Closure* arg(std::string_view name) const;
  std::optional<std::uint64_t> label(std::string_view name) const;

  const CompiledProgram* program() const { return program_.get(); }
  /// The same program with no bindings.
  Context root() const { return Context(program_); }

 private:
  struct Node;
  Context(std::shared_ptr<const CompiledProgram> program, std::shared_ptr<const Node> head)
      : program_(std::move(program)), head_(std::move(head)) {}

  std::shared_ptr<const CompiledProgram> program_;
  std::shared_ptr<const Node> head_;
};

struct Context::Closure {
  FilterPtr filter;
  Context ctx;
};

/// The context in which the body of `d` runs when called from `caller`.
/// An argument that merely forwards one of the caller's own arguments is
/// bound to that argument's closure, which it evaluates to anyway.
Context call_context(const Definition& d, const ast::Call& call, const Context& caller);

/// Evaluates a MIR filter with input `v`.
Stream eval(const FilterPtr& f, const Context& c, const Value& v);

// Stream helpers.

/// The elements whose boolean value is not false; exceptions are kept.
Stream trues(Stream l);
/// `t` if `v` equals `i`, else `e`.
Stream ite(const ValueResult& v, const ValueResult& i, Stream t, Stream e);
/// ⟨v⟩ when the boolean value of `x` is `v`, else the boolean values of `l`.
Stream junction(const ValueResult& x, bool v, Stream l);
/// `l` up to the first break for label `id`; other elements pass through.
Stream label_scope(Stream l, std::uint64_t id);

/// Step of a fold: the outputs for one source element and accumulator.
using FoldStep = std::function<Stream(const Value& element, const Value& acc)>;

/// General fold. Reduce emits nothing per accumulator and the final one at
/// the end; For emits every accumulator.
Stream fold_eval(FoldKind kind, const Value& v, Stream l, FoldStep step);
Stream foreach_eval(const Value& v, Stream l, FoldStep step);

/// A fresh label identifier, unique within the process.
std::uint64_t fresh_label_id();

/// Finds the definition for a call, searching backwards from `before`
/// (exclusive), or -1.
int find_definition(const CompiledProgram& p, std::string_view name, std::size_t arity, std::size_t before);
std::optional<Native> find_native(std::string_view name, std::size_t arity);

}  // namespace mjq
