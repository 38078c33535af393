#include <algorithm>
#include <set>

#include "mjq/lower.hpp"

namespace mjq {

namespace {

class Checker {
 public:
  Checker(std::vector<BindingError>& errors, std::set<Signature> callable, const std::vector<std::string>* params)
      : errors_(errors), callable_(std::move(callable)), params_(params) {}

  void check(const FilterPtr& f) {
    if (f) visit(*f);
  }

 private:
  void error(SourcePos pos, std::string message) { errors_.push_back({pos, std::move(message)}); }

  void visit(const Filter& f) {
    std::visit([&](const auto& x) { node(x, f.pos); }, f.node);
  }

  void node(const ast::NumLit&, SourcePos) {}
  void node(const ast::StrLit&, SourcePos) {}
  void node(const ast::Identity&, SourcePos) {}
  void node(const ast::Paren& x, SourcePos) { check(x.inner); }
  void node(const ast::TryShorthand& x, SourcePos) { check(x.inner); }
  void node(const ast::ArrayCtor& x, SourcePos) { check(x.inner); }
  void node(const ast::ObjectCtor& x, SourcePos) {
    for (const auto& [k, v] : x.entries) {
      check(k);
      check(v);
    }
  }
  void node(const ast::Path& x, SourcePos) {
    check(x.base);
    for (const auto& p : x.parts) {
      check(p.lo);
      check(p.hi);
    }
  }
  void node(const ast::Binary& x, SourcePos) {
    check(x.lhs);
    check(x.rhs);
  }
  void node(const ast::BindAs& x, SourcePos) {
    check(x.source);
    vars_.push_back(x.var);
    check(x.body);
    vars_.pop_back();
  }
  void node(const ast::Fold& x, SourcePos) {
    check(x.source);
    check(x.init);
    vars_.push_back(x.var);
    check(x.body);
    vars_.pop_back();
  }
  void node(const ast::Var& x, SourcePos pos) {
    if (std::find(vars_.begin(), vars_.end(), x.name) == vars_.end()) error(pos, "unbound variable $" + x.name);
  }
  void node(const ast::Label& x, SourcePos) {
    labels_.push_back(x.name);
    check(x.body);
    labels_.pop_back();
  }
  void node(const ast::Break& x, SourcePos pos) {
    if (std::find(labels_.begin(), labels_.end(), x.name) == labels_.end()) error(pos, "unbound label $" + x.name);
  }
  void node(const ast::IfThenElse& x, SourcePos) {
    check(x.cond);
    check(x.then_branch);
    check(x.else_branch);
  }
  void node(const ast::TryCatch& x, SourcePos) {
    check(x.body);
    check(x.handler);
  }
  void node(const ast::CallArg& x, SourcePos pos) {
    if (!params_ || std::find(params_->begin(), params_->end(), x.name) == params_->end()) {
      error(pos, "unbound filter argument " + x.name);
    }
  }
  void node(const ast::Call& x, SourcePos pos) {
    if (!callable_.count({x.name, static_cast<int>(x.args.size())})) {
      error(pos, "undefined filter " + x.name + "/" + std::to_string(x.args.size()));
    }
    for (const auto& a : x.args) check(a);
  }

  std::vector<BindingError>& errors_;
  std::set<Signature> callable_;
  const std::vector<std::string>* params_;
  std::vector<std::string> vars_;
  std::vector<std::string> labels_;
};

}  // namespace

std::vector<BindingError> check_wellformed(const Program& p, const std::vector<Signature>& predefined) {
  std::vector<BindingError> errors;
  std::set<Signature> callable(predefined.begin(), predefined.end());
  for (const auto& d : p.defs) {
    callable.insert({d.name, static_cast<int>(d.params.size())});
    Checker(errors, callable, &d.params).check(d.body);
  }
  Checker(errors, callable, nullptr).check(p.main);
  return errors;
}

}  // namespace mjq
