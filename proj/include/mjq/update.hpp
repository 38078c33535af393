#pragma once

#include <functional>

#include "mjq/eval.hpp"
#include "mjq/value_ops.hpp"

namespace mjq {

/// `f |= g`: updates with the outputs of `g`, evaluated in `c`. No polarised
/// exception escapes.
Stream update_toplevel(const FilterPtr& f, const FilterPtr& g, const Context& c, const Value& v);

/// Replaces every position that the MIR filter `mu` designates in `v` by the
/// outputs of `sigma`. `sigma` always runs in the context of the enclosing
/// update, never in contexts extended inside `mu`.
Stream update(const FilterPtr& mu, const UpdateFn& sigma, const Context& c, const Value& v);

ValueResult polarise(const ValueResult& x);
ValueResult depolarise(const ValueResult& x);

/// Handles one output `x` of the body of "try f catch g" on the left of an
/// update with input `v`.
Stream catch_update(const ValueResult& x, const FilterPtr& g, const Context& c, const Value& v);

/// Update step of a fold: update the body with `sigma` for one source
/// element, starting from accumulator `acc`.
using UpdateStep = std::function<Stream(const Value& element, const UpdateFn& sigma, const Value& acc)>;

/// Fold updates for Reduce and For.
Stream fold_update(FoldKind kind, const Value& v, Stream l, UpdateStep step, UpdateFn sigma);
Stream foreach_update(const Value& v, Stream l, UpdateStep step, UpdateFn sigma);

}  // namespace mjq
