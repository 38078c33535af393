#pragma once

#include <functional>
#include <string_view>

#include "mjq/stream.hpp"
#include "mjq/value.hpp"

namespace mjq {

// Arithmetic. Every operation returns an error result for type combinations
// it does not define, and division or remainder by zero is an error.
ValueResult add(const Value& l, const Value& r);
ValueResult sub(const Value& l, const Value& r);
ValueResult mul(const Value& l, const Value& r);
ValueResult div(const Value& l, const Value& r);
ValueResult rem(const Value& l, const Value& r);

// Exception-propagating variants: the leftmost exception argument wins.
ValueResult add(const ValueResult& l, const ValueResult& r);
ValueResult sub(const ValueResult& l, const ValueResult& r);
ValueResult mul(const ValueResult& l, const ValueResult& r);
ValueResult div(const ValueResult& l, const ValueResult& r);
ValueResult rem(const ValueResult& l, const ValueResult& r);

/// Object recursive merge: nested objects merge pointwise, otherwise the
/// right side wins.
Object merge_objects(const Object& l, const Object& r);

/// Splits `x` on the non-empty separator `sep`.
Value split_str(std::string_view x, std::string_view sep);

// Simple functions.
Stream keys_of(const Value& v);
ValueResult length_of(const Value& v);
ValueResult bool_of(const ValueResult& x);

// Access.
ValueResult index(const Value& v, const Value& i);
Stream iterate(const Value& v);
ValueResult slice(const Value& v, const Value& from, const Value& to);

// Construction.
ValueResult arr_of_stream(Stream s);
ValueResult obj_entry(const Value& k, const Value& v);

/// First element of `s`, or `fallback` when `s` is empty.
ValueResult head(Stream s, ValueResult fallback);

/// Function applied at the positions an update designates.
using UpdateFn = std::function<Stream(const Value&)>;

// Update counterparts of the access operators.
ValueResult upd_iterate(const Value& v, const UpdateFn& f);
ValueResult upd_index(const Value& v, const Value& i, const UpdateFn& f);
ValueResult upd_slice(const Value& v, const Value& from, const Value& to, const UpdateFn& f);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

}  // namespace mjq
