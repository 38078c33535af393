#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mjq/value.hpp"

namespace mjq {

/// A lazy, single-pass, possibly infinite sequence of value results.
///
/// Nothing is computed before it is pulled with next(). Streams are move-only;
/// use LazyList when a sequence has to be traversed more than once.
class Stream {
 public:
  class Source {
   public:
    virtual ~Source() = default;
    virtual std::optional<ValueResult> next() = 0;
    /// A stream holding everything this source has left to produce, if the
    /// source has reduced to one. The owning stream then replaces the source
    /// by it, which keeps tail positions from nesting.
    virtual Stream* remainder() { return nullptr; }
  };

  Stream() = default;
  explicit Stream(std::unique_ptr<Source> source);
  Stream(ValueResult single);

  Stream(Stream&&) noexcept = default;
  Stream& operator=(Stream&&) noexcept = default;
  Stream(const Stream&) = delete;
  Stream& operator=(const Stream&) = delete;

  std::optional<ValueResult> next();
  /// True once the stream is known to be exhausted without pulling it.
  bool done() const { return state_ == State::Done; }

  static Stream empty() { return Stream(); }
  static Stream of(std::vector<ValueResult> items);

  /// Stream backed by a callable returning std::optional<ValueResult>.
  template <class F>
  static Stream generate(F f);

  /// The thunk runs on the first pull.
  static Stream defer(std::function<Stream()> thunk);

  /// All of `first`, then the stream built by `rest` (built on demand).
  static Stream concat(Stream first, std::function<Stream()> rest);

  /// Sum over every element of `s` of `f(element)`.
  static Stream flat_map(Stream s, std::function<Stream(ValueResult)> f);

  /// Like flat_map, but exceptions in `s` are passed through unchanged and
  /// only values reach `f`.
  static Stream and_then(Stream s, std::function<Stream(const Value&)> f);

  static Stream map(Stream s, std::function<ValueResult(ValueResult)> f);

  std::vector<ValueResult> collect();
  std::vector<ValueResult> take(std::size_t n);

 private:
  enum class State { Done, Single, Source };
  State state_ = State::Done;
  std::optional<ValueResult> single_;
  std::unique_ptr<Source> source_;
};

namespace detail {
template <class F>
class GeneratorSource final : public Stream::Source {
 public:
  explicit GeneratorSource(F f) : f_(std::move(f)) {}
  std::optional<ValueResult> next() override { return f_(); }

 private:
  F f_;
};
}  // namespace detail

template <class F>
Stream Stream::generate(F f) {
  return Stream(std::make_unique<detail::GeneratorSource<F>>(std::move(f)));
}

/// Memoising, shareable view of a stream. Each element is pulled from the
/// underlying stream at most once, no matter how many copies traverse it.
class LazyList {
 public:
  LazyList() = default;
  explicit LazyList(Stream s);

  /// nullptr at the end of the list.
  const ValueResult* head() const;
  LazyList tail() const;
  bool empty() const { return head() == nullptr; }

 private:
  struct Cell;
  struct Producer;
  explicit LazyList(std::shared_ptr<Cell> cell) : cell_(std::move(cell)) {}
  void force() const;
  std::shared_ptr<Cell> cell_;
};

/// Default nesting bound for stream pulls; deeper evaluation yields a
/// resource error. Safe on an 8 MiB stack.
inline constexpr int kMaxEvalDepth = 2000;

/// Per-thread nesting bound. Raise it only on threads with a larger stack.
void set_max_eval_depth(int depth);
int max_eval_depth();

bool is_resource_error(const ValueResult& r);

}  // namespace mjq
