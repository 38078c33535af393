#include "mjq/stream.hpp"

namespace mjq {

namespace {

thread_local int g_depth = 0;
thread_local int g_max_depth = kMaxEvalDepth;

constexpr const char* kResourceMessage = "resource: evaluation depth limit exceeded";

class DepthGuard {
 public:
  DepthGuard() { ++g_depth; }
  ~DepthGuard() { --g_depth; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;
};

class VectorSource final : public Stream::Source {
 public:
  explicit VectorSource(std::vector<ValueResult> items) : items_(std::move(items)) {}
  std::optional<ValueResult> next() override {
    if (pos_ == items_.size()) return std::nullopt;
    return std::move(items_[pos_++]);
  }

 private:
  std::vector<ValueResult> items_;
  std::size_t pos_ = 0;
};

class DeferSource final : public Stream::Source {
 public:
  explicit DeferSource(std::function<Stream()> thunk) : thunk_(std::move(thunk)) {}
  std::optional<ValueResult> next() override {
    if (thunk_) {
      inner_ = thunk_();
      thunk_ = nullptr;
    }
    return inner_.next();
  }
  Stream* remainder() override {
    if (thunk_) {
      inner_ = thunk_();
      thunk_ = nullptr;
    }
    return &inner_;
  }

 private:
  std::function<Stream()> thunk_;
  Stream inner_;
};

class ConcatSource final : public Stream::Source {
 public:
  ConcatSource(Stream first, std::function<Stream()> rest)
      : current_(std::move(first)), rest_(std::move(rest)) {}
  std::optional<ValueResult> next() override {
    while (true) {
      if (auto x = current_.next()) return x;
      if (!rest_) return std::nullopt;
      current_ = rest_();
      rest_ = nullptr;
    }
  }
  Stream* remainder() override {
    if (rest_ && current_.done()) {
      current_ = rest_();
      rest_ = nullptr;
    }
    return rest_ ? nullptr : &current_;
  }

 private:
  Stream current_;
  std::function<Stream()> rest_;
};

class FlatMapSource final : public Stream::Source {
 public:
  FlatMapSource(Stream outer, std::function<Stream(ValueResult)> f)
      : outer_(std::move(outer)), f_(std::move(f)) {}
  std::optional<ValueResult> next() override {
    while (true) {
      if (auto x = inner_.next()) return x;
      auto o = outer_.next();
      if (!o) return std::nullopt;
      inner_ = f_(std::move(*o));
    }
  }
  Stream* remainder() override { return outer_.done() ? &inner_ : nullptr; }

 private:
  Stream outer_;
  std::function<Stream(ValueResult)> f_;
  Stream inner_;
};

class AndThenSource final : public Stream::Source {
 public:
  AndThenSource(Stream outer, std::function<Stream(const Value&)> f)
      : outer_(std::move(outer)), f_(std::move(f)) {}
  std::optional<ValueResult> next() override {
    while (true) {
      if (auto x = inner_.next()) return x;
      auto o = outer_.next();
      if (!o) return std::nullopt;
      if (o->is_exception()) return o;
      inner_ = f_(o->value());
    }
  }
  Stream* remainder() override { return outer_.done() ? &inner_ : nullptr; }

 private:
  Stream outer_;
  std::function<Stream(const Value&)> f_;
  Stream inner_;
};

}  // namespace

Stream::Stream(std::unique_ptr<Source> source)
    : state_(source ? State::Source : State::Done), source_(std::move(source)) {}

void set_max_eval_depth(int depth) { g_max_depth = depth; }
int max_eval_depth() { return g_max_depth; }

Stream::Stream(ValueResult single) : state_(State::Single), single_(std::move(single)) {}

std::optional<ValueResult> Stream::next() {
  if (state_ == State::Source) {
    if (g_depth >= g_max_depth) {
      // The unevaluated remainder of this stream is dropped.
      state_ = State::Done;
      source_.reset();
      return error_result(kResourceMessage);
    }
    DepthGuard guard;
    while (state_ == State::Source) {
      Stream* rest = source_->remainder();
      if (!rest) {
        auto x = source_->next();
        if (!x) {
          state_ = State::Done;
          source_.reset();
        }
        return x;
      }
      Stream tmp = std::move(*rest);
      *this = std::move(tmp);
    }
  }
  if (state_ == State::Single) {
    state_ = State::Done;
    auto x = std::move(single_);
    single_.reset();
    return x;
  }
  return std::nullopt;
}

Stream Stream::of(std::vector<ValueResult> items) {
  if (items.empty()) return Stream();
  if (items.size() == 1) return Stream(std::move(items.front()));
  return Stream(std::make_unique<VectorSource>(std::move(items)));
}

Stream Stream::defer(std::function<Stream()> thunk) {
  return Stream(std::make_unique<DeferSource>(std::move(thunk)));
}

Stream Stream::concat(Stream first, std::function<Stream()> rest) {
  return Stream(std::make_unique<ConcatSource>(std::move(first), std::move(rest)));
}

Stream Stream::flat_map(Stream s, std::function<Stream(ValueResult)> f) {
  if (s.state_ == State::Done) return Stream();
  if (s.state_ == State::Single) return f(std::move(*s.next()));
  return Stream(std::make_unique<FlatMapSource>(std::move(s), std::move(f)));
}

Stream Stream::and_then(Stream s, std::function<Stream(const Value&)> f) {
  if (s.state_ == State::Done) return Stream();
  if (s.state_ == State::Single) {
    auto x = *s.next();
    if (x.is_exception()) return Stream(std::move(x));
    return f(x.value());
  }
  return Stream(std::make_unique<AndThenSource>(std::move(s), std::move(f)));
}

Stream Stream::map(Stream s, std::function<ValueResult(ValueResult)> f) {
  return generate([s = std::move(s), f = std::move(f)]() mutable -> std::optional<ValueResult> {
    auto x = s.next();
    if (!x) return std::nullopt;
    return f(std::move(*x));
  });
}

std::vector<ValueResult> Stream::collect() {
  std::vector<ValueResult> out;
  while (auto x = next()) out.push_back(std::move(*x));
  return out;
}

std::vector<ValueResult> Stream::take(std::size_t n) {
  std::vector<ValueResult> out;
  while (out.size() < n) {
    auto x = next();
    if (!x) break;
    out.push_back(std::move(*x));
  }
  return out;
}

struct LazyList::Producer {
  Stream stream;
};

struct LazyList::Cell {
  std::shared_ptr<Producer> producer;
  bool forced = false;
  std::optional<ValueResult> value;
  std::shared_ptr<Cell> next;

  ~Cell() {
    // Unlink iteratively so that long lists do not recurse on destruction.
    auto n = std::move(next);
    while (n && n.use_count() == 1) {
      auto after = std::move(n->next);
      n = std::move(after);
    }
  }
};

LazyList::LazyList(Stream s) : cell_(std::make_shared<Cell>()) {
  cell_->producer = std::make_shared<Producer>(Producer{std::move(s)});
}

void LazyList::force() const {
  if (!cell_ || cell_->forced) return;
  cell_->value = cell_->producer->stream.next();
  cell_->forced = true;
  if (cell_->value) {
    cell_->next = std::make_shared<Cell>();
    cell_->next->producer = cell_->producer;
  }
  cell_->producer.reset();
}

const ValueResult* LazyList::head() const {
  force();
  if (!cell_ || !cell_->value) return nullptr;
  return &*cell_->value;
}

LazyList LazyList::tail() const {
  force();
  if (!cell_ || !cell_->value) return LazyList();
  return LazyList(cell_->next);
}

bool is_resource_error(const ValueResult& r) {
  return r.is_exception() && r.exception().is_error() && r.exception().payload().is_string() &&
         r.exception().payload().as_string() == kResourceMessage;
}

}  // namespace mjq
