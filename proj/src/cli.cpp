#include "mjq/cli.hpp"

#include <pthread.h>

#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mjq/driver.hpp"
#include "mjq/json.hpp"

namespace mjq {

namespace {

constexpr std::size_t kLargeStackBytes = std::size_t{1} << 30;
// Measured worst case is about 1.5 KiB of stack per unit.
constexpr int kLargeStackDepth = 100000;

struct ThreadJob {
  const std::function<void()>* f;
  std::exception_ptr error;
};

void* thread_main(void* arg) {
  auto* job = static_cast<ThreadJob*>(arg);
  set_max_eval_depth(kLargeStackDepth);
  try {
    (*job->f)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return false;
  std::ostringstream buf;
  buf << file.rdbuf();
  text = buf.str();
  return !file.bad();
}

std::string read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Runner {
 public:
  Runner(std::shared_ptr<const CompiledProgram> program, std::ostream& out, std::ostream& err)
      : program_(std::move(program)), out_(out), err_(err) {}

  void feed(const Value& input) {
    Stream outputs = run_program(program_, input);
    while (auto r = outputs.next()) {
      line_.clear();
      if (r->is_value()) {
        write_value(line_, r->value());
        line_ += '\n';
        out_ << line_;
        continue;
      }
      failed_ = true;
      const Exception& e = r->exception();
      line_ = "error: ";
      if (e.is_error()) {
        write_value(line_, e.payload());
      } else {
        line_ += "break $" + e.label().name + " outside its label";
      }
      out_.flush();
      err_ << line_ << '\n';
    }
  }

  bool failed() const { return failed_; }

 private:
  std::shared_ptr<const CompiledProgram> program_;
  std::ostream& out_;
  std::ostream& err_;
  std::string line_;
  bool failed_ = false;
};

}  // namespace

void run_with_large_stack(const std::function<void()>& f) {
  ThreadJob job{&f, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kLargeStackBytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, thread_main, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // No large stack available; the default depth bound keeps this safe.
    f();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string program_text = cfg.program_text;
  if (cfg.program_file) {
    if (!cfg.program_text.empty()) {
      err << "mjq: give either a filter or --from-file, not both\n";
      return kExitUsage;
    }
    if (!read_file(*cfg.program_file, program_text)) {
      err << "mjq: cannot read " << *cfg.program_file << "\n";
      return kExitUsage;
    }
  }

  std::shared_ptr<const CompiledProgram> program;
  try {
    program = compile(program_text);
  } catch (const CompileError& e) {
    for (const auto& d : e.diagnostics()) err << "mjq: " << d << "\n";
    return kExitCompile;
  }

  int status = kExitOk;
  run_with_large_stack([&] {
    Runner runner(program, out, err);
    if (cfg.null_input) {
      runner.feed(Value());
    } else {
      std::vector<std::string> names = cfg.input_paths;
      bool use_stdin = names.empty();
      if (use_stdin) names.push_back("<stdin>");
      for (const auto& name : names) {
        std::string text;
        if (use_stdin) {
          text = read_all(in);
        } else if (!read_file(name, text)) {
          err << "mjq: cannot read " << name << "\n";
          status = kExitUsage;
          return;
        }
        JsonReader reader(text);
        try {
          while (auto v = reader.next()) runner.feed(*v);
        } catch (const JsonError& e) {
          out.flush();
          err << "mjq: " << name << ": " << e.what() << "\n";
          status = kExitBadJson;
          return;
        }
      }
    }
    if (runner.failed()) status = kExitRuntime;
  });
  out.flush();
  return status;
}

}  // namespace mjq
