#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mjq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mjq: run a jq filter over JSON values", "mjq"};
  mjq::RunConfig cfg;
  std::optional<std::string> filter;
  std::vector<std::string> files;
  std::string program_file;
  app.add_flag("-n,--null-input", cfg.null_input, "Run the filter once with null as input");
  app.add_option("-f,--from-file", program_file, "Read the filter from FILE");
  // A separate scalar positional keeps CLI11 from reading "[...]" filters as lists.
  app.add_option("filter", filter, "The filter (with -f, the first input FILE)");
  app.add_option("files", files, "Input FILES (default: standard input)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : mjq::kExitUsage;
  }

  if (!program_file.empty()) {
    cfg.program_file = program_file;
    if (filter) files.insert(files.begin(), *filter);
  } else if (filter) {
    cfg.program_text = *filter;
  } else {
    std::cerr << "mjq: missing FILTER\n" << app.help();
    return mjq::kExitUsage;
  }
  cfg.input_paths = std::move(files);

  std::ios::sync_with_stdio(false);
  return mjq::run(cfg, std::cin, std::cout, std::cerr);
}
