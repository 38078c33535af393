#include <sstream>

#include "gen.hpp"
#include "mjq/cli.hpp"
#include "mjq/json.hpp"
#include "properties.hpp"

namespace mjq::testing {

PropertyReport prop_json_roundtrip(std::uint64_t seed, int n) {
  PropertyReport rep{"JSON write then read round trip"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    Value v = gen_value(g, 3, true);
    std::string text = write_value(v);
    try {
      std::vector<Value> back = read_values(text);
      rep.check(back.size() == 1 && same_bits(back[0], v) && write_value(back[0]) == text, text);
    } catch (const JsonError& e) {
      rep.check(false, text + ": " + e.what());
    }
  }
  return rep;
}

PropertyReport prop_deterministic_output(std::uint64_t seed, int n) {
  PropertyReport rep{"same program and input give the same output"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    RunConfig cfg;
    cfg.program_text = gen_filter(g, 3);
    std::string input;
    int count = g.range(0, 3);
    for (int j = 0; j < count; ++j) input += write_value(gen_value(g, 2)) + (g.chance(0.5) ? "\n" : " ");
    auto once = [&] {
      std::istringstream in(input);
      std::ostringstream out, err;
      int code = run(cfg, in, out, err);
      return std::to_string(code) + "\n" + out.str() + "\n" + err.str();
    };
    std::string a = once();
    std::string b = once();
    rep.check(a == b, cfg.program_text + " on " + input);
  }
  return rep;
}

}  // namespace mjq::testing
