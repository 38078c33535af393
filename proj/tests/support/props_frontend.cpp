#include "gen.hpp"
#include "mjq/lower.hpp"
#include "mjq/parser.hpp"
#include "mjq/printer.hpp"
#include "properties.hpp"

namespace mjq::testing {

namespace {

std::string gen_program(Gen& g) {
  std::string out;
  if (g.chance(0.3)) out += "def f: " + gen_filter(g, 2) + "; ";
  if (g.chance(0.3)) out += "def h(a; b): a | b; ";
  if (g.chance(0.2)) out += "# comment\n";
  return out + gen_filter(g, 4);
}

bool all_mir(const Program& p) {
  for (const auto& d : p.defs) {
    if (!is_mir(*d.body)) return false;
  }
  return is_mir(*p.main);
}

}  // namespace

PropertyReport prop_parse_print_roundtrip(std::uint64_t seed, int n) {
  PropertyReport rep{"parse after print round trip"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    std::string src = gen_program(g);
    try {
      Program p = parse_program(src);
      std::string printed = print_program(p);
      Program q = parse_program(printed);
      rep.check(same_structure(p, q) && print_program(q) == printed, src + "  printed as  " + printed);
    } catch (const ParseError& e) {
      rep.check(false, src + "  failed: " + e.what());
    }
  }
  return rep;
}

PropertyReport prop_lowering_yields_mir(std::uint64_t seed, int n) {
  PropertyReport rep{"lowering yields MIR"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    std::string src = gen_program(g);
    try {
      Program lowered = lower_program(parse_program(src));
      rep.check(all_mir(lowered), src + "  lowered to  " + print_program(lowered));
    } catch (const ParseError& e) {
      rep.check(false, src + "  failed: " + e.what());
    }
  }
  return rep;
}

PropertyReport prop_lowering_mir_stable(std::uint64_t seed, int n) {
  PropertyReport rep{"lowering MIR is the identity up to renaming"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    std::string src = gen_filter(g, 4);
    try {
      FilterPtr once = lower_filter(parse_program(src).main);
      FilterPtr twice = lower_filter(once);
      std::string a = alpha_normalize(print_filter(*once));
      std::string b = alpha_normalize(print_filter(*twice));
      rep.check(a == b, src + "  lowered to  " + a + "  then  " + b);
    } catch (const ParseError& e) {
      rep.check(false, src + "  failed: " + e.what());
    }
  }
  return rep;
}

}  // namespace mjq::testing
