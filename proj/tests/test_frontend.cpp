#include <gtest/gtest.h>

#include "mjq/driver.hpp"
#include "mjq/lower.hpp"
#include "mjq/parser.hpp"
#include "mjq/printer.hpp"

namespace mjq::testing {
namespace {

std::string printed(const std::string& src) { return print_program(parse_program(src)); }

std::string lowered(const std::string& src) { return alpha_normalize(print_program(lower_program(parse_program(src)))); }

std::vector<std::string> binding_errors(const std::string& src) {
  std::vector<std::string> out;
  for (const auto& e : check_wellformed(parse_program(src), builtin_signatures())) out.push_back(e.message);
  return out;
}

TEST(Parse, Precedence) {
  // Lowering drops the parentheses the printer keeps.
  EXPECT_EQ(lowered("1 + 2 * 3"), lowered("1 + (2 * 3)"));
  EXPECT_NE(lowered("1 + 2 * 3"), lowered("(1 + 2) * 3"));
  EXPECT_EQ(lowered("1, 2 | 3"), lowered("(1, 2) | 3"));
  EXPECT_EQ(lowered(". as $x | $x, 1"), lowered(". as $x | ($x, 1)"));
  EXPECT_EQ(lowered("1 // 2 // 3"), lowered("1 // (2 // 3)"));
  EXPECT_EQ(lowered(".a |= 1 | 2"), lowered("(.a |= 1) | 2"));
  EXPECT_EQ(lowered("1 or 2 and 3"), lowered("1 or (2 and 3)"));
}

TEST(Parse, RecurseDefinition) {
  Program p = parse_program("def recurse(f): ., (f | recurse(f)); recurse(. + 1)");
  ASSERT_EQ(p.defs.size(), 1u);
  EXPECT_EQ(p.defs[0].name, "recurse");
  ASSERT_EQ(p.defs[0].params.size(), 1u);
  EXPECT_EQ(p.defs[0].params[0], "f");
  EXPECT_EQ(print_program(p), "def recurse(f): ., (f | recurse(f)); recurse(. + 1)");
}

TEST(Parse, Sugar) {
  EXPECT_EQ(printed(".foo"), printed(".[\"foo\"]"));
  EXPECT_EQ(printed("{a: 1}"), printed("{\"a\": 1}"));
  EXPECT_EQ(printed("def x: 1; x()"), printed("def x: 1; x"));
  EXPECT_EQ(printed("1 # trailing comment\n"), "1");
  EXPECT_EQ(printed(".[] | select(negative)"), ".[] | select(negative)");
}

TEST(Parse, StringEscapes) {
  EXPECT_EQ(printed(R"("é\n\"\/")"), R"("é\n\"/")");
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_program("if . then 1 end"), ParseError);
  EXPECT_THROW(parse_program("1 +"), ParseError);
  EXPECT_THROW(parse_program("\"abc\\(1)\""), ParseError);
  EXPECT_THROW(parse_program("$x!0"), ParseError);
  try {
    parse_program("1 +\n  ]");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().col, 3);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(WellFormed, Bindings) {
  EXPECT_TRUE(binding_errors("def f(g): g; f(.)").empty());
  auto var = binding_errors("$x");
  ASSERT_EQ(var.size(), 1u);
  EXPECT_NE(var[0].find("unbound variable"), std::string::npos);
  auto label = binding_errors("break $out");
  ASSERT_EQ(label.size(), 1u);
  EXPECT_NE(label[0].find("unbound label"), std::string::npos);
  EXPECT_TRUE(binding_errors("label $out | 1, break $out").empty());
  EXPECT_EQ(binding_errors("def f: g; 1").size(), 1u);
  EXPECT_EQ(binding_errors("reduce . as $x (0; $y)").size(), 1u);
}

TEST(WellFormed, CompileReportsPositions) {
  try {
    compile("1 |\n $nope");
    FAIL() << "expected a compile error";
  } catch (const CompileError& e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].rfind("2:2:", 0), 0u) << e.diagnostics()[0];
  }
}

TEST(Lower, Snapshots) {
  EXPECT_EQ(lowered(".[]?[]"), ". as $x!0 | . | try .[] catch empty | .[]");
  EXPECT_EQ(lowered(".[0]"), ". as $x!0 | . | ($x!0 | 0) as $y!1 | .[$y!1]");
  EXPECT_EQ(lowered("def recurse(f): ., (f | recurse(f)); recurse(. + 1)"),
            "def recurse(f): ., (f | recurse(f)); recurse(. as $x!0 | 1 as $y!1 | $x!0 + $y!1)");
  EXPECT_EQ(lowered(".[1:]"), ". as $x!0 | . | ($x!0 | 1) as $y!1 | length as $z!2 | .[$y!1:$z!2]");
  EXPECT_EQ(lowered(".[0]?"), ". as $x!0 | . | ($x!0 | 0) as $y!1 | try .[$y!1] catch empty");
}

TEST(Lower, FreshNamesAreDistinctAndReserved) {
  Lowerer l;
  std::string a = l.fresh_var("x");
  std::string b = l.fresh_var("x");
  EXPECT_NE(a, b);
  EXPECT_NE(a.find('!'), std::string::npos);
  std::string src = a.front() == '$' ? a : "$" + a;
  EXPECT_THROW(parse_program(". as " + src + " | " + src), ParseError);
}

TEST(Lower, CartesianOrder) {
  auto out = run_text("(0, 2) + (0, 1)", Value());
  ASSERT_EQ(out.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(out[i].value(), Value(i));
}

}  // namespace
}  // namespace mjq::testing
