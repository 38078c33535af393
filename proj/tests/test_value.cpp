#include <gtest/gtest.h>

#include "mjq/value_ops.hpp"
#include "test_util.hpp"

namespace mjq::testing {
namespace {

Stream plus_one(const Value& x) { return Stream(add(x, Value(1))); }
Stream twice(const Value& x) { return Stream::of({x, x}); }
Stream nothing(const Value&) { return Stream::empty(); }

TEST(Cmp, TypeRanksAndStructure) {
  EXPECT_EQ(cmp(Value(), Value(false)), Ordering::Less);
  EXPECT_EQ(cmp(Value(false), Value(true)), Ordering::Less);
  EXPECT_EQ(cmp(Value(true), Value(0)), Ordering::Less);
  EXPECT_EQ(cmp(Value(1), Value("")), Ordering::Less);
  EXPECT_EQ(cmp(Value("z"), J("[]")), Ordering::Less);
  EXPECT_EQ(cmp(J("[9]"), J("{}")), Ordering::Less);
  EXPECT_EQ(cmp(J("[1,2]"), J("[1,2]")), Ordering::Equal);
  EXPECT_EQ(cmp(J(R"({"a":1})"), J(R"({"b":0})")), Ordering::Less);
  EXPECT_EQ(cmp(J(R"({"a":1,"b":2})"), J(R"({"a":1,"b":3})")), Ordering::Less);
}

TEST(Cmp, MixedNumbers) {
  EXPECT_EQ(cmp(Value(1), Value(Number(1.0))), Ordering::Equal);
  EXPECT_EQ(cmp(Value(1), Value(Number(1.5))), Ordering::Less);
  EXPECT_EQ(cmp(Value(Number(-0.5)), Value(0)), Ordering::Less);
}

TEST(Add, Cases) {
  EXPECT_EQ(str(add(Value(), Value(5))), "5");
  EXPECT_EQ(str(add(J("[1]"), J("[2,3]"))), "[1,2,3]");
  EXPECT_EQ(str(add(J(R"({"a":1})"), J(R"({"a":2})"))), R"({"a":2})");
  EXPECT_EQ(str(add(Value("a"), Value("b"))), R"("ab")");
  EXPECT_TRUE(is_error(add(Value(true), Value(1))));
  EXPECT_TRUE(is_error(add(Value(1), Value("a"))));
}

TEST(Sub, Cases) {
  EXPECT_EQ(str(sub(Value(7), Value(2))), "5");
  EXPECT_EQ(str(sub(J("[1,2,1,3]"), J("[1]"))), "[2,3]");
  EXPECT_TRUE(is_error(sub(Value("a"), Value("b"))));
}

TEST(Mul, Cases) {
  EXPECT_EQ(str(mul(Value("ab"), Value(3))), R"("ababab")");
  EXPECT_EQ(str(mul(Value(3), Value("ab"))), R"("ababab")");
  EXPECT_EQ(str(mul(Value("ab"), Value(0))), "null");
  EXPECT_EQ(str(mul(Value("ab"), Value(Number(2.7)))), R"("abab")");
  EXPECT_EQ(str(mul(J(R"({"a":{"b":1}})"), J(R"({"a":{"c":2}})"))), R"({"a":{"b":1,"c":2}})");
  EXPECT_EQ(str(mul(J(R"({"a":{"b":1}})"), J(R"({"a":2})"))), R"({"a":2})");
  EXPECT_TRUE(is_error(mul(J("[1]"), Value(2))));
}

TEST(Div, Cases) {
  EXPECT_EQ(str(div(Value("abc"), Value(""))), R"(["a","b","c"])");
  EXPECT_EQ(str(div(Value(""), Value("x"))), "[]");
  EXPECT_TRUE(is_error(div(Value(1), Value(0))));
  EXPECT_EQ(str(div(Value(3), Value(2))), "1.5");
  EXPECT_EQ(str(div(Value(6), Value(2))), "3");
}

TEST(Div, SplitString) {
  EXPECT_EQ(write_value(split_str("ab", "ab")), R"(["",""])");
  EXPECT_EQ(write_value(split_str("c", "ab")), R"(["c"])");
  EXPECT_EQ(write_value(split_str("abcabde", "ab")), R"(["","c","de"])");
}

TEST(Rem, Cases) {
  EXPECT_EQ(str(rem(Value(7), Value(3))), "1");
  EXPECT_EQ(str(rem(Value(-7), Value(3))), "-1");
  EXPECT_TRUE(is_error(rem(Value("a"), Value(3))));
  EXPECT_TRUE(is_error(rem(Value(1), Value(0))));
}

TEST(Keys, Cases) {
  EXPECT_EQ(str(keys_of(J("[7,8]"))), "<0, 1>");
  EXPECT_EQ(str(keys_of(J(R"({"b":0,"a":1})"))), R"(<"a", "b">)");
  auto r = keys_of(Value(true)).collect();
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(is_error(r[0]));
}

TEST(Length, Cases) {
  EXPECT_EQ(str(length_of(Value())), "0");
  EXPECT_EQ(str(length_of(Value(-2))), "2");
  EXPECT_EQ(str(length_of(J(R"({"a":1})"))), "1");
  EXPECT_EQ(str(length_of(Value("é"))), "1");
  EXPECT_TRUE(is_error(length_of(Value(true))));
}

TEST(Bool, Cases) {
  EXPECT_EQ(str(bool_of(Value())), "false");
  EXPECT_EQ(str(bool_of(Value(0))), "true");
  ValueResult e = error_result("e");
  EXPECT_EQ(str(bool_of(e)), str(e));
}

TEST(Index, Cases) {
  EXPECT_EQ(str(index(J("[0,1,2]"), Value(1))), "1");
  EXPECT_EQ(str(index(J("[0,1,2]"), Value(-1))), "2");
  EXPECT_EQ(str(index(J(R"({"a":1})"), Value("b"))), "null");
  EXPECT_EQ(str(index(J("[0]"), Value(5))), "null");
  EXPECT_TRUE(is_error(index(Value(), Value(0))));
  EXPECT_TRUE(is_error(index(J("[0]"), Value(-3))));
}

TEST(Iterate, Cases) {
  EXPECT_EQ(str(iterate(J("[1,2,3]"))), "<1, 2, 3>");
  EXPECT_EQ(str(iterate(J(R"({"b":2,"a":1})"))), "<1, 2>");
  auto r = iterate(Value(0)).collect();
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(is_error(r[0]));
}

TEST(Slice, Cases) {
  EXPECT_EQ(str(slice(J("[0,1,2,3]"), Value(1), Value(3))), "[1,2]");
  EXPECT_EQ(str(slice(Value("abcd"), Value(1), Value(3))), R"("bc")");
  EXPECT_EQ(str(slice(J("[0,1]"), Value(1), Value(1))), "[]");
  EXPECT_EQ(str(slice(J("[0,1,2]"), Value(-2), Value(10))), "[1,2]");
}

TEST(Streams, ArrOfStreamAndHead) {
  EXPECT_EQ(str(arr_of_stream(Stream::of({Value(1), Value(2)}))), "[1,2]");
  EXPECT_EQ(str(arr_of_stream(Stream::empty())), "[]");
  EXPECT_EQ(str(arr_of_stream(Stream::of({Value(1), error_result("e"), error_result("f")}))), R"(error("e"))");
  ValueResult bottom = error_result("bottom");
  EXPECT_EQ(str(head(Stream::of({Value(1), Value(2)}), bottom)), "1");
  EXPECT_EQ(str(head(Stream::empty(), bottom)), str(bottom));
  EXPECT_EQ(str(head(Stream(error_result("x")), bottom)), R"(error("x"))");
}

TEST(ObjEntry, Cases) {
  EXPECT_EQ(str(obj_entry(Value("a"), Value(1))), R"({"a":1})");
  EXPECT_TRUE(is_error(obj_entry(Value(1), Value(1))));
  EXPECT_EQ(str(obj_entry(Value("a"), Value())), R"({"a":null})");
}

TEST(UpdIterate, Cases) {
  EXPECT_EQ(str(upd_iterate(J("[1,2,3]"), plus_one)), "[2,3,4]");
  EXPECT_EQ(str(upd_iterate(J("[1,2]"), twice)), "[1,1,2,2]");
  auto drop_one = [](const Value& x) { return x == Value(1) ? Stream::empty() : Stream(x); };
  EXPECT_EQ(str(upd_iterate(J(R"({"a":1,"b":2})"), drop_one)), R"({"b":2})");
  EXPECT_TRUE(is_error(upd_iterate(Value(0), plus_one)));
}

TEST(UpdIndex, Cases) {
  EXPECT_EQ(str(upd_index(J("[1,2,3]"), Value(1), plus_one)), "[1,3,3]");
  EXPECT_EQ(str(upd_index(J("[1,2,3]"), Value(-1), [](const Value&) { return Stream(Value(0)); })), "[1,2,0]");
  EXPECT_EQ(str(upd_index(J(R"({"a":1})"), Value("a"), nothing)), "{}");
  EXPECT_TRUE(is_error(upd_index(J("[1]"), Value(5), plus_one)));
}

TEST(UpdSlice, Cases) {
  auto repl = [](const Value&) { return Stream(J("[4,5,6]")); };
  EXPECT_EQ(str(upd_slice(J("[0,1,2,3]"), Value(1), Value(3), repl)), "[0,4,5,6,3]");
  EXPECT_EQ(str(upd_slice(J("[0,1]"), Value(1), Value(0), repl)), "[0,1]");
  EXPECT_EQ(str(upd_slice(J("[0,1,2]"), Value(0), Value(2), nothing)), "[2]");
  EXPECT_TRUE(is_error(upd_slice(Value("ab"), Value(0), Value(1), repl)));
  EXPECT_TRUE(is_error(upd_slice(J("[0,1]"), Value(0), Value(1), [](const Value&) { return Stream(Value(1)); })));
}

}  // namespace
}  // namespace mjq::testing
