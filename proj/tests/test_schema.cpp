#include "support/expect_error.hpp"
#include "support/generators.hpp"

#include <eqsat/schema.hpp>

#include <doctest.h>

#include <set>

using namespace eqsat;

namespace {

struct Math
{
  Schema schema;
  SortId math;
  FunctionId num, var, add, mul;

  Math()
  {
    auto [sort, fns] = schema.declare_datatype(
      "Math", {{"Num", {"i64"}, {}}, {"Var", {"String"}, {}}, {"Add", {"Math", "Math"}, {}}, {"Mul", {"Math", "Math"}, {}}});
    math = sort;
    num = fns[0];
    var = fns[1];
    add = fns[2];
    mul = fns[3];
  }

  Term n(std::int64_t v) const { return Term::apply(num, {Term::literal(PrimitiveValue::i64(v))}); }
  Term x(std::string name) const { return Term::apply(var, {Term::literal(PrimitiveValue::str(std::move(name)))}); }
};

} // namespace

TEST_CASE("declare_sort")
{
  Schema s;
  auto math = s.declare_sort("Math");
  CHECK(s.sort_name(math) == "Math");
  CHECK_FALSE(s.is_primitive(math));
  CHECK_ERROR_CODE(s.declare_sort("Math"), DuplicateSort);
  CHECK_ERROR_CODE(s.declare_sort("i64"), ReservedName);
  CHECK_ERROR_CODE(s.declare_sort("String"), ReservedName);
}

TEST_CASE("declare_datatype")
{
  Math m;
  CHECK(m.schema.function(m.add).params == std::vector< SortId >{m.math, m.math});
  CHECK(m.schema.function(m.num).params == std::vector< SortId >{Schema::primitive_sort(PrimitiveKind::Int64)});
  for (auto f : {m.num, m.var, m.add, m.mul}) {
    CHECK(m.schema.function(f).result == m.math);
    CHECK(m.schema.function(f).is_constructor);
    CHECK(m.schema.function(f).cost == 1);
  }

  SUBCASE("empty constructor list")
  {
    auto [sort, fns] = m.schema.declare_datatype("Empty", {});
    CHECK(fns.empty());
    CHECK(m.schema.sort_name(sort) == "Empty");
  }
  SUBCASE("unknown parameter sort leaves the schema unchanged")
  {
    auto sorts = m.schema.sort_count();
    auto fns = m.schema.function_count();
    CHECK_ERROR_CODE(m.schema.declare_datatype("Box", {{"Box.new", {"Bogus"}, {}}}), UnknownSort);
    CHECK(m.schema.sort_count() == sorts);
    CHECK(m.schema.function_count() == fns);
  }
  SUBCASE("duplicates")
  {
    CHECK_ERROR_CODE(m.schema.declare_datatype("Math", {}), DuplicateSort);
    CHECK_ERROR_CODE(m.schema.declare_datatype("Other", {{"Num", {}, {}}}), DuplicateFunction);
    CHECK_ERROR_CODE(m.schema.declare_datatype("Other", {{"A", {}, {}}, {"A", {}, {}}}), DuplicateFunction);
  }
  SUBCASE("reserved constructor names")
  {
    CHECK_ERROR_CODE(m.schema.declare_datatype("Other", {{"+", {}, {}}}), ReservedName);
    CHECK_ERROR_CODE(m.schema.declare_datatype("Other", {{"i64", {}, {}}}), ReservedName);
  }
  SUBCASE("cost")
  {
    auto [sort, fns] = m.schema.declare_datatype("Costly", {{"Big", {}, 5}});
    CHECK(m.schema.function(fns[0]).cost == 5);
    CHECK_ERROR_CODE(m.schema.declare_datatype("Free", {{"Zero", {}, 0}}), InvalidArgument);
  }
}

TEST_CASE("declare_function")
{
  Math m;
  auto i64 = Schema::primitive_sort(PrimitiveKind::Int64);
  auto fib = m.schema.declare_function({"fib", {i64}, i64});
  CHECK_FALSE(m.schema.function(fib).is_constructor);
  CHECK_ERROR_CODE(m.schema.declare_function({"fib", {i64}, i64}), DuplicateFunction);
  CHECK_ERROR_CODE(m.schema.declare_function({"bad", {SortId(99)}, i64}), UnknownSort);
  CHECK_ERROR_CODE(m.schema.declare_function({"min", {i64}, i64}), ReservedName);

  auto a = m.schema.declare_function({qualified_name("Owner1", "len"), {m.math}, i64});
  auto b = m.schema.declare_function({qualified_name("Owner2", "len"), {m.math}, i64});
  CHECK(a != b);
  CHECK(m.schema.function_name(a) == "Owner1.len");
  CHECK(m.schema.function_name(b) == "Owner2.len");
}

TEST_CASE("qualified_name rejects separators and empty parts")
{
  CHECK(qualified_name("Math", "__add__") == "Math.__add__");
  CHECK_ERROR_CODE(qualified_name("A.B", "m"), InvalidName);
  CHECK_ERROR_CODE(qualified_name("A", "m.n"), InvalidName);
  CHECK_ERROR_CODE(qualified_name("", "m"), InvalidName);
}

TEST_CASE("property: qualified names never collide")
{
  testing::Rng rng(11);
  const std::string alphabet = "abAB_x";
  auto name = [&] {
    std::string out;
    for (std::size_t i = 0, n = 1 + testing::pick(rng, 3); i < n; ++i)
      out += alphabet[testing::pick(rng, alphabet.size())];
    return out;
  };
  std::set< std::pair< std::string, std::string > > pairs;
  std::set< std::string > qualified;
  for (int i = 0; i < 2000; ++i) {
    auto owner = name(), member = name();
    if (pairs.insert({owner, member}).second)
      CHECK(qualified.insert(qualified_name(owner, member)).second);
  }
  Schema s;
  auto unit = Schema::primitive_sort(PrimitiveKind::Unit);
  for (const auto &q : qualified)
    s.declare_function({q, {}, unit});
  CHECK(s.function_count() == 4 + qualified.size());
}

TEST_CASE("typecheck_term")
{
  Math m;
  auto expr1 = Term::apply(m.mul, {m.n(2), Term::apply(m.add, {m.x("x"), m.n(3)})});
  CHECK(typecheck_term(m.schema, expr1) == m.math);
  CHECK(typecheck_term(m.schema, Term::literal(PrimitiveValue::i64(7))) == Schema::primitive_sort(PrimitiveKind::Int64));
  CHECK(typecheck_term(m.schema, Term::ref("e"), {{"e", m.math}}) == m.math);

  auto bad = EQSAT_ERROR(typecheck_term(m.schema, Term::apply(m.add, {m.n(1), Term::literal(PrimitiveValue::str("x"))})));
  CHECK(bad.code() == ErrorCode::SortMismatch);
  CHECK(bad.message() == "argument 1 of `Add` expects sort Math but got String");

  CHECK_ERROR_CODE(typecheck_term(m.schema, Term::apply(m.add, {m.n(1)})), ArityMismatch);
  CHECK_ERROR_CODE(typecheck_term(m.schema, Term::ref("nope")), UnknownName);
  CHECK_ERROR_CODE(typecheck_term(m.schema, Term::apply(FunctionId(77))), UnknownFunction);
}

TEST_CASE("property: random well-typed terms typecheck")
{
  auto ts = testing::tree_schema();
  testing::Rng rng(3);
  auto gen = [&] (auto &self, int depth) -> Term {
    switch (depth == 0 ? 0 : testing::pick(rng, 3)) {
      case 0: return Term::apply(ts.leaf, {Term::literal(PrimitiveValue::i64(rng() % 100))});
      case 1: return Term::apply(ts.f, {self(self, depth - 1)});
      default: return Term::apply(ts.g, {self(self, depth - 1), self(self, depth - 1)});
    }
  };
  for (int i = 0; i < 300; ++i)
    CHECK(typecheck_term(ts.schema, gen(gen, 1 + i % 5)) == ts.t);
}
