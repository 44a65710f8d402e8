#include "support/expect_error.hpp"
#include "support/math.hpp"
#include "support/trials.hpp"

#include <eqsat/ematch.hpp>

#include <doctest.h>

using namespace eqsat;
using testing::MathSchema;

namespace {

// Partition of the graph as a sorted list of sorted node-set descriptions,
// independent of which id ended up as root.
std::vector< std::string > partition(const EGraph &g)
{
  std::vector< std::string > out;
  for (auto cls : g.class_ids()) {
    std::vector< std::string > nodes;
    for (const auto &n : g.eclass(cls).nodes) {
      std::string s = g.schema().function_name(n.op);
      if (n.literal)
        s += " " + to_sexpr(*n.literal);
      for (auto c : n.children)
        s += " #" + std::to_string(g.find(c).value);
      nodes.push_back(s);
    }
    std::sort(nodes.begin(), nodes.end());
    std::string joined;
    for (const auto &s : nodes)
      joined += s + "; ";
    out.push_back(joined);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("ematch")
{
  MathSchema m;
  EGraph g(m.schema);
  auto one = g.add_term(m.n(1));
  auto two = g.add_term(m.n(2));
  auto sum = g.add(m.add, {one, two});

  SUBCASE("binds each variable to a child class")
  {
    auto got = ematch(g, m.padd(m.v("a"), m.v("b")));
    REQUIRE(got.size() == 1);
    CHECK(got[0].root == sum);
    CHECK(got[0].subst == Substitution{{"a", one}, {"b", two}});
    CHECK(got == testing::brute_force_ematch(g, m.padd(m.v("a"), m.v("b"))));
  }
  SUBCASE("repeated variables need identical classes")
  {
    CHECK(ematch(g, m.padd(m.v("a"), m.v("a"))).empty());
    auto same = g.add(m.add, {one, one});
    auto got = ematch(g, m.padd(m.v("a"), m.v("a")));
    REQUIRE(got.size() == 1);
    CHECK(got[0].root == same);
  }
  SUBCASE("no candidates")
  {
    CHECK(ematch(g, m.pmul(m.v("a"), m.v("b"))).empty());
  }
  SUBCASE("literals and primitive variables")
  {
    auto got = ematch(g, m.pnum(m.iv("i")));
    REQUIRE(got.size() == 2);
    CHECK(got[0].root == one);
    CHECK(got[1].root == two);
    CHECK(ematch(g, m.pnum(2)).size() == 1);
    CHECK(ematch(g, m.pnum(3)).empty());
  }
  SUBCASE("results follow merges after rebuild")
  {
    g.merge(one, two);
    g.rebuild();
    auto got = ematch(g, m.padd(m.v("a"), m.v("a")));
    REQUIRE(got.size() == 1);
    CHECK(got[0].root == g.find(sum));
  }
}

TEST_CASE("property: ematch equals brute-force enumeration")
{
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto failure = testing::ematch_trial(seed);
    CHECK_MESSAGE(!failure, failure.value_or(""));
  }
}

TEST_CASE("make_rewrite")
{
  MathSchema m;
  auto comm = make_rewrite(m.schema, m.padd(m.v("a"), m.v("b")), m.padd(m.v("b"), m.v("a")));
  CHECK(comm.name == "(rewrite (Add a b) (Add b a))");
  REQUIRE(comm.query.size() == 1);
  CHECK(std::holds_alternative< ExistsFact >(comm.query[0]));
  REQUIRE(comm.actions.size() == 1);
  CHECK(std::holds_alternative< UnionAction >(comm.actions[0]));

  SUBCASE("different sorts are rejected with both sort names")
  {
    auto lhs = m.pmul(m.pnum(m.iv("i")), m.pnum(m.iv("j")));
    auto rhs = Pattern::prim(PrimOp::Mul, {m.iv("i"), m.iv("j")});
    auto err = EQSAT_ERROR(make_rewrite(m.schema, lhs, rhs));
    CHECK(err.code() == ErrorCode::SortMismatch);
    CHECK(err.message() == "rewrite sides have different sorts: (Mul (Num i) (Num j)) is Math but (* i j) is i64");
    CHECK_NOTHROW(make_rewrite(m.schema, lhs, m.pnum(rhs)));
  }
  SUBCASE("bare variable lhs")
  {
    CHECK_ERROR_CODE(make_rewrite(m.schema, m.v("x"), m.pnum(1)), DegeneratePattern);
  }
  SUBCASE("unbound rhs variable")
  {
    CHECK_ERROR_CODE(make_rewrite(m.schema, m.padd(m.v("a"), m.v("b")), m.v("c")), UnboundVariable);
  }
  SUBCASE("variable used at two sorts")
  {
    CHECK_ERROR_CODE(make_rewrite(m.schema, m.padd(m.v("a"), m.pnum(Pattern::var("a", MathSchema::i64()))), m.v("a")),
                     SortMismatch);
  }
}

TEST_CASE("property: ill-sorted rewrite pairs are all rejected")
{
  MathSchema m;
  auto i64 = MathSchema::i64();
  testing::Rng rng(5);
  // Math-sorted lhs against rhs patterns of every other sort.
  std::vector< Pattern > other = {
    m.iv("i"),
    Pattern::literal(PrimitiveValue::i64(3)),
    Pattern::prim(PrimOp::Add, {m.iv("i"), Pattern::literal(PrimitiveValue::i64(1))}),
    Pattern::prim(PrimOp::Eq, {m.iv("i"), m.iv("i")}),
    Pattern::literal(PrimitiveValue::str("s")),
    Pattern::literal(PrimitiveValue::boolean(true)),
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto lhs = m.padd(m.pnum(m.iv("i")), trial % 2 ? m.v("b") : m.pnum(testing::pick(rng, 5)));
    const auto &rhs = other[testing::pick(rng, other.size())];
    auto err = EQSAT_ERROR(make_rewrite(m.schema, lhs, rhs));
    CHECK(err.code() == ErrorCode::SortMismatch);
  }
  (void) i64;
}

TEST_CASE("query validation")
{
  MathSchema m;
  CHECK_ERROR_CODE(make_rule(m.schema, {ExistsFact{m.v("x")}}, {}), DegeneratePattern);
  CHECK_ERROR_CODE(make_rule(m.schema, {ExistsFact{m.pnum(Pattern::prim(PrimOp::Add, {m.iv("i"), m.iv("j")}))}}, {}),
                   InvalidPattern);
  CHECK_ERROR_CODE(make_rule(m.schema, {EqFact{m.v("x"), m.v("y")}}, {}), UnboundVariable);
  CHECK_ERROR_CODE(make_rule(m.schema, {EqFact{m.v("x"), m.iv("i")}}, {}), SortMismatch);
  CHECK_ERROR_CODE(make_rule(m.schema, {ExistsFact{m.padd(m.v("a"), m.v("b"))}}, {UnionAction{m.v("a"), m.v("c")}}),
                   UnboundVariable);
  CHECK_ERROR_CODE(make_rule(m.schema, {ExistsFact{m.padd(m.v("a"), m.v("b"))}}, {LetAction{"a", m.v("b")}}),
                   DuplicateName);
}

TEST_CASE("apply_rule")
{
  MathSchema m;
  EGraph g(m.schema);

  SUBCASE("empty graph")
  {
    auto comm = make_rewrite(m.schema, m.padd(m.v("a"), m.v("b")), m.padd(m.v("b"), m.v("a")));
    CHECK(apply_rule(g, comm) == 0);
    CHECK(g.class_count() == 0);
  }
  SUBCASE("commutativity adds the swapped node to the same class")
  {
    auto sum = g.add_term(m.plus(m.n(1), m.n(2)));
    auto comm = make_rewrite(m.schema, m.padd(m.v("a"), m.v("b")), m.padd(m.v("b"), m.v("a")));
    CHECK(apply_rule(g, comm) == 1);
    g.rebuild();
    CHECK(g.eclass(sum).nodes.size() == 2);
    CHECK(g.lookup_term(m.plus(m.n(2), m.n(1))) == g.find(sum));
  }
  SUBCASE("constant folding evaluates primitives")
  {
    auto prod = g.add_term(m.times(m.n(2), m.n(3)));
    auto fold = make_rewrite(m.schema, m.pmul(m.pnum(m.iv("a")), m.pnum(m.iv("b"))),
                             m.pnum(Pattern::prim(PrimOp::Mul, {m.iv("a"), m.iv("b")})));
    CHECK(apply_rule(g, fold) == 1);
    g.rebuild();
    CHECK(g.lookup_term(m.n(6)) == g.find(prod));
  }
  SUBCASE("overflow names the rule and substitution")
  {
    g.add_term(m.times(m.n(std::numeric_limits< std::int64_t >::max()), m.n(2)));
    auto fold = make_rewrite(m.schema, m.pmul(m.pnum(m.iv("a")), m.pnum(m.iv("b"))),
                             m.pnum(Pattern::prim(PrimOp::Mul, {m.iv("a"), m.iv("b")})));
    auto err = EQSAT_ERROR(apply_rule(g, fold));
    CHECK(err.code() == ErrorCode::OverflowError);
    CHECK(err.message().find("(rewrite (Mul (Num a) (Num b))") != std::string::npos);
    CHECK(err.message().find("a -> #") != std::string::npos);
  }
  SUBCASE("guards decide on primitive values")
  {
    g.add_term(m.plus(m.n(0), m.n(5)));
    g.add_term(m.plus(m.n(4), m.n(5)));
    auto guarded = make_rewrite(
      m.schema, m.padd(m.pnum(m.iv("i")), m.pnum(m.iv("j"))),
      m.pnum(Pattern::prim(PrimOp::Add, {m.iv("i"), m.iv("j")})),
      {EqFact{Pattern::prim(PrimOp::Ne, {m.iv("i"), Pattern::literal(PrimitiveValue::i64(0))}),
              Pattern::literal(PrimitiveValue::boolean(true))}});
    CHECK(apply_rule(g, guarded) == 1);
    g.rebuild();
    CHECK(check(g, EqFact{Pattern::apply(m.add, {m.pnum(4), m.pnum(5)}), m.pnum(9)}));
    CHECK_FALSE(check(g, EqFact{Pattern::apply(m.add, {m.pnum(0), m.pnum(5)}), m.pnum(5)}));
  }
  SUBCASE("let actions bind later actions")
  {
    auto e = g.add_term(m.x("e"));
    auto rule = make_rule(m.schema, {ExistsFact{Pattern::apply(m.var, {Pattern::var("s", Schema::primitive_sort(PrimitiveKind::Str))})}},
                          {LetAction{"n", m.pnum(7)}, UnionAction{m.v("n"), m.pnum(7)}, LetAction{"w", m.padd(m.v("n"), m.v("n"))}});
    CHECK(apply_rule(g, rule) == 1);
    g.rebuild();
    CHECK(g.lookup_term(m.plus(m.n(7), m.n(7))));
    CHECK(g.find(e) != g.find(*g.lookup_term(m.n(7))));
  }
}

TEST_CASE("property: snapshot application equals collecting matches first")
{
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testing::Rng rng(seed);
    auto ts = testing::tree_schema();
    auto ops = testing::random_script(rng, 12, {8, 3, 0.0});
    EGraph a(ts.schema);
    testing::replay(a, ts, ops);
    a.rebuild();
    EGraph b = a;

    // F(G(x, y)) => G(F(y), x)
    auto lhs = Pattern::apply(ts.f, {Pattern::apply(ts.g, {Pattern::var("x", ts.t), Pattern::var("y", ts.t)})});
    auto rhs = Pattern::apply(ts.g, {Pattern::apply(ts.f, {Pattern::var("y", ts.t)}), Pattern::var("x", ts.t)});
    auto rule = make_rewrite(ts.schema, lhs, rhs);

    apply_rule(a, rule);
    a.rebuild();

    // Oracle: collect through the brute-force matcher, then union one by one.
    auto matches = testing::brute_force_ematch(b, lhs);
    for (const auto &match : matches)
      b.merge(match.root, *instantiate(b, rhs, match.subst));
    b.rebuild();
    CHECK(partition(a) == partition(b));
  }
}

TEST_CASE("check")
{
  MathSchema m;
  EGraph g(m.schema);
  auto e1 = g.add_term(m.n(1));
  auto e2 = g.add_term(m.n(2));
  auto r1 = Pattern::ref("e1", e1, m.math);
  auto r2 = Pattern::ref("e2", e2, m.math);

  CHECK(check(g, EqFact{r1, r1}));
  CHECK_FALSE(check(g, EqFact{m.pnum(1), m.pnum(2)}));
  CHECK(check(g, ExistsFact{m.pnum(2)}));
  CHECK_FALSE(check(g, ExistsFact{m.pnum(3)}));
  CHECK(check(g, EqFact{m.pnum(m.iv("i")), r2}));

  SUBCASE("is pure")
  {
    auto classes = g.class_count(), nodes = g.node_count(), created = g.nodes_created();
    CHECK_FALSE(check(g, ExistsFact{m.padd(m.pnum(3), m.pnum(4))}));
    CHECK_FALSE(check(g, EqFact{m.padd(r1, r2), r1}));
    CHECK(g.class_count() == classes);
    CHECK(g.node_count() == nodes);
    CHECK(g.nodes_created() == created);
  }
  SUBCASE("after union")
  {
    g.merge(e1, e2);
    g.rebuild();
    CHECK(check(g, EqFact{r1, r2}));
    CHECK(check(g, EqFact{m.pnum(1), m.pnum(2)}));
  }
  SUBCASE("rejects malformed facts")
  {
    CHECK_ERROR_CODE(check(g, ExistsFact{m.v("x")}), DegeneratePattern);
  }
}
