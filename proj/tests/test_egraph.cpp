#include "support/expect_error.hpp"
#include "support/math.hpp"
#include "support/trials.hpp"

#include <eqsat/egraph.hpp>

#include <doctest.h>

using namespace eqsat;
using testing::MathSchema;

TEST_CASE("add_node hashconses")
{
  MathSchema m;
  EGraph g(m.schema);
  auto one = g.add_term(m.n(1));
  CHECK(g.add_term(m.n(1)) == one);
  auto two = g.add_term(m.n(2));
  CHECK(two != one);
  auto classes = g.class_count();
  auto sum = g.add(m.add, {one, two});
  CHECK(g.sort_of(sum) == m.math);
  CHECK(g.class_count() == classes + 1);
  CHECK(g.add(m.add, {one, two}) == sum);
  CHECK(g.lookup_term(m.plus(m.n(1), m.n(2))) == sum);
  CHECK_FALSE(g.lookup_term(m.plus(m.n(2), m.n(1))));
}

TEST_CASE("class ids are dense from zero")
{
  MathSchema m;
  EGraph g(m.schema);
  auto a = g.add_literal(PrimitiveValue::i64(5));
  auto b = g.add(m.num, {a});
  CHECK(a.value == 0);
  CHECK(b.value == 1);
  CHECK(g.id_count() == 2);
}

TEST_CASE("add_node rejects ill-formed nodes")
{
  MathSchema m;
  EGraph g(m.schema);
  auto one = g.add_term(m.n(1));
  auto lit = g.add_literal(PrimitiveValue::i64(1));
  CHECK_ERROR_CODE(g.add(FunctionId(99), {}), UnknownFunction);
  CHECK_ERROR_CODE(g.add(m.add, {one}), ArityMismatch);
  CHECK_ERROR_CODE(g.add(m.add, {one, lit}), SortMismatch);
  CHECK_ERROR_CODE(g.add(m.num, {EClassId(40)}), InvalidId);
}

TEST_CASE("merge")
{
  MathSchema m;
  EGraph g(m.schema);
  auto a = g.add_term(m.n(1));
  auto b = g.add_term(m.x("x"));

  SUBCASE("with itself is a no-op")
  {
    auto merges = g.merges_performed();
    CHECK(g.merge(a, a) == a);
    CHECK(g.merges_performed() == merges);
    CHECK(g.is_clean());
  }
  SUBCASE("joins node sets and is symmetric")
  {
    auto root = g.merge(a, b);
    CHECK(root == std::min(a, b));
    CHECK(g.find(a) == g.find(b));
    CHECK(g.eclass(a).nodes.size() == 2);
    auto merges = g.merges_performed();
    CHECK(g.merge(b, a) == root);
    CHECK(g.merges_performed() == merges);
  }
  SUBCASE("across sorts is a SortMismatch")
  {
    CHECK_ERROR_CODE(g.merge(a, g.add_literal(PrimitiveValue::i64(1))), SortMismatch);
  }
  SUBCASE("is transitive")
  {
    auto c = g.add_term(m.n(9));
    g.merge(a, b);
    g.merge(b, c);
    CHECK(g.find(a) == g.find(c));
  }
}

TEST_CASE("rebuild restores congruence")
{
  MathSchema m;
  EGraph g(m.schema);
  CHECK(g.rebuild() == 0);

  auto a = g.add_term(m.x("a"));
  auto b = g.add_term(m.x("b"));
  auto fa = g.add(m.add, {a, a});
  auto fb = g.add(m.add, {b, b});

  SUBCASE("one level")
  {
    g.merge(a, b);
    CHECK(g.rebuild() == 1);
    CHECK(g.find(fa) == g.find(fb));
  }
  SUBCASE("two levels")
  {
    auto gfa = g.add(m.mul, {fa, fa});
    auto gfb = g.add(m.mul, {fb, fb});
    g.merge(a, b);
    CHECK(g.rebuild() == 2);
    CHECK(g.find(gfa) == g.find(gfb));
    CHECK(g.is_clean());
  }
  CHECK_FALSE(testing::check_congruence_invariant(g));
}

TEST_CASE("rebuild: the counted merges match the class count drop")
{
  MathSchema m;
  EGraph g(m.schema);
  auto x = g.add_term(m.x("x"));
  auto y = g.add_term(m.x("y"));
  auto t = x, u = y;
  for (int i = 0; i < 5; ++i) {
    t = g.add(m.add, {t, x});
    u = g.add(m.add, {u, y});
  }
  auto before = g.class_count();
  g.merge(x, y);
  auto merged = g.rebuild();
  CHECK(merged == 5);
  CHECK(g.class_count() == before - 6);
  CHECK(g.find(t) == g.find(u));
}

TEST_CASE("node budget")
{
  MathSchema m;
  EGraph g(m.schema);
  g.set_node_limit(3);
  g.add_term(m.n(1));
  CHECK(g.node_count() == 2);
  g.add_term(m.n(1));
  CHECK_ERROR_CODE(g.add_term(m.n(2)), NodeBudgetExceeded);
}

TEST_CASE("restore reproduces ids and node sets")
{
  MathSchema m;
  EGraph g(m.schema);
  auto a = g.add_term(m.plus(m.n(1), m.x("x")));
  auto b = g.add_term(m.plus(m.x("x"), m.n(1)));
  g.merge(b, a);
  g.rebuild();

  std::vector< ClassSnapshot > snaps;
  for (auto id : g.class_ids())
    snaps.push_back({id, g.eclass(id).sort, g.eclass(id).nodes});
  auto r = EGraph::restore(g.schema(), snaps);
  CHECK(r.class_ids() == g.class_ids());
  for (auto id : g.class_ids())
    CHECK(r.eclass(id).nodes == g.eclass(id).nodes);
  CHECK(r.lookup_term(m.plus(m.x("x"), m.n(1))) == g.find(a));
  // Fresh ids continue after the highest restored class.
  CHECK(r.add_term(m.n(7)).value == g.class_ids().back().value + 2);
}

TEST_CASE("property: sort preservation and invariants on random scripts")
{
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    testing::Rng rng(seed);
    auto ts = testing::tree_schema();
    auto ops = testing::random_script(rng, 20);
    EGraph g(ts.schema);
    auto handles = testing::replay(g, ts, ops);
    g.rebuild();
    for (auto h : handles) {
      CHECK(g.find(g.find(h)) == g.find(h));
      CHECK(g.sort_of(h) == ts.t);
    }
    auto failure = testing::check_congruence_invariant(g);
    CHECK_MESSAGE(!failure, failure.value_or(""));
    // Re-adding any canonical node returns its class and adds nothing.
    auto nodes = g.node_count();
    for (auto cls : g.class_ids())
      for (const auto &node : g.eclass(cls).nodes)
        CHECK(g.add_node(node) == cls);
    CHECK(g.node_count() == nodes);
  }
}

TEST_CASE("property: partitions match the congruence-closure oracle")
{
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto failure = testing::congruence_trial(seed);
    CHECK_MESSAGE(!failure, failure.value_or(""));
  }
}
