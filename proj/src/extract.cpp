#include <eqsat/extract.hpp>

#include <eqsat/error.hpp>

#include <algorithm>

namespace eqsat {

namespace {

  std::int64_t add_cost(std::int64_t a, std::int64_t b)
  {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out))
      throw Error(ErrorCode::OverflowError, "extraction cost exceeds the signed 64-bit range");
    return out;
  }

} // namespace

std::int64_t CostModel::cost_of(const FunctionDecl &decl) const
{
  if (decl.literal_of)
    return 1;
  if (auto it = overrides.find(decl.name); it != overrides.end()) {
    if (it->second < 1)
      throw Error(ErrorCode::InvalidArgument, "cost override for `" + decl.name + "` must be >= 1");
    return it->second;
  }
  return decl.cost;
}

std::int64_t term_cost(const Schema &schema, const Term &term, const CostModel &model)
{
  return std::visit([&] (const auto &node) -> std::int64_t {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return 1;
    } else if constexpr (std::is_same_v< T, Term::Ref >) {
      throw Error(ErrorCode::UnknownName, "cannot cost unresolved name `" + node.name + "`");
    } else {
      auto total = model.cost_of(schema.function(node.function));
      for (const auto &arg : node.args)
        total = add_cost(total, term_cost(schema, arg, model));
      return total;
    }
  }, term.node);
}

Extractor::Extractor(const EGraph &egraph, CostModel model)
  : _egraph(egraph), _model(std::move(model)), _cost(egraph.id_count()), _choice(egraph.id_count(), nullptr)
{
  const auto &schema = egraph.schema();
  const auto ids = egraph.class_ids();

  auto node_total = [&] (const ENode &node) -> std::optional< std::int64_t > {
    auto total = _model.cost_of(schema.function(node.op));
    for (auto child : node.children) {
      const auto &c = _cost[egraph.find(child).index()];
      if (!c)
        return std::nullopt;
      total = add_cost(total, *c);
    }
    return total;
  };

  // Costs only decrease, so this terminates.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto cls : ids) {
      auto &best = _cost[cls.index()];
      for (const auto &node : egraph.eclass(cls).nodes) {
        auto total = node_total(node);
        if (total && (!best || *total < *best)) {
          best = total;
          changed = true;
        }
      }
    }
  }

  // Children of a chosen node are strictly cheaper than their parent, so
  // visiting classes by increasing cost settles every child first.
  std::vector< EClassId > order;
  for (auto cls : ids)
    if (_cost[cls.index()])
      order.push_back(cls);
  std::stable_sort(order.begin(), order.end(), [&] (EClassId a, EClassId b) {
    return *_cost[a.index()] < *_cost[b.index()];
  });

  auto compare_nodes = [&] (const ENode &a, const ENode &b) {
    if (a.op != b.op)
      return a.op < b.op ? -1 : 1;
    if (a.literal != b.literal)
      return *a.literal < *b.literal ? -1 : 1;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
      if (int c = compare_classes(egraph.find(a.children[i]), egraph.find(b.children[i])); c != 0)
        return c;
    }
    return 0;
  };

  for (auto cls : order) {
    const ENode *chosen = nullptr;
    for (const auto &node : egraph.eclass(cls).nodes) {
      auto total = node_total(node);
      if (!total || *total != *_cost[cls.index()])
        continue;
      if (!chosen || compare_nodes(node, *chosen) < 0)
        chosen = &node;
    }
    _choice[cls.index()] = chosen;
  }
}

int Extractor::compare_classes(EClassId a, EClassId b) const
{
  if (a == b)
    return 0;
  if (auto it = _order_memo.find({a, b}); it != _order_memo.end())
    return it->second;

  int result = 0;
  const auto &ca = _cost[a.index()];
  const auto &cb = _cost[b.index()];
  if (*ca != *cb) {
    result = *ca < *cb ? -1 : 1;
  } else {
    const auto &na = *_choice[a.index()];
    const auto &nb = *_choice[b.index()];
    if (na.op != nb.op) {
      result = na.op < nb.op ? -1 : 1;
    } else if (na.literal != nb.literal) {
      result = *na.literal < *nb.literal ? -1 : 1;
    } else {
      for (std::size_t i = 0; i < na.children.size() && result == 0; ++i)
        result = compare_classes(_egraph.find(na.children[i]), _egraph.find(nb.children[i]));
    }
  }
  _order_memo.emplace(std::pair{a, b}, result);
  return result;
}

std::optional< std::int64_t > Extractor::best_cost(EClassId id) const
{
  return _cost[_egraph.find(id).index()];
}

Term Extractor::build(EClassId id) const
{
  const auto &node = *_choice[_egraph.find(id).index()];
  if (node.literal)
    return Term::literal(*node.literal);
  std::vector< Term > args;
  args.reserve(node.children.size());
  for (auto child : node.children)
    args.push_back(build(child));
  return Term::apply(node.op, std::move(args));
}

Extraction Extractor::extract(EClassId id) const
{
  auto root = _egraph.find(id);
  auto cost = _cost[root.index()];
  if (!cost || !_choice[root.index()]) {
    throw Error(ErrorCode::NoFiniteTerm,
                "e-class " + std::to_string(root.value) + " has no finite term: every node depends on a cycle");
  }
  return Extraction{build(root), *cost};
}

Extraction extract(const EGraph &egraph, EClassId root, const CostModel &model)
{
  return Extractor(egraph, model).extract(root);
}

} // namespace eqsat
