#include <eqsat/ematch.hpp>

#include <eqsat/error.hpp>

#include <algorithm>

namespace eqsat {

namespace {

  using Substitutions = std::vector< Substitution >;

  void sort_unique(Substitutions &subs)
  {
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  }

  // Outcome of resolving a query side to one class without search.
  struct Anchor
  {
    enum class Kind { Search, Absent, Found };
    Kind kind = Kind::Search;
    EClassId id;

    static Anchor search() { return {}; }
    static Anchor absent() { return {Kind::Absent, {}}; }
    static Anchor found(EClassId id) { return {Kind::Found, id}; }
  };

  class Matcher
  {
  public:
    explicit Matcher(const EGraph &egraph) : _egraph(egraph) {}

    // Extends `subst` so that `pattern` is represented in `cls`.
    void match(const Pattern &pattern, EClassId cls, const Substitution &subst, Substitutions &out) const
    {
      std::visit([&] (const auto &node) {
        using T = std::decay_t< decltype(node) >;
        if constexpr (std::is_same_v< T, PrimitiveValue >) {
          if (auto lit = _egraph.lookup(ENode::make_literal(node)); lit && *lit == cls)
            out.push_back(subst);
        } else if constexpr (std::is_same_v< T, Pattern::Var >) {
          if (auto it = subst.find(node.name); it != subst.end()) {
            if (_egraph.find(it->second) == cls)
              out.push_back(subst);
          } else if (_egraph.sort_of(cls) == node.sort) {
            auto extended = subst;
            extended.emplace(node.name, cls);
            out.push_back(std::move(extended));
          }
        } else if constexpr (std::is_same_v< T, Pattern::Ref >) {
          if (_egraph.find(node.id) == cls)
            out.push_back(subst);
        } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
          for (const auto &enode : _egraph.eclass(cls).nodes) {
            if (enode.op != node.function)
              continue;
            Substitutions partial{subst};
            for (std::size_t i = 0; i < node.args.size() && !partial.empty(); ++i) {
              Substitutions next;
              for (const auto &s : partial)
                match(node.args[i], _egraph.find(enode.children[i]), s, next);
              partial = std::move(next);
            }
            out.insert(out.end(), std::make_move_iterator(partial.begin()), std::make_move_iterator(partial.end()));
          }
        } else {
          auto anchor = resolve(pattern, subst);
          if (anchor.kind == Anchor::Kind::Found && anchor.id == cls)
            out.push_back(subst);
        }
      }, pattern.node);
    }

    // Matches against every class of the pattern's sort.
    void match_anywhere(const Pattern &pattern, SortId sort, const Substitution &subst, Substitutions &out) const
    {
      for (auto cls : _egraph.class_ids())
        if (_egraph.sort_of(cls) == sort)
          match(pattern, cls, subst, out);
    }

    // Resolves a non-application side whose variables are all bound.
    Anchor resolve(const Pattern &pattern, const Substitution &subst) const
    {
      return std::visit([&] (const auto &node) -> Anchor {
        using T = std::decay_t< decltype(node) >;
        if constexpr (std::is_same_v< T, PrimitiveValue >) {
          auto lit = _egraph.lookup(ENode::make_literal(node));
          return lit ? Anchor::found(*lit) : Anchor::absent();
        } else if constexpr (std::is_same_v< T, Pattern::Var >) {
          auto it = subst.find(node.name);
          return it == subst.end() ? Anchor::search() : Anchor::found(_egraph.find(it->second));
        } else if constexpr (std::is_same_v< T, Pattern::Ref >) {
          return Anchor::found(_egraph.find(node.id));
        } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
          return Anchor::search();
        } else {
          if (!all_bound(pattern, subst))
            return Anchor::search();
          auto value = evaluate(pattern, subst);
          if (!value)
            return Anchor::absent();
          auto lit = _egraph.lookup(ENode::make_literal(*value));
          return lit ? Anchor::found(*lit) : Anchor::absent();
        }
      }, pattern.node);
    }

    std::optional< PrimitiveValue > evaluate(const Pattern &pattern, const Substitution &subst) const
    {
      return std::visit([&] (const auto &node) -> std::optional< PrimitiveValue > {
        using T = std::decay_t< decltype(node) >;
        if constexpr (std::is_same_v< T, PrimitiveValue >) {
          return node;
        } else if constexpr (std::is_same_v< T, Pattern::Var >) {
          return _egraph.literal_value(subst.at(node.name));
        } else if constexpr (std::is_same_v< T, Pattern::Ref >) {
          return _egraph.literal_value(node.id);
        } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
          return std::nullopt;
        } else {
          std::vector< PrimitiveValue > args;
          for (const auto &arg : node.args) {
            auto v = evaluate(arg, subst);
            if (!v)
              return std::nullopt;
            args.push_back(std::move(*v));
          }
          return eval_primitive(node.op, args);
        }
      }, pattern.node);
    }

    void extend(const Fact &fact, const Substitution &subst, Substitutions &out) const
    {
      const auto &schema = _egraph.schema();
      if (const auto *exists = std::get_if< ExistsFact >(&fact)) {
        const auto &p = exists->pattern;
        auto anchor = resolve(p, subst);
        if (anchor.kind == Anchor::Kind::Found)
          match(p, anchor.id, subst, out);
        else if (anchor.kind == Anchor::Kind::Search)
          match_anywhere(p, typecheck_pattern(schema, p), subst, out);
        return;
      }

      const auto &eq = std::get< EqFact >(fact);

      // Primitive comparison: decided on values, no class needs to hold the
      // result.
      if ((eq.lhs.is< Pattern::Prim >() || eq.rhs.is< Pattern::Prim >()) && !eq.lhs.is< Pattern::Apply >()
          && !eq.rhs.is< Pattern::Apply >() && all_bound(eq.lhs, subst) && all_bound(eq.rhs, subst)) {
        auto a = evaluate(eq.lhs, subst);
        auto b = evaluate(eq.rhs, subst);
        if (a && b && *a == *b)
          out.push_back(subst);
        return;
      }

      for (auto [first, second] : {std::pair{&eq.lhs, &eq.rhs}, std::pair{&eq.rhs, &eq.lhs}}) {
        auto anchor = resolve(*first, subst);
        if (anchor.kind == Anchor::Kind::Absent)
          return;
        if (anchor.kind == Anchor::Kind::Found) {
          match(*second, anchor.id, subst, out);
          return;
        }
      }

      const Pattern &searched = eq.lhs.is< Pattern::Apply >() ? eq.lhs : eq.rhs;
      const Pattern &other = &searched == &eq.lhs ? eq.rhs : eq.lhs;
      auto sort = typecheck_pattern(schema, searched);
      for (auto cls : _egraph.class_ids()) {
        if (_egraph.sort_of(cls) != sort)
          continue;
        Substitutions found;
        match(searched, cls, subst, found);
        for (const auto &s : found)
          match(other, cls, s, out);
      }
    }

  private:
    bool all_bound(const Pattern &pattern, const Substitution &subst) const
    {
      VarSorts vars;
      collect_vars(pattern, vars);
      return std::all_of(vars.begin(), vars.end(), [&] (const auto &v) { return subst.count(v.first) > 0; });
    }

    const EGraph &_egraph;
  };

} // namespace

std::string to_string(const Substitution &subst)
{
  std::string out = "{";
  bool first = true;
  for (const auto &[name, id] : subst) {
    out += (first ? "" : ", ") + name + " -> #" + std::to_string(id.value);
    first = false;
  }
  return out + "}";
}

std::vector< Match > ematch(const EGraph &egraph, const Pattern &pattern)
{
  Matcher matcher(egraph);
  auto sort = typecheck_pattern(egraph.schema(), pattern);

  std::vector< Match > out;
  for (auto cls : egraph.class_ids()) {
    if (egraph.sort_of(cls) != sort)
      continue;
    Substitutions subs;
    matcher.match(pattern, cls, {}, subs);
    for (auto &s : subs)
      out.push_back(Match{cls, std::move(s)});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector< Substitution > match_query(const EGraph &egraph, std::span< const Fact > query)
{
  Matcher matcher(egraph);
  Substitutions current{Substitution{}};
  for (const auto &fact : query) {
    Substitutions next;
    for (const auto &s : current)
      matcher.extend(fact, s, next);
    sort_unique(next);
    current = std::move(next);
    if (current.empty())
      break;
  }
  return current;
}

bool check(const EGraph &egraph, const Fact &fact)
{
  return check(egraph, std::span(&fact, 1));
}

bool check(const EGraph &egraph, std::span< const Fact > facts)
{
  validate_query(egraph.schema(), std::vector< Fact >(facts.begin(), facts.end()));
  return !match_query(egraph, facts).empty();
}

std::optional< EClassId > instantiate(EGraph &egraph, const Pattern &pattern, const Substitution &subst)
{
  return std::visit([&] (const auto &node) -> std::optional< EClassId > {
    using T = std::decay_t< decltype(node) >;
    if constexpr (std::is_same_v< T, PrimitiveValue >) {
      return egraph.add_literal(node);
    } else if constexpr (std::is_same_v< T, Pattern::Var >) {
      auto it = subst.find(node.name);
      if (it == subst.end())
        throw Error(ErrorCode::UnboundVariable, "variable `" + node.name + "` has no binding");
      return egraph.find(it->second);
    } else if constexpr (std::is_same_v< T, Pattern::Ref >) {
      return egraph.find(node.id);
    } else if constexpr (std::is_same_v< T, Pattern::Apply >) {
      std::vector< EClassId > children;
      children.reserve(node.args.size());
      for (const auto &arg : node.args) {
        auto child = instantiate(egraph, arg, subst);
        if (!child)
          return std::nullopt;
        children.push_back(*child);
      }
      return egraph.add(node.function, std::move(children));
    } else {
      std::vector< PrimitiveValue > args;
      for (const auto &arg : node.args) {
        auto child = instantiate(egraph, arg, subst);
        if (!child)
          return std::nullopt;
        auto value = egraph.literal_value(*child);
        if (!value)
          return std::nullopt;
        args.push_back(std::move(*value));
      }
      return egraph.add_literal(eval_primitive(node.op, args));
    }
  }, pattern.node);
}

std::size_t apply_matches(EGraph &egraph, const Rule &rule, std::span< const Substitution > matches)
{
  std::size_t applied = 0;
  for (const auto &match : matches) {
    try {
      auto locals = match;
      bool complete = true;
      for (const auto &action : rule.actions) {
        if (const auto *u = std::get_if< UnionAction >(&action)) {
          auto lhs = instantiate(egraph, u->lhs, locals);
          auto rhs = lhs ? instantiate(egraph, u->rhs, locals) : std::nullopt;
          if (!lhs || !rhs) {
            complete = false;
            break;
          }
          egraph.merge(*lhs, *rhs);
        } else {
          const auto &let = std::get< LetAction >(action);
          auto value = instantiate(egraph, let.value, locals);
          if (!value) {
            complete = false;
            break;
          }
          locals.insert_or_assign(let.name, *value);
        }
      }
      if (complete)
        ++applied;
    } catch (const Error &err) {
      throw err.with_context("in rule " + rule.name + " with " + to_string(match));
    }
  }
  return applied;
}

std::size_t apply_rule(EGraph &egraph, const Rule &rule)
{
  auto matches = match_query(egraph, rule.query);
  return apply_matches(egraph, rule, matches);
}

} // namespace eqsat
