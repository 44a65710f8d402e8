#include <eqsat/union_find.hpp>

#include <eqsat/error.hpp>

#include <utility>

namespace eqsat {

UnionFind::Id UnionFind::make_set()
{
  auto id = Id::from_index(_parent.size());
  _parent.push_back(id);
  return id;
}

UnionFind::Id UnionFind::find(Id id) const
{
  if (!contains(id))
    throw Error(ErrorCode::InvalidId, "e-class id " + std::to_string(id.value) + " was never allocated");
  while (_parent[id.index()] != id)
    id = _parent[id.index()];
  return id;
}

UnionFind::Id UnionFind::find_compress(Id id)
{
  auto root = find(id);
  while (_parent[id.index()] != root) {
    auto next = _parent[id.index()];
    _parent[id.index()] = root;
    id = next;
  }
  return root;
}

UnionFind::Id UnionFind::merge(Id a, Id b)
{
  a = find_compress(a);
  b = find_compress(b);
  if (a == b)
    return a;
  if (b < a)
    std::swap(a, b);
  _parent[b.index()] = a;
  return a;
}

} // namespace eqsat
