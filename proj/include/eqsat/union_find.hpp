#pragma once

#include <eqsat/ids.hpp>

#include <vector>

namespace eqsat {

// Disjoint sets over dense ids. The lower id always becomes the root so that
// canonical representatives do not depend on call order.
class UnionFind
{
public:
  using Id = EClassId;

  Id make_set();

  std::size_t size() const { return _parent.size(); }
  bool contains(Id id) const { return id.index() < _parent.size(); }

  Id parent(Id id) const { return _parent[id.index()]; }

  // Read-only lookup; walks the path without compressing it.
  Id find(Id id) const;

  // Lookup that rewrites every visited entry to point at the root.
  Id find_compress(Id id);

  // Links the two roots; returns the surviving root.
  Id merge(Id a, Id b);

private:
  std::vector< Id > _parent;
};

} // namespace eqsat
