#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace eqsat {

// Dense index wrapper; the tag keeps class, sort and function ids apart.
template< typename Tag >
struct StrongId
{
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}

  static constexpr StrongId from_index(std::size_t idx)
  {
    return StrongId(static_cast< std::uint32_t >(idx));
  }

  constexpr std::size_t index() const { return value; }

  auto operator<=>(const StrongId &) const = default;
};

template< typename Tag >
std::ostream &operator<<(std::ostream &os, StrongId< Tag > id)
{
  return os << id.value;
}

using EClassId = StrongId< struct EClassTag >;
using SortId = StrongId< struct SortTag >;
using FunctionId = StrongId< struct FunctionTag >;

} // namespace eqsat

template< typename Tag >
struct std::hash< eqsat::StrongId< Tag > >
{
  std::size_t operator()(eqsat::StrongId< Tag > id) const noexcept
  {
    return std::hash< std::uint32_t >{}(id.value);
  }
};
