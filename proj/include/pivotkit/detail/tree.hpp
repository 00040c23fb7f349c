#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pivotkit::detail {

/**
 * Binary-tree reduction: at level s, slot i absorbs slot i + s for every i
 * that is a multiple of 2s. The result ends in slot 0.
 */
template <class T, class Combine>
T tree_reduce(std::vector<T> leaves, Combine combine) {
   for (std::size_t s = 1; s < leaves.size(); s *= 2)
      for (std::size_t i = 0; i + s < leaves.size(); i += 2 * s)
         leaves[i] = combine(leaves[i], leaves[i + s]);
   return std::move(leaves.front());
}

} // namespace pivotkit::detail
