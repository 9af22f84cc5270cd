#pragma once

#include <cstddef>
#include <span>

namespace tact {

// Fixed-shape pairwise summation. The tree depends only on the length, so
// the result is independent of how the inputs were produced.
double pairwise_sum(std::span<const double> values) noexcept;

// Sum of values[i * stride + offset] over i, same tree shape.
double pairwise_sum_strided(std::span<const double> values, std::size_t stride,
                            std::size_t offset) noexcept;

} // namespace tact
