#include "tact/reduce.hpp"

namespace tact {
namespace {

double tree(const double* v, std::size_t n, std::size_t stride) noexcept {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i * stride];
    return s;
  }
  const std::size_t h = n / 2;
  return tree(v, h, stride) + tree(v + h * stride, n - h, stride);
}

} // namespace

double pairwise_sum(std::span<const double> values) noexcept {
  return tree(values.data(), values.size(), 1);
}

double pairwise_sum_strided(std::span<const double> values, std::size_t stride,
                            std::size_t offset) noexcept {
  if (stride == 0 || values.size() <= offset) return 0.0;
  const std::size_t n = (values.size() - offset + stride - 1) / stride;
  return tree(values.data() + offset, n, stride);
}

} // namespace tact
