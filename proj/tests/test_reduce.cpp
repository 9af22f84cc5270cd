#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tact/random.hpp"
#include "tact/reduce.hpp"

using namespace tact;

TEST_CASE("pairwise sum of small integers is exact") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(static_cast<double>(i));
  CHECK(pairwise_sum(v) == 500500.0);
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
  CHECK(pairwise_sum(std::span<const double>(v.data(), 1)) == 1.0);
}

TEST_CASE("pairwise sum stays within the summation bound of a long double reference") {
  const CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.integer(1000 + trial, 0, 5000));
    std::vector<double> v(n);
    long double ref = 0.0L, mag = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = rng.uniform(trial * 10000 + i, -1.0, 1.0) * std::pow(10.0, rng.integer(777 + i, -3, 3));
      ref += v[i];
      mag += std::abs(v[i]);
    }
    const double bound = std::log2(static_cast<double>(n) + 1.0) * 2.0 * std::numeric_limits<double>::epsilon() *
                         static_cast<double>(mag);
    CHECK(std::abs(static_cast<long double>(pairwise_sum(v)) - ref) <= bound);
  }
}

TEST_CASE("strided sum matches the gathered column") {
  std::vector<double> v;
  for (int i = 0; i < 3 * 101; ++i) v.push_back(0.1 * i - 7.0);
  for (std::size_t off = 0; off < 3; ++off) {
    std::vector<double> col;
    for (std::size_t i = off; i < v.size(); i += 3) col.push_back(v[i]);
    CHECK(pairwise_sum_strided(v, 3, off) == pairwise_sum(col));
  }
}

TEST_CASE("counter generator is a pure function of its inputs") {
  const CounterRng a(5, 2), b(5, 2), c(5, 3);
  for (std::uint64_t k = 0; k < 100; ++k) {
    CHECK(a.bits(k) == b.bits(k));
    const double u = a.uniform(k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const long i = a.integer(k, -2, 2);
    CHECK(i >= -2);
    CHECK(i <= 2);
  }
  int same = 0;
  for (std::uint64_t k = 0; k < 100; ++k) same += a.bits(k) == c.bits(k);
  CHECK(same == 0);
}
