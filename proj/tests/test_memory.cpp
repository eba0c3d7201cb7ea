#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mnc/memory.hpp"

namespace {

using namespace mnc;

MemoryConfig config(std::size_t s, double tau = 1e-4, double alpha = 1.0) {
  MemoryConfig c;
  c.capacity = s;
  c.temperature = tau;
  c.write_strength = alpha;
  return c;
}

MemoryState ramp(std::size_t s) {
  MemoryState m(s);
  for (std::size_t i = 0; i < s; ++i) m.values[i] = 0.5 * static_cast<double>(i) - 3.25;
  return m;
}

TEST(Memory, ConfigRejectsBadValues) {
  EXPECT_THROW(config(0).validate(), PreconditionError);
  EXPECT_THROW(config(4, 0.0).validate(), PreconditionError);
  EXPECT_THROW(config(4, 1e-4, 0.0).validate(), PreconditionError);
  EXPECT_THROW(config(4, 1e-4, 1.5).validate(), PreconditionError);
  EXPECT_NO_THROW(config(4, 1e-4, 0.25).validate());
}

TEST(Memory, KeyVectorInterpolates) {
  const auto k = key_vector(1.25, 4);
  ASSERT_EQ(k.size(), 4u);
  EXPECT_EQ(k[0], 0.0);
  EXPECT_EQ(k[1], 0.75);
  EXPECT_EQ(k[2], 0.25);
  EXPECT_EQ(k[3], 0.0);
  const auto e = key_vector(3.0, 4);
  EXPECT_EQ(e, (std::vector<double>{0, 0, 0, 1}));
}

TEST(Memory, AddressOutOfRangeRejected) {
  const auto c = config(8);
  const MemoryState m(8);
  EXPECT_THROW(read(m, -0.5, c), AddressingError);
  EXPECT_THROW(read(m, 7.5, c), AddressingError);
  EXPECT_THROW(read(m, std::nan(""), c), AddressingError);
  EXPECT_NO_THROW(read(m, 7.0, c));
}

TEST(Memory, IntegerAttentionIsOneHot) {
  const auto c = config(16);
  for (std::size_t q = 0; q < 16; ++q) {
    const auto w = attention(static_cast<double>(q), c);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(w[i], i == q ? 1.0 : 0.0);
  }
}

TEST(Memory, HalfAddressSplitsEvenly) {
  const auto w = attention(2.5, config(6, 1.0));
  EXPECT_NEAR(w[2], w[3], 1e-15);
  EXPECT_GT(w[2], w[0]);
}

TEST(Memory, LargeTemperatureApproachesUniform) {
  const auto w = attention(1.0, config(5, 1e9));
  for (double x : w) EXPECT_NEAR(x, 0.2, 1e-9);
}

TEST(Memory, ReadIntegerAddressIsExact) {
  const auto c = config(32);
  const MemoryState m = ramp(32);
  for (std::size_t q = 0; q < 32; ++q) EXPECT_EQ(read(m, static_cast<double>(q), c), m[q]);
}

TEST(Memory, WriteThenReadReturnsValueBitwise) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> v(-1e6, 1e6);
  for (std::size_t s : {1u, 2u, 17u, 256u}) {
    const auto c = config(s);
    MemoryState m = ramp(s);
    for (std::size_t q = 0; q < s; ++q) {
      const double x = v(rng);
      const MemoryState before = m;
      write_inplace(m, static_cast<double>(q), x, c);
      EXPECT_EQ(read(m, static_cast<double>(q), c), x);
      for (std::size_t i = 0; i < s; ++i)
        if (i != q) {
          EXPECT_EQ(m[i], before[i]);
        }
    }
  }
}

TEST(Memory, PartialStrengthBlends) {
  MemoryState m(4);
  m.values = {1, 2, 3, 4};
  const auto out = write(m, 2.0, 11.0, config(4, 1e-4, 0.5));
  EXPECT_EQ(out[2], 7.0);
  EXPECT_EQ(out[0], 1.0);
  EXPECT_EQ(m[2], 3.0);
}

TEST(Memory, SoftDeleteClearsTarget) {
  MemoryState m(4);
  m.values = {1, 2, 3, 4};
  const auto out = soft_delete(m, 1.0, config(4));
  EXPECT_EQ(out.values, (std::vector<double>{1, 0, 3, 4}));
}

TEST(Memory, HardReadChecksRange) {
  const MemoryState m = ramp(4);
  EXPECT_EQ(hard_read(m, 3), m[3]);
  EXPECT_THROW(hard_read(m, 4), AddressingError);
}

TEST(Memory, AttentionSumsToOneOnFractionalAddresses) {
  std::mt19937_64 rng(11);
  for (double tau : {1e-4, 1e-2, 1.0, 10.0}) {
    const auto c = config(64, tau);
    std::uniform_real_distribution<double> q(0.0, 63.0);
    for (int t = 0; t < 500; ++t) {
      const auto w = attention(q(rng), c);
      double sum = 0.0;
      for (double x : w) {
        EXPECT_GE(x, 0.0);
        sum += x;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

}  // namespace
