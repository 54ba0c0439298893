#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <string>

#include "spqo/sweep.hpp"

using namespace spqo;

TEST(Sweep, ModesAgreeAndKeepIndexOrder) {
  auto item = [](std::size_t i) {
    std::mt19937_64 rng(i);
    return rng() % 1000 + i * 1000;
  };
  auto serial = sweep(257, item, SweepMode::Serial);
  auto parallel = sweep(257, item, SweepMode::Parallel);
  EXPECT_EQ(serial, parallel);
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i] / 1000, i);
}

TEST(Sweep, RethrowsLowestIndexError) {
  for (auto mode : {SweepMode::Serial, SweepMode::Parallel}) {
    try {
      sweep(50, [](std::size_t i) -> int {
        if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
        return 0;
      }, mode);
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "3");
    }
  }
}

TEST(Sweep, EmptyRange) { EXPECT_TRUE(sweep(0, [](std::size_t) { return 1; }).empty()); }
