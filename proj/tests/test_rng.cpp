// Copyright 2026 The stackpmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "stackpmf/rng.hpp"

namespace stackpmf {
namespace {

TEST(Philox, KnownAnswerVectors) {
  using P = Philox4x32;
  EXPECT_EQ(P::apply({0, 0, 0, 0}, {0, 0}),
            (P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(P::apply({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                     {0xffffffffu, 0xffffffffu}),
            (P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(P::apply({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                     {0xa4093822u, 0x299f31d0u}),
            (P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(DeriveSeed, DistinctAcrossIndexAndTag) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    seen.insert(derive_seed(42, i));
    seen.insert(derive_seed(42, i, "band"));
    seen.insert(derive_seed(43, i));
  }
  EXPECT_EQ(seen.size(), 3000u);
  EXPECT_EQ(derive_seed(7, 3, "band"), derive_seed(7, 3, "band"));
}

TEST(CounterStream, ReproducibleAndStreamSeparated) {
  CounterStream a(5), b(5), c(5, 1);
  int same_as_other_stream = 0;
  for (int i = 0; i < 100; ++i) {
    const auto va = a(), vb = b(), vc = c();
    EXPECT_EQ(va, vb);
    same_as_other_stream += va == vc;
  }
  EXPECT_EQ(same_as_other_stream, 0);
}

TEST(CounterStream, UniformMoments) {
  CounterStream rng(11);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(s2 / n, 1.0 / 3, 0.005);
}

TEST(NormalPair, MomentsAndAddressability) {
  const auto key = Philox4x32::key_from(99);
  const int n = 200000;
  double s = 0, s2 = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    const auto [z1, z2] = normal_pair_at(key, static_cast<std::uint64_t>(i), 3);
    s += z1 + z2;
    s2 += z1 * z1 + z2 * z2;
    cross += z1 * z2;
  }
  EXPECT_NEAR(s / (2 * n), 0.0, 0.01);
  EXPECT_NEAR(s2 / (2 * n), 1.0, 0.01);
  EXPECT_NEAR(cross / n, 0.0, 0.01);
  EXPECT_EQ(normal_pair_at(key, 17, 4), normal_pair_at(key, 17, 4));
  EXPECT_NE(normal_pair_at(key, 17, 4), normal_pair_at(key, 17, 5));
}

TEST(UnitInterval, Endpoints) {
  EXPECT_EQ(unit_closed_open(0), 0.0);
  EXPECT_LT(unit_closed_open(~std::uint64_t{0}), 1.0);
  EXPECT_GT(unit_open_closed(0), 0.0);
  EXPECT_EQ(unit_open_closed(~std::uint64_t{0}), 1.0);
}

}  // namespace
}  // namespace stackpmf
