#include <gtest/gtest.h>

#include <random>

#include "dswkit/params.hpp"

using namespace dswkit;

TEST(ModelParams, DerivedQuantities) {
  const ModelParams m = ModelParams::make(1.0, 4.0);
  EXPECT_DOUBLE_EQ(m.gamma(), 0.25);
  EXPECT_DOUBLE_EQ(m.left_coeff(), -2.0);
  EXPECT_DOUBLE_EQ(m.right_coeff(), 4.0);
  EXPECT_TRUE(m.has_oscillatory_stationary_state());
  EXPECT_FALSE(ModelParams::make(1.0, 7.0).has_oscillatory_stationary_state());
}

TEST(ModelParams, RejectsNonPositiveOrNonFinite) {
  EXPECT_THROW(ModelParams::make(0.0, 4.0), DomainError);
  EXPECT_THROW(ModelParams::make(1.0, -1.0), DomainError);
  EXPECT_THROW(ModelParams::make(NAN, 1.0), DomainError);
  EXPECT_THROW(ModelParams::make(1.0, INFINITY), DomainError);
}

TEST(Canonical, ScalesForReferenceParameters) {
  const CanonicalForm cf = to_canonical(ModelParams::make(1.0, 4.0));
  EXPECT_DOUBLE_EQ(cf.params.a, 0.25);
  EXPECT_DOUBLE_EQ(cf.params.c, 1.0);
  EXPECT_DOUBLE_EQ(cf.space_scale, 2.0);
  EXPECT_DOUBLE_EQ(cf.time_scale, 8.0);
  EXPECT_DOUBLE_EQ(cf.amp_scale, 1.0);
}

TEST(Frames, LabToTraveling) {
  const ModelParams m = ModelParams::make(1.0, 4.0);
  const SpaceTime p = frame_map({5.0, 1.0}, Frame::Lab, Frame::Traveling, m);
  EXPECT_DOUBLE_EQ(p.x, 1.0);
  EXPECT_DOUBLE_EQ(p.t, 1.0);
}

TEST(Frames, ShiftedToTraveling) {
  const ModelParams m = ModelParams::make(1.0, 4.0);
  const SpaceTime p = frame_map({0.0, 8.0}, Frame::Shifted, Frame::Traveling, m);
  // Shifted x = 0 at canonical time 8 sits gamma * 8 = 2 canonical units
  // left of the front.
  EXPECT_DOUBLE_EQ(p.x, -1.0);
  EXPECT_DOUBLE_EQ(p.t, 1.0);
}

TEST(Frames, RoundTripsAreIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-20, 20), ut(0, 10), ua(0.1, 3), uc(0.1, 10);
  const Frame all[] = {Frame::Lab, Frame::Traveling, Frame::Shifted};
  for (int k = 0; k < 200; ++k) {
    const ModelParams m = ModelParams::make(ua(rng), uc(rng));
    const SpaceTime p{ux(rng), ut(rng)};
    for (Frame f : all) {
      for (Frame g : all) {
        const SpaceTime q = frame_map(frame_map(p, f, g, m), g, f, m);
        EXPECT_NEAR(q.x, p.x, 1e-12 * (1 + std::abs(p.x) + p.t * 10));
        EXPECT_NEAR(q.t, p.t, 1e-12 * (1 + p.t));
      }
    }
  }
}

TEST(Frames, ParseNames) {
  EXPECT_EQ(parse_frame("lab"), Frame::Lab);
  EXPECT_EQ(parse_frame("shifted"), Frame::Shifted);
  EXPECT_STREQ(to_string(Frame::Traveling), "traveling");
  EXPECT_THROW(parse_frame("moving"), DomainError);
}
