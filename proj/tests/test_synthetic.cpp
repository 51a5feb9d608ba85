#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rgsv/error.hpp"
#include "rgsv/synthetic.hpp"

namespace rgsv {
namespace {

using test::Scalars;

template <typename T>
class SyntheticTyped : public ::testing::Test {};
TYPED_TEST_SUITE(SyntheticTyped, Scalars);

template <typename S>
Index numerical_rank(const Matrix<S>& m) {
  const RealVector s = singular_values(m);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) r += s(i) > 1e-10 * s(0) ? 1 : 0;
  return r;
}

TYPED_TEST(SyntheticTyped, BlockCountsFollowConstruction) {
  using S = TypeParam;
  const SynthResult<S> syn = synth_gmp<S>(SynthSpec{400, 300, 200, 0.6, 1, field_of_v<S>});
  const GsvSpectrum& t = syn.true_spectrum;
  EXPECT_EQ(t.r, 80);
  EXPECT_EQ(t.s, 40);
  Index zero_alpha = 0;
  Index zero_beta = 0;
  for (Index i = 0; i < t.n(); ++i) {
    zero_alpha += t.alphas(i) == 0.0 ? 1 : 0;
    zero_beta += t.betas(i) == 0.0 ? 1 : 0;
  }
  EXPECT_EQ(zero_alpha, 80);
  EXPECT_EQ(zero_beta, 80);
  EXPECT_EQ(numerical_rank(syn.pair.g1()), 120);
  EXPECT_EQ(numerical_rank(syn.pair.g2()), 120);
  EXPECT_EQ(syn.pair.m(), 400);
  EXPECT_EQ(syn.pair.p(), 300);
  EXPECT_EQ(syn.pair.n(), 200);
}

TYPED_TEST(SyntheticTyped, FullRankHasNoExactValues) {
  using S = TypeParam;
  const SynthResult<S> syn = synth_gmp<S>(SynthSpec{50, 50, 50, 1.0, 2, field_of_v<S>});
  EXPECT_EQ(syn.true_spectrum.r, 0);
  EXPECT_EQ(syn.true_spectrum.s, 50);
}

TYPED_TEST(SyntheticTyped, DirectRoundTrip) {
  using S = TypeParam;
  test::Gen gen(31);
  for (int c = 0; c < 4; ++c) {
    const Index n = gen.size(10, 60);
    const SynthSpec spec{n + gen.size(0, 40), n + gen.size(0, 40), n, gen.uniform(0.5, 1.0),
                         gen.seed(), field_of_v<S>};
    const SynthResult<S> syn = synth_gmp<S>(spec);
    const GsvSpectrum d = compute_gsv(syn.pair, test::direct_options());
    const double tol = 1e-8 * syn.condition_r;
    EXPECT_LE(test::max_abs_diff(d.alphas, syn.true_spectrum.alphas), tol);
    EXPECT_LE(test::max_abs_diff(d.betas, syn.true_spectrum.betas), tol);
    EXPECT_GT(syn.pair.sigma_min(), 0.0);
    EXPECT_LE(pythagorean_defect(syn.true_spectrum), 1e-15);
  }
}

TEST(Synthetic, SeedsChangeTheInteriorSpectrum) {
  const SynthResult<double> a = synth_gmp<double>(SynthSpec{30, 30, 20, 0.8, 1, Field::real});
  const SynthResult<double> b = synth_gmp<double>(SynthSpec{30, 30, 20, 0.8, 2, Field::real});
  EXPECT_GT(test::max_abs_diff(a.true_spectrum.alphas, b.true_spectrum.alphas), 0.0);
  const SynthResult<double> c = synth_gmp<double>(SynthSpec{30, 30, 20, 0.8, 1, Field::real});
  EXPECT_TRUE(a.pair.g1() == c.pair.g1());
}

TEST(Synthetic, InfeasibleRanks) {
  try {
    synth_gmp<double>(SynthSpec{10, 10, 30, 0.6, 1, Field::real});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::infeasible);
  }
  EXPECT_THROW(synth_gmp<double>(SynthSpec{10, 10, 10, 0.0, 1, Field::real}), Error);
  EXPECT_THROW(synth_gmp<double>(SynthSpec{10, 10, 10, 1.5, 1, Field::real}), Error);
}

TEST(Synthetic, FromSpectrumValidates) {
  EXPECT_THROW(synth_from_spectrum<double>(5, 5, (RealVector(2) << 0.2, 0.5).finished(), 1),
               Error);
  EXPECT_THROW(synth_from_spectrum<double>(5, 5, (RealVector(2) << 1.2, 0.5).finished(), 1),
               Error);
  // three nonzero alphas cannot fit in two rows
  EXPECT_THROW(synth_from_spectrum<double>(2, 5, (RealVector(3) << 0.9, 0.5, 0.1).finished(), 1),
               Error);
}

}  // namespace
}  // namespace rgsv
