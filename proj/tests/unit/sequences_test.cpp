#include <gtest/gtest.h>

#include <numbers>

#include "seqends/error.hpp"
#include "seqends/sequences.hpp"
#include "../fixtures.hpp"
#include "../oracles.hpp"

using namespace seqends;

namespace {

CoarseSequencePrefix on_line(const SamplePtr& s, const std::vector<double>& xs, bool based = true) {
  std::vector<PointId> ids;
  for (double x : xs) ids.push_back(fixtures::at(s, {x}));
  return CoarseSequencePrefix::make(s, ids, based);
}

std::vector<double> xs_of(const CoarseSequencePrefix& seq) {
  std::vector<double> xs;
  for (auto id : seq.terms()) xs.push_back(seq.space().coords(id)[0]);
  return xs;
}

}  // namespace

TEST(CoarseSequencePrefix, BoundAndProfile) {
  const auto s = fixtures::line(10);
  const auto seq = on_line(s, {0, 2, 1, 4, 3});
  EXPECT_DOUBLE_EQ(seq.chain_bound(), 3.0);
  EXPECT_EQ(seq.escape_profile(), (std::vector<double>{0, 1, 1, 3, 3}));
  EXPECT_THROW(on_line(s, {1, 2}), PreconditionError);
  EXPECT_NO_THROW(on_line(s, {1, 2}, false));
  EXPECT_THROW(CoarseSequencePrefix::make(s, {}), PreconditionError);
}

TEST(CheckCoarse, Examples) {
  const auto s = fixtures::line(200);
  std::vector<double> up;
  for (int i = 0; i <= 100; ++i) up.push_back(i);
  auto c = check_coarse(on_line(s, up), 50);
  EXPECT_EQ(c.verdict, CoarseVerdict::coarse);
  EXPECT_DOUBLE_EQ(c.n_min, 1.0);

  std::vector<double> osc;
  for (int i = 0; i < 100; ++i) osc.push_back(i % 2);
  EXPECT_EQ(check_coarse(on_line(s, osc), 5).verdict, CoarseVerdict::not_escaping);

  c = check_coarse(fixtures::line_ray(s, 2), 50);
  EXPECT_EQ(c.verdict, CoarseVerdict::coarse);
  EXPECT_DOUBLE_EQ(c.n_min, 2.0);
}

TEST(CheckCoarse, ShortPrefixAndDeclaredBound) {
  const auto s = fixtures::line(20);
  EXPECT_EQ(check_coarse(on_line(s, {0, 1, 2}), 0.5).verdict, CoarseVerdict::undetermined);
  std::vector<PointId> ids;
  for (int x = 0; x <= 20; x += 3) ids.push_back(fixtures::at(s, {double(x)}));
  ids.push_back(fixtures::at(s, {20.0}));
  const auto declared = CoarseSequencePrefix::make(s, ids, true, 2.0);
  EXPECT_EQ(check_coarse(declared, 1).verdict, CoarseVerdict::not_bornologous);
}

TEST(IsSubsequence, Examples) {
  const auto s = fixtures::line(10);
  const auto a = on_line(s, {0, 1, 2, 3, 4});
  const auto self = is_subsequence(a, a);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->index_map, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  const auto w = is_subsequence(on_line(s, {0, 2, 4}), a);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->index_map, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_FALSE(is_subsequence(on_line(s, {0, 3}), on_line(s, {0, 1, 2})));
  const auto other = fixtures::line(10);
  EXPECT_THROW(is_subsequence(a, on_line(other, {0, 1})), PreconditionError);
}

TEST(MergeSupersequence, IdenticalInputs) {
  const auto s = fixtures::line(10);
  const auto t = on_line(s, {0, 1, 2, 3});
  const auto id = *is_subsequence(t, t);
  const auto m = merge_supersequence(t, t, t, id, id);
  EXPECT_EQ(m.sequence.terms(), t.terms());
}

TEST(MergeSupersequence, BlockConstruction) {
  const auto sp = fixtures::line(10);
  const auto s = on_line(sp, {0, 1, 2, 3, 4});
  const auto t = on_line(sp, {0, 2, 4});
  const auto r = on_line(sp, {0, 1, 2, 3, 4});
  const auto m = merge_supersequence(s, t, r, *is_subsequence(t, s), *is_subsequence(t, r));
  EXPECT_EQ(xs_of(m.sequence), (std::vector<double>{0, 1, 2, 0, 1, 2, 3, 4, 2, 3, 4}));
  EXPECT_TRUE(is_valid_witness(s, m.sequence, m.first));
  EXPECT_TRUE(is_valid_witness(r, m.sequence, m.second));
  EXPECT_TRUE(oracle::embeds(s.terms(), m.sequence.terms()));
  EXPECT_TRUE(oracle::embeds(r.terms(), m.sequence.terms()));
  EXPECT_LE(m.sequence.chain_bound(), 2.0);
}

TEST(MergeSupersequence, NoRemovedTerms) {
  const auto sp = fixtures::line(10);
  const auto t = on_line(sp, {0, 2, 4});
  const auto r = on_line(sp, {0, 1, 2, 3, 4, 5});
  const auto m = merge_supersequence(t, t, r, *is_subsequence(t, t), *is_subsequence(t, r));
  EXPECT_EQ(m.sequence.terms(), r.terms());
}

TEST(MergeSupersequence, InvalidWitnessRejected) {
  const auto sp = fixtures::line(10);
  const auto s = on_line(sp, {0, 1, 2});
  const auto t = on_line(sp, {0, 2});
  EXPECT_THROW(merge_supersequence(s, t, s, SubsequenceWitness{{0, 1}}, SubsequenceWitness{{0, 2}}),
               PreconditionError);
}

TEST(CommonSupersequence, Examples) {
  const auto sp = fixtures::line(10);
  const auto s = on_line(sp, {0, 1, 2, 3, 4});
  const auto t = on_line(sp, {0, 2, 4});
  const auto r = on_line(sp, {0, 1, 2, 3, 4});

  const std::vector<CoarseSequencePrefix> one{s};
  EXPECT_EQ(common_supersequence(one).sequence.terms(), s.terms());

  const std::vector<CoarseSequencePrefix> down{s, t};
  EXPECT_EQ(common_supersequence(down).sequence.terms(), s.terms());

  const std::vector<CoarseSequencePrefix> zigzag{s, t, r};
  const auto m = common_supersequence(zigzag);
  EXPECT_TRUE(oracle::embeds(s.terms(), m.sequence.terms()));
  EXPECT_TRUE(oracle::embeds(r.terms(), m.sequence.terms()));
  EXPECT_TRUE(is_valid_witness(s, m.sequence, m.first));
  EXPECT_TRUE(is_valid_witness(r, m.sequence, m.second));

  const std::vector<CoarseSequencePrefix> broken{s, on_line(sp, {0, -1})};
  try {
    common_supersequence(broken);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("0 and 1"), std::string::npos) << e.what();
  }
}

TEST(CommonSupersequence, LongZigZag) {
  const auto sp = fixtures::line(20);
  const auto a = on_line(sp, {0, 1, 2, 3, 4, 5, 6});
  const auto b = on_line(sp, {0, 2, 4, 6});
  const auto c = on_line(sp, {0, 2, 3, 4, 6, 7});
  const auto d = on_line(sp, {0, 2, 4, 7});
  const auto e = on_line(sp, {0, 1, 2, 4, 5, 7, 8});
  const std::vector<CoarseSequencePrefix> chain{a, b, c, d, e};
  const auto m = common_supersequence(chain);
  EXPECT_TRUE(is_valid_witness(a, m.sequence, m.first));
  EXPECT_TRUE(is_valid_witness(e, m.sequence, m.second));
  EXPECT_LE(m.sequence.chain_bound(), 3.0);
}

TEST(InterleaveFromChains, SingletonStitches) {
  const auto sp = fixtures::line(20);
  const auto s = fixtures::line_ray(sp, 1);
  std::vector<Stitch> stitches;
  for (std::size_t i : {3u, 7u, 12u}) stitches.push_back({i, i, KChain{1.0, {s[i]}}});
  const auto r = interleave_from_chains(s, s, stitches);
  ASSERT_TRUE(r.t_embedding);
  EXPECT_TRUE(is_valid_witness(s, r.sequence, r.s_embedding));
  EXPECT_TRUE(is_valid_witness(s, r.sequence, *r.t_embedding));
  EXPECT_GT(r.sequence.size(), s.size());
}

TEST(InterleaveFromChains, TShapeRungs) {
  const auto sp = fixtures::t_shape(20);
  const auto left = fixtures::t_ray(sp, -1);
  const auto right = fixtures::t_ray(sp, 1);
  std::vector<Stitch> stitches;
  for (int h : {2, 4, 6}) {
    // Term k of either ray sits at height k (term 0 is the basepoint).
    const auto i = static_cast<std::size_t>(h);
    stitches.push_back({i, i, KChain{2.0, {left[i], right[i]}}});
  }
  const auto r = interleave_from_chains(left, right, stitches);
  EXPECT_LE(r.sequence.chain_bound(), 2.0 + 1e-9);
  EXPECT_DOUBLE_EQ(r.K, 2.0);
  ASSERT_TRUE(r.t_embedding);
  EXPECT_TRUE(is_valid_witness(left, r.sequence, r.s_embedding));
  EXPECT_TRUE(is_valid_witness(right, r.sequence, *r.t_embedding));
  EXPECT_TRUE(oracle::embeds(left.terms(), r.sequence.terms()));
  EXPECT_TRUE(oracle::embeds(right.terms(), r.sequence.terms()));
}

TEST(InterleaveFromChains, EmptyStitchesGiveS) {
  const auto sp = fixtures::line(10);
  const auto s = fixtures::line_ray(sp, 1);
  const auto r = interleave_from_chains(s, s, {});
  EXPECT_EQ(r.sequence.terms(), s.terms());
}

TEST(InterleaveFromChains, RejectsBrokenStitches) {
  const auto sp = fixtures::t_shape(20);
  const auto left = fixtures::t_ray(sp, -1);
  const auto right = fixtures::t_ray(sp, 1);
  const std::vector<Stitch> too_long{{4, 4, KChain{1.0, {left[4], right[4]}}}};
  EXPECT_THROW(interleave_from_chains(left, right, too_long), PreconditionError);
  const std::vector<Stitch> wrong_end{{4, 4, KChain{2.0, {left[4], right[5]}}}};
  EXPECT_THROW(interleave_from_chains(left, right, wrong_end), PreconditionError);
  const std::vector<Stitch> unordered{{4, 4, KChain{2.0, {left[4], right[4]}}}, {3, 3, KChain{2.0, {left[3], right[3]}}}};
  EXPECT_THROW(interleave_from_chains(left, right, unordered), PreconditionError);
}

TEST(RayToSequence, UnitSpeedLine) {
  const auto sp = fixtures::line(10);
  const auto seq = ray_to_sequence([](double t) { return std::vector<double>{t}; }, sp, 5);
  EXPECT_EQ(xs_of(seq), (std::vector<double>{0, 1, 2, 3, 4, 5}));
  EXPECT_LE(seq.chain_bound(), 1.0);
}

TEST(RayToSequence, DoubleSpeedIsSubdivided) {
  const auto sp = fixtures::line(20);
  const auto seq = ray_to_sequence([](double t) { return std::vector<double>{2 * t}; }, sp, 5);
  EXPECT_LE(seq.chain_bound(), 1.0 + 2 * sp->resolution());
  EXPECT_DOUBLE_EQ(xs_of(seq).back(), 10.0);
}

TEST(RayToSequence, StopsAtWindowEdge) {
  const auto sp = fixtures::line(10);
  const auto seq = ray_to_sequence([](double t) { return std::vector<double>{t}; }, sp, 50);
  EXPECT_DOUBLE_EQ(xs_of(seq).back(), 10.0);
}

TEST(RayToSequence, DiscontinuousSamplerRejected) {
  const auto sp = fixtures::line(10);
  const auto jump = [](double t) { return std::vector<double>{t < 0.5 ? 0.0 : 5.0}; };
  EXPECT_THROW(ray_to_sequence(jump, sp, 3, 20), PreconditionError);
}

TEST(RayToSequence, CircleClimbIsCoarse) {
  const auto sp = fixtures::circles(126, 6);
  const auto seq = ray_to_sequence(fixtures::circle_climb(1), sp, 200);
  EXPECT_LE(seq.chain_bound(), 1.0 + 2 * sp->resolution());
  EXPECT_EQ(check_coarse(seq, 60).verdict, CoarseVerdict::coarse);
}

TEST(StraightSequence, DiagonalOnGrid) {
  const auto sp = fixtures::grid(2, 10);
  const std::vector<double> dir{1.0, 1.0};
  const auto seq = straight_sequence(sp, dir);
  EXPECT_EQ(seq.size(), 11u);
  EXPECT_DOUBLE_EQ(seq.chain_bound(), 1.0);
}

TEST(PolylineRay, ArcLength) {
  const std::vector<std::vector<double>> v{{0, 1}, {-1, 1}, {-1, 5}};
  EXPECT_DOUBLE_EQ(polyline_length(v), 5.0);
  const auto ray = polyline_ray(v);
  EXPECT_EQ(ray(0.5), (std::vector<double>{-0.5, 1}));
  EXPECT_EQ(ray(3.0), (std::vector<double>{-1, 3}));
  EXPECT_EQ(ray(9.0), (std::vector<double>{-1, 5}));
}
