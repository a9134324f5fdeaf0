#include <gtest/gtest.h>

#include <random>

#include "dblrot/dblrot.hpp"

using namespace dblrot;

namespace {

Interval iv(long a, long b, long den) { return Interval(rat(a, den), rat(b, den)); }

Interval unit() { return Interval(Scalar(0), Scalar(1)); }

// {[0,1/10)+9/10, [1/10,11/20)+1/10, [11/20,1)-11/20}
PiecewiseTranslation three_branch() {
  return PiecewiseTranslation(unit(), {Branch{iv(0, 2, 20), rat(9, 10)},
                                       Branch{iv(2, 11, 20), rat(1, 10)},
                                       Branch{iv(11, 20, 20), rat(-11, 20)}});
}

// A random translation map on [0, 1) with `n` branches and images inside [0, 1).
PiecewiseTranslation random_map(std::mt19937_64& rng, int n, long den) {
  std::vector<long> cuts{0, den};
  std::uniform_int_distribution<long> pick(1, den - 1);
  while (static_cast<int>(cuts.size()) < n + 1) {
    const long c = pick(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Branch> bs;
  for (int i = 0; i < n; ++i) {
    const long len = cuts[i + 1] - cuts[i];
    std::uniform_int_distribution<long> start(0, den - len);
    bs.push_back(Branch{iv(cuts[i], cuts[i + 1], den), rat(start(rng) - cuts[i], den)});
  }
  return PiecewiseTranslation(unit(), std::move(bs));
}

}  // namespace

TEST(Rational, ParsesAndPrintsCanonically) {
  EXPECT_EQ(parse_scalar("6/8"), rat(3, 4));
  EXPECT_EQ(parse_scalar("-2"), rat(-2));
  EXPECT_EQ(to_string(parse_scalar("10/4")), "5/2");
  EXPECT_EQ(to_string(Scalar(3)), "3/1");
  for (const char* bad : {"", "/3", "1/", "1/0", "a/b", "1.5", "1//2"}) {
    EXPECT_THROW(parse_scalar(bad), Error) << bad;
  }
  EXPECT_EQ(frac(rat(-1, 4)), rat(3, 4));
  EXPECT_EQ(dyadic(3, 2), rat(3, 4));
}

TEST(IntervalSet, MergesAndComplements) {
  const auto s = IntervalSet::from_pieces({iv(3, 5, 10), iv(0, 2, 10), iv(2, 3, 10)});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.pieces()[0], iv(0, 5, 10));
  const auto c = s.complement_in(unit());
  EXPECT_EQ(c, IntervalSet(iv(5, 10, 10)));
  EXPECT_EQ(s.unite(c), IntervalSet(unit()));
  EXPECT_TRUE(s.intersect(c).empty());
  EXPECT_EQ(s.total_length() + c.total_length(), Scalar(1));
  EXPECT_TRUE(s.contains(rat(0)));
  EXPECT_FALSE(s.contains(rat(1, 2)));
}

TEST(Evaluate, IdentityAndThreeBranchMap) {
  EXPECT_EQ(PiecewiseTranslation::identity(unit()).evaluate(rat(1, 2)), rat(1, 2));
  const auto t = three_branch();
  EXPECT_EQ(t.evaluate(rat(0)), rat(9, 10));
  EXPECT_EQ(t.evaluate(rat(3, 5)), rat(1, 20));
  EXPECT_THROW(t.evaluate(rat(1)), Error);
}

TEST(Image, Examples) {
  const auto t = three_branch();
  EXPECT_TRUE(t.image(IntervalSet()).empty());
  EXPECT_EQ(PiecewiseTranslation::rotation(unit(), rat(1, 4)).image(), IntervalSet(unit()));
  const auto img = t.image();
  // [9/10,1) u [1/5,13/20) u [0,9/20), merged.
  EXPECT_EQ(img, IntervalSet::from_pieces({iv(0, 13, 20), iv(18, 20, 20)}));
  EXPECT_EQ(img.total_length(), rat(3, 4));
  EXPECT_EQ(t.gaps(), IntervalSet(iv(13, 18, 20)));
  EXPECT_EQ(t.overlaps(), IntervalSet(iv(4, 9, 20)));
}

TEST(Image, AgreesWithPointwiseEvaluation) {
  // Oracle: a point is in T(S) iff it is the image of some point of S; test
  // on a fine rational grid, where both sides are decided exactly.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_map(rng, 3, 40);
    const auto img = t.image();
    std::vector<bool> hit(160, false);
    for (int i = 0; i < 160; ++i) {
      const Scalar y = t.evaluate(rat(i, 160));
      const Scalar k = y * 160;
      hit[k.get_num().get_si()] = true;
    }
    for (int i = 0; i < 160; ++i) EXPECT_EQ(img.contains(rat(i, 160)), hit[i]) << i;
  }
}

TEST(Image, NestingAndLengthMonotonicity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = random_map(rng, 3 + trial % 3, 64);
    IntervalSet s(t.support());
    for (int n = 0; n < 12; ++n) {
      const IntervalSet next = t.image(s);
      EXPECT_TRUE(next.subset_of(s));
      EXPECT_LE(next.total_length(), s.total_length());
      s = next;
    }
  }
}

TEST(Attractor, RotationStabilizesImmediately) {
  const auto r = attractor_classify(PiecewiseTranslation::rotation(unit(), rat(1, 3)), 10, 100);
  EXPECT_TRUE(r.finite());
  EXPECT_EQ(r.n, 0);
  EXPECT_EQ(r.set, IntervalSet(unit()));
}

TEST(Attractor, DoubleRotationIsInvariantAttractor) {
  const auto t = dr_to_piecewise(DoubleRotation{rat(2, 3), rat(1, 3), rat(1, 2)});
  const auto r = attractor_classify(t, 1000, 1 << 14);
  ASSERT_TRUE(r.finite());
  EXPECT_EQ(t.image(r.set), r.set);
  // Recompute the nested sequence by hand and compare the stabilization index.
  IntervalSet s(unit());
  int n = 0;
  while (t.image(s) != s) {
    s = t.image(s);
    ++n;
  }
  EXPECT_EQ(n, r.n);
  EXPECT_EQ(s, r.set);
  // The arc from 2/3 to 1/3 through 0.
  EXPECT_EQ(r.set, IntervalSet::from_pieces({iv(0, 1, 3), iv(2, 3, 3)}));
}

TEST(Attractor, BudgetOnlyDelaysTheAnswer) {
  int found = 0;
  for (long q = 5; q <= 29 && found < 3; ++q) {
    for (long a = 1; a < q && found < 3; ++a) {
      const DoubleRotation d{rat(a, q), rat(1, 2 * q + 1), rat(2, 5)};
      const auto t = dr_to_piecewise(d);
      const auto small = attractor_classify(t, 10, 1 << 14);
      const auto big = attractor_classify(t, 1000, 1 << 14);
      if (small.finite()) {
        EXPECT_TRUE(big.finite());
        EXPECT_EQ(small.n, big.n);
        EXPECT_EQ(small.set, big.set);
        continue;
      }
      if (big.finite()) {
        EXPECT_GE(big.n, 10);
        ++found;
      }
    }
  }
  EXPECT_GT(found, 0);
}

TEST(FirstReturn, BaseEqualToSupportGivesTheMap) {
  const auto rot = PiecewiseTranslation::rotation(unit(), rat(2, 5));
  const auto fr = first_return(rot, unit(), 16);
  EXPECT_EQ(fr.map(), rot);
  for (const auto& p : fr.pieces) EXPECT_EQ(p.time, 1);
}

TEST(FirstReturn, ThreeBranchMapOnThreeQuarters) {
  const auto fr = first_return(three_branch(), iv(0, 3, 4), 16);
  ASSERT_EQ(fr.pieces.size(), 3u);
  EXPECT_EQ(fr.pieces[0].domain, iv(0, 2, 20));
  EXPECT_EQ(fr.pieces[0].shift, rat(7, 20));
  EXPECT_EQ(fr.pieces[0].time, 2);
  EXPECT_EQ(fr.pieces[1].domain, iv(2, 11, 20));
  EXPECT_EQ(fr.pieces[1].shift, rat(1, 10));
  EXPECT_EQ(fr.pieces[1].time, 1);
  EXPECT_EQ(fr.pieces[2].domain, iv(11, 15, 20));
  EXPECT_EQ(fr.pieces[2].shift, rat(-11, 20));
  EXPECT_EQ(fr.pieces[2].time, 1);
}

TEST(FirstReturn, InvariantRegionAwayFromBaseNeverReturns) {
  // [0,1/2) is pushed into [1/2,1), which is fixed pointwise.
  const PiecewiseTranslation t(unit(), {Branch{iv(0, 1, 2), rat(1, 2)}, Branch{iv(1, 2, 2), 0}});
  try {
    first_return(t, iv(0, 1, 2), 50);
    FAIL() << "expected NonReturning";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonReturning);
  }
}

TEST(FirstReturn, MatchesIteratedEvaluation) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const DoubleRotation d{rat(1 + trial % 37, 41), rat(3 + trial % 29, 43), rat(1 + trial % 11, 13)};
    const auto t = dr_to_piecewise(d);
    const Interval base(rat(1, 7), rat(5, 7));
    ReturnMap fr;
    try {
      fr = first_return(t, base, 1 << 12);
    } catch (const Error& e) {
      // Part of the base can fall into an invariant region that avoids it.
      EXPECT_EQ(e.kind(), ErrorKind::NonReturning);
      continue;
    }
    for (const auto& p : fr.pieces) {
      for (const Scalar& x : {p.domain.lo, p.domain.midpoint()}) {
        Scalar y = x;
        for (int k = 0; k < p.time; ++k) {
          y = t.evaluate(y);
          if (k + 1 < p.time) {
            EXPECT_FALSE(base.contains(y));
          }
        }
        EXPECT_TRUE(base.contains(y));
        EXPECT_EQ(y, fr.evaluate(x));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(FirstReturn, CollapsedGluesComponents) {
  const auto t = three_branch();
  const auto fr = first_return(t, t.image(), 4);
  const auto m = fr.collapsed();
  EXPECT_EQ(m.support(), Interval(Scalar(0), rat(3, 4)));
  // Gluing map: [0,13/20) stays, [9/10,1) moves down by 1/4.
  auto glue = [](const Scalar& x) { return x < rat(13, 20) ? x : x - rat(1, 4); };
  for (const auto& p : fr.pieces) {
    const Scalar x = p.domain.midpoint();
    EXPECT_EQ(m.evaluate(glue(x)), glue(fr.evaluate(x)));
  }
}

TEST(Reduction, NoSingularityInGapGivesNothing) {
  // Overlap and gap, but the gap [13/20,9/10) holds neither 1/10 nor 11/20.
  EXPECT_FALSE(reduce_if_singularity_in_gap(three_branch()).has_value());
}

TEST(Reduction, SingularityInGapGivesRotation) {
  // Images [4/5,1), [0,2/5), [1/10,1/2): gap [1/2,4/5) contains 3/5.
  const PiecewiseTranslation t(unit(), {Branch{iv(0, 1, 5), rat(4, 5)},
                                        Branch{iv(1, 3, 5), rat(-1, 5)},
                                        Branch{iv(3, 5, 5), rat(-1, 2)}});
  ASSERT_TRUE(singularity_in_gap(t));
  const auto rep = reduce_if_singularity_in_gap(t);
  ASSERT_TRUE(rep.has_value());
  EXPECT_LE(rep->map.branch_count(), 2u);
  EXPECT_TRUE(rep->map.is_bijection());
  EXPECT_TRUE(rep->map.overlaps().empty());
  EXPECT_EQ(rep->map, PiecewiseTranslation::rotation(rep->map.support(), rep->angle));
}

TEST(Trim, FixedPointAndForcedTrim) {
  const auto t = three_branch();
  EXPECT_EQ(trim_extremal_gaps(t, 8), t);
  const PiecewiseTranslation s(unit(), {Branch{iv(0, 1, 2), rat(1, 2)}, Branch{iv(1, 2, 2), 0}});
  const auto trimmed = trim_extremal_gaps(s, 8);
  EXPECT_EQ(trimmed, s.restricted(iv(1, 2, 2)));
  EXPECT_EQ(trimmed.image().hull(), trimmed.support());
}

TEST(Trim, AcceleratedAgreesWithPlainRestriction) {
  // Oracle: restrict to the hull of the image one round at a time.
  SweepConfig cfg;
  cfg.sample_count = 400;
  cfg.rng_seed = 99;
  cfg.dyadic_precision = 20;
  int compared = 0;
  for (const auto& d : sample_parameters(cfg)) {
    if (d.is_rotation()) continue;
    PiecewiseTranslation naive = dr_to_piecewise(d);
    int rounds = 0;
    for (; rounds < 3000 && naive.image().hull() != naive.support(); ++rounds) {
      naive = naive.restricted(naive.image().hull());
    }
    if (rounds == 3000) continue;
    const auto fast = trim_extremal_gaps(dr_to_piecewise(d), 3000);
    EXPECT_EQ(fast, naive) << to_string(d.alpha) << ' ' << to_string(d.beta) << ' '
                           << to_string(d.c);
    EXPECT_EQ(fast.image().hull(), fast.support());
    ++compared;
  }
  EXPECT_GT(compared, 300);
}

TEST(Trim, CapIsReported) {
  const PiecewiseTranslation s(unit(), {Branch{iv(0, 1, 2), rat(1, 2)}, Branch{iv(1, 2, 2), 0}});
  try {
    trim_extremal_gaps(s, 0);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
