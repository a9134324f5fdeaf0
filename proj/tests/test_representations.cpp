#include <gtest/gtest.h>

#include <random>

#include "dblrot/dblrot.hpp"

using namespace dblrot;

namespace {

Interval iv(long a, long b, long den) { return Interval(rat(a, den), rat(b, den)); }
Interval unit() { return Interval(Scalar(0), Scalar(1)); }

ITMPermutation worked() {
  return make_perm("A D B C D", "C D B D_ A", {rat(1, 10), rat(1, 5), rat(1, 5), rat(1, 4)});
}

PiecewiseTranslation worked_map() {
  return PiecewiseTranslation(unit(), {Branch{iv(0, 2, 20), rat(9, 10)},
                                       Branch{iv(2, 11, 20), rat(1, 10)},
                                       Branch{iv(11, 20, 20), rat(-11, 20)}});
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

std::vector<DoubleRotation> samples(std::size_t n, std::uint64_t seed, int precision = 53) {
  SweepConfig cfg;
  cfg.sample_count = n;
  cfg.rng_seed = seed;
  cfg.dyadic_precision = precision;
  return sample_parameters(cfg);
}

}  // namespace

TEST(DoubleRotation, EqualAnglesMergeIntoOneRotation) {
  const auto m = dr_to_piecewise(DoubleRotation{rat(1, 4), rat(1, 4), rat(1, 2)});
  EXPECT_EQ(m, PiecewiseTranslation::rotation(unit(), rat(1, 4)));
}

TEST(DoubleRotation, SingleBranchArithmetic) {
  const DoubleRotation d{rat(1, 4), rat(0), rat(1)};
  EXPECT_EQ(dr_to_piecewise(d).evaluate(rat(9, 10)), rat(3, 20));
  EXPECT_EQ(d(rat(9, 10)), rat(3, 20));
}

TEST(DoubleRotation, FourBranchExample) {
  const auto m = dr_to_piecewise(DoubleRotation{rat(2, 3), rat(1, 3), rat(1, 2)});
  const PiecewiseTranslation expect(unit(), {Branch{iv(0, 1, 3), rat(2, 3)},
                                             Branch{iv(2, 3, 6), rat(-1, 3)},
                                             Branch{iv(3, 4, 6), rat(1, 3)},
                                             Branch{iv(2, 3, 3), rat(-2, 3)}});
  EXPECT_EQ(m, expect);
  EXPECT_EQ(m.branch_count(), 4u);
}

TEST(DoubleRotation, PiecewiseAgreesWithFormula) {
  for (const auto& d : samples(50, 5, 12)) {
    const auto m = dr_to_piecewise(d);
    for (long k = 0; k < 64; ++k) EXPECT_EQ(m.evaluate(rat(k, 64)), d(rat(k, 64)));
    for (const auto& b : m.branches()) EXPECT_EQ(m.evaluate(b.domain.lo), d(b.domain.lo));
  }
}

TEST(DoubleRotation, CircleCutIsConjugate) {
  for (const auto& d : samples(30, 8, 16)) {
    for (const Scalar& p : {d.c, d.alpha, rat(1, 3)}) {
      const auto m = circle_cut(d, p);
      for (long k = 0; k < 32; ++k) {
        const Scalar x = rat(k, 32);
        EXPECT_EQ(m.evaluate(x), frac(d(frac(x + p)) - p));
      }
    }
  }
}

TEST(DoubleRotation, ValidationRejectsOutOfRange) {
  EXPECT_EQ(kind_of([] { DoubleRotation{rat(1), rat(0), rat(1, 2)}.validate(); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { DoubleRotation{rat(0), rat(0), rat(3, 2)}.validate(); }),
            ErrorKind::InvalidArgument);
}

TEST(DrToItm3, RotationsAreRejected) {
  EXPECT_EQ(kind_of([] { dr_to_itm3(DoubleRotation{rat(1, 5), rat(1, 5), rat(1, 2)}); }),
            ErrorKind::DegenerateRotation);
  EXPECT_EQ(kind_of([] { dr_to_itm3(DoubleRotation{rat(1, 5), rat(2, 5), rat(0)}); }),
            ErrorKind::DegenerateRotation);
}

TEST(DrToItm3, TwoThirdsOneThirdHalfIsARotationOnItsAttractor) {
  const DoubleRotation d{rat(2, 3), rat(1, 3), rat(1, 2)};
  EXPECT_EQ(kind_of([&] { dr_to_itm3(d); }), ErrorKind::DegenerateRotation);
  // Independent check: on its attractor (an arc of length 2/3) the map is a
  // bijection with at most two pieces once the circle is cut at 2/3.
  const auto a = attractor_classify(dr_to_piecewise(d), 100, 1000);
  ASSERT_TRUE(a.finite());
  EXPECT_EQ(a.set.total_length(), rat(2, 3));
  const auto cut = circle_cut(d, rat(2, 3));
  const auto on_arc = cut.restricted(Interval(Scalar(0), rat(2, 3)));
  EXPECT_TRUE(on_arc.is_bijection());
  EXPECT_LE(on_arc.branch_count(), 2u);
}

TEST(DrToItm3, OutputIsTheFirstReturnOfTheDoubleRotation) {
  int converted = 0;
  for (const auto& d : samples(300, 21)) {
    if (d.is_rotation()) continue;
    Itm3Conversion conv{};
    try {
      conv = dr_to_itm3(d);
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::DegenerateRotation ||
                  e.kind() == ErrorKind::NotReducibleTo3ITM)
          << e.what();
      continue;
    }
    conv.itm.validate();
    EXPECT_EQ(frame_first_return(d, conv.frame), conv.itm.to_piecewise());
    EXPECT_FALSE(conv.itm.to_piecewise().has_extremal_gap());
    ++converted;
  }
  EXPECT_GT(converted, 150);
}

TEST(Itm3, ReadingAndConventions) {
  ITM3 m{{rat(1, 10), rat(9, 20), rat(9, 20)}, {3, 2, 1}, rat(1, 5)};
  m.validate();
  EXPECT_EQ(m.to_piecewise(), worked_map());
  EXPECT_EQ(ITM3::match(worked_map()).value().pi1, (std::array<int, 3>{3, 2, 1}));
  EXPECT_FALSE((ITM3{{rat(1), rat(1), rat(1)}, {1, 3, 2}, rat(1)}.irreducible()));
  EXPECT_FALSE((ITM3{{rat(1), rat(1), rat(1)}, {2, 1, 3}, rat(1)}.irreducible()));
  EXPECT_TRUE((ITM3{{rat(1), rat(1), rat(1)}, {3, 1, 2}, rat(1)}.forbidden()));
  EXPECT_EQ(kind_of([] { ITM3{{rat(1), rat(0), rat(1)}, {2, 3, 1}, rat(1)}.validate(); }),
            ErrorKind::InvalidArgument);
}

TEST(Split, WorkedMapGivesWorkedPermutation) {
  const ITMPermutation p = split(worked_map());
  EXPECT_EQ(p, worked());
  for (long k = 0; k < 100; ++k) EXPECT_EQ(eval_perm(p, rat(k, 100)), worked_map().evaluate(rat(k, 100)));
}

TEST(Split, RejectsMapsWithoutOverlap) {
  EXPECT_EQ(kind_of([] {
              split(PiecewiseTranslation(unit(), {Branch{iv(0, 1, 3), rat(2, 3)},
                                                  Branch{iv(1, 2, 3), 0},
                                                  Branch{iv(2, 3, 3), rat(-2, 3)}}));
            }),
            ErrorKind::NoOverlap);
  EXPECT_EQ(kind_of([] { split(PiecewiseTranslation::rotation(unit(), rat(1, 3))); }),
            ErrorKind::NotThreeBranches);
}

TEST(Split, RoundTripOnDoubleRotations) {
  int checked = 0;
  for (const auto& d : samples(400, 33)) {
    if (d.is_rotation()) continue;
    PiecewiseTranslation m = PiecewiseTranslation::identity(unit());
    try {
      m = dr_to_itm3(d).itm.to_piecewise();
    } catch (const Error&) {
      continue;
    }
    if (singularity_in_gap(m)) continue;
    ITMPermutation p;
    try {
      p = split(m);
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::NonGeneric || e.kind() == ErrorKind::NoOverlap)
          << e.what();
      continue;
    }
    EXPECT_EQ(perm_to_piecewise(p), m);
    EXPECT_EQ(p.w1[p.gap_index()].letter, p.repeated());
    Scalar bottom = 0;
    for (const auto& s : p.w1) bottom += p.length_of(s.letter);
    EXPECT_EQ(bottom, p.total());
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(EvalPerm, WorkedExamples) {
  const auto p = worked();
  EXPECT_EQ(eval_perm(p, rat(0)), rat(9, 10));
  EXPECT_EQ(eval_perm(p, rat(1, 10)), rat(1, 5));
  EXPECT_EQ(eval_perm(p, rat(3, 4)), rat(1, 5));
  EXPECT_EQ(kind_of([&] { eval_perm(p, rat(1)); }), ErrorKind::OutOfSupport);
}

TEST(EvalPerm, PiecewiseMergesToThreeBranches) {
  EXPECT_EQ(perm_to_piecewise(worked()), worked_map());
}

TEST(EvalPerm, ImageMissesExactlyTheGapCell) {
  const auto p = worked();
  // w1 = C D B D_ A: the gap cell starts after C, D, B.
  const Scalar g0 = p.length_of(Letter::C) + p.length_of(Letter::D) + p.length_of(Letter::B);
  const Interval gap(g0, g0 + p.length_of(Letter::D));
  const auto m = perm_to_piecewise(p);
  EXPECT_EQ(m.image(), IntervalSet(m.support()).minus(IntervalSet(gap)));
}

TEST(Flip, ReversesBothWords) {
  const auto f = flip(worked());
  EXPECT_EQ(words_text(f.w0, f.w1), "D C B D A / A D_ B D C");
  EXPECT_EQ(flip(f), worked());
}

TEST(Flip, ConjugatesByReflection) {
  // eval(flip p, x) = L - eval(p, L - x) on branch interiors.
  const auto p = worked();
  const auto f = flip(p);
  const Scalar L = p.total();
  for (long k = 1; k < 200; ++k) {
    const Scalar x = rat(k, 200) * L + rat(1, 4001);
    if (x >= L) continue;
    bool interior = true;
    for (const auto& b : perm_to_piecewise(p).branches()) interior = interior && L - x != b.domain.lo;
    if (!interior) continue;
    EXPECT_EQ(eval_perm(f, x), L - eval_perm(p, L - x));
  }
}

TEST(PermText, RoundTripsAndRejectsBadInput) {
  const auto p = worked();
  EXPECT_EQ(to_text(p), "A D B C D\nC D B D_ A\nA=1/10\nB=1/5\nC=1/5\nD=1/4\n");
  EXPECT_EQ(parse_perm(to_text(p)), p);
  EXPECT_EQ(kind_of([] { parse_perm("A D B C D\nC D B D_ A\nA=1/10\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { make_perm("A D B C D", "C D B B_ A", {rat(1), rat(1), rat(1), rat(1)}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { make_perm("A D B C D", "C D B D_ A", {rat(1), rat(0), rat(1), rat(1)}); }),
            ErrorKind::InvalidArgument);
}
