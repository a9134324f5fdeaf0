#pragma once

#include <random>
#include <vector>

#include "dblrot/dblrot.hpp"

namespace dblrot::testing {

/// States met along R-induction paths started from sampled double rotations.
inline std::vector<ITMPermutation> reachable_states(std::size_t count, std::uint64_t seed,
                                                    int path_len = 40) {
  SweepConfig cfg;
  cfg.rng_seed = seed;
  cfg.sample_count = 64;
  std::vector<ITMPermutation> out;
  for (std::uint64_t round = 0; out.size() < count && round < 1000; ++round) {
    cfg.rng_seed = seed + 7919 * round;
    for (const auto& d : sample_parameters(cfg)) {
      if (out.size() >= count) break;
      if (d.is_rotation()) continue;
      ITMPermutation p;
      try {
        const PiecewiseTranslation m = dr_to_itm3(d).itm.to_piecewise();
        if (singularity_in_gap(m)) continue;
        p = split(m);
      } catch (const Error&) {
        continue;
      }
      out.push_back(p);
      for (int k = 0; k < path_len && out.size() < count; ++k) {
        StepOutcome o;
        try {
          o = r_step(p);
        } catch (const Error&) {
          break;
        }
        if (!o.is_continue()) break;
        p = *o.next;
        out.push_back(p);
      }
    }
  }
  return out;
}

/// Irreducible allowed 3-ITMs with small-denominator data, an overlap, and
/// no singularity in the gap.
inline std::vector<PiecewiseTranslation> random_three_itms(std::size_t count, std::uint64_t seed,
                                                           long den = 97) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> len(1, den);
  std::vector<PiecewiseTranslation> out;
  while (out.size() < count) {
    ITM3 m;
    for (auto& l : m.lambda) l = rat(len(rng), den);
    m.pi1 = (rng() & 1) ? std::array<int, 3>{2, 3, 1} : std::array<int, 3>{3, 2, 1};
    const Scalar mid = m.lambda[m.pi1[0] == 2 ? 0 : 1];
    const Scalar room = m.length() - mid;
    std::uniform_int_distribution<long> tpick(0, 4 * den);
    m.t = room * rat(tpick(rng), 4 * den);
    try {
      m.validate();
      const PiecewiseTranslation t = m.to_piecewise();
      if (t.branch_count() != 3 || t.has_extremal_gap() || t.overlaps().empty()) continue;
      if (singularity_in_gap(t)) continue;
      (void)split(t);
      out.push_back(t);
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

}  // namespace dblrot::testing
