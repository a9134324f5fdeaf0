#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dblrot/double_rotation.hpp"
#include "dblrot/induction.hpp"

namespace dblrot {

/// Runs f(i) for i in [0, n) on `threads` workers. Each index is handled by
/// exactly one call; results must be written to per-index slots.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

enum class Outcome { Finite, Tie, RotationDegenerate, Survivor, Gap3Error, Error };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Finite: return "finite";
    case Outcome::Tie: return "tie";
    case Outcome::RotationDegenerate: return "rotation-degenerate";
    case Outcome::Survivor: return "survivor";
    case Outcome::Gap3Error: return "gap3-error";
    case Outcome::Error: return "error";
  }
  return "?";
}

struct ClassifyConfig {
  int depth = 200;
  Budgets budgets;
  /// Also run attractor_classify on the double rotation and compare.
  bool cross_check = false;
  int reduction_cap = 64;
};

struct SurvivorRecord {
  DoubleRotation params;
  Outcome outcome = Outcome::Error;
  /// Continue steps of the R-induction before the outcome was decided.
  int steps = 0;
  /// The induction came back to a projectively equal state.
  bool periodic = false;
  std::string detail;
  std::optional<ClassificationReport::Status> attractor;
  /// Only meaningful with cross_check: the two classifiers disagree.
  bool contradiction = false;

  /// Not ruled out within d steps. Errors are kept, so survivor counts are
  /// an upper bound.
  bool survives(int d) const {
    return steps >= d || outcome == Outcome::Gap3Error || outcome == Outcome::Error;
  }
};

/// Settles a 3-branch map without extremal gaps, or runs the R-induction on
/// it until the depth in `r.steps` reaches cfg.depth.
///
/// The induction stops when the gap cell wins at an end of the words. That
/// leaves an extremal image gap; trimming it is a first return, so the
/// trimmed map is classified again and the step count carries on. Only a
/// trimmed map that is a rotation, an exchange, or has a singularity in its
/// gap is declared finite.
inline void classify_map(PiecewiseTranslation m, const ClassifyConfig& cfg, SurvivorRecord& r) {
  for (int restarts = 0;; ++restarts) {
    const std::string after = restarts ? " after " + std::to_string(restarts) + " trims" : "";
    if (m.branch_count() <= 2) {
      r.outcome = Outcome::Finite;
      r.detail = "two branches" + after;
      return;
    }
    if (m.is_bijection()) {
      r.outcome = Outcome::Finite;
      r.detail = "interval exchange" + after;
      return;
    }
    if (singularity_in_gap(m)) {
      // The map then reduces to a rotation on a subinterval; the
      // reduction is attempted only as a bounded consistency check.
      r.outcome = Outcome::Finite;
      r.detail = "singularity in gap" + after;
      try {
        reduce_if_singularity_in_gap(m, cfg.reduction_cap);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ReductionFailed) throw;
        r.detail += "; reduction not completed within budget";
      }
      return;
    }
    const DepthReport dr = induction_depth(split(m), cfg.depth - r.steps);
    r.steps += dr.depth;
    if (dr.period) {
      r.outcome = Outcome::Survivor;
      r.periodic = true;
      r.steps = cfg.depth;
      r.detail = "period " + std::to_string(*dr.period) + after;
      return;
    }
    if (!dr.stop) {
      r.outcome = Outcome::Survivor;
      r.detail = after.empty() ? "" : after.substr(1);
      return;
    }
    const PiecewiseTranslation stopped = perm_to_piecewise(dr.last);
    if (!stopped.has_extremal_gap() || restarts >= cfg.depth + 16) {
      r.outcome = *dr.stop == StepKind::StopRotation ? Outcome::Finite : Outcome::Tie;
      r.detail = (*dr.stop == StepKind::StopRotation ? "gap wins" : "equal rightmost lengths") + after;
      return;
    }
    const PiecewiseTranslation t = trim_extremal_gaps(stopped, cfg.budgets.transit_cap);
    m = t.translated(-t.support().lo);
  }
}

/// dr_to_itm3, then classify_map. Library errors end up in the record.
inline SurvivorRecord classify_one(const DoubleRotation& d, const ClassifyConfig& cfg) {
  SurvivorRecord r;
  r.params = d;
  try {
    d.validate();
    if (d.is_rotation()) {
      r.outcome = Outcome::RotationDegenerate;
      r.detail = "rotation";
    } else {
      classify_map(dr_to_itm3(d, cfg.budgets.transit_cap).itm.to_piecewise(), cfg, r);
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::DegenerateRotation:
        r.outcome = Outcome::RotationDegenerate;
        break;
      case ErrorKind::NoOverlap:
        r.outcome = Outcome::Finite;
        break;
      case ErrorKind::NonGeneric:
      case ErrorKind::TieDegenerate:
        r.outcome = Outcome::Tie;
        break;
      case ErrorKind::GapPositionUnsupported:
        r.outcome = Outcome::Gap3Error;
        break;
      default:
        r.outcome = Outcome::Error;
    }
    r.detail = e.what();
  }
  if (cfg.cross_check && d.alpha >= 0 && d.alpha < 1 && d.beta >= 0 && d.beta < 1 && d.c >= 0 &&
      d.c <= 1) {
    const ClassificationReport a =
        attractor_classify(dr_to_piecewise(d), cfg.budgets.max_steps, cfg.budgets.max_pieces);
    r.attractor = a.status;
    // An infinite-type certificate (a period) cannot coexist with a
    // stabilized image sequence.
    r.contradiction = r.periodic && a.finite();
  }
  return r;
}

inline std::string csv_field(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Sweep

struct SweepConfig {
  std::size_t sample_count = 1000;
  int depth = 200;
  std::uint64_t rng_seed = 1;
  int dyadic_precision = 53;
  Budgets budgets;
  unsigned threads = 0;
  std::vector<int> checkpoints{10, 50, 200};

  void validate() const {
    if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be nonnegative");
    if (dyadic_precision < 1 || dyadic_precision > 62) {
      throw Error(ErrorKind::InvalidArgument, "precision must lie in 1..62");
    }
  }

  /// Checkpoints not exceeding depth, plus depth itself, ascending.
  std::vector<int> checkpoint_depths() const {
    std::vector<int> out;
    for (int c : checkpoints) {
      if (c <= depth) out.push_back(c);
    }
    out.push_back(depth);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// The i-th triple of a seeded stream: three draws p / 2^precision.
inline std::vector<DoubleRotation> sample_parameters(const SweepConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<DoubleRotation> out;
  out.reserve(cfg.sample_count);
  const int shift = 64 - cfg.dyadic_precision;
  for (std::size_t i = 0; i < cfg.sample_count; ++i) {
    const std::uint64_t a = rng() >> shift, b = rng() >> shift, c = rng() >> shift;
    out.push_back(DoubleRotation{dyadic(a, cfg.dyadic_precision), dyadic(b, cfg.dyadic_precision),
                                 dyadic(c, cfg.dyadic_precision)});
  }
  return out;
}

struct SweepResult {
  std::vector<SurvivorRecord> records;
  std::vector<std::pair<int, std::size_t>> survivors;  // (depth, count)

  double fraction(std::size_t k) const {
    return records.empty() ? 0.0
                           : static_cast<double>(survivors[k].second) /
                                 static_cast<double>(records.size());
  }
};

inline SweepResult run_sweep(const SweepConfig& cfg) {
  const auto params = sample_parameters(cfg);
  SweepResult res;
  res.records.resize(params.size());
  ClassifyConfig cc{cfg.depth, cfg.budgets};
  parallel_for(params.size(), cfg.threads,
               [&](std::size_t i) { res.records[i] = classify_one(params[i], cc); });
  for (int d : cfg.checkpoint_depths()) {
    const auto n = static_cast<std::size_t>(
        std::count_if(res.records.begin(), res.records.end(),
                      [d](const SurvivorRecord& r) { return r.survives(d); }));
    res.survivors.emplace_back(d, n);
  }
  return res;
}

inline std::string format_fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const SweepResult& res) {
  os << "# dblrot sweep v1\n";
  os << "# samples=" << cfg.sample_count << " depth=" << cfg.depth << " seed=" << cfg.rng_seed
     << " precision=" << cfg.dyadic_precision << '\n';
  os << "index,alpha,beta,c,outcome,steps,periodic,detail\n";
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const SurvivorRecord& r = res.records[i];
    os << i << ',' << to_string(r.params.alpha) << ',' << to_string(r.params.beta) << ','
       << to_string(r.params.c) << ',' << to_string(r.outcome) << ',' << r.steps << ','
       << (r.periodic ? 1 : 0) << ',' << csv_field(r.detail) << '\n';
  }
  for (std::size_t k = 0; k < res.survivors.size(); ++k) {
    os << "# survivor_fraction depth=" << res.survivors[k].first
       << " survivors=" << res.survivors[k].second << " samples=" << res.records.size()
       << " fraction=" << format_fixed(res.fraction(k)) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Probe grid shared by boxdim and render

/// Values in [1, 2^29) from splitmix64.
inline std::uint64_t jitter_hash(std::uint64_t m) {
  std::uint64_t z = m + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return (z >> 35) | 1;
}

/// Grid coordinate m / 2^level nudged by a tiny odd dyadic so probes avoid
/// the coincidences that rational grid points hit. The same nudge is used on
/// every axis, so equal indices give equal coordinates.
inline Scalar grid_point(std::uint64_t m, int level) {
  const std::uint64_t pos = (m << (53 - level)) + jitter_hash(m);
  return dyadic(pos & ((std::uint64_t{1} << 53) - 1), 53);
}

struct BoxDimConfig {
  std::vector<int> resolutions{4, 5, 6, 7};
  int depth = 200;
  Budgets budgets;
  unsigned threads = 0;

  void validate() const {
    if (resolutions.empty()) throw Error(ErrorKind::InvalidArgument, "no resolutions");
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      if (resolutions[i] < 2 || resolutions[i] > 20) {
        throw Error(ErrorKind::InvalidArgument, "each k must lie in 2..20");
      }
      if (i > 0 && resolutions[i] <= resolutions[i - 1]) {
        throw Error(ErrorKind::InvalidArgument, "resolutions must be ascending");
      }
    }
    if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be nonnegative");
  }
};

struct BoxDimResult {
  std::vector<std::pair<int, std::uint64_t>> counts;  // (k, N(k))
  double slope = 0;
  std::size_t probes = 0;
};

/// Least-squares slope of log2 N(k) against k.
inline double box_slope(const std::vector<std::pair<int, std::uint64_t>>& counts) {
  const double n = static_cast<double>(counts.size());
  if (counts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, N] : counts) {
    const double x = k, y = N ? std::log2(static_cast<double>(N)) : 0.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Box counts of the depth-D survivor set. All probes live on the grid of
/// level K = kmax + 1: corners of level-kmax boxes are the points with even
/// indices, their centers the points with all indices odd, and every probe
/// of a coarser level is one of those corners.
inline BoxDimResult run_boxdim(const BoxDimConfig& cfg) {
  cfg.validate();
  const int kmax = cfg.resolutions.back();
  const int K = kmax + 1;
  const std::uint64_t side = (std::uint64_t{1} << kmax) + 1;  // corners per axis
  const std::uint64_t cells = std::uint64_t{1} << kmax;       // centers per axis
  const std::uint64_t n_corner = side * side * side;
  const std::uint64_t n_center = cells * cells * cells;
  std::vector<std::uint8_t> alive(n_corner + n_center, 1);
  BoxDimResult res;
  res.probes = alive.size();
  if (cfg.depth > 0) {
    ClassifyConfig cc{cfg.depth, cfg.budgets};
    parallel_for(alive.size(), cfg.threads, [&](std::size_t i) {
      std::uint64_t a, b, c;
      if (i < n_corner) {
        a = 2 * (i / (side * side));
        b = 2 * (i / side % side);
        c = 2 * (i % side);
      } else {
        const std::uint64_t j = i - n_corner;
        a = 2 * (j / (cells * cells)) + 1;
        b = 2 * (j / cells % cells) + 1;
        c = 2 * (j % cells) + 1;
      }
      const DoubleRotation d{grid_point(a, K), grid_point(b, K), grid_point(c, K)};
      alive[i] = classify_one(d, cc).survives(cfg.depth) ? 1 : 0;
    });
  }
  // Index of level-K point (a, b, c) with all even or all odd coordinates.
  auto probe = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) -> bool {
    if (a % 2 == 0) return alive[(a / 2) * side * side + (b / 2) * side + c / 2];
    return alive[n_corner + (a / 2) * cells * cells + (b / 2) * cells + c / 2];
  };
  for (int k : cfg.resolutions) {
    const std::uint64_t n = std::uint64_t{1} << k;
    const std::uint64_t step = std::uint64_t{1} << (K - k);
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < n; ++j) {
        for (std::uint64_t l = 0; l < n; ++l) {
          bool any = probe(i * step + step / 2, j * step + step / 2, l * step + step / 2);
          for (int q = 0; q < 8 && !any; ++q) {
            any = probe((i + (q & 1)) * step, (j + ((q >> 1) & 1)) * step,
                        (l + ((q >> 2) & 1)) * step);
          }
          count += any;
        }
      }
    }
    res.counts.emplace_back(k, count);
  }
  res.slope = box_slope(res.counts);
  return res;
}

inline void write_boxdim_csv(std::ostream& os, const BoxDimConfig& cfg, const BoxDimResult& res) {
  os << "# dblrot boxdim v1\n";
  os << "# depth=" << cfg.depth << " probes=" << res.probes
     << " (upper-bound proxy: boxes meeting the depth-D survivor superset)\n";
  os << "k,boxes,survivors,log2_survivors\n";
  for (const auto& [k, N] : res.counts) {
    os << k << ',' << (std::uint64_t{1} << (3 * k)) << ',' << N << ','
       << format_fixed(N ? std::log2(static_cast<double>(N)) : 0.0) << '\n';
  }
  os << "# slope=" << format_fixed(res.slope) << '\n';
}

// ---------------------------------------------------------------------------
// Render

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};

/// Pixel shade per outcome. Finite outcomes run from 254 (decided at once)
/// down to 128 (decided at the depth limit).
inline std::uint8_t shade(const SurvivorRecord& r, int depth) {
  switch (r.outcome) {
    case Outcome::Survivor: return 0;
    case Outcome::Gap3Error:
    case Outcome::Error: return 64;
    case Outcome::Tie: return 96;
    case Outcome::RotationDegenerate: return 255;
    case Outcome::Finite: {
      const double t = std::log2(1.0 + r.steps) / std::log2(2.0 + std::max(depth, 0));
      return static_cast<std::uint8_t>(254 - static_cast<int>(std::lround(126 * std::min(t, 1.0))));
    }
  }
  return 64;
}

/// (alpha, beta) over a resolution x resolution grid of pixel centers at fixed
/// c. Alpha grows to the right, beta grows upward.
inline Raster render_slice(const Scalar& c, int resolution, int depth, unsigned threads = 0,
                           const Budgets& budgets = {}) {
  if (!(0 < c && c < 1)) throw Error(ErrorKind::InvalidArgument, "c must lie in (0, 1)");
  if (resolution < 1 || resolution > 1 << 14) {
    throw Error(ErrorKind::InvalidArgument, "resolution must lie in 1..16384");
  }
  // Pixel i covers [i/R, (i+1)/R); its center is placed on the 2^20 grid.
  auto coord = [resolution](int i) {
    const std::uint64_t m = ((2 * static_cast<std::uint64_t>(i) + 1) << 20) /
                            (2 * static_cast<std::uint64_t>(resolution));
    return grid_point(m, 20);
  };
  Raster r{resolution, resolution, std::vector<std::uint8_t>(
                                       static_cast<std::size_t>(resolution) * resolution)};
  ClassifyConfig cc{depth, budgets};
  parallel_for(r.pixels.size(), threads, [&](std::size_t p) {
    const int row = static_cast<int>(p / resolution), col = static_cast<int>(p % resolution);
    const DoubleRotation d{coord(col), coord(resolution - 1 - row), c};
    r.pixels[p] = shade(classify_one(d, cc), depth);
  });
  return r;
}

/// Binary PGM.
inline void write_pgm(std::ostream& os, const Raster& r) {
  os << "P5 " << r.width << ' ' << r.height << " 255\n";
  os.write(reinterpret_cast<const char*>(r.pixels.data()),
           static_cast<std::streamsize>(r.pixels.size()));
}

}  // namespace dblrot
