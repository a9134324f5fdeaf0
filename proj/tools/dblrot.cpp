#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dblrot/dblrot.hpp"

using namespace dblrot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Params {
  std::string alpha, beta, c;

  void add(CLI::App* app, bool required = true) {
    auto* a = app->add_option("--alpha", alpha, "rotation on [0, c), p/q");
    auto* b = app->add_option("--beta", beta, "rotation on [c, 1), p/q");
    auto* cc = app->add_option("--c", c, "discontinuity, p/q");
    if (required) {
      a->required();
      b->required();
      cc->required();
    }
  }
  DoubleRotation get() const {
    DoubleRotation d{parse_scalar(alpha), parse_scalar(beta), parse_scalar(c)};
    d.validate();
    return d;
  }
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "not an integer list: '" + s + "'");
    }
  }
  return out;
}

void print_map(std::ostream& os, const PiecewiseTranslation& m) {
  os << "support " << to_string(m.support().lo) << ' ' << to_string(m.support().hi) << '\n';
  for (const auto& b : m.branches()) {
    os << "branch " << to_string(b.domain.lo) << ' ' << to_string(b.domain.hi)
       << " shift=" << to_string(b.shift) << '\n';
  }
}

ITMPermutation start_state(const Params& p, const std::string& perm_file, int transit_cap) {
  if (!perm_file.empty()) {
    std::ifstream in(perm_file);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + perm_file + "'");
    return parse_perm(in);
  }
  const PiecewiseTranslation m = dr_to_itm3(p.get(), transit_cap).itm.to_piecewise();
  if (auto rot = reduce_if_singularity_in_gap(m)) {
    throw Error(ErrorKind::SingularityInGap,
                "the map reduces to a rotation by " + to_string(rot->angle) +
                    " on [0, " + to_string(rot->map.support().hi) + ")");
  }
  return split(m);
}

int run(int argc, char** argv) {
  CLI::App app{"Double rotations: induction, graph verification and experiments"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // classify
  auto* classify = app.add_subcommand("classify", "classify one parameter triple");
  Params cl_p;
  cl_p.add(classify);
  int cl_depth = 200;
  bool cl_cross = false;
  classify->add_option("--depth", cl_depth, "R-induction depth")->check(CLI::NonNegativeNumber);
  classify->add_flag("--cross-check", cl_cross, "also run the attractor classifier");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "orbit of a point, or the attractor");
  Params or_p;
  or_p.add(orbit);
  std::string or_x;
  int or_steps = 16;
  bool or_attractor = false;
  orbit->add_option("--x", or_x, "starting point, p/q");
  orbit->add_option("--steps", or_steps, "number of iterates")->check(CLI::NonNegativeNumber);
  orbit->add_flag("--attractor", or_attractor, "iterate the image of [0, 1) instead");

  // induce
  auto* induce = app.add_subcommand("induce", "run the R- or Z-induction with a step log");
  Params in_p;
  in_p.add(induce, false);
  std::string in_mode = "r", in_perm;
  int in_depth = 20;
  induce->add_option("--mode", in_mode, "r or z")->check(CLI::IsMember({"r", "z"}));
  induce->add_option("--perm", in_perm, "ITM permutation file (R mode)");
  induce->add_option("--depth", in_depth, "steps")->check(CLI::NonNegativeNumber);

  // accel-check
  auto* accel = app.add_subcommand("accel-check", "compare one Z-step with a run of R-steps");
  Params ac_p;
  ac_p.add(accel);
  int ac_cap = 64;
  accel->add_option("--cap", ac_cap, "maximum number of R-steps")->check(CLI::PositiveNumber);

  // graph
  auto* graph = app.add_subcommand("graph", "enumerate the induction graph");
  std::string gr_format = "text";
  bool gr_pruned = false;
  graph->add_option("--format", gr_format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
  graph->add_flag("--pruned", gr_pruned, "export F (terminal edges removed) instead of G");
  bool gr_observed = false;
  graph->add_flag("--with-observed", gr_observed,
                  "also seed with the shapes split() produces for double rotations");

  // verify
  auto* verify = app.add_subcommand("verify", "check that F is strongly non-degenerating");
  bool ve_toy = false, ve_verbose = false;
  verify->add_flag("--toy", ve_toy, "verify the two-self-loop toy system instead");
  bool ve_observed = false;
  verify->add_flag("--with-observed", ve_observed,
                   "also seed with the shapes split() produces for double rotations");
  verify->add_flag("--verbose", ve_verbose, "list every (subset, vertex) escape check");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "random parameter sweep");
  SweepConfig sw;
  std::string sw_checkpoints = "10,50,200";
  sweep->add_option("--samples", sw.sample_count, "number of samples");
  sweep->add_option("--depth", sw.depth, "R-induction depth")->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", sw.rng_seed, "RNG seed");
  sweep->add_option("--precision", sw.dyadic_precision, "samples are p/2^precision")
      ->check(CLI::Range(1, 62));
  sweep->add_option("--checkpoints", sw_checkpoints, "comma-separated depths");

  // boxdim
  auto* boxdim = app.add_subcommand("boxdim", "box counts of the survivor set");
  BoxDimConfig bd;
  std::string bd_k = "4,5,6,7";
  boxdim->add_option("--k", bd_k, "comma-separated grid exponents, ascending");
  boxdim->add_option("--depth", bd.depth, "R-induction depth")->check(CLI::NonNegativeNumber);

  // render
  auto* render = app.add_subcommand("render", "PGM slice of parameter space at fixed c");
  std::string re_c;
  int re_res = 256, re_depth = 200;
  render->add_option("--c", re_c, "discontinuity, p/q")->required();
  render->add_option("--resolution", re_res, "pixels per side")->check(CLI::Range(1, 1 << 14));
  render->add_option("--depth", re_depth, "R-induction depth")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Sink sink(out_path);
  std::ostream& os = sink.os();

  if (*classify) {
    ClassifyConfig cfg;
    cfg.depth = cl_depth;
    cfg.cross_check = cl_cross;
    const DoubleRotation d = cl_p.get();
    const SurvivorRecord r = classify_one(d, cfg);
    os << "alpha=" << to_string(d.alpha) << " beta=" << to_string(d.beta)
       << " c=" << to_string(d.c) << '\n';
    os << "outcome=" << to_string(r.outcome) << '\n';
    os << "steps=" << r.steps << '\n';
    os << "periodic=" << (r.periodic ? 1 : 0) << '\n';
    if (!r.detail.empty()) os << "detail=" << r.detail << '\n';
    if (r.attractor) {
      os << "attractor="
         << (*r.attractor == ClassificationReport::Status::Finite ? "finite" : "undetermined")
         << '\n';
      os << "contradiction=" << (r.contradiction ? 1 : 0) << '\n';
      if (r.contradiction) return kExitFail;
    }
    return kExitOk;
  }

  if (*orbit) {
    const DoubleRotation d = or_p.get();
    if (or_attractor) {
      const Budgets b;
      const auto rep = attractor_classify(dr_to_piecewise(d), or_steps > 0 ? or_steps : 1,
                                          b.max_pieces);
      os << "status=" << (rep.finite() ? "finite" : "undetermined") << " n=" << rep.n << '\n';
      for (const auto& p : rep.set.pieces()) {
        os << "piece " << to_string(p.lo) << ' ' << to_string(p.hi) << '\n';
      }
      return kExitOk;
    }
    if (or_x.empty()) throw Error(ErrorKind::InvalidArgument, "--x is required without --attractor");
    Scalar x = parse_scalar(or_x);
    if (x < 0 || x >= 1) throw Error(ErrorKind::InvalidArgument, "--x must lie in [0, 1)");
    for (int i = 0; i <= or_steps; ++i) {
      os << i << ' ' << to_string(x) << '\n';
      x = d(x);
    }
    return kExitOk;
  }

  if (*induce) {
    if (in_mode == "r") {
      const ITMPermutation p = start_state(in_p, in_perm, Budgets{}.transit_cap);
      write_path_log(os, iterate(p, in_depth));
      return kExitOk;
    }
    PiecewiseTranslation m = dr_to_itm3(in_p.get()).itm.to_piecewise();
    os << "# dblrot z-path v1\n";
    print_map(os, m);
    for (int i = 1; i <= in_depth; ++i) {
      std::optional<ZOutcome> zo;
      try {
        zo = z_step(m);
      } catch (const Error& e) {
        os << "stop " << i << ' ' << to_string(e.kind()) << '\n';
        break;
      }
      const ZOutcome& z = *zo;
      os << "step " << i << " winner=" << (z.winner == ZWinner::Top ? "top" : "bottom")
         << " flipped=" << z.flipped << " base=" << to_string(z.base.lo) << ' '
         << to_string(z.base.hi) << '\n';
      m = z.map.translated(-z.map.support().lo);
      if (m.branch_count() != 3) {
        os << "stop " << i << " branches=" << m.branch_count() << '\n';
        break;
      }
      print_map(os, m);
    }
    return kExitOk;
  }

  if (*accel) {
    const PiecewiseTranslation m = dr_to_itm3(ac_p.get()).itm.to_piecewise();
    const AccelReport rep = check_acceleration(m, ac_cap);
    const char* status = rep.status == AccelStatus::Success   ? "success"
                         : rep.status == AccelStatus::BothTie ? "both-tie"
                                                              : "failure";
    os << "status=" << status << " n=" << rep.n << '\n';
    if (!rep.detail.empty()) os << "detail=" << rep.detail << '\n';
    return rep.ok() ? kExitOk : kExitFail;
  }

  if (*graph) {
    SimplicialSystem g = build_graph(gr_observed ? all_seeds() : standard_seeds());
    if (gr_pruned) g = prune(g);
    os << (gr_format == "dot" ? export_dot(g) : export_text(g));
    return kExitOk;
  }

  if (*verify) {
    const SimplicialSystem g = build_graph(ve_observed ? all_seeds() : standard_seeds());
    const SimplicialSystem f = ve_toy ? toy_two_loops() : prune(g);
    const VerdictReport rep = ve_toy ? verify_strongly_nondegenerating(f)
                                     : verify_strongly_nondegenerating(f, &g);
    os << "# dblrot verify v1\n";
    os << "graph " << (ve_toy ? "toy" : "F") << " vertices=" << f.vertices.size()
       << " edges=" << f.edges.size() << '\n';
    for (const auto& c : rep.condition1.letters) {
      os << "condition1 letter=" << letter_char(c.letter)
         << " admissible=" << (c.admissible_pass() ? "pass" : "fail")
         << " lose_core=" << c.lose_core.size() << " win_core=" << c.win_core.size()
         << " all_cycles=" << (c.cycle_pass() ? "pass" : "fail") << '\n';
    }
    std::size_t failed = 0;
    for (const auto& ec : rep.condition2) {
      if (!ec.pass()) ++failed;
      if (ve_verbose || !ec.pass()) {
        os << "condition2 L=" << mask_text(ec.subset) << " vertex=" << ec.vertex
           << " component=" << ec.component << " single_label=" << ec.single_label
           << " escapes=" << ec.escapes << '\n';
      }
    }
    os << "condition1 " << (rep.condition1.pass() ? "PASS" : "FAIL") << '\n';
    os << "condition2 " << (rep.condition2_pass() ? "PASS" : "FAIL") << " checks="
       << rep.condition2.size() << " failed=" << failed << '\n';
    os << "verdict " << to_string(rep.verdict) << '\n';
    return rep.verdict == Verdict::Pass ? kExitOk : kExitFail;
  }

  if (*sweep) {
    sw.threads = threads;
    sw.checkpoints = parse_int_list(sw_checkpoints);
    const SweepResult res = run_sweep(sw);
    write_sweep_csv(os, sw, res);
    return kExitOk;
  }

  if (*boxdim) {
    bd.threads = threads;
    bd.resolutions = parse_int_list(bd_k);
    const BoxDimResult res = run_boxdim(bd);
    write_boxdim_csv(os, bd, res);
    return kExitOk;
  }

  if (*render) {
    const Raster r = render_slice(parse_scalar(re_c), re_res, re_depth, threads);
    write_pgm(os, r);
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "dblrot: " << e.what() << '\n';
    const bool usage = e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::InvalidArgument;
    return usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "dblrot: " << e.what() << '\n';
    return kExitFail;
  }
}
