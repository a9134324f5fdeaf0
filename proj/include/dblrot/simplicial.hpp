#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dblrot/induction.hpp"

namespace dblrot {

using LetterMask = unsigned;  // bit i <-> letter i

inline LetterMask bit(Letter l) { return 1u << idx(l); }
inline int popcount(LetterMask m) { return __builtin_popcount(m); }

inline std::string mask_text(LetterMask m) {
  std::string s;
  for (int i = 0; i < kLetters; ++i) {
    if (m & (1u << i)) s += letter_char(letter_at(i));
  }
  return s.empty() ? "-" : s;
}

/// Where an edge goes when it does not reach another combinatorial state.
enum class Terminal { None, Rotation, Gap3, Unsupported };

inline const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::None: return "vertex";
    case Terminal::Rotation: return "rotation";
    case Terminal::Gap3: return "gap3";
    case Terminal::Unsupported: return "unsupported";
  }
  return "?";
}

using Mat4 = std::array<std::array<mpz_class, kLetters>, kLetters>;

inline Mat4 identity4() {
  Mat4 m;
  for (int i = 0; i < kLetters; ++i) {
    for (int j = 0; j < kLetters; ++j) m[i][j] = (i == j) ? 1 : 0;
  }
  return m;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < kLetters; ++i) {
    for (int j = 0; j < kLetters; ++j) {
      mpz_class s = 0;
      for (int k = 0; k < kLetters; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  }
  return c;
}

/// Fraction-free Gaussian elimination.
inline mpz_class determinant(Mat4 m) {
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < kLetters - 1; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < kLetters && m[r][k] == 0) ++r;
      if (r == kLetters) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < kLetters; ++i) {
      for (int j = k + 1; j < kLetters; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[kLetters - 1][kLetters - 1];
}

struct Vertex {
  std::string name;
  std::optional<Word0> w0;
  std::optional<Word1> w1;
  /// Both compared symbols carry the same letter; every length vector ties.
  bool tie_only = false;
  /// Letters of all outgoing edges in the unpruned graph.
  LetterMask full_labels = 0;
};

struct Edge {
  int from = 0;
  int to = -1;  // -1 for terminals
  Terminal terminal = Terminal::None;
  Letter label = Letter::A;  // the loser
  Letter winner = Letter::A;
  bool loser_is_gap = false;
  /// The target state was flipped to bring its gap to the right end.
  bool flipped = false;

  /// Id + E_{winner, label}: old lengths = M * new lengths.
  Mat4 matrix() const {
    Mat4 m = identity4();
    m[idx(winner)][idx(label)] += 1;
    return m;
  }
};

struct SimplicialSystem {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  bool pruned = false;

  std::vector<std::vector<int>> out_edges() const {
    std::vector<std::vector<int>> out(vertices.size());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) out[edges[e].from].push_back(e);
    return out;
  }

  std::size_t terminal_edge_count(Terminal t) const {
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [t](const Edge& e) { return e.terminal == t; }));
  }
};

/// Brings the gap into the last two positions by flipping when it is in the
/// first two. Returns nothing for a gap in the middle.
inline std::optional<std::pair<std::pair<Word0, Word1>, bool>> normalize_words(const Word0& w0,
                                                                                const Word1& w1) {
  int g = 0;
  for (int i = 0; i < kWord; ++i) {
    if (w1[i].gap) g = i;
  }
  if (g >= kWord - 2) return std::make_pair(std::make_pair(w0, w1), false);
  if (g == 2) return std::nullopt;
  Word0 f0;
  Word1 f1;
  for (int i = 0; i < kWord; ++i) {
    f0[i] = w0[kWord - 1 - i];
    f1[i] = w1[kWord - 1 - i];
  }
  return std::make_pair(std::make_pair(f0, f1), true);
}

/// Closure of the seeds under the two symbolic outcomes of the right step
/// (top wins, bottom wins). Vertices are numbered in discovery order.
inline SimplicialSystem build_graph(const std::vector<std::pair<Word0, Word1>>& seeds,
                                    std::size_t cap = 4096) {
  SimplicialSystem g;
  std::map<std::uint32_t, int> id;
  std::deque<int> todo;
  auto intern = [&](const Word0& w0, const Word1& w1) {
    const auto key = word_code(w0, w1);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    if (g.vertices.size() >= cap) {
      throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " vertices");
    }
    const int v = static_cast<int>(g.vertices.size());
    Vertex vx;
    vx.name = words_text(w0, w1);
    vx.w0 = w0;
    vx.w1 = w1;
    vx.tie_only = w0[kWord - 1] == w1[kWord - 1].letter;
    g.vertices.push_back(std::move(vx));
    id.emplace(key, v);
    todo.push_back(v);
    return v;
  };
  for (const auto& [w0, w1] : seeds) {
    auto n = normalize_words(w0, w1);
    if (!n) throw Error(ErrorKind::GapPositionUnsupported, "seed with gap at position 3");
    intern(n->first.first, n->first.second);
  }
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop_front();
    if (g.vertices[v].tie_only) continue;
    const Word0 w0 = *g.vertices[v].w0;
    const Word1 w1 = *g.vertices[v].w1;
    for (bool top_wins : {true, false}) {
      Edge e;
      e.from = v;
      e.winner = top_wins ? w0[kWord - 1] : w1[kWord - 1].letter;
      e.label = top_wins ? w1[kWord - 1].letter : w0[kWord - 1];
      e.loser_is_gap = top_wins && w1[kWord - 1].gap;
      try {
        const WordStep st = right_step_words(w0, w1, top_wins);
        if (st.kind == StepKind::StopRotation) {
          e.terminal = Terminal::Rotation;
        } else if (auto n = normalize_words(st.w0, st.w1)) {
          e.flipped = n->second;
          e.to = intern(n->first.first, n->first.second);
        } else {
          e.terminal = Terminal::Gap3;
        }
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::ShapeUnsupported) throw;
        e.terminal = Terminal::Unsupported;
      }
      g.vertices[v].full_labels |= bit(e.label);
      g.edges.push_back(e);
    }
  }
  return g;
}

inline std::vector<std::pair<Word0, Word1>> standard_seeds() {
  return {{parse_word0("A D B C D"), parse_word1("C D B D_ A")},
          {parse_word0("A B C B D"), parse_word1("C B D B_ A")}};
}

/// Start shapes that split() produces for double rotations and that are not
/// relabelings of any vertex reachable from standard_seeds().
inline std::vector<std::pair<Word0, Word1>> observed_seeds() {
  return {{parse_word0("A B C A D"), parse_word1("C A D A_ B")},
          {parse_word0("D A B C D"), parse_word1("C D A D_ B")}};
}

/// Standard and observed seeds together.
inline std::vector<std::pair<Word0, Word1>> all_seeds() {
  auto s = standard_seeds();
  for (auto& x : observed_seeds()) s.push_back(x);
  return s;
}

/// F: G without the terminal edges. Vertices and full label sets are kept.
inline SimplicialSystem prune(const SimplicialSystem& g) {
  SimplicialSystem f;
  f.vertices = g.vertices;
  f.pruned = true;
  for (const auto& e : g.edges) {
    if (e.terminal == Terminal::None) f.edges.push_back(e);
  }
  return f;
}

/// Per vertex, keep the outgoing edges labeled in L when there are any.
inline SimplicialSystem subgraph_GL(const SimplicialSystem& s, LetterMask L) {
  SimplicialSystem out;
  out.vertices = s.vertices;
  out.pruned = s.pruned;
  const auto outs = s.out_edges();
  for (std::size_t v = 0; v < outs.size(); ++v) {
    bool any = false;
    for (int e : outs[v]) any = any || (bit(s.edges[e].label) & L);
    for (int e : outs[v]) {
      if (!any || (bit(s.edges[e].label) & L)) out.edges.push_back(s.edges[e]);
    }
  }
  return out;
}

/// Strongly connected components (Tarjan). comp[v] is the component index;
/// `cyclic[c]` tells whether component c contains a cycle (size > 1 or a
/// self-loop).
struct Components {
  std::vector<int> comp;
  std::vector<bool> cyclic;
};

inline Components strongly_connected(std::size_t n, const std::vector<Edge>& edges,
                                     const std::function<bool(const Edge&)>& keep) {
  std::vector<std::vector<int>> adj(n);
  std::vector<bool> self(n, false);
  for (const auto& e : edges) {
    if (e.to < 0 || !keep(e)) continue;
    adj[e.from].push_back(e.to);
    if (e.to == e.from) self[e.from] = true;
  }
  Components out{std::vector<int>(n, -1), {}};
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on(n, false);
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      const int c = static_cast<int>(out.cyclic.size());
      int size = 0;
      bool loop = false;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        out.comp[w] = c;
        ++size;
        loop = loop || self[w];
      } while (w != v);
      out.cyclic.push_back(size > 1 || loop);
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(static_cast<int>(v));
  }
  return out;
}

/// Some cycle among the kept edges, as a list of edge indices.
inline std::vector<int> find_cycle(const SimplicialSystem& s,
                                   const std::function<bool(const Edge&)>& keep) {
  const std::size_t n = s.vertices.size();
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    if (s.edges[e].to >= 0 && keep(s.edges[e])) adj[s.edges[e].from].push_back(e);
  }
  std::vector<int> color(n, 0), via(n, -1);
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    for (int e : adj[v]) {
      const int w = s.edges[e].to;
      if (color[w] == 1) {
        cycle.push_back(e);
        for (int u = v; u != w; u = s.edges[via[u]].from) cycle.push_back(via[u]);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
      if (color[w] == 0) {
        via[w] = e;
        if (dfs(w)) return true;
      }
    }
    color[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0 && dfs(static_cast<int>(v))) return cycle;
  }
  return {};
}

/// Edges that can be used infinitely often by a path with positive lengths.
/// A letter that loses infinitely often must also win infinitely often
/// (otherwise its length is frozen and every loss costs the winner that
/// fixed amount), so inside a strongly connected piece we may drop edges
/// labeled by letters that never win there, and repeat.
inline std::vector<int> admissible_core(const SimplicialSystem& s,
                                        const std::function<bool(const Edge&)>& keep) {
  std::vector<int> live;
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    if (s.edges[e].to >= 0 && keep(s.edges[e])) live.push_back(e);
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Edge> sub;
    for (int e : live) sub.push_back(s.edges[e]);
    const Components cc =
        strongly_connected(s.vertices.size(), sub, [](const Edge&) { return true; });
    std::vector<LetterMask> winners(cc.cyclic.size(), 0);
    for (int e : live) {
      const Edge& ed = s.edges[e];
      if (cc.comp[ed.from] == cc.comp[ed.to]) winners[cc.comp[ed.from]] |= bit(ed.winner);
    }
    std::vector<int> next;
    for (int e : live) {
      const Edge& ed = s.edges[e];
      const int c = cc.comp[ed.from];
      if (c == cc.comp[ed.to] && (winners[c] & bit(ed.label))) next.push_back(e);
    }
    changed = next.size() != live.size();
    live = std::move(next);
  }
  return live;
}

struct LetterCheck {
  Letter letter = Letter::A;
  /// Plain cycle level: every cycle of the graph has x as a loser / winner.
  bool loses_on_every_cycle = true;
  bool wins_on_every_cycle = true;
  std::vector<int> lose_witness;  // a cycle on which the letter never loses
  std::vector<int> win_witness;   // a cycle on which the letter never wins
  /// Same questions restricted to edge sets a positive-length path can
  /// repeat forever (see admissible_core). Nonempty = counterexample room.
  std::vector<int> lose_core;
  std::vector<int> win_core;

  bool cycle_pass() const { return loses_on_every_cycle && wins_on_every_cycle; }
  bool admissible_pass() const { return lose_core.empty() && win_core.empty(); }
};

struct WinLoseReport {
  std::vector<LetterCheck> letters;
  /// Every cycle, realizable forever or not, sees each letter win and lose.
  bool cycle_pass() const {
    return std::all_of(letters.begin(), letters.end(),
                       [](const LetterCheck& c) { return c.cycle_pass(); });
  }
  /// Every edge set that a positive-length path can repeat forever sees each
  /// letter win and lose.
  bool pass() const {
    return std::all_of(letters.begin(), letters.end(),
                       [](const LetterCheck& c) { return c.admissible_pass(); });
  }
};

/// For every letter x: whether some cycle avoids x as a label (x never
/// loses) or as a winner, first over all cycles, then over admissible cores.
inline WinLoseReport check_every_letter_wins_loses(const SimplicialSystem& s) {
  WinLoseReport r;
  for (int i = 0; i < kLetters; ++i) {
    const Letter x = letter_at(i);
    LetterCheck c;
    c.letter = x;
    auto not_label = [x](const Edge& e) { return e.label != x; };
    auto not_winner = [x](const Edge& e) { return e.winner != x; };
    c.lose_witness = find_cycle(s, not_label);
    c.win_witness = find_cycle(s, not_winner);
    c.loses_on_every_cycle = c.lose_witness.empty();
    c.wins_on_every_cycle = c.win_witness.empty();
    c.lose_core = admissible_core(s, not_label);
    c.win_core = admissible_core(s, not_winner);
    r.letters.push_back(std::move(c));
  }
  return r;
}

/// All proper nonempty subsets of the alphabet, in increasing mask order.
inline std::vector<LetterMask> proper_subsets() {
  std::vector<LetterMask> out;
  for (LetterMask m = 1; m + 1 < (1u << kLetters); ++m) out.push_back(m);
  return out;
}

struct EscapeCheck {
  LetterMask subset = 0;
  int vertex = 0;
  int component = 0;
  bool single_label = false;  // |labels(v) ∩ L| <= 1
  bool escapes = false;
  bool pass() const { return single_label || escapes; }
};

enum class Verdict { Pass, Fail, FailStrong };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::FailStrong: return "FAIL-STRONG";
  }
  return "?";
}

struct VerdictReport {
  WinLoseReport condition1;
  std::vector<EscapeCheck> condition2;
  Verdict verdict = Verdict::Fail;

  bool condition2_pass() const {
    return std::all_of(condition2.begin(), condition2.end(),
                       [](const EscapeCheck& c) { return c.pass(); });
  }
};

/// Condition (1) by the win/lose check over admissible cores; condition (2)
/// by an SCC decomposition of G_L for each of the 14 subsets L. When the
/// unpruned graph is given, G_L and the escape paths use its edges, and an
/// edge into a terminal leaves every component. Without it only the edges of
/// `s` are used.
inline VerdictReport verify_strongly_nondegenerating(const SimplicialSystem& s,
                                                     const SimplicialSystem* full = nullptr) {
  VerdictReport rep;
  rep.condition1 = check_every_letter_wins_loses(s);
  const SimplicialSystem& g = full ? *full : s;
  if (g.vertices.size() != s.vertices.size()) {
    throw Error(ErrorKind::InvalidArgument, "full graph has a different vertex set");
  }
  const std::size_t n = s.vertices.size();
  for (LetterMask L : proper_subsets()) {
    const SimplicialSystem gl = subgraph_GL(g, L);
    const Components cc = strongly_connected(n, gl.edges, [](const Edge&) { return true; });
    const auto outs = gl.out_edges();
    for (std::size_t v = 0; v < n; ++v) {
      const int c = cc.comp[v];
      if (!cc.cyclic[c]) continue;
      EscapeCheck ec{L, static_cast<int>(v), c};
      ec.single_label = popcount(s.vertices[v].full_labels & L) <= 1;
      if (!ec.single_label) {
        std::vector<bool> seen(n, false);
        std::deque<int> q{static_cast<int>(v)};
        seen[v] = true;
        while (!q.empty() && !ec.escapes) {
          const int u = q.front();
          q.pop_front();
          for (int e : outs[u]) {
            const Edge& ed = gl.edges[e];
            if (!(bit(ed.label) & L)) continue;
            if (ed.to < 0 || cc.comp[ed.to] != c) {
              ec.escapes = true;
              break;
            }
            if (!seen[ed.to]) {
              seen[ed.to] = true;
              q.push_back(ed.to);
            }
          }
        }
      }
      rep.condition2.push_back(ec);
    }
  }
  if (!rep.condition2_pass()) {
    rep.verdict = Verdict::Fail;
  } else {
    rep.verdict = rep.condition1.pass() ? Verdict::Pass : Verdict::FailStrong;
  }
  return rep;
}

/// One vertex with two self-loops labeled A (won by B) and B (won by A).
inline SimplicialSystem toy_two_loops() {
  SimplicialSystem s;
  s.pruned = true;
  Vertex v;
  v.name = "toy";
  v.full_labels = bit(Letter::A) | bit(Letter::B);
  s.vertices.push_back(v);
  Edge a;
  a.from = a.to = 0;
  a.label = Letter::A;
  a.winner = Letter::B;
  Edge b = a;
  b.label = Letter::B;
  b.winner = Letter::A;
  s.edges = {a, b};
  return s;
}

// ---------------------------------------------------------------------------
// Win-lose dynamics

using LengthVec = std::array<Scalar, kLetters>;

struct WinLoseStep {
  int edge = -1;
  int target = -1;
  Terminal terminal = Terminal::None;
  LengthVec lambda;
};

/// Compared letters at a vertex with the gap at the right end.
inline std::pair<Letter, Letter> compared_letters(const Vertex& v) {
  return {(*v.w0)[kWord - 1], (*v.w1)[kWord - 1].letter};
}

/// T_e on the simplex: pick the edge whose label has the smaller length,
/// apply M_e^{-1} and renormalize.
inline WinLoseStep winlose_apply(const SimplicialSystem& s, int v, const LengthVec& lambda) {
  const Vertex& vx = s.vertices.at(v);
  if (!vx.w0) throw Error(ErrorKind::InvalidArgument, "vertex without words");
  Scalar sum = 0;
  for (const auto& x : lambda) {
    if (x <= 0) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
    sum += x;
  }
  if (sum != 1) throw Error(ErrorKind::InvalidArgument, "lambda must lie on the simplex");
  const auto [top, bot] = compared_letters(vx);
  if (lambda[idx(top)] == lambda[idx(bot)]) {
    throw Error(ErrorKind::TieOnCellBoundary, "compared coordinates are equal");
  }
  const Letter loser = lambda[idx(top)] < lambda[idx(bot)] ? top : bot;
  WinLoseStep out;
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    if (s.edges[e].from == v && s.edges[e].label == loser) out.edge = e;
  }
  if (out.edge < 0) throw Error(ErrorKind::InvalidArgument, "no edge for this cell (pruned?)");
  const Edge& ed = s.edges[out.edge];
  out.target = ed.to;
  out.terminal = ed.terminal;
  LengthVec nl = lambda;
  nl[idx(ed.winner)] -= nl[idx(ed.label)];
  Scalar total = 0;
  for (const auto& x : nl) {
    if (x <= 0) throw Error(ErrorKind::NegativeCoordinate, "M_e^{-1} lambda left the cone");
    total += x;
  }
  for (auto& x : nl) x /= total;
  out.lambda = nl;
  return out;
}

/// Ordered product M_{e1} M_{e2} ... of a composable edge sequence.
inline Mat4 path_matrix(const SimplicialSystem& s, const std::vector<int>& path) {
  Mat4 m = identity4();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Edge& e = s.edges.at(path[i]);
    if (i > 0 && s.edges[path[i - 1]].to != e.from) {
      throw Error(ErrorKind::NonComposable, "edge " + std::to_string(i) + " does not continue");
    }
    m = m * e.matrix();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Export

inline std::string export_dot(const SimplicialSystem& s) {
  std::ostringstream os;
  os << "// dblrot graph dot v1\n";
  os << "digraph " << (s.pruned ? "F" : "G") << " {\n";
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    std::string label = s.vertices[v].name;
    const auto slash = label.find(" / ");
    if (slash != std::string::npos) label.replace(slash, 3, "\\n");
    os << "  v" << v << " [label=\"" << label << "\"" << (s.vertices[v].tie_only ? ", style=dashed" : "")
       << "];\n";
  }
  int term = 0;
  for (const auto& e : s.edges) {
    std::string target;
    if (e.terminal == Terminal::None) {
      target = "v" + std::to_string(e.to);
    } else {
      target = "t" + std::to_string(term++);
      os << "  " << target << " [label=\"" << to_string(e.terminal)
         << "\", style=filled, fillcolor=gray80];\n";
    }
    os << "  v" << e.from << " -> " << target << " [label=\"" << letter_char(e.label)
       << (e.loser_is_gap ? "_" : "") << "/" << letter_char(e.winner) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string export_text(const SimplicialSystem& s) {
  std::ostringstream os;
  os << "# dblrot graph v1\n";
  os << "format-version 1\n";
  os << "graph " << (s.pruned ? "F" : "G") << '\n';
  os << "vertices " << s.vertices.size() << '\n';
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    os << "vertex " << v << " words=" << s.vertices[v].name << " labels=" << mask_text(s.vertices[v].full_labels)
       << " tie_only=" << s.vertices[v].tie_only << '\n';
  }
  os << "edges " << s.edges.size() << '\n';
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const Edge& e = s.edges[i];
    os << "edge " << i << " from=" << e.from << " to=";
    if (e.terminal == Terminal::None) {
      os << e.to;
    } else {
      os << to_string(e.terminal);
    }
    os << " label=" << letter_char(e.label) << " winner=" << letter_char(e.winner)
       << " loser_is_gap=" << e.loser_is_gap << " flipped=" << e.flipped << " matrix=";
    const Mat4 m = e.matrix();
    for (int r = 0; r < kLetters; ++r) {
      for (int c = 0; c < kLetters; ++c) os << (r || c ? "," : "") << m[r][c].get_str();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dblrot
