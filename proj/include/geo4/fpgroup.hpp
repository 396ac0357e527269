#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geo4/errors.hpp"
#include "geo4/lexer.hpp"
#include "geo4/matrix.hpp"

namespace geo4 {

/// Letters are +-(i+1) for generator index i.
using Word = std::vector<int>;

inline Word inverse(const Word &w) {
  Word r(w.rbegin(), w.rend());
  for (auto &l : r)
    l = -l;
  return r;
}

inline Word free_reduce(const Word &w) {
  Word r;
  r.reserve(w.size());
  for (int l : w) {
    if (!r.empty() && r.back() == -l)
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

inline Word concat(Word a, const Word &b) {
  a.insert(a.end(), b.begin(), b.end());
  return free_reduce(a);
}

inline Word power(const Word &w, std::int64_t n) {
  Word base = n < 0 ? inverse(w) : w;
  Word r;
  for (std::int64_t i = 0; i < std::llabs(n); ++i)
    r.insert(r.end(), base.begin(), base.end());
  return free_reduce(r);
}

/// [u,v] = u v u^-1 v^-1
inline Word commutator(const Word &u, const Word &v) {
  return concat(concat(u, v), concat(inverse(u), inverse(v)));
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(i),
              w.begin() + static_cast<std::ptrdiff_t>(j));
}

/// Least rotation of the cyclic reduction of w or of its inverse.
inline Word canonical_relator(const Word &w) {
  Word best;
  bool have = false;
  for (const Word &base : {cyclic_reduce(w), cyclic_reduce(inverse(w))}) {
    for (std::size_t s = 0; s < std::max<std::size_t>(base.size(), 1); ++s) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
      rot.insert(rot.end(), base.begin(),
                 base.begin() + static_cast<std::ptrdiff_t>(s));
      if (!have || rot < best) {
        best = rot;
        have = true;
      }
    }
  }
  return best;
}

/// Replaces every occurrence of generator `gen` (0-based) by `image`.
inline Word substitute(const Word &w, int gen, const Word &image) {
  Word r;
  Word inv = inverse(image);
  for (int l : w) {
    if (std::abs(l) - 1 == gen) {
      const Word &piece = l > 0 ? image : inv;
      r.insert(r.end(), piece.begin(), piece.end());
    } else {
      r.push_back(l);
    }
  }
  return free_reduce(r);
}

struct FpGroup {
  std::vector<std::string> gens;
  std::vector<Word> rels;

  [[nodiscard]] int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i] == name)
        return static_cast<int>(i);
    return -1;
  }
  [[nodiscard]] Word gen(std::string_view name) const {
    int i = index_of(name);
    if (i < 0)
      throw InvalidWord("unknown generator '" + std::string(name) + "'");
    return Word{i + 1};
  }
  [[nodiscard]] bool valid(const Word &w) const {
    return std::all_of(w.begin(), w.end(), [&](int l) {
      return l != 0 && std::abs(l) <= static_cast<int>(gens.size());
    });
  }
  void require_valid(const Word &w) const {
    if (!valid(w))
      throw InvalidWord("word references undeclared generator");
  }
  void add_relator(const Word &w) {
    require_valid(w);
    rels.push_back(free_reduce(w));
  }
};

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline Word parse_word_expr(Cursor &cur, const std::vector<std::string> &gens);

inline Word parse_word_atom(Cursor &cur, const std::vector<std::string> &gens) {
  Word w;
  if (cur.accept('[')) {
    Word u = parse_word_expr(cur, gens);
    cur.expect(',');
    Word v = parse_word_expr(cur, gens);
    cur.expect(']');
    w = commutator(u, v);
  } else if (cur.accept('(')) {
    w = parse_word_expr(cur, gens);
    cur.expect(')');
  } else if (cur.peek() == '1') {
    cur.integer();
  } else {
    int line = cur.line(), col = cur.column();
    std::string name = cur.ident();
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end())
      throw ParseError("unknown generator '" + name + "'", line, col);
    w = Word{static_cast<int>(it - gens.begin()) + 1};
  }
  if (cur.accept('^'))
    w = power(w, cur.integer());
  return w;
}

inline bool word_continues(Cursor &cur) {
  char c = cur.peek();
  return c == '[' || c == '(' || c == '*' || c == '1' ||
         Cursor::is_ident_start(c);
}

inline Word parse_word_expr(Cursor &cur, const std::vector<std::string> &gens) {
  Word w = parse_word_atom(cur, gens);
  while (word_continues(cur)) {
    cur.accept('*');
    w = concat(w, parse_word_atom(cur, gens));
  }
  return w;
}

/// A relation `u` or `u = v` (read as u v^-1).
inline Word parse_relation(Cursor &cur, const std::vector<std::string> &gens) {
  Word w = parse_word_expr(cur, gens);
  if (cur.accept('='))
    w = concat(w, inverse(parse_word_expr(cur, gens)));
  return w;
}

} // namespace detail

/// Word syntax: generators, `g^k`, `[u,v]`, `(w)^k`, `1`, juxtaposition or
/// `*`.
inline Word parse_word(std::string_view text,
                       const std::vector<std::string> &gens) {
  Cursor cur(text);
  Word w = detail::parse_word_expr(cur, gens);
  if (!cur.eof())
    cur.fail("trailing input" + cur.found());
  return w;
}

/// `group{ gens: a1,b2; rels: [a1,b2], a1, b2^2 }`; relations may be
/// written `u = v`.
inline FpGroup parse_group(std::string_view text) {
  Cursor cur(text);
  FpGroup g;
  if (!cur.accept("group"))
    cur.fail("expected 'group'" + cur.found());
  cur.expect('{');
  if (!cur.accept("gens"))
    cur.fail("expected 'gens'" + cur.found());
  cur.expect(':');
  if (cur.at_ident()) {
    do {
      int line = cur.line(), col = cur.column();
      std::string name = cur.ident();
      if (g.index_of(name) >= 0)
        throw ParseError("duplicate generator '" + name + "'", line, col);
      g.gens.push_back(name);
    } while (cur.accept(','));
  }
  if (cur.accept(';')) {
    if (!cur.accept("rels"))
      cur.fail("expected 'rels'" + cur.found());
    cur.expect(':');
    if (cur.peek() != '}') {
      do {
        g.rels.push_back(detail::parse_relation(cur, g.gens));
      } while (cur.accept(','));
    }
  }
  cur.expect('}');
  if (!cur.eof())
    cur.fail("trailing input" + cur.found());
  return g;
}

inline std::string print_word(const Word &w,
                              const std::vector<std::string> &gens) {
  if (w.empty())
    return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i])
      ++j;
    auto run = static_cast<std::int64_t>(j - i);
    std::int64_t e = w[i] > 0 ? run : -run;
    if (!s.empty())
      s += " ";
    s += gens.at(static_cast<std::size_t>(std::abs(w[i]) - 1));
    if (e != 1)
      s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

inline std::string print_group(const FpGroup &g) {
  std::string s = "group{ gens: ";
  for (std::size_t i = 0; i < g.gens.size(); ++i)
    s += (i ? "," : "") + g.gens[i];
  s += "; rels: ";
  for (std::size_t i = 0; i < g.rels.size(); ++i)
    s += (i ? ", " : "") + print_word(g.rels[i], g.gens);
  return s + " }";
}

// ---------------------------------------------------------------------------
// Abelianization

inline IntMatrix relation_matrix(const FpGroup &g) {
  IntMatrix m(g.rels.size(), g.gens.size());
  for (std::size_t r = 0; r < g.rels.size(); ++r)
    for (int l : g.rels[r])
      m(r, static_cast<std::size_t>(std::abs(l) - 1)) += l > 0 ? 1 : -1;
  return m;
}

inline AbelianInvariants abelianization(const FpGroup &g) {
  return cokernel(relation_matrix(g));
}

// ---------------------------------------------------------------------------
// Coset enumeration (HLT with lookahead)

struct CosetResult {
  bool finite = false;
  std::int64_t index = 0;
  std::int64_t defined = 0; // total cosets ever defined
  /// Compacted table when finite: table[coset][2*gen + (inverse ? 1 : 0)].
  std::vector<std::vector<int>> table;

  /// Image of coset `c` under a word; requires a finite result.
  [[nodiscard]] int act(int c, const Word &w) const {
    for (int l : w)
      c = table.at(static_cast<std::size_t>(c))
              .at(static_cast<std::size_t>(2 * (std::abs(l) - 1) + (l < 0)));
    return c;
  }
};

inline constexpr std::int64_t kDefaultCosetCap = 100000;

namespace detail {

class CosetEnumerator {
public:
  CosetEnumerator(const FpGroup &g, const std::vector<Word> &sub,
                  std::int64_t cap)
      : ncols_(2 * static_cast<int>(g.gens.size())), cap_(cap) {
    for (const auto &r : g.rels) {
      auto w = cyclic_reduce(r);
      if (!w.empty())
        rels_.push_back(to_cols(w));
    }
    for (const auto &h : sub) {
      auto w = free_reduce(h);
      if (!w.empty())
        sub_.push_back(to_cols(w));
    }
  }

  CosetResult run() {
    CosetResult res;
    new_coset();
    for (const auto &w : sub_)
      while (!scan_and_fill(0, w))
        if (!lookahead())
          return exceeded();
    for (std::size_t c = 0; c < T_.size(); ++c) {
      for (const auto &r : rels_) {
        if (!alive(c))
          break;
        while (alive(c) && !scan_and_fill(static_cast<int>(c), r))
          if (!lookahead())
            return exceeded();
      }
      for (int x = 0; x < ncols_; ++x)
        while (alive(c) && T_[c][static_cast<std::size_t>(x)] < 0 &&
               !define(static_cast<int>(c), x))
          if (!lookahead())
            return exceeded();
    }
    res.finite = true;
    res.index = live_;
    res.defined = static_cast<std::int64_t>(T_.size());
    std::vector<int> map(T_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < T_.size(); ++c)
      if (alive(c))
        map[c] = next++;
    for (std::size_t c = 0; c < T_.size(); ++c) {
      if (!alive(c))
        continue;
      std::vector<int> row(static_cast<std::size_t>(ncols_));
      for (int x = 0; x < ncols_; ++x)
        row[static_cast<std::size_t>(x)] =
            map[static_cast<std::size_t>(rep(T_[c][static_cast<std::size_t>(x)]))];
      res.table.push_back(std::move(row));
    }
    return res;
  }

private:
  static std::vector<int> to_cols(const Word &w) {
    std::vector<int> c;
    for (int l : w)
      c.push_back(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0));
    return c;
  }

  CosetResult exceeded() const {
    CosetResult r;
    r.finite = false;
    r.defined = static_cast<std::int64_t>(T_.size());
    return r;
  }

  bool alive(std::size_t c) const { return p_[c] == static_cast<int>(c); }

  int new_coset() {
    int d = static_cast<int>(T_.size());
    T_.emplace_back(static_cast<std::size_t>(ncols_), -1);
    p_.push_back(d);
    ++live_;
    return d;
  }

  bool define(int c, int x) {
    if (live_ >= cap_ ||
        static_cast<std::int64_t>(T_.size()) >= 8 * cap_ + 1024)
      return false;
    int d = new_coset();
    set(c, x, d);
    return true;
  }

  void set(int c, int x, int d) {
    T_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = d;
    T_[static_cast<std::size_t>(d)][static_cast<std::size_t>(x ^ 1)] = c;
  }

  int &at(int c, int x) {
    return T_[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
  }

  int rep(int k) {
    int r = k;
    while (p_[static_cast<std::size_t>(r)] != r)
      r = p_[static_cast<std::size_t>(r)];
    while (p_[static_cast<std::size_t>(k)] != r) {
      int n = p_[static_cast<std::size_t>(k)];
      p_[static_cast<std::size_t>(k)] = r;
      k = n;
    }
    return r;
  }

  void merge(int k, int l) {
    k = rep(k);
    l = rep(l);
    if (k == l)
      return;
    if (k > l)
      std::swap(k, l);
    p_[static_cast<std::size_t>(l)] = k;
    --live_;
    queue_.push_back(l);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!queue_.empty()) {
      int e = queue_.front();
      queue_.pop_front();
      for (int x = 0; x < ncols_; ++x) {
        int f = at(e, x);
        if (f < 0)
          continue;
        at(f, x ^ 1) = -1;
        int e1 = rep(e), f1 = rep(f);
        if (at(e1, x) >= 0)
          merge(f1, at(e1, x));
        else if (at(f1, x ^ 1) >= 0)
          merge(e1, at(f1, x ^ 1));
        else
          set(e1, x, f1);
      }
    }
  }

  /// Returns false only when a needed definition hit the cap.
  bool scan_and_fill(int c, const std::vector<int> &w) {
    return scan(c, w, true);
  }

  bool scan(int c, const std::vector<int> &w, bool fill) {
    int f = c, b = c;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) >= 0)
        f = at(f, w[static_cast<std::size_t>(i++)]);
      if (i > j) {
        if (f != b)
          coincidence(f, b);
        return true;
      }
      while (j >= i && at(b, w[static_cast<std::size_t>(j)] ^ 1) >= 0)
        b = at(b, w[static_cast<std::size_t>(j--)] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        set(f, w[static_cast<std::size_t>(i)], b);
        return true;
      }
      if (!fill)
        return true;
      if (!define(f, w[static_cast<std::size_t>(i)]))
        return false;
    }
  }

  /// Deduction-only pass over every live coset; true if it freed room.
  bool lookahead() {
    std::int64_t before = live_;
    for (std::size_t c = 0; c < T_.size(); ++c) {
      if (c == 0)
        for (const auto &w : sub_)
          scan(0, w, false);
      for (const auto &r : rels_) {
        if (!alive(c))
          break;
        scan(static_cast<int>(c), r, false);
      }
    }
    return live_ < before && live_ < cap_;
  }

  int ncols_;
  std::int64_t cap_;
  std::vector<std::vector<int>> rels_;
  std::vector<std::vector<int>> sub_;
  std::vector<std::vector<int>> T_;
  std::vector<int> p_;
  std::deque<int> queue_;
  std::int64_t live_ = 0;
};

} // namespace detail

/// Index of the subgroup generated by `subgroup` in G. Exceeded (finite =
/// false) whenever more than `max_cosets` live cosets would be needed.
inline CosetResult coset_enumeration(const FpGroup &g,
                                     const std::vector<Word> &subgroup = {},
                                     std::int64_t max_cosets = kDefaultCosetCap) {
  if (max_cosets < 1)
    throw ParamOutOfRange("coset cap must be positive");
  if (g.gens.empty()) {
    CosetResult r;
    r.finite = true;
    r.index = 1;
    r.defined = 1;
    r.table.emplace_back();
    return r;
  }
  return detail::CosetEnumerator(g, subgroup, max_cosets).run();
}

/// True/false when decided; nullopt when G could not be enumerated.
inline std::optional<bool> is_trivial_in(const FpGroup &g, const Word &w,
                                         std::int64_t max_cosets = 20000) {
  if (free_reduce(w).empty())
    return true;
  for (const auto &r : g.rels)
    if (canonical_relator(r) == canonical_relator(w))
      return true;
  auto res = coset_enumeration(g, {}, max_cosets);
  if (!res.finite)
    return std::nullopt;
  // Regular representation: w is trivial iff it fixes the identity coset and
  // hence every coset.
  return res.act(0, free_reduce(w)) == 0;
}

// ---------------------------------------------------------------------------
// Tietze transformations

namespace detail {

inline void normalize_relators(FpGroup &g) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (const auto &r : g.rels) {
    Word c = cyclic_reduce(r);
    if (c.empty())
      continue;
    if (seen.insert(canonical_relator(c)).second)
      out.push_back(c);
  }
  g.rels = std::move(out);
}

inline void drop_generator(FpGroup &g, int gen) {
  g.gens.erase(g.gens.begin() + gen);
  for (auto &r : g.rels)
    for (auto &l : r) {
      int idx = std::abs(l) - 1;
      if (idx > gen)
        l = l > 0 ? l - 1 : l + 1;
    }
}

} // namespace detail

/// Free/cyclic reduction, duplicate-relator removal, and elimination of
/// generators occurring exactly once in some relator. Later generators are
/// eliminated first. `budget` bounds the number of eliminations.
inline FpGroup tietze_simplify(FpGroup g, int budget = 1000) {
  detail::normalize_relators(g);
  for (int step = 0; step < budget; ++step) {
    int best_rel = -1, best_gen = -1;
    std::size_t best_len = 0;
    for (std::size_t ri = 0; ri < g.rels.size(); ++ri) {
      const auto &r = g.rels[ri];
      std::map<int, int> count;
      for (int l : r)
        ++count[std::abs(l) - 1];
      for (auto it = count.rbegin(); it != count.rend(); ++it) {
        if (it->second != 1)
          continue;
        if (best_rel < 0 || r.size() < best_len ||
            (r.size() == best_len && it->first > best_gen)) {
          best_rel = static_cast<int>(ri);
          best_gen = it->first;
          best_len = r.size();
        }
        break;
      }
    }
    if (best_rel < 0)
      break;
    // Rotate so the relator reads g^e w, then g = w^-1 (e = 1) or w (e = -1).
    Word r = g.rels[static_cast<std::size_t>(best_rel)];
    auto pos = std::find_if(r.begin(), r.end(),
                            [&](int l) { return std::abs(l) - 1 == best_gen; });
    Word rot(pos, r.end());
    rot.insert(rot.end(), r.begin(), pos);
    int e = rot.front() > 0 ? 1 : -1;
    Word rest(rot.begin() + 1, rot.end());
    Word image = e > 0 ? inverse(rest) : rest;
    g.rels.erase(g.rels.begin() + best_rel);
    for (auto &other : g.rels)
      other = substitute(other, best_gen, image);
    detail::drop_generator(g, best_gen);
    detail::normalize_relators(g);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Surgery and amalgams

/// Adds the relator mu^p lambda^q.
inline FpGroup surgery_quotient(FpGroup g, const Word &mu, const Word &lambda,
                                std::int64_t p, std::int64_t q) {
  if (!g.valid(mu) || !g.valid(lambda))
    throw InvalidWord("surgery curve references undeclared generator");
  g.rels.push_back(concat(power(mu, p), power(lambda, q)));
  return g;
}

struct AmalgamEdge {
  std::string name;
  Word phi1; // image in G1
  Word phi2; // image in G2
};

struct AmalgamDescription {
  FpGroup g1;
  FpGroup g2;
  std::vector<AmalgamEdge> edges;
};

namespace detail {
inline Word shift(const Word &w, int by) {
  Word r = w;
  for (auto &l : r)
    l = l > 0 ? l + by : l - by;
  return r;
}
} // namespace detail

/// Seifert-Van Kampen assembly: G1 * G2 modulo phi1(h) = phi2(h). Colliding
/// generator names from G2 get a trailing prime.
inline FpGroup evaluate_amalgam(const AmalgamDescription &a) {
  for (const auto &e : a.edges) {
    a.g1.require_valid(e.phi1);
    a.g2.require_valid(e.phi2);
  }
  FpGroup g = a.g1;
  int off = static_cast<int>(a.g1.gens.size());
  for (auto name : a.g2.gens) {
    while (g.index_of(name) >= 0)
      name += "'";
    g.gens.push_back(name);
  }
  for (const auto &r : a.g2.rels)
    g.rels.push_back(detail::shift(r, off));
  for (const auto &e : a.edges)
    g.rels.push_back(concat(e.phi1, inverse(detail::shift(e.phi2, off))));
  return g;
}

/// If phi1(h) is trivial in G1, G1 *_H G2 = G1 *_H G2/N(phi2(h)) (and
/// symmetrically). Applied to a fixpoint; each used edge is dropped since it
/// becomes 1 = 1.
inline AmalgamDescription amalgam_simplify(AmalgamDescription a,
                                           std::int64_t max_cosets = 20000) {
  bool applied = false;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      const auto &e = a.edges[i];
      if (is_trivial_in(a.g1, e.phi1, max_cosets).value_or(false)) {
        if (!free_reduce(e.phi2).empty())
          a.g2.rels.push_back(free_reduce(e.phi2));
      } else if (is_trivial_in(a.g2, e.phi2, max_cosets).value_or(false)) {
        if (!free_reduce(e.phi1).empty())
          a.g1.rels.push_back(free_reduce(e.phi1));
      } else {
        continue;
      }
      a.edges.erase(a.edges.begin() + static_cast<std::ptrdiff_t>(i));
      applied = again = true;
      break;
    }
  }
  if (!applied)
    throw NoApplicableEdge("no edge generator is certified trivial on either "
                           "side");
  return a;
}

// ---------------------------------------------------------------------------
// Complements of Lagrangian tori in products of surfaces

/// Meridian and the two Lagrangian push-offs generating pi1 of a torus
/// neighborhood boundary.
struct TorusBoundary {
  std::string name;
  Word mu;
  Word m;
  Word ell;
};

struct BoundaryData {
  std::vector<TorusBoundary> tori;

  [[nodiscard]] const TorusBoundary &at(std::string_view name) const {
    for (const auto &t : tori)
      if (t.name == name)
        return t;
    throw InvalidWord("no torus named '" + std::string(name) + "'");
  }
};

struct ComplementPresentation {
  FpGroup group;
  BoundaryData boundary;
};

/// Normal generators and boundary words for F x G minus the tori T_i, L_i
/// (and J_1, J_2 when G is closed of genus two), F of genus k. G punctured
/// torus: generators a, b. G closed genus two: a1, b1, a2, b2 plus the
/// relators [b2, y_i].
inline ComplementPresentation product_complement_presentation(
    std::int64_t k, bool closed_second_factor) {
  if (k < 1)
    throw ParamOutOfRange("genus k must be positive");
  FpGroup g;
  for (std::int64_t i = 1; i <= k; ++i) {
    g.gens.push_back("x" + std::to_string(i));
    g.gens.push_back("y" + std::to_string(i));
  }
  if (closed_second_factor)
    g.gens.insert(g.gens.end(), {"a1", "b1", "a2", "b2"});
  else
    g.gens.insert(g.gens.end(), {"a", "b"});
  auto G = [&](const std::string &n) { return g.gen(n); };
  const std::string A = closed_second_factor ? "a1" : "a";
  const std::string B = closed_second_factor ? "b1" : "b";

  BoundaryData bd;
  for (std::int64_t i = 1; i <= k; ++i) {
    auto xi = G("x" + std::to_string(i)), yi = G("y" + std::to_string(i));
    auto s = std::to_string(i);
    bd.tori.push_back({"T" + s, commutator(inverse(G(B)), inverse(yi)), xi,
                       G(A)});
    bd.tori.push_back({"L" + s, commutator(inverse(xi), G(B)), yi,
                       concat(concat(G(B), G(A)), inverse(G(B)))});
  }
  if (closed_second_factor) {
    auto x1 = G("x1"), y1 = G("y1");
    bd.tori.push_back(
        {"J1", commutator(inverse(x1), inverse(G("b2"))), G("a2"), y1});
    bd.tori.push_back({"J2", commutator(inverse(G("a2")), x1), G("b2"),
                       concat(concat(x1, y1), inverse(x1))});
    for (std::int64_t i = 1; i <= k; ++i)
      g.rels.push_back(commutator(G("b2"), G("y" + std::to_string(i))));
  }
  return {g, bd};
}

} // namespace geo4
