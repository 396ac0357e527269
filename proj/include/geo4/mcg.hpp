#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geo4/errors.hpp"
#include "geo4/lexer.hpp"
#include "geo4/matrix.hpp"

namespace geo4 {

using HVec = std::vector<std::int64_t>;

/// Homology class of a simple closed curve. Coordinates are (a_1..a_g,
/// b_1..b_g) with <a_i, b_i> = 1.
struct CurveData {
  HVec homology;
  int separating_type = 0; // 0 nonseparating, h >= 1 cuts off genus h
};

struct SymplecticMatrix {
  enum class Character { Symplectic, AntiSymplectic };
  IntMatrix m;
  Character character = Character::Symplectic;

  friend bool operator==(const SymplecticMatrix &x,
                         const SymplecticMatrix &y) {
    return x.m == y.m;
  }
};

inline IntMatrix standard_form(int g) {
  IntMatrix J(2 * static_cast<std::size_t>(g), 2 * static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    J(static_cast<std::size_t>(i), static_cast<std::size_t>(g + i)) = 1;
    J(static_cast<std::size_t>(g + i), static_cast<std::size_t>(i)) = -1;
  }
  return J;
}

inline std::int64_t pairing(const HVec &v, const HVec &w) {
  const std::size_t g = v.size() / 2;
  std::int64_t s = 0;
  for (std::size_t i = 0; i < g; ++i)
    s = checked::add(s, checked::sub(checked::mul(v[i], w[g + i]),
                                     checked::mul(v[g + i], w[i])));
  return s;
}

/// +1 if M^T J M = J, -1 if M^T J M = -J, 0 otherwise.
inline int symplectic_character(const IntMatrix &M) {
  int g = static_cast<int>(M.rows() / 2);
  IntMatrix J = standard_form(g);
  IntMatrix P = M.transpose() * J * M;
  if (P == J)
    return 1;
  if (P == -J)
    return -1;
  return 0;
}

struct SurfaceModel {
  int genus = 1;
  std::map<std::string, CurveData, std::less<>> curves;
  std::optional<IntMatrix> reflection;

  [[nodiscard]] const CurveData &curve(std::string_view name) const {
    auto it = curves.find(name);
    if (it == curves.end())
      throw UnknownCurve("no curve '" + std::string(name) + "' on genus " +
                         std::to_string(genus) + " surface");
    return it->second;
  }

  [[nodiscard]] IntMatrix J() const { return standard_form(genus); }

  void add_curve(const std::string &name, HVec v, int sep = 0) {
    if (v.size() != 2 * static_cast<std::size_t>(genus))
      throw ParamOutOfRange("homology vector length for '" + name + "'");
    bool zero = std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
    if (sep > 0 && !zero)
      throw ParamOutOfRange("separating curve '" + name +
                            "' with nonzero class");
    if (sep == 0) {
      std::int64_t d = 0;
      for (auto x : v)
        d = std::gcd(d, x);
      if (d != 1)
        throw ParamOutOfRange("nonseparating curve '" + name +
                              "' must have a primitive class");
    }
    curves[name] = CurveData{std::move(v), sep};
  }
};

namespace detail {
inline HVec basis(int g, int idx) {
  HVec v(2 * static_cast<std::size_t>(g), 0);
  v[static_cast<std::size_t>(idx)] = 1;
  return v;
}
inline HVec lin(const HVec &a, std::int64_t s, const HVec &b,
                std::int64_t t) {
  HVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = s * a[i] + t * b[i];
  return r;
}
} // namespace detail

/// Standard alphabet on Sigma_g: basis classes a1..ag, b1..bg; the chain
/// c1..c_{2g+1} with consecutive pairings -1 and c1 + c3 + ... + c_{2g+1} = 0;
/// for g >= 2 the lantern curves a, b, c, d, x, y, z on the sphere with four
/// holes bounded by a, b, c, d (a and c, b and d homologous; z separating),
/// and the reflection a_i -> -a_i, b_i -> b_i. For g = 1, a = a1, b = b1.
inline SurfaceModel standard_surface(int g) {
  if (g < 1)
    throw ParamOutOfRange("genus must be positive");
  SurfaceModel s;
  s.genus = g;
  auto A = [&](int i) { return detail::basis(g, i - 1); };
  auto B = [&](int i) { return detail::basis(g, g + i - 1); };
  for (int i = 1; i <= g; ++i) {
    s.add_curve("a" + std::to_string(i), A(i));
    s.add_curve("b" + std::to_string(i), B(i));
  }
  s.add_curve("c1", B(1));
  for (int i = 1; i <= g; ++i) {
    s.add_curve("c" + std::to_string(2 * i), A(i));
    if (i < g)
      s.add_curve("c" + std::to_string(2 * i + 1),
                  detail::lin(B(i + 1), 1, B(i), -1));
  }
  s.add_curve("c" + std::to_string(2 * g + 1), detail::lin(B(g), -1, B(g), 0));
  if (g == 1) {
    s.add_curve("a", A(1));
    s.add_curve("b", B(1));
  } else {
    HVec alpha = s.curve("c1").homology, beta = s.curve("c3").homology;
    s.add_curve("a", alpha);
    s.add_curve("b", beta);
    s.add_curve("c", alpha);
    s.add_curve("d", beta);
    s.add_curve("x", detail::lin(alpha, 1, beta, 1));
    s.add_curve("y", detail::lin(beta, 1, alpha, -1));
    s.add_curve("z", HVec(2 * static_cast<std::size_t>(g), 0), 1);
  }
  IntMatrix r = IntMatrix::identity(2 * static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i)
    r(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = -1;
  s.reflection = r;
  return s;
}

// ---------------------------------------------------------------------------
// Words

struct Letter;
using MappingClassWord = std::vector<Letter>;

/// A Dehn twist power, optionally conjugated (phi t phi^-1 with phi the
/// conjugator word) and optionally reflected: refl(X) = r X^-1 r^-1, the
/// positive twist about r(gamma) when X is the positive twist about gamma.
struct Letter {
  std::string curve;
  std::int64_t power = 1;
  MappingClassWord conjugator;
  bool reflected = false;

  friend bool operator==(const Letter &, const Letter &) = default;
};

inline Letter twist(std::string curve, std::int64_t power = 1) {
  return Letter{std::move(curve), power, {}, false};
}

inline MappingClassWord twists(std::initializer_list<const char *> names) {
  MappingClassWord w;
  for (auto n : names)
    w.push_back(twist(n));
  return w;
}

inline Letter inverse(const Letter &l) {
  Letter r = l;
  r.power = -r.power;
  return r;
}

inline Letter reflect(const Letter &l) {
  Letter r = l;
  r.reflected = !r.reflected;
  return r;
}

inline MappingClassWord inverse(const MappingClassWord &w) {
  MappingClassWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back(inverse(*it));
  return r;
}

inline MappingClassWord repeat(const MappingClassWord &w, std::int64_t n) {
  MappingClassWord base = n < 0 ? inverse(w) : w, r;
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i)
    r.insert(r.end(), base.begin(), base.end());
  return r;
}

inline MappingClassWord operator+(MappingClassWord a,
                                  const MappingClassWord &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// K L K^-1 for a single letter K.
inline Letter conjugate_by_letter(Letter l, const Letter &k) {
  // Inside a reflection the conjugator acts as r K r^-1 = refl(K^-1).
  Letter pre = l.reflected ? reflect(inverse(k)) : k;
  auto &c = l.conjugator;
  if (!c.empty() && c.front() == inverse(pre))
    c.erase(c.begin());
  else
    c.insert(c.begin(), pre);
  return l;
}

/// W L W^-1.
inline Letter conjugate(Letter l, const MappingClassWord &w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    l = conjugate_by_letter(std::move(l), *it);
  return l;
}

inline MappingClassWord conjugate(const MappingClassWord &word,
                                  const MappingClassWord &by) {
  MappingClassWord r;
  for (const auto &l : word)
    r.push_back(conjugate(l, by));
  return r;
}

inline bool is_positive(const MappingClassWord &w) {
  return std::all_of(w.begin(), w.end(),
                     [](const Letter &l) { return l.power == 1; });
}

// ---------------------------------------------------------------------------
// Evaluation

inline IntMatrix transvection_matrix(const HVec &v, std::int64_t power) {
  const std::size_t n = v.size();
  IntMatrix M = IntMatrix::identity(n);
  // x -> x + p <x, v> v ; <x, v> = sum_i x_i (Jv)_i
  HVec Jv(n, 0);
  const std::size_t g = n / 2;
  for (std::size_t i = 0; i < g; ++i) {
    Jv[i] = v[g + i];
    Jv[g + i] = -v[i];
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      M(r, c) = checked::add(M(r, c),
                             checked::mul(power, checked::mul(v[r], Jv[c])));
  return M;
}

inline SymplecticMatrix transvection(const SurfaceModel &s,
                                     std::string_view curve,
                                     std::int64_t power) {
  return {transvection_matrix(s.curve(curve).homology, power),
          SymplecticMatrix::Character::Symplectic};
}

/// Inverse of a symplectic matrix: -J M^T J.
inline IntMatrix symplectic_inverse(const IntMatrix &M) {
  int g = static_cast<int>(M.rows() / 2);
  IntMatrix J = standard_form(g);
  return -(J * M.transpose() * J);
}

inline IntMatrix evaluate_matrix(const SurfaceModel &s,
                                 const MappingClassWord &w);

inline IntMatrix evaluate_letter(const SurfaceModel &s, const Letter &l) {
  IntMatrix X =
      transvection_matrix(s.curve(l.curve).homology, l.reflected ? -l.power : l.power);
  if (!l.conjugator.empty()) {
    IntMatrix C = evaluate_matrix(s, l.conjugator);
    X = C * X * symplectic_inverse(C);
  }
  if (l.reflected) {
    if (!s.reflection)
      throw NoReflectionRegistered("reflected letter t[" + l.curve + "]");
    const IntMatrix &r = *s.reflection;
    X = r * X * r; // r is an involution
  }
  return X;
}

inline IntMatrix evaluate_matrix(const SurfaceModel &s,
                                 const MappingClassWord &w) {
  IntMatrix M = IntMatrix::identity(2 * static_cast<std::size_t>(s.genus));
  for (const auto &l : w)
    M = M * evaluate_letter(s, l);
  return M;
}

/// Image in Sp(2g, Z); letters multiply in word order.
inline SymplecticMatrix evaluate(const SurfaceModel &s,
                                 const MappingClassWord &w) {
  return {evaluate_matrix(s, w), SymplecticMatrix::Character::Symplectic};
}

/// Class of the vanishing cycle of a letter: phi(gamma) or r(phi(gamma)).
inline HVec letter_class(const SurfaceModel &s, const Letter &l) {
  HVec v = s.curve(l.curve).homology;
  if (!l.conjugator.empty())
    v = evaluate_matrix(s, l.conjugator) * v;
  if (l.reflected) {
    if (!s.reflection)
      throw NoReflectionRegistered("reflected letter t[" + l.curve + "]");
    v = *s.reflection * v;
  }
  return v;
}

inline HVec twist_image(const SurfaceModel &s, const MappingClassWord &w,
                        std::string_view curve) {
  return evaluate_matrix(s, w) * s.curve(curve).homology;
}

/// Searches the anti-symplectic coordinate involutions a_i -> e_i a_{p(i)},
/// b_i -> -e_i b_{p(i)} (p an involutive permutation) for one realizing every
/// pair (from, to) on homology, up to sign of each class.
inline SymplecticMatrix
reflection_matrix(const SurfaceModel &s,
                  const std::vector<std::pair<std::string, std::string>> &assignment) {
  if (assignment.empty())
    throw InconsistentAssignment("empty assignment does not determine r");
  const int g = s.genus;
  std::vector<int> perm(static_cast<std::size_t>(g));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool involutive = true;
    for (int i = 0; i < g; ++i)
      if (perm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] != i)
        involutive = false;
    if (!involutive)
      continue;
    for (std::uint32_t bits = 0; bits < (1u << g); ++bits) {
      IntMatrix r(2 * static_cast<std::size_t>(g), 2 * static_cast<std::size_t>(g));
      for (int i = 0; i < g; ++i) {
        std::int64_t e = (bits >> i) & 1u ? 1 : -1;
        auto pi = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
        r(pi, static_cast<std::size_t>(i)) = e;
        r(static_cast<std::size_t>(g) + pi, static_cast<std::size_t>(g + i)) = -e;
      }
      if (!(r * r == IntMatrix::identity(2 * static_cast<std::size_t>(g))))
        continue;
      bool ok = true;
      for (const auto &[from, to] : assignment) {
        HVec img = r * s.curve(from).homology;
        const HVec &want = s.curve(to).homology;
        HVec neg = want;
        for (auto &x : neg)
          x = -x;
        if (img != want && img != neg) {
          ok = false;
          break;
        }
      }
      if (ok)
        return {r, SymplecticMatrix::Character::AntiSymplectic};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw InconsistentAssignment("no coordinate anti-symplectic involution "
                               "realizes the assignment");
}

// ---------------------------------------------------------------------------
// Word operations

/// W1 followed by W2 reversed with every letter reflected: W1 (W2^-1)^r.
inline MappingClassWord reversed_double_word(const MappingClassWord &w1,
                                             const MappingClassWord &w2) {
  if (!is_positive(w1) || !is_positive(w2))
    throw NonPositiveInput("fiber-reversing double needs positive words");
  MappingClassWord out = w1;
  for (auto it = w2.rbegin(); it != w2.rend(); ++it)
    out.push_back(reflect(*it));
  return out;
}

enum class HurwitzDirection { Left, Right };

/// Right: (L1, L2) -> (L1 L2 L1^-1, L1). Left: (L1, L2) -> (L2, L2^-1 L1 L2).
/// `i` is the 1-based position of the first letter of the pair.
inline MappingClassWord hurwitz_move(MappingClassWord w, std::size_t i,
                                     HurwitzDirection dir) {
  if (i < 1 || i >= w.size())
    throw IndexOutOfRange("Hurwitz index " + std::to_string(i) +
                          " for word of length " + std::to_string(w.size()));
  Letter l1 = w[i - 1], l2 = w[i];
  if (dir == HurwitzDirection::Right) {
    w[i - 1] = conjugate_by_letter(l2, l1);
    w[i] = l1;
  } else {
    w[i - 1] = l2;
    w[i] = conjugate_by_letter(l1, inverse(l2));
  }
  return w;
}

/// t_a t_b t_c t_d -> t_x t_y t_z at 0-based position `at`.
inline MappingClassWord lantern_substitute(const MappingClassWord &w,
                                           std::size_t at) {
  static const char *pattern[] = {"a", "b", "c", "d"};
  if (at + 4 > w.size())
    throw PatternMismatch("no four letters at position " + std::to_string(at));
  for (std::size_t k = 0; k < 4; ++k) {
    const Letter &l = w[at + k];
    if (l.curve != pattern[k] || l.power != 1 || !l.conjugator.empty() ||
        l.reflected)
      throw PatternMismatch("expected t[a] t[b] t[c] t[d] at position " +
                            std::to_string(at));
  }
  MappingClassWord out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
  for (const char *n : {"x", "y", "z"})
    out.push_back(twist(n));
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(at + 4), w.end());
  return out;
}

/// Position of the first t_a t_b t_c t_d block, if any.
inline std::optional<std::size_t> find_lantern(const MappingClassWord &w) {
  for (std::size_t i = 0; i + 4 <= w.size(); ++i) {
    try {
      lantern_substitute(w, i);
      return i;
    } catch (const PatternMismatch &) {
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DSL: t[c1]  t[c3]^-1  conj(t[b], by=W)  refl(t[y])  (W)^k

namespace detail {

inline MappingClassWord parse_mcw(Cursor &cur);

inline MappingClassWord parse_mc_item(Cursor &cur) {
  MappingClassWord w;
  if (cur.accept('(')) {
    w = parse_mcw(cur);
    cur.expect(')');
  } else if (cur.accept("conj")) {
    cur.expect('(');
    MappingClassWord inner = parse_mcw(cur);
    cur.expect(',');
    if (!cur.accept("by"))
      cur.fail("expected 'by='" + cur.found());
    cur.expect('=');
    MappingClassWord by = parse_mcw(cur);
    cur.expect(')');
    w = conjugate(inner, by);
  } else if (cur.accept("refl")) {
    cur.expect('(');
    MappingClassWord inner = parse_mcw(cur);
    cur.expect(')');
    // refl of a product: r (L1..Ln)^-1 r^-1 = refl(Ln) ... refl(L1)
    for (auto it = inner.rbegin(); it != inner.rend(); ++it)
      w.push_back(reflect(*it));
  } else if (cur.accept("t")) {
    cur.expect('[');
    std::string name = cur.ident();
    cur.expect(']');
    w.push_back(twist(name));
  } else {
    cur.fail("expected t[..], conj(..), refl(..) or (..)" + cur.found());
  }
  if (cur.accept('^'))
    w = repeat(w, cur.integer());
  return w;
}

inline MappingClassWord parse_mcw(Cursor &cur) {
  MappingClassWord w;
  for (;;) {
    char c = cur.peek();
    if (c == '*') {
      cur.accept('*');
      continue;
    }
    if (c != '(' && !Cursor::is_ident_start(c))
      break;
    auto item = parse_mc_item(cur);
    w.insert(w.end(), item.begin(), item.end());
  }
  return w;
}

} // namespace detail

/// The empty word may be written `1` or left empty.
inline MappingClassWord parse_mc_word(std::string_view text) {
  Cursor cur(text);
  if (cur.peek() == '1') {
    cur.integer();
    if (!cur.eof())
      cur.fail("trailing input" + cur.found());
    return {};
  }
  auto w = detail::parse_mcw(cur);
  if (!cur.eof())
    cur.fail("trailing input" + cur.found());
  return w;
}

inline std::string print_mc_word(const MappingClassWord &w);

inline std::string print_letter(const Letter &l) {
  std::string s = "t[" + l.curve + "]";
  if (l.power != 1)
    s += "^" + std::to_string(l.power);
  if (!l.conjugator.empty())
    s = "conj(" + s + ", by=" + print_mc_word(l.conjugator) + ")";
  if (l.reflected)
    s = "refl(" + s + ")";
  return s;
}

inline std::string print_mc_word(const MappingClassWord &w) {
  if (w.empty())
    return "1";
  std::string s;
  for (const auto &l : w)
    s += (s.empty() ? "" : " ") + print_letter(l);
  return s;
}

} // namespace geo4
