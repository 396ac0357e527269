#pragma once

#include <array>
#include <charconv>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "geo4/fpgroup.hpp"
#include "geo4/invariants.hpp"

namespace geo4 {

/// [x^sx, y^sy] with sx, sy in {+1, -1}.
inline Word signed_commutator(const Word &x, const Word &y, int sx, int sy) {
  return commutator(power(x, sx), power(y, sy));
}

/// All 2^n sign vectors, in a fixed order.
inline std::vector<std::vector<int>> sign_vectors(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i)
      s[i] = (mask >> i) & 1 ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

/// pi1 of the telescoping pair before any surgery: Z^2 on a1, b2.
inline FpGroup telescoping_pair() {
  return parse_group("group{ gens: a1, b2; rels: [a1,b2] }");
}

/// Luttinger surgeries 1/q1 on T1 and 1/q2 on T2 of the telescoping pair. The
/// meridians are trivial in the complement, so each surgery adds lambda^q.
inline FpGroup telescoping_surgery(std::int64_t q1, std::int64_t q2) {
  auto g = telescoping_pair();
  g = surgery_quotient(g, {}, g.gen("a1"), 1, q1);
  return surgery_quotient(g, {}, g.gen("b2"), 1, q2);
}

/// The sigma = -3 family: surgeries on the J, T and L tori of the closed
/// genus-two product complement plus the two base relators b1 b2 and
/// a1 a2^2 b2^4.
inline FpGroup sigma3_schedule(std::int64_t k) {
  auto cp = product_complement_presentation(k, true);
  auto g = cp.group;
  auto apply = [&](const std::string &torus) {
    const auto &t = cp.boundary.at(torus);
    g = surgery_quotient(g, t.mu, t.m, 1, 1);
  };
  apply("J1");
  apply("J2");
  for (std::int64_t i = 1; i <= k; ++i) {
    apply("T" + std::to_string(i));
    apply("L" + std::to_string(i));
  }
  g.add_relator(concat(g.gen("b1"), g.gen("b2")));
  g.add_relator(concat(concat(g.gen("a1"), power(g.gen("a2"), 2)),
                       power(g.gen("b2"), 4)));
  return g;
}

/// Complement of the surgered genus-two surface in T^4 # CP2bar after two
/// Luttinger surgeries; `half` uses coefficient 1/2 on the first torus.
inline FpGroup z_double_prime(bool half = false) {
  return parse_group(std::string("group{ gens: al1, al2, al3, al4; rels: ") +
                     (half ? "al3^2" : "al3") +
                     " = [al1^-1, al4^-1], al4 = [al1, al3^-1],"
                     " [al1,al2], [al2,al3], [al2,al4], [al3,al4] }");
}

inline FpGroup m_one_half() {
  return parse_group("group{ gens: be1, be2, be3, be4; rels:"
                     " be1 = [be2^-1, be4^-1], be2^2 = [be1^-1, be4],"
                     " [be1,be3], [be2,be3], [be1,be2], [be3,be4] }");
}

inline FpGroup m_one_one() {
  return parse_group("group{ gens: be1, be2, be3, be4; rels:"
                     " be1 = [be2^-1, be4^-1], be2 = [be1^-1, be4],"
                     " [be1,be3], [be2,be3], [be1,be2], [be3,be4] }");
}

namespace detail {
inline AmalgamDescription beta_alpha_amalgam(FpGroup g1, FpGroup g2) {
  AmalgamDescription a{std::move(g1), std::move(g2), {}};
  for (int i = 1; i <= 4; ++i) {
    auto s = std::to_string(i);
    Word rhs = a.g2.gen("al" + s);
    if (i == 3)
      rhs = power(rhs, 2);
    a.edges.push_back({"h" + s, a.g1.gen("be" + s), rhs});
  }
  return a;
}

/// x = al1^s0 = al3^s1, y = al2^s2 = al4^s3.
inline AmalgamDescription torus_amalgam(FpGroup g2, const std::vector<int> &s) {
  if (s.size() != 4)
    throw ParamOutOfRange("expected four identification signs");
  AmalgamDescription a{parse_group("group{ gens: x, y; rels: [x,y] }"),
                       std::move(g2),
                       {}};
  const char *targets[] = {"al1", "al3", "al2", "al4"};
  for (int i = 0; i < 4; ++i)
    a.edges.push_back({"h" + std::to_string(i + 1), a.g1.gen(i < 2 ? "x" : "y"),
                       power(a.g2.gen(targets[i]), s[static_cast<std::size_t>(i)])});
  return a;
}
} // namespace detail

/// Genus-two sum of M(1,1/2) and Z''(1,1): beta_i = alpha_i except
/// beta_3 = alpha_3^2.
inline AmalgamDescription amalgam_r14() {
  return detail::beta_alpha_amalgam(m_one_half(), z_double_prime(false));
}

inline AmalgamDescription amalgam_r25() {
  return detail::beta_alpha_amalgam(m_one_one(), z_double_prime(false));
}

/// Torus-times-sphere side glued to Z''(1/2,1).
inline AmalgamDescription amalgam_r16(const std::vector<int> &signs) {
  return detail::torus_amalgam(z_double_prime(true), signs);
}

inline AmalgamDescription amalgam_r27(const std::vector<int> &signs) {
  return detail::torus_amalgam(z_double_prime(false), signs);
}

/// Eight signs, two per bracket {b1,d1}, {a1,d1}, {b2,d1}, {a2,d1}.
inline FpGroup r613_group(const std::vector<int> &s) {
  if (s.size() != 8)
    throw ParamOutOfRange("expected eight signs");
  auto g = parse_group(
      "group{ gens: a1, b1, a2, b2, c1, d1, c2, d2; rels: c1, d1, c2, d2 }");
  auto G = [&](const char *n) { return g.gen(n); };
  const char *pairs[4][3] = {
      {"b1", "d1", "a1"}, {"a1", "d1", "b1"}, {"b2", "d1", "a2"}, {"a2", "d1", "b2"}};
  for (int i = 0; i < 4; ++i)
    g.add_relator(concat(signed_commutator(G(pairs[i][0]), G(pairs[i][1]),
                                           s[2 * i], s[2 * i + 1]),
                         G(pairs[i][2])));
  return g;
}

/// Four signs for a{d1,b} and b{d2,a}.
inline FpGroup r615_group(const std::vector<int> &s) {
  if (s.size() != 4)
    throw ParamOutOfRange("expected four signs");
  auto g = parse_group(
      "group{ gens: a, b, c1, d1, c2, d2; rels: c1, d1, c2, d2 }");
  auto G = [&](const char *n) { return g.gen(n); };
  g.add_relator(concat(G("a"), signed_commutator(G("d1"), G("b"), s[0], s[1])));
  g.add_relator(concat(G("b"), signed_commutator(G("d2"), G("a"), s[2], s[3])));
  return g;
}

/// Complement of the genus-two surface used for the b2+ = 4 sporadic points,
/// with the push-off images of a1, b1, b2 killed.
inline FpGroup r4n_complement() {
  return parse_group("group{ gens: al1, al2, al3, al4; rels:"
                     " al3 = [al1^-1, al4^-1], [al1,al3], [al2,al3],"
                     " [al2,al4], al1, al2, al4 }");
}

inline FpGroup z_prime_four() {
  return parse_group("group{ gens: a1, a2, a3, a4; rels:"
                     " [a1,a2], [a1,a3], [a2,a3], [a2,a4], [a3,a4],"
                     " [a1,a4] a3^-1 }");
}

inline FpGroup z_prime_three() {
  return parse_group("group{ gens: a1, a2, a4; rels: [a1,a2], [a2,a4] }");
}

/// Homology relations of DX_{2,6} over c1..c5.
inline IntMatrix dx26_relations() {
  return IntMatrix{{-1, 1, 0, 0, 0}, {0, -1, 1, 0, 0}, {0, 0, -1, 1, 0},
                   {0, 0, 0, -1, 1}, {0, 0, 0, 1, 1},  {1, 0, 1, 0, 1}};
}

/// Names the group when enumeration decides it: a finite group whose order
/// equals that of its abelianization is abelian, and cyclic when it has at
/// most one elementary divisor. `abelian` marks presentations known to be
/// abelian so that an infinite enumeration can still be read off.
inline Pi1Class identify_pi1(const FpGroup &g,
                             std::int64_t cap = kDefaultCosetCap,
                             bool abelian = false) {
  auto ab = abelianization(g);
  if (ab.rank == 0) {
    auto c = coset_enumeration(g, {}, cap);
    if (c.finite) {
      if (c.index == 1)
        return Pi1Class::trivial();
      if (c.index == ab.order() && ab.torsion.size() <= 1)
        return Pi1Class::cyclic(c.index);
      return Pi1Class::presented("finite of order " + std::to_string(c.index));
    }
  }
  if (abelian) {
    if (ab.torsion.empty())
      return Pi1Class::free_abelian(ab.rank);
    if (ab.rank == 0 && ab.torsion.size() == 1)
      return Pi1Class::cyclic(ab.torsion[0]);
    if (ab.rank == 1 && ab.torsion.empty())
      return Pi1Class::cyclic(0);
  }
  return Pi1Class::presented(print_group(g));
}

// ---------------------------------------------------------------------------
// Named checks

struct CheckResult {
  bool ok = false;
  std::string detail;
  Pi1Class pi1;
};

struct GroupCheck {
  std::string name;
  std::string claim;
  std::function<CheckResult(std::int64_t cap)> run;
};

namespace detail {

inline CheckResult expect_pi1(const FpGroup &g, const Pi1Class &want,
                              std::int64_t cap, bool abelian = false) {
  auto got = identify_pi1(g, cap, abelian);
  CheckResult r;
  r.pi1 = got;
  r.ok = got == want;
  r.detail = "pi1 = " + to_string(got) + ", H1 = " + to_string(abelianization(g));
  return r;
}

/// Runs `each` over every sign vector; ok only if all agree with `want`.
inline CheckResult all_signs(std::size_t n, const Pi1Class &want,
                             std::int64_t cap,
                             const std::function<FpGroup(const std::vector<int> &)> &build) {
  CheckResult r;
  r.ok = true;
  r.pi1 = want;
  std::size_t count = 0;
  for (const auto &s : sign_vectors(n)) {
    auto got = identify_pi1(build(s), cap);
    ++count;
    if (got != want) {
      r.ok = false;
      r.pi1 = got;
      std::string sv;
      for (int x : s)
        sv += x > 0 ? '+' : '-';
      r.detail = "sign choice " + sv + " gives " + to_string(got);
      return r;
    }
  }
  r.detail = to_string(want) + " for all " + std::to_string(count) +
             " sign choices";
  return r;
}

} // namespace detail

/// Registry of the pi1 certificates used by recipes and by `verify groups`.
inline const std::vector<GroupCheck> &group_checks() {
  static const std::vector<GroupCheck> checks = [] {
    std::vector<GroupCheck> c;
    c.push_back({"telescoping_half",
                 "1/1 on T1 and 1/2 on T2 of a telescoping pair give Z2",
                 [](std::int64_t cap) {
                   return detail::expect_pi1(telescoping_surgery(1, 2),
                                             Pi1Class::z2(), cap);
                 }});
    c.push_back({"telescoping_one",
                 "1/1 on both tori of a telescoping pair kill pi1",
                 [](std::int64_t cap) {
                   return detail::expect_pi1(telescoping_surgery(1, 1),
                                             Pi1Class::trivial(), cap);
                 }});
    c.push_back({"telescoping_cyclic",
                 "1/n on T2 after 1/1 on T1 gives Z/n for n = 0..6",
                 [](std::int64_t cap) {
                   CheckResult r{true, "", Pi1Class::z2()};
                   for (std::int64_t n = 0; n <= 6; ++n) {
                     auto got = identify_pi1(telescoping_surgery(1, n), cap, true);
                     if (got != Pi1Class::cyclic(n)) {
                       r.ok = false;
                       r.detail = "n = " + std::to_string(n) + " gives " +
                                  to_string(got);
                       return r;
                     }
                   }
                   r.detail = "Z/n for n = 0..6";
                   return r;
                 }});
    for (std::int64_t k = 1; k <= 3; ++k)
      c.push_back({"sigma3_k" + std::to_string(k),
                   "surgered genus-two product complement is simply connected",
                   [k](std::int64_t cap) {
                     return detail::expect_pi1(sigma3_schedule(k),
                                               Pi1Class::trivial(), cap);
                   }});
    c.push_back({"amalgam_r14",
                 "M(1,1/2) glued to Z''(1,1) along genus two has pi1 = Z2",
                 [](std::int64_t cap) {
                   return detail::expect_pi1(evaluate_amalgam(amalgam_r14()),
                                             Pi1Class::z2(), cap);
                 }});
    c.push_back({"amalgam_r16",
                 "torus side glued to Z''(1/2,1) gives Z2 for every sign",
                 [](std::int64_t cap) {
                   return detail::all_signs(4, Pi1Class::z2(), cap,
                                            [](const std::vector<int> &s) {
                                              return evaluate_amalgam(amalgam_r16(s));
                                            });
                 }});
    c.push_back({"amalgam_r25",
                 "M(1,1) glued to Z''(1,1) is simply connected, so every "
                 "conjugate of [al3,al4] dies in the complement",
                 [](std::int64_t cap) {
                   return detail::expect_pi1(evaluate_amalgam(amalgam_r25()),
                                             Pi1Class::trivial(), cap);
                 }});
    c.push_back({"amalgam_r27",
                 "torus side glued to Z''(1,1) is trivial for every sign",
                 [](std::int64_t cap) {
                   return detail::all_signs(4, Pi1Class::trivial(), cap,
                                            [](const std::vector<int> &s) {
                                              return evaluate_amalgam(amalgam_r27(s));
                                            });
                 }});
    c.push_back({"r613", "all 256 sign choices give the trivial group",
                 [](std::int64_t cap) {
                   return detail::all_signs(8, Pi1Class::trivial(), cap,
                                            r613_group);
                 }});
    c.push_back({"r615", "all 16 sign choices give the trivial group",
                 [](std::int64_t cap) {
                   return detail::all_signs(4, Pi1Class::trivial(), cap,
                                            r615_group);
                 }});
    c.push_back({"r4n_complement",
                 "surface complement with push-offs killed is trivial",
                 [](std::int64_t cap) {
                   return detail::expect_pi1(r4n_complement(),
                                             Pi1Class::trivial(), cap);
                 }});
    c.push_back({"zprime_rank",
                 "four-generator Z' presentation has H1 of rank 3",
                 [](std::int64_t) {
                   auto a4 = abelianization(z_prime_four());
                   auto a3 = abelianization(z_prime_three());
                   CheckResult r;
                   r.ok = a4 == a3 && a4.rank == 3 && a4.torsion.empty();
                   r.detail = "H1 = " + to_string(a4);
                   r.pi1 = Pi1Class::presented(print_group(z_prime_three()));
                   return r;
                 }});
    c.push_back({"dx26_homology", "DX_{2,6} relations give trivial H1",
                 [](std::int64_t) {
                   auto h = cokernel(dx26_relations());
                   CheckResult r;
                   r.ok = h.trivial();
                   r.detail = "H1 = " + to_string(h);
                   r.pi1 = Pi1Class::trivial();
                   return r;
                 }});
    return c;
  }();
  return checks;
}

inline const GroupCheck &find_group_check(std::string_view name) {
  for (const auto &c : group_checks())
    if (c.name == name)
      return c;
  throw InvalidWord("no group certificate named '" + std::string(name) + "'");
}

/// Runs a registered check, or `sigma3_k<N>` for any N >= 1. Results are
/// memoized per (name, cap).
inline CheckResult run_group_check(std::string_view name,
                                   std::int64_t cap = kDefaultCosetCap) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::int64_t>, CheckResult> memo;
  std::string key(name);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find({key, cap}); it != memo.end())
      return it->second;
  }
  CheckResult r;
  constexpr std::string_view prefix = "sigma3_k";
  if (name.substr(0, prefix.size()) == prefix) {
    std::int64_t k = 0;
    auto tail = name.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), k);
    if (ec != std::errc() || ptr != tail.data() + tail.size() || k < 1)
      throw InvalidWord("no group certificate named '" + key + "'");
    r = detail::expect_pi1(sigma3_schedule(k), Pi1Class::trivial(), cap);
  } else {
    r = find_group_check(name).run(cap);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[{key, cap}] = r;
  return r;
}

} // namespace geo4
