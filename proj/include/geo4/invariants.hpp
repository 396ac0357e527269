#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "geo4/errors.hpp"
#include "geo4/rational.hpp"

namespace geo4 {

using i64 = std::int64_t;

/// Characteristic numbers of a closed oriented 4-manifold. `b1` (and with it
/// b2plus/b2minus) may be unknown; e, sigma, c1sq and chih never are.
struct CharNumbers {
  i64 e = 0;
  i64 sigma = 0;
  std::optional<i64> b1;
  std::optional<i64> b2plus;
  std::optional<i64> b2minus;
  i64 c1sq = 0;
  Rational chih{0};

  friend bool operator==(const CharNumbers &, const CharNumbers &) = default;
};

namespace detail {
inline bool even(i64 v) { return v % 2 == 0; }
} // namespace detail

/// Builds fully consistent numbers; b1 may be left unknown, in which case only
/// the parity of e + sigma is checked.
inline CharNumbers make_chars(i64 e, i64 sigma, std::optional<i64> b1) {
  if (!detail::even(e + sigma))
    throw ParityMismatch("e + sigma = " + std::to_string(e + sigma) +
                         " is odd");
  CharNumbers c;
  c.e = e;
  c.sigma = sigma;
  c.c1sq = 2 * e + 3 * sigma;
  c.chih = Rational(e + sigma, 4);
  if (b1) {
    if (*b1 < 0)
      throw NegativeBetti("b1 = " + std::to_string(*b1));
    i64 plus2 = e - 2 + 2 * *b1 + sigma;
    i64 minus2 = e - 2 + 2 * *b1 - sigma;
    if (plus2 < 0 || minus2 < 0)
      throw NegativeBetti("b2+ = " + std::to_string(plus2) + "/2, b2- = " +
                          std::to_string(minus2) + "/2");
    c.b1 = b1;
    c.b2plus = plus2 / 2;
    c.b2minus = minus2 / 2;
  }
  return c;
}

inline CharNumbers chars_from(i64 e, i64 sigma, i64 b1) {
  return make_chars(e, sigma, b1);
}

/// b1 = 0 coordinates.
inline CharNumbers chars_from_betti(i64 b2plus, i64 b2minus) {
  return chars_from(2 + b2plus + b2minus, b2plus - b2minus, 0);
}

inline CharNumbers chars_from_c1sq_chih(i64 c1sq, const Rational &chih) {
  Rational e = chih * 12 - c1sq;
  Rational s = Rational(c1sq) - chih * 8;
  if (!is_integer(e) || !is_integer(s))
    throw ParityMismatch("chih = " + to_string(chih) +
                         " gives non-integral e or sigma");
  return chars_from(e.numerator(), s.numerator(), 0);
}

inline CharNumbers with_b1(const CharNumbers &c, std::optional<i64> b1) {
  return make_chars(c.e, c.sigma, b1);
}

/// Symplectic sum along genus-g surfaces of square zero.
inline CharNumbers fiber_sum_chars(const CharNumbers &a, const CharNumbers &b,
                                   i64 g, std::optional<i64> b1 = {}) {
  if (g < 0)
    throw ParamOutOfRange("fiber sum genus " + std::to_string(g));
  if (g != 1)
    diag::warn("fiber sum along genus " + std::to_string(g) +
               ": using e1 + e2 + 4g - 4");
  return make_chars(a.e + b.e + 4 * g - 4, a.sigma + b.sigma, b1);
}

inline CharNumbers blow_up_chars(const CharNumbers &a, i64 n) {
  if (n < 0)
    throw ParamOutOfRange("blow-up count " + std::to_string(n));
  return make_chars(a.e + n, a.sigma - n, a.b1);
}

inline CharNumbers surgery_chars(const CharNumbers &a) { return a; }

inline CharNumbers lantern_chars(const CharNumbers &a, i64 count = 1) {
  return make_chars(a.e - count, a.sigma + count, a.b1);
}

inline CharNumbers reverse_orientation_chars(const CharNumbers &a) {
  return make_chars(a.e, -a.sigma, a.b1);
}

enum class Z2Kind { Double, Quotient, Z2Construction };

/// Transformation of invariants under doubling along a genus-g surface, the
/// quotient by the free involution, and their composite.
inline CharNumbers z2_table_chars(const CharNumbers &a, i64 g, Z2Kind kind) {
  if (g < 0)
    throw ParamOutOfRange("surface genus " + std::to_string(g));
  std::optional<i64> b1 =
      (a.b1 && *a.b1 == 0) ? std::optional<i64>(0) : std::nullopt;
  switch (kind) {
  case Z2Kind::Double:
    return make_chars(2 * a.e + 4 * g - 4, 2 * a.sigma, b1);
  case Z2Kind::Quotient: {
    if (!detail::even(a.e) || !detail::even(a.sigma))
      throw IndivisibleQuotient("e and sigma must be even");
    i64 e = a.e / 2, s = a.sigma / 2;
    if (b1 && (!detail::even(e - 2 + s) || !detail::even(e - 2 - s)))
      throw IndivisibleQuotient("b2+ and b2- must be odd");
    return make_chars(e, s, b1);
  }
  case Z2Kind::Z2Construction:
    return make_chars(a.e + 2 * g - 2, a.sigma, b1);
  }
  throw ParamOutOfRange("unknown Z2 kind");
}

// ---------------------------------------------------------------------------
// Descriptor and rule engine

enum class Pi1Kind { Trivial, Z2, Zn, FreeAbelian, Presented, Unknown };

struct Pi1Class {
  Pi1Kind kind = Pi1Kind::Unknown;
  i64 n = 0;       // order for Zn, rank for FreeAbelian
  std::string ref; // presentation reference for Presented

  static Pi1Class trivial() { return {Pi1Kind::Trivial, 1, {}}; }
  static Pi1Class z2() { return {Pi1Kind::Z2, 2, {}}; }
  static Pi1Class cyclic(i64 n) {
    if (n == 1)
      return trivial();
    if (n == 2)
      return z2();
    if (n == 0)
      return free_abelian(1);
    return {Pi1Kind::Zn, n, {}};
  }
  static Pi1Class free_abelian(i64 r) {
    if (r == 0)
      return trivial();
    return {Pi1Kind::FreeAbelian, r, {}};
  }
  static Pi1Class presented(std::string ref) {
    return {Pi1Kind::Presented, 0, std::move(ref)};
  }
  static Pi1Class unknown() { return {}; }

  /// b1 implied by the class, when it is determined.
  [[nodiscard]] std::optional<i64> b1() const {
    switch (kind) {
    case Pi1Kind::Trivial:
    case Pi1Kind::Z2:
    case Pi1Kind::Zn:
      return 0;
    case Pi1Kind::FreeAbelian:
      return n;
    default:
      return std::nullopt;
    }
  }
  [[nodiscard]] bool residually_finite_known() const {
    return kind == Pi1Kind::Trivial || kind == Pi1Kind::Z2 ||
           kind == Pi1Kind::Zn || kind == Pi1Kind::FreeAbelian;
  }
  friend bool operator==(const Pi1Class &, const Pi1Class &) = default;
};

inline std::string to_string(const Pi1Class &p) {
  switch (p.kind) {
  case Pi1Kind::Trivial:
    return "1";
  case Pi1Kind::Z2:
    return "Z2";
  case Pi1Kind::Zn:
    return "Z" + std::to_string(p.n);
  case Pi1Kind::FreeAbelian:
    return "Z^" + std::to_string(p.n);
  case Pi1Kind::Presented:
    return "<" + p.ref + ">";
  case Pi1Kind::Unknown:
    return "?";
  }
  return "?";
}

enum class Parity { Odd, Even, Unknown };
enum class W2Type { TypeI, TypeII, TypeIII, Unknown };
enum class Orientation { Standard, Reversed };

inline std::string to_string(Parity p) {
  return p == Parity::Odd ? "odd" : p == Parity::Even ? "even" : "unknown";
}

/// Yes/No/Unknown together with the rule that decided it.
struct Verdict {
  enum class State { Yes, No, Unknown } state = State::Unknown;
  std::string reason;

  static Verdict yes(std::string r) { return {State::Yes, std::move(r)}; }
  static Verdict no(std::string r) { return {State::No, std::move(r)}; }
  static Verdict unknown(std::string r = {}) {
    return {State::Unknown, std::move(r)};
  }
  [[nodiscard]] bool is_yes() const { return state == State::Yes; }
  [[nodiscard]] bool is_no() const { return state == State::No; }
};

inline std::string to_string(const Verdict &v) {
  switch (v.state) {
  case Verdict::State::Yes:
    return "yes";
  case Verdict::State::No:
    return "no";
  default:
    return "unknown";
  }
}

struct ManifoldDescriptor {
  CharNumbers chars;
  Pi1Class pi1;
  Parity parity = Parity::Unknown;
  W2Type w2type = W2Type::Unknown;
  Verdict minimal;
  Verdict irreducible;
  bool symplectic = false;
  Orientation orientation = Orientation::Standard;
};

/// One-directional consistency rules. Throws RejectedDescriptor when the
/// Rokhlin rule is violated; fills in w2type when the odd/Z2 rule fires.
inline ManifoldDescriptor apply_rules(ManifoldDescriptor d) {
  if (d.pi1.kind == Pi1Kind::Trivial && d.parity == Parity::Even &&
      d.chars.sigma % 16 != 0)
    throw RejectedDescriptor("even simply connected form with sigma = " +
                             std::to_string(d.chars.sigma) +
                             " not divisible by 16");
  if (d.pi1.kind == Pi1Kind::Trivial && d.chars.sigma % 16 != 0 &&
      d.parity == Parity::Unknown)
    d.parity = Parity::Odd;
  if (d.parity == Parity::Odd && d.pi1.kind == Pi1Kind::Z2)
    d.w2type = W2Type::TypeI;
  return d;
}

struct StandardModel {
  enum class Kind { Rab, CPsum, OtherSpin, Unclassified } kind = Kind::Unclassified;
  i64 a = 0;
  i64 b = 0;
  std::string reason;

  friend bool operator==(const StandardModel &x, const StandardModel &y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }
};

inline std::string to_string(const StandardModel &m) {
  switch (m.kind) {
  case StandardModel::Kind::Rab:
    return "R_{" + std::to_string(m.a) + "," + std::to_string(m.b) + "}";
  case StandardModel::Kind::CPsum:
    return "CP2#" + std::to_string(m.a - 1) + "CP2#" + std::to_string(m.b) +
           "CP2bar";
  case StandardModel::Kind::OtherSpin:
    return "spin";
  default:
    return "unclassified";
  }
}

/// Homeomorphism type from (pi1, parity, b2+-). Only b2+-, pi1 and parity are
/// read.
inline StandardModel classify(const ManifoldDescriptor &d) {
  if (d.parity == Parity::Unknown)
    throw InsufficientCertificates("parity unknown");
  if (d.pi1.kind == Pi1Kind::Unknown)
    throw InsufficientCertificates("pi1 unknown");
  if (!d.chars.b2plus || !d.chars.b2minus)
    throw InsufficientCertificates("b1 unknown");
  StandardModel m;
  m.a = *d.chars.b2plus;
  m.b = *d.chars.b2minus;
  if (d.parity == Parity::Odd && d.pi1.kind == Pi1Kind::Z2) {
    m.kind = StandardModel::Kind::Rab;
    m.reason = "odd form, pi1 = Z2, w2-type (i)";
  } else if (d.parity == Parity::Odd && d.pi1.kind == Pi1Kind::Trivial) {
    m.kind = StandardModel::Kind::CPsum;
    m.reason = "odd form, simply connected";
  } else if (d.parity == Parity::Even) {
    m.kind = StandardModel::Kind::OtherSpin;
    m.reason = "even form";
  } else {
    m.reason = "pi1 = " + to_string(d.pi1) + " not handled";
  }
  return m;
}

enum class Minimality { Minimal, NotMinimal, Unknown };

inline std::string to_string(Minimality m) {
  return m == Minimality::Minimal      ? "minimal"
         : m == Minimality::NotMinimal ? "not minimal"
                                       : "unknown";
}

/// Flags describing a symplectic sum X = X1 #_F X2 along a genus-g surface.
struct FiberSumMeta {
  i64 genus = 1;
  std::optional<bool> left_minus_one_sphere;  // square -1 sphere in X1 - F
  std::optional<bool> right_minus_one_sphere;
  std::optional<bool> left_sphere_bundle;     // X1 an S2-bundle, F a section
  std::optional<bool> right_sphere_bundle;
  std::optional<bool> left_minimal;
  std::optional<bool> right_minimal;
};

/// Usher's case analysis for minimality of symplectic sums.
inline Minimality usher_minimality(const FiberSumMeta &m) {
  if (m.genus <= 0)
    return Minimality::Unknown;
  if (!m.left_minus_one_sphere || !m.right_minus_one_sphere)
    return Minimality::Unknown;
  if (*m.left_minus_one_sphere || *m.right_minus_one_sphere)
    return Minimality::NotMinimal;
  if (!m.left_sphere_bundle || !m.right_sphere_bundle)
    return Minimality::Unknown;
  auto other = [](const std::optional<bool> &f) {
    if (!f)
      return Minimality::Unknown;
    return *f ? Minimality::Minimal : Minimality::NotMinimal;
  };
  if (*m.left_sphere_bundle && *m.right_sphere_bundle)
    return Minimality::Unknown;
  if (*m.left_sphere_bundle)
    return other(m.right_minimal);
  if (*m.right_sphere_bundle)
    return other(m.left_minimal);
  return Minimality::Minimal;
}

/// Minimal symplectic manifolds with residually finite pi1 are irreducible.
inline ManifoldDescriptor hk_irreducible(ManifoldDescriptor d) {
  if (!d.minimal.is_yes())
    throw RuleNotApplicable("not known to be minimal");
  if (!d.symplectic)
    throw RuleNotApplicable("not symplectic");
  if (!d.pi1.residually_finite_known())
    throw RuleNotApplicable("pi1 " + to_string(d.pi1) +
                            " not known residually finite");
  d.irreducible = Verdict::yes("Hamilton-Kotschick: minimal symplectic, pi1 " +
                               to_string(d.pi1) + " residually finite");
  return d;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json &j, const CharNumbers &c) {
  j = nlohmann::json{{"e", c.e},
                     {"sigma", c.sigma},
                     {"c1sq", c.c1sq},
                     {"chih", to_string(c.chih)}};
  auto opt = [&](const char *k, const std::optional<i64> &v) {
    j[k] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  opt("b1", c.b1);
  opt("b2plus", c.b2plus);
  opt("b2minus", c.b2minus);
}

/// Rebuilds from e, sigma and b1 and rejects inconsistent redundant fields.
inline void from_json(const nlohmann::json &j, CharNumbers &c) {
  std::optional<i64> b1;
  if (j.contains("b1") && !j.at("b1").is_null())
    b1 = j.at("b1").get<i64>();
  c = make_chars(j.at("e").get<i64>(), j.at("sigma").get<i64>(), b1);
  auto check = [&](const char *k, const nlohmann::json &want) {
    if (j.contains(k) && !j.at(k).is_null() && j.at(k) != want)
      throw InvariantMismatch(std::string("field ") + k + " inconsistent");
  };
  check("c1sq", c.c1sq);
  check("chih", to_string(c.chih));
  if (c.b2plus) {
    check("b2plus", *c.b2plus);
    check("b2minus", *c.b2minus);
  }
}

} // namespace geo4
