#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geo4/errors.hpp"
#include "geo4/fpgroup.hpp"
#include "geo4/invariants.hpp"
#include "geo4/mcg.hpp"

namespace geo4 {

/// Monodromy datum of a Lefschetz fibration over Sigma_h with fiber Sigma_g.
struct PositiveFactorization {
  SurfaceModel surface;
  std::int64_t base_genus = 0;
  MappingClassWord word;
  bool has_section = false;
  bool hyperelliptic = false;
  /// Vanishing cycles as words in x1, y1, ..., xg, yg.
  std::optional<std::vector<Word>> vanishing_pi1_words;
  /// Set only when representative-level commutation with r is attested.
  bool involution = false;

  [[nodiscard]] int genus() const { return surface.genus; }
};

inline PositiveFactorization make_factorization(SurfaceModel s,
                                                MappingClassWord w,
                                                std::int64_t base_genus = 0) {
  if (!is_positive(w))
    throw NonPositiveInput("factorization contains a non-positive letter");
  if (base_genus < 0)
    throw ParamOutOfRange("base genus " + std::to_string(base_genus));
  PositiveFactorization pf;
  pf.surface = std::move(s);
  pf.base_genus = base_genus;
  pf.word = std::move(w);
  return pf;
}

/// Over S^2 the monodromy must be trivial; checked on homology only.
inline bool closes_over_sphere(const PositiveFactorization &pf) {
  return evaluate_matrix(pf.surface, pf.word) ==
         IntMatrix::identity(2 * static_cast<std::size_t>(pf.genus()));
}

struct SignatureBreakdown {
  std::int64_t n0 = 0;
  std::map<int, std::int64_t> nh; // separating type h -> count

  [[nodiscard]] std::int64_t total() const {
    std::int64_t t = n0;
    for (auto &[h, n] : nh)
      t += n;
    return t;
  }
};

inline void to_json(nlohmann::json &j, const SignatureBreakdown &b) {
  j = nlohmann::json{{"n0", b.n0}};
  nlohmann::json nh = nlohmann::json::object();
  for (auto &[h, n] : b.nh)
    nh[std::to_string(h)] = n;
  j["nh"] = nh;
}

inline SignatureBreakdown signature_breakdown(const PositiveFactorization &pf) {
  SignatureBreakdown b;
  for (const auto &l : pf.word) {
    int h = pf.surface.curve(l.curve).separating_type;
    if (h == 0)
      ++b.n0;
    else
      ++b.nh[h];
  }
  return b;
}

inline std::int64_t euler_characteristic(const PositiveFactorization &pf) {
  return (2 - 2 * static_cast<std::int64_t>(pf.genus())) *
             (2 - 2 * pf.base_genus) +
         static_cast<std::int64_t>(pf.word.size());
}

/// Endo's formula for hyperelliptic fibrations over S^2.
inline std::int64_t endo_signature(const PositiveFactorization &pf) {
  if (!pf.hyperelliptic)
    throw SignatureUnavailable("signature only for hyperelliptic input");
  if (pf.base_genus != 0)
    throw SignatureUnavailable("signature only over the sphere");
  const std::int64_t g = pf.genus();
  auto b = signature_breakdown(pf);
  Rational s = Rational(-(g + 1), 2 * g + 1) * b.n0;
  for (auto &[h, n] : b.nh) {
    if (h > g / 2)
      throw NonIntegerSignature("separating type " + std::to_string(h) +
                                " exceeds g/2");
    s += (Rational(4 * h * (g - h), 2 * g + 1) - 1) * n;
  }
  if (!is_integer(s))
    throw NonIntegerSignature("Endo sum " + to_string(s) +
                              " is not an integer");
  return s.numerator();
}

/// e always; sigma through Endo (throws SignatureUnavailable otherwise).
inline CharNumbers total_space_chars(const PositiveFactorization &pf) {
  return make_chars(euler_characteristic(pf), endo_signature(pf), std::nullopt);
}

/// Exact mode: surface group plus one relator per vanishing cycle.
inline FpGroup pi1_presentation(const PositiveFactorization &pf) {
  if (!pf.vanishing_pi1_words)
    throw MissingPi1Words("no vanishing-cycle words supplied");
  if (pf.base_genus != 0)
    throw ParamOutOfRange("pi1 presentation only over the sphere");
  FpGroup g;
  const int n = pf.genus();
  for (int i = 1; i <= n; ++i) {
    g.gens.push_back("x" + std::to_string(i));
    g.gens.push_back("y" + std::to_string(i));
  }
  Word surf;
  for (int i = 0; i < n; ++i)
    surf = concat(surf, commutator(Word{2 * i + 1}, Word{2 * i + 2}));
  g.rels.push_back(surf);
  for (const auto &w : *pf.vanishing_pi1_words)
    g.add_relator(w);
  return g;
}

/// Homology mode: rows are the vanishing classes in H1(fiber).
inline IntMatrix h1_relation_matrix(const PositiveFactorization &pf) {
  const std::size_t n = 2 * static_cast<std::size_t>(pf.genus());
  IntMatrix m(pf.word.size(), n);
  for (std::size_t r = 0; r < pf.word.size(); ++r) {
    HVec v = letter_class(pf.surface, pf.word[r]);
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = v[c];
  }
  return m;
}

/// H1 of the total space over S^2 (fiber classes modulo vanishing cycles).
inline AbelianInvariants total_space_h1(const PositiveFactorization &pf) {
  if (pf.base_genus != 0)
    throw ParamOutOfRange("H1 computed only over the sphere");
  return cokernel(h1_relation_matrix(pf));
}

inline PositiveFactorization fiber_sum_fibrations(const PositiveFactorization &p1,
                                                  const PositiveFactorization &p2) {
  if (p1.genus() != p2.genus())
    throw GenusMismatch("fiber genera " + std::to_string(p1.genus()) + " and " +
                        std::to_string(p2.genus()));
  PositiveFactorization out = p1;
  out.word = p1.word + p2.word;
  out.base_genus = p1.base_genus + p2.base_genus;
  out.has_section = p1.has_section && p2.has_section;
  out.hyperelliptic = p1.hyperelliptic && p2.hyperelliptic;
  out.involution = false;
  if (p1.vanishing_pi1_words && p2.vanishing_pi1_words) {
    auto v = *p1.vanishing_pi1_words;
    v.insert(v.end(), p2.vanishing_pi1_words->begin(),
             p2.vanishing_pi1_words->end());
    out.vanishing_pi1_words = v;
  } else {
    out.vanishing_pi1_words.reset();
  }
  return out;
}

/// Trivial Sigma_g bundle over Sigma_k.
inline PositiveFactorization trivial_fibration(int g, std::int64_t k) {
  auto pf = make_factorization(standard_surface(g), {}, k);
  pf.has_section = true;
  return pf;
}

/// W (W^-1)^r. Requires [evaluate(W), r] = 0 on homology; the involution flag
/// is taken from `attested` (a homological check cannot supply it).
inline PositiveFactorization fiber_reversing_double(const PositiveFactorization &pf,
                                                    const SymplecticMatrix &r,
                                                    bool attested = false) {
  if (pf.base_genus != 0)
    throw ParamOutOfRange("fiber-reversing double of fibrations over D^2/S^2 only");
  IntMatrix V = evaluate_matrix(pf.surface, pf.word);
  if (!(V * r.m == r.m * V))
    throw CommutationFails("monodromy does not commute with r on homology");
  PositiveFactorization out = pf;
  out.surface.reflection = r.m;
  out.word = reversed_double_word(pf.word, pf.word);
  out.vanishing_pi1_words.reset();
  out.involution = attested;
  return out;
}

// ---------------------------------------------------------------------------
// Named families

/// t_i^{t_j} = t_j t_i t_j^-1 on the chain curves.
inline Letter chain_conj(int i, const MappingClassWord &by) {
  return conjugate(twist("c" + std::to_string(i)), by);
}

inline MappingClassWord chain_twist(int i, std::int64_t n = 1) {
  return repeat({twist("c" + std::to_string(i))}, n);
}

/// t1 t2 ... t_{2g} t_{2g+1}^2 t_{2g} ... t1, the hyperelliptic involution.
inline MappingClassWord hyperelliptic_word(int g) {
  MappingClassWord w;
  for (int i = 1; i <= 2 * g; ++i)
    w.push_back(twist("c" + std::to_string(i)));
  w.push_back(twist("c" + std::to_string(2 * g + 1)));
  w.push_back(twist("c" + std::to_string(2 * g + 1)));
  for (int i = 2 * g; i >= 1; --i)
    w.push_back(twist("c" + std::to_string(i)));
  return w;
}

/// A_g = t1^{t2} t2^{t3} ... t_{2g}^{t_{2g+1}} t_{2g+1}^{t_{2g}} ... t4^{t3}
///       t3^{t2 t3^{2g+2}} t2^{t1 t3^{2g+2}}
inline MappingClassWord A_word(int g) {
  if (g < 2)
    throw ParamOutOfRange("A_g needs g >= 2");
  MappingClassWord w;
  for (int i = 1; i <= 2 * g; ++i)
    w.push_back(chain_conj(i, chain_twist(i + 1)));
  for (int i = 2 * g + 1; i >= 4; --i)
    w.push_back(chain_conj(i, chain_twist(i - 1)));
  // Stacked exponents act one after another: t^{uv} = (t^u)^v, so the
  // conjugating word is v u.
  w.push_back(chain_conj(3, chain_twist(3, 2 * g + 2) + chain_twist(2)));
  w.push_back(chain_conj(2, chain_twist(3, 2 * g + 2) + chain_twist(1)));
  return w;
}

enum class Family { Hyperelliptic, Xg, Wg, Vg, Vg2k, En };

/// The curves a, b carry the classes of c1, c3, so the conjugation by phi
/// taking (c1, c3) to (a, b) acts trivially on homology and A_g^phi is
/// represented by A_g.
inline PositiveFactorization build_family(Family f, int g, std::int64_t k = 0) {
  auto pf = PositiveFactorization{};
  switch (f) {
  case Family::Hyperelliptic:
    pf.surface = standard_surface(g);
    pf.word = hyperelliptic_word(g);
    pf.hyperelliptic = true;
    pf.base_genus = 0;
    return pf; // monodromy -I: a fibration over D^2 only
  case Family::Xg: {
    pf.surface = standard_surface(g);
    pf.word = repeat(hyperelliptic_word(g), 2);
    pf.hyperelliptic = true;
    pf.has_section = true;
    return pf;
  }
  case Family::Wg: {
    pf.surface = standard_surface(g);
    pf.word = A_word(g) + chain_twist(1, 2 * g + 2) + chain_twist(3, 2 * g + 2);
    pf.hyperelliptic = true;
    pf.has_section = true;
    return pf;
  }
  case Family::Vg:
    return build_family(Family::Vg2k, g, 0);
  case Family::Vg2k: {
    if (g < 2 || k < 0 || k > g + 1)
      throw ParamOutOfRange("V_{g,2k} needs g >= 2 and 0 <= k <= g+1 (g=" +
                            std::to_string(g) + ", k=" + std::to_string(k) +
                            ")");
    pf.surface = standard_surface(g);
    MappingClassWord head = A_word(g) + repeat(twists({"x", "y", "z"}), k);
    MappingClassWord back;
    for (auto it = head.rbegin(); it != head.rend(); ++it)
      back.push_back(reflect(*it));
    if (k == 0)
      pf.word = A_word(g) + repeat(twists({"a", "b"}), 2 * g + 2) +
                repeat(twists({"c", "d"}), 2 * g + 2) + back;
    else
      pf.word = head + repeat(twists({"a", "b", "c", "d"}), 2 * (g + 1 - k)) +
                back;
    // Every genus-2 fibration is hyperelliptic; for g > 2 the lantern
    // curves leave the hyperelliptic class.
    pf.hyperelliptic = (g == 2);
    pf.has_section = true;
    return pf;
  }
  case Family::En: {
    if (k < 1)
      throw ParamOutOfRange("E(n) needs n >= 1");
    pf.surface = standard_surface(1);
    pf.word = repeat(twists({"a", "b"}), 6 * k);
    pf.has_section = true;
    return pf;
  }
  }
  throw ParamOutOfRange("unknown family");
}

/// W_g^phi = A_g (t_a t_b)^{2g+2}, the form fed to the fiber-reversing double.
inline PositiveFactorization w_phi(int g) {
  auto pf = make_factorization(standard_surface(g),
                               A_word(g) + repeat(twists({"a", "b"}), 2 * g + 2));
  pf.hyperelliptic = true;
  pf.has_section = true;
  return pf;
}

} // namespace geo4
