#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "geo4/fpgroup.hpp"
#include "geo4/invariants.hpp"
#include "geo4/lefschetz.hpp"
#include "geo4/pi1_certificates.hpp"
#include "geo4/recipe.hpp"

namespace geo4 {

/// pi1 of a piece together with the generator carried by the Lagrangian
/// push-off of each named torus. Surgeries and torus sums act on it.
struct SurgeryModel {
  FpGroup group;
  std::map<std::string, std::string> tori;
};

/// Catalog entry. Primitive blocks carry their numbers; composite ones carry
/// a construction tree that the validator folds.
struct BlockInfo {
  std::string name;
  std::string note;
  std::optional<CharNumbers> chars;
  NodePtr definition;
  std::optional<Pi1Class> pi1;
  std::string pi1_reason;
  Verdict minimal;
  bool symplectic = true;
  Parity parity = Parity::Unknown;
  std::string parity_reason;
  std::optional<SurgeryModel> model;
  bool telescoping = false;  // pi1 = Z^2 carried by the two tori T1, T2
  bool kills_torus = false;  // torus sum with it kills the partner torus loop
  bool sphere_bundle = false;
  i64 lf_genus = 0;          // genus of a Lefschetz fibration over S^2, if any
};

namespace blocks_detail {

inline SurgeryModel telescoping_model() {
  return {telescoping_pair(), {{"T1", "a1"}, {"T2", "b2"}}};
}

inline SurgeryModel circle_model() {
  return {parse_group("group{ gens: t; rels: }"), {{"T", "t"}}};
}

inline NodePtr leaf(const std::string &name, i64 e, i64 sigma,
                    std::optional<std::pair<std::string, i64>> param = {}) {
  NodeBuilder b("Block");
  b.pos(name);
  if (param)
    b.kv(param->first, param->second);
  return b.chars(e, sigma).build();
}

inline const char *kRelminWhy =
    "exceptional spheres of the pieces meet the summing surface";

inline NodePtr luttinger(NodePtr child, i64 count, i64 e, i64 sigma) {
  return NodeBuilder("Luttinger").kv("count", count).child(std::move(child))
      .chars(e, sigma).build();
}

inline NodePtr kill_both_tori(NodePtr child, i64 e, i64 sigma) {
  auto t1 = NodeBuilder("Luttinger").kv_ident("torus", "T1")
                .kv("coeff", Rational(1)).child(std::move(child))
                .chars(e, sigma).build();
  return NodeBuilder("Luttinger").kv_ident("torus", "T2")
      .kv("coeff", Rational(1)).child(t1).chars(e, sigma).build();
}

inline NodePtr genus2_sum(NodePtr a, NodePtr b, i64 e, i64 sigma) {
  return NodeBuilder("FiberSum").kv("genus", 2).child(std::move(a))
      .child(std::move(b)).attest("relmin", kRelminWhy).chars(e, sigma).build();
}

inline void need(bool ok, const std::string &name, const std::string &what) {
  if (!ok)
    throw ParamOutOfRange("block " + name + ": " + what);
}

inline CharNumbers xg_chars(i64 g) {
  static std::mutex mu;
  static std::map<i64, CharNumbers> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(g);
  if (it != memo.end())
    return it->second;
  auto c = with_b1(total_space_chars(build_family(Family::Xg, static_cast<int>(g))), 0);
  memo.emplace(g, c);
  return c;
}

} // namespace blocks_detail

/// Names accepted by `block_info`.
inline const std::vector<std::string> &block_names() {
  static const std::vector<std::string> names = {
      "T4",       "T2xS2",    "M",        "Sigma2xSigma", "E",        "E_2",
      "E_22",     "Eprime",   "S11",      "X312",         "P58",      "Pk",
      "N0",       "XgLF",     "Gompf21",  "BK_CP4",       "BK_CP8",   "BK_CP9",
      "BK_3CP12", "BK_3CP14", "BK_R18",   "BK_R19",       "BK_R312",  "BK_R314",
      "W1",       "W2",       "Zg",       "B",            "C",        "D",
      "Bg",       "Nk",       "Zprime",   "Zpp11",        "Zpp_half1", "M11",
      "M1half",   "Bprime",   "Cprime",   "Dprime",       "Bhat"};
  return names;
}

/// Catalog lookup. `k` and `g` are the family parameters where relevant.
inline BlockInfo block_info(const std::string &name, std::optional<i64> k = {},
                            std::optional<i64> g = {}) {
  using namespace blocks_detail;
  BlockInfo b;
  b.name = name;
  auto simply_connected = [&](std::string why) {
    b.pi1 = Pi1Class::trivial();
    b.pi1_reason = std::move(why);
  };
  auto prim = [&](i64 e, i64 sigma, i64 b1) { b.chars = chars_from(e, sigma, b1); };
  auto param = [&](const std::optional<i64> &v, const char *key, i64 lo) {
    need(v.has_value(), name, std::string("needs ") + key + "=");
    need(*v >= lo, name, std::string(key) + " must be at least " + std::to_string(lo));
    return *v;
  };
  auto minimal = [&](std::string why) { b.minimal = Verdict::yes(std::move(why)); };
  auto not_minimal = [&](std::string why) { b.minimal = Verdict::no(std::move(why)); };

  if (name == "T4") {
    prim(0, 0, 4);
    b.note = "four-torus";
    b.pi1 = Pi1Class::free_abelian(4);
    b.pi1_reason = "torus";
    minimal("aspherical");
  } else if (name == "T2xS2") {
    prim(0, 0, 2);
    b.note = "product of a torus and a sphere";
    b.pi1 = Pi1Class::free_abelian(2);
    b.pi1_reason = "product";
    b.sphere_bundle = true;
    minimal("sphere bundle over a positive-genus surface");
  } else if (name == "M" || name == "Sigma2xSigma") {
    i64 kk = name == "M" ? 1 : param(k, "k", 1);
    prim(4 * kk - 4, 0, 4 + 2 * kk);
    b.note = "product of a genus-two surface with a genus-" + std::to_string(kk) + " surface";
    minimal("aspherical product of surfaces");
    if (kk == 1) {
      b.pi1 = Pi1Class::presented("Z^2 x pi1(Sigma_2)");
      b.pi1_reason = "product";
    }
  } else if (name == "E" || name == "E_2" || name == "E_22" || name == "Eprime") {
    i64 kk = param(k, "k", 1);
    prim(12 * kk, -8 * kk, 0);
    b.lf_genus = 1;
    if (name == "E_22") {
      b.note = "elliptic surface with two multiple fibers of order two";
      b.pi1 = Pi1Class::z2();
      b.pi1_reason = "two multiple fibers of order two";
      minimal("elliptic surface with multiple fibers");
    } else {
      b.kills_torus = true;
      simply_connected(name == "E" ? "elliptic surface with a section"
                                   : "at most one multiple fiber per coprime pair");
      if (name == "E") {
        b.note = "elliptic surface E(" + std::to_string(kk) + ")";
        if (kk == 1)
          not_minimal("rational surface");
        else
          minimal("relatively minimal elliptic surface of positive Kodaira dimension");
        b.parity = kk % 2 == 0 ? Parity::Even : Parity::Odd;
        b.parity_reason = kk % 2 == 0 ? "spin for even k" : "odd for odd k";
      } else {
        b.note = name == "E_2" ? "log transform of order two on E(k)"
                               : "log transforms of orders two and three on E(k)";
        minimal("log-transformed elliptic surface");
        b.parity = Parity::Odd;
        b.parity_reason = "log transform of even order is non-spin";
      }
    }
  } else if (name == "S11") {
    prim(23, -15, 0);
    b.note = "symplectic block with c1^2 = 1, chi_h = 2";
    b.kills_torus = true;
    simply_connected("constructed simply connected");
    minimal("minimal by construction");
  } else if (name == "X312") {
    prim(17, -9, 0);
    b.note = "symplectic block with c1^2 = 7, chi_h = 2";
    b.kills_torus = true;
    simply_connected("constructed simply connected");
    minimal("minimal by construction");
  } else if (name == "P58" || name == "Pk") {
    i64 kk = name == "P58" ? 2 : param(k, "k", 2);
    prim(4 * kk + 7, -3, 1);
    b.note = "sigma = -3 symplectic block with pi1 = Z";
    b.model = circle_model();
    b.pi1 = Pi1Class::free_abelian(1);
    b.pi1_reason = "Z generated by a loop on the torus T";
    b.kills_torus = true;
    minimal("minimal by construction");
  } else if (name == "N0") {
    prim(3, -3, 2);
    b.note = "T2 x S2 blown up three times, as a genus-two fibration";
    b.lf_genus = 2;
    b.pi1 = Pi1Class::free_abelian(2);
    b.pi1_reason = "blow-up of a product";
    not_minimal("contains exceptional spheres");
    b.parity = Parity::Odd;
    b.parity_reason = "exceptional sphere";
  } else if (name == "XgLF") {
    i64 gg = param(g, "g", 1);
    b.chars = xg_chars(gg);
    b.note = "genus-" + std::to_string(gg) + " Lefschetz fibration on CP2 # (4g+5) CP2bar";
    b.lf_genus = gg;
    simply_connected("vanishing cycles generate the fiber group");
    not_minimal("rational surface");
    b.parity = Parity::Odd;
    b.parity_reason = "exceptional sections";
  } else if (name == "Gompf21") {
    prim(21, -13, 0);
    b.note = "simply connected minimal symplectic block with c1^2 = 3, chi_h = 2";
    b.kills_torus = true;
    simply_connected("constructed simply connected");
    minimal("minimal by construction");
  } else if (name.rfind("BK_", 0) == 0) {
    struct Row { const char *n; i64 e, s; bool z2; bool odd_attest; };
    static const Row rows[] = {
        {"BK_CP4", 7, -3, false, false},   {"BK_CP8", 11, -7, false, false},
        {"BK_CP9", 12, -8, false, true},   {"BK_3CP12", 17, -9, false, false},
        {"BK_3CP14", 19, -11, false, false}, {"BK_R18", 11, -7, true, false},
        {"BK_R19", 12, -8, true, true},    {"BK_R312", 17, -9, true, false},
        {"BK_R314", 19, -11, true, false}};
    const Row *row = nullptr;
    for (const auto &r : rows)
      if (name == r.n)
        row = &r;
    need(row != nullptr, name, "unknown block");
    prim(row->e, row->s, 0);
    b.note = "minimal genus-two Lefschetz fibration from an explicit monodromy";
    b.lf_genus = 2;
    minimal("minimal genus-two fibration");
    if (row->z2) {
      b.pi1 = Pi1Class::z2();
      b.pi1_reason = "monodromy relations give Z2";
    } else {
      simply_connected("vanishing cycles generate the fiber group");
    }
    if (row->odd_attest) {
      b.parity = Parity::Odd;
      b.parity_reason = "a separating vanishing cycle gives an odd class";
    }
  } else if (name == "W1") {
    b.definition = NodeBuilder("BlowUp").kv("count", 4).child(leaf("T2xS2", 0, 0))
                       .chars(4, -4).build();
    b.note = "T2 x S2 blown up four times";
    b.pi1 = Pi1Class::free_abelian(2);
    b.pi1_reason = "blow-up of a product";
  } else if (name == "W2") {
    b.definition = NodeBuilder("BlowUp").kv("count", 2).child(leaf("T4", 0, 0))
                       .chars(2, -2).build();
    b.note = "T4 blown up twice";
    b.pi1 = Pi1Class::free_abelian(4);
    b.pi1_reason = "blow-up of a torus";
  } else if (name == "Zg") {
    i64 gg = param(g, "g", 1);
    b.definition = luttinger(leaf("Sigma2xSigma", 4 * gg - 4, 0, {{"k", gg}}),
                             2 * gg, 4 * gg - 4, 0);
    b.note = "surgered product of genus two and genus g surfaces";
  } else if (name == "B" || name == "C" || name == "D") {
    if (name == "B")
      b.definition = luttinger(genus2_sum(leaf("W2", 2, -2), leaf("M", 0, 0), 6, -2), 4, 6, -2);
    else if (name == "C")
      b.definition = luttinger(genus2_sum(leaf("W1", 4, -4), leaf("M", 0, 0), 8, -4), 2, 8, -4);
    else
      b.definition = genus2_sum(leaf("W1", 4, -4), leaf("W2", 2, -2), 10, -6);
    b.note = "telescoping block with tori T1, T2";
    b.telescoping = true;
    b.model = telescoping_model();
  } else if (name == "Bg") {
    i64 gg = param(g, "g", 1);
    b.definition = genus2_sum(leaf("B", 6, -2), leaf("Zg", 4 * gg - 4, 0, {{"g", gg}}),
                              4 * gg + 6, -2);
    b.note = "B summed with Z_g along genus two";
    b.telescoping = true;
    b.model = telescoping_model();
  } else if (name == "Nk") {
    i64 kk = param(k, "k", 1);
    b.definition = genus2_sum(leaf("N0", 3, -3),
                              leaf("Sigma2xSigma", 4 * kk - 4, 0, {{"k", kk}}),
                              4 * kk + 3, -3);
    b.note = "N0 summed with the genus-two product along a fiber";
  } else if (name == "Zprime") {
    b.definition = luttinger(NodeBuilder("BlowUp").kv("count", 1).child(leaf("T4", 0, 0))
                                 .chars(1, -1).build(), 1, 1, -1);
    b.note = "one surgery on T4 # CP2bar";
  } else if (name == "Zpp11" || name == "Zpp_half1") {
    b.definition = luttinger(NodeBuilder("BlowUp").kv("count", 1).child(leaf("T4", 0, 0))
                                 .chars(1, -1).build(), 2, 1, -1);
    b.note = name == "Zpp11" ? "surgeries 1/1, 1/1 on T4 # CP2bar"
                             : "surgeries 1/2, 1/1 on T4 # CP2bar";
  } else if (name == "M11" || name == "M1half") {
    b.definition = luttinger(NodeBuilder("BlowUp").kv("count", 2).child(leaf("T4", 0, 0))
                                 .chars(2, -2).build(), 2, 2, -2);
    b.note = name == "M11" ? "surgeries 1/1, 1/1 on T4 # 2 CP2bar"
                           : "surgeries 1/1, 1/2 on T4 # 2 CP2bar";
  } else if (name == "Bprime" || name == "Cprime" || name == "Dprime" || name == "Bhat") {
    std::string base = name == "Cprime" ? "C" : name == "Dprime" ? "D" : "B";
    i64 e = base == "B" ? 6 : base == "C" ? 8 : 10;
    i64 s = base == "B" ? -2 : base == "C" ? -4 : -6;
    b.definition = kill_both_tori(leaf(base, e, s), e, s);
    b.note = "both tori of " + base + " surgered with coefficient 1";
  } else {
    throw ParamOutOfRange("unknown block '" + name + "'");
  }
  return b;
}

} // namespace geo4
