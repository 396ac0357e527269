#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "geo4/blocks.hpp"
#include "geo4/invariants.hpp"
#include "geo4/pi1_certificates.hpp"
#include "geo4/recipe.hpp"

namespace geo4 {

struct ValidationOptions {
  std::int64_t coset_cap = kDefaultCosetCap;
};

/// Root descriptor plus one line per folded node, innermost first.
struct ValidationReport {
  ManifoldDescriptor descriptor;
  std::vector<std::string> trail;
  std::size_t nodes = 0;
};

/// Certificate kinds a recipe may attest.
inline const std::set<std::string> &certificate_kinds() {
  static const std::set<std::string> kinds = {
      "pi1_trivial", "pi1_z2",   "odd",         "minimal",    "relmin",
      "meridian_trivial", "involution", "symplectic", "telescoping"};
  return kinds;
}

namespace validate_detail {

struct Folded {
  ManifoldDescriptor d;
  std::optional<SurgeryModel> model;
  bool telescoping = false;
  bool kills_torus = false;
  bool sphere_bundle = false;
  bool free_involution = false;
  i64 lf_genus = 0;
};

using Certs = std::map<std::string, std::string>;

inline std::string where(const RecipeNode &n) {
  std::string s = n.head;
  if (auto nm = n.name())
    s += "(" + *nm + ")";
  if (n.line > 0)
    s += " at " + std::to_string(n.line) + ":" + std::to_string(n.column);
  return s;
}

inline std::string trimmed(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline Certs read_certs(const RecipeNode &n) {
  Certs out;
  for (const auto &c : n.certificates()) {
    auto kind = c->name();
    if (!kind)
      throw ParseError("certificate without a kind", c->line, c->column);
    if (!certificate_kinds().count(*kind))
      throw ParseError("unknown certificate kind '" + *kind + "'", c->line, c->column);
    auto why = c->get_text("why");
    if (!why || trimmed(*why).empty())
      throw UnanchoredCertificate(where(n) + ": certificate '" + *kind +
                                  "' has no reason");
    out[*kind] = *why;
  }
  return out;
}

inline void check_keys(const RecipeNode &n, std::initializer_list<const char *> extra) {
  static const std::set<std::string> common = {"", "e", "sigma", "b1", "attest",
                                               "group", "child"};
  for (const auto &a : n.args) {
    if (common.count(a.key))
      continue;
    bool ok = std::any_of(extra.begin(), extra.end(),
                          [&](const char *k) { return a.key == k; });
    if (!ok)
      throw ParseError("unexpected argument '" + a.key + "' for " + n.head,
                       n.line, n.column);
  }
  for (const auto &a : n.args)
    if (a.key == "attest" &&
        (a.value.kind != Value::Kind::Node || a.value.node->head != "Cert"))
      throw ParseError("attest= needs Cert(...)", n.line, n.column);
}

inline Verdict from_minimality(Minimality m, const std::string &why) {
  switch (m) {
  case Minimality::Minimal:
    return Verdict::yes(why);
  case Minimality::NotMinimal:
    return Verdict::no(why);
  default:
    return Verdict::unknown(why);
  }
}

inline std::optional<bool> as_bool(const Verdict &v) {
  if (v.is_yes())
    return true;
  if (v.is_no())
    return false;
  return std::nullopt;
}

class Folder {
public:
  explicit Folder(ValidationOptions opt) : opt_(opt) {}

  std::vector<std::string> trail;
  std::size_t nodes = 0;

  Folded fold(const RecipeNode &n) {
    ++nodes;
    Certs certs = read_certs(n);
    std::vector<Folded> kids;
    for (const auto &c : n.children())
      kids.push_back(fold(*c));
    std::vector<std::string> notes;
    Folded f = dispatch(n, certs, kids, notes);
    finish(n, certs, f, notes);
    return f;
  }

private:
  ValidationOptions opt_;

  static void arity(const RecipeNode &n, const std::vector<Folded> &kids,
                    std::size_t lo, std::size_t hi) {
    if (kids.size() < lo || kids.size() > hi)
      throw ParseError(n.head + " takes " +
                           (lo == hi ? std::to_string(lo)
                                     : std::to_string(lo) + " or more") +
                           " children, got " + std::to_string(kids.size()),
                       n.line, n.column);
  }

  void set_pi1_from_model(Folded &f, std::vector<std::string> &notes) {
    f.d.pi1 = identify_pi1(f.model->group, opt_.coset_cap, true);
    notes.push_back("pi1 from surgery model: " + to_string(f.d.pi1));
  }

  Folded dispatch(const RecipeNode &n, const Certs &certs,
                  const std::vector<Folded> &kids, std::vector<std::string> &notes) {
    const std::string &h = n.head;
    if (h == "Block")
      return block(n, kids, notes);
    if (h == "FiberSum")
      return fiber_sum(n, certs, kids, notes);
    if (h == "Luttinger" || h == "TorusSurgery")
      return surgery(n, kids, notes);
    if (h == "BlowUp")
      return blow_up(n, kids, notes);
    if (h == "Z2Construction" || h == "Z2")
      return z2(n, certs, kids, notes);
    if (h == "FiberReversingDouble")
      return reversing_double(n, certs, kids, notes);
    if (h == "LanternSub")
      return lantern(n, certs, kids, notes);
    if (h == "Quotient")
      return quotient(n, kids, notes);
    if (h == "OrientationReversal")
      return reversal(n, kids, notes);
    if (h == "ExternalReference")
      throw RuleNotApplicable(where(n) + ": an external reference has no construction to fold");
    throw ParseError("unknown node '" + h + "'", n.line, n.column);
  }

  Folded block(const RecipeNode &n, const std::vector<Folded> &kids,
               std::vector<std::string> &notes) {
    check_keys(n, {"k", "g"});
    arity(n, kids, 0, 0);
    auto name = n.name();
    if (!name)
      throw ParseError("Block needs a name", n.line, n.column);
    auto info = block_info(*name, n.get_int("k"), n.get_int("g"));
    Folded f;
    if (info.definition) {
      f = fold(*info.definition);
      notes.push_back("composite: " + info.note);
    } else {
      f.d.chars = *info.chars;
      f.d.symplectic = info.symplectic;
      notes.push_back(info.note);
    }
    if (info.pi1) {
      f.d.pi1 = *info.pi1;
      notes.push_back("pi1 " + to_string(*info.pi1) + ": " + info.pi1_reason);
    }
    if (info.minimal.state != Verdict::State::Unknown)
      f.d.minimal = info.minimal;
    if (info.parity != Parity::Unknown) {
      f.d.parity = info.parity;
      notes.push_back(to_string(info.parity) + ": " + info.parity_reason);
    }
    f.model = info.model;
    if (f.model && !info.pi1) {
      f.d.pi1 = identify_pi1(f.model->group, opt_.coset_cap, true);
      notes.push_back("pi1 " + to_string(f.d.pi1) + " carried by the tori");
    }
    f.telescoping = info.telescoping;
    f.kills_torus = info.kills_torus;
    f.sphere_bundle = info.sphere_bundle;
    f.lf_genus = info.lf_genus;
    f.d.symplectic = info.symplectic;
    return f;
  }

  Folded fiber_sum(const RecipeNode &n, const Certs &certs,
                   const std::vector<Folded> &kids, std::vector<std::string> &notes) {
    check_keys(n, {"genus", "along", "note"});
    arity(n, kids, 2, 64);
    i64 genus = n.require_int("genus");
    bool relmin = certs.count("relmin") > 0;
    Folded acc = kids[0];
    for (std::size_t i = 1; i < kids.size(); ++i) {
      const Folded &b = kids[i];
      FiberSumMeta meta;
      meta.genus = genus;
      auto no_sphere = [&](const Folded &x) -> std::optional<bool> {
        if (relmin || x.d.minimal.is_yes())
          return false;
        return std::nullopt;
      };
      meta.left_minus_one_sphere = no_sphere(acc);
      meta.right_minus_one_sphere = no_sphere(b);
      meta.left_sphere_bundle = acc.sphere_bundle;
      meta.right_sphere_bundle = b.sphere_bundle;
      meta.left_minimal = as_bool(acc.d.minimal);
      meta.right_minimal = as_bool(b.d.minimal);
      auto m = usher_minimality(meta);
      acc.d.chars = fiber_sum_chars(acc.d.chars, b.d.chars, genus);
      acc.d.minimal = from_minimality(m, "Usher: symplectic sum along genus " +
                                             std::to_string(genus) +
                                             (relmin ? " of relatively minimal pieces"
                                                     : " of minimal pieces"));
      acc.d.symplectic = acc.d.symplectic && b.d.symplectic;
      acc.sphere_bundle = false;
    }
    Folded f;
    f.d.chars = acc.d.chars;
    f.d.minimal = acc.d.minimal;
    f.d.symplectic = acc.d.symplectic;
    notes.push_back("minimality " + to_string(f.d.minimal) + " (" + f.d.minimal.reason + ")");

    auto along = n.get_text("along");
    bool all_tele = std::all_of(kids.begin(), kids.end(),
                                [](const Folded &k) { return k.telescoping; });
    if (certs.count("telescoping")) {
      f.model = blocks_detail::telescoping_model();
      f.telescoping = true;
      notes.push_back("telescoping pair attested");
    } else if (along) {
      const Folded *carrier = nullptr;
      for (const auto &k : kids) {
        if (k.model && k.model->tori.count(*along)) {
          if (carrier)
            throw InvariantMismatch(where(n) + ": torus " + *along +
                                    " appears in two summands");
          carrier = &k;
        }
      }
      if (!carrier)
        throw ParamOutOfRange(where(n) + ": no summand carries torus " + *along);
      bool others_kill = std::all_of(kids.begin(), kids.end(), [&](const Folded &k) {
        return &k == carrier || k.kills_torus;
      });
      if (others_kill) {
        f.model = carrier->model;
        f.model->group.add_relator(f.model->group.gen(f.model->tori.at(*along)));
        f.model->tori.erase(*along);
        notes.push_back("sum along " + *along + " kills its push-off");
      }
    } else if (all_tele && genus == 1) {
      f.model = blocks_detail::telescoping_model();
      f.telescoping = true;
      notes.push_back("torus sum of telescoping pieces is telescoping");
    } else if (std::all_of(kids.begin(), kids.end(),
                           [](const Folded &k) { return k.d.pi1 == Pi1Class::trivial(); }) &&
               std::any_of(kids.begin(), kids.end(),
                           [](const Folded &k) { return k.kills_torus; })) {
      f.d.pi1 = Pi1Class::trivial();
      notes.push_back("simply connected pieces, one with simply connected surface complement");
    }
    if (f.model)
      set_pi1_from_model(f, notes);
    return f;
  }

  Folded surgery(const RecipeNode &n, const std::vector<Folded> &kids,
                 std::vector<std::string> &notes) {
    bool lutt = n.head == "Luttinger";
    if (lutt)
      check_keys(n, {"count", "coeff", "torus", "curve"});
    else
      check_keys(n, {"p", "q", "torus", "curve"});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    Folded f;
    f.d.chars = surgery_chars(c.d.chars);
    i64 count = lutt ? n.int_or("count", 1) : 1;
    if (count < 1)
      throw ParamOutOfRange(where(n) + ": count must be positive");
    if (lutt) {
      f.d.symplectic = c.d.symplectic;
      if (c.d.minimal.is_yes())
        f.d.minimal = Verdict::yes("Luttinger surgery preserves minimality");
    }
    auto torus = n.get_text("torus");
    if (!torus)
      return f;
    if (count != 1)
      throw ParamOutOfRange(where(n) + ": a named torus takes one surgery");
    if (!c.model || !c.model->tori.count(*torus))
      throw ParamOutOfRange(where(n) + ": torus " + *torus + " is not available");
    i64 q = 0;
    if (lutt) {
      Rational r = n.get_rational("coeff").value_or(Rational(1));
      if (r == Rational(0) || (r.numerator() != 1 && r.numerator() != -1))
        throw ParamOutOfRange(where(n) + ": Luttinger coefficient must be 1/q");
      q = r.denominator() * r.numerator();
    } else {
      q = n.require_int("q");
    }
    f.model = c.model;
    f.model->group.add_relator(power(f.model->group.gen(f.model->tori.at(*torus)), q));
    f.model->tori.erase(*torus);
    notes.push_back("surgery on " + *torus + " adds lambda^" + std::to_string(q));
    set_pi1_from_model(f, notes);
    return f;
  }

  Folded blow_up(const RecipeNode &n, const std::vector<Folded> &kids,
                 std::vector<std::string> &notes) {
    check_keys(n, {"count"});
    arity(n, kids, 1, 1);
    i64 count = n.require_int("count");
    Folded f = kids[0];
    f.d.chars = blow_up_chars(f.d.chars, count);
    if (count > 0) {
      f.d.parity = Parity::Odd;
      f.d.minimal = Verdict::no("contains an exceptional sphere");
      f.sphere_bundle = false;
      notes.push_back("exceptional sphere: odd, not minimal");
    }
    f.d.irreducible = Verdict::unknown();
    return f;
  }

  Folded z2(const RecipeNode &n, const Certs &certs, const std::vector<Folded> &kids,
            std::vector<std::string> &notes) {
    check_keys(n, {"g", "genus"});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    i64 g = n.has("g") ? n.require_int("g") : n.require_int("genus");
    Folded f;
    f.d.chars = z2_table_chars(c.d.chars, g, Z2Kind::Z2Construction);
    if (auto grp = n.get_text("group")) {
      auto r = run_group_check(*grp, opt_.coset_cap);
      if (!r.ok)
        throw InvariantMismatch(where(n) + ": group check " + *grp + " failed: " + r.detail);
      if (r.pi1 != Pi1Class::trivial())
        throw InvariantMismatch(where(n) + ": group check " + *grp +
                                " does not give a simply connected complement");
      f.d.pi1 = Pi1Class::z2();
      notes.push_back("pi1 Z2: surface complement simply connected (" + *grp + ")");
    } else if (c.d.pi1 == Pi1Class::trivial() && certs.count("meridian_trivial")) {
      f.d.pi1 = Pi1Class::z2();
      notes.push_back("pi1 Z2: simply connected with trivial meridian");
    }
    bool relmin = c.d.minimal.is_yes() || certs.count("relmin");
    if (g >= 1 && c.d.symplectic && relmin) {
      f.d.irreducible = Verdict::yes(
          "Z2-construction along genus " + std::to_string(g) +
          " of a relatively minimal symplectic pair; its double cover is minimal");
      notes.push_back(f.d.irreducible.reason);
    }
    return f;
  }

  Folded reversing_double(const RecipeNode &n, const Certs &certs,
                          const std::vector<Folded> &kids, std::vector<std::string> &notes) {
    check_keys(n, {"g"});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    i64 g = n.require_int("g");
    if (c.lf_genus != g)
      throw ParamOutOfRange(where(n) + ": child is not a genus-" + std::to_string(g) +
                            " Lefschetz fibration");
    Folded f;
    f.d.chars = z2_table_chars(c.d.chars, g, Z2Kind::Double);
    f.lf_genus = g;
    f.d.symplectic = true;
    f.free_involution = certs.count("involution") > 0;
    notes.push_back(f.free_involution ? "free involution attested"
                                      : "no involution attested");
    return f;
  }

  Folded lantern(const RecipeNode &n, const Certs &certs,
                 const std::vector<Folded> &kids, std::vector<std::string> &notes) {
    check_keys(n, {"count"});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    if (c.lf_genus < 1)
      throw ParamOutOfRange(where(n) + ": lantern substitution needs a Lefschetz fibration");
    Folded f;
    f.d.chars = lantern_chars(c.d.chars, n.require_int("count"));
    f.lf_genus = c.lf_genus;
    f.d.symplectic = c.d.symplectic;
    f.free_involution = c.free_involution && certs.count("involution") > 0;
    notes.push_back("e - count, sigma + count");
    return f;
  }

  Folded quotient(const RecipeNode &n, const std::vector<Folded> &kids,
                  std::vector<std::string> &notes) {
    check_keys(n, {"g"});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    if (!c.free_involution)
      throw RuleNotApplicable(where(n) + ": no attested free involution");
    Folded f;
    f.d.chars = z2_table_chars(c.d.chars, n.int_or("g", 0), Z2Kind::Quotient);
    if (c.d.pi1 == Pi1Class::trivial()) {
      f.d.pi1 = Pi1Class::z2();
      notes.push_back("pi1 Z2: free quotient of a simply connected manifold");
    }
    if (c.d.minimal.is_yes() && c.d.symplectic) {
      f.d.irreducible =
          Verdict::yes("double cover is minimal symplectic with trivial pi1");
      notes.push_back(f.d.irreducible.reason);
    }
    return f;
  }

  Folded reversal(const RecipeNode &n, const std::vector<Folded> &kids,
                  std::vector<std::string> &notes) {
    check_keys(n, {});
    arity(n, kids, 1, 1);
    const Folded &c = kids[0];
    Folded f;
    f.d.chars = reverse_orientation_chars(c.d.chars);
    f.d.pi1 = c.d.pi1;
    f.d.parity = c.d.parity;
    f.d.orientation = c.d.orientation == Orientation::Standard ? Orientation::Reversed
                                                               : Orientation::Standard;
    if (c.d.irreducible.is_yes())
      f.d.irreducible = Verdict::yes("orientation reversal preserves irreducibility; " +
                                     c.d.irreducible.reason);
    notes.push_back("sigma negated");
    if (f.d.irreducible.is_yes())
      notes.push_back("irreducible: orientation reversal preserves irreducibility");
    return f;
  }

  void finish(const RecipeNode &n, const Certs &certs, Folded &f,
              std::vector<std::string> &notes) {
    bool z2node = n.head == "Z2Construction" || n.head == "Z2";
    if (!z2node) {
      if (auto grp = n.get_text("group")) {
        auto r = run_group_check(*grp, opt_.coset_cap);
        if (!r.ok)
          throw InvariantMismatch(where(n) + ": group check " + *grp + " failed: " + r.detail);
        f.d.pi1 = r.pi1;
        f.model.reset();
        notes.push_back("pi1 " + to_string(r.pi1) + " by group check " + *grp);
      }
    }
    auto attest_pi1 = [&](const char *kind, const Pi1Class &p) {
      auto it = certs.find(kind);
      if (it == certs.end())
        return;
      if (f.d.pi1.kind != Pi1Kind::Unknown && f.d.pi1 != p)
        throw InvariantMismatch(where(n) + ": attested pi1 " + to_string(p) +
                                " contradicts folded " + to_string(f.d.pi1));
      f.d.pi1 = p;
      notes.push_back("pi1 " + to_string(p) + " attested: " + it->second);
    };
    attest_pi1("pi1_trivial", Pi1Class::trivial());
    attest_pi1("pi1_z2", Pi1Class::z2());
    if (auto it = certs.find("minimal"); it != certs.end()) {
      if (f.d.minimal.is_no())
        throw InvariantMismatch(where(n) + ": minimality attested but folded as not minimal");
      f.d.minimal = Verdict::yes(it->second);
    }
    if (auto it = certs.find("symplectic"); it != certs.end())
      f.d.symplectic = true;
    if (auto it = certs.find("odd"); it != certs.end()) {
      if (f.d.parity == Parity::Even)
        throw InvariantMismatch(where(n) + ": odd form attested on an even manifold");
      f.d.parity = Parity::Odd;
      notes.push_back("odd: " + it->second);
    }
    if (auto b1 = f.d.pi1.b1())
      f.d.chars = with_b1(f.d.chars, *b1);
    if (f.d.parity == Parity::Unknown && f.d.chars.sigma % 8 != 0) {
      f.d.parity = Parity::Odd;
      notes.push_back("odd: even forms have signature divisible by 8");
    }
    if (f.d.parity == Parity::Unknown && f.d.pi1 == Pi1Class::trivial() &&
        f.d.chars.sigma % 16 != 0)
      notes.push_back("odd: Rokhlin");
    f.d = apply_rules(f.d);
    if (f.d.irreducible.state == Verdict::State::Unknown && f.d.minimal.is_yes() &&
        f.d.symplectic && f.d.pi1.residually_finite_known()) {
      f.d = hk_irreducible(f.d);
      notes.push_back("irreducible: " + f.d.irreducible.reason);
    }
    expect(n, f.d.chars);
    std::string line = where(n) + ": e=" + std::to_string(f.d.chars.e) +
                       " sigma=" + std::to_string(f.d.chars.sigma) +
                       " pi1=" + to_string(f.d.pi1);
    for (const auto &s : notes)
      line += "; " + s;
    trail.push_back(std::move(line));
  }

  static void expect(const RecipeNode &n, const CharNumbers &got) {
    auto e = n.get_int("e");
    auto s = n.get_int("sigma");
    if (!e || !s)
      throw InvariantMismatch(where(n) + ": missing expected e= and sigma=");
    if (*e != got.e || *s != got.sigma)
      throw InvariantMismatch(where(n) + ": expected (e, sigma) = (" +
                              std::to_string(*e) + ", " + std::to_string(*s) +
                              "), folded (" + std::to_string(got.e) + ", " +
                              std::to_string(got.sigma) + ")");
    if (auto b1 = n.get_int("b1"); b1 && (!got.b1 || *got.b1 != *b1))
      throw InvariantMismatch(where(n) + ": expected b1 = " + std::to_string(*b1) +
                              ", folded " + (got.b1 ? std::to_string(*got.b1) : "unknown"));
  }
};

} // namespace validate_detail

/// Folds a recipe bottom-up, checking every node's expected numbers.
inline ValidationReport validate_report(const Recipe &r, ValidationOptions opt = {}) {
  if (!r.root)
    throw ParseError("empty recipe", 0, 0);
  validate_detail::Folder folder(opt);
  auto f = folder.fold(*r.root);
  return {f.d, std::move(folder.trail), folder.nodes};
}

inline ManifoldDescriptor validate(const Recipe &r, ValidationOptions opt = {}) {
  return validate_report(r, opt).descriptor;
}

/// Invariants of a catalog block, folded from its definition when composite.
inline CharNumbers block_chars(const std::string &name, std::optional<i64> k = {},
                               std::optional<i64> g = {}) {
  auto info = block_info(name, k, g);
  if (info.chars)
    return *info.chars;
  validate_detail::Folder folder({});
  auto f = folder.fold(*info.definition);
  if (info.pi1 && info.pi1->b1())
    return with_b1(f.d.chars, *info.pi1->b1());
  return f.d.chars;
}

} // namespace geo4
