#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "fincat/limits.hpp"

namespace fincat {

/// Tri-state flags for the morphism classes of interest. Definitive
/// failures carry witnesses naming the morphisms involved.
struct ClassFlags {
  CheckResult mono, epi, split_epi, iso, extremal, strong, regular_epi;

  json describe() const {
    auto one = [](const CheckResult& r) {
      json j;
      j["verdict"] = to_string(r.verdict);
      if (!r.witness.is_null()) j["witness"] = r.witness;
      if (!r.note.empty()) j["note"] = r.note;
      return j;
    };
    return json{{"mono", one(mono)},         {"epi", one(epi)},
                {"split_epi", one(split_epi)}, {"iso", one(iso)},
                {"extremal", one(extremal)},  {"strong", one(strong)},
                {"regular_epi", one(regular_epi)}};
  }
};

enum class MorClass { Epi, Extremal, Strong, RegularEpi };

inline const char* to_string(MorClass c) {
  switch (c) {
    case MorClass::Epi: return "epi";
    case MorClass::Extremal: return "extremal";
    case MorClass::Strong: return "strong";
    case MorClass::RegularEpi: return "regular_epi";
  }
  return "?";
}

inline std::optional<MorClass> mor_class_from(std::string_view s) {
  if (s == "epi") return MorClass::Epi;
  if (s == "extremal") return MorClass::Extremal;
  if (s == "strong") return MorClass::Strong;
  if (s == "regular_epi" || s == "regular-epi") return MorClass::RegularEpi;
  return std::nullopt;
}

/// Pullback-stability verdict for one morphism and one class.
struct StabilityReport {
  MorClass mor_class = MorClass::Epi;
  CheckResult result;

  json describe() const {
    json j;
    j["class"] = to_string(mor_class);
    j["verdict"] = to_string(result.verdict);
    if (!result.witness.is_null()) j["witness"] = result.witness;
    if (!result.note.empty()) j["note"] = result.note;
    return j;
  }
};

/// Morphism classification over one category window. Owns the Workbench
/// and memoizes per-morphism flags; single-threaded like the Workbench.
class Classifier {
 public:
  explicit Classifier(const FinCategory& cat, std::vector<int> sizes = {}, int test_bound = 0)
      : wb_(cat, std::move(sizes), test_bound) {}

  Workbench& wb() { return wb_; }
  const FinCategory& C() const { return wb_.C; }

  /// Unique-diagonal orthogonality e down the left of every commutative
  /// square against m. Exact inside the window.
  CheckResult is_orthogonal(int e, int m) {
    const FinCategory& C = wb_.C;
    const int X = C.dom(e), Y = C.cod(e), A = C.dom(m), B = C.cod(m);
    // bucket hom(Y, B) by precomposition with e, hom(Y, A) likewise
    std::unordered_map<int, std::vector<int>> g_by_comp, d_by_comp;
    for (int g : C.hom(Y, B)) g_by_comp[C.compose(g, e)].push_back(g);
    for (int d : C.hom(Y, A)) d_by_comp[C.compose(d, e)].push_back(d);
    for (int u : C.hom(X, A)) {
      auto gs = g_by_comp.find(C.compose(m, u));
      if (gs == g_by_comp.end()) continue;
      auto ds = d_by_comp.find(u);
      for (int g : gs->second) {
        int count = 0;
        if (ds != d_by_comp.end())
          for (int d : ds->second)
            if (C.compose(m, d) == g) ++count;
        if (count != 1)
          return CheckResult::make_fails(json{{"kind", "orthogonality"},
                                              {"e", C.morphism_id(e)},
                                              {"m", C.morphism_id(m)},
                                              {"f", C.morphism_id(u)},
                                              {"g", C.morphism_id(g)},
                                              {"diagonals", count}});
      }
    }
    return CheckResult::make_holds();
  }

  const ClassFlags& classify(int f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    require(f >= 0 && f < wb_.C.morphism_count(), Errc::UnknownMorphism, std::to_string(f));
    ClassFlags flags;
    flags.mono = check_mono(f);
    flags.epi = check_epi(f);
    flags.split_epi = check_split_epi(f);
    flags.iso = wb_.iso(f) ? CheckResult::make_holds()
                           : CheckResult::make_fails(json{{"kind", "iso"},
                                                          {"morphism", wb_.C.morphism_id(f)},
                                                          {"reason", "no two-sided inverse"}});
    flags.extremal = check_extremal(f);
    flags.strong = check_strong(f);
    if (wb_.bounded())
      flags.strong.note =
          "window of a concrete category with all pullbacks: there strong = extremal";
    flags.regular_epi = check_regular_epi(f);
    return memo_.emplace(f, std::move(flags)).first->second;
  }

  const ClassFlags& classify(std::string_view id) {
    return classify(wb_.C.require_morphism(id));
  }

  /// Strong via the ambient equivalence with extremal (valid when every
  /// pullback needed by the diagonal construction exists).
  CheckResult strong_via_extremal(int f) {
    CheckResult r = classify(f).extremal;
    r.note = "decided via extremality";
    return r;
  }

  /// Pullback-stability of a class along every cospan available in the
  /// window. Fails is definitive; Holds requires every pullback present.
  StabilityReport is_stable(int f, MorClass cls) {
    const FinCategory& C = wb_.C;
    StabilityReport rep{cls, {}};
    bool gap = false;
    for (int g : C.into(C.cod(f))) {
      const auto& pb = wb_.pullback(Cospan{f, g});
      if (!pb) {
        gap = true;
        continue;
      }
      int pulled = pb->left;  // the leg over g
      CheckResult c = check_class(pulled, cls);
      if (c.verdict == Verdict::Inconclusive) {
        gap = true;
        continue;
      }
      if (c.fails()) {
        rep.result = CheckResult::make_fails(json{{"kind", "stability"},
                                                  {"class", to_string(cls)},
                                                  {"morphism", C.morphism_id(f)},
                                                  {"along", C.morphism_id(g)},
                                                  {"pulled_back", C.morphism_id(pulled)},
                                                  {"square", describe_square(C, *pb)},
                                                  {"class_witness", c.witness}});
        return rep;
      }
    }
    rep.result = gap ? CheckResult::make_inconclusive("some pullback along the morphism is missing")
                     : CheckResult::make_holds();
    return rep;
  }

  CheckResult check_class(int f, MorClass cls) {
    switch (cls) {
      case MorClass::Epi: return classify(f).epi;
      case MorClass::Extremal: return classify(f).extremal;
      case MorClass::Strong: return classify(f).strong;
      case MorClass::RegularEpi: return classify(f).regular_epi;
    }
    return CheckResult::make_inconclusive("unknown class");
  }

  /// Monos of the window, canonical order (memoized; used by strong).
  const std::vector<int>& monos() {
    if (!monos_done_) {
      for (int m = 0; m < wb_.C.morphism_count(); ++m)
        if (wb_.mono(m)) monos_.push_back(m);
      monos_done_ = true;
    }
    return monos_;
  }

 private:
  CheckResult check_mono(int f) {
    const FinCategory& C = wb_.C;
    for (int W : wb_.test_objects()) {
      std::unordered_map<int, int> seen;
      for (int u : C.hom(W, C.dom(f))) {
        auto [it, fresh] = seen.emplace(C.compose(f, u), u);
        if (!fresh)
          return CheckResult::make_fails(json{{"kind", "mono"},
                                              {"morphism", C.morphism_id(f)},
                                              {"u", C.morphism_id(it->second)},
                                              {"v", C.morphism_id(u)}});
      }
    }
    return CheckResult::make_holds();
  }

  CheckResult check_epi(int f) {
    const FinCategory& C = wb_.C;
    for (int W : wb_.test_objects()) {
      std::unordered_map<int, int> seen;
      for (int u : C.hom(C.cod(f), W)) {
        auto [it, fresh] = seen.emplace(C.compose(u, f), u);
        if (!fresh)
          return CheckResult::make_fails(json{{"kind", "epi"},
                                              {"morphism", C.morphism_id(f)},
                                              {"u", C.morphism_id(it->second)},
                                              {"v", C.morphism_id(u)}});
      }
    }
    return CheckResult::make_holds();
  }

  CheckResult check_split_epi(int f) {
    const FinCategory& C = wb_.C;
    for (int s : C.hom(C.cod(f), C.dom(f)))
      if (C.compose(f, s) == C.identity(C.cod(f)))
        return {Verdict::Holds, json{{"kind", "split_epi"}, {"section", C.morphism_id(s)}}, ""};
    return CheckResult::make_fails(
        json{{"kind", "split_epi"}, {"morphism", C.morphism_id(f)}, {"reason", "no section"}});
  }

  CheckResult check_extremal(int f) {
    const FinCategory& C = wb_.C;
    for (auto [h, m] : wb_.decompositions(f)) {
      if (!wb_.mono(m) || wb_.iso(m)) continue;
      return CheckResult::make_fails(json{{"kind", "extremal"},
                                          {"morphism", C.morphism_id(f)},
                                          {"factor", C.morphism_id(h)},
                                          {"through_mono", C.morphism_id(m)}});
    }
    return CheckResult::make_holds();
  }

  CheckResult check_strong(int f) {
    for (int m : monos()) {
      CheckResult orth = is_orthogonal(f, m);
      if (orth.fails()) {
        orth.witness["kind"] = "strong";
        return orth;
      }
    }
    return CheckResult::make_holds();
  }

  CheckResult check_regular_epi(int f) {
    const FinCategory& C = wb_.C;
    const int Y = C.cod(f);
    if (auto kp = wb_.kernel_pair(f)) {
      if (wb_.coequalizer_universal(kp->p1, kp->p2, f, Y))
        return {Verdict::Holds,
                json{{"kind", "regular_epi"},
                     {"coequalizes", {C.morphism_id(kp->p1), C.morphism_id(kp->p2)}}},
                ""};
      return CheckResult::make_fails(
          json{{"kind", "regular_epi"},
               {"morphism", C.morphism_id(f)},
               {"kernel_pair", {C.morphism_id(kp->p1), C.morphism_id(kp->p2)}},
               {"reason", "not universal for its kernel pair"}});
    }
    // Kernel pair not representable: look for any coequalized pair before
    // giving up. Existential search, so every window object may host it.
    for (int W = 0; W < C.object_count(); ++W) {
      for (int u : C.hom(W, C.dom(f)))
        for (int v : C.hom(W, C.dom(f))) {
          if (C.compose(f, u) != C.compose(f, v)) continue;
          if (wb_.coequalizer_universal(u, v, f, Y))
            return {Verdict::Holds,
                    json{{"kind", "regular_epi"},
                         {"coequalizes", {C.morphism_id(u), C.morphism_id(v)}}},
                    ""};
        }
    }
    return CheckResult::make_inconclusive(
        "kernel pair not representable and no coequalized pair found");
  }

  Workbench wb_;
  std::unordered_map<int, ClassFlags> memo_;
  std::vector<int> monos_;
  bool monos_done_ = false;
};

/// True when every cospan of the window has a pullback (used to decide
/// which conditional implications apply).
inline bool all_pullbacks_exist(Workbench& wb) {
  const FinCategory& C = wb.C;
  for (int r = 0; r < C.morphism_count(); ++r)
    for (int b = 0; b < C.morphism_count(); ++b) {
      if (C.cod(r) != C.cod(b)) continue;
      if (!wb.pullback(Cospan{r, b})) return false;
    }
  return true;
}

/// True when every parallel pair of the window has an equalizer.
inline bool all_equalizers_exist(Workbench& wb) {
  const FinCategory& C = wb.C;
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int g = 0; g < C.morphism_count(); ++g) {
      if (C.dom(f) != C.dom(g) || C.cod(f) != C.cod(g)) continue;
      if (!wb.equalizer(f, g)) return false;
    }
  return true;
}

}  // namespace fincat
