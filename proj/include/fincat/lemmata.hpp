#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "fincat/classes.hpp"
#include "fincat/limits.hpp"

namespace fincat {

/// The six-object two-square diagram:
///
///        top1      top2
///     A -----> B -----> C
///     |        |        |
///   vert_a   vert_b   vert_c
///     v        v        v
///     X -----> Y -----> Z
///        e       bottom2
///
/// Both inner squares commute; the outer square is derived.
struct OplDiagram {
  int top1 = -1, top2 = -1;
  int e = -1, bottom2 = -1;
  int vert_a = -1, vert_b = -1, vert_c = -1;

  json describe(const FinCategory& C) const {
    auto obj = [&](int m, bool domside) {
      return C.object_id(domside ? C.dom(m) : C.cod(m));
    };
    return json{{"objects",
                 {{"A", obj(top1, true)},
                  {"B", obj(top2, true)},
                  {"C", obj(top2, false)},
                  {"X", obj(e, true)},
                  {"Y", obj(e, false)},
                  {"Z", obj(bottom2, false)}}},
                {"top1", C.morphism_id(top1)},
                {"top2", C.morphism_id(top2)},
                {"bottom1", C.morphism_id(e)},
                {"bottom2", C.morphism_id(bottom2)},
                {"vert_a", C.morphism_id(vert_a)},
                {"vert_b", C.morphism_id(vert_b)},
                {"vert_c", C.morphism_id(vert_c)}};
  }
};

struct OplOutcome {
  CheckResult result;
  std::optional<OplDiagram> witness;
};

/// Decides the other-pullback-lemma property along e: does every diagram
/// with pullback left and outer squares have a pullback right square?
///
/// For each edge b: B -> Y it suffices to test the canonical pullback of
/// (b, e) as the left square: any other left pullback square differs from
/// it by an apex isomorphism, which changes neither the outer square's
/// pullback property nor the right square. A missing pullback of some
/// (b, e) leaves that family untestable, so Holds degrades to Inconclusive.
///
/// Among failing diagrams the minimal one is reported, ordered by total
/// object size and then by the canonical indices of (b, bottom2, top2, c).
inline OplOutcome check_opl_along(Workbench& wb, int e) {
  const FinCategory& C = wb.C;
  require(e >= 0 && e < C.morphism_count(), Errc::UnknownMorphism, std::to_string(e));
  const int Y = C.cod(e);

  bool gap = false;
  std::optional<std::tuple<int, int, int, int, int>> best_key;
  OplDiagram best;

  for (int b : C.into(Y)) {
    const auto& left = wb.pullback(Cospan{b, e});
    if (!left) {
      gap = true;
      continue;
    }
    const int top1 = left->top, vert_a = left->left;
    const int szA = wb.object_size(C.dom(top1));
    const int szB = wb.object_size(C.dom(b));
    for (int b2 : C.out_of(Y)) {
      const int w = C.compose(b2, b);
      const int szZ = wb.object_size(C.cod(b2));
      for (auto [top2, c] : wb.decompositions(w)) {
        Square right{top2, c, b2, b};
        if (wb.is_pullback(right)) continue;
        Square outer{C.compose(top2, top1), c, C.compose(b2, e), vert_a};
        if (!wb.is_pullback(outer)) continue;
        const int total = szA + szB + wb.object_size(C.dom(c)) + szZ +
                          wb.object_size(C.dom(e)) + wb.object_size(Y);
        std::tuple<int, int, int, int, int> key{total, b, b2, top2, c};
        if (!best_key || key < *best_key) {
          best_key = key;
          best = OplDiagram{top1, top2, e, b2, vert_a, b, c};
        }
      }
    }
  }

  if (best_key) {
    OplOutcome out;
    out.witness = best;
    json w = best.describe(C);
    w["kind"] = "opl";
    w["total_size"] = std::get<0>(*best_key);
    out.result = CheckResult::make_fails(std::move(w));
    return out;
  }
  if (gap)
    return {CheckResult::make_inconclusive("a pullback along the morphism is not representable"),
            std::nullopt};
  return {CheckResult::make_holds(), std::nullopt};
}

inline OplOutcome check_opl_along(Workbench& wb, std::string_view e) {
  return check_opl_along(wb, wb.C.require_morphism(e));
}

namespace detail {

/// Every pullback square of the category, grouped by the chosen edge.
/// Enumerated per cospan from the canonical pullback and its iso twists,
/// which avoids walking the (much larger) set of all commuting squares.
inline std::vector<std::vector<Square>> pullback_squares_by(
    Workbench& wb, bool by_left_vertical) {
  const FinCategory& C = wb.C;
  std::vector<std::vector<Square>> grouped(C.morphism_count());
  for (int r = 0; r < C.morphism_count(); ++r)
    for (int b : C.into(C.cod(r)))
      for (const Square& s : wb.pullback_squares(Cospan{r, b}))
        grouped[by_left_vertical ? s.left : s.right].push_back(s);
  return grouped;
}

}  // namespace detail

/// Soundness sweep for "pullbacks compose": every horizontally composable
/// pair of pullback squares must compose to a pullback square. Returns the
/// violations (expected empty; this is a self-test of is_pullback).
inline std::vector<json> verify_composition_lemma(Workbench& wb) {
  const FinCategory& C = wb.C;
  std::vector<json> violations;
  auto pb_by_left = detail::pullback_squares_by(wb, true);

  std::vector<std::vector<Square>> pb_by_right(C.morphism_count());
  for (const auto& bucket : pb_by_left)
    for (const Square& s : bucket) pb_by_right[s.right].push_back(s);

  // squares with right edge v compose with squares whose left edge is v
  for (int v = 0; v < C.morphism_count(); ++v)
    for (const Square& s1 : pb_by_right[v])
      for (const Square& s2 : pb_by_left[v]) {
        Square comp{C.compose(s2.top, s1.top), s2.right, C.compose(s2.bottom, s1.bottom),
                    s1.left};
        if (!wb.is_pullback(comp))
          violations.push_back(json{{"kind", "composition_lemma"},
                                    {"left_square", describe_square(C, s1)},
                                    {"right_square", describe_square(C, s2)},
                                    {"composite", describe_square(C, comp)}});
      }
  return violations;
}

/// Soundness sweep for the cancellation lemma: outer pullback + right
/// pullback implies left pullback. Candidate left squares are recovered
/// backwards from the canonical pullback of the outer cospan, so only
/// configurations that could violate the lemma are ever materialized.
/// Returns violations (expected empty).
inline std::vector<json> verify_cancellation_lemma(Workbench& wb) {
  const FinCategory& C = wb.C;
  std::vector<json> violations;
  auto pb_by_left = detail::pullback_squares_by(wb, true);

  for (int v = 0; v < C.morphism_count(); ++v) {
    for (const Square& s2 : pb_by_left[v]) {
      const int Y1 = C.dom(s2.bottom);
      for (int b1 : C.into(Y1)) {
        const auto& outer_pb = wb.pullback(Cospan{s2.right, C.compose(s2.bottom, b1)});
        if (!outer_pb) continue;
        const int A0 = C.dom(outer_pb->top);
        for (int A = 0; A < C.object_count(); ++A) {
          for (int phi : wb.isos_between(A, A0)) {
            const int T = C.compose(outer_pb->top, phi);
            const int L = C.compose(outer_pb->left, phi);
            for (int t1 : wb.precomp_bucket(s2.top, A, T)) {
              Square s1{t1, s2.left, b1, L};
              if (C.compose(s2.left, t1) != C.compose(b1, L)) continue;
              if (!wb.is_pullback(s1))
                violations.push_back(json{{"kind", "cancellation_lemma"},
                                          {"outer_cospan",
                                           {C.morphism_id(s2.right),
                                            C.morphism_id(C.compose(s2.bottom, b1))}},
                                          {"right_square", describe_square(C, s2)},
                                          {"left_square", describe_square(C, s1)}});
            }
          }
        }
      }
    }
  }
  return violations;
}

/// The three equivalent conditions on a morphism, each decided
/// independently, plus whether the definitive ones coincide.
struct Theorem1Report {
  int e = -1;
  CheckResult opl;
  CheckResult strong_stable;
  CheckResult extremal_stable;
  bool agreement = true;

  json describe(const FinCategory& C) const {
    auto one = [](const CheckResult& r) {
      json j;
      j["verdict"] = to_string(r.verdict);
      if (!r.witness.is_null()) j["witness"] = r.witness;
      if (!r.note.empty()) j["note"] = r.note;
      return j;
    };
    return json{{"morphism", C.morphism_id(e)},
                {"opl", one(opl)},
                {"strong_and_stable", one(strong_stable)},
                {"extremal_and_stable", one(extremal_stable)},
                {"agreement", agreement}};
  }
};

namespace detail {

inline CheckResult conjoin(const CheckResult& cls, const CheckResult& stab) {
  if (cls.fails()) return cls;
  if (stab.fails()) return stab;
  if (cls.holds() && stab.holds()) return CheckResult::make_holds();
  return CheckResult::make_inconclusive(!cls.definitive() ? cls.note : stab.note);
}

}  // namespace detail

inline Theorem1Report verify_theorem1(Classifier& cl, int e) {
  Theorem1Report rep;
  rep.e = e;
  rep.opl = check_opl_along(cl.wb(), e).result;

  const auto& flags = cl.classify(e);
  rep.strong_stable = detail::conjoin(flags.strong, cl.is_stable(e, MorClass::Strong).result);
  rep.extremal_stable =
      detail::conjoin(flags.extremal, cl.is_stable(e, MorClass::Extremal).result);

  std::vector<Verdict> definitive;
  for (const CheckResult* r : {&rep.opl, &rep.strong_stable, &rep.extremal_stable})
    if (r->definitive()) definitive.push_back(r->verdict);
  rep.agreement = true;
  for (size_t i = 1; i < definitive.size(); ++i)
    if (definitive[i] != definitive[0]) rep.agreement = false;
  return rep;
}

inline Theorem1Report verify_theorem1(Classifier& cl, std::string_view e) {
  return verify_theorem1(cl, cl.C().require_morphism(e));
}

}  // namespace fincat
