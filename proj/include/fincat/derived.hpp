#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/limits.hpp"

namespace fincat {

namespace defaults {
/// Commuting-square count above which arrow-category materialization is
/// refused with SizeLimit.
constexpr int kArrowSquareLimit = 50000;
}  // namespace defaults

/// Materialized arrow category Arr(C): objects are the morphisms of C,
/// morphisms are commuting squares (u, v) between them. Keeps the data
/// needed to map back and forth and to build the codomain projection.
struct ArrowCategory {
  FinCategory cat;
  std::vector<int> object_arrow;  // Arr object index -> C morphism index
  struct Sq {
    int u;  // component between domains
    int v;  // component between codomains
    int src;  // source arrow (C morphism index)
    int dst;  // target arrow
  };
  std::vector<Sq> squares;  // per Arr morphism index

  /// The codomain projection Arr(C) -> C. `base` must be the category this
  /// arrow category was built from.
  FunctorData cod_projection(const FinCategory& base) const {
    FunctorData F{&cat, &base, {}, {}};
    F.omap.reserve(object_arrow.size());
    for (int a : object_arrow) F.omap.push_back(base.cod(a));
    F.mmap.reserve(squares.size());
    for (const auto& s : squares) F.mmap.push_back(s.v);
    return F;
  }
};

/// Builds Arr(C) eagerly. Throws SizeLimit when the square count exceeds
/// the limit; arrow categories over hom-rich categories grow quadratically.
inline ArrowCategory arrow_category(const FinCategory& C,
                                    int square_limit = defaults::kArrowSquareLimit) {
  ArrowCategory A;
  const int nm = C.morphism_count();
  A.object_arrow.resize(nm);
  std::vector<std::string> objects(nm);
  for (int m = 0; m < nm; ++m) {
    A.object_arrow[m] = m;
    objects[m] = C.morphism_id(m);
  }

  // Enumerate commuting squares u: dom(a) -> dom(b), v: cod(a) -> cod(b)
  // with b o u = v o a, grouped by (a, b) in canonical order.
  std::vector<FinCategory::MorRec> mors;
  std::vector<int> identity(nm, -1);
  long long count = 0;
  for (int a = 0; a < nm; ++a) {
    for (int b = 0; b < nm; ++b) {
      std::unordered_map<int, std::vector<int>> v_by_comp;
      for (int v : C.hom(C.cod(a), C.cod(b))) v_by_comp[C.compose(v, a)].push_back(v);
      for (int u : C.hom(C.dom(a), C.dom(b))) {
        auto it = v_by_comp.find(C.compose(b, u));
        if (it == v_by_comp.end()) continue;
        for (int v : it->second) {
          if (++count > square_limit)
            fail(Errc::SizeLimit, "arrow category exceeds " + std::to_string(square_limit) +
                                      " squares over " + std::to_string(nm) + " arrows");
          std::string id = "[" + C.morphism_id(u) + "," + C.morphism_id(v) + "]:" +
                           C.morphism_id(a) + "=>" + C.morphism_id(b);
          if (a == b && u == C.identity(C.dom(a)) && v == C.identity(C.cod(a)))
            identity[a] = static_cast<int>(mors.size());
          mors.push_back({std::move(id), a, b});
          A.squares.push_back({u, v, a, b});
        }
      }
    }
  }

  // Composition is componentwise; index squares by (src, dst, u, v).
  std::unordered_map<uint64_t, std::vector<int>> by_src_dst;
  auto sd_key = [](int s, int d) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(s)) << 32) | static_cast<uint32_t>(d);
  };
  for (size_t i = 0; i < A.squares.size(); ++i)
    by_src_dst[sd_key(A.squares[i].src, A.squares[i].dst)].push_back(static_cast<int>(i));
  auto find_square = [&](int src, int dst, int u, int v) -> int {
    auto it = by_src_dst.find(sd_key(src, dst));
    if (it == by_src_dst.end()) return -1;
    for (int i : it->second)
      if (A.squares[i].u == u && A.squares[i].v == v) return i;
    return -1;
  };

  std::vector<std::vector<int>> by_src(nm);
  for (size_t i = 0; i < A.squares.size(); ++i)
    by_src[A.squares[i].src].push_back(static_cast<int>(i));

  std::vector<std::tuple<int, int, int>> comp;
  for (size_t s1 = 0; s1 < A.squares.size(); ++s1) {
    const auto& q1 = A.squares[s1];
    for (int s2 : by_src[q1.dst]) {
      const auto& q2 = A.squares[s2];
      int u = C.compose(q2.u, q1.u), v = C.compose(q2.v, q1.v);
      int composite = find_square(q1.src, q2.dst, u, v);
      require(composite >= 0, Errc::InvalidCategory, "arrow composition not closed");
      comp.emplace_back(s2, static_cast<int>(s1), composite);
    }
  }

  A.cat = FinCategory::from_checked_parts(std::move(objects), std::move(mors),
                                          std::move(identity), comp);
  return A;
}

/// Slice category C/Y: objects are the morphisms into Y, morphisms are the
/// commuting triangles. Keeps the labeling back into C.
struct SliceContext {
  int apex = -1;  // the object Y in the base
  FinCategory cat;
  std::vector<int> object_arrow;             // slice object -> C morphism into Y
  std::vector<std::pair<int, int>> tris;     // slice morphism -> (h in C, target slice object)

  /// Base-category morphism underlying a slice morphism.
  int underlying(int slice_mor) const { return tris[slice_mor].first; }
};

inline SliceContext slice_category(const FinCategory& C, int Y) {
  require(Y >= 0 && Y < C.object_count(), Errc::UnknownObject, "slice apex");
  SliceContext S;
  S.apex = Y;
  S.object_arrow = C.into(Y);
  const int n = static_cast<int>(S.object_arrow.size());
  std::vector<int> slice_of(C.morphism_count(), -1);
  std::vector<std::string> objects(n);
  for (int i = 0; i < n; ++i) {
    objects[i] = C.morphism_id(S.object_arrow[i]);
    slice_of[S.object_arrow[i]] = i;
  }

  std::vector<FinCategory::MorRec> mors;
  std::vector<int> identity(n, -1);
  // triangle h: (a) -> (b) with b o h = a
  for (int ai = 0; ai < n; ++ai) {
    int a = S.object_arrow[ai];
    for (int bi = 0; bi < n; ++bi) {
      int b = S.object_arrow[bi];
      for (int h : C.hom(C.dom(a), C.dom(b))) {
        if (C.compose(b, h) != a) continue;
        if (ai == bi && h == C.identity(C.dom(a))) identity[ai] = static_cast<int>(mors.size());
        mors.push_back({"[" + C.morphism_id(h) + "]:" + objects[ai] + "=>" + objects[bi], ai, bi});
        S.tris.emplace_back(h, bi);
      }
    }
  }

  std::unordered_map<uint64_t, int> tri_index;
  auto tkey = [&](int h, int ai, int bi) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(h)) << 32) |
           (static_cast<uint32_t>(ai) << 16) | static_cast<uint32_t>(bi);
  };
  for (size_t i = 0; i < mors.size(); ++i)
    tri_index[tkey(S.tris[i].first, mors[i].dom, mors[i].cod)] = static_cast<int>(i);

  std::vector<std::tuple<int, int, int>> comp;
  for (size_t t1 = 0; t1 < mors.size(); ++t1)
    for (size_t t2 = 0; t2 < mors.size(); ++t2) {
      if (mors[t2].dom != mors[t1].cod) continue;
      int h = C.compose(S.tris[t2].first, S.tris[t1].first);
      auto it = tri_index.find(tkey(h, mors[t1].dom, mors[t2].cod));
      require(it != tri_index.end(), Errc::InvalidCategory, "slice composition not closed");
      comp.emplace_back(static_cast<int>(t2), static_cast<int>(t1), it->second);
    }

  S.cat = FinCategory::from_checked_parts(std::move(objects), std::move(mors),
                                          std::move(identity), comp);
  return S;
}

inline SliceContext slice_category(const FinCategory& C, std::string_view Y) {
  return slice_category(C, C.require_object(Y));
}

}  // namespace fincat
