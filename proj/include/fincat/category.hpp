#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fincat/core.hpp"

namespace fincat {

/// Raw, unchecked presentation of a finitely presented category: object and
/// morphism tables plus an explicit, total composition table. This is what
/// the DSL produces and what validate_category consumes.
struct RawPresentation {
  struct Mor {
    std::string id;
    std::string dom;
    std::string cod;
  };
  struct Comp {
    std::string g;  // second morphism applied
    std::string f;  // first morphism applied
    std::string gf;
  };

  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // (object, mor id)
  std::vector<Comp> composition;
};

/// One broken category law, naming the offending ids.
struct LawViolation {
  enum class Kind {
    DuplicateId,
    UnknownId,
    MissingIdentity,
    BadIdentityEndpoints,
    UnitLawViolation,
    AssociativityViolation,
    DanglingComposite,
    BadCompositeEndpoints,
  };
  Kind kind;
  std::string detail;
};

inline const char* to_string(LawViolation::Kind k) {
  using K = LawViolation::Kind;
  switch (k) {
    case K::DuplicateId: return "DuplicateId";
    case K::UnknownId: return "UnknownId";
    case K::MissingIdentity: return "MissingIdentity";
    case K::BadIdentityEndpoints: return "BadIdentityEndpoints";
    case K::UnitLawViolation: return "UnitLawViolation";
    case K::AssociativityViolation: return "AssociativityViolation";
    case K::DanglingComposite: return "DanglingComposite";
    case K::BadCompositeEndpoints: return "BadCompositeEndpoints";
  }
  return "?";
}

struct ValidationResult;
class FinCategory;
ValidationResult validate_category(const RawPresentation& raw);

/// A validated finitely presented category. Objects and morphisms are
/// interned: the listing order is the canonical order used by every
/// enumeration, search and report, so results are deterministic.
///
/// Immutable after construction; safe for concurrent reads.
class FinCategory {
 public:
  struct MorRec {
    std::string id;
    int dom = -1;
    int cod = -1;
  };

  FinCategory() = default;

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(mors_.size()); }

  const std::string& object_id(int o) const { return objects_[o]; }
  const std::string& morphism_id(int m) const { return mors_[m].id; }
  int dom(int m) const { return mors_[m].dom; }
  int cod(int m) const { return mors_[m].cod; }
  int identity(int o) const { return identity_[o]; }
  bool is_identity(int m) const { return identity_[mors_[m].dom] == m && mors_[m].dom == mors_[m].cod; }

  /// g o f, or -1 when cod(f) != dom(g).
  int compose(int g, int f) const {
    if (mors_[f].cod != mors_[g].dom) return -1;
    return flat_comp_ ? comp_[static_cast<size_t>(g) * mors_.size() + f]
                      : comp_map_.at(pair_key(g, f));
  }

  /// All morphisms a -> b in canonical order.
  const std::vector<int>& hom(int a, int b) const {
    return hom_[static_cast<size_t>(a) * objects_.size() + b];
  }
  /// All morphisms into b (resp. out of a), in canonical order.
  const std::vector<int>& into(int b) const { return into_[b]; }
  const std::vector<int>& out_of(int a) const { return out_[a]; }

  int object_index(std::string_view id) const {
    auto it = obj_idx_.find(std::string(id));
    return it == obj_idx_.end() ? -1 : it->second;
  }
  int morphism_index(std::string_view id) const {
    auto it = mor_idx_.find(std::string(id));
    return it == mor_idx_.end() ? -1 : it->second;
  }

  int require_object(std::string_view id) const {
    int o = object_index(id);
    require(o >= 0, Errc::UnknownObject, std::string(id));
    return o;
  }
  int require_morphism(std::string_view id) const {
    int m = morphism_index(id);
    require(m >= 0, Errc::UnknownMorphism, std::string(id));
    return m;
  }

  /// Structural equality: same listings, same tables.
  bool operator==(const FinCategory& other) const {
    if (objects_ != other.objects_ || identity_ != other.identity_) return false;
    if (mors_.size() != other.mors_.size()) return false;
    for (size_t i = 0; i < mors_.size(); ++i) {
      if (mors_[i].id != other.mors_[i].id || mors_[i].dom != other.mors_[i].dom ||
          mors_[i].cod != other.mors_[i].cod)
        return false;
    }
    const int n = morphism_count();
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f)
        if (compose(g, f) != other.compose(g, f)) return false;
    return true;
  }

  /// Assembles a category whose laws the caller has already established
  /// (derived constructions: opposites, truncations, arrow categories).
  /// Unit laws, endpoint coherence and closure are still asserted.
  static FinCategory from_checked_parts(std::vector<std::string> objects,
                                        std::vector<MorRec> mors, std::vector<int> identity,
                                        const std::vector<std::tuple<int, int, int>>& comp_entries);

  json describe() const {
    json j;
    j["objects"] = objects_;
    json ms = json::array();
    for (const auto& m : mors_)
      ms.push_back({{"id", m.id}, {"dom", objects_[m.dom]}, {"cod", objects_[m.cod]}});
    j["morphisms"] = ms;
    return j;
  }

 private:
  friend struct ValidationResult;
  friend ValidationResult validate_category(const RawPresentation&);

  static uint64_t pair_key(int g, int f) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(g)) << 32) | static_cast<uint32_t>(f);
  }

  void build_indexes();

  std::vector<std::string> objects_;
  std::vector<MorRec> mors_;
  std::vector<int> identity_;
  bool flat_comp_ = true;
  std::vector<int32_t> comp_;                     // dense table, -1 = not composable
  std::unordered_map<uint64_t, int32_t> comp_map_;  // sparse fallback for large categories
  std::vector<std::vector<int>> hom_;
  std::vector<std::vector<int>> into_, out_;
  std::unordered_map<std::string, int> obj_idx_, mor_idx_;
};

/// Result of validate_category: either a category or the list of law
/// violations that prevented one.
struct ValidationResult {
  std::optional<FinCategory> category;
  std::vector<LawViolation> violations;

  bool ok() const { return category.has_value(); }
};

namespace detail {

// Dense tables are the fast path; very large derived categories (arrow
// categories near the size guard) switch to a hash map.
constexpr size_t kDenseCompLimit = 6000;

}  // namespace detail

inline void FinCategory::build_indexes() {
  const size_t no = objects_.size();
  hom_.assign(no * no, {});
  into_.assign(no, {});
  out_.assign(no, {});
  obj_idx_.clear();
  mor_idx_.clear();
  for (size_t o = 0; o < no; ++o) obj_idx_[objects_[o]] = static_cast<int>(o);
  for (size_t m = 0; m < mors_.size(); ++m) {
    mor_idx_[mors_[m].id] = static_cast<int>(m);
    hom_[static_cast<size_t>(mors_[m].dom) * no + mors_[m].cod].push_back(static_cast<int>(m));
    into_[mors_[m].cod].push_back(static_cast<int>(m));
    out_[mors_[m].dom].push_back(static_cast<int>(m));
  }
}

inline FinCategory FinCategory::from_checked_parts(
    std::vector<std::string> objects, std::vector<MorRec> mors, std::vector<int> identity,
    const std::vector<std::tuple<int, int, int>>& comp_entries) {
  FinCategory c;
  c.objects_ = std::move(objects);
  c.mors_ = std::move(mors);
  c.identity_ = std::move(identity);
  const size_t n = c.mors_.size();
  c.flat_comp_ = n <= detail::kDenseCompLimit;
  if (c.flat_comp_) {
    c.comp_.assign(n * n, -1);
    for (auto [g, f, gf] : comp_entries) c.comp_[static_cast<size_t>(g) * n + f] = gf;
  } else {
    c.comp_map_.reserve(comp_entries.size() * 2);
    for (auto [g, f, gf] : comp_entries) c.comp_map_[pair_key(g, f)] = gf;
  }
  c.build_indexes();

  // Cheap structural assertions; full law checking is validate_category's job.
  for (int o = 0; o < c.object_count(); ++o) {
    int i = c.identity_[o];
    require(i >= 0 && c.dom(i) == o && c.cod(i) == o, Errc::InvalidCategory,
            "bad identity for " + c.objects_[o]);
  }
  for (int m = 0; m < c.morphism_count(); ++m) {
    require(c.compose(m, c.identity(c.dom(m))) == m && c.compose(c.identity(c.cod(m)), m) == m,
            Errc::InvalidCategory, "unit law broken at " + c.mors_[m].id);
  }
  return c;
}

/// Checks a raw presentation against the category laws. On success the
/// returned FinCategory is total: every composable pair has an entry.
inline ValidationResult validate_category(const RawPresentation& raw) {
  ValidationResult res;
  auto bad = [&](LawViolation::Kind k, std::string d) {
    res.violations.push_back({k, std::move(d)});
  };

  std::unordered_map<std::string, int> oidx, midx;
  for (size_t i = 0; i < raw.objects.size(); ++i) {
    if (!oidx.emplace(raw.objects[i], static_cast<int>(i)).second)
      bad(LawViolation::Kind::DuplicateId, "object " + raw.objects[i]);
  }
  for (size_t i = 0; i < raw.morphisms.size(); ++i) {
    const auto& m = raw.morphisms[i];
    if (oidx.count(m.id))
      bad(LawViolation::Kind::DuplicateId, "morphism id collides with object " + m.id);
    if (!midx.emplace(m.id, static_cast<int>(i)).second)
      bad(LawViolation::Kind::DuplicateId, "morphism " + m.id);
    if (!oidx.count(m.dom)) bad(LawViolation::Kind::UnknownId, "dom of " + m.id + ": " + m.dom);
    if (!oidx.count(m.cod)) bad(LawViolation::Kind::UnknownId, "cod of " + m.id + ": " + m.cod);
  }
  if (!res.violations.empty()) return res;

  const int no = static_cast<int>(raw.objects.size());
  const int nm = static_cast<int>(raw.morphisms.size());

  std::vector<FinCategory::MorRec> mors(nm);
  for (int i = 0; i < nm; ++i)
    mors[i] = {raw.morphisms[i].id, oidx[raw.morphisms[i].dom], oidx[raw.morphisms[i].cod]};

  std::vector<int> identity(no, -1);
  for (const auto& [obj, mid] : raw.identities) {
    if (!oidx.count(obj)) {
      bad(LawViolation::Kind::UnknownId, "identity object " + obj);
      continue;
    }
    if (!midx.count(mid)) {
      bad(LawViolation::Kind::UnknownId, "identity morphism " + mid);
      continue;
    }
    int o = oidx[obj], m = midx[mid];
    if (mors[m].dom != o || mors[m].cod != o)
      bad(LawViolation::Kind::BadIdentityEndpoints, mid + " is not an endomorphism of " + obj);
    identity[o] = m;
  }
  for (int o = 0; o < no; ++o)
    if (identity[o] < 0) bad(LawViolation::Kind::MissingIdentity, raw.objects[o]);
  if (!res.violations.empty()) return res;

  std::vector<int32_t> comp(static_cast<size_t>(nm) * nm, -1);
  auto at = [&](int g, int f) -> int32_t& { return comp[static_cast<size_t>(g) * nm + f]; };
  for (const auto& e : raw.composition) {
    if (!midx.count(e.g) || !midx.count(e.f) || !midx.count(e.gf)) {
      bad(LawViolation::Kind::UnknownId, "comp " + e.g + "." + e.f + " = " + e.gf);
      continue;
    }
    int g = midx[e.g], f = midx[e.f], gf = midx[e.gf];
    if (mors[f].cod != mors[g].dom) {
      bad(LawViolation::Kind::BadCompositeEndpoints,
          e.g + "." + e.f + " is not a composable pair");
      continue;
    }
    if (mors[gf].dom != mors[f].dom || mors[gf].cod != mors[g].cod) {
      bad(LawViolation::Kind::BadCompositeEndpoints,
          e.gf + " has wrong endpoints for " + e.g + "." + e.f);
      continue;
    }
    at(g, f) = gf;
  }
  if (!res.violations.empty()) return res;

  // Closure: every composable pair must be listed.
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (mors[f].cod == mors[g].dom && at(g, f) < 0)
        bad(LawViolation::Kind::DanglingComposite,
            "comp " + mors[g].id + "." + mors[f].id + " missing");
  if (!res.violations.empty()) return res;

  for (int m = 0; m < nm; ++m) {
    if (at(m, identity[mors[m].dom]) != m)
      bad(LawViolation::Kind::UnitLawViolation, mors[m].id + " . id != " + mors[m].id);
    if (at(identity[mors[m].cod], m) != m)
      bad(LawViolation::Kind::UnitLawViolation, "id . " + mors[m].id + " != " + mors[m].id);
  }
  if (!res.violations.empty()) return res;

  for (int h = 0; h < nm; ++h) {
    for (int g = 0; g < nm; ++g) {
      if (mors[g].cod != mors[h].dom) continue;
      int hg = at(h, g);
      for (int f = 0; f < nm; ++f) {
        if (mors[f].cod != mors[g].dom) continue;
        if (at(h, at(g, f)) != at(hg, f)) {
          bad(LawViolation::Kind::AssociativityViolation,
              "(" + mors[h].id + "." + mors[g].id + ")." + mors[f].id);
          if (res.violations.size() > 32) return res;  // enough evidence
        }
      }
    }
  }
  if (!res.violations.empty()) return res;

  FinCategory cat;
  cat.objects_ = raw.objects;
  cat.mors_ = std::move(mors);
  cat.identity_ = std::move(identity);
  cat.flat_comp_ = static_cast<size_t>(nm) <= detail::kDenseCompLimit;
  if (cat.flat_comp_) {
    cat.comp_ = std::move(comp);
  } else {
    for (int g = 0; g < nm; ++g)
      for (int f = 0; f < nm; ++f)
        if (comp[static_cast<size_t>(g) * nm + f] >= 0)
          cat.comp_map_[FinCategory::pair_key(g, f)] = comp[static_cast<size_t>(g) * nm + f];
  }
  cat.build_indexes();
  res.category = std::move(cat);
  return res;
}

/// All morphisms a -> b, by id.
inline std::vector<std::string> hom_set(const FinCategory& c, std::string_view a,
                                        std::string_view b) {
  int ai = c.require_object(a), bi = c.require_object(b);
  std::vector<std::string> out;
  for (int m : c.hom(ai, bi)) out.push_back(c.morphism_id(m));
  return out;
}

/// Two-sided inverse search.
inline std::optional<int> inverse_of(const FinCategory& c, int f) {
  for (int g : c.hom(c.cod(f), c.dom(f)))
    if (c.compose(g, f) == c.identity(c.dom(f)) && c.compose(f, g) == c.identity(c.cod(f)))
      return g;
  return std::nullopt;
}

inline bool is_iso(const FinCategory& c, int f) { return inverse_of(c, f).has_value(); }

inline bool is_iso(const FinCategory& c, std::string_view f) {
  return is_iso(c, c.require_morphism(f));
}

/// Formal dual: same objects and morphism ids, dom/cod swapped, composition
/// transposed. Involutive up to structural equality.
inline FinCategory opposite(const FinCategory& c) {
  std::vector<std::string> objects;
  for (int o = 0; o < c.object_count(); ++o) objects.push_back(c.object_id(o));
  std::vector<FinCategory::MorRec> mors;
  for (int m = 0; m < c.morphism_count(); ++m)
    mors.push_back({c.morphism_id(m), c.cod(m), c.dom(m)});
  std::vector<int> identity;
  for (int o = 0; o < c.object_count(); ++o) identity.push_back(c.identity(o));
  std::vector<std::tuple<int, int, int>> comp;
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f) {
      int gf = c.compose(g, f);
      if (gf >= 0) comp.emplace_back(f, g, gf);
    }
  return FinCategory::from_checked_parts(std::move(objects), std::move(mors), std::move(identity),
                                         comp);
}

/// Functor between finitely presented categories, given by object and
/// morphism tables (indices into src/dst).
struct FunctorData {
  const FinCategory* src = nullptr;
  const FinCategory* dst = nullptr;
  std::vector<int> omap;
  std::vector<int> mmap;

  int on_object(int o) const { return omap[o]; }
  int on_morphism(int m) const { return mmap[m]; }
};

/// Functor law check: endpoint preservation, identities, composition.
inline std::vector<std::string> functor_violations(const FunctorData& F) {
  std::vector<std::string> out;
  const FinCategory &C = *F.src, &D = *F.dst;
  if (static_cast<int>(F.omap.size()) != C.object_count() ||
      static_cast<int>(F.mmap.size()) != C.morphism_count()) {
    out.push_back("map tables have wrong size");
    return out;
  }
  for (int m = 0; m < C.morphism_count(); ++m) {
    int fm = F.mmap[m];
    if (D.dom(fm) != F.omap[C.dom(m)] || D.cod(fm) != F.omap[C.cod(m)])
      out.push_back("endpoints not preserved at " + C.morphism_id(m));
  }
  for (int o = 0; o < C.object_count(); ++o)
    if (F.mmap[C.identity(o)] != D.identity(F.omap[o]))
      out.push_back("identity not preserved at " + C.object_id(o));
  for (int g = 0; g < C.morphism_count(); ++g)
    for (int f = 0; f < C.morphism_count(); ++f) {
      int gf = C.compose(g, f);
      if (gf < 0) continue;
      if (F.mmap[gf] != D.compose(F.mmap[g], F.mmap[f])) {
        out.push_back("composition not preserved at " + C.morphism_id(g) + "." +
                      C.morphism_id(f));
        if (out.size() > 16) return out;
      }
    }
  return out;
}

inline bool is_functor(const FunctorData& F) { return functor_violations(F).empty(); }

/// Identity functor on C.
inline FunctorData identity_functor(const FinCategory& c) {
  FunctorData F{&c, &c, {}, {}};
  F.omap.resize(c.object_count());
  F.mmap.resize(c.morphism_count());
  for (int o = 0; o < c.object_count(); ++o) F.omap[o] = o;
  for (int m = 0; m < c.morphism_count(); ++m) F.mmap[m] = m;
  return F;
}

}  // namespace fincat
