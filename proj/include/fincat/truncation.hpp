#pragma once

#include <map>
#include <string>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/limits.hpp"

namespace fincat {

namespace defaults {
/// Morphism-count guard for ambient truncations.
constexpr int kTruncationMorphismLimit = 20000;
}  // namespace defaults

/// Recipe for cutting a finite window out of a concrete category: a family
/// of seed objects, an optional closure bound (0 = no closure) limiting the
/// size of pullback/equalizer/coequalizer objects adjoined in one closure
/// round over the seed homs, and the enumeration bound for bounded
/// quantification in checks over the resulting category.
struct AmbientSpec {
  Backend backend = Backend::Set;
  std::vector<std::pair<std::string, ConcreteObj>> seeds;  // (name, object)
  int closure_bound = 0;
  int enumeration_bound = 3;
  int morphism_limit = defaults::kTruncationMorphismLimit;

  std::vector<std::string> invariant_violations() const {
    std::vector<std::string> out;
    for (const auto& [name, obj] : seeds) {
      if (obj.backend != backend) out.push_back("seed " + name + " has wrong backend");
      if (closure_bound > 0 && obj.size() > closure_bound)
        out.push_back("seed " + name + " exceeds the closure bound");
      if (obj.size() > enumeration_bound)
        out.push_back("seed " + name + " exceeds the enumeration bound");
      for (const auto& v : obj.invariant_violations()) out.push_back(name + ": " + v);
    }
    return out;
  }
};

/// A finitely presented category carved out of a concrete backend, with the
/// labeling back to concrete data. Object/morphism listing order is the
/// canonical order: seeds first, closure objects after, homs ordered
/// lexicographically by value tuple within each (dom, cod) block.
struct Truncation {
  FinCategory cat;
  Backend backend = Backend::Set;
  int enumeration_bound = 0;
  std::vector<ConcreteObj> objects;  // per category object index
  std::vector<ConcreteHom> homs;     // per category morphism index
  std::vector<int> sizes;            // per category object index

  /// Category morphism index of a concrete hom, or -1.
  int find_hom(const ConcreteHom& h) const {
    for (size_t i = 0; i < homs.size(); ++i)
      if (homs[i] == h) return static_cast<int>(i);
    return -1;
  }

  /// Category object index of a structurally equal concrete object, or -1.
  int find_object(const ConcreteObj& o) const {
    for (size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == o) return static_cast<int>(i);
    return -1;
  }

  Workbench workbench() const { return Workbench(cat, sizes, enumeration_bound); }
};

/// Builds the truncation: deduplicated seeds, one closure round (when
/// closure_bound > 0) adjoining pullback/equalizer/coequalizer objects of
/// homs among seeds that are not yet representable up to shape, then all
/// homs among the final objects with composition by map composition.
///
/// `named_homs` lets callers pin ids for specific homs (fixtures name `e`,
/// `f`, ... and reports should echo those names).
inline Truncation truncate_ambient(
    const AmbientSpec& spec,
    const std::vector<std::pair<std::string, ConcreteHom>>& named_homs = {}) {
  {
    auto bad = spec.invariant_violations();
    require(bad.empty(), Errc::ValidationError, bad.empty() ? "" : bad.front());
    require(spec.enumeration_bound <= 14 && spec.closure_bound <= 14, Errc::SizeLimit,
            "bounds above 14 are not supported");
  }

  Truncation tr;
  tr.backend = spec.backend;
  tr.enumeration_bound = spec.enumeration_bound;

  std::vector<std::string> names;
  for (const auto& [name, obj] : spec.seeds) {
    if (tr.find_object(obj) >= 0) continue;  // structural dedup
    tr.objects.push_back(obj);
    names.push_back(name);
  }
  const int n_seeds = static_cast<int>(tr.objects.size());

  if (spec.closure_bound > 0) {
    // One round over homs among seeds. Constructed objects are canonically
    // relabeled so equal shapes coincide; shapes already present are skipped.
    std::vector<ConcreteHom> seed_homs;
    for (int a = 0; a < n_seeds; ++a)
      for (int b = 0; b < n_seeds; ++b)
        for (auto& h : enumerate_homs(tr.objects[a], tr.objects[b]))
          seed_homs.push_back(std::move(h));

    int aux = 0;
    auto adjoin = [&](const ConcreteObj& raw) {
      if (raw.size() > spec.closure_bound) return;
      ConcreteObj canon = canonical_relabel(raw);
      for (const auto& existing : tr.objects)
        if (existing.same_shape(canon)) return;
      tr.objects.push_back(canon);
      names.push_back("aux" + std::to_string(aux++));
    };

    for (const auto& f : seed_homs)
      for (const auto& g : seed_homs) {
        if (f.cod == g.cod) adjoin(pullback_concrete(f, g).apex);
        if (f.dom == g.dom && f.cod == g.cod) {
          adjoin(equalizer_concrete(f, g).first);
          if (auto coeq = coequalizer_concrete(f, g)) adjoin(coeq->first);
        }
      }
  }

  const int n = static_cast<int>(tr.objects.size());
  tr.sizes.resize(n);
  for (int i = 0; i < n; ++i) tr.sizes[i] = tr.objects[i].size();

  // All homs among the final objects.
  std::vector<FinCategory::MorRec> mors;
  std::vector<int> identity(n, -1);
  long long total = 0;
  std::vector<std::vector<std::vector<int>>> block(n, std::vector<std::vector<int>>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto homs = enumerate_homs(tr.objects[a], tr.objects[b]);
      total += static_cast<long long>(homs.size());
      require(total <= spec.morphism_limit, Errc::SizeLimit,
              "truncation exceeds " + std::to_string(spec.morphism_limit) + " morphisms");
      int k = 0;
      for (auto& h : homs) {
        int idx = static_cast<int>(mors.size());
        block[a][b].push_back(idx);
        std::string id;
        if (a == b && h == identity_hom(tr.objects[a])) {
          identity[a] = idx;
          id = "id:" + names[a];
        } else {
          id = "h:" + names[a] + ":" + names[b] + ":" + std::to_string(k);
        }
        mors.push_back({std::move(id), a, b});
        tr.homs.push_back(std::move(h));
        ++k;
      }
    }
  }

  // Pin requested names (overrides the synthesized ids).
  for (const auto& [name, hom] : named_homs) {
    bool found = false;
    for (size_t i = 0; i < tr.homs.size(); ++i)
      if (tr.homs[i] == hom) {
        mors[i].id = name;
        found = true;
        break;
      }
    require(found, Errc::UnknownReference, "named hom " + name + " not among truncation homs");
  }

  // Composition by map composition, resolved through packed-key lookup
  // (object sizes are bounded by the spec, so 4 bits per value suffice).
  auto pack = [](const std::vector<int>& map) {
    uint64_t key = 0;
    for (size_t i = 0; i < map.size(); ++i) key |= static_cast<uint64_t>(map[i] + 1) << (4 * i);
    return key;
  };
  std::vector<std::vector<std::unordered_map<uint64_t, int>>> lookup(
      n, std::vector<std::unordered_map<uint64_t, int>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int m : block[a][b]) lookup[a][b][pack(tr.homs[m].map)] = m;

  std::vector<std::tuple<int, int, int>> comp;
  std::vector<int> gf_map;
  for (size_t f = 0; f < tr.homs.size(); ++f) {
    const int fa = mors[f].dom, fb = mors[f].cod;
    for (int c = 0; c < n; ++c) {
      const auto& find_in = lookup[fa][c];
      for (int g : block[fb][c]) {
        gf_map.clear();
        for (int v : tr.homs[f].map) gf_map.push_back(tr.homs[g].map[v]);
        auto it = find_in.find(pack(gf_map));
        require(it != find_in.end(), Errc::InvalidCategory, "hom enumeration is not closed");
        comp.emplace_back(g, static_cast<int>(f), it->second);
      }
    }
  }

  tr.cat = FinCategory::from_checked_parts(names, std::move(mors), std::move(identity), comp);
  return tr;
}

}  // namespace fincat
