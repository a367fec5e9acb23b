#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fincat/core.hpp"

namespace fincat {

enum class Backend { Set, Graph, Poset };

inline const char* to_string(Backend b) {
  switch (b) {
    case Backend::Set: return "set";
    case Backend::Graph: return "graph";
    case Backend::Poset: return "pos";
  }
  return "?";
}

inline std::optional<Backend> backend_from(std::string_view s) {
  if (s == "set") return Backend::Set;
  if (s == "graph") return Backend::Graph;
  if (s == "pos" || s == "poset") return Backend::Poset;
  return std::nullopt;
}

/// A finite set, simple graph, or finite poset. Elements are named and kept
/// in a fixed listing order; all enumerations follow that order.
///
/// Graphs are undirected, irreflexive, at most one edge per pair. Poset
/// order is stored as a full relation matrix (reflexive, antisymmetric,
/// transitive).
struct ConcreteObj {
  Backend backend = Backend::Set;
  std::vector<std::string> elems;
  std::vector<std::pair<int, int>> edges;  // graph only; i < j, sorted
  std::vector<uint8_t> leq;                // poset only; row-major |elems|^2

  int size() const { return static_cast<int>(elems.size()); }

  bool le(int a, int b) const { return leq[static_cast<size_t>(a) * elems.size() + b] != 0; }

  bool adjacent(int a, int b) const {
    if (a == b) return false;
    auto p = std::minmax(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(p.first, p.second));
  }

  bool operator==(const ConcreteObj& o) const {
    return backend == o.backend && elems == o.elems && edges == o.edges && leq == o.leq;
  }

  /// Structural-shape equality: ignores element names, keeps listing order.
  bool same_shape(const ConcreteObj& o) const {
    return backend == o.backend && elems.size() == o.elems.size() && edges == o.edges &&
           leq == o.leq;
  }

  std::vector<std::string> invariant_violations() const {
    std::vector<std::string> out;
    const int n = size();
    {
      auto sorted = elems;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        out.push_back("duplicate element name");
    }
    if (backend == Backend::Graph) {
      for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) out.push_back("edge endpoint out of range");
        else if (a == b) out.push_back("loop at " + elems[a]);
        else if (a > b) out.push_back("edge not normalized");
      }
      if (!std::is_sorted(edges.begin(), edges.end())) out.push_back("edges not sorted");
    }
    if (backend == Backend::Poset) {
      if (leq.size() != static_cast<size_t>(n) * n) {
        out.push_back("order matrix has wrong size");
        return out;
      }
      for (int a = 0; a < n; ++a)
        if (!le(a, a)) out.push_back("not reflexive at " + elems[a]);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (a != b && le(a, b) && le(b, a))
            out.push_back("not antisymmetric: " + elems[a] + ", " + elems[b]);
          if (le(a, b))
            for (int c = 0; c < n; ++c)
              if (le(b, c) && !le(a, c))
                out.push_back("not transitive: " + elems[a] + "<=" + elems[b] + "<=" + elems[c]);
        }
    }
    return out;
  }

  json describe() const {
    json j;
    j["backend"] = to_string(backend);
    switch (backend) {
      case Backend::Set:
        j["carrier"] = elems;
        break;
      case Backend::Graph: {
        j["nodes"] = elems;
        json es = json::array();
        for (auto [a, b] : edges) es.push_back({elems[a], elems[b]});
        j["edges"] = es;
        break;
      }
      case Backend::Poset: {
        j["elements"] = elems;
        json rel = json::array();
        for (int a = 0; a < size(); ++a)
          for (int b = 0; b < size(); ++b)
            if (a != b && le(a, b)) rel.push_back({elems[a], elems[b]});
        j["leq"] = rel;
        break;
      }
    }
    return j;
  }
};

inline ConcreteObj make_set(std::vector<std::string> elems) {
  return {Backend::Set, std::move(elems), {}, {}};
}

inline ConcreteObj make_graph(std::vector<std::string> nodes,
                              std::vector<std::pair<int, int>> edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {Backend::Graph, std::move(nodes), std::move(edges), {}};
}

/// Builds a poset from covering/comparable pairs; reflexive-transitive
/// closure is taken, antisymmetry is checked.
inline ConcreteObj make_poset(std::vector<std::string> elems,
                              const std::vector<std::pair<int, int>>& below) {
  const int n = static_cast<int>(elems.size());
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  auto at = [&](int a, int b) -> uint8_t& { return leq[static_cast<size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) at(a, a) = 1;
  for (auto [a, b] : below) at(a, b) = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (at(a, k))
        for (int b = 0; b < n; ++b)
          if (at(k, b)) at(a, b) = 1;
  ConcreteObj o{Backend::Poset, std::move(elems), {}, std::move(leq)};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      require(!(o.le(a, b) && o.le(b, a)), Errc::ValidationError,
              "order has a cycle through " + o.elems[a]);
  return o;
}

/// Renames elements positionally (x0, x1, ...) so that constructed objects
/// with the same ordered shape become structurally equal.
inline ConcreteObj canonical_relabel(const ConcreteObj& o) {
  ConcreteObj r = o;
  for (int i = 0; i < r.size(); ++i) r.elems[i] = "x" + std::to_string(i);
  return r;
}

/// A total structure-preserving map between same-backend objects.
/// Stored by value: objects here are tiny.
struct ConcreteHom {
  ConcreteObj dom;
  ConcreteObj cod;
  std::vector<int> map;  // dom element index -> cod element index

  int operator()(int i) const { return map[i]; }

  bool operator==(const ConcreteHom& o) const {
    return dom == o.dom && cod == o.cod && map == o.map;
  }

  bool structure_preserving() const {
    if (dom.backend != cod.backend) return false;
    if (static_cast<int>(map.size()) != dom.size()) return false;
    for (int v : map)
      if (v < 0 || v >= cod.size()) return false;
    switch (dom.backend) {
      case Backend::Set: return true;
      case Backend::Graph:
        for (auto [a, b] : dom.edges)
          if (!cod.adjacent(map[a], map[b])) return false;
        return true;
      case Backend::Poset:
        for (int a = 0; a < dom.size(); ++a)
          for (int b = 0; b < dom.size(); ++b)
            if (dom.le(a, b) && !cod.le(map[a], map[b])) return false;
        return true;
    }
    return false;
  }

  json describe() const {
    json j;
    j["backend"] = to_string(dom.backend);
    j["dom"] = dom.describe();
    j["cod"] = cod.describe();
    json m = json::object();
    for (int i = 0; i < dom.size(); ++i) m[dom.elems[i]] = cod.elems[map[i]];
    j["map"] = m;
    return j;
  }
};

inline ConcreteHom identity_hom(const ConcreteObj& x) {
  ConcreteHom h{x, x, std::vector<int>(x.size())};
  std::iota(h.map.begin(), h.map.end(), 0);
  return h;
}

/// g after f.
inline ConcreteHom compose(const ConcreteHom& g, const ConcreteHom& f) {
  require(f.cod == g.dom, Errc::EndpointMismatch, "compose: cod(f) != dom(g)");
  ConcreteHom h{f.dom, g.cod, {}};
  h.map.reserve(f.map.size());
  for (int v : f.map) h.map.push_back(g.map[v]);
  return h;
}

/// Every structure-preserving map X -> Y, duplicate-free, ordered
/// lexicographically by the value tuple.
inline std::vector<ConcreteHom> enumerate_homs(const ConcreteObj& X, const ConcreteObj& Y) {
  require(X.backend == Y.backend, Errc::BackendMismatch, "enumerate_homs");
  std::vector<ConcreteHom> out;
  const int n = X.size(), m = Y.size();
  if (n == 0) {
    out.push_back({X, Y, {}});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> v(n, 0);
  while (true) {
    ConcreteHom h{X, Y, v};
    if (h.structure_preserving()) out.push_back(std::move(h));
    int i = n - 1;
    while (i >= 0 && v[i] == m - 1) v[i--] = 0;
    if (i < 0) break;
    ++v[i];
  }
  return out;
}

/// Backend characterization of mono/epi: mono = injective everywhere;
/// epi = surjective on elements (= nodes for graphs). Cross-validated in
/// the test suite against the categorical decision over truncations.
inline bool concrete_class_oracle(const ConcreteHom& f, std::string_view property) {
  if (property == "mono") {
    std::vector<uint8_t> seen(f.cod.size(), 0);
    for (int v : f.map) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }
  if (property == "epi") {
    std::vector<uint8_t> seen(f.cod.size(), 0);
    for (int v : f.map) seen[v] = 1;
    return std::all_of(seen.begin(), seen.end(), [](uint8_t s) { return s != 0; });
  }
  fail(Errc::UnknownCommand, "concrete_class_oracle property: " + std::string(property));
}

/// Bijective hom whose inverse is also structure-preserving.
inline bool is_concrete_iso(const ConcreteHom& f) {
  if (f.dom.size() != f.cod.size()) return false;
  if (!concrete_class_oracle(f, "mono")) return false;
  std::vector<int> inv(f.cod.size());
  for (int i = 0; i < f.dom.size(); ++i) inv[f.map[i]] = i;
  return ConcreteHom{f.cod, f.dom, std::move(inv)}.structure_preserving();
}

/// Some isomorphism X -> Y, if one exists (sizes here are tiny, so plain
/// backtracking over bijections is fine).
inline std::optional<ConcreteHom> find_concrete_iso(const ConcreteObj& X, const ConcreteObj& Y) {
  if (X.backend != Y.backend || X.size() != Y.size()) return std::nullopt;
  std::vector<int> perm(X.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    ConcreteHom h{X, Y, perm};
    if (is_concrete_iso(h)) return h;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

/// Every object of the backend with at most max_size elements (labeled
/// x0, x1, ...). Small bounds only; used for bounded quantification.
inline std::vector<ConcreteObj> all_concrete_objects(Backend backend, int max_size) {
  require(max_size <= 4, Errc::SizeLimit, "all_concrete_objects is for small bounds");
  std::vector<ConcreteObj> out;
  for (int n = 0; n <= max_size; ++n) {
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) elems.push_back("x" + std::to_string(i));
    switch (backend) {
      case Backend::Set:
        out.push_back(make_set(elems));
        break;
      case Backend::Graph: {
        std::vector<std::pair<int, int>> all_edges;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) all_edges.emplace_back(a, b);
        const int ne = static_cast<int>(all_edges.size());
        for (int mask = 0; mask < (1 << ne); ++mask) {
          std::vector<std::pair<int, int>> edges;
          for (int i = 0; i < ne; ++i)
            if (mask & (1 << i)) edges.push_back(all_edges[i]);
          out.push_back(make_graph(elems, std::move(edges)));
        }
        break;
      }
      case Backend::Poset: {
        // every strict relation whose reflexive closure is a poset
        std::vector<std::pair<int, int>> all_pairs;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (a != b) all_pairs.emplace_back(a, b);
        const int np = static_cast<int>(all_pairs.size());
        std::vector<std::vector<uint8_t>> seen_rels;
        for (int mask = 0; mask < (1 << np); ++mask) {
          std::vector<std::pair<int, int>> below;
          for (int i = 0; i < np; ++i)
            if (mask & (1 << i)) below.push_back(all_pairs[i]);
          try {
            ConcreteObj o = make_poset(elems, below);
            if (std::find_if(seen_rels.begin(), seen_rels.end(), [&](const auto& r) {
                  return r == o.leq;
                }) == seen_rels.end()) {
              seen_rels.push_back(o.leq);
              out.push_back(std::move(o));
            }
          } catch (const Error&) {
            // relation had a cycle; skip
          }
        }
        break;
      }
    }
  }
  return out;
}

/// Mono/epi by cancellation quantified over all backend objects of size
/// <= bound (the bounded-ambient reading, as opposed to cancellation
/// inside one finite window).
inline bool bounded_ambient_cancel(const ConcreteHom& f, std::string_view side, int bound) {
  auto tests = all_concrete_objects(f.dom.backend, bound);
  for (const auto& W : tests) {
    auto homs = side == "mono" ? enumerate_homs(W, f.dom) : enumerate_homs(f.cod, W);
    std::vector<std::vector<int>> seen;
    for (const auto& u : homs) {
      auto c = side == "mono" ? compose(f, u) : compose(u, f);
      if (std::find(seen.begin(), seen.end(), c.map) != seen.end()) return false;
      seen.push_back(c.map);
    }
  }
  return true;
}

}  // namespace fincat
