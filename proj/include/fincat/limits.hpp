#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fincat/category.hpp"
#include "fincat/concrete.hpp"

namespace fincat {

/// Commutative square, by morphism index:
///
///        top
///     A -----> B
///     |        |
///  left        right
///     v        v
///     X -----> Y
///       bottom
///
/// Commutes when bottom o left == right o top.
struct Square {
  int top = -1;
  int right = -1;
  int bottom = -1;
  int left = -1;

  bool operator==(const Square& s) const {
    return top == s.top && right == s.right && bottom == s.bottom && left == s.left;
  }
};

/// Two morphisms with common codomain: right: B -> Y, bottom: X -> Y.
struct Cospan {
  int right = -1;
  int bottom = -1;
  bool operator==(const Cospan& c) const { return right == c.right && bottom == c.bottom; }
};

/// Two morphisms with common domain.
struct Span {
  int p1 = -1;
  int p2 = -1;
};

inline json describe_square(const FinCategory& C, const Square& s) {
  return json{{"top", C.morphism_id(s.top)},
              {"right", C.morphism_id(s.right)},
              {"bottom", C.morphism_id(s.bottom)},
              {"left", C.morphism_id(s.left)},
              {"apex", C.object_id(C.dom(s.top))}};
}

inline bool square_commutes(const FinCategory& C, const Square& s) {
  int lhs = C.compose(s.bottom, s.left);
  int rhs = C.compose(s.right, s.top);
  return lhs >= 0 && lhs == rhs;
}

/// Per-category scratchpad: decomposition index, canonical pullbacks per
/// cospan, iso tables, and assorted memoized per-morphism facts. The
/// underlying category is immutable; a Workbench is single-threaded state.
///
/// For categories cut out of a concrete backend, `sizes` carries element
/// counts (for witness ordering) and `test_bound` the enumeration bound:
/// universal-property quantifiers range over objects of size <= bound.
class Workbench {
 public:
  explicit Workbench(const FinCategory& cat, std::vector<int> sizes = {}, int test_bound = 0)
      : C(cat), sizes_(std::move(sizes)), test_bound_(test_bound) {
    test_objects_.reserve(C.object_count());
    for (int o = 0; o < C.object_count(); ++o)
      if (!bounded() || sizes_[o] <= test_bound_) test_objects_.push_back(o);
  }

  const FinCategory& C;

  bool bounded() const { return test_bound_ > 0 && !sizes_.empty(); }
  int object_size(int o) const { return sizes_.empty() ? 1 : sizes_[o]; }
  const std::vector<int>& test_objects() const { return test_objects_; }

  /// All ways to write w as r o t, in canonical order.
  const std::vector<std::pair<int, int>>& decompositions(int w) {
    build_decomp_index();
    return decomp_[w];
  }

  /// The morphisms t: A -> dom(m) with m o t == w, bucketed once per m.
  const std::vector<int>& precomp_bucket(int m, int A, int w) {
    auto key = pack2(m, A);
    auto it = precomp_.find(key);
    if (it == precomp_.end()) {
      it = precomp_.emplace(key, std::unordered_map<int, std::vector<int>>{}).first;
      for (int t : C.hom(A, C.dom(m))) it->second[C.compose(m, t)].push_back(t);
    }
    auto bucket = it->second.find(w);
    return bucket == it->second.end() ? empty_ : bucket->second;
  }

  /// Isomorphisms A -> B in canonical order.
  const std::vector<int>& isos_between(int A, int B) {
    auto key = pack2(A, B);
    auto it = isos_.find(key);
    if (it == isos_.end()) {
      std::vector<int> list;
      for (int h : C.hom(A, B))
        if (iso(h)) list.push_back(h);
      it = isos_.emplace(key, std::move(list)).first;
    }
    return it->second;
  }

  /// Definitional universal-property test, quantified over the category's
  /// own (bounded) objects. Kept as the search engine and as the oracle
  /// for the canonical-transport fast path below.
  bool up_is_pullback(const Square& s) {
    require(square_commutes(C, s), Errc::NonCommutingSquare, "up_is_pullback");
    Cospan cs{s.right, s.bottom};
    for (int W : test_objects_)
      if (!up_check_at(s, local_matchings(cs, W), W)) return false;
    return true;
  }

  /// A commuting square is a pullback iff it differs from the canonical
  /// pullback of its cospan by an apex isomorphism commuting with the
  /// projections; absence of a canonical pullback means no square over
  /// that cospan is one. This is the cheap everyday test.
  bool is_pullback(const Square& s) {
    require(square_commutes(C, s), Errc::NonCommutingSquare, "is_pullback");
    return pullback_span_set(Cospan{s.right, s.bottom}).count(pack2(s.top, s.left)) > 0;
  }

  /// Packed (top, left) pairs of every pullback square over the cospan.
  const std::unordered_set<uint64_t>& pullback_span_set(const Cospan& cs) {
    auto key = pack2(cs.right, cs.bottom);
    auto it = pb_span_set_.find(key);
    if (it == pb_span_set_.end()) {
      std::unordered_set<uint64_t> set;
      for (const Square& s : pullback_squares(cs)) set.insert(pack2(s.top, s.left));
      it = pb_span_set_.emplace(key, std::move(set)).first;
    }
    return it->second;
  }

  /// Pullback spans over the cospan grouped by left component.
  const std::unordered_map<int, std::vector<int>>& pullback_spans_by_left(const Cospan& cs) {
    auto key = pack2(cs.right, cs.bottom);
    auto it = pb_span_left_.find(key);
    if (it == pb_span_left_.end()) {
      std::unordered_map<int, std::vector<int>> by_left;
      for (const Square& s : pullback_squares(cs)) by_left[s.left].push_back(s.top);
      it = pb_span_left_.emplace(key, std::move(by_left)).first;
    }
    return it->second;
  }

  /// Canonical pullback of a cospan: the first (apex, span) in canonical
  /// order passing the universal property, or absent when the category has
  /// none. All qualifying apexes are isomorphic, so the choice is a
  /// convention.
  const std::optional<Square>& pullback(const Cospan& cs) {
    auto key = pack2(cs.right, cs.bottom);
    auto it = pb_of_.find(key);
    if (it != pb_of_.end()) return it->second;

    // matchings at every (bounded) test object, computed once per search
    std::vector<std::vector<std::pair<int, int>>> match(C.object_count());
    for (int W : test_objects_) match[W] = local_matchings(cs, W);

    std::optional<Square> found;
    for (int A = 0; A < C.object_count() && !found; ++A) {
      for (const auto& [t, l] : candidate_spans(cs, A, match)) {
        Square s{t, cs.right, cs.bottom, l};
        bool ok = true;
        for (int W : test_objects_)
          if (!up_check_at(s, match[W], W)) {
            ok = false;
            break;
          }
        if (ok) {
          found = s;
          break;
        }
      }
    }
    return pb_of_.emplace(key, found).first->second;
  }

  /// All pullback squares over the cospan: the canonical one twisted by
  /// every apex isomorphism.
  std::vector<Square> pullback_squares(const Cospan& cs) {
    std::vector<Square> out;
    const auto& pb = pullback(cs);
    if (!pb) return out;
    const int A0 = C.dom(pb->top);
    for (int A = 0; A < C.object_count(); ++A)
      for (int phi : isos_between(A, A0))
        out.push_back(Square{C.compose(pb->top, phi), cs.right, cs.bottom,
                             C.compose(pb->left, phi)});
    return out;
  }

  /// Kernel pair: pullback of f along itself.
  std::optional<Span> kernel_pair(int f) {
    const auto& pb = pullback(Cospan{f, f});
    if (!pb) return std::nullopt;
    return Span{pb->top, pb->left};
  }

  /// Equalizer by universal-property search: first (object, mono-into-dom)
  /// in canonical order. Returns (morphism, object).
  std::optional<std::pair<int, int>> equalizer(int f, int g) {
    require_parallel(f, g);
    const int X = C.dom(f);
    for (int E = 0; E < C.object_count(); ++E) {
      for (int m : C.hom(E, X)) {
        if (C.compose(f, m) != C.compose(g, m)) continue;
        if (equalizer_universal(f, g, m, E)) return std::make_pair(m, E);
      }
    }
    return std::nullopt;
  }

  /// Coequalizer by universal-property search. Returns (morphism, object).
  std::optional<std::pair<int, int>> coequalizer(int f, int g) {
    require_parallel(f, g);
    const int Y = C.cod(f);
    for (int Q = 0; Q < C.object_count(); ++Q) {
      for (int q : C.hom(Y, Q)) {
        if (C.compose(q, f) != C.compose(q, g)) continue;
        if (coequalizer_universal(f, g, q, Q)) return std::make_pair(q, Q);
      }
    }
    return std::nullopt;
  }

  bool equalizer_universal(int f, int g, int m, int E) {
    const int X = C.dom(f);
    for (int W : test_objects_) {
      int count = 0;
      for (int h : C.hom(W, X))
        if (C.compose(f, h) == C.compose(g, h)) ++count;
      const auto& homWE = C.hom(W, E);
      if (static_cast<int>(homWE.size()) != count) return false;
      scratch_.clear();
      for (int k : homWE) scratch_.push_back(static_cast<uint64_t>(C.compose(m, k)));
      if (has_duplicate(scratch_)) return false;
    }
    return true;
  }

  bool coequalizer_universal(int f, int g, int q, int Q) {
    const int Y = C.cod(f);
    for (int W : test_objects_) {
      int count = 0;
      for (int c : C.hom(Y, W))
        if (C.compose(c, f) == C.compose(c, g)) ++count;
      const auto& homQW = C.hom(Q, W);
      if (static_cast<int>(homQW.size()) != count) return false;
      scratch_.clear();
      for (int h : homQW) scratch_.push_back(static_cast<uint64_t>(C.compose(h, q)));
      if (has_duplicate(scratch_)) return false;
    }
    return true;
  }

  // --- small per-morphism facts, memoized ---

  bool mono(int f) {
    return tri_memo(mono_, f, [&](int m) {
      const int X = C.dom(m);
      for (int W : test_objects_) {
        scratch_.clear();
        for (int u : C.hom(W, X)) scratch_.push_back(static_cast<uint64_t>(C.compose(m, u)));
        if (has_duplicate(scratch_)) return false;
      }
      return true;
    });
  }

  bool epi(int f) {
    return tri_memo(epi_, f, [&](int m) {
      const int Y = C.cod(m);
      for (int W : test_objects_) {
        scratch_.clear();
        for (int u : C.hom(Y, W)) scratch_.push_back(static_cast<uint64_t>(C.compose(u, m)));
        if (has_duplicate(scratch_)) return false;
      }
      return true;
    });
  }

  bool iso(int f) {
    return tri_memo(iso_, f, [&](int m) { return is_iso(C, m); });
  }

  void require_parallel(int f, int g) const {
    require(C.dom(f) == C.dom(g) && C.cod(f) == C.cod(g), Errc::NotParallel,
            C.morphism_id(f) + " vs " + C.morphism_id(g));
  }

 private:
  static uint64_t pack2(int a, int b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
  }

  /// Spans (u: W -> dom(right), v: W -> dom(bottom)) with
  /// right o u == bottom o v.
  std::vector<std::pair<int, int>> local_matchings(const Cospan& cs, int W) {
    std::vector<std::pair<int, int>> rows;
    std::unordered_map<int, std::vector<int>> by_comp;
    for (int v : C.hom(W, C.dom(cs.bottom))) by_comp[C.compose(cs.bottom, v)].push_back(v);
    for (int u : C.hom(W, C.dom(cs.right))) {
      auto b = by_comp.find(C.compose(cs.right, u));
      if (b == by_comp.end()) continue;
      for (int v : b->second) rows.emplace_back(u, v);
    }
    return rows;
  }

  const std::vector<std::pair<int, int>>& candidate_spans(
      const Cospan& cs, int A, std::vector<std::vector<std::pair<int, int>>>& match) {
    if (!bounded() || sizes_[A] <= test_bound_) return match[A];
    scratch_spans_ = local_matchings(cs, A);
    return scratch_spans_;
  }

  // h |-> (top o h, left o h) must hit the matchings at W bijectively.
  bool up_check_at(const Square& s, const std::vector<std::pair<int, int>>& M, int W) {
    const auto& homWA = C.hom(W, C.dom(s.top));
    if (homWA.size() != M.size()) return false;
    scratch_.clear();
    for (int h : homWA) scratch_.push_back(pack2(C.compose(s.top, h), C.compose(s.left, h)));
    return !has_duplicate(scratch_);
  }

  static bool has_duplicate(std::vector<uint64_t>& v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  }

  void build_decomp_index() {
    if (!decomp_.empty()) return;
    decomp_.resize(C.morphism_count());
    for (int t = 0; t < C.morphism_count(); ++t) {
      for (int r : C.out_of(C.cod(t))) {
        int w = C.compose(r, t);
        decomp_[w].emplace_back(t, r);
      }
    }
  }

  template <class F>
  bool tri_memo(std::vector<int8_t>& store, int f, F&& compute) {
    if (store.empty()) store.assign(C.morphism_count(), -1);
    if (store[f] < 0) store[f] = compute(f) ? 1 : 0;
    return store[f] == 1;
  }

  std::vector<int> sizes_;
  int test_bound_ = 0;
  std::vector<int> test_objects_;

  std::vector<std::vector<std::pair<int, int>>> decomp_;
  std::unordered_map<uint64_t, std::optional<Square>> pb_of_;
  std::unordered_map<uint64_t, std::vector<int>> isos_;
  std::unordered_map<uint64_t, std::unordered_map<int, std::vector<int>>> precomp_;
  std::unordered_map<uint64_t, std::unordered_map<int, std::vector<int>>> pb_span_left_;
  std::unordered_map<uint64_t, std::unordered_set<uint64_t>> pb_span_set_;
  std::vector<int8_t> mono_, epi_, iso_;
  std::vector<uint64_t> scratch_;
  std::vector<std::pair<int, int>> scratch_spans_;
  std::vector<int> empty_;
};

// ---------------------------------------------------------------------------
// Native constructions in the concrete backends.
// ---------------------------------------------------------------------------

struct ConcretePullback {
  ConcreteObj apex;
  ConcreteHom p1;  // apex -> dom(f)
  ConcreteHom p2;  // apex -> dom(g)
};

/// Pullback of f: A -> C, g: B -> C: pairs with f(a) = g(b), componentwise
/// structure (graph: tensor-style edges; poset: product order).
inline ConcretePullback pullback_concrete(const ConcreteHom& f, const ConcreteHom& g) {
  require(f.dom.backend == g.dom.backend, Errc::BackendMismatch, "pullback_concrete");
  require(f.cod == g.cod, Errc::EndpointMismatch, "pullback_concrete: cods differ");
  const ConcreteObj &A = f.dom, &B = g.dom;
  std::vector<std::pair<int, int>> pts;
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < B.size(); ++b)
      if (f.map[a] == g.map[b]) pts.emplace_back(a, b);

  ConcreteObj apex;
  apex.backend = A.backend;
  for (auto [a, b] : pts) apex.elems.push_back("(" + A.elems[a] + "," + B.elems[b] + ")");
  const int n = static_cast<int>(pts.size());
  if (A.backend == Backend::Graph) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (A.adjacent(pts[i].first, pts[j].first) && B.adjacent(pts[i].second, pts[j].second))
          apex.edges.emplace_back(i, j);
  } else if (A.backend == Backend::Poset) {
    apex.leq.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (A.le(pts[i].first, pts[j].first) && B.le(pts[i].second, pts[j].second))
          apex.leq[static_cast<size_t>(i) * n + j] = 1;
  }

  ConcreteHom p1{apex, A, {}}, p2{apex, B, {}};
  for (auto [a, b] : pts) {
    p1.map.push_back(a);
    p2.map.push_back(b);
  }
  return {std::move(apex), std::move(p1), std::move(p2)};
}

inline ConcretePullback kernel_pair_concrete(const ConcreteHom& f) {
  return pullback_concrete(f, f);
}

/// Equalizer of parallel f, g: the substructure of the domain where they
/// agree, with its inclusion.
inline std::pair<ConcreteObj, ConcreteHom> equalizer_concrete(const ConcreteHom& f,
                                                              const ConcreteHom& g) {
  require(f.dom == g.dom && f.cod == g.cod, Errc::NotParallel, "equalizer_concrete");
  const ConcreteObj& A = f.dom;
  std::vector<int> keep;
  for (int a = 0; a < A.size(); ++a)
    if (f.map[a] == g.map[a]) keep.push_back(a);

  ConcreteObj sub;
  sub.backend = A.backend;
  std::vector<int> pos(A.size(), -1);
  for (size_t i = 0; i < keep.size(); ++i) {
    pos[keep[i]] = static_cast<int>(i);
    sub.elems.push_back(A.elems[keep[i]]);
  }
  const int n = static_cast<int>(keep.size());
  if (A.backend == Backend::Graph) {
    for (auto [a, b] : A.edges)
      if (pos[a] >= 0 && pos[b] >= 0) sub.edges.emplace_back(pos[a], pos[b]);
    std::sort(sub.edges.begin(), sub.edges.end());
  } else if (A.backend == Backend::Poset) {
    sub.leq.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (A.le(keep[i], keep[j])) sub.leq[static_cast<size_t>(i) * n + j] = 1;
  }
  ConcreteHom incl{sub, A, keep};
  return {std::move(sub), std::move(incl)};
}

/// Coequalizer of parallel f, g: quotient of the codomain by the
/// equivalence closure of f(x) ~ g(x). Classes are listed by smallest
/// member and named positionally.
///
/// Graph: absent when an edge would collapse to a loop (no cocone exists).
/// Poset: induced relation, transitively closed; order-cycles collapse and
/// the construction iterates until antisymmetric (each round shrinks the
/// quotient, so it terminates).
inline std::optional<std::pair<ConcreteObj, ConcreteHom>> coequalizer_concrete(
    const ConcreteHom& f, const ConcreteHom& g) {
  require(f.dom == g.dom && f.cod == g.cod, Errc::NotParallel, "coequalizer_concrete");
  const ConcreteObj& B = f.cod;
  const int n = B.size();

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto merge = [&](int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (int x = 0; x < f.dom.size(); ++x) merge(f.map[x], g.map[x]);

  if (B.backend == Backend::Poset) {
    // Collapse order-cycles among classes until the induced order is a poset.
    while (true) {
      std::vector<int> rep(n);
      for (int i = 0; i < n; ++i) rep[i] = root(i);
      std::vector<int> reps;
      for (int i = 0; i < n; ++i)
        if (rep[i] == i) reps.push_back(i);
      const int k = static_cast<int>(reps.size());
      std::vector<int> idx(n, -1);
      for (int i = 0; i < k; ++i) idx[reps[i]] = i;
      std::vector<uint8_t> rel(static_cast<size_t>(k) * k, 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (B.le(a, b)) rel[static_cast<size_t>(idx[rep[a]]) * k + idx[rep[b]]] = 1;
      for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
          if (rel[static_cast<size_t>(i) * k + m])
            for (int j = 0; j < k; ++j)
              if (rel[static_cast<size_t>(m) * k + j]) rel[static_cast<size_t>(i) * k + j] = 1;
      bool merged = false;
      for (int i = 0; i < k && !merged; ++i)
        for (int j = i + 1; j < k && !merged; ++j)
          if (rel[static_cast<size_t>(i) * k + j] && rel[static_cast<size_t>(j) * k + i]) {
            merge(reps[i], reps[j]);
            merged = true;
          }
      if (!merged) break;
    }
  }

  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i)
    if (root(i) == i) reps.push_back(i);
  for (int i = 0; i < n; ++i)
    cls[i] = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), root(i)) - reps.begin());
  const int k = static_cast<int>(reps.size());

  ConcreteObj q;
  q.backend = B.backend;
  for (int i = 0; i < k; ++i) q.elems.push_back(std::to_string(i));

  if (B.backend == Backend::Graph) {
    for (auto [a, b] : B.edges) {
      if (cls[a] == cls[b]) return std::nullopt;  // would need a loop; no cocone exists
      auto p = std::minmax(cls[a], cls[b]);
      q.edges.emplace_back(p.first, p.second);
    }
    std::sort(q.edges.begin(), q.edges.end());
    q.edges.erase(std::unique(q.edges.begin(), q.edges.end()), q.edges.end());
  } else if (B.backend == Backend::Poset) {
    q.leq.assign(static_cast<size_t>(k) * k, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (B.le(a, b)) q.leq[static_cast<size_t>(cls[a]) * k + cls[b]] = 1;
    for (int i = 0; i < k; ++i) q.leq[static_cast<size_t>(i) * k + i] = 1;
    for (int m = 0; m < k; ++m)
      for (int i = 0; i < k; ++i)
        if (q.leq[static_cast<size_t>(i) * k + m])
          for (int j = 0; j < k; ++j)
            if (q.leq[static_cast<size_t>(m) * k + j]) q.leq[static_cast<size_t>(i) * k + j] = 1;
  }

  ConcreteHom proj{B, q, cls};
  return std::make_pair(std::move(q), std::move(proj));
}

}  // namespace fincat
