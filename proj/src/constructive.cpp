#include "zsc/constructive.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "zsc/error.hpp"
#include "zsc/group.hpp"

namespace zsc {

std::string TraceStep::label() const {
  switch (kind) {
    case Kind::kBase1: return "Base1";
    case Kind::kBase2: return "Base2";
    case Kind::kAppend: return "Append";
    case Kind::kQuotient: return "Quotient(" + std::to_string(detail) + ")";
    case Kind::kHeavyTriple: return "HeavyTriple";
    case Kind::kDominatingEdge: return "DominatingEdge";
    case Kind::kOracleFallback: return "OracleFallback";
  }
  return "?";
}

int count_steps(const Trace& trace, TraceStep::Kind kind) {
  return static_cast<int>(std::count_if(trace.begin(), trace.end(),
                                        [kind](const TraceStep& s) { return s.kind == kind; }));
}

// ---------------------------------------------------------------------------
// Zero-edge orders and the dominating structure

std::variant<std::vector<int>, CycleWitness> zero_edge_order(const WeightedDigraph& derived,
                                                             VertexSet vertices) {
  const GroupElem zero = derived.group().zero();
  vertices &= derived.vertices();
  auto zero_edge = [&](int a, int b) { return derived.has_edge(a, b) && derived.weight(a, b) == zero; };

  // A vertex may be placed once every zero edge leaving it points at a
  // placed vertex.
  std::vector<int> pending(derived.size(), 0);
  for (int a : members(vertices)) {
    for (int b : members(vertices)) {
      if (a != b && zero_edge(a, b)) ++pending[a];
    }
  }
  std::vector<int> order;
  VertexSet left = vertices;
  while (left) {
    int pick = -1;
    for (int a : members(left)) {
      if (pending[a] == 0) {
        pick = a;
        break;
      }
    }
    if (pick < 0) break;
    order.push_back(pick);
    left &= ~vertex_bit(pick);
    for (int a : members(left)) {
      if (zero_edge(a, pick)) --pending[a];
    }
  }
  if (!left) return order;

  // Every remaining vertex has a zero edge into the remainder: walk until a
  // vertex repeats.
  std::vector<int> walk;
  std::vector<int> seen_at(derived.size(), -1);
  int cur = lowest_vertex(left);
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    int next = -1;
    for (int b : members(left)) {
      if (b != cur && zero_edge(cur, b)) {
        next = b;
        break;
      }
    }
    if (next < 0) throw LemmaViolation("zero-edge walk got stuck");
    cur = next;
  }
  std::vector<int> cyc(walk.begin() + seen_at[cur], walk.end());
  return CycleWitness{cyc, true, cycle_weight(derived, cyc)};
}

namespace {

std::optional<std::string> structure_error(const WeightedDigraph& d, VertexSet vs, int x, int y,
                                           GroupElem c) {
  const GroupSpec& grp = d.group();
  const GroupElem zero = grp.zero();
  const GroupElem minus_c = grp.neg(c);
  if (c == zero) return "c must be nonzero";
  if (!contains(vs, x) || !contains(vs, y) || x == y) return "dominating edge endpoints invalid";
  if (set_size(vs) < 3) return "structure needs at least 3 vertices";
  if (!d.is_complete_on(vs)) return "derived weighting is not complete on the vertex set";
  if (d.weight(x, y) != zero) return "dominating edge xy does not weigh 0";
  if (d.weight(y, x) != minus_c) return "reverse edge yx does not weigh -c";
  for (int p : members(vs)) {
    for (int q : members(vs)) {
      if (p == q || (p == y && q == x)) continue;
      GroupElem w = d.weight(p, q);
      if (w != zero && w != c) {
        return "edge (" + std::to_string(p) + "," + std::to_string(q) + ") weighs neither 0 nor c";
      }
    }
  }
  for (int z : members(vs)) {
    if (z == x || z == y) continue;
    bool zx = d.weight(z, x) == zero;
    bool yz = d.weight(y, z) == zero;
    if (zx == yz) return "vertex " + std::to_string(z) + " is not dominated exactly once";
  }
  if (std::holds_alternative<CycleWitness>(zero_edge_order(d, vs))) return "zero edges contain a cycle";
  return std::nullopt;
}

}  // namespace

void check_dominating_structure(const DominatingStructure& s) {
  if (auto err = structure_error(s.derived, s.vertices, s.x, s.y, s.c)) {
    throw DomainError("invalid dominating structure: " + *err);
  }
}

PathWitness dominating_order_hampath(const DominatingStructure& s) {
  check_dominating_structure(s);
  auto order = std::get<std::vector<int>>(zero_edge_order(s.derived, s.vertices));
  const auto l = order.size();
  auto it = std::find(order.begin(), order.end(), s.y);
  auto i = static_cast<std::size_t>(it - order.begin());
  if (i + 1 >= l || order[i + 1] != s.x) throw DomainError("dominating edge is not consecutive in the order");

  std::vector<int> path;
  if (i == 0) {
    path.assign(order.begin() + 1, order.end());
    path.push_back(order[0]);
  } else if (i + 1 == l - 1) {
    path.push_back(order[l - 1]);
    path.insert(path.end(), order.begin(), order.end() - 1);
  } else {
    path.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
    path.insert(path.end(), order.begin() + static_cast<std::ptrdiff_t>(i) + 1, order.end());
    path.push_back(order[i]);
  }
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    if (s.derived.weight(path[j], path[j + 1]) != s.c) {
      throw DomainError("reordered path has an edge not of weight c");
    }
  }
  return PathWitness{path, path_weight(s.derived, path)};
}

StructureSearch establish_dominating_structure(const WeightedDigraph& derived, VertexSet vertices,
                                               GroupElem a) {
  const GroupSpec& grp = derived.group();
  const GroupElem minus_a = grp.neg(a);

  auto has_both = [&](VertexSet vs) {
    bool plus = false, minus = false;
    for (int p : members(vs)) {
      for (int q : members(vs)) {
        if (p == q) continue;
        GroupElem w = derived.weight(p, q);
        plus |= w == a;
        minus |= w == minus_a;
      }
    }
    return plus && minus;
  };

  // Zero cycle or heavy triple inside a small vertex set.
  auto local = [&](VertexSet vs) -> StructureSearch {
    if (auto cyc = find_zero_cycle(derived, 2, vs); cyc.cycle) return {*cyc.cycle};
    if (auto ht = find_heavy_triple(derived, a, vs)) return {*ht};
    return {};
  };

  auto holds = [&](VertexSet vs, int x, int y, GroupElem c) {
    return !structure_error(derived, vs, x, y, c).has_value();
  };

  std::function<StructureSearch(VertexSet)> rec = [&](VertexSet vs) -> StructureSearch {
    if (set_size(vs) <= 3) {
      for (int x : members(vs)) {
        for (int y : members(vs)) {
          if (x == y) continue;
          for (GroupElem c : {a, minus_a}) {
            if (holds(vs, x, y, c)) return {DominatingStructure{derived, vs, x, y, c}};
          }
        }
      }
      return local(vs);
    }
    // Drop a vertex whose removal keeps edges of both weights.
    int z = -1;
    for (int cand : members(vs)) {
      if (has_both(vs & ~vertex_bit(cand))) {
        z = cand;
        break;
      }
    }
    if (z < 0) return {};
    StructureSearch sub = rec(vs & ~vertex_bit(z));
    if (!std::holds_alternative<DominatingStructure>(sub.result)) return sub;
    const auto& s = std::get<DominatingStructure>(sub.result);
    if (holds(vs, s.x, s.y, s.c)) return {DominatingStructure{derived, vs, s.x, s.y, s.c}};
    // The structure on vs - z fails to extend; the obstruction lives on
    // {x, y, z, p} for some p.
    VertexSet core = vertex_bit(s.x) | vertex_bit(s.y) | vertex_bit(z);
    for (int p : members(vs & ~core)) {
      StructureSearch hit = local(core | vertex_bit(p));
      if (!hit.failed()) return hit;
    }
    return {};
  };

  vertices &= derived.vertices();
  if (set_size(vertices) < 3 || !has_both(vertices)) return {};
  return rec(vertices);
}

// ---------------------------------------------------------------------------
// Lemma / theorem recursion

namespace {

constexpr int kMaxDepth = 512;

using Outcome = std::variant<CycleWitness, PathFamily>;

class Solver {
 public:
  explicit Solver(Trace& trace) : trace_(trace) {}

  Outcome lemma(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int depth);
  CycleWitness theorem(const WeightedDigraph& g, VertexSet scope, int depth);

 private:
  void note(TraceStep::Kind kind, int detail = 0) { trace_.push_back({kind, detail}); }

  static CycleWitness cycle_of(const WeightedDigraph& g, std::vector<int> seq) {
    GroupElem w = cycle_weight(g, seq);
    return CycleWitness{std::move(seq), true, w};
  }

  static Outcome checked_cycle(const WeightedDigraph& g, const std::vector<int>& seq, VertexSet allowed) {
    CycleWitness c = cycle_of(g, seq);
    if (!is_zero_cycle(g, c, 2, allowed)) throw LemmaViolation("constructed cycle is not a zero cycle");
    return c;
  }

  static Outcome checked_family(const WeightedDigraph& g, int v, int u,
                                const std::vector<std::vector<int>>& paths, int r, VertexSet interior) {
    PathFamily fam{v, u, {}};
    for (const auto& p : paths) fam.paths.push_back(PathWitness{p, path_weight(g, p)});
    if (!is_valid_family(g, fam, r, interior, 3)) {
      throw LemmaViolation("constructed path family does not validate");
    }
    fam.paths.resize(r);
    return fam;
  }

  // Distinct-weight subset of candidate paths, or nullopt if fewer than r.
  static std::optional<std::vector<std::vector<int>>> distinct(const WeightedDigraph& g,
                                                                const std::vector<std::vector<int>>& cand,
                                                                int r) {
    std::vector<std::vector<int>> out;
    std::vector<GroupElem> seen;
    for (const auto& p : cand) {
      GroupElem w = path_weight(g, p);
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      seen.push_back(w);
      out.push_back(p);
      if (static_cast<int>(out.size()) == r) return out;
    }
    return std::nullopt;
  }

  Outcome fallback(const WeightedDigraph& g, int v, int u, int r, VertexSet interior) {
    note(TraceStep::Kind::kOracleFallback);
    if (auto cyc = find_zero_cycle(g, 2, interior); cyc.cycle) return *cyc.cycle;
    auto fam = distinct_weight_paths(g, v, u, r, interior, {}, true);
    if (fam.family) return *fam.family;
    throw LemmaViolation("neither a zero cycle nor " + std::to_string(r) + " distinct-weight paths exist");
  }

  Outcome divisor_case(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int d, int depth);
  Outcome unit_case(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int a, int depth);

  Trace& trace_;
};

Outcome Solver::lemma(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int depth) {
  if (depth > kMaxDepth) throw LemmaViolation("recursion depth bound exceeded");
  const GroupSpec& grp = g.group();
  const int k = grp.order();
  if (set_size(scope) < r + 2 * omega(k) || r < 1 || r >= k) {
    throw LemmaViolation("recursive call outside the lemma's hypotheses");
  }
  const VertexSet interior = scope & ~vertex_bit(v) & ~vertex_bit(u);
  auto w = [&](int a, int b) { return g.weight(a, b); };

  if (r == 1) {
    note(TraceStep::Kind::kBase1);
    int x = lowest_vertex(interior);
    return checked_family(g, v, u, {{v, x, u}}, 1, interior);
  }

  if (r == 2) {
    note(TraceStep::Kind::kBase2);
    auto xs = members(interior);
    int x = xs[0], y = xs[1];
    if (w(x, u) != grp.add(w(x, y), w(y, u))) return checked_family(g, v, u, {{v, x, u}, {v, x, y, u}}, 2, interior);
    if (w(y, u) != grp.add(w(y, x), w(x, u))) return checked_family(g, v, u, {{v, y, u}, {v, y, x, u}}, 2, interior);
    return checked_cycle(g, {x, y}, interior);
  }

  // r >= 3: r-1 paths to x, then the edge xu.
  const int x0 = lowest_vertex(interior);
  Outcome sub = lemma(g, scope & ~vertex_bit(u), v, x0, r - 1, depth + 1);
  if (auto* c = std::get_if<CycleWitness>(&sub)) return checked_cycle(g, c->vertices, interior);
  note(TraceStep::Kind::kAppend);

  auto achieved = distinct_weight_paths(g, v, u, r, interior, {}, true);
  if (achieved.family) return *achieved.family;
  if (static_cast<int>(achieved.achieved.size()) != r - 1) {
    throw LemmaViolation("achieved weight set smaller than the appended family");
  }
  std::vector<int> codes;
  for (auto e : achieved.achieved) codes.push_back(e.code);
  const ResidueSet aset(k, codes);
  const ResidueSet shifts = shift_set(aset);

  std::vector<int> xs = members(interior);
  for (int x : xs) {
    for (int y : xs) {
      if (x >= y) continue;
      if (w(x, u) == grp.add(w(x, y), w(y, u)) && w(y, u) == grp.add(w(y, x), w(x, u))) {
        note(TraceStep::Kind::kBase2);
        return checked_cycle(g, {x, y}, interior);
      }
    }
  }
  // Every derived weight must be a shift of A; when one is not, the smaller
  // instance that would certify it has to produce a zero cycle instead.
  for (int x : xs) {
    for (int y : xs) {
      if (x == y) continue;
      GroupElem e1 = grp.sub(grp.add(w(x, y), w(y, u)), w(x, u));
      if (!shifts.contains(e1.code)) {
        Outcome s = lemma(g, scope & ~vertex_bit(u) & ~vertex_bit(y), v, x, r - 2, depth + 1);
        if (auto* c = std::get_if<CycleWitness>(&s)) return checked_cycle(g, c->vertices, interior);
        return fallback(g, v, u, r, interior);
      }
      GroupElem e2 = grp.sub(grp.add(w(v, y), w(y, x)), w(v, x));
      if (!shifts.contains(e2.code)) {
        Outcome s = lemma(g, scope & ~vertex_bit(v) & ~vertex_bit(y), x, u, r - 2, depth + 1);
        if (auto* c = std::get_if<CycleWitness>(&s)) return checked_cycle(g, c->vertices, interior);
        return fallback(g, v, u, r, interior);
      }
    }
  }

  NearApClassification cls;
  try {
    cls = classify_near_ap(aset);
  } catch (const LemmaViolation&) {
    return fallback(g, v, u, r, interior);
  }
  switch (cls.tag) {
    case NearApClassification::Tag::kDivisorCase:
      return divisor_case(g, scope, v, u, r, cls.divisor, depth);
    case NearApClassification::Tag::kUnitCase:
      return unit_case(g, scope, v, u, r, cls.unit, depth);
    case NearApClassification::Tag::kNotNearAp:
      break;
  }
  return fallback(g, v, u, r, interior);
}

Outcome Solver::divisor_case(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int d,
                             int depth) {
  const GroupSpec& grp = g.group();
  const int k = grp.order();
  const int kq = k / d;
  const VertexSet interior = scope & ~vertex_bit(v) & ~vertex_bit(u);
  note(TraceStep::Kind::kQuotient, d);

  if (r >= kq) {
    // Zero cycle of the quotient over Z_{k/d} lifts to a zero cycle.
    WeightedDigraph q = quotient_weighting(g, u, d, ~scope | vertex_bit(v));
    CycleWitness c = theorem(q, interior, depth + 1);
    return checked_cycle(g, c.vertices, interior);
  }

  // All source-sink path weights agree mod d; re-weight so that
  // w(P) = w'(P) * d + alpha over Z_{k/d}.
  const GroupSpec quotient = GroupSpec::cyclic(kq);
  const int x0 = lowest_vertex(interior);
  const int alpha = grp.add(g.weight(v, x0), g.weight(x0, u)).code % d;
  WeightedDigraph q = WeightedDigraph::complete(quotient, g.size());
  auto divide = [&](GroupElem e) -> std::optional<GroupElem> {
    if (e.code % d != 0) return std::nullopt;
    return quotient.element(e.code / d);
  };
  for (int x : members(interior)) {
    auto head = divide(grp.sub(grp.add(g.weight(v, x), g.weight(x, u)), grp.element(alpha)));
    if (!head) return fallback(g, v, u, r, interior);
    q.set_edge(v, x, *head);
    q.set_edge(x, u, quotient.zero());
    for (int y : members(interior)) {
      if (x == y) continue;
      auto e = divide(grp.sub(grp.add(g.weight(x, y), g.weight(y, u)), g.weight(x, u)));
      if (!e) return fallback(g, v, u, r, interior);
      q.set_edge(x, y, *e);
    }
  }
  Outcome sub = lemma(q, scope, v, u, r, depth + 1);
  if (auto* c = std::get_if<CycleWitness>(&sub)) return checked_cycle(g, c->vertices, interior);
  std::vector<std::vector<int>> paths;
  for (const auto& p : std::get<PathFamily>(sub).paths) paths.push_back(p.vertices);
  return checked_family(g, v, u, paths, r, interior);
}

Outcome Solver::unit_case(const WeightedDigraph& g, VertexSet scope, int v, int u, int r, int a_code,
                          int depth) {
  const GroupSpec& grp = g.group();
  const VertexSet interior = scope & ~vertex_bit(v) & ~vertex_bit(u);
  const GroupElem a = grp.element(a_code);
  const WeightedDigraph derived = derived_weighting(g, u, ~scope | vertex_bit(v));

  auto order_or_cycle = zero_edge_order(derived, interior);
  if (auto* c = std::get_if<CycleWitness>(&order_or_cycle)) {
    note(TraceStep::Kind::kDominatingEdge);
    return checked_cycle(g, c->vertices, interior);
  }

  if (auto ht = find_heavy_triple(derived, a, interior)) {
    note(TraceStep::Kind::kHeavyTriple);
    const int x = ht->x, y = ht->y, z = ht->z;
    if (r == 3) return checked_family(g, v, u, {{v, x, u}, {v, x, y, u}, {v, x, y, z, u}}, 3, interior);
    Outcome sub = lemma(g, scope & ~vertex_bit(u) & ~vertex_bit(y) & ~vertex_bit(z), v, x, r - 3, depth + 1);
    if (auto* c = std::get_if<CycleWitness>(&sub)) return checked_cycle(g, c->vertices, interior);
    std::vector<std::vector<int>> cand;
    for (const auto& p : std::get<PathFamily>(sub).paths) {
      for (std::vector<int> tail : {std::vector<int>{u}, {y, u}, {z, u}, {y, z, u}}) {
        std::vector<int> q = p.vertices;
        q.insert(q.end(), tail.begin(), tail.end());
        cand.push_back(std::move(q));
      }
    }
    if (auto fam = distinct(g, cand, r)) return checked_family(g, v, u, *fam, r, interior);
    return fallback(g, v, u, r, interior);
  }

  note(TraceStep::Kind::kDominatingEdge);
  bool plus = false, minus = false;
  for (int p : members(interior)) {
    for (int q : members(interior)) {
      if (p == q) continue;
      plus |= derived.weight(p, q) == a;
      minus |= derived.weight(p, q) == grp.neg(a);
    }
  }

  std::vector<int> ham;
  if (!(plus && minus)) {
    // One nonzero weight only: the zero-edge order itself is the path.
    ham = std::get<std::vector<int>>(order_or_cycle);
  } else {
    StructureSearch st = establish_dominating_structure(derived, interior, a);
    if (auto* c = std::get_if<CycleWitness>(&st.result)) return checked_cycle(g, c->vertices, interior);
    auto* s = std::get_if<DominatingStructure>(&st.result);
    if (!s) return fallback(g, v, u, r, interior);
    try {
      ham = dominating_order_hampath(*s).vertices;
    } catch (const DomainError&) {
      // The reordering needs w'(zy) = c for every z, which holds unless some
      // x, z, y is a zero triangle.
      for (int z : members(interior & ~vertex_bit(s->x) & ~vertex_bit(s->y))) {
        std::vector<int> tri{s->x, z, s->y};
        if (cycle_weight(derived, tri) == grp.zero()) return checked_cycle(g, tri, interior);
      }
      return fallback(g, v, u, r, interior);
    }
  }
  std::vector<std::vector<int>> paths;
  for (int i = 1; i <= r; ++i) {
    std::vector<int> p{v};
    p.insert(p.end(), ham.begin(), ham.begin() + i);
    p.push_back(u);
    paths.push_back(std::move(p));
  }
  // A non-constant step means the order was not a single-weight path.
  if (!distinct(g, paths, r)) return fallback(g, v, u, r, interior);
  return checked_family(g, v, u, paths, r, interior);
}

CycleWitness Solver::theorem(const WeightedDigraph& g, VertexSet scope, int depth) {
  if (depth > kMaxDepth) throw LemmaViolation("recursion depth bound exceeded");
  const GroupSpec& grp = g.group();
  const int k = grp.order();
  auto w = [&](int a, int b) { return g.weight(a, b); };
  auto vs = members(scope);
  if (static_cast<int>(vs.size()) < k + 2 * omega(k)) throw LemmaViolation("theorem call below threshold");

  // Find (x, y, z) with w(xy) != w(xz) + w(zy); otherwise zy is a zero 2-cycle.
  int x = vs[0], y = -1, z = -1;
  if (w(x, vs[1]) != grp.add(w(x, vs[2]), w(vs[2], vs[1]))) {
    y = vs[1];
    z = vs[2];
  } else if (w(x, vs[2]) != grp.add(w(x, vs[1]), w(vs[1], vs[2]))) {
    y = vs[2];
    z = vs[1];
  } else {
    note(TraceStep::Kind::kBase2);
    return std::get<CycleWitness>(checked_cycle(g, {vs[2], vs[1]}, scope));
  }

  Outcome sub = lemma(g, scope & ~vertex_bit(z), y, x, k - 1, depth + 1);
  if (auto* c = std::get_if<CycleWitness>(&sub)) {
    return std::get<CycleWitness>(checked_cycle(g, c->vertices, scope));
  }
  const GroupElem direct = grp.neg(w(x, y));
  const GroupElem detour = grp.neg(grp.add(w(x, z), w(z, y)));
  for (const auto& p : std::get<PathFamily>(sub).paths) {
    if (p.weight == direct) return std::get<CycleWitness>(checked_cycle(g, p.vertices, scope));
  }
  for (const auto& p : std::get<PathFamily>(sub).paths) {
    if (p.weight == detour) {
      std::vector<int> seq = p.vertices;
      seq.push_back(z);
      return std::get<CycleWitness>(checked_cycle(g, seq, scope));
    }
  }
  throw LemmaViolation("k-1 distinct path weights miss both closing targets");
}

void check_lemma_input(const WeightedDigraph& g, VertexSet scope, int k) {
  if (!g.group().is_cyclic()) throw DomainError("the constructive solvers need a cyclic group Z_k");
  if (scope & ~g.vertices()) throw DomainError("scope contains vertices outside the graph");
  if (!g.is_complete_on(scope)) throw DomainError("graph is not complete on the scope");
  for (int v : members(scope)) {
    if (g.vertex_weight(v) != g.group().zero()) {
      throw DomainError("vertex weights must be zero; normalize first");
    }
  }
  (void)k;
}

}  // namespace

LemmaOneOutcome lemma_one_solve(const WeightedDigraph& g, int source, int sink, int r, VertexSet scope) {
  scope &= g.vertices();
  const int k = g.group().order();
  check_lemma_input(g, scope, k);
  if (source == sink || !contains(scope, source) || !contains(scope, sink)) {
    throw DomainError("source and sink must be distinct vertices of the scope");
  }
  if (r < 1 || r >= k) throw DomainError("r must satisfy 1 <= r < k");
  if (set_size(scope) < r + 2 * omega(k)) {
    throw DomainError("need at least r + 2*omega(k) = " + std::to_string(r + 2 * omega(k)) + " vertices");
  }
  LemmaOneOutcome out;
  Solver solver(out.trace);
  out.result = solver.lemma(g, scope, source, sink, r, 0);
  return out;
}

TheoremOutcome theorem_main_solve(const WeightedDigraph& g, VertexSet scope) {
  scope &= g.vertices();
  const int k = g.group().order();
  check_lemma_input(g, scope, k);
  if (set_size(scope) < k + 2 * omega(k)) {
    throw DomainError("need at least k + 2*omega(k) = " + std::to_string(k + 2 * omega(k)) + " vertices");
  }
  TheoremOutcome out;
  Solver solver(out.trace);
  out.cycle = solver.theorem(g, scope, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Extremal constructions

WeightedDigraph build_extremal_digraph(int k) {
  if (k < 2) throw DomainError("k must be >= 2");
  GroupSpec grp = GroupSpec::cyclic(k);
  WeightedDigraph g = WeightedDigraph::complete(grp, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) g.set_edge(i, j, grp.from_int(i < j ? 0 : 1));
    }
  }
  return g;
}

std::vector<std::pair<int, int>> path_tree(int t) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < t; ++i) edges.emplace_back(i, i + 1);
  return edges;
}

WeightedGraph build_extremal_undirected(int k, std::span<const std::pair<int, int>> tree_edges) {
  if (k < 2) throw DomainError("k must be >= 2");
  if (tree_edges.empty()) throw DomainError("tree must have at least one edge");
  int t = 0;
  for (auto [a, b] : tree_edges) {
    if (a < 0 || b < 0) throw DomainError("negative tree vertex");
    t = std::max({t, a + 1, b + 1});
  }
  if (static_cast<int>(tree_edges.size()) != t - 1) throw DomainError("edge count is not t-1: not a tree");
  if (t + k - 1 > kMaxVertices) throw DomainError("construction too large");

  // Union-find: t-1 edges with no cycle on t vertices form a tree.
  std::vector<int> parent(t);
  for (int i = 0; i < t; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (auto [a, b] : tree_edges) {
    if (a == b) throw DomainError("self-loop in tree");
    int ra = find(a), rb = find(b);
    if (ra == rb) throw DomainError("tree edges contain a cycle or a duplicate");
    parent[ra] = rb;
  }

  GroupSpec grp = GroupSpec::cyclic(k);
  const int n = t + k - 1;
  WeightedGraph g(grp, n);
  for (auto [a, b] : tree_edges) g.set_edge(a, b, grp.zero());
  for (int c = t; c < n; ++c) {
    g.set_vertex_weight(c, grp.from_int(1));
    for (int other = 0; other < n; ++other) {
      if (other != c) g.set_edge(c, other, grp.zero());
    }
  }
  return g;
}

}  // namespace zsc
