#include "zsc/undirected.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "zsc/error.hpp"

namespace zsc {

bool is_clique_pair(const CliquePair& p) {
  const VertexSet all = p.g.vertices();
  if (p.clique & ~all) return false;
  if (p.clique == all) return false;
  for (int a : members(p.clique)) {
    if ((p.g.neighbors(a) & p.clique) != (p.clique & ~vertex_bit(a))) return false;
  }
  return true;
}

char config_type(const Configuration& c) { return static_cast<char>('A' + c.index()); }

int config_rank(const Configuration& c) {
  if (auto* cc = std::get_if<ConfigC>(&c)) return cc->rank;
  if (auto* d = std::get_if<ConfigD>(&c)) return d->rank;
  return 0;
}

nlohmann::ordered_json to_json(const Configuration& c) {
  nlohmann::ordered_json j;
  j["type"] = std::string(1, config_type(c));
  std::visit(
      [&](const auto& cfg) {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, ConfigA>) {
          j["x"] = cfg.x;
        } else if constexpr (std::is_same_v<T, ConfigB>) {
          j["x"] = cfg.x;
          j["y"] = cfg.y;
          j["path"] = cfg.path;
        } else if constexpr (std::is_same_v<T, ConfigC>) {
          j["rank"] = cfg.rank;
          j["x"] = cfg.x;
          j["y"] = cfg.y;
          j["paths"] = cfg.paths;
        } else {
          j["rank"] = cfg.rank;
          j["x"] = cfg.x;
          j["y"] = cfg.y;
          j["z"] = cfg.z;
          j["x_prime"] = cfg.xp;
          j["y_prime"] = cfg.yp;
          j["z_prime"] = cfg.zp;
          j["path_x"] = cfg.px;
          j["path_y"] = cfg.py;
          j["path_z"] = cfg.pz;
          j["paths"] = cfg.paths;
        }
      },
      c);
  return j;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

bool in_range(const CliquePair& p, int v) { return v >= 0 && v < p.g.size(); }

bool is_outside(const CliquePair& p, int v) { return in_range(p, v) && !contains(p.clique, v); }

// Simple path from `from` to `to` (a single vertex when they coincide) in
// G - V(K).
bool outside_path(const CliquePair& p, const VertexPath& path, int from, int to) {
  if (path.empty() || path.front() != from || path.back() != to) return false;
  for (int v : path) {
    if (!is_outside(p, v)) return false;
  }
  if (path.size() == 1) return true;
  return is_simple_path(p.g, path, from, to, kAllVertices);
}

VertexSet path_set(const VertexPath& path) {
  VertexSet s = 0;
  for (int v : path) s |= vertex_bit(v);
  return s;
}

VertexSet interior_set(const VertexPath& path) {
  VertexSet s = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) s |= vertex_bit(path[i]);
  return s;
}

// r pairwise-distinct-weight x-y paths in G - V(K), each of order >= 2.
bool distinct_family(const CliquePair& p, const std::vector<VertexPath>& paths, int r, int x, int y) {
  if (static_cast<int>(paths.size()) != r || x == y) return false;
  std::vector<GroupElem> seen;
  for (const auto& path : paths) {
    if (path.size() < 2 || !outside_path(p, path, x, y)) return false;
    GroupElem w = path_weight(p.g, path);
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) return false;
    seen.push_back(w);
  }
  return true;
}

}  // namespace

bool verify_configuration(const CliquePair& p, const Configuration& c) {
  if (!is_clique_pair(p)) return false;
  const int k = p.g.group().order();
  return std::visit(
      [&](const auto& cfg) -> bool {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, ConfigA>) {
          return is_outside(p, cfg.x) && p.clique_degree(cfg.x) >= 2 * k - 1;
        } else if constexpr (std::is_same_v<T, ConfigB>) {
          if (!is_outside(p, cfg.x) || !is_outside(p, cfg.y) || cfg.x == cfg.y) return false;
          if (p.clique_degree(cfg.x) < 2 * k - 2 || p.clique_degree(cfg.y) < 2 * k - 2) return false;
          return cfg.path.size() >= 2 && outside_path(p, cfg.path, cfg.x, cfg.y);
        } else if constexpr (std::is_same_v<T, ConfigC>) {
          const int r = cfg.rank;
          if (r < 2 || r > k) return false;
          if (!is_outside(p, cfg.x) || !is_outside(p, cfg.y)) return false;
          const int need = 2 * (k - r) + 1;
          if (p.clique_degree(cfg.x) < need || p.clique_degree(cfg.y) < need) return false;
          return distinct_family(p, cfg.paths, r, cfg.x, cfg.y);
        } else {
          const int r = cfg.rank;
          if (r < 2 || r >= k) return false;
          for (int v : {cfg.x, cfg.y, cfg.z, cfg.xp, cfg.yp, cfg.zp}) {
            if (!is_outside(p, v)) return false;
          }
          if (cfg.x == cfg.y || cfg.x == cfg.z || cfg.y == cfg.z) return false;
          if (!p.g.has_edge(cfg.x, cfg.z) || !p.g.has_edge(cfg.y, cfg.z)) return false;
          if (p.clique_degree(cfg.xp) < 2 * (k - r) - 1) return false;
          if (p.clique_degree(cfg.yp) < 2 * (k - r)) return false;
          if (p.clique_degree(cfg.zp) < 2 * (k - r)) return false;
          if (!outside_path(p, cfg.px, cfg.x, cfg.xp) || !outside_path(p, cfg.py, cfg.y, cfg.yp) ||
              !outside_path(p, cfg.pz, cfg.z, cfg.zp)) {
            return false;
          }
          const VertexSet sx = path_set(cfg.px), sy = path_set(cfg.py), sz = path_set(cfg.pz);
          if ((sx & sy) || (sx & sz) || (sy & sz)) return false;
          if (!distinct_family(p, cfg.paths, r, cfg.x, cfg.y)) return false;
          const VertexSet blocked = sx | sy | sz;
          return std::all_of(cfg.paths.begin(), cfg.paths.end(),
                             [&](const VertexPath& path) { return !(interior_set(path) & blocked); });
        }
      },
      c);
}

// ---------------------------------------------------------------------------
// Detection

namespace {

class Budgeted {
 public:
  explicit Budgeted(const SearchBudget& b) : budget_(b) {}

  SearchBudget remaining() const {
    SearchBudget b = budget_;
    if (b.max_nodes != std::numeric_limits<std::uint64_t>::max()) {
      b.max_nodes = used_ >= b.max_nodes ? 0 : b.max_nodes - used_;
    }
    return b;
  }
  bool tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > budget_.max_nodes) exceeded_ = true;
    if (budget_.deadline && std::chrono::steady_clock::now() > *budget_.deadline) exceeded_ = true;
    return !exceeded_;
  }
  void mark_exceeded() { exceeded_ = true; }
  bool exceeded() const { return exceeded_; }
  std::uint64_t used() const { return used_; }

 private:
  SearchBudget budget_;
  std::uint64_t used_ = 0;
  bool exceeded_ = false;
};

std::optional<VertexPath> outside_bfs(const CliquePair& p, int from, int to) {
  const VertexSet out = p.outside();
  std::vector<int> prev(p.g.size(), -1);
  std::vector<int> queue{from};
  VertexSet seen = vertex_bit(from);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int a = queue[head];
    if (a == to) break;
    for (int b : members(p.g.neighbors(a) & out & ~seen)) {
      seen |= vertex_bit(b);
      prev[b] = a;
      queue.push_back(b);
    }
  }
  if (!contains(seen, to)) return std::nullopt;
  VertexPath path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Paths in G - V(K) from `start` avoiding `blocked`, ending at the first
// vertex whose clique degree reaches `need`. Any longer path is dominated by
// one of these, so a complete search only needs them.
bool for_each_anchor_path(const CliquePair& p, int start, int need, VertexSet blocked, Budgeted& meter,
                          const std::function<bool(const VertexPath&)>& visit) {
  VertexPath path{start};
  const VertexSet out = p.outside();
  std::function<bool(VertexSet)> rec = [&](VertexSet used) -> bool {
    if (!meter.tick()) return false;
    int cur = path.back();
    if (p.clique_degree(cur) >= need) return visit(path);
    for (int b : members(p.g.neighbors(cur) & out & ~used & ~blocked)) {
      path.push_back(b);
      bool go = rec(used | vertex_bit(b));
      path.pop_back();
      if (!go) return false;
    }
    return true;
  };
  return rec(vertex_bit(start));
}

std::vector<VertexPath> to_paths(const PathFamily& f) {
  std::vector<VertexPath> out;
  for (const auto& p : f.paths) out.push_back(p.vertices);
  return out;
}

}  // namespace

ConfigSearch detect_configuration(const CliquePair& p, const SearchBudget& budget) {
  if (!is_clique_pair(p)) throw DomainError("K must be a proper clique of G");
  const int k = p.g.group().order();
  const auto out = members(p.outside());
  Budgeted meter(budget);
  ConfigSearch res;
  auto found = [&](Configuration c) {
    res.status = SearchStatus::kFound;
    res.config = std::move(c);
    res.nodes = meter.used();
    return res;
  };
  auto gave_up = [&] {
    res.status = SearchStatus::kBudgetExceeded;
    res.nodes = meter.used();
    return res;
  };

  for (int x : out) {
    if (p.clique_degree(x) >= 2 * k - 1) return found(ConfigA{x});
  }
  for (int x : out) {
    for (int y : out) {
      if (x >= y || p.clique_degree(x) < 2 * k - 2 || p.clique_degree(y) < 2 * k - 2) continue;
      if (auto path = outside_bfs(p, x, y)) return found(ConfigB{x, y, *path});
    }
  }
  for (int r = k; r >= 2; --r) {
    const int need = 2 * (k - r) + 1;
    for (int x : out) {
      for (int y : out) {
        if (x >= y || p.clique_degree(x) < need || p.clique_degree(y) < need) continue;
        auto s = distinct_weight_paths(p.g, x, y, r, p.outside(), meter.remaining(), true, 2);
        meter.tick(s.nodes);
        if (s.family) return found(ConfigC{r, x, y, to_paths(*s.family)});
        if (s.status == SearchStatus::kBudgetExceeded) return gave_up();
      }
    }
  }
  for (int r = k - 1; r >= 2; --r) {
    std::optional<ConfigD> hit;
    for (int z : out) {
      const VertexSet nz = p.g.neighbors(z) & p.outside();
      for (int x : members(nz)) {
        for (int y : members(nz)) {
          if (x == y) continue;
          for_each_anchor_path(p, x, 2 * (k - r) - 1, vertex_bit(y) | vertex_bit(z), meter,
                               [&](const VertexPath& px) {
            const VertexSet sx = path_set(px);
            return for_each_anchor_path(p, y, 2 * (k - r), sx | vertex_bit(z), meter,
                                        [&](const VertexPath& py) {
              const VertexSet sy = path_set(py);
              return for_each_anchor_path(p, z, 2 * (k - r), sx | sy, meter, [&](const VertexPath& pz) {
                const VertexSet blocked = sx | sy | path_set(pz);
                const VertexSet interior = p.outside() & ~blocked;
                auto s = distinct_weight_paths(p.g, x, y, r, interior, meter.remaining(), true, 2);
                if (!meter.tick(s.nodes)) return false;
                if (s.status == SearchStatus::kBudgetExceeded) {
                  meter.mark_exceeded();
                  return false;
                }
                if (!s.family) return true;
                hit = ConfigD{r, x, y, z, px.back(), py.back(), pz.back(), px, py, pz, to_paths(*s.family)};
                return false;
              });
            });
          });
          if (hit) return found(*hit);
          if (meter.exceeded()) return gave_up();
        }
      }
    }
  }
  res.status = SearchStatus::kExhausted;
  res.nodes = meter.used();
  return res;
}

// ---------------------------------------------------------------------------
// Peeling

std::vector<int> lowest_non_neighbour_map(const CliquePair& p, int u) {
  std::vector<int> f(p.g.size(), -1);
  for (int v : members(p.g.neighbors(u) & p.outside())) {
    VertexSet non = p.clique & ~p.g.neighbors(v);
    if (non) f[v] = lowest_vertex(non);
  }
  return f;
}

PeelResult clique_peel_step(const CliquePair& p, int u, const std::vector<int>& f) {
  if (!is_clique_pair(p)) throw DomainError("K must be a proper clique of G");
  if (!contains(p.clique, u)) throw DomainError("u must be a vertex of K");
  for (int v : members(p.outside())) {
    if ((p.g.neighbors(v) & p.clique) == p.clique) {
      throw DomainError("vertex " + std::to_string(v) + " is adjacent to all of K");
    }
  }
  const VertexSet movers = p.g.neighbors(u) & p.outside();
  for (int v : members(movers)) {
    if (static_cast<std::size_t>(v) >= f.size()) throw DomainError("f is undefined on N(u) - K");
    int t = f[v];
    if (t < 0 || !contains(p.clique, t) || t == u) {
      throw DomainError("f(" + std::to_string(v) + ") must be a vertex of K other than u");
    }
    if (p.g.has_edge(v, t)) {
      throw DomainError("f(" + std::to_string(v) + ") = " + std::to_string(t) + " is adjacent to it");
    }
  }

  const VertexSet keep = p.g.vertices() & ~vertex_bit(u);
  PeelResult res{CliquePair{p.g.induced(keep), 0}, members(keep)};
  std::vector<int> to_new(p.g.size(), -1);
  for (std::size_t i = 0; i < res.to_original.size(); ++i) to_new[res.to_original[i]] = static_cast<int>(i);
  for (int c : members(p.clique & ~vertex_bit(u))) res.pair.clique |= vertex_bit(to_new[c]);
  for (int v : members(movers)) res.pair.g.set_edge(to_new[v], to_new[f[v]], p.g.group().zero());
  return res;
}

// ---------------------------------------------------------------------------
// The reduction

namespace {

using Result = std::variant<CycleWitness, Configuration>;

VertexPath reversed(VertexPath p) {
  std::reverse(p.begin(), p.end());
  return p;
}

VertexPath join(std::initializer_list<const VertexPath*> parts) {
  VertexPath out;
  for (const VertexPath* part : parts) {
    for (int v : *part) {
      if (out.empty() || out.back() != v) out.push_back(v);
    }
  }
  return out;
}

ConfigD swap_xy(ConfigD d) {
  std::swap(d.x, d.y);
  std::swap(d.xp, d.yp);
  std::swap(d.px, d.py);
  for (auto& path : d.paths) path = reversed(path);
  return d;
}

class Reducer {
 public:
  explicit Reducer(ReductionOutcome& out) : out_(out) {}

  Result solve(const CliquePair& p, int depth);

 private:
  std::optional<Result> transform(const CliquePair& p, int v, const Configuration& sub);
  std::optional<Result> extend_a(const CliquePair& p, int v, const ConfigA& a);
  std::optional<Result> extend_b(const CliquePair& p, int v, const ConfigB& b);
  std::optional<Result> extend_c(const CliquePair& p, int v, const ConfigC& c);
  std::optional<Result> extend_d(const CliquePair& p, int v, const ConfigD& d);
  std::optional<Result> qst(const CliquePair& p, int v, const ConfigD& d);

  Result fallback(const CliquePair& p, const std::string& why) {
    ++out_.fallbacks;
    out_.log.push_back("fallback: " + why);
    if (auto c = find_zero_cycle(p.g, 3, p.outside()); c.cycle) return *c.cycle;
    if (auto d = detect_configuration(p); d.config) return *d.config;
    throw LemmaViolation("neither a zero cycle nor a configuration exists");
  }

  static bool valid(const CliquePair& p, const Result& r) {
    if (auto* c = std::get_if<CycleWitness>(&r)) return is_zero_cycle(p.g, *c, 3, p.outside());
    return verify_configuration(p, std::get<Configuration>(r));
  }

  static CycleWitness cycle_of(const CliquePair& p, VertexPath seq) {
    GroupElem w = cycle_weight(p.g, seq);
    return CycleWitness{std::move(seq), false, w};
  }

  // First r+1 pairwise-distinct weights among the candidates.
  static std::optional<std::vector<VertexPath>> distinct(const CliquePair& p,
                                                         const std::vector<VertexPath>& cand, int want) {
    std::vector<VertexPath> out;
    std::vector<GroupElem> seen;
    for (const auto& path : cand) {
      GroupElem w = path_weight(p.g, path);
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      seen.push_back(w);
      out.push_back(path);
      if (static_cast<int>(out.size()) == want) return out;
    }
    return std::nullopt;
  }

  ReductionOutcome& out_;
};

Result Reducer::solve(const CliquePair& p, int depth) {
  if (depth > 4 * kMaxVertices) throw LemmaViolation("reduction depth bound exceeded");
  const VertexSet outside = p.outside();
  if (set_size(outside) == 1) {
    Result r = Configuration{ConfigA{lowest_vertex(outside)}};
    if (valid(p, r)) return r;
    return fallback(p, "single outside vertex lacks 2k-1 clique neighbours");
  }

  int v = -1;
  for (int cand : members(outside)) {
    if ((p.g.neighbors(cand) & p.clique) == p.clique) {
      v = cand;
      break;
    }
  }

  if (v >= 0) {
    Result sub = solve(CliquePair{p.g, p.clique | vertex_bit(v)}, depth + 1);
    if (std::holds_alternative<CycleWitness>(sub)) {
      if (valid(p, sub)) return sub;
      return fallback(p, "cycle from the extended clique does not validate");
    }
    auto res = transform(p, v, std::get<Configuration>(sub));
    if (res && valid(p, *res)) return *res;
    return fallback(p, std::string("case 1 transformation of a type ") +
                           config_type(std::get<Configuration>(sub)) + " configuration failed");
  }

  // No outside vertex sees all of K: peel the lowest clique vertex.
  const int u = lowest_vertex(p.clique);
  PeelResult peeled = clique_peel_step(p, u, lowest_non_neighbour_map(p, u));
  Result sub = solve(peeled.pair, depth + 1);
  auto back = [&](int x) { return peeled.to_original[x]; };
  Result mapped;
  if (auto* c = std::get_if<CycleWitness>(&sub)) {
    VertexPath seq;
    for (int x : c->vertices) seq.push_back(back(x));
    mapped = cycle_of(p, seq);
  } else {
    Configuration cfg = std::get<Configuration>(sub);
    auto map_path = [&](VertexPath& path) {
      for (int& x : path) x = back(x);
    };
    std::visit(
        [&](auto& c) {
          using T = std::decay_t<decltype(c)>;
          c.x = back(c.x);
          if constexpr (std::is_same_v<T, ConfigB>) {
            c.y = back(c.y);
            map_path(c.path);
          } else if constexpr (std::is_same_v<T, ConfigC>) {
            c.y = back(c.y);
            for (auto& path : c.paths) map_path(path);
          } else if constexpr (std::is_same_v<T, ConfigD>) {
            c.y = back(c.y);
            c.z = back(c.z);
            c.xp = back(c.xp);
            c.yp = back(c.yp);
            c.zp = back(c.zp);
            map_path(c.px);
            map_path(c.py);
            map_path(c.pz);
            for (auto& path : c.paths) map_path(path);
          }
        },
        cfg);
    mapped = cfg;
  }
  if (valid(p, mapped)) return mapped;
  return fallback(p, "result of the peeled pair does not carry back");
}

std::optional<Result> Reducer::transform(const CliquePair& p, int v, const Configuration& sub) {
  return std::visit(
      [&](const auto& c) -> std::optional<Result> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ConfigA>) return extend_a(p, v, c);
        if constexpr (std::is_same_v<T, ConfigB>) return extend_b(p, v, c);
        if constexpr (std::is_same_v<T, ConfigC>) return extend_c(p, v, c);
        if constexpr (std::is_same_v<T, ConfigD>) return extend_d(p, v, c);
      },
      sub);
}

std::optional<Result> Reducer::extend_a(const CliquePair& p, int v, const ConfigA& a) {
  if (!p.g.has_edge(v, a.x)) return Configuration{a};
  return Configuration{ConfigB{a.x, v, {a.x, v}}};
}

std::optional<Result> Reducer::extend_b(const CliquePair& p, int v, const ConfigB& b) {
  const bool ax = p.g.has_edge(v, b.x), ay = p.g.has_edge(v, b.y);
  if (!ax && !ay) return Configuration{b};
  const VertexPath vp{v};
  if (ax && !ay) return Configuration{ConfigB{v, b.y, join({&vp, &b.path})}};
  if (!ax && ay) return Configuration{ConfigB{b.x, v, join({&b.path, &vp})}};

  auto w = [&](const VertexPath& path) { return path_weight(p.g, path); };
  const VertexPath via_v{b.x, v, b.y};
  if (w(b.path) != w(via_v)) return Configuration{ConfigC{2, b.x, b.y, {b.path, via_v}}};
  const VertexPath vP = join({&vp, &b.path});
  const VertexPath vy{v, b.y};
  if (w(vP) != w(vy)) return Configuration{ConfigC{2, v, b.y, {vP, vy}}};
  const VertexPath Pv = join({&b.path, &vp});
  const VertexPath xv{b.x, v};
  if (w(Pv) != w(xv)) return Configuration{ConfigC{2, b.x, v, {Pv, xv}}};
  return cycle_of(p, Pv);
}

std::optional<Result> Reducer::extend_c(const CliquePair& p, int v, const ConfigC& c) {
  const bool ax = p.g.has_edge(v, c.x), ay = p.g.has_edge(v, c.y);
  if (!ax && !ay) return Configuration{c};
  const VertexPath vp{v};
  if (ax && !ay) {
    ConfigC out{c.rank, v, c.y, {}};
    for (const auto& path : c.paths) out.paths.push_back(join({&vp, &path}));
    return Configuration{out};
  }
  if (!ax && ay) {
    ConfigC out{c.rank, c.x, v, {}};
    for (const auto& path : c.paths) out.paths.push_back(join({&path, &vp}));
    return Configuration{out};
  }
  const int k = p.g.group().order();
  if (c.rank == k) {
    // k cycles of pairwise-distinct weight: one of them is zero.
    for (const auto& path : c.paths) {
      CycleWitness cyc = cycle_of(p, join({&path, &vp}));
      if (cyc.weight == p.g.group().zero()) return cyc;
    }
    return std::nullopt;
  }
  return Configuration{ConfigD{c.rank, c.x, c.y, v, c.x, c.y, v, {c.x}, {c.y}, {v}, c.paths}};
}

std::optional<Result> Reducer::extend_d(const CliquePair& p, int v, const ConfigD& d) {
  const bool ax = p.g.has_edge(v, d.xp), ay = p.g.has_edge(v, d.yp), az = p.g.has_edge(v, d.zp);
  const VertexPath vp{v};
  const int hits = ax + ay + az;
  if (hits == 0) return Configuration{d};
  if (hits == 1) {
    ConfigD out = d;
    if (ax) {
      out.xp = v;
      out.px = join({&d.px, &vp});
    } else if (ay) {
      out.yp = v;
      out.py = join({&d.py, &vp});
    } else {
      out.zp = v;
      out.pz = join({&d.pz, &vp});
    }
    return Configuration{out};
  }
  if (ax && ay && !az) {
    ConfigD out = d;
    out.xp = v;
    out.px = join({&d.px, &vp});
    return Configuration{swap_xy(out)};
  }
  if (ax && az) return qst(p, v, d);
  // v sees y' and z' only: exchange the roles of x and y.
  return qst(p, v, swap_xy(d));
}

// v is adjacent to x' and z'.
std::optional<Result> Reducer::qst(const CliquePair& p, int v, const ConfigD& d) {
  const int r = d.rank;
  const VertexPath vp{v};
  const VertexPath zp{d.zp};
  const VertexPath rx = reversed(d.px);
  const VertexPath rz = reversed(d.pz);

  std::vector<VertexPath> q, s;
  for (const auto& pi : d.paths) {
    q.push_back(join({&vp, &rx, &pi, &d.py}));
    q.push_back(join({&vp, &rz, &pi, &d.py}));
  }
  if (auto fam = distinct(p, q, r + 1)) return Configuration{ConfigC{r + 1, v, d.yp, *fam}};
  for (const auto& pi : d.paths) {
    s.push_back(join({&zp, &vp, &rx, &pi, &d.py}));
    s.push_back(join({&rz, &pi, &d.py}));
  }
  if (auto fam = distinct(p, s, r + 1)) return Configuration{ConfigC{r + 1, d.zp, d.yp, *fam}};

  std::vector<VertexPath> t;
  for (const auto& pi : d.paths) t.push_back(join({&vp, &rx, &pi, &d.pz}));
  const VertexPath edge{v, d.zp};
  const GroupElem target = path_weight(p.g, edge);
  const bool hit = std::any_of(t.begin(), t.end(),
                               [&](const VertexPath& path) { return path_weight(p.g, path) == target; });
  if (!hit) {
    t.push_back(edge);
    if (auto fam = distinct(p, t, r + 1)) return Configuration{ConfigC{r + 1, v, d.zp, *fam}};
    return std::nullopt;
  }
  const GroupElem closing = p.g.group().neg(p.g.weight(v, d.zp));
  for (const auto& path : t) {
    if (path_weight(p.g, path) == closing) return cycle_of(p, path);
  }
  return std::nullopt;
}

void check_reduction_input(const CliquePair& p) {
  if (!is_clique_pair(p)) throw DomainError("K must be a proper clique of G");
  const int k = p.g.group().order();
  for (int v : members(p.outside())) {
    if (p.g.degree(v) < 2 * k - 1) {
      throw DomainError("vertex " + std::to_string(v) + " outside K has degree " +
                        std::to_string(p.g.degree(v)) + " < 2k-1 = " + std::to_string(2 * k - 1));
    }
  }
}

}  // namespace

ReductionOutcome lemma_reduction_solve(const CliquePair& p) {
  check_reduction_input(p);
  ReductionOutcome out;
  Reducer reducer(out);
  out.result = reducer.solve(p, 0);
  return out;
}

UndirectedOutcome theorem_undirected_solve(const WeightedGraph& g) {
  const int k = g.group().order();
  if (g.size() == 0 || g.min_degree() < 2 * k - 1) {
    throw DomainError("minimum degree must be at least 2|group|-1 = " + std::to_string(2 * k - 1));
  }
  ReductionOutcome red = lemma_reduction_solve(CliquePair{g, 0});
  if (!red.is_zero_cycle()) throw LemmaViolation("configuration returned for an empty clique");
  if (!is_zero_cycle(g, red.cycle(), 3)) throw LemmaViolation("returned cycle does not validate");
  return UndirectedOutcome{red.cycle(), red.fallbacks, std::move(red.log)};
}

}  // namespace zsc
