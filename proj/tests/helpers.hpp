#pragma once

// Shared oracles for unit and acceptance tests. These deliberately recompute
// everything from first principles instead of calling back into the library
// paths they certify.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dhat/freeomega.hpp"
#include "dhat/precubical.hpp"
#include "dhat/pvlang.hpp"

namespace testutil {

// ---- omega-category axiom suite (Def. axioms 1-5) over a cell table ----

inline std::string check_axioms(dhat::CellTable t) {
  using dhat::Sign;
  const int n = t.cell_count();
  auto sup = [&](int cell) { return t.cell(cell).support; };

  // axiom 1: d_p^b d_q^a x = d_p^b x for p < q
  for (int x = 0; x < n; ++x) {
    int dim = t.cell(x).dim;
    for (int q = 0; q < dim; ++q)
      for (Sign a : {Sign::minus, Sign::plus}) {
        int y = t.cell_by_support(t.boundary_support(x, q, a));
        if (y < 0) return "axiom1: boundary cell missing";
        for (int p = 0; p < q; ++p)
          for (Sign b : {Sign::minus, Sign::plus})
            if (t.boundary_support(y, p, b) != t.boundary_support(x, p, b))
              return "axiom1 fails at cell " + t.support_key(sup(x));
        // axiom 2: d_q^b d_q^a x = d_q^a x
        for (Sign b : {Sign::minus, Sign::plus})
          if (t.boundary_support(y, q, b) != sup(y))
            return "axiom2 fails at cell " + t.support_key(sup(x));
      }
  }

  // composition lookup (a, b, p) -> result
  std::map<std::tuple<int, int, int>, int> comp;
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> by_left;  // (a,p)->(b,r)
  for (const auto& cm : t.compositions()) {
    auto key = std::make_tuple(cm.a, cm.b, cm.p);
    auto it = comp.find(key);
    if (it != comp.end() && it->second != cm.result)
      return "composition not single-valued";
    comp.emplace(key, cm.result);
    by_left[{cm.a, cm.p}].push_back({cm.b, cm.result});
  }

  // axiom 3: boundaries of composites
  for (const auto& cm : t.compositions()) {
    if (t.boundary_support(cm.a, cm.p, Sign::plus) !=
        t.boundary_support(cm.b, cm.p, Sign::minus))
      return "axiom3: recorded composite was not composable";
    if (t.boundary_support(cm.result, cm.p, Sign::minus) !=
            t.boundary_support(cm.a, cm.p, Sign::minus) ||
        t.boundary_support(cm.result, cm.p, Sign::plus) !=
            t.boundary_support(cm.b, cm.p, Sign::plus))
      return "axiom3: p-boundaries of composite wrong";
    int rdim = t.cell(cm.result).dim;
    for (int q = 0; q < rdim; ++q) {
      if (q == cm.p) continue;
      for (Sign sg : {Sign::minus, Sign::plus}) {
        const auto& fa = t.support(t.boundary_support(cm.a, q, sg));
        const auto& fb = t.support(t.boundary_support(cm.b, q, sg));
        std::vector<int> u;
        std::set_union(fa.begin(), fa.end(), fb.begin(), fb.end(),
                       std::back_inserter(u));
        std::sort(u.begin(), u.end());
        if (t.support(t.boundary_support(cm.result, q, sg)) != u)
          return "axiom3: q-boundary of composite is not d_q a *_p d_q b";
      }
    }
  }

  // identity laws: x *_p t_p(x) = x and s_p(x) *_p x = x
  for (int x = 0; x < n; ++x)
    for (int p = 0; p < t.cell(x).dim; ++p) {
      int tp = t.cell_by_support(t.boundary_support(x, p, Sign::plus));
      int sp = t.cell_by_support(t.boundary_support(x, p, Sign::minus));
      if (tp < 0 || sp < 0) return "identity: boundary cell missing";
      if (dhat::compose(t, x, tp, p) != x) return "identity x * t_p x failed";
      if (dhat::compose(t, sp, x, p) != x) return "identity s_p x * x failed";
    }

  // axiom 4: associativity wherever both bracketings exist
  for (const auto& cm : t.compositions()) {
    auto it = by_left.find({cm.result, cm.p});
    if (it == by_left.end()) continue;
    for (auto [c, abc] : it->second) {
      auto bc = comp.find({cm.b, c, cm.p});
      if (bc == comp.end()) return "axiom4: x*(y*z) missing";
      auto whole = comp.find({cm.a, bc->second, cm.p});
      if (whole == comp.end()) return "axiom4: outer composite missing";
      if (whole->second != abc) return "axiom4: associativity fails";
    }
  }

  // axiom 5: interchange (x *_p y) *_q (z *_p w) = (x *_q z) *_p (y *_q w)
  for (const auto& c1 : t.compositions())
    for (const auto& c2 : t.compositions()) {
      if (c1.p != c2.p) continue;
      for (int q = 0; q < 4; ++q) {
        if (q == c1.p) continue;
        auto outer = comp.find({c1.result, c2.result, q});
        if (outer == comp.end()) continue;
        auto xz = comp.find({c1.a, c2.a, q});
        auto yw = comp.find({c1.b, c2.b, q});
        if (xz == comp.end() || yw == comp.end()) continue;  // degenerate overlap
        auto other = comp.find({xz->second, yw->second, c1.p});
        if (other == comp.end()) continue;
        if (other->second != outer->second) return "axiom5: interchange fails";
      }
    }
  return "";
}

// ---- random acyclic 1-complexes and the DFS path oracle ----

inline dhat::PrecubicalSet random_dag(std::mt19937& rng, int max_edges,
                                      long path_cap = 4000) {
  for (;;) {
    int nv = 3 + static_cast<int>(rng() % 8);
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    int ne = 1 + static_cast<int>(rng() % max_edges);
    for (int e = 0; e < ne; ++e) {
      int a = static_cast<int>(rng() % nv);
      int b = static_cast<int>(rng() % nv);
      if (a == b) continue;
      if (a > b) std::swap(a, b);  // edges go up the order: acyclic
      if (seen.insert({a, b}).second) edges.emplace_back(a, b);
    }
    if (edges.empty()) continue;
    // path count per start via DP, resample on explosion
    std::vector<long> paths(nv, 0);
    long total = 0;
    for (int v = nv - 1; v >= 0; --v) {
      for (auto& [a, b] : edges)
        if (a == v) paths[v] += 1 + paths[b];
      total += paths[v];
    }
    if (total == 0 || total > path_cap) continue;
    dhat::PrecubicalSet k;
    for (int v = 0; v < nv; ++v) k.add_cube(0, "v" + std::to_string(v));
    int ei = 0;
    for (auto& [a, b] : edges) {
      int idx = k.add_cube(1, "e" + std::to_string(ei++));
      k.set_face({1, idx}, 1, dhat::Sign::minus, {0, a});
      k.set_face({1, idx}, 1, dhat::Sign::plus, {0, b});
    }
    return k;
  }
}

// multiset of (source, target) vertex names over all nonempty directed paths
inline std::multiset<std::pair<std::string, std::string>> dag_paths(
    const dhat::PrecubicalSet& k) {
  std::multiset<std::pair<std::string, std::string>> out;
  int nv = k.size(0);
  std::vector<std::vector<int>> adj(nv);
  for (int e = 0; e < k.size(1); ++e)
    adj[k.face({1, e}, 1, dhat::Sign::minus).index].push_back(
        k.face({1, e}, 1, dhat::Sign::plus).index);
  for (int s = 0; s < nv; ++s) {
    // DFS over edge sequences
    std::vector<int> stack{s};
    std::function<void(int)> walk = [&](int v) {
      for (int w : adj[v]) {
        out.emplace(k.name({0, s}), k.name({0, w}));
        walk(w);
      }
    };
    walk(s);
  }
  return out;
}

// ---- independent PV interleaving oracle ----

struct OracleOut {
  std::set<std::vector<int>> deadlocks, unreachable, unsafe;
  std::set<std::vector<int>> states;  // all capacity-legal positions
  bool final_reachable = false;
};

inline OracleOut pv_oracle(const dhat::PVProgram& p) {
  const int n = static_cast<int>(p.processes.size());
  std::vector<int> len;
  for (const auto& pr : p.processes) len.push_back(static_cast<int>(pr.size()));
  // holds[j][r][k]: held by process j after its first k actions
  std::vector<std::map<std::string, std::vector<char>>> holds(n);
  for (int j = 0; j < n; ++j) {
    for (const auto& [r, c] : p.resources) holds[j][r].assign(len[j] + 1, 0);
    std::set<std::string> cur;
    for (int k = 0; k < len[j]; ++k) {
      const auto& a = p.processes[j][k];
      if (a.acquire)
        cur.insert(a.resource);
      else
        cur.erase(a.resource);
      for (const auto& r : cur) holds[j][r][k + 1] = 1;
    }
  }
  auto point_hold = [&](int j, const std::string& r, int k) {
    return k > 0 && holds[j][r][k - 1] && holds[j][r][k];
  };
  auto legal = [&](const std::vector<int>& st) {
    for (const auto& [r, cap] : p.resources) {
      int tot = 0;
      for (int j = 0; j < n; ++j) tot += point_hold(j, r, st[j]);
      if (tot > cap) return false;
    }
    return true;
  };
  // process j stepping from st[j] to st[j]+1 holds via the open interval
  auto can_step = [&](const std::vector<int>& st, int j) {
    if (st[j] >= len[j]) return false;
    for (const auto& [r, cap] : p.resources) {
      int tot = holds[j][r][st[j]];
      for (int i = 0; i < n; ++i)
        if (i != j) tot += point_hold(i, r, st[i]);
      if (tot > cap) return false;
    }
    std::vector<int> nx = st;
    nx[j]++;
    return legal(st) && legal(nx);
  };

  OracleOut o;
  std::vector<std::vector<int>> all;
  std::vector<int> cur(n, 0);
  std::function<void(int)> gen = [&](int j) {
    if (j == n) {
      if (legal(cur)) all.push_back(cur);
      return;
    }
    for (cur[j] = 0; cur[j] <= len[j]; ++cur[j]) gen(j + 1);
    cur[j] = 0;
  };
  gen(0);
  for (auto& st : all) o.states.insert(st);

  std::vector<int> init(n, 0);
  std::set<std::vector<int>> reach;
  if (o.states.count(init)) {
    std::vector<std::vector<int>> work{init};
    reach.insert(init);
    while (!work.empty()) {
      auto st = work.back();
      work.pop_back();
      for (int j = 0; j < n; ++j)
        if (can_step(st, j)) {
          auto nx = st;
          nx[j]++;
          if (reach.insert(nx).second) work.push_back(nx);
        }
    }
  }
  std::set<std::vector<int>> coreach;
  if (o.states.count(len)) {
    std::vector<std::vector<int>> work{len};
    coreach.insert(len);
    while (!work.empty()) {
      auto st = work.back();
      work.pop_back();
      for (int j = 0; j < n; ++j) {
        if (st[j] <= 0) continue;
        auto pv = st;
        pv[j]--;
        if (o.states.count(pv) && can_step(pv, j) && coreach.insert(pv).second)
          work.push_back(pv);
      }
    }
  }
  for (const auto& st : reach) {
    if (st == len) continue;
    bool stuck = true;
    for (int j = 0; j < n && stuck; ++j)
      if (can_step(st, j)) stuck = false;
    if (stuck) o.deadlocks.insert(st);
  }
  for (const auto& st : o.states)
    if (!reach.count(st)) o.unreachable.insert(st);
  for (const auto& st : reach)
    if (!coreach.count(st)) o.unsafe.insert(st);
  o.final_reachable = reach.count(len) > 0;
  return o;
}

// complete corpus: capacities in {1,2}^2, 1-2 processes, 1-4 valid actions
inline std::vector<std::string> pv_corpus() {
  std::vector<std::string> procs;  // action strings
  std::function<void(std::string, std::set<char>, int)> rec =
      [&](std::string acts, std::set<char> held, int steps) {
        if (steps > 0 && !acts.empty()) procs.push_back(acts);
        if (steps == 4) return;
        for (char r : {'a', 'b'}) {
          if (held.count(r)) continue;
          auto h = held;
          h.insert(r);
          rec(acts + " P" + r, h, steps + 1);
        }
        for (char r : std::set<char>(held)) {
          auto h = held;
          h.erase(r);
          rec(acts + " V" + r, h, steps + 1);
        }
      };
  rec("", {}, 0);
  std::vector<std::string> out;
  for (int ca = 1; ca <= 2; ++ca)
    for (int cb = 1; cb <= 2; ++cb) {
      std::string hdr = "res a = " + std::to_string(ca) + "; res b = " +
                        std::to_string(cb) + ";\n";
      for (const auto& p1 : procs) out.push_back(hdr + "proc:" + p1 + ";\n");
      for (const auto& p1 : procs)
        for (const auto& p2 : procs)
          out.push_back(hdr + "proc:" + p1 + ";\nproc:" + p2 + ";\n");
    }
  return out;
}

}  // namespace testutil
