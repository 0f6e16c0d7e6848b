#include "dhat/nerves.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace dhat {

std::vector<std::string> AugmentedSimplicialSet::check() const {
  std::vector<std::string> bad;
  auto in0 = [&](int i) { return i >= 0 && i < static_cast<int>(names0.size()); };
  for (size_t x = 0; x < names0.size(); ++x)
    if (aug.at(x) < 0 || aug.at(x) >= static_cast<int>(points.size()))
      bad.push_back("augmentation out of range at " + names0[x]);
  if (top_level >= 1) {
    for (size_t z = 0; z < names1.size(); ++z) {
      if (!in0(face1.at(z)[0]) || !in0(face1.at(z)[1])) {
        bad.push_back("face out of range at " + names1[z]);
        continue;
      }
      // d_{-1} d_0 = d_{-1} d_1
      if (aug.at(face1[z][0]) != aug.at(face1[z][1]))
        bad.push_back("augmented identity fails at " + names1[z]);
    }
    for (size_t x = 0; x < names0.size(); ++x) {
      int d = degen0.at(x);
      if (d < 0 || d >= static_cast<int>(names1.size())) {
        bad.push_back("degeneracy out of range at " + names0[x]);
        continue;
      }
      if (!degenerate1.at(d)) bad.push_back("degeneracy not marked at " + names0[x]);
      // d_0 e_0 = d_1 e_0 = id
      if (face1[d][0] != static_cast<int>(x) || face1[d][1] != static_cast<int>(x))
        bad.push_back("simplicial identity d_i e_0 = id fails at " + names0[x]);
    }
  }
  return bad;
}

nlohmann::json AugmentedSimplicialSet::to_json() const {
  nlohmann::json j;
  j["top_level"] = top_level;
  j["points"] = points;
  nlohmann::json l0 = nlohmann::json::array();
  for (size_t x = 0; x < names0.size(); ++x)
    l0.push_back({{"name", names0[x]}, {"aug", points.at(aug[x])}});
  j["level0"] = l0;
  if (top_level >= 1) {
    nlohmann::json l1 = nlohmann::json::array();
    for (size_t z = 0; z < names1.size(); ++z)
      l1.push_back({{"name", names1[z]},
                    {"d0", names0.at(face1[z][0])},
                    {"d1", names0.at(face1[z][1])},
                    {"degenerate", static_cast<bool>(degenerate1[z])}});
    j["level1"] = l1;
  }
  return j;
}

namespace {

std::vector<int> cells_of_dim(const CellTable& t, int d) {
  std::vector<int> out;
  for (int i = 0; i < t.cell_count(); ++i)
    if (t.cell(i).dim == d) out.push_back(i);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return t.support_key(t.cell(a).support) < t.support_key(t.cell(b).support);
  });
  return out;
}

int need_cell(const CellTable& t, int cell, int q, Sign sg) {
  int c = t.boundary_cell(cell, q, sg);
  if (c < 0)
    throw TruncationError("boundary cell not materialized (truncated table?)");
  return c;
}

}  // namespace

AugmentedSimplicialSet globular_nerve(const CellTable& t, const NerveOptions& o) {
  if (o.level < 0 || o.level > 1)
    throw std::invalid_argument("globular_nerve: truncation level must be 0 or 1");
  AugmentedSimplicialSet n;
  n.top_level = o.level;

  std::vector<int> c0 = cells_of_dim(t, 0);
  auto cell_name = [&](int c) { return t.support_key(t.cell(c).support); };

  std::vector<std::pair<int, int>> pairs;  // (cell, cell) of dim 0
  if (o.aug == NerveOptions::Aug::full) {
    for (int a : c0)
      for (int b : c0) pairs.emplace_back(a, b);
  } else {
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < t.cell_count(); ++i)
      if (t.cell(i).dim >= 1)
        seen.emplace(need_cell(t, i, 0, Sign::minus), need_cell(t, i, 0, Sign::plus));
    std::vector<std::pair<int, int>> srt(seen.begin(), seen.end());
    std::sort(srt.begin(), srt.end(), [&](auto x, auto y) {
      return std::make_pair(cell_name(x.first), cell_name(x.second)) <
             std::make_pair(cell_name(y.first), cell_name(y.second));
    });
    pairs = std::move(srt);
  }
  std::map<std::pair<int, int>, int> pair_ix;
  for (auto& pr : pairs) {
    pair_ix[pr] = static_cast<int>(n.points.size());
    n.points.push_back("(" + cell_name(pr.first) + "," + cell_name(pr.second) + ")");
  }

  std::vector<int> x0 = cells_of_dim(t, 1);
  std::map<int, int> ix0;  // cell -> level-0 index
  for (int c : x0) {
    ix0[c] = static_cast<int>(n.names0.size());
    n.names0.push_back(cell_name(c));
    n.payload0.push_back(c);
    auto pr = std::make_pair(need_cell(t, c, 0, Sign::minus),
                             need_cell(t, c, 0, Sign::plus));
    auto it = pair_ix.find(pr);
    if (it == pair_ix.end()) throw WellDefinednessError("unindexed augmentation pair");
    n.aug.push_back(it->second);
  }

  if (o.level == 1) {
    std::vector<int> x1 = cells_of_dim(t, 1);
    std::vector<int> x2 = cells_of_dim(t, 2);
    x1.insert(x1.end(), x2.begin(), x2.end());
    std::sort(x1.begin(), x1.end(),
              [&](int a, int b) { return cell_name(a) < cell_name(b); });
    n.degen0.assign(n.names0.size(), -1);
    for (int c : x1) {
      int ix = static_cast<int>(n.names1.size());
      n.names1.push_back(cell_name(c));
      n.payload1.push_back(c);
      if (t.cell(c).dim == 1) {
        n.degenerate1.push_back(1);
        n.face1.push_back({ix0.at(c), ix0.at(c)});
        n.degen0[ix0.at(c)] = ix;
      } else {
        n.degenerate1.push_back(0);
        n.face1.push_back({ix0.at(need_cell(t, c, 1, Sign::minus)),
                           ix0.at(need_cell(t, c, 1, Sign::plus))});
      }
    }
  }
  auto bad = n.check();
  if (!bad.empty()) throw WellDefinednessError("globular nerve: " + bad.front());
  return n;
}

QuotientTable semi_quotient(const CellTable& t, Sign side) {
  const int nc = t.cell_count();
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> findp = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::deque<std::pair<int, int>> events;
  auto unite = [&](int x, int y) {
    int rx = findp(x), ry = findp(y);
    if (rx == ry) return;
    parent[rx] = ry;
    events.emplace_back(x, y);
  };
  auto drain = [&]() {
    // congruence: identified cells have identified q-boundaries for q >= 1
    while (!events.empty()) {
      auto [x, y] = events.front();
      events.pop_front();
      int top = std::max(t.cell(x).dim, t.cell(y).dim);
      for (int q = 1; q < top; ++q)
        for (Sign sg : {Sign::minus, Sign::plus})
          unite(need_cell(t, x, q, sg), need_cell(t, y, q, sg));
    }
  };

  QuotientTable out;
  out.side = side;
  for (const auto& cm : t.compositions()) {
    if (cm.p != 0) continue;
    if (t.cell(cm.a).dim < 1 || t.cell(cm.b).dim < 1 || t.cell(cm.result).dim < 1)
      continue;
    int x = side == Sign::minus ? cm.a : cm.b;
    out.witnesses.push_back({x, cm.result});
    unite(x, cm.result);
    drain();
  }
  // closure under composition compatibility
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::tuple<int, int, int>, int> seen;  // (class a, class b, p) -> result
    for (const auto& cm : t.compositions()) {
      if (t.cell(cm.a).dim < 1 || t.cell(cm.b).dim < 1 || t.cell(cm.result).dim < 1)
        continue;
      auto key = std::make_tuple(findp(cm.a), findp(cm.b), cm.p);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, cm.result);
      } else if (findp(it->second) != findp(cm.result)) {
        unite(it->second, cm.result);
        drain();
        changed = true;
      }
    }
  }

  out.class_of.assign(nc, -1);
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < nc; ++i)
    if (t.cell(i).dim >= 1) members[findp(i)].push_back(i);
  std::vector<std::pair<std::string, int>> reps;  // (key, root)
  for (auto& [root, ms] : members) {
    int best = ms.front();
    for (int m : ms)
      if (t.support_key(t.cell(m).support) < t.support_key(t.cell(best).support))
        best = m;
    reps.emplace_back(t.support_key(t.cell(best).support), best);
  }
  std::sort(reps.begin(), reps.end());
  out.class_count = static_cast<int>(reps.size());
  for (int c = 0; c < out.class_count; ++c) {
    out.representative.push_back(reps[c].second);
    for (int m : members.at(findp(reps[c].second))) out.class_of[m] = c;
  }
  return out;
}

namespace {

struct SemiNerveBuild {
  AugmentedSimplicialSet n;
  QuotientTable q;
  std::vector<int> simplex0_of_class, simplex1_of_class;
};

SemiNerveBuild build_semi(const CellTable& t, Sign side, const NerveOptions& o) {
  SemiNerveBuild b;
  b.q = semi_quotient(t, side);
  b.n.top_level = o.level;
  auto cell_name = [&](int c) { return t.support_key(t.cell(c).support); };

  // class metadata
  std::vector<char> has1(b.q.class_count, 0), has12(b.q.class_count, 0);
  std::vector<int> least(b.q.class_count, -1);   // least-key member of dim <= 2
  std::vector<int> least1(b.q.class_count, -1);  // least-key member of dim == 1
  for (int i = 0; i < t.cell_count(); ++i) {
    int c = b.q.class_of[i];
    if (c < 0) continue;
    int d = t.cell(i).dim;
    if (d == 1) {
      has1[c] = 1;
      if (least1[c] < 0 || cell_name(i) < cell_name(least1[c])) least1[c] = i;
    }
    if (d == 1 || d == 2) {
      has12[c] = 1;
      if (least[c] < 0 || cell_name(i) < cell_name(least[c])) least[c] = i;
    }
  }
  // augmentation: source (resp. target) 0-cell, constant on each class
  std::vector<int> aug_cell(b.q.class_count, -1);
  for (int i = 0; i < t.cell_count(); ++i) {
    int c = b.q.class_of[i];
    if (c < 0 || !has12[c]) continue;
    int a = need_cell(t, i, 0, side);
    if (aug_cell[c] < 0)
      aug_cell[c] = a;
    else if (aug_cell[c] != a)
      throw WellDefinednessError("semi nerve: augmentation not constant on a class");
  }

  std::vector<int> c0 = cells_of_dim(t, 0);
  std::map<int, int> pt_ix;
  if (o.aug == NerveOptions::Aug::full) {
    for (int c : c0) {
      pt_ix[c] = static_cast<int>(b.n.points.size());
      b.n.points.push_back(cell_name(c));
    }
  } else {
    std::set<int> used;
    for (int c = 0; c < b.q.class_count; ++c)
      if (has12[c]) used.insert(aug_cell[c]);
    for (int c : c0)
      if (used.count(c)) {
        pt_ix[c] = static_cast<int>(b.n.points.size());
        b.n.points.push_back(cell_name(c));
      }
  }

  // level 0: classes of 1-cells, ordered by least member key
  std::vector<std::pair<std::string, int>> ord0, ord1;
  for (int c = 0; c < b.q.class_count; ++c) {
    if (has1[c]) ord0.emplace_back(cell_name(least[c]), c);
    if (has12[c]) ord1.emplace_back(cell_name(least[c]), c);
  }
  std::sort(ord0.begin(), ord0.end());
  std::sort(ord1.begin(), ord1.end());
  b.simplex0_of_class.assign(b.q.class_count, -1);
  b.simplex1_of_class.assign(b.q.class_count, -1);
  for (auto& [key, c] : ord0) {
    b.simplex0_of_class[c] = static_cast<int>(b.n.names0.size());
    b.n.names0.push_back("[" + key + "]");
    b.n.payload0.push_back(least1[c]);
    b.n.aug.push_back(pt_ix.at(aug_cell[c]));
  }
  if (o.level == 1) {
    b.n.degen0.assign(b.n.names0.size(), -1);
    for (auto& [key, c] : ord1) {
      int ix = static_cast<int>(b.n.names1.size());
      b.simplex1_of_class[c] = ix;
      b.n.names1.push_back("[" + key + "]");
      b.n.payload1.push_back(least[c]);
      b.n.degenerate1.push_back(has1[c]);
      if (has1[c]) b.n.degen0[b.simplex0_of_class[c]] = ix;
    }
    // faces, checked across every member
    b.n.face1.assign(b.n.names1.size(), {-1, -1});
    for (int i = 0; i < t.cell_count(); ++i) {
      int c = b.q.class_of[i];
      if (c < 0 || b.simplex1_of_class[c] < 0) continue;
      int d = t.cell(i).dim;
      if (d > 2) continue;
      int f0, f1;
      if (d == 1) {
        f0 = f1 = b.simplex0_of_class[b.q.class_of[i]];
      } else {
        f0 = b.simplex0_of_class.at(b.q.class_of[need_cell(t, i, 1, Sign::minus)]);
        f1 = b.simplex0_of_class.at(b.q.class_of[need_cell(t, i, 1, Sign::plus)]);
      }
      if (f0 < 0 || f1 < 0)
        throw WellDefinednessError("semi nerve: face class has no 1-cell member");
      auto& fc = b.n.face1[b.simplex1_of_class[c]];
      if (fc[0] < 0) {
        fc = {f0, f1};
      } else if (fc[0] != f0 || fc[1] != f1) {
        throw WellDefinednessError("semi nerve: face maps not constant on a class");
      }
    }
  }
  auto bad = b.n.check();
  if (!bad.empty()) throw WellDefinednessError("semi nerve: " + bad.front());
  return b;
}

}  // namespace

AugmentedSimplicialSet semi_nerve(const CellTable& t, Sign side,
                                  const NerveOptions& o) {
  return build_semi(t, side, o).n;
}

HMaps h_maps(const CellTable& t, const NerveOptions& o) {
  AugmentedSimplicialSet g = globular_nerve(t, o);
  SemiNerveBuild bm = build_semi(t, Sign::minus, o);
  SemiNerveBuild bp = build_semi(t, Sign::plus, o);
  HMaps h;
  for (size_t x = 0; x < g.names0.size(); ++x) {
    int c = g.payload0[x];
    h.minus0.push_back(bm.simplex0_of_class.at(bm.q.class_of[c]));
    h.plus0.push_back(bp.simplex0_of_class.at(bp.q.class_of[c]));
  }
  if (o.level == 1)
    for (size_t z = 0; z < g.names1.size(); ++z) {
      int c = g.payload1[z];
      h.minus1.push_back(bm.simplex1_of_class.at(bm.q.class_of[c]));
      h.plus1.push_back(bp.simplex1_of_class.at(bp.q.class_of[c]));
    }
  return h;
}

std::vector<GradedComponent> grade(const AugmentedSimplicialSet& n) {
  std::vector<GradedComponent> out;
  for (const auto& p : n.points) out.push_back({p, {}, {}});
  for (size_t x = 0; x < n.names0.size(); ++x) out.at(n.aug[x]).simplices0.push_back(x);
  if (n.top_level >= 1)
    for (size_t z = 0; z < n.names1.size(); ++z) {
      int p0 = n.aug.at(n.face1[z][0]);
      int p1 = n.aug.at(n.face1[z][1]);
      if (p0 != p1)
        throw WellDefinednessError("grade: simplex faces land in different components");
      out.at(p0).simplices1.push_back(z);
    }
  return out;
}

ComposedSimplex simplex_compose(CellTable& t, int level, int cell_a, int cell_b) {
  if (level != 0 && level != 1)
    throw std::invalid_argument("simplex_compose: level must be 0 or 1");
  if (t.boundary_support(cell_a, 0, Sign::plus) !=
      t.boundary_support(cell_b, 0, Sign::minus))
    throw NonComposableError("simplex_compose: T(x) != S(y)");
  if (level == 1) {
    // pointwise on the faces as well; results must land in the table
    for (Sign sg : {Sign::minus, Sign::plus}) {
      int fa = need_cell(t, cell_a, 1, sg);
      int fb = need_cell(t, cell_b, 1, sg);
      compose(t, fa, fb, 0);
    }
  }
  int r = compose(t, cell_a, cell_b, 0);
  ComposedSimplex out;
  out.payload = r;
  out.is_point = t.cell(r).dim == 0;
  return out;
}

}  // namespace dhat
