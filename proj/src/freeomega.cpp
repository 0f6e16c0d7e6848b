#include "dhat/freeomega.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace dhat {

std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>
simplex_atom_source_target(const std::vector<int>& verts) {
  if (verts.size() < 2)
    throw std::invalid_argument("simplex atom rule needs dimension >= 1");
  std::vector<std::vector<int>> src, tgt;
  for (size_t pos = 0; pos < verts.size(); ++pos) {
    std::vector<int> f = verts;
    f.erase(f.begin() + pos);
    // 1-based position: odd positions removed for the source
    if ((pos + 1) % 2 == 1)
      src.push_back(std::move(f));
    else
      tgt.push_back(std::move(f));
  }
  return {src, tgt};
}

std::pair<std::vector<std::string>, std::vector<std::string>>
cube_atom_source_target(const std::string& word) {
  int zeros = static_cast<int>(std::count(word.begin(), word.end(), '0'));
  if (zeros == 0) throw std::invalid_argument("cube atom rule needs dimension >= 1");
  std::vector<std::string> src, tgt;
  int zi = 0;
  for (size_t pos = 0; pos < word.size(); ++pos) {
    if (word[pos] != '0') continue;
    ++zi;  // the zi-th zero, 1-based
    std::string s = word, t = word;
    s[pos] = (zi % 2 == 1) ? '-' : '+';  // (-)^i
    t[pos] = (zi % 2 == 1) ? '+' : '-';  // (-)^(i+1)
    src.push_back(std::move(s));
    tgt.push_back(std::move(t));
  }
  return {src, tgt};
}

int GeneratorComplex::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? -1 : it->second;
}

int GeneratorComplex::add_face(std::string name, int dim, std::vector<int> closure,
                               std::vector<int> source, std::vector<int> target) {
  int id = count();
  std::sort(closure.begin(), closure.end());
  std::sort(source.begin(), source.end());
  std::sort(target.begin(), target.end());
  if (!by_name_.emplace(name, id).second)
    throw std::invalid_argument("duplicate face name: " + name);
  faces_.push_back(Face{std::move(name), dim, std::move(closure), std::move(source),
                        std::move(target)});
  return id;
}

GeneratorComplex GeneratorComplex::simplex(int n) {
  if (n < 0) throw std::invalid_argument("simplex: n >= 0 required");
  // nonempty subsets of {0..n}, smaller cardinality first
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= n; ++v)
      if (mask & (1 << v)) s.push_back(v);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& a, const auto& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  auto name_of = [n](const std::vector<int>& s) {
    std::string nm = "(";
    for (size_t i = 0; i < s.size(); ++i) {
      if (i && n > 9) nm += ",";
      nm += std::to_string(s[i]);
    }
    return nm + ")";
  };
  GeneratorComplex g;
  std::map<std::vector<int>, int> id_of;
  for (const auto& s : subsets) {
    std::vector<int> closure, src, tgt;
    for (int mask = 1; mask < (1 << static_cast<int>(s.size())); ++mask) {
      std::vector<int> sub;
      for (size_t i = 0; i < s.size(); ++i)
        if (mask & (1 << i)) sub.push_back(s[i]);
      closure.push_back(mask == (1 << static_cast<int>(s.size())) - 1
                            ? static_cast<int>(g.count())
                            : id_of.at(sub));
    }
    if (s.size() >= 2) {
      auto [ss, tt] = simplex_atom_source_target(s);
      for (const auto& f : ss) src.push_back(id_of.at(f));
      for (const auto& f : tt) tgt.push_back(id_of.at(f));
    }
    int id = g.add_face(name_of(s), static_cast<int>(s.size()) - 1, closure, src, tgt);
    id_of[s] = id;
  }
  return g;
}

GeneratorComplex GeneratorComplex::cube(int n) {
  if (n < 0) throw std::invalid_argument("cube: n >= 0 required");
  std::vector<std::string> words{""};
  for (int a = 0; a < n; ++a) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (char c : {'-', '0', '+'}) next.push_back(w + c);
    words = std::move(next);
  }
  auto zeros = [](const std::string& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), '0'));
  };
  std::sort(words.begin(), words.end(), [&](const auto& a, const auto& b) {
    return zeros(a) != zeros(b) ? zeros(a) < zeros(b) : a < b;
  });
  GeneratorComplex g;
  std::map<std::string, int> id_of;
  for (const auto& w : words) {
    // closure: substitute any subset of zeros by any signs
    std::set<std::string> cl{w};
    std::vector<std::string> frontier{w};
    while (!frontier.empty()) {
      std::string cur = frontier.back();
      frontier.pop_back();
      for (size_t p = 0; p < cur.size(); ++p) {
        if (cur[p] != '0') continue;
        for (char c : {'-', '+'}) {
          std::string nx = cur;
          nx[p] = c;
          if (cl.insert(nx).second) frontier.push_back(nx);
        }
      }
    }
    std::vector<int> closure, src, tgt;
    for (const auto& f : cl)
      closure.push_back(f == w ? g.count() : id_of.at(f));
    if (zeros(w) >= 1) {
      auto [ss, tt] = cube_atom_source_target(w);
      for (const auto& f : ss) src.push_back(id_of.at(f));
      for (const auto& f : tt) tgt.push_back(id_of.at(f));
    }
    id_of[w] = g.add_face(w, zeros(w), closure, src, tgt);
  }
  return g;
}

CellTable::CellTable(const GeneratorComplex* g) {
  if (!g) return;
  for (int f = 0; f < g->count(); ++f) {
    face_names_.push_back(g->face(f).name);
    face_dims_.push_back(g->face(f).dim);
  }
}

static std::string id_key(const std::vector<int>& faces) {
  std::string k;
  for (int f : faces) {
    k += std::to_string(f);
    k += ',';
  }
  return k;
}

int CellTable::intern_support(std::vector<int> faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::string k = id_key(faces);
  auto it = support_ids_.find(k);
  if (it != support_ids_.end()) return it->second;
  int sid = static_cast<int>(supports_.size());
  support_ids_.emplace(std::move(k), sid);
  supports_.push_back(std::move(faces));
  return sid;
}

int CellTable::cell_by_support(int sid) const {
  auto it = cell_of_support_.find(sid);
  return it == cell_of_support_.end() ? -1 : it->second;
}

int CellTable::add_cell(Cell c) {
  auto it = cell_of_support_.find(c.support);
  if (it != cell_of_support_.end()) {
    const Cell& old = cells_[it->second];
    if (old.dim != c.dim || old.bnd != c.bnd)
      throw WellDefinednessError(
          "conflicting boundary tables for support " + support_key(c.support));
    return it->second;
  }
  int idx = cell_count();
  cell_of_support_.emplace(c.support, idx);
  cells_.push_back(std::move(c));
  return idx;
}

int CellTable::boundary_support(int cell, int q, Sign sign) const {
  const Cell& c = cells_.at(cell);
  if (q >= c.dim) return c.support;
  return c.bnd[q][static_cast<int>(sign)];
}

int CellTable::boundary_cell(int cell, int q, Sign sign) const {
  return cell_by_support(boundary_support(cell, q, sign));
}

std::string CellTable::support_key(int sid) const {
  std::vector<std::string> names;
  for (int f : supports_.at(sid)) names.push_back(face_names_.at(f));
  std::sort(names.begin(), names.end());
  std::string k;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) k += ",";
    k += names[i];
  }
  return k;
}

std::uint64_t CellTable::support_hash(int sid) const {
  std::string k = support_key(sid);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a, stable across runs
  for (unsigned char ch : k) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::json CellTable::to_json() const {
  auto hex = [](std::uint64_t h) {
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  };
  std::vector<int> order(cells_.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys(cells_.size());
  for (size_t i = 0; i < cells_.size(); ++i) keys[i] = support_key(cells_[i].support);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cells_[a].dim != cells_[b].dim) return cells_[a].dim < cells_[b].dim;
    return keys[a] < keys[b];
  });
  nlohmann::json cells = nlohmann::json::array();
  for (int i : order) {
    const Cell& c = cells_[i];
    std::vector<std::string> names;
    for (int f : supports_.at(c.support)) names.push_back(face_names_.at(f));
    std::sort(names.begin(), names.end());
    nlohmann::json s = nlohmann::json::array(), t = nlohmann::json::array();
    for (int q = 0; q < c.dim; ++q) {
      s.push_back(hex(support_hash(c.bnd[q][0])));
      t.push_back(hex(support_hash(c.bnd[q][1])));
    }
    cells.push_back({{"dim", c.dim},
                     {"support", names},
                     {"key", hex(support_hash(c.support))},
                     {"s", s},
                     {"t", t}});
  }
  return nlohmann::json{{"truncated", truncated_}, {"cells", cells}};
}

int add_cell_by_support(CellTable& t, const GeneratorComplex& g,
                        const std::vector<int>& faces) {
  int sid = t.intern_support(faces);
  int existing = t.cell_by_support(sid);
  if (existing >= 0) return existing;
  const std::vector<int>& supp = t.support(sid);
  int e = 0;
  for (int f : supp) e = std::max(e, g.face(f).dim);
  if (e == 0) {
    if (supp.size() != 1)
      throw WellDefinednessError("0-dimensional support is not a single vertex");
    return t.add_cell({sid, 0, {}});
  }
  std::set<int> killed_s, killed_t;
  for (int f : supp)
    if (g.face(f).dim == e) {
      for (int x : g.face(f).target) killed_s.insert(x);
      for (int x : g.face(f).source) killed_t.insert(x);
    }
  auto half = [&](const std::set<int>& killed) {
    std::set<int> cl;
    for (int f : supp) {
      if (g.face(f).dim != e - 1 || killed.count(f)) continue;
      for (int x : g.face(f).closure) cl.insert(x);
    }
    return std::vector<int>(cl.begin(), cl.end());
  };
  std::vector<int> src_faces = half(killed_s), tgt_faces = half(killed_t);
  if (src_faces.empty() || tgt_faces.empty())
    throw WellDefinednessError("support is not a molecule: empty boundary");
  int src = add_cell_by_support(t, g, src_faces);
  int tgt = add_cell_by_support(t, g, tgt_faces);
  CellTable::Cell c;
  c.support = sid;
  c.dim = e;
  c.bnd.assign(e, {0, 0});
  c.bnd[e - 1] = {t.cell(src).support, t.cell(tgt).support};
  for (int q = 0; q < e - 1; ++q) {
    c.bnd[q][0] = t.boundary_support(src, q, Sign::minus);
    c.bnd[q][1] = t.boundary_support(tgt, q, Sign::plus);
  }
  return t.add_cell(std::move(c));
}

CellTable atoms(const GeneratorComplex& g) {
  CellTable t(&g);
  for (int f = 0; f < g.count(); ++f) add_cell_by_support(t, g, g.face(f).closure);
  return t;
}

// shared by compose() and the generation fixpoint; returns -1 when the cell
// limit is hit with truncation allowed
static int compose_impl(CellTable& t, int a, int b, int p, const GenerationLimits* lim) {
  const auto& ca = t.cell(a);
  const auto& cb = t.cell(b);
  if (t.boundary_support(a, p, Sign::plus) != t.boundary_support(b, p, Sign::minus))
    throw NonComposableError("t_" + std::to_string(p) + " of the left factor is not s_" +
                             std::to_string(p) + " of the right factor");
  int ndim = std::max(ca.dim, cb.dim);
  if (p >= ndim) return a;  // both factors degenerate at p: x == y
  std::vector<int> uni;
  std::set_union(t.support(ca.support).begin(), t.support(ca.support).end(),
                 t.support(cb.support).begin(), t.support(cb.support).end(),
                 std::back_inserter(uni));
  CellTable::Cell c;
  c.support = t.intern_support(std::move(uni));
  c.dim = ndim;
  c.bnd.assign(ndim, {0, 0});
  for (int q = 0; q < ndim; ++q) {
    if (q == p) {
      c.bnd[q] = {t.boundary_support(a, p, Sign::minus),
                  t.boundary_support(b, p, Sign::plus)};
    } else if (q < p) {
      // below the composition axis both factors share their boundaries
      if (t.boundary_support(a, q, Sign::minus) != t.boundary_support(b, q, Sign::minus) ||
          t.boundary_support(a, q, Sign::plus) != t.boundary_support(b, q, Sign::plus))
        throw WellDefinednessError("factors disagree below the composition axis");
      c.bnd[q] = {t.boundary_support(a, q, Sign::minus),
                  t.boundary_support(a, q, Sign::plus)};
    } else {
      for (Sign sg : {Sign::minus, Sign::plus}) {
        const auto& fa = t.support(t.boundary_support(a, q, sg));
        const auto& fb = t.support(t.boundary_support(b, q, sg));
        std::vector<int> u;
        std::set_union(fa.begin(), fa.end(), fb.begin(), fb.end(),
                       std::back_inserter(u));
        c.bnd[q][static_cast<int>(sg)] = t.intern_support(std::move(u));
      }
    }
  }
  if (lim && t.cell_by_support(c.support) < 0 && t.cell_count() >= lim->max_cells) {
    if (!lim->allow_truncation)
      throw TruncationError("cell limit " + std::to_string(lim->max_cells) +
                            " exceeded during generation");
    t.mark_truncated();
    return -1;
  }
  int idx = t.add_cell(std::move(c));
  t.record_composition({a, b, p, idx});
  return idx;
}

int compose(CellTable& t, int a, int b, int p) {
  if (a < 0 || a >= t.cell_count() || b < 0 || b >= t.cell_count() || p < 0)
    throw std::invalid_argument("compose: bad arguments");
  return compose_impl(t, a, b, p, nullptr);
}

CellTable generate_cells(const GeneratorComplex& g, const GenerationLimits& lim) {
  CellTable t(&g);
  std::deque<int> work;
  for (int f = 0; f < g.count(); ++f) {
    if (g.face(f).dim > lim.max_dim) {
      t.mark_truncated();
      continue;
    }
    if (t.cell_count() >= lim.max_cells &&
        t.cell_by_support(t.intern_support(g.face(f).closure)) < 0) {
      if (!lim.allow_truncation) throw TruncationError("cell limit exceeded on atoms");
      t.mark_truncated();
      continue;
    }
    add_cell_by_support(t, g, g.face(f).closure);
  }
  for (int i = 0; i < t.cell_count(); ++i) work.push_back(i);
  // partners indexed by (axis, boundary support)
  int paxes = std::max(lim.max_dim, 1);
  std::vector<std::unordered_map<int, std::vector<int>>> by_s(paxes), by_t(paxes);
  auto try_pair = [&](int a, int b, int p) {
    if (p >= t.cell(a).dim && p >= t.cell(b).dim) return;
    int before = t.cell_count();
    int r = compose_impl(t, a, b, p, &lim);
    if (r >= 0 && t.cell_count() > before) work.push_back(r);
  };
  size_t next = 0;
  while (next < work.size()) {
    int c = static_cast<int>(work[next++]);
    for (int p = 0; p < paxes; ++p) {
      int skey = t.boundary_support(c, p, Sign::minus);
      int tkey = t.boundary_support(c, p, Sign::plus);
      // c as the right factor, then as the left factor
      if (auto it = by_t[p].find(skey); it != by_t[p].end())
        for (int a : std::vector<int>(it->second)) try_pair(a, c, p);
      if (auto it = by_s[p].find(tkey); it != by_s[p].end())
        for (int b : std::vector<int>(it->second)) try_pair(c, b, p);
      by_s[p][skey].push_back(c);
      by_t[p][tkey].push_back(c);
    }
  }
  return t;
}

bool is_noncontracting_check(const CellTable& t) {
  for (int i = 0; i < t.cell_count(); ++i) {
    const auto& c = t.cell(i);
    if (c.dim < 2) continue;
    for (Sign sg : {Sign::minus, Sign::plus}) {
      const auto& supp = t.support(c.bnd[1 - 1][static_cast<int>(sg)]);
      int d = 0;
      for (int f : supp) d = std::max(d, t.face_dim(f));
      if (d != 1) return false;
    }
  }
  return true;
}

CellTable glob(const CellTable& t) {
  CellTable o;
  o.face_names_ = t.face_names_;
  o.face_dims_ = t.face_dims_;
  o.face_names_.push_back("_iota");
  o.face_names_.push_back("_sigma");
  o.face_dims_.push_back(0);
  o.face_dims_.push_back(0);
  o.supports_ = t.supports_;
  for (size_t sid = 0; sid < o.supports_.size(); ++sid)
    o.support_ids_.emplace(id_key(o.supports_[sid]), static_cast<int>(sid));
  int iota_sid = o.intern_support({t.face_count()});
  int sigma_sid = o.intern_support({t.face_count() + 1});
  int iota = o.add_cell({iota_sid, 0, {}});
  int sigma = o.add_cell({sigma_sid, 0, {}});
  (void)iota;
  (void)sigma;
  for (int i = 0; i < t.cell_count(); ++i) {
    const auto& c = t.cell(i);
    CellTable::Cell nc;
    nc.support = c.support;
    nc.dim = c.dim + 1;
    nc.bnd.assign(nc.dim, {0, 0});
    nc.bnd[0] = {iota_sid, sigma_sid};
    for (int q = 0; q < c.dim; ++q) nc.bnd[q + 1] = c.bnd[q];
    o.add_cell(std::move(nc));
  }
  for (const auto& cm : t.compositions())
    o.record_composition({cm.a + 2, cm.b + 2, cm.p + 1, cm.result + 2});
  if (t.truncated()) o.mark_truncated();
  return o;
}

CellTable path_part(const CellTable& t) {
  if (!is_noncontracting_check(t))
    throw std::invalid_argument("path_part requires a noncontracting table");
  CellTable o;
  o.face_names_ = t.face_names_;
  o.face_dims_ = t.face_dims_;
  o.supports_ = t.supports_;
  for (size_t sid = 0; sid < o.supports_.size(); ++sid)
    o.support_ids_.emplace(id_key(o.supports_[sid]), static_cast<int>(sid));
  std::vector<int> remap(t.cell_count(), -1);
  for (int i = 0; i < t.cell_count(); ++i) {
    const auto& c = t.cell(i);
    if (c.dim == 0) continue;
    CellTable::Cell nc;
    nc.support = c.support;
    nc.dim = c.dim - 1;
    nc.bnd.assign(nc.dim, {0, 0});
    for (int q = 1; q < c.dim; ++q) nc.bnd[q - 1] = c.bnd[q];
    remap[i] = o.add_cell(std::move(nc));
  }
  for (const auto& cm : t.compositions())
    if (cm.p >= 1 && remap[cm.a] >= 0 && remap[cm.b] >= 0 && remap[cm.result] >= 0)
      o.record_composition({remap[cm.a], remap[cm.b], cm.p - 1, remap[cm.result]});
  if (t.truncated()) o.mark_truncated();
  return o;
}

Realization realize(const PrecubicalSet& k, const GenerationLimits& lim) {
  if (!k.validate().empty())
    throw std::invalid_argument("realize: input precubical set is invalid");

  // enumerate (cube, word) pairs; word rank in base 3 over '-','0','+'
  long npairs = 0;
  std::vector<long> pow3{1};
  for (int d = 1; d <= std::max(k.top_dim(), 1); ++d) pow3.push_back(pow3.back() * 3);
  std::vector<std::vector<long>> base(k.top_dim() + 1);
  for (int d = 0; d <= k.top_dim(); ++d) {
    base[d].resize(k.size(d));
    for (int i = 0; i < k.size(d); ++i) {
      base[d][i] = npairs;
      npairs += pow3[d];
    }
  }
  auto word_rank = [](const std::string& w) {
    long r = 0;
    for (char c : w) r = r * 3 + (c == '-' ? 0 : c == '0' ? 1 : 2);
    return r;
  };
  auto pid = [&](CubeId c, const std::string& w) { return base[c.dim][c.index] + word_rank(w); };

  std::vector<int> parent(npairs);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> findp = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](long x, long y) {
    int rx = findp(static_cast<int>(x)), ry = findp(static_cast<int>(y));
    if (rx != ry) parent[rx] = ry;
  };

  auto words_of = [&](int len) {
    std::vector<std::string> ws{""};
    for (int a = 0; a < len; ++a) {
      std::vector<std::string> nx;
      for (const auto& w : ws)
        for (char c : {'-', '0', '+'}) nx.push_back(w + c);
      ws = std::move(nx);
    }
    return ws;
  };
  for (int d = 1; d <= k.top_dim(); ++d) {
    auto ws = words_of(d - 1);
    for (int idx = 0; idx < k.size(d); ++idx)
      for (int i = 1; i <= d; ++i)
        for (Sign a : {Sign::minus, Sign::plus}) {
          CubeId f = k.face({d, idx}, i, a);
          for (const auto& w : ws) {
            std::string lifted = w;
            lifted.insert(lifted.begin() + (i - 1), sign_char(a));
            unite(pid(f, w), pid(CubeId{d, idx}, lifted));
          }
        }
  }

  // representatives: lexicographically least (cube name, word)
  struct Rep {
    CubeId cube;
    std::string word;
  };
  std::map<int, Rep> rep_of_root;
  for (int d = 0; d <= k.top_dim(); ++d) {
    auto ws = words_of(d);
    for (int idx = 0; idx < k.size(d); ++idx)
      for (const auto& w : ws) {
        int r = findp(static_cast<int>(pid(CubeId{d, idx}, w)));
        auto key = std::make_pair(k.name({d, idx}), w);
        auto it = rep_of_root.find(r);
        if (it == rep_of_root.end() ||
            std::make_pair(k.name(it->second.cube), it->second.word) > key)
          rep_of_root[r] = Rep{CubeId{d, idx}, w};
      }
  }

  auto zeros = [](const std::string& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), '0'));
  };
  auto class_name = [&](const Rep& r) {
    return r.word.empty() ? k.name(r.cube) : k.name(r.cube) + ":" + r.word;
  };
  // order classes by (dim, name) so children precede parents
  std::vector<std::pair<int, Rep>> roots;
  for (auto& [root, rep] : rep_of_root) roots.emplace_back(root, rep);
  std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
    int da = zeros(a.second.word), db = zeros(b.second.word);
    if (da != db) return da < db;
    return class_name(a.second) < class_name(b.second);
  });
  std::unordered_map<int, int> face_of_root;
  Realization out;
  for (auto& [root, rep] : roots) {
    std::vector<int> closure, src, tgt;
    // subfaces: substitute any subset of zeros in the representative word
    std::set<int> cl;
    std::vector<std::string> frontier{rep.word};
    std::set<std::string> seen{rep.word};
    while (!frontier.empty()) {
      std::string cur = frontier.back();
      frontier.pop_back();
      int r = findp(static_cast<int>(pid(rep.cube, cur)));
      cl.insert(cur == rep.word ? static_cast<int>(out.complex.count())
                                : face_of_root.at(r));
      for (size_t p = 0; p < cur.size(); ++p) {
        if (cur[p] != '0') continue;
        for (char c : {'-', '+'}) {
          std::string nx = cur;
          nx[p] = c;
          if (seen.insert(nx).second) frontier.push_back(nx);
        }
      }
    }
    closure.assign(cl.begin(), cl.end());
    if (zeros(rep.word) >= 1) {
      auto [ss, tt] = cube_atom_source_target(rep.word);
      for (const auto& w : ss)
        src.push_back(face_of_root.at(findp(static_cast<int>(pid(rep.cube, w)))));
      for (const auto& w : tt)
        tgt.push_back(face_of_root.at(findp(static_cast<int>(pid(rep.cube, w)))));
      std::sort(src.begin(), src.end());
      src.erase(std::unique(src.begin(), src.end()), src.end());
      std::sort(tgt.begin(), tgt.end());
      tgt.erase(std::unique(tgt.begin(), tgt.end()), tgt.end());
    }
    int id = out.complex.add_face(class_name(rep), zeros(rep.word), closure, src, tgt);
    face_of_root[root] = id;
    out.class_names.push_back(class_name(rep));
  }

  // cycle check on the quotient 1-skeleton
  {
    std::unordered_map<int, std::vector<int>> adj;  // vertex face -> vertex faces
    for (int f = 0; f < out.complex.count(); ++f) {
      if (out.complex.face(f).dim != 1) continue;
      adj[out.complex.face(f).source.at(0)].push_back(out.complex.face(f).target.at(0));
    }
    std::unordered_map<int, int> state;  // 0 new, 1 open, 2 done
    std::function<bool(int)> dfs = [&](int v) {
      state[v] = 1;
      for (int w : adj[v]) {
        if (state[w] == 1) return true;
        if (state[w] == 0 && dfs(w)) return true;
      }
      state[v] = 2;
      return false;
    };
    bool cyc = false;
    for (int f = 0; f < out.complex.count() && !cyc; ++f)
      if (out.complex.face(f).dim == 0 && state[f] == 0) cyc = dfs(f);
    if (cyc) {
      if (!lim.allow_truncation)
        throw CycleError("realize: directed cycle in the 1-skeleton");
    }
  }

  out.table = generate_cells(out.complex, lim);
  return out;
}

}  // namespace dhat
