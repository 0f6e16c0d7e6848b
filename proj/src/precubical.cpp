#include "dhat/precubical.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace dhat {

std::string FaceViolation::describe() const {
  std::string s;
  if (kind == Kind::dangling) {
    s = "dangling face d_" + std::to_string(i) + "^" + sign_char(alpha);
  } else {
    s = "cube axiom fails for (i,j,a,b)=(" + std::to_string(i) + "," +
        std::to_string(j) + "," + sign_char(alpha) + "," + sign_char(beta) + ")";
  }
  s += " at dim " + std::to_string(cube.dim) + " cube #" + std::to_string(cube.index);
  return s;
}

int PrecubicalSet::add_cube(int dim, std::string name) {
  if (dim < 0) throw std::invalid_argument("cube dimension must be >= 0");
  if (static_cast<int>(names_.size()) <= dim) {
    names_.resize(dim + 1);
    faces_.resize(dim + 1);
    index_.resize(dim + 1);
  }
  if (index_[dim].count(name))
    throw std::invalid_argument("duplicate cube name at dim " + std::to_string(dim) +
                                ": " + name);
  int idx = static_cast<int>(names_[dim].size());
  index_[dim].emplace(name, idx);
  names_[dim].push_back(std::move(name));
  faces_[dim].emplace_back(2 * dim, CubeId{});
  return idx;
}

void PrecubicalSet::set_face(CubeId c, int i, Sign alpha, CubeId target) {
  if (c.dim <= 0 || c.dim > top_dim() || c.index < 0 || c.index >= size(c.dim))
    throw std::invalid_argument("set_face: bad cube id");
  if (i < 1 || i > c.dim) throw std::invalid_argument("set_face: face index out of range");
  faces_[c.dim][c.index][2 * (i - 1) + static_cast<int>(alpha)] = target;
}

int PrecubicalSet::size(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  return static_cast<int>(names_[dim].size());
}

int PrecubicalSet::total_size() const {
  int n = 0;
  for (int d = 0; d <= top_dim(); ++d) n += size(d);
  return n;
}

const std::string& PrecubicalSet::name(CubeId c) const {
  if (c.dim < 0 || c.dim > top_dim() || c.index < 0 || c.index >= size(c.dim))
    throw std::out_of_range("name: bad cube id");
  return names_[c.dim][c.index];
}

CubeId PrecubicalSet::face(CubeId c, int i, Sign alpha) const {
  if (c.dim <= 0 || c.dim > top_dim() || c.index < 0 || c.index >= size(c.dim))
    throw std::out_of_range("face: bad cube id");
  if (i < 1 || i > c.dim) throw std::out_of_range("face: index out of range");
  return faces_[c.dim][c.index][2 * (i - 1) + static_cast<int>(alpha)];
}

std::optional<CubeId> PrecubicalSet::find(int dim, std::string_view name) const {
  if (dim < 0 || dim > top_dim()) return std::nullopt;
  auto it = index_[dim].find(std::string(name));
  if (it == index_[dim].end()) return std::nullopt;
  return CubeId{dim, it->second};
}

std::vector<FaceViolation> PrecubicalSet::validate() const {
  std::vector<FaceViolation> out;
  const Sign signs[2] = {Sign::minus, Sign::plus};
  for (int n = 1; n <= top_dim(); ++n) {
    for (int idx = 0; idx < size(n); ++idx) {
      CubeId c{n, idx};
      // dangling references first, then axiom checks, all in (i,j,a,b) order
      for (int i = 1; i <= n; ++i)
        for (Sign a : signs) {
          CubeId f = face(c, i, a);
          if (f.dim != n - 1 || f.index < 0 || f.index >= size(n - 1))
            out.push_back({FaceViolation::Kind::dangling, c, i, 0, a, Sign::minus});
        }
      if (n < 2) continue;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (Sign a : signs)
            for (Sign b : signs) {
              CubeId fi = face(c, i, a);
              CubeId fj = face(c, j, b);
              if (fi.dim != n - 1 || fi.index < 0 || fi.index >= size(n - 1)) continue;
              if (fj.dim != n - 1 || fj.index < 0 || fj.index >= size(n - 1)) continue;
              // d_i^a d_j^b = d_{j-1}^b d_i^a for i < j
              CubeId lhs = face(fj, i, a);
              CubeId rhs = face(fi, j - 1, b);
              if (!(lhs.dim == n - 2 && lhs.index >= 0 && lhs.index < size(n - 2)) ||
                  !(rhs.dim == n - 2 && rhs.index >= 0 && rhs.index < size(n - 2))) {
                continue;  // reported as dangling on the face cube itself
              }
              if (lhs != rhs)
                out.push_back({FaceViolation::Kind::axiom, c, i, j, a, b});
            }
    }
  }
  return out;
}

nlohmann::json PrecubicalSet::to_json() const {
  // names must be globally unique so face targets can be resolved by name
  std::unordered_map<std::string, int> seen;
  for (int d = 0; d <= top_dim(); ++d)
    for (const auto& nm : names_[d])
      if (!seen.emplace(nm, d).second)
        throw std::runtime_error("to_json: cube name not globally unique: " + nm);

  nlohmann::json dims = nlohmann::json::object();
  for (int d = 0; d <= top_dim(); ++d) {
    if (size(d) == 0 && d > 0) continue;
    dims[std::to_string(d)] = names_[d];
  }
  nlohmann::json faces = nlohmann::json::array();
  const Sign signs[2] = {Sign::minus, Sign::plus};
  for (int n = 1; n <= top_dim(); ++n)
    for (int idx = 0; idx < size(n); ++idx)
      for (int i = 1; i <= n; ++i)
        for (Sign a : signs) {
          CubeId t = face(CubeId{n, idx}, i, a);
          if (!(t.dim == n - 1 && t.index >= 0 && t.index < size(n - 1)))
            throw std::runtime_error("to_json: unset or dangling face on " +
                                     names_[n][idx]);
          faces.push_back({{"cube", names_[n][idx]},
                           {"i", i},
                           {"sign", std::string(1, sign_char(a))},
                           {"target", name(t)}});
        }
  return nlohmann::json{{"dims", dims}, {"faces", faces}};
}

PrecubicalSet PrecubicalSet::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("faces"))
    throw std::invalid_argument("precubical json needs \"dims\" and \"faces\"");
  PrecubicalSet k;
  std::unordered_map<std::string, CubeId> by_name;
  std::vector<int> dims_present;
  for (auto it = j.at("dims").begin(); it != j.at("dims").end(); ++it)
    dims_present.push_back(std::stoi(it.key()));
  std::sort(dims_present.begin(), dims_present.end());
  for (int d : dims_present) {
    for (const auto& nm : j.at("dims").at(std::to_string(d))) {
      std::string s = nm.get<std::string>();
      if (by_name.count(s))
        throw std::invalid_argument("duplicate cube name: " + s);
      int idx = k.add_cube(d, s);
      by_name[s] = CubeId{d, idx};
    }
  }
  for (const auto& f : j.at("faces")) {
    std::string cube = f.at("cube").get<std::string>();
    std::string target = f.at("target").get<std::string>();
    std::string sign = f.at("sign").get<std::string>();
    int i = f.at("i").get<int>();
    auto ci = by_name.find(cube);
    auto ti = by_name.find(target);
    if (ci == by_name.end()) throw std::invalid_argument("unknown cube: " + cube);
    if (ti == by_name.end()) throw std::invalid_argument("unknown face target: " + target);
    if (sign != "-" && sign != "+")
      throw std::invalid_argument("face sign must be \"-\" or \"+\"");
    k.set_face(ci->second, i, sign == "-" ? Sign::minus : Sign::plus, ti->second);
  }
  return k;
}

PrecubicalSet standard_cube(int n) {
  if (n < 0) throw std::invalid_argument("standard_cube: n >= 0 required");
  PrecubicalSet k;
  // enumerate words over {-,0,+} of length n, grouped by zero count
  std::vector<std::string> words;
  words.emplace_back("");
  for (int a = 0; a < n; ++a) {
    std::vector<std::string> next;
    for (const auto& w : words)
      for (char c : {'-', '0', '+'}) next.push_back(w + c);
    words = std::move(next);
  }
  std::sort(words.begin(), words.end());
  auto word_dim = [](const std::string& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), '0'));
  };
  for (const auto& w : words) k.add_cube(word_dim(w), w);
  for (const auto& w : words) {
    int d = word_dim(w);
    if (d == 0) continue;
    CubeId c = *k.find(d, w);
    int zi = 0;
    for (size_t pos = 0; pos < w.size(); ++pos) {
      if (w[pos] != '0') continue;
      ++zi;  // this is the zi-th zero, 1-based
      for (Sign a : {Sign::minus, Sign::plus}) {
        std::string f = w;
        f[pos] = sign_char(a);
        k.set_face(c, zi, a, *k.find(d - 1, f));
      }
    }
  }
  return k;
}

std::string grid_cube_name(const std::vector<int>& comps,
                           const std::vector<bool>& is_interval) {
  std::string s = "(";
  for (size_t a = 0; a < comps.size(); ++a) {
    if (a) s += ",";
    s += std::to_string(comps[a]);
    if (is_interval[a]) s += "-" + std::to_string(comps[a] + 1);
  }
  s += ")";
  return s;
}

PrecubicalSet grid(const std::vector<int>& lengths,
                   const std::set<std::vector<int>>& holes) {
  const int n = static_cast<int>(lengths.size());
  for (int l : lengths)
    if (l < 1) throw std::invalid_argument("grid: side lengths must be >= 1");
  for (const auto& h : holes) {
    if (static_cast<int>(h.size()) != n)
      throw std::invalid_argument("grid: hole arity mismatch");
    for (int a = 0; a < n; ++a)
      if (h[a] < 0 || h[a] >= lengths[a])
        throw std::invalid_argument("grid: hole out of range");
  }

  // A cube spec: per axis either a fixed coordinate or an interval start.
  struct Spec {
    std::vector<int> comps;
    std::vector<bool> interval;
  };
  // keep = cube lies in the closure of some surviving top cube
  auto survives = [&](const Spec& s) {
    std::vector<int> top(n);
    std::function<bool(int)> pick = [&](int axis) {
      if (axis == n) return holes.count(top) == 0;
      if (s.interval[axis]) {
        top[axis] = s.comps[axis];
        return pick(axis + 1);
      }
      for (int t : {s.comps[axis] - 1, s.comps[axis]}) {
        if (t < 0 || t >= lengths[axis]) continue;
        top[axis] = t;
        if (pick(axis + 1)) return true;
      }
      return false;
    };
    return pick(0);
  };

  PrecubicalSet k;
  std::map<std::pair<int, std::string>, CubeId> ids;
  // enumerate all specs grouped by dimension so lower cubes exist first
  std::vector<Spec> all;
  {
    Spec cur{std::vector<int>(n), std::vector<bool>(n)};
    std::function<void(int)> rec = [&](int axis) {
      if (axis == n) {
        all.push_back(cur);
        return;
      }
      for (int v = 0; v <= lengths[axis]; ++v) {
        cur.comps[axis] = v;
        cur.interval[axis] = false;
        rec(axis + 1);
      }
      for (int v = 0; v < lengths[axis]; ++v) {
        cur.comps[axis] = v;
        cur.interval[axis] = true;
        rec(axis + 1);
      }
    };
    rec(0);
  }
  std::stable_sort(all.begin(), all.end(), [](const Spec& a, const Spec& b) {
    return std::count(a.interval.begin(), a.interval.end(), true) <
           std::count(b.interval.begin(), b.interval.end(), true);
  });
  for (const auto& s : all) {
    if (!survives(s)) continue;
    int d = static_cast<int>(std::count(s.interval.begin(), s.interval.end(), true));
    std::string nm = grid_cube_name(s.comps, s.interval);
    int idx = k.add_cube(d, nm);
    ids[{d, nm}] = CubeId{d, idx};
    if (d == 0) continue;
    int ii = 0;
    for (int axis = 0; axis < n; ++axis) {
      if (!s.interval[axis]) continue;
      ++ii;
      for (Sign a : {Sign::minus, Sign::plus}) {
        Spec f = s;
        f.interval[axis] = false;
        f.comps[axis] = s.comps[axis] + (a == Sign::plus ? 1 : 0);
        auto it = ids.find({d - 1, grid_cube_name(f.comps, f.interval)});
        assert(it != ids.end() && "grid faces are closed under survival");
        k.set_face(CubeId{d, idx}, ii, a, it->second);
      }
    }
  }
  return k;
}

std::vector<CubeId> free_edges(const PrecubicalSet& k) {
  std::set<CubeId> bound;
  for (int idx = 0; idx < k.size(2); ++idx)
    for (int i = 1; i <= 2; ++i)
      for (Sign a : {Sign::minus, Sign::plus}) bound.insert(k.face({2, idx}, i, a));
  std::vector<CubeId> out;
  for (int idx = 0; idx < k.size(1); ++idx)
    if (!bound.count(CubeId{1, idx})) out.push_back(CubeId{1, idx});
  return out;
}

PrecubicalSet subdivide_edge(const PrecubicalSet& k, CubeId edge) {
  if (edge.dim != 1 || edge.index < 0 || edge.index >= k.size(1))
    throw std::invalid_argument("subdivide_edge: not an edge of the complex");
  for (int idx = 0; idx < k.size(2); ++idx)
    for (int i = 1; i <= 2; ++i)
      for (Sign a : {Sign::minus, Sign::plus})
        if (k.face({2, idx}, i, a) == edge)
          throw std::invalid_argument("subdivide_edge: edge bounds a square");

  const std::string& en = k.name(edge);
  PrecubicalSet out;
  // same vertices plus a midpoint
  for (int idx = 0; idx < k.size(0); ++idx) out.add_cube(0, k.name({0, idx}));
  int mid = out.add_cube(0, en + "#m");
  // edges with the chosen one split in two; higher cubes copied verbatim
  std::vector<int> edge_map(k.size(1), -1);
  for (int idx = 0; idx < k.size(1); ++idx) {
    if (idx == edge.index) continue;
    edge_map[idx] = out.add_cube(1, k.name({1, idx}));
  }
  int e1 = out.add_cube(1, en + "#1");
  int e2 = out.add_cube(1, en + "#2");
  for (int idx = 0; idx < k.size(1); ++idx) {
    if (idx == edge.index) continue;
    for (Sign a : {Sign::minus, Sign::plus})
      out.set_face({1, edge_map[idx]}, 1, a, k.face({1, idx}, 1, a));
  }
  out.set_face({1, e1}, 1, Sign::minus, k.face(edge, 1, Sign::minus));
  out.set_face({1, e1}, 1, Sign::plus, {0, mid});
  out.set_face({1, e2}, 1, Sign::minus, {0, mid});
  out.set_face({1, e2}, 1, Sign::plus, k.face(edge, 1, Sign::plus));
  for (int d = 2; d <= k.top_dim(); ++d)
    for (int idx = 0; idx < k.size(d); ++idx) {
      int ni = out.add_cube(d, k.name({d, idx}));
      for (int i = 1; i <= d; ++i)
        for (Sign a : {Sign::minus, Sign::plus}) {
          CubeId t = k.face({d, idx}, i, a);
          if (t.dim == 1) t.index = edge_map[t.index];
          out.set_face({d, ni}, i, a, t);
        }
    }
  return out;
}

}  // namespace dhat
