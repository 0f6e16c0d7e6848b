#include "dhat/pvlang.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

#include "dhat/freeomega.hpp"

namespace dhat {

int PVProgram::capacity(const std::string& name) const {
  for (const auto& [n, c] : resources)
    if (n == name) return c;
  throw std::invalid_argument("unknown resource: " + name);
}

namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;
  int line = 1, col = 1;

  void bump() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') bump();
      } else if (isspace(static_cast<unsigned char>(text[pos]))) {
        bump();
      } else {
        break;
      }
    }
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return text[pos];
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      bump();
      return true;
    }
    return false;
  }
  std::string word() {
    skip_ws();
    std::string w;
    while (pos < text.size() &&
           (isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      w += text[pos];
      bump();
    }
    return w;
  }
};

}  // namespace

PVProgram parse_pv(std::string_view text) {
  Lexer lx{text};
  PVProgram prog;
  std::set<std::string> res_names;
  while (!lx.eof()) {
    int kw_line = lx.line, kw_col = lx.col;
    std::string kw = lx.word();
    if (kw == "res") {
      std::string name = lx.word();
      if (name.empty()) throw PVParseError("expected resource name", lx.line, lx.col);
      if (!res_names.insert(name).second)
        throw PVParseError("duplicate resource " + name, kw_line, kw_col);
      if (!lx.eat('=')) throw PVParseError("expected '='", lx.line, lx.col);
      std::string num = lx.word();
      if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
        throw PVParseError("expected capacity integer", lx.line, lx.col);
      int cap = std::stoi(num);
      if (cap < 1) throw PVParseError("capacity must be >= 1", lx.line, lx.col);
      if (!lx.eat(';')) throw PVParseError("expected ';'", lx.line, lx.col);
      prog.resources.emplace_back(name, cap);
    } else if (kw == "proc") {
      if (!lx.eat(':')) throw PVParseError("expected ':'", lx.line, lx.col);
      std::vector<PVAction> acts;
      while (!lx.eat(';')) {
        if (lx.eof()) throw PVParseError("unterminated process", lx.line, lx.col);
        int a_line = lx.line, a_col = lx.col;
        std::string w = lx.word();
        if (w.size() < 2 || (w[0] != 'P' && w[0] != 'V'))
          throw PVParseError("expected Pname or Vname action", a_line, a_col);
        std::string r = w.substr(1);
        if (!res_names.count(r))
          throw PVParseError("action on undeclared resource " + r, a_line, a_col);
        acts.push_back({w[0] == 'P', r, a_line, a_col});
      }
      prog.processes.push_back(std::move(acts));
    } else {
      throw PVParseError("expected 'res' or 'proc', got '" + kw + "'", kw_line, kw_col);
    }
  }
  // well-formedness: P only when not holding, V only when holding
  for (const auto& proc : prog.processes) {
    std::set<std::string> held;
    for (const auto& a : proc) {
      if (a.acquire && held.count(a.resource))
        throw PVParseError("P on already-held resource " + a.resource, a.line, a.col);
      if (!a.acquire && !held.count(a.resource))
        throw PVParseError("V on un-held resource " + a.resource, a.line, a.col);
      if (a.acquire)
        held.insert(a.resource);
      else
        held.erase(a.resource);
    }
  }
  if (prog.processes.empty())
    throw PVParseError("program has no processes", lx.line, lx.col);
  return prog;
}

namespace {

// holds[j][r][k] = does process j hold r after its first k actions
std::vector<std::map<std::string, std::vector<char>>> hold_tables(const PVProgram& p) {
  std::vector<std::map<std::string, std::vector<char>>> holds;
  for (const auto& proc : p.processes) {
    std::map<std::string, std::vector<char>> h;
    for (const auto& [r, cap] : p.resources) h[r].assign(proc.size() + 1, 0);
    std::set<std::string> cur;
    for (size_t k = 0; k < proc.size(); ++k) {
      if (proc[k].acquire)
        cur.insert(proc[k].resource);
      else
        cur.erase(proc[k].resource);
      for (const auto& r : cur) h[r][k + 1] = 1;
    }
    holds.push_back(std::move(h));
  }
  return holds;
}

}  // namespace

PVModel build_model(const PVProgram& p) {
  const int n = static_cast<int>(p.processes.size());
  PVModel m;
  for (const auto& proc : p.processes) m.lengths.push_back(static_cast<int>(proc.size()));
  for (int l : m.lengths)
    if (l < 1) throw std::invalid_argument("build_model: empty process");
  auto holds = hold_tables(p);

  // a cube component is an interval (c,c+1) or a point k; usage per resource:
  // interval -> held after prefix c, point -> held strictly inside (k-1,k+1)
  auto over_capacity = [&](const std::vector<int>& comps,
                           const std::vector<bool>& interval) {
    for (const auto& [r, cap] : p.resources) {
      int total = 0;
      for (int j = 0; j < n; ++j) {
        const auto& h = holds[j].at(r);
        if (interval[j]) {
          total += h[comps[j]];
        } else {
          int k = comps[j];
          total += (k > 0 && h[k - 1] && h[k]) ? 1 : 0;
        }
      }
      if (total > cap) return true;
    }
    return false;
  };

  // full grid, then drop over-capacity cubes and close upward
  PrecubicalSet full = grid(m.lengths);
  std::map<std::pair<int, std::string>, char> removed;
  auto parse_spec = [&](const std::string& name, std::vector<int>& comps,
                        std::vector<bool>& interval) {
    comps.clear();
    interval.clear();
    size_t i = 1;  // skip '('
    while (i < name.size() && name[i] != ')') {
      int a = 0;
      while (isdigit(static_cast<unsigned char>(name[i]))) a = a * 10 + (name[i++] - '0');
      comps.push_back(a);
      if (name[i] == '-') {
        interval.push_back(true);
        while (name[i] != ',' && name[i] != ')') ++i;
      } else {
        interval.push_back(false);
      }
      if (name[i] == ',') ++i;
    }
  };
  for (int d = 0; d <= full.top_dim(); ++d)
    for (int idx = 0; idx < full.size(d); ++idx) {
      std::vector<int> comps;
      std::vector<bool> interval;
      parse_spec(full.name({d, idx}), comps, interval);
      if (over_capacity(comps, interval))
        removed[{d, full.name({d, idx})}] = 1;
    }
  // upward closure, dimension by dimension
  for (int d = 1; d <= full.top_dim(); ++d)
    for (int idx = 0; idx < full.size(d); ++idx) {
      if (removed.count({d, full.name({d, idx})})) continue;
      for (int i = 1; i <= d && !removed.count({d, full.name({d, idx})}); ++i)
        for (Sign a : {Sign::minus, Sign::plus}) {
          CubeId f = full.face({d, idx}, i, a);
          if (removed.count({d - 1, full.name(f)})) {
            removed[{d, full.name({d, idx})}] = 1;
            break;
          }
        }
    }

  m.initial.assign(n, 0);
  m.final_pos = m.lengths;
  auto coord_name = [&](const std::vector<int>& v) {
    return grid_cube_name(v, std::vector<bool>(v.size(), false));
  };
  if (removed.count({0, coord_name(m.final_pos)}))
    throw FinalForbiddenError("final position is forbidden by the capacities");
  if (removed.count({0, coord_name(m.initial)}))
    throw FinalForbiddenError("initial position is forbidden by the capacities");

  // rebuild the surviving subcomplex
  for (int d = 0; d <= full.top_dim(); ++d)
    for (int idx = 0; idx < full.size(d); ++idx) {
      if (removed.count({d, full.name({d, idx})})) continue;
      int ni = m.complex.add_cube(d, full.name({d, idx}));
      if (d == 0) {
        std::vector<int> comps;
        std::vector<bool> interval;
        parse_spec(full.name({d, idx}), comps, interval);
        m.vertex_of[comps] = CubeId{0, ni};
      }
      for (int i = 1; i <= d; ++i)
        for (Sign a : {Sign::minus, Sign::plus}) {
          CubeId f = full.face({d, idx}, i, a);
          auto t = m.complex.find(d - 1, full.name(f));
          assert(t && "upward closure keeps faces of kept cubes");
          m.complex.set_face({d, ni}, i, a, *t);
        }
    }
  return m;
}

namespace {

std::set<std::vector<int>> flood(const PVModel& m, const std::vector<int>& start,
                                 bool forward) {
  std::set<std::vector<int>> seen;
  if (!m.vertex_of.count(start)) return seen;
  std::deque<std::vector<int>> work{start};
  seen.insert(start);
  const int n = static_cast<int>(m.lengths.size());
  while (!work.empty()) {
    auto v = work.front();
    work.pop_front();
    for (int j = 0; j < n; ++j) {
      std::vector<int> w = v;
      std::vector<int> lo = v;
      if (forward) {
        if (v[j] >= m.lengths[j]) continue;
        w[j] = v[j] + 1;
      } else {
        if (v[j] <= 0) continue;
        w[j] = v[j] - 1;
        lo = w;
      }
      // the connecting edge must have survived
      std::vector<bool> interval(n, false);
      interval[j] = true;
      std::vector<int> comps = lo;
      if (!m.complex.find(1, grid_cube_name(comps, interval))) continue;
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

}  // namespace

std::set<std::vector<int>> reachable(const PVModel& m) {
  return flood(m, m.initial, true);
}

std::set<std::vector<int>> coreachable(const PVModel& m) {
  return flood(m, m.final_pos, false);
}

std::set<std::vector<int>> find_deadlocks(const PVModel& m) {
  std::set<std::vector<int>> out;
  const int n = static_cast<int>(m.lengths.size());
  for (const auto& v : reachable(m)) {
    if (v == m.final_pos) continue;
    bool stuck = true;
    for (int j = 0; j < n && stuck; ++j) {
      if (v[j] >= m.lengths[j]) continue;
      std::vector<bool> interval(n, false);
      interval[j] = true;
      if (m.complex.find(1, grid_cube_name(v, interval))) stuck = false;
    }
    if (stuck) out.insert(v);
  }
  return out;
}

std::set<std::vector<int>> unsafe_region(const PVModel& m) {
  auto r = reachable(m);
  auto c = coreachable(m);
  std::set<std::vector<int>> out;
  for (const auto& v : r)
    if (!c.count(v)) out.insert(v);
  return out;
}

nlohmann::json AnalysisReport::to_json() const {
  auto coords = [](const std::set<std::vector<int>>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : s) a.push_back(v);
    return a;
  };
  return nlohmann::json{{"deadlocks", coords(deadlocks)},
                        {"unsafe", coords(unsafe)},
                        {"unreachable", coords(unreachable)},
                        {"final_reachable", final_reachable},
                        {"vertices", static_cast<int>(model.vertex_of.size())},
                        {"cubes", model.complex.total_size()}};
}

std::string AnalysisReport::to_text() const {
  auto list = [](const std::set<std::vector<int>>& s) {
    std::string out;
    for (const auto& v : s) {
      out += "  (";
      for (size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
      out += ")\n";
    }
    return out.empty() ? "  none\n" : out;
  };
  std::string s;
  s += "vertices: " + std::to_string(model.vertex_of.size()) + "\n";
  s += "final reachable: " + std::string(final_reachable ? "yes" : "no") + "\n";
  s += "deadlocks:\n" + list(deadlocks);
  s += "unsafe:\n" + list(unsafe);
  s += "unreachable:\n" + list(unreachable);
  return s;
}

AnalysisReport analyze(const PVProgram& p) {
  AnalysisReport rep{build_model(p), {}, {}, {}, false};
  rep.deadlocks = find_deadlocks(rep.model);
  rep.unsafe = unsafe_region(rep.model);
  auto r = reachable(rep.model);
  for (const auto& [v, id] : rep.model.vertex_of)
    if (!r.count(v)) rep.unreachable.insert(v);
  rep.final_reachable = r.count(rep.model.final_pos) > 0;
  return rep;
}

TheoryReport homology_of_program(const PVProgram& p, Theory th,
                                 const std::vector<int>& degrees,
                                 const GenerationLimits& lim, const NerveOptions& o) {
  PVModel m = build_model(p);
  if (th == Theory::cubical) {
    ChainComplex c = chain_from_precubical(m.complex);
    TheoryReport rep;
    for (int n : degrees) rep.groups[n] = homology(c, n);
    return rep;
  }
  Realization r = realize(m.complex, lim);
  switch (th) {
    case Theory::globular:
      return globular_homology(r.table, degrees, o);
    case Theory::branching:
      return branching_homology(r.table, degrees, o);
    default:
      return merging_homology(r.table, degrees, o);
  }
}

}  // namespace dhat
