#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhat/homology.hpp"
#include "dhat/precubical.hpp"

namespace dhat {

struct PVParseError : std::runtime_error {
  int line, col;
  PVParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg) + " at line " + std::to_string(line_) +
                           ", column " + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

struct PVAction {
  bool acquire = true;  // P vs V
  std::string resource;
  int line = 0, col = 0;
};

struct PVProgram {
  std::vector<std::pair<std::string, int>> resources;  // (name, capacity)
  std::vector<std::vector<PVAction>> processes;
  int capacity(const std::string& name) const;
};

// res NAME = CAPACITY ; and proc : P/V actions ; with '#' comments
PVProgram parse_pv(std::string_view text);

// Geometric model: the grid of process positions minus every cube on which
// some resource is over capacity, closed upward (a cube goes when any of its
// faces went). A process at integer position k holds r on the open span
// strictly between its k-th and (k+1)-th action; while performing step k+1 it
// holds whatever it held after its first k actions.
struct PVModel {
  PrecubicalSet complex;
  std::vector<int> lengths;
  std::map<std::vector<int>, CubeId> vertex_of;  // surviving vertices by coords
  std::vector<int> initial, final_pos;
};
struct FinalForbiddenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
PVModel build_model(const PVProgram& p);  // throws FinalForbiddenError

std::set<std::vector<int>> reachable(const PVModel& m);
std::set<std::vector<int>> coreachable(const PVModel& m);
// reachable vertices with no outgoing edge, other than the final position
std::set<std::vector<int>> find_deadlocks(const PVModel& m);
// reachable but not coreachable
std::set<std::vector<int>> unsafe_region(const PVModel& m);

struct AnalysisReport {
  PVModel model;
  std::set<std::vector<int>> deadlocks, unsafe, unreachable;
  bool final_reachable = false;
  nlohmann::json to_json() const;
  std::string to_text() const;
};
AnalysisReport analyze(const PVProgram& p);

enum class Theory { globular, branching, merging, cubical };
TheoryReport homology_of_program(const PVProgram& p, Theory th,
                                 const std::vector<int>& degrees,
                                 const GenerationLimits& lim = {},
                                 const NerveOptions& o = {});

}  // namespace dhat
