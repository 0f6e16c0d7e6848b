#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhat/freeomega.hpp"

namespace dhat {

// Augmented simplicial set truncated at level N <= 1. Level -1 elements are
// "points"; levels 0 and 1 carry a payload back-reference into the cell table
// that produced them (or -1 for synthetic entries).
struct AugmentedSimplicialSet {
  int top_level = 1;  // 0 or 1
  std::vector<std::string> points;            // X_{-1}
  std::vector<std::string> names0, names1;    // X_0, X_1
  std::vector<int> aug;                       // X_0 -> points
  std::vector<std::array<int, 2>> face1;      // X_1 -> X_0: {d_0, d_1}
  std::vector<int> degen0;                    // X_0 -> X_1 (epsilon_0), if top_level==1
  std::vector<int> payload0, payload1;        // cell indices
  std::vector<char> degenerate1;              // marks image of epsilon_0

  // simplicial/augmentation identity violations, humanly described
  std::vector<std::string> check() const;
  nlohmann::json to_json() const;
};

struct NerveOptions {
  int level = 1;  // truncation level N
  enum class Aug { full, realized } aug = Aug::full;
};

// Semi-globular congruence classes on cells of dimension >= 1.
struct QuotientTable {
  Sign side = Sign::minus;
  std::vector<int> class_of;        // per cell; -1 for 0-cells
  std::vector<int> representative;  // per class: cell with least support key
  std::vector<std::array<int, 2>> witnesses;  // generating pairs (x, x *_0 y)
  int class_count = 0;
};

QuotientTable semi_quotient(const CellTable& t, Sign side);

// Globular nerve: points are (s_0, t_0) pairs over the 0-cells (all of
// C_0 x C_0, or only realized pairs), level 0 the 1-cells, level 1 the cells
// of dimension 1 (degenerate) and 2.
AugmentedSimplicialSet globular_nerve(const CellTable& t, const NerveOptions& o = {});

// Semi-globular nerves: simplices are congruence classes, points are the
// 0-cells (all, or only those realized by the augmentation).
AugmentedSimplicialSet semi_nerve(const CellTable& t, Sign side,
                                  const NerveOptions& o = {});
inline AugmentedSimplicialSet branching_nerve(const CellTable& t,
                                              const NerveOptions& o = {}) {
  return semi_nerve(t, Sign::minus, o);
}
inline AugmentedSimplicialSet merging_nerve(const CellTable& t,
                                            const NerveOptions& o = {}) {
  return semi_nerve(t, Sign::plus, o);
}

// Class maps from the globular nerve onto the semi-globular ones, level-wise.
struct HMaps {
  std::vector<int> minus0, minus1;  // globular simplex -> branching simplex
  std::vector<int> plus0, plus1;
};
HMaps h_maps(const CellTable& t, const NerveOptions& o = {});

// Partition of a globular nerve by the (S,T) bigrading. Each component keeps
// one point; parts re-assemble the input exactly.
struct GradedComponent {
  std::string point;
  std::vector<int> simplices0, simplices1;  // indices into the input nerve
};
std::vector<GradedComponent> grade(const AugmentedSimplicialSet& n);

// Pointwise *_0 composition of nerve simplices living in the same table.
// Returns the payload cell index of the composite at the same level; a
// composite collapsing to dimension 0 reports a constant simplex via is_point.
struct ComposedSimplex {
  bool is_point = false;
  int payload = -1;  // cell index (or point cell for constants)
};
ComposedSimplex simplex_compose(CellTable& t, int level, int cell_a, int cell_b);

}  // namespace dhat
