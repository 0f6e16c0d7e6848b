#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace dhat {

enum class Sign : std::uint8_t { minus = 0, plus = 1 };

inline char sign_char(Sign s) { return s == Sign::minus ? '-' : '+'; }
inline Sign opposite(Sign s) { return s == Sign::minus ? Sign::plus : Sign::minus; }

struct CubeId {
  int dim = -1;
  int index = -1;
  auto operator<=>(const CubeId&) const = default;
  bool valid() const { return dim >= 0 && index >= 0; }
};

struct FaceViolation {
  enum class Kind { dangling, axiom } kind = Kind::dangling;
  CubeId cube;
  int i = 0;          // face index (1-based)
  int j = 0;          // second face index for axiom violations, 0 otherwise
  Sign alpha = Sign::minus;
  Sign beta = Sign::minus;
  std::string describe() const;
};

// A finite precubical set: graded families of named cubes with face maps
// d_i^alpha (1 <= i <= n) satisfying d_i^a d_j^b = d_{j-1}^b d_i^a for i < j.
// Construct by add_cube/set_face, then treat as immutable.
class PrecubicalSet {
 public:
  int add_cube(int dim, std::string name);
  void set_face(CubeId cube, int i, Sign alpha, CubeId target);

  int top_dim() const { return static_cast<int>(names_.size()) - 1; }
  int size(int dim) const;
  int total_size() const;
  const std::string& name(CubeId c) const;
  CubeId face(CubeId c, int i, Sign alpha) const;  // unset faces come back invalid()
  std::optional<CubeId> find(int dim, std::string_view name) const;

  // Every cube/face problem, ordered by (dim, index, i, j, alpha, beta).
  std::vector<FaceViolation> validate() const;

  nlohmann::json to_json() const;
  static PrecubicalSet from_json(const nlohmann::json& j);

 private:
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<CubeId>>> faces_;  // [dim][idx][2*(i-1)+sign]
  std::vector<std::unordered_map<std::string, int>> index_;
};

// The standard n-cube: cubes are words over {-,0,+} of length n, faces replace
// the i-th zero by a sign. The 0-cube is the single empty-word vertex.
PrecubicalSet standard_cube(int n);

// Product of intervals [0,lengths[a]] with unit cubes, minus holes: each hole
// names a top cube by the 0-indexed coordinates of its lower corner, and the
// result keeps exactly the iterated faces of the surviving top cubes.
PrecubicalSet grid(const std::vector<int>& lengths,
                   const std::set<std::vector<int>>& holes = {});

// Replace a free edge (one bounding no square) by two edges through a fresh
// midpoint vertex. Throws std::invalid_argument otherwise.
PrecubicalSet subdivide_edge(const PrecubicalSet& k, CubeId edge);

// Edges eligible for subdivision.
std::vector<CubeId> free_edges(const PrecubicalSet& k);

// Grid cube names, shared with pvlang: fixed coordinate k -> "k",
// interval (c,c+1) -> "c-c+1", joined as "(p1,p2,...)".
std::string grid_cube_name(const std::vector<int>& comps,
                           const std::vector<bool>& is_interval);

}  // namespace dhat
