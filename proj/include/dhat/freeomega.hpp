#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dhat/precubical.hpp"

namespace dhat {

struct NonComposableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WellDefinednessError : std::logic_error {
  using std::logic_error::logic_error;
};
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Atom source/target for a simplex face given by its vertex set (decreasing
// 1-cells: the edge {a,b} with a<b runs b -> a). Source drops odd 1-based
// positions, target drops even ones. Throws on dimension 0.
std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>
simplex_atom_source_target(const std::vector<int>& verts);

// Atom source/target for a cube face given as a word over {-,0,+}: the source
// replaces the i-th zero (1-based) by '-' for odd i and '+' for even i; the
// target uses the opposite signs. Throws on dimension 0.
std::pair<std::vector<std::string>, std::vector<std::string>>
cube_atom_source_target(const std::string& word);

// A face universe closed under iterated faces, with the one-step atom
// source/target rule. Cells of the free omega-category live over this.
class GeneratorComplex {
 public:
  struct Face {
    std::string name;
    int dim = 0;
    std::vector<int> closure;  // sorted ids, includes the face itself
    std::vector<int> source;   // codim-1 atom source faces
    std::vector<int> target;
  };

  int count() const { return static_cast<int>(faces_.size()); }
  const Face& face(int id) const { return faces_.at(id); }
  int find(std::string_view name) const;

  static GeneratorComplex simplex(int n);
  static GeneratorComplex cube(int n);

  // raw construction (used by realize); faces must be added children-first
  int add_face(std::string name, int dim, std::vector<int> closure,
               std::vector<int> source, std::vector<int> target);

 private:
  std::vector<Face> faces_;
  std::unordered_map<std::string, int> by_name_;
};

struct GenerationLimits {
  int max_dim = 16;
  long max_cells = 20000;
  bool allow_truncation = false;
};

// Table of cells of the free omega-category on a GeneratorComplex. A cell is
// identified with its face support (closed under subfaces); boundaries are
// stored as support ids so a table truncated by limits stays meaningful.
class CellTable {
 public:
  struct Cell {
    int support = -1;  // support id
    int dim = 0;
    std::vector<std::array<int, 2>> bnd;  // bnd[q] = {s_q, t_q} support ids
  };
  struct Composition {
    int a = -1, b = -1, p = 0, result = -1;  // cell indices
  };

  explicit CellTable(const GeneratorComplex* g);
  CellTable() = default;

  int face_count() const { return static_cast<int>(face_names_.size()); }
  const std::string& face_name(int f) const { return face_names_.at(f); }
  int face_dim(int f) const { return face_dims_.at(f); }

  int intern_support(std::vector<int> faces);  // sorted, deduped
  const std::vector<int>& support(int sid) const { return supports_.at(sid); }
  int support_count() const { return static_cast<int>(supports_.size()); }
  int cell_by_support(int sid) const;  // -1 when absent
  int add_cell(Cell c);                // dedup; boundary tables must agree

  int cell_count() const { return static_cast<int>(cells_.size()); }
  const Cell& cell(int i) const { return cells_.at(i); }
  // support id of d_q^{sign}(cell), with d_q = identity above the dimension
  int boundary_support(int cell, int q, Sign sign) const;
  int boundary_cell(int cell, int q, Sign sign) const;  // -1 if not materialized

  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }
  const std::vector<Composition>& compositions() const { return compositions_; }
  void record_composition(Composition c) { compositions_.push_back(c); }

  std::string support_key(int sid) const;   // sorted face names, comma joined
  std::uint64_t support_hash(int sid) const;  // FNV-1a of the key, run-stable
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> face_names_;
  std::vector<int> face_dims_;
  std::vector<std::vector<int>> supports_;
  std::unordered_map<std::string, int> support_ids_;  // key -> sid
  std::vector<Cell> cells_;
  std::unordered_map<int, int> cell_of_support_;
  std::vector<Composition> compositions_;
  bool truncated_ = false;

  friend CellTable glob(const CellTable&);
  friend CellTable path_part(const CellTable&);
};

// Interns the cell with the given closed support, deriving boundaries by
// stripping: s of a support Y with top dimension e keeps the codim-1 faces of
// Y outside every top face's atom target, closed under subfaces (t dually).
int add_cell_by_support(CellTable& t, const GeneratorComplex& g,
                        const std::vector<int>& faces);

// Atoms R(x) for every face, with their iterated boundary cells.
CellTable atoms(const GeneratorComplex& g);

// All cells reachable from atoms under composition, up to the limits.
CellTable generate_cells(const GeneratorComplex& g, const GenerationLimits& lim);

// x *_p y for table cells; throws NonComposableError unless t_p(x) = s_p(y).
int compose(CellTable& t, int a, int b, int p);

// every cell of dimension >= 1 has 1-dimensional 1-source and 1-target
bool is_noncontracting_check(const CellTable& t);

// Suspension: two fresh 0-cells iota/sigma, every old cell shifted up one
// dimension with s_0 = iota, t_0 = sigma. Inverse of path_part on its image.
CellTable glob(const CellTable& t);

// Path part: drop 0-cells, shift dimensions down. Requires noncontracting.
CellTable path_part(const CellTable& t);

struct Realization {
  GeneratorComplex complex;  // faces = equivalence classes of (cube, word)
  CellTable table;
  std::vector<std::string> class_names;  // face id -> representative name
};

// Free omega-category on a precubical set: quotient of labelled cube faces by
// (d_i^a x, w) ~ (x, w with a inserted at slot i), then generate_cells.
// Throws CycleError on a cyclic 1-skeleton unless limits allow truncation.
Realization realize(const PrecubicalSet& k, const GenerationLimits& lim);

}  // namespace dhat
