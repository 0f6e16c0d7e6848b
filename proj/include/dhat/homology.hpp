#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "dhat/nerves.hpp"
#include "dhat/precubical.hpp"

namespace dhat {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return a_.at(static_cast<size_t>(r) * cols_ + c); }
  const Int& at(int r, int c) const { return a_.at(static_cast<size_t>(r) * cols_ + c); }
  bool operator==(const IntMatrix&) const = default;
  static IntMatrix identity(int n);
  IntMatrix operator*(const IntMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithDecomposition {
  IntMatrix u, d, v;
};
SmithDecomposition smith_normal_form(const IntMatrix& m);

long matrix_rank(const IntMatrix& m);

// Chain complex of free abelian groups. basis[k] labels degree min_degree + k;
// boundary[k] maps degree min_degree + k to min_degree + k - 1 (boundary[0]
// is the zero map out of the bottom degree and stays empty).
struct ChainComplex {
  int min_degree = 0;
  std::vector<std::vector<std::string>> basis;
  std::vector<IntMatrix> boundary;

  int degrees() const { return static_cast<int>(basis.size()); }
  void verify_dd_zero() const;  // throws WellDefinednessError
  std::string to_sparse_triplets() const;
};

struct HomologyGroup {
  long betti = 0;
  std::vector<Int> torsion;  // invariant factors > 1, ascending
  bool truncated = false;
  nlohmann::json to_json(int degree) const;
};

// Degrees -1..top_level; d_0 is the augmentation, d_1 = d0 - d1 on level 1.
// With normalized=true, degenerate level-1 simplices are dropped.
ChainComplex chain_from_augmented(const AugmentedSimplicialSet& n,
                                  bool normalized = false);

// Cubical chains: d = sum_i (-1)^i (d_i^- - d_i^+). Degrees 0..top_dim.
ChainComplex chain_from_precubical(const PrecubicalSet& k);

HomologyGroup homology(const ChainComplex& c, int degree);

// Directed homology theories of a cell table, reported with the paper-side
// degree shift H_{n+1}(table) = H_n(nerve).
struct TheoryReport {
  std::map<int, HomologyGroup> groups;
  bool truncated = false;
};
TheoryReport globular_homology(const CellTable& t, const std::vector<int>& degrees,
                               const NerveOptions& o = {});
TheoryReport branching_homology(const CellTable& t, const std::vector<int>& degrees,
                                const NerveOptions& o = {});
TheoryReport merging_homology(const CellTable& t, const std::vector<int>& degrees,
                              const NerveOptions& o = {});

}  // namespace dhat
