#include "dhat/homology.hpp"

#include <algorithm>
#include <sstream>

namespace dhat {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const int R = m.rows(), C = m.cols();
  SmithDecomposition s{IntMatrix::identity(R), m, IntMatrix::identity(C)};
  IntMatrix& d = s.d;
  IntMatrix& u = s.u;
  IntMatrix& v = s.v;

  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < C; ++j) std::swap(d.at(a, j), d.at(b, j));
    for (int j = 0; j < R; ++j) std::swap(u.at(a, j), u.at(b, j));
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < R; ++i) std::swap(d.at(i, a), d.at(i, b));
    for (int i = 0; i < C; ++i) std::swap(v.at(i, a), v.at(i, b));
  };
  auto addmul_row = [&](int dst, int src, const Int& q) {  // row dst += q * row src
    if (q == 0) return;
    for (int j = 0; j < C; ++j) d.at(dst, j) += q * d.at(src, j);
    for (int j = 0; j < R; ++j) u.at(dst, j) += q * u.at(src, j);
  };
  auto addmul_col = [&](int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < R; ++i) d.at(i, dst) += q * d.at(i, src);
    for (int i = 0; i < C; ++i) v.at(i, dst) += q * v.at(i, src);
  };
  auto negate_row = [&](int r) {
    for (int j = 0; j < C; ++j) d.at(r, j) = -d.at(r, j);
    for (int j = 0; j < R; ++j) u.at(r, j) = -u.at(r, j);
  };
  // unimodular 2x2 row transform (x y; -b/g a/g) on rows (i,j)
  auto rows_2x2 = [&](int i, int j, const Int& x, const Int& y, const Int& z,
                      const Int& w) {
    for (int c = 0; c < C; ++c) {
      Int a = d.at(i, c), b = d.at(j, c);
      d.at(i, c) = x * a + y * b;
      d.at(j, c) = z * a + w * b;
    }
    for (int c = 0; c < R; ++c) {
      Int a = u.at(i, c), b = u.at(j, c);
      u.at(i, c) = x * a + y * b;
      u.at(j, c) = z * a + w * b;
    }
  };

  int n = std::min(R, C);
  int t = 0;
  for (; t < n; ++t) {
    // smallest-magnitude nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (d.at(i, j) != 0 &&
            (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < R; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        addmul_row(i, t, -q);
        if (d.at(i, t) != 0) {
          swap_rows(t, i);  // remainder is strictly smaller
          clean = false;
        }
      }
      for (int j = t + 1; j < C; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        addmul_col(j, t, -q);
        if (d.at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }
    if (d.at(t, t) < 0) negate_row(t);
  }
  const int rank = t;
  // enforce the divisibility chain with the gcd/lcm 2x2 trick
  bool fixed = false;
  while (!fixed) {
    fixed = true;
    for (int i = 0; i + 1 < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        Int a = d.at(i, i), b = d.at(j, j);
        if (b % a == 0) continue;
        fixed = false;
        addmul_col(i, j, 1);  // put b below a in column i
        Int g, x, y;
        // extended gcd
        {
          Int r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
          while (r1 != 0) {
            Int q = r0 / r1;
            Int r2 = r0 - q * r1, x2 = x0 - q * x1, y2 = y0 - q * y1;
            r0 = r1;
            r1 = r2;
            x0 = x1;
            x1 = x2;
            y0 = y1;
            y1 = y2;
          }
          g = r0;
          x = x0;
          y = y0;
        }
        rows_2x2(i, j, x, y, -b / g, a / g);
        addmul_col(j, i, -(y * b) / g);
        if (d.at(i, i) < 0) negate_row(i);
        if (d.at(j, j) < 0) negate_row(j);
      }
  }
  return s;
}

long matrix_rank(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  long r = 0;
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (s.d.at(i, i) != 0) ++r;
  return r;
}

void ChainComplex::verify_dd_zero() const {
  for (size_t k = 2; k < boundary.size(); ++k) {
    IntMatrix z = boundary[k - 1] * boundary[k];
    for (int i = 0; i < z.rows(); ++i)
      for (int j = 0; j < z.cols(); ++j)
        if (z.at(i, j) != 0)
          throw WellDefinednessError("d o d != 0 at degree " +
                                     std::to_string(min_degree + static_cast<int>(k)));
  }
}

std::string ChainComplex::to_sparse_triplets() const {
  std::ostringstream os;
  for (size_t k = 1; k < boundary.size(); ++k) {
    const IntMatrix& b = boundary[k];
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c)
        if (b.at(r, c) != 0)
          os << (min_degree + static_cast<int>(k)) << " " << r << " " << c << " "
             << b.at(r, c) << "\n";
  }
  return os.str();
}

nlohmann::json HomologyGroup::to_json(int degree) const {
  nlohmann::json t = nlohmann::json::array();
  for (const Int& f : torsion) t.push_back(f.str());
  nlohmann::json j{{"degree", degree}, {"betti", betti}, {"torsion", t}};
  if (truncated) j["truncated"] = true;
  return j;
}

ChainComplex chain_from_augmented(const AugmentedSimplicialSet& n, bool normalized) {
  ChainComplex c;
  c.min_degree = -1;
  c.basis.push_back(n.points);
  c.boundary.emplace_back();
  c.basis.push_back(n.names0);
  IntMatrix d0(static_cast<int>(n.points.size()), static_cast<int>(n.names0.size()));
  for (size_t x = 0; x < n.names0.size(); ++x) d0.at(n.aug[x], static_cast<int>(x)) += 1;
  c.boundary.push_back(std::move(d0));
  if (n.top_level >= 1) {
    std::vector<int> keep;
    for (size_t z = 0; z < n.names1.size(); ++z)
      if (!normalized || !n.degenerate1[z]) keep.push_back(static_cast<int>(z));
    std::vector<std::string> b1;
    IntMatrix d1(static_cast<int>(n.names0.size()), static_cast<int>(keep.size()));
    for (size_t col = 0; col < keep.size(); ++col) {
      int z = keep[col];
      b1.push_back(n.names1[z]);
      d1.at(n.face1[z][0], static_cast<int>(col)) += 1;  // d = d_0 - d_1
      d1.at(n.face1[z][1], static_cast<int>(col)) -= 1;
    }
    c.basis.push_back(std::move(b1));
    c.boundary.push_back(std::move(d1));
  }
  c.verify_dd_zero();
  return c;
}

ChainComplex chain_from_precubical(const PrecubicalSet& k) {
  if (!k.validate().empty())
    throw std::invalid_argument("chain_from_precubical: invalid precubical set");
  ChainComplex c;
  c.min_degree = 0;
  for (int d = 0; d <= k.top_dim(); ++d) {
    std::vector<std::string> b;
    for (int i = 0; i < k.size(d); ++i) b.push_back(k.name({d, i}));
    c.basis.push_back(std::move(b));
    if (d == 0) {
      c.boundary.emplace_back();
      continue;
    }
    IntMatrix m(k.size(d - 1), k.size(d));
    for (int idx = 0; idx < k.size(d); ++idx)
      for (int i = 1; i <= d; ++i) {
        int sg = (i % 2 == 1) ? -1 : 1;  // (-1)^i
        m.at(k.face({d, idx}, i, Sign::minus).index, idx) += sg;
        m.at(k.face({d, idx}, i, Sign::plus).index, idx) -= sg;
      }
    c.boundary.push_back(std::move(m));
  }
  c.verify_dd_zero();
  return c;
}

HomologyGroup homology(const ChainComplex& c, int degree) {
  int k = degree - c.min_degree;
  HomologyGroup g;
  if (k < 0 || k >= c.degrees()) return g;
  long nk = static_cast<long>(c.basis[k].size());
  long rk = (k >= 1) ? matrix_rank(c.boundary[k]) : 0;
  if (k + 1 < c.degrees()) {
    auto s = smith_normal_form(c.boundary[k + 1]);
    long r = 0;
    int n = std::min(c.boundary[k + 1].rows(), c.boundary[k + 1].cols());
    for (int i = 0; i < n; ++i)
      if (s.d.at(i, i) != 0) {
        ++r;
        if (s.d.at(i, i) > 1) g.torsion.push_back(s.d.at(i, i));
      }
    g.betti = nk - rk - r;
  } else {
    g.betti = nk - rk;
    g.truncated = true;  // no incoming boundary known past the truncation
  }
  return g;
}

namespace {

TheoryReport theory_report(const AugmentedSimplicialSet& nerve, bool table_truncated,
                           const std::vector<int>& degrees) {
  ChainComplex c = chain_from_augmented(nerve);
  TheoryReport rep;
  rep.truncated = table_truncated;
  for (int n : degrees) {
    if (n < 0) throw std::invalid_argument("homology degree must be >= 0");
    if (n >= 2)
      throw TruncationError("degree " + std::to_string(n) +
                            " needs nerve levels beyond the level-1 truncation");
    HomologyGroup g = homology(c, n - 1);  // H_{n+1}(table) = H_n(nerve)
    if (n == 1) g.truncated = false;       // d_1 is fully known at level 1
    g.truncated = g.truncated || table_truncated;
    rep.groups[n] = g;
  }
  return rep;
}

}  // namespace

TheoryReport globular_homology(const CellTable& t, const std::vector<int>& degrees,
                               const NerveOptions& o) {
  NerveOptions oo = o;
  oo.level = 1;
  return theory_report(globular_nerve(t, oo), t.truncated(), degrees);
}

TheoryReport branching_homology(const CellTable& t, const std::vector<int>& degrees,
                                const NerveOptions& o) {
  NerveOptions oo = o;
  oo.level = 1;
  return theory_report(branching_nerve(t, oo), t.truncated(), degrees);
}

TheoryReport merging_homology(const CellTable& t, const std::vector<int>& degrees,
                              const NerveOptions& o) {
  NerveOptions oo = o;
  oo.level = 1;
  return theory_report(merging_nerve(t, oo), t.truncated(), degrees);
}

}  // namespace dhat
