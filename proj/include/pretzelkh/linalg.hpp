#ifndef PRETZELKH_LINALG_HPP
#define PRETZELKH_LINALG_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pretzelkh/integer.hpp"

namespace pretzelkh {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixEntry {
  int row = 0;
  int col = 0;
  Integer value;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Sparse integer matrix in coordinate form. add() appends a triple;
// finalize() merges duplicates and drops zeros. Readers require a
// finalized matrix (the constructors and all library producers finalize).
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  SparseIntMatrix(int rows, int cols, std::vector<MatrixEntry> triples);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const;

  void add(int row, int col, const Integer& value);
  void finalize();
  bool finalized() const { return !dirty_; }

  // Binary search; zero when absent.
  Integer at(int row, int col) const;
  // Sorted by (row, col).
  const std::vector<MatrixEntry>& entries() const;

  SparseIntMatrix operator*(const SparseIntMatrix& rhs) const;
  bool is_zero() const { return entries().empty(); }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  void require_finalized() const;

  int rows_ = 0;
  int cols_ = 0;
  bool dirty_ = false;
  std::vector<MatrixEntry> entries_;
};

struct SmithForm {
  std::vector<Integer> factors;  // d1 | d2 | ..., all positive
  int rank = 0;
};

SmithForm smith_normal_form(const SparseIntMatrix& m);

// Free cochain complex over the integers. Group i sits in homological
// degree h_min + i; generator j of that group has quantum grading
// qgrades[i][j]. differentials[i] maps group i to group i+1 (rows index
// the target).
struct GradedComplex {
  int h_min = 0;
  std::vector<std::vector<int>> qgrades;
  std::vector<SparseIntMatrix> differentials;

  int groups() const { return static_cast<int>(qgrades.size()); }
  std::size_t generators() const;
};

// Throws IntegrityError naming the first failing degree. Also rejects
// entries that change the quantum grading and malformed shapes.
void check_complex(const GradedComplex& c);

struct HomologyCell {
  int free_rank = 0;
  std::vector<Integer> torsion;  // orders >= 2

  friend bool operator==(const HomologyCell&, const HomologyCell&) = default;
};

// Keyed by (h, q); empty cells are omitted.
using HomologyTable = std::map<std::pair<int, int>, HomologyCell>;

// Blockwise homology by quantum grading. Runs check_complex first.
HomologyTable homology(const GradedComplex& c);

// Keyed by 2*delta = q - 2h.
struct DeltaCollapse {
  std::map<int, long long> ranks;
  std::map<int, std::vector<Integer>> torsion;
};

DeltaCollapse delta_collapse(const HomologyTable& table);

// Graded Euler characteristic: q -> sum over h of (-1)^h rank.
std::map<int, long long> euler_characteristic(const GradedComplex& c);
std::map<int, long long> euler_characteristic(const HomologyTable& t);

int total_rank(const HomologyTable& t);
bool torsion_free(const HomologyTable& t);
std::string format_table(const HomologyTable& t);

}  // namespace pretzelkh

#endif  // PRETZELKH_LINALG_HPP
