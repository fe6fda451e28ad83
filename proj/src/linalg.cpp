#include "pretzelkh/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace pretzelkh {

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix::SparseIntMatrix(int rows, int cols, std::vector<MatrixEntry> triples)
    : rows_(rows), cols_(cols), dirty_(true), entries_(std::move(triples)) {
  finalize();
}

void SparseIntMatrix::add(int row, int col, const Integer& value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    throw std::out_of_range("matrix entry (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (value.is_zero()) return;
  entries_.push_back({row, col, value});
  dirty_ = true;
}

void SparseIntMatrix::finalize() {
  if (!dirty_) return;
  for (const auto& e : entries_) {
    if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_) {
      throw std::out_of_range("matrix entry outside bounds");
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<MatrixEntry> merged;
  merged.reserve(entries_.size());
  for (auto& e : entries_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      if (!merged.empty() && merged.back().value.is_zero()) merged.pop_back();
      merged.push_back(std::move(e));
    }
  }
  if (!merged.empty() && merged.back().value.is_zero()) merged.pop_back();
  entries_ = std::move(merged);
  dirty_ = false;
}

void SparseIntMatrix::require_finalized() const {
  if (dirty_) throw std::logic_error("SparseIntMatrix read before finalize()");
}

std::size_t SparseIntMatrix::nonzeros() const {
  require_finalized();
  return entries_.size();
}

const std::vector<MatrixEntry>& SparseIntMatrix::entries() const {
  require_finalized();
  return entries_;
}

Integer SparseIntMatrix::at(int row, int col) const {
  require_finalized();
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(row, col),
                             [](const MatrixEntry& e, const std::pair<int, int>& key) {
                               return e.row != key.first ? e.row < key.first : e.col < key.second;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return Integer(0);
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  require_finalized();
  rhs.require_finalized();
  // Row start offsets of rhs.
  std::vector<std::size_t> start(rhs.rows_ + 1, 0);
  for (const auto& e : rhs.entries_) ++start[e.row + 1];
  for (int i = 0; i < rhs.rows_; ++i) start[i + 1] += start[i];

  SparseIntMatrix out(rows_, rhs.cols_);
  std::unordered_map<int, Integer> acc;
  std::size_t i = 0;
  while (i < entries_.size()) {
    const int row = entries_[i].row;
    acc.clear();
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const auto& a = entries_[i];
      for (std::size_t k = start[a.col]; k < start[a.col + 1]; ++k) {
        acc[rhs.entries_[k].col] += a.value * rhs.entries_[k].value;
      }
    }
    for (auto& [col, v] : acc) {
      if (!v.is_zero()) out.entries_.push_back({row, col, std::move(v)});
    }
  }
  out.dirty_ = true;
  out.finalize();
  return out;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries() == b.entries();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using SparseRow = std::vector<std::pair<int, Integer>>;  // sorted by column

// target -= factor * pivot, both rows sorted.
void axpy(SparseRow& target, const Integer& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || pivot[j].first < target[i].first) {
      out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
      ++j;
    } else {
      Integer v = target[i].second - factor * pivot[j].second;
      if (!v.is_zero()) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

const Integer* find_in_row(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const std::pair<int, Integer>& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Classic dense reduction; only ever sees the non-unit residue.
std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> factors;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < m && t < n) {
    // Smallest nonzero magnitude in the trailing block.
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j].is_zero()) continue;
        if (pr == m || Integer::abs(a[i][j]) < Integer::abs(a[pr][pc])) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t].is_zero()) continue;
        Integer qt = Integer::nearest_quotient(a[i][t], a[t][t]);
        for (std::size_t j = t; j < n; ++j) a[i][j] -= qt * a[t][j];
        if (!a[i][t].is_zero()) {
          clean = false;
          if (Integer::abs(a[i][t]) < Integer::abs(a[t][t])) std::swap(a[i], a[t]);
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j].is_zero()) continue;
        Integer qt = Integer::nearest_quotient(a[t][j], a[t][t]);
        for (std::size_t i = t; i < m; ++i) a[i][j] -= qt * a[i][t];
        if (!a[t][j].is_zero()) {
          clean = false;
          if (Integer::abs(a[t][j]) < Integer::abs(a[t][t])) {
            for (auto& row : a) std::swap(row[t], row[j]);
          }
        }
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row t and go again.
      for (std::size_t i = t + 1; i < m && clean; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j].is_zero()) continue;
          Integer qt = Integer::nearest_quotient(a[i][j], a[t][t]);
          if (!(a[i][j] - qt * a[t][t]).is_zero()) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
            clean = false;
            break;
          }
        }
      }
    }
    factors.push_back(Integer::abs(a[t][t]));
    ++t;
  }
  return factors;
}

}  // namespace

SmithForm smith_normal_form(const SparseIntMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  std::vector<std::vector<int>> col_rows(m.cols());
  for (const auto& e : m.entries()) {
    rows[e.row].emplace_back(e.col, e.value);
    col_rows[e.col].push_back(e.row);
  }
  std::vector<char> row_dead(m.rows(), 0);
  std::vector<char> col_dead(m.cols(), 0);
  SmithForm out;
  int units = 0;

  // Unit-pivot sweeps. A pivot row is chosen among rows carrying a unit in
  // the column, shortest first, which keeps fill-in low on cube matrices.
  bool progress = true;
  while (progress) {
    progress = false;
    for (int c = 0; c < m.cols(); ++c) {
      if (col_dead[c]) continue;
      auto& list = col_rows[c];
      // Drop stale references (rows that no longer carry column c).
      std::vector<int> live;
      for (int r : list) {
        if (!row_dead[r] && find_in_row(rows[r], c) &&
            (live.empty() || live.back() != r)) {
          live.push_back(r);
        }
      }
      std::sort(live.begin(), live.end());
      live.erase(std::unique(live.begin(), live.end()), live.end());
      list = live;
      if (list.empty()) {
        col_dead[c] = 1;
        continue;
      }
      int pivot = -1;
      for (int r : list) {
        if (find_in_row(rows[r], c)->is_unit() &&
            (pivot < 0 || rows[r].size() < rows[pivot].size())) {
          pivot = r;
        }
      }
      if (pivot < 0) continue;
      const Integer u = *find_in_row(rows[pivot], c);  // u*u == 1
      for (int r : list) {
        if (r == pivot) continue;
        const Integer factor = *find_in_row(rows[r], c) * u;
        axpy(rows[r], factor, rows[pivot]);
        for (const auto& [cc, v] : rows[pivot]) {
          if (cc != c && !col_dead[cc]) col_rows[cc].push_back(r);
        }
      }
      row_dead[pivot] = 1;
      col_dead[c] = 1;
      rows[pivot].clear();
      list.clear();
      ++units;
      progress = true;
    }
  }

  // Residue: live rows restricted to live columns.
  std::vector<int> res_rows;
  std::vector<int> res_cols;
  std::vector<int> col_pos(m.cols(), -1);
  for (int r = 0; r < m.rows(); ++r) {
    if (row_dead[r]) continue;
    bool any = false;
    for (const auto& [c, v] : rows[r]) {
      if (col_dead[c]) continue;
      any = true;
      if (col_pos[c] < 0) {
        col_pos[c] = static_cast<int>(res_cols.size());
        res_cols.push_back(c);
      }
    }
    if (any) res_rows.push_back(r);
  }
  out.factors.assign(units, Integer(1));
  if (!res_rows.empty()) {
    std::vector<std::vector<Integer>> dense(res_rows.size(),
                                            std::vector<Integer>(res_cols.size(), Integer(0)));
    for (std::size_t i = 0; i < res_rows.size(); ++i) {
      for (const auto& [c, v] : rows[res_rows[i]]) {
        if (!col_dead[c]) dense[i][col_pos[c]] = v;
      }
    }
    auto rest = dense_smith(std::move(dense));
    std::sort(rest.begin(), rest.end());
    for (auto& f : rest) out.factors.push_back(std::move(f));
  }
  out.rank = static_cast<int>(out.factors.size());
  return out;
}

// ---------------------------------------------------------------------------
// Complexes and homology

std::size_t GradedComplex::generators() const {
  std::size_t n = 0;
  for (const auto& g : qgrades) n += g.size();
  return n;
}

void check_complex(const GradedComplex& c) {
  const int groups = c.groups();
  const int maps = static_cast<int>(c.differentials.size());
  if (groups > 0 && maps != groups - 1) {
    throw IntegrityError("complex has " + std::to_string(groups) + " groups but " +
                         std::to_string(maps) + " differentials");
  }
  for (int i = 0; i < maps; ++i) {
    const auto& d = c.differentials[i];
    const int h = c.h_min + i;
    if (d.cols() != static_cast<int>(c.qgrades[i].size()) ||
        d.rows() != static_cast<int>(c.qgrades[i + 1].size())) {
      throw IntegrityError("differential out of degree " + std::to_string(h) + " has shape " +
                           std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
    }
    for (const auto& e : d.entries()) {
      if (c.qgrades[i + 1][e.row] != c.qgrades[i][e.col]) {
        throw IntegrityError("differential out of degree " + std::to_string(h) +
                             " changes q-grading at entry (" + std::to_string(e.row) + "," +
                             std::to_string(e.col) + ")");
      }
    }
  }
  for (int i = 0; i + 1 < maps; ++i) {
    if (!(c.differentials[i + 1] * c.differentials[i]).is_zero()) {
      throw IntegrityError("d^2 != 0 from degree " + std::to_string(c.h_min + i));
    }
  }
}

namespace {

// Splits the generators of one group by q-grading: local index per q.
struct QSplit {
  std::map<int, int> size;
  std::vector<int> local;
};

QSplit split_by_q(const std::vector<int>& qs) {
  QSplit s;
  s.local.resize(qs.size());
  for (std::size_t j = 0; j < qs.size(); ++j) s.local[j] = s.size[qs[j]]++;
  return s;
}

}  // namespace

HomologyTable homology(const GradedComplex& c) {
  check_complex(c);
  const int groups = c.groups();
  std::vector<QSplit> splits;
  splits.reserve(groups);
  for (const auto& g : c.qgrades) splits.push_back(split_by_q(g));

  // rank[i][q] and factors[i][q] of the differential out of group i.
  std::vector<std::map<int, SmithForm>> forms(groups);
  for (int i = 0; i + 1 < groups; ++i) {
    std::map<int, std::vector<MatrixEntry>> blocks;
    for (const auto& e : c.differentials[i].entries()) {
      const int q = c.qgrades[i][e.col];
      blocks[q].push_back({splits[i + 1].local[e.row], splits[i].local[e.col], e.value});
    }
    for (auto& [q, triples] : blocks) {
      SparseIntMatrix block(splits[i + 1].size.at(q), splits[i].size.at(q), std::move(triples));
      forms[i][q] = smith_normal_form(block);
    }
  }

  HomologyTable table;
  for (int i = 0; i < groups; ++i) {
    for (const auto& [q, n] : splits[i].size) {
      HomologyCell cell;
      int out_rank = 0;
      if (auto it = forms[i].find(q); it != forms[i].end()) out_rank = it->second.rank;
      int in_rank = 0;
      if (i > 0) {
        if (auto it = forms[i - 1].find(q); it != forms[i - 1].end()) {
          in_rank = it->second.rank;
          for (const auto& f : it->second.factors) {
            if (!f.is_unit()) cell.torsion.push_back(f);
          }
        }
      }
      cell.free_rank = n - out_rank - in_rank;
      if (cell.free_rank > 0 || !cell.torsion.empty()) table[{c.h_min + i, q}] = cell;
    }
  }
  return table;
}

DeltaCollapse delta_collapse(const HomologyTable& table) {
  DeltaCollapse out;
  for (const auto& [hq, cell] : table) {
    const int two_delta = hq.second - 2 * hq.first;
    if (cell.free_rank > 0) out.ranks[two_delta] += cell.free_rank;
    if (!cell.torsion.empty()) {
      auto& t = out.torsion[two_delta];
      t.insert(t.end(), cell.torsion.begin(), cell.torsion.end());
    }
  }
  return out;
}

namespace {

void drop_zeros(std::map<int, long long>& m) {
  for (auto it = m.begin(); it != m.end();) {
    it = it->second == 0 ? m.erase(it) : std::next(it);
  }
}

}  // namespace

std::map<int, long long> euler_characteristic(const GradedComplex& c) {
  std::map<int, long long> chi;
  for (int i = 0; i < c.groups(); ++i) {
    const int sign = ((c.h_min + i) % 2 == 0) ? 1 : -1;
    for (int q : c.qgrades[i]) chi[q] += sign;
  }
  drop_zeros(chi);
  return chi;
}

std::map<int, long long> euler_characteristic(const HomologyTable& t) {
  std::map<int, long long> chi;
  for (const auto& [hq, cell] : t) {
    chi[hq.second] += (hq.first % 2 == 0 ? 1 : -1) * static_cast<long long>(cell.free_rank);
  }
  drop_zeros(chi);
  return chi;
}

int total_rank(const HomologyTable& t) {
  int n = 0;
  for (const auto& [hq, cell] : t) n += cell.free_rank;
  return n;
}

bool torsion_free(const HomologyTable& t) {
  return std::all_of(t.begin(), t.end(), [](const auto& kv) { return kv.second.torsion.empty(); });
}

std::string format_table(const HomologyTable& t) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [hq, cell] : t) {
    if (!first) os << ' ';
    first = false;
    os << "(h=" << hq.first << ",q=" << hq.second << "):" << cell.free_rank;
    for (const auto& f : cell.torsion) os << "+Z/" << f;
  }
  return os.str();
}

}  // namespace pretzelkh
