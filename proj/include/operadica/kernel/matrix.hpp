#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "operadica/kernel/scalar.hpp"

namespace operadica {

using SparseRow = std::map<std::size_t, Scalar>;

struct RationalMatrix {
  std::size_t cols = 0;
  std::vector<SparseRow> rows;

  std::size_t row_count() const { return rows.size(); }

  Scalar at(std::size_t r, std::size_t c) const {
    auto it = rows.at(r).find(c);
    return it == rows[r].end() ? Scalar(0) : it->second;
  }

  std::string shape() const {
    return std::to_string(rows.size()) + "x" + std::to_string(cols);
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.cols == b.cols && a.rows == b.rows;
  }
};

namespace detail {

inline void strip_zeros(SparseRow& row) {
  for (auto it = row.begin(); it != row.end();) {
    if (is_zero(it->second))
      it = row.erase(it);
    else
      ++it;
  }
}

// row += factor * other
inline void axpy(SparseRow& row, const Scalar& factor, const SparseRow& other) {
  for (const auto& [c, v] : other) {
    auto [it, fresh] = row.try_emplace(c, 0);
    it->second += factor * v;
    if (is_zero(it->second)) row.erase(it);
  }
}

}  // namespace detail

inline RationalMatrix make_matrix(std::size_t cols, std::vector<SparseRow> rows) {
  for (auto& r : rows) {
    detail::strip_zeros(r);
    if (!r.empty() && r.rbegin()->first >= cols)
      throw std::invalid_argument("column index " + std::to_string(r.rbegin()->first) +
                                  " out of bounds for " + std::to_string(cols) + " columns");
  }
  return RationalMatrix{cols, std::move(rows)};
}

inline RationalMatrix from_dense(const std::vector<std::vector<Scalar>>& dense, std::size_t cols) {
  std::vector<SparseRow> rows;
  for (const auto& d : dense) {
    if (d.size() != cols)
      throw std::invalid_argument("dense row of length " + std::to_string(d.size()) +
                                  " in a matrix with " + std::to_string(cols) + " columns");
    SparseRow r;
    for (std::size_t c = 0; c < d.size(); ++c)
      if (!is_zero(d[c])) r[c] = d[c];
    rows.push_back(std::move(r));
  }
  return RationalMatrix{cols, std::move(rows)};
}

inline std::vector<std::vector<Scalar>> to_dense(const RationalMatrix& m) {
  std::vector<std::vector<Scalar>> out(m.rows.size(), std::vector<Scalar>(m.cols, Scalar(0)));
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (const auto& [c, v] : m.rows[r]) out[r][c] = v;
  return out;
}

inline RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m{n, std::vector<SparseRow>(n)};
  for (std::size_t i = 0; i < n; ++i) m.rows[i][i] = 1;
  return m;
}

// Canonical reduced row-echelon form: zero rows dropped, pivots equal to 1,
// rows sorted by pivot column, every pivot column otherwise zero.
inline RationalMatrix rref(const RationalMatrix& m) {
  std::map<std::size_t, SparseRow> pivots;
  for (SparseRow row : m.rows) {
    detail::strip_zeros(row);
    for (const auto& [pc, prow] : pivots) {
      auto it = row.find(pc);
      if (it == row.end()) continue;
      Scalar f = -it->second;
      detail::axpy(row, f, prow);
    }
    if (row.empty()) continue;
    std::size_t pc = row.begin()->first;
    Scalar inv = checked_div(Scalar(1), row.begin()->second);
    for (auto& [c, v] : row) v *= inv;
    for (auto& [qc, qrow] : pivots) {
      auto it = qrow.find(pc);
      if (it == qrow.end()) continue;
      Scalar f = -it->second;
      detail::axpy(qrow, f, row);
    }
    pivots.emplace(pc, std::move(row));
  }
  RationalMatrix out{m.cols, {}};
  for (auto& [pc, row] : pivots) out.rows.push_back(std::move(row));
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rows.size(); }

inline bool same_row_space(const RationalMatrix& a, const RationalMatrix& b) {
  return a.cols == b.cols && rref(a) == rref(b);
}

inline RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t{m.rows.size(), std::vector<SparseRow>(m.cols)};
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (const auto& [c, v] : m.rows[r]) t.rows[c][r] = v;
  return t;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows.size())
    throw std::invalid_argument("cannot multiply " + a.shape() + " by " + b.shape());
  RationalMatrix out{b.cols, std::vector<SparseRow>(a.rows.size())};
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (const auto& [k, v] : a.rows[r]) detail::axpy(out.rows[r], v, b.rows[k]);
  return out;
}

// Row basis (in rref) of { v : m v = 0 }.
inline RationalMatrix nullspace(const RationalMatrix& m) {
  RationalMatrix e = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (const auto& row : e.rows) is_pivot[row.begin()->first] = true;
  RationalMatrix basis{m.cols, {}};
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    v[f] = 1;
    for (const auto& row : e.rows) {
      auto it = row.find(f);
      if (it != row.end()) v[row.begin()->first] = -it->second;
    }
    basis.rows.push_back(std::move(v));
  }
  return rref(basis);
}

// Row basis of { v : <r, v>_pairing = r * pairing * v^T = 0 for every row r }.
inline RationalMatrix mat_annihilator(const RationalMatrix& rows, const RationalMatrix& pairing) {
  if (pairing.rows.size() != pairing.cols || pairing.cols != rows.cols)
    throw std::invalid_argument("annihilator: rows of shape " + rows.shape() +
                                " are incompatible with pairing of shape " + pairing.shape());
  return nullspace(multiply(rows, pairing));
}

}  // namespace operadica
