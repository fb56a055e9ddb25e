#include "raptor/matrix.hpp"

#include <fstream>
#include <sstream>

#include "raptor/errors.hpp"

namespace raptor {

Mat Mat::identity(const FieldSpec& field, size_t n) {
  Mat m(field, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat Mat::mul(const Mat& other) const {
  if (cols_ != other.rows_) throw ConfigError("matrix product dimension mismatch");
  Mat out(field_, rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      FieldElement a = el(i, k);
      if (a.value == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j) {
        FieldElement prod = field_.mul(a, other.el(k, j));
        out.set(i, j, field_.add(out.el(i, j), prod).value);
      }
    }
  return out;
}

Mat Mat::transpose() const {
  Mat out(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

namespace {

// In-place reduced row echelon; returns pivot columns.
std::vector<size_t> rref(Mat& m) {
  const FieldSpec& f = m.field();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (size_t j = 0; j < m.cols(); ++j) {
        uint16_t tmp = m.at(row, j);
        m.set(row, j, m.at(pivot, j));
        m.set(pivot, j, tmp);
      }
    FieldElement inv = f.inv(m.el(row, col));
    for (size_t j = col; j < m.cols(); ++j) m.set(row, j, f.mul(inv, m.el(row, j)).value);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      FieldElement factor = m.el(i, col);
      if (factor.value == 0) continue;
      for (size_t j = col; j < m.cols(); ++j) {
        FieldElement sub = f.mul(factor, m.el(row, j));
        m.set(i, j, f.sub(m.el(i, j), sub).value);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

size_t rank_of(const Mat& m) {
  Mat copy = m;
  return rref(copy).size();
}

Mat nullspace(const Mat& m) {
  Mat r = m;
  std::vector<size_t> pivots = rref(r);
  const FieldSpec& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Mat basis(f, free_cols.size(), m.cols());
  for (size_t bi = 0; bi < free_cols.size(); ++bi) {
    size_t fc = free_cols[bi];
    basis.set(bi, fc, 1);
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      // x_pivot = -R[pi][fc]
      basis.set(bi, pivots[pi], f.neg(r.el(pi, fc)).value);
    }
  }
  return basis;
}

SolveResult solve(const Mat& m, const std::vector<uint16_t>& rhs) {
  if (rhs.size() != m.rows()) throw ConfigError("solve rhs length mismatch");
  const FieldSpec& f = m.field();
  Mat aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, m.cols(), rhs[i]);
  }
  std::vector<size_t> pivots = rref(aug);
  SolveResult res;
  res.consistent = true;
  for (size_t c : pivots)
    if (c == m.cols()) res.consistent = false;  // pivot in the rhs column
  size_t rank = 0;
  for (size_t c : pivots)
    if (c < m.cols()) ++rank;
  res.rank = rank;
  res.unique = res.consistent && rank == m.cols();
  if (res.consistent) {
    res.solution.assign(m.cols(), 0);
    size_t row = 0;
    for (size_t c : pivots) {
      if (c < m.cols()) res.solution[c] = aug.at(row, m.cols());
      ++row;
    }
  }
  return res;
}

void save_matrix(std::ostream& out, const Mat& m) {
  out << m.field().q() << " " << m.rows() << " " << m.cols() << "\n";
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << m.at(i, j);
    }
    out << "\n";
  }
}

void save_matrix_file(const std::string& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open matrix file for writing: " + path);
  save_matrix(out, m);
}

namespace {

// Next token stream with '#' comments stripped.
std::vector<std::string> tokens_without_comments(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

FieldSpec field_of_order(uint32_t q) {
  for (uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    uint32_t m = 0, v = q;
    while (v % p == 0) {
      v /= p;
      ++m;
    }
    if (v != 1) throw ConfigError("matrix file q is not a prime power");
    return FieldSpec::make(p, m);
  }
  throw ConfigError("matrix file q is not a prime power");
}

}  // namespace

Mat load_matrix(std::istream& in) {
  std::vector<std::string> toks = tokens_without_comments(in);
  if (toks.size() < 3) throw ConfigError("matrix file truncated header");
  uint32_t q = static_cast<uint32_t>(std::stoul(toks[0]));
  size_t rows = std::stoul(toks[1]);
  size_t cols = std::stoul(toks[2]);
  if (toks.size() != 3 + rows * cols) throw ConfigError("matrix file entry count mismatch");
  FieldSpec field = field_of_order(q);
  Mat m(field, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      unsigned long v = std::stoul(toks[3 + i * cols + j]);
      if (v >= q) throw ConfigError("matrix entry out of field range");
      m.set(i, j, static_cast<uint16_t>(v));
    }
  return m;
}

Mat load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  return load_matrix(in);
}

}  // namespace raptor
