#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "raptor/galois.hpp"

namespace raptor {

// Dense row-major matrix over GF(q). This is the construction/analysis
// representation; the Monte Carlo hot paths pack their own rows.
class Mat {
 public:
  Mat() = default;
  Mat(FieldSpec field, size_t rows, size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Mat identity(const FieldSpec& field, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  uint16_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint16_t v) { data_[r * cols_ + c] = v; }
  FieldElement el(size_t r, size_t c) const { return {at(r, c)}; }

  // this * other
  Mat mul(const Mat& other) const;
  Mat transpose() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           a.field_ == b.field_;
  }

 private:
  FieldSpec field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint16_t> data_;
};

// Gaussian elimination with partial pivoting by first nonzero entry.
size_t rank_of(const Mat& m);

// Basis of {x : m x^T = 0}, one basis vector per row; empty matrix (0 x cols)
// for a trivial kernel.
Mat nullspace(const Mat& m);

struct SolveResult {
  bool unique = false;      // system consistent with a unique solution
  bool consistent = false;  // at least one solution exists
  size_t rank = 0;
  std::vector<uint16_t> solution;  // valid when consistent
};

// Solves m x^T = rhs^T; rank-deficient systems report deficiency.
SolveResult solve(const Mat& m, const std::vector<uint16_t>& rhs);

// Text format: first line "q rows cols", then `rows` lines of `cols`
// space-separated canonical element values. '#' starts a comment.
void save_matrix(std::ostream& out, const Mat& m);
void save_matrix_file(const std::string& path, const Mat& m);
Mat load_matrix(std::istream& in);
Mat load_matrix_file(const std::string& path);

}  // namespace raptor
