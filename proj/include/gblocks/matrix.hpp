#pragma once

#include "gblocks/cyclotomic.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gb {

// Dense exact matrix over Q(ζ). Row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix scalar(const Cyclotomic& s) {
    Matrix m(1, 1);
    m(0, 0) = s;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix operator*(const Cyclotomic& s) const;
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix inverse() const;  // throws std::domain_error if singular or non-square
  bool is_identity() const;
  bool is_diagonal() const;
  bool is_square() const { return r_ == c_; }

  std::string str() const;
  nlohmann::json to_json() const;  // rows of scalar strings

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Cyclotomic> a_;
};

}  // namespace gb
