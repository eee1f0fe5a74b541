#include "gblocks/matrix.hpp"

#include <stdexcept>

namespace gb {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1L);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  Matrix m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Cyclotomic& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) m(i, j).add_product(x, b(k, j));
    }
  return m;
}

Matrix Matrix::operator*(const Cyclotomic& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

Matrix Matrix::inverse() const {
  if (r_ != c_) throw std::domain_error("inverse of non-square matrix");
  const std::size_t n = r_;
  Matrix a = *this, inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Cyclotomic p = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Cyclotomic f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
        if (!inv(col, j).is_zero()) inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool Matrix::is_identity() const {
  if (r_ != c_) return false;
  static const Cyclotomic one(1);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (i == j ? (*this)(i, j) != one : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
  }
  return s + "]";
}

nlohmann::json Matrix::to_json() const {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r_; ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < c_; ++j) row.push_back((*this)(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gb
