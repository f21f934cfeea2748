#include "hodgehx/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hodgehx/errors.hpp"
#include "hodgehx/parallel.hpp"

namespace hodgehx {

CsrMatrix CsrMatrix::from_triplets(int n_rows, int n_cols, std::vector<Triplet> t) {
  for (const Triplet& e : t)
    if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
      throw DimensionMismatchError("triplet index out of range");
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.row_ptr_.assign(n_rows + 1, 0);
  m.col_idx_.reserve(t.size());
  m.values_.reserve(t.size());
  std::size_t i = 0;
  for (int r = 0; r < n_rows; ++r) {
    while (i < t.size() && t[i].row == r) {
      int c = t[i].col;
      double v = 0.0;
      while (i < t.size() && t[i].row == r && t[i].col == c) v += t[i++].value;
      if (v != 0.0) {
        m.col_idx_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

CsrMatrix CsrMatrix::identity(int n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

CsrMatrix CsrMatrix::diagonal_matrix(const std::vector<double>& d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    t.push_back({static_cast<int>(i), static_cast<int>(i), d[i]});
  return from_triplets(static_cast<int>(d.size()), static_cast<int>(d.size()), std::move(t));
}

void CsrMatrix::multiply_vector(const double* x, double* y) const {
  parallel_for(n_rows_, [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      double s = 0.0;
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
      y[r] = s;
    }
  });
}

std::vector<double> CsrMatrix::multiply_vector(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_cols_)
    throw DimensionMismatchError("matvec: size mismatch");
  std::vector<double> y(n_rows_);
  multiply_vector(x.data(), y.data());
  return y;
}

void CsrMatrix::multiply_transpose_vector(const double* x, double* y) const {
  std::fill(y, y + n_cols_, 0.0);
  for (int r = 0; r < n_rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) y[col_idx_[k]] += values_[k] * x[r];
}

std::vector<double> CsrMatrix::multiply_transpose_vector(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_rows_)
    throw DimensionMismatchError("transpose matvec: size mismatch");
  std::vector<double> y(n_cols_);
  multiply_transpose_vector(x.data(), y.data());
  return y;
}

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t;
  t.n_rows_ = n_cols_;
  t.n_cols_ = n_rows_;
  t.row_ptr_.assign(n_cols_ + 1, 0);
  for (int c : col_idx_) ++t.row_ptr_[c + 1];
  for (int r = 0; r < n_cols_; ++r) t.row_ptr_[r + 1] += t.row_ptr_[r];
  t.col_idx_.resize(col_idx_.size());
  t.values_.resize(values_.size());
  std::vector<int> next(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  for (int r = 0; r < n_rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      int pos = next[col_idx_[k]]++;
      t.col_idx_[pos] = r;
      t.values_[pos] = values_[k];
    }
  return t;
}

CsrMatrix CsrMatrix::multiply(const CsrMatrix& other) const {
  if (n_cols_ != other.n_rows_) throw DimensionMismatchError("spgemm: size mismatch");
  CsrMatrix m;
  m.n_rows_ = n_rows_;
  m.n_cols_ = other.n_cols_;
  m.row_ptr_.assign(n_rows_ + 1, 0);
  std::vector<double> acc(other.n_cols_, 0.0);
  std::vector<int> marker(other.n_cols_, -1);
  std::vector<int> cols;
  for (int r = 0; r < n_rows_; ++r) {
    cols.clear();
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      int mid = col_idx_[k];
      double v = values_[k];
      for (int j = other.row_ptr_[mid]; j < other.row_ptr_[mid + 1]; ++j) {
        int c = other.col_idx_[j];
        if (marker[c] != r) {
          marker[c] = r;
          acc[c] = 0.0;
          cols.push_back(c);
        }
        acc[c] += v * other.values_[j];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (int c : cols) {
      if (acc[c] != 0.0) {
        m.col_idx_.push_back(c);
        m.values_.push_back(acc[c]);
      }
    }
    m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(n_rows_, n_cols_), 0.0);
  for (int r = 0; r < static_cast<int>(d.size()); ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      if (col_idx_[k] == r) d[r] = values_[k];
  return d;
}

double CsrMatrix::inf_norm() const {
  double n = 0.0;
  for (int r = 0; r < n_rows_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
    n = std::max(n, s);
  }
  return n;
}

double CsrMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double CsrMatrix::entry(int i, int j) const {
  for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (col_idx_[k] == j) return values_[k];
  return 0.0;
}

double CsrMatrix::max_asymmetry() const {
  if (n_rows_ != n_cols_) throw DimensionMismatchError("asymmetry of a non-square matrix");
  CsrMatrix t = transpose();
  CsrMatrix d = add(*this, t, 1.0, -1.0);
  double m = 0.0;
  for (double v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

bool CsrMatrix::valid_structure() const {
  if (static_cast<int>(row_ptr_.size()) != n_rows_ + 1) return false;
  if (row_ptr_.front() != 0 || row_ptr_.back() != static_cast<int>(col_idx_.size()))
    return false;
  if (col_idx_.size() != values_.size()) return false;
  for (int r = 0; r < n_rows_; ++r) {
    if (row_ptr_[r] > row_ptr_[r + 1]) return false;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (col_idx_[k] < 0 || col_idx_[k] >= n_cols_) return false;
      if (k > row_ptr_[r] && col_idx_[k - 1] >= col_idx_[k]) return false;
      if (values_[k] == 0.0) return false;
    }
  }
  return true;
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatchError("matrix add: size mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
      t.push_back({r, a.col_idx()[k], alpha * a.values()[k]});
  for (int r = 0; r < b.rows(); ++r)
    for (int k = b.row_ptr()[r]; k < b.row_ptr()[r + 1]; ++k)
      t.push_back({r, b.col_idx()[k], beta * b.values()[k]});
  return CsrMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

void write_matrix_market(const CsrMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", r + 1, a.col_idx()[k] + 1,
                    a.values()[k]);
      out << buf;
    }
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_matrix_market(a, out);
}

CsrMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw Error("not a Matrix Market file");
  if (line.find("coordinate") == std::string::npos ||
      line.find("general") == std::string::npos)
    throw Error("only coordinate/general Matrix Market input is supported");
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '%') break;
  std::istringstream header(line);
  int rows = 0, cols = 0;
  std::int64_t nnz = 0;
  if (!(header >> rows >> cols >> nnz)) throw Error("Matrix Market header malformed");
  std::vector<Triplet> t;
  t.reserve(nnz);
  for (std::int64_t i = 0; i < nnz; ++i) {
    int r = 0, c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw Error("Matrix Market file truncated");
    t.push_back({r - 1, c - 1, v});
  }
  return CsrMatrix::from_triplets(rows, cols, std::move(t));
}

CsrMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  return read_matrix_market(in);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace hodgehx
