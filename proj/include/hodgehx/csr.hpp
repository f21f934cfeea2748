#ifndef HODGEHX_CSR_HPP
#define HODGEHX_CSR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hodgehx {

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed sparse rows. Column indices are sorted and unique within each
// row and entries that compress to exactly zero are dropped.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  static CsrMatrix from_triplets(int n_rows, int n_cols, std::vector<Triplet> triplets);
  static CsrMatrix identity(int n);
  static CsrMatrix diagonal_matrix(const std::vector<double>& d);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // y = A x; row-parallel, bitwise independent of the thread count.
  void multiply_vector(const double* x, double* y) const;
  std::vector<double> multiply_vector(const std::vector<double>& x) const;
  // y = A^T x without forming the transpose.
  void multiply_transpose_vector(const double* x, double* y) const;
  std::vector<double> multiply_transpose_vector(const std::vector<double>& x) const;

  CsrMatrix transpose() const;
  CsrMatrix multiply(const CsrMatrix& other) const;

  std::vector<double> diagonal() const;
  double inf_norm() const;
  double frobenius_norm() const;
  // max_ij |A - A^T|; zero for structurally and numerically symmetric input.
  double max_asymmetry() const;
  double entry(int i, int j) const;

  bool valid_structure() const;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> row_ptr_ = {0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// alpha * A + beta * B.
CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha = 1.0, double beta = 1.0);

// Matrix Market coordinate format, general real.
void write_matrix_market(const CsrMatrix& a, std::ostream& out);
void write_matrix_market(const CsrMatrix& a, const std::string& path);
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::string& path);

// Small dense-vector helpers shared by the solvers.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);

}  // namespace hodgehx

#endif
