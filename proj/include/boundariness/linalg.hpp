#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace boundariness::linalg {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix. No structure assumed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  double max_abs() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix matmul(const Matrix& a, const Matrix& b);
CVector matvec(const Matrix& a, std::span<const Complex> v);
Matrix kron(const Matrix& a, const Matrix& b);

Complex inner(std::span<const Complex> x, std::span<const Complex> y);  // <x|y>
double norm(std::span<const Complex> x);
CVector kron(std::span<const Complex> u, std::span<const Complex> v);

inline constexpr double kHermiticityTol = 1e-12;

/// Square complex matrix equal to its adjoint. Construction symmetrizes
/// (M + M^dagger)/2 when the largest asymmetry is within
/// kHermiticityTol * max(1, max|m_jk|), and throws InputError otherwise.
/// Non-finite entries are rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m, double tol = kHermiticityTol);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> diag);
  /// |v><v| (v is not normalized here).
  static HermitianMatrix projector(std::span<const Complex> v);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const;
  /// <v|M|v>, real by hermiticity.
  double expectation(std::span<const Complex> v) const;

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double s);

 private:
  struct Unchecked {};
  HermitianMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}
  friend HermitianMatrix congruence(const Matrix& a, const HermitianMatrix& m);
  friend HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);

  Matrix m_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);

/// A M A^dagger.
HermitianMatrix congruence(const Matrix& a, const HermitianMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k belongs to eigenvalues[k]

  CVector eigenvector(std::size_t k) const;
};

/// Cyclic complex Jacobi. Throws NumericalError after 100 sweeps without
/// reaching an off-diagonal Frobenius norm of 1e-13 * ||M||_F.
EigenDecomposition eigh(const HermitianMatrix& m);
std::vector<double> eigvalsh(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);

inline constexpr double kPsdTol = 1e-9;

/// min eigenvalue >= -tol * max(1, spectral radius).
bool is_psd(const HermitianMatrix& m, double tol = kPsdTol);

/// Sum of |eigenvalues|.
double trace_norm(const HermitianMatrix& m);

/// Kronecker product; (i*db + k, j*db + l) <- a(i,j) * b(k,l).
HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);

/// Trace over the first tensor factor of dimension dim_first.
HermitianMatrix partial_trace_first(const HermitianMatrix& m, std::size_t dim_first);
/// Trace over the second tensor factor of dimension dim_second.
HermitianMatrix partial_trace_second(const HermitianMatrix& m, std::size_t dim_second);

/// Isometric real coordinates of a Hermitian matrix: diagonal entries, then
/// sqrt(2) Re and sqrt(2) Im of each upper off-diagonal entry (row-major).
std::vector<double> to_real_coordinates(const HermitianMatrix& m);
HermitianMatrix from_real_coordinates(std::span<const double> coords, std::size_t dim);

double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace boundariness::linalg
