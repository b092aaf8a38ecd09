#include "boundariness/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "boundariness/errors.hpp"
#include "boundariness/kernels.hpp"

namespace boundariness::linalg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

void symmetrize_in_place(Matrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = {m(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::norm_sq(data_.data(), data_.size()));
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix shape mismatch in +");
  kernels::axpy(1.0, other.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix shape mismatch in -");
  kernels::axpy(-1.0, other.data_.data(), data_.data(), data_.size());
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* out = c.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik != Complex{}) kernels::axpy(aik, b.row(k).data(), out, b.cols());
    }
  }
  return c;
}

CVector matvec(const Matrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw InputError("matvec: dimension mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw InputError("inner: length mismatch");
  return kernels::dotc(x.data(), y.data(), x.size());
}

double norm(std::span<const Complex> x) { return std::sqrt(kernels::norm_sq(x.data(), x.size())); }

CVector kron(std::span<const Complex> u, std::span<const Complex> v) {
  CVector out(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[i * v.size() + k] = u[i] * v[k];
  return out;
}

HermitianMatrix::HermitianMatrix(const Matrix& m, double tol) : m_(m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw InputError("Hermitian matrix must be square with dim >= 1, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  for (const Complex& z : m.data())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InputError("matrix has a non-finite entry");
  double asym = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
  const double scale = std::max(1.0, m.max_abs());
  if (asym > tol * scale)
    throw InputError("matrix is not Hermitian: max |M - M^dagger| = " + std::to_string(asym));
  symmetrize_in_place(m_);
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) { return HermitianMatrix(Matrix::identity(n), Unchecked{}); }

HermitianMatrix HermitianMatrix::zeros(std::size_t n) {
  if (n == 0) throw InputError("dimension must be >= 1");
  return HermitianMatrix(Matrix(n, n), Unchecked{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::projector(std::span<const Complex> v) {
  Matrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  symmetrize_in_place(m);
  return HermitianMatrix(std::move(m), Unchecked{});
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
  return t;
}

double HermitianMatrix::expectation(std::span<const Complex> v) const {
  const CVector mv = matvec(m_, v);
  return inner(v, mv).real();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  m_ += other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  m_ -= other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

HermitianMatrix congruence(const Matrix& a, const HermitianMatrix& m) {
  Matrix out = matmul(matmul(a, m.matrix()), a.adjoint());
  symmetrize_in_place(out);
  return HermitianMatrix(std::move(out), HermitianMatrix::Unchecked{});
}

CVector EigenDecomposition::eigenvector(std::size_t k) const {
  CVector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

EigenDecomposition eigh(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  Matrix a = m.matrix();
  // Rows of w are the conjugated eigenvectors (w = V^dagger), so both the
  // matrix and the accumulated basis are updated with row rotations.
  Matrix w = Matrix::identity(n);

  const double scale = a.frobenius_norm();
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalTol * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex omega = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const Complex ra = c, rb = -s * omega, rc = s, rd = c * omega;
        kernels::rotate(a.row(p).data(), a.row(q).data(), n, ra, rb, rc, rd);
        kernels::rotate(w.row(p).data(), w.row(q).data(), n, ra, rb, rc, rd);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = std::conj(a(p, k));
          a(k, q) = std::conj(a(q, k));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > kOffDiagonalTol * scale)
    throw NumericalError("eigh: Jacobi iteration did not converge for a " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = std::conj(w(order[k], i));
  }
  return out;
}

std::vector<double> eigvalsh(const HermitianMatrix& m) { return eigh(m).eigenvalues; }

double min_eigenvalue(const HermitianMatrix& m) { return eigvalsh(m).front(); }
double max_eigenvalue(const HermitianMatrix& m) { return eigvalsh(m).back(); }

bool is_psd(const HermitianMatrix& m, double tol) {
  if (tol < 0.0) throw InputError("is_psd: tolerance must be nonnegative");
  const std::vector<double> ev = eigvalsh(m);
  const double radius = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.front() >= -tol * std::max(1.0, radius);
}

double trace_norm(const HermitianMatrix& m) {
  double acc = 0.0;
  for (double ev : eigvalsh(m)) acc += std::abs(ev);
  return acc;
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()), HermitianMatrix::Unchecked{});
}

HermitianMatrix partial_trace_first(const HermitianMatrix& m, std::size_t dim_first) {
  const std::size_t n = m.dim();
  if (dim_first == 0 || n % dim_first != 0)
    throw InputError("partial_trace_first: dimension " + std::to_string(n) + " not divisible by " +
                     std::to_string(dim_first));
  const std::size_t d2 = n / dim_first;
  Matrix out(d2, d2);
  for (std::size_t i = 0; i < dim_first; ++i)
    for (std::size_t k = 0; k < d2; ++k)
      for (std::size_t l = 0; l < d2; ++l) out(k, l) += m(i * d2 + k, i * d2 + l);
  return HermitianMatrix(out);
}

HermitianMatrix partial_trace_second(const HermitianMatrix& m, std::size_t dim_second) {
  const std::size_t n = m.dim();
  if (dim_second == 0 || n % dim_second != 0)
    throw InputError("partial_trace_second: dimension " + std::to_string(n) + " not divisible by " +
                     std::to_string(dim_second));
  const std::size_t d1 = n / dim_second;
  Matrix out(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t k = 0; k < dim_second; ++k) out(i, j) += m(i * dim_second + k, j * dim_second + k);
  return HermitianMatrix(out);
}

std::vector<double> to_real_coordinates(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(m(i, i).real());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back(std::sqrt(2.0) * m(i, j).real());
      out.push_back(std::sqrt(2.0) * m(i, j).imag());
    }
  return out;
}

HermitianMatrix from_real_coordinates(std::span<const double> coords, std::size_t dim) {
  if (coords.size() != dim * dim)
    throw InputError("from_real_coordinates: expected " + std::to_string(dim * dim) + " coordinates");
  Matrix m(dim, dim);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = coords[pos++];
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex z{coords[pos] / std::sqrt(2.0), coords[pos + 1] / std::sqrt(2.0)};
      pos += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  return HermitianMatrix(m);
}

double frobenius_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).frobenius_norm();
}

}  // namespace boundariness::linalg
