#include "boundariness/kernels.hpp"

namespace boundariness::kernels {
namespace {

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void rotate_scalar(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = a * xi + b * yi;
    y[i] = c * xi + d * yi;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", axpy_scalar, dotc_scalar, norm_sq_scalar, rotate_scalar};
  return table;
}

}  // namespace boundariness::kernels
