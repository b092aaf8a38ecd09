#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Inner loops on contiguous complex<double> rows. Every table entry has a
// portable scalar reference; an AVX2/FMA table is compiled on x86-64 and
// picked at runtime when the CPU supports it.
namespace boundariness::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  // y <- y + a * x
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i |x_i|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  // (x, y) <- (a x + b y, c x + d y), elementwise
  void (*rotate)(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

// Resolved once. BOUNDARINESS_KERNELS=scalar|avx2|auto overrides the choice;
// an unavailable request falls back to scalar.
const KernelTable& active();

// Look up a table by name ("scalar", "avx2"); nullptr if unavailable.
const KernelTable* table_by_name(std::string_view name);

inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) { active().axpy(a, x, y, n); }
inline cplx dotc(const cplx* x, const cplx* y, std::size_t n) { return active().dotc(x, y, n); }
inline double norm_sq(const cplx* x, std::size_t n) { return active().norm_sq(x, n); }
inline void rotate(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d) {
  active().rotate(x, y, n, a, b, c, d);
}

}  // namespace boundariness::kernels
