#include "papr_shaper/kernels.hpp"

#include <algorithm>

namespace papr::kernels {
namespace {

void axpy(cplx a, std::span<const cplx> row, std::span<cplx> out) {
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xr = row[i].real();
    const double xi = row[i].imag();
    out[i] = cplx(out[i].real() + ar * xr - ai * xi,
                  out[i].imag() + ar * xi + ai * xr);
  }
}

cplx dot_conj(std::span<const cplx> x, std::span<const cplx> y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

PowerStats power(std::span<const cplx> x) {
  PowerStats s;
  for (const cplx& v : x) {
    const double p = v.real() * v.real() + v.imag() * v.imag();
    s.peak = std::max(s.peak, p);
    s.sum += p;
  }
  return s;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::Scalar, &axpy, &dot_conj, &power};
}

}  // namespace papr::kernels
