#pragma once

// Data-parallel inner loops of the modem and the PAPR analysis. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2+FMA variant
// selected at runtime. Variants agree to rounding; the summation order
// differs, so results are reproducible per ISA, not across ISAs.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace papr::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct PowerStats {
  double peak = 0.0;  // max |x[i]|^2
  double sum = 0.0;   // sum |x[i]|^2
};

struct KernelTable {
  Isa isa;
  // out[i] += a * row[i]; out and row have equal length.
  void (*complex_axpy)(cplx a, std::span<const cplx> row, std::span<cplx> out);
  // sum_i x[i] * conj(y[i]); x and y have equal length.
  cplx (*complex_dot_conj)(std::span<const cplx> x, std::span<const cplx> y);
  PowerStats (*power_stats)(std::span<const cplx> x);
};

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// True when the ISA was compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

/// Kernel table for a specific ISA; nullptr when unsupported.
const KernelTable* table_for(Isa isa);

/// Best supported table, chosen once per process. The environment variable
/// PAPR_SHAPER_ISA=scalar|avx2 forces a choice (ignored if unsupported).
const KernelTable& active();

namespace detail {
extern const KernelTable scalar_table;
#if defined(PAPR_SHAPER_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace papr::kernels
