#include <cstdlib>

#include "papr_shaper/kernels.hpp"

namespace papr::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(PAPR_SHAPER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table_for(Isa isa) {
  if (!isa_supported(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar:
      return &detail::scalar_table;
    case Isa::Avx2:
#if defined(PAPR_SHAPER_HAVE_AVX2)
      return &detail::avx2_table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("PAPR_SHAPER_ISA")) {
    if (auto isa = parse_isa(forced)) {
      if (const KernelTable* t = table_for(*isa)) return *t;
    }
  }
  if (const KernelTable* t = table_for(Isa::Avx2)) return *t;
  return detail::scalar_table;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace papr::kernels
