#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace papr {

/// One bit per element, each 0 or 1, most significant bit of a label first.
using Bits = std::vector<std::uint8_t>;

/// Unit-average-energy QAM alphabet with Gray (square M) or quasi-Gray
/// (rectangular and cross M) labels. Point index i carries labels[i].
struct Constellation {
  int m_order = 0;
  int bits_per_symbol = 0;
  std::vector<std::complex<double>> points;
  std::vector<std::uint32_t> labels;

  /// Point index for each label value.
  std::vector<std::uint32_t> index_of_label;

  double min_distance() const;
  double max_magnitude() const;
};

bool is_supported_order(int m);

/// M = 4, 16: square per-axis Gray. M = 8: 4x2 rectangular Gray.
/// M = 32: 6x6 cross; built from an 8x4 Gray grid whose outer columns
/// (x = +-7) fold onto the top and bottom rows via (x, y) -> (sgn(x)|y|, 5 sgn(y)).
/// Throws UnsupportedOrder for any other M.
Constellation build_constellation(int m);

/// Maps consecutive log2(M)-bit groups. Throws Framing when the length is not
/// a multiple of log2(M).
std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           const Constellation& c);

/// Minimum-distance hard decisions; ties resolve to the lowest point index.
Bits demap_symbols(std::span<const std::complex<double>> y, const Constellation& c);

/// Fills `symbols` with uniformly drawn points. When `bits` is non-null the
/// labels are appended to it.
void draw_symbols(const Constellation& c, std::mt19937_64& rng,
                  std::span<std::complex<double>> symbols, Bits* bits);

/// Allocation-free variant used by the simulation loop. Appends to `out`.
void demap_into(std::span<const std::complex<double>> y, const Constellation& c, Bits& out);

}  // namespace papr
