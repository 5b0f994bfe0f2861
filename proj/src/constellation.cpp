#include "papr_shaper/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "papr_shaper/error.hpp"

namespace papr {
namespace {

std::uint32_t gray(std::uint32_t p) { return p ^ (p >> 1); }

// Levels L-1, L-3, ..., -(L-1) at positions 0..L-1; position p carries gray(p).
struct Axis {
  int bits;
  int levels() const { return 1 << bits; }
  double level(int p) const { return static_cast<double>(levels() - 1 - 2 * p); }
};

struct RawPoint {
  double x;
  double y;
  std::uint32_t label;
};

std::vector<RawPoint> grid_points(Axis ix, Axis qy) {
  std::vector<RawPoint> pts;
  for (int p = 0; p < ix.levels(); ++p) {
    for (int q = 0; q < qy.levels(); ++q) {
      const std::uint32_t label =
          (gray(static_cast<std::uint32_t>(p)) << qy.bits) | gray(static_cast<std::uint32_t>(q));
      pts.push_back({ix.level(p), qy.level(q), label});
    }
  }
  return pts;
}

std::vector<RawPoint> cross32() {
  std::vector<RawPoint> pts = grid_points(Axis{3}, Axis{2});
  for (RawPoint& pt : pts) {
    if (std::abs(pt.x) == 7.0) {
      const double sx = pt.x > 0 ? 1.0 : -1.0;
      const double sy = pt.y > 0 ? 1.0 : -1.0;
      pt = {sx * std::abs(pt.y), sy * 5.0, pt.label};
    }
  }
  return pts;
}

}  // namespace

bool is_supported_order(int m) { return m == 4 || m == 8 || m == 16 || m == 32; }

Constellation build_constellation(int m) {
  std::vector<RawPoint> raw;
  switch (m) {
    case 4: raw = grid_points(Axis{1}, Axis{1}); break;
    case 8: raw = grid_points(Axis{2}, Axis{1}); break;
    case 16: raw = grid_points(Axis{2}, Axis{2}); break;
    case 32: raw = cross32(); break;
    default:
      throw Error(ErrorKind::UnsupportedOrder,
                  "unsupported constellation order " + std::to_string(m));
  }
  // Point index = label value.
  std::sort(raw.begin(), raw.end(),
            [](const RawPoint& a, const RawPoint& b) { return a.label < b.label; });

  double energy = 0.0;
  for (const RawPoint& p : raw) energy += p.x * p.x + p.y * p.y;
  const double scale = 1.0 / std::sqrt(energy / static_cast<double>(raw.size()));

  Constellation c;
  c.m_order = m;
  c.bits_per_symbol = static_cast<int>(std::lround(std::log2(m)));
  c.index_of_label.assign(raw.size(), 0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    c.points.emplace_back(raw[i].x * scale, raw[i].y * scale);
    c.labels.push_back(raw[i].label);
    c.index_of_label[raw[i].label] = static_cast<std::uint32_t>(i);
  }
  return c;
}

double Constellation::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, std::abs(points[i] - points[j]));
  return best;
}

double Constellation::max_magnitude() const {
  double best = 0.0;
  for (const auto& p : points) best = std::max(best, std::abs(p));
  return best;
}

std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           const Constellation& c) {
  const auto k = static_cast<std::size_t>(c.bits_per_symbol);
  if (bits.size() % k != 0)
    throw Error(ErrorKind::Framing, "bit count " + std::to_string(bits.size()) +
                                        " is not a multiple of " + std::to_string(k));
  std::vector<std::complex<double>> out;
  out.reserve(bits.size() / k);
  for (std::size_t s = 0; s < bits.size(); s += k) {
    std::uint32_t label = 0;
    for (std::size_t b = 0; b < k; ++b) label = (label << 1) | (bits[s + b] & 1u);
    out.push_back(c.points[c.index_of_label[label]]);
  }
  return out;
}

void demap_into(std::span<const std::complex<double>> y, const Constellation& c, Bits& out) {
  const int k = c.bits_per_symbol;
  for (const auto& v : y) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const double dr = v.real() - c.points[i].real();
      const double di = v.imag() - c.points[i].imag();
      const double d = dr * dr + di * di;
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    const std::uint32_t label = c.labels[best];
    for (int b = k - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
  }
}

void draw_symbols(const Constellation& c, std::mt19937_64& rng,
                  std::span<std::complex<double>> symbols, Bits* bits) {
  const int k = c.bits_per_symbol;
  for (auto& s : symbols) {
    // Top k bits of one engine output; M is a power of two.
    const auto label = static_cast<std::uint32_t>(rng() >> (64 - k));
    s = c.points[c.index_of_label[label]];
    if (bits != nullptr)
      for (int b = k - 1; b >= 0; --b) bits->push_back(static_cast<std::uint8_t>((label >> b) & 1u));
  }
}

Bits demap_symbols(std::span<const std::complex<double>> y, const Constellation& c) {
  Bits out;
  out.reserve(y.size() * static_cast<std::size_t>(c.bits_per_symbol));
  demap_into(y, c, out);
  return out;
}

}  // namespace papr
