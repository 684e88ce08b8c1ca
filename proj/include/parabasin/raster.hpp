#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "parabasin/parabolic.hpp"

namespace parabasin {

struct Window {
  Complex center;
  double width = 0.0;
  double height = 0.0;
};

struct PixelLabel {
  enum class Kind : std::uint8_t { Direction, Escaped, Undecided };
  Kind kind = Kind::Undecided;
  std::uint8_t direction = 0;

  friend bool operator==(const PixelLabel&, const PixelLabel&) = default;
};

/// resolution x resolution labels, row-major, row 0 at the top (largest Im).
struct RasterGrid {
  Window window;
  int resolution = 0;
  std::vector<PixelLabel> labels;
  std::vector<std::uint8_t> component_mask;

  const PixelLabel& at(int row, int col) const {
    return labels[static_cast<std::size_t>(row) * resolution + col];
  }
  Complex pixel_center(int row, int col) const;
  std::optional<std::pair<int, int>> pixel_of(Complex z) const;
};

PixelLabel classify_point(const ParabolicMap& f, Complex z, std::size_t n_max,
                          std::span<const PacManDomain> petals);

/// Throws InvalidArgument if resolution is outside [1, 8192].
RasterGrid classify_grid(const ParabolicMap& f, const Window& window,
                         int resolution, std::size_t n_max);

/// 4-connected flood fill over pixels sharing the seed's direction label.
/// Throws SeedNotInBasin.
std::vector<std::uint8_t> immediate_component(const RasterGrid& grid,
                                              Complex seed);

/// Polar raster of {0 < r < R, |theta| <= theta0}: resolution + 1 angle rows
/// from theta0 down to -theta0 (both edges, and theta = 0 when resolution is
/// even), resolution radius columns at cell centers.
struct PolarGrid {
  double R = 0.0;
  double theta0 = 0.0;
  int resolution = 0;
  std::vector<PixelLabel> labels;  // [angle_index * resolution + radius_index]

  int angle_rows() const { return resolution + 1; }

  bool in_basin(int a, int r) const {
    return labels[static_cast<std::size_t>(a) * resolution + r].kind ==
           PixelLabel::Kind::Direction;
  }
};

PolarGrid classify_polar(const ParabolicMap& f, double R, double theta0,
                         int resolution, std::size_t n_max);

/// Flood fill of basin pixels from all seeds (angle_index, radius_index).
std::vector<std::uint8_t> flood_fill(const PolarGrid& grid,
                                     const std::vector<std::pair<int, int>>& seeds);

struct Prop3Report {
  bool disjoint = true;
  std::size_t overlap_pixels = 0;
  std::size_t s1_pixels = 0;
  std::size_t s2_pixels = 0;
  int resolution = 0;
};

/// S1 fills from basin pixels on the edge theta = +theta0, S2 from the edge
/// theta = -theta0.
Prop3Report prop3_from_grid(const PolarGrid& grid);
Prop3Report prop3_disjointness(const ParabolicMap& f, double R, double theta0,
                               int resolution, std::size_t n_max = 20000);

/// Binary PPM (P6) with one color per label and the component mask blended
/// at 50%.
std::string encode_ppm(const RasterGrid& grid);
void write_image(const RasterGrid& grid, const std::filesystem::path& path);

}  // namespace parabasin
