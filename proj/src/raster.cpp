#include "parabasin/raster.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <queue>
#include <string>

#include "parabasin/petals.hpp"

namespace parabasin {

namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 6> kDirectionColors{{
    {40, 90, 200},
    {200, 110, 40},
    {60, 160, 80},
    {160, 60, 170},
    {30, 160, 170},
    {180, 170, 40},
}};
constexpr std::array<std::uint8_t, 3> kEscapedColor{245, 245, 245};
constexpr std::array<std::uint8_t, 3> kUndecidedColor{0, 0, 0};
constexpr std::array<std::uint8_t, 3> kMaskColor{255, 40, 40};

void check_resolution(int resolution) {
  if (resolution < 1 || resolution > 8192) {
    throw Error(ErrorKind::InvalidArgument, "resolution must lie in [1, 8192]");
  }
}

// 4-connected breadth-first fill over cells accepted by `inside`.
template <class Inside>
std::vector<std::uint8_t> fill(int rows, int cols,
                               const std::vector<std::pair<int, int>>& seeds,
                               Inside&& inside) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(rows) * cols, 0);
  std::queue<std::pair<int, int>> queue;
  auto push = [&](int r, int c) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) return;
    auto& cell = mask[static_cast<std::size_t>(r) * cols + c];
    if (cell || !inside(r, c)) return;
    cell = 1;
    queue.emplace(r, c);
  };
  for (const auto& [r, c] : seeds) push(r, c);
  while (!queue.empty()) {
    const auto [r, c] = queue.front();
    queue.pop();
    push(r - 1, c);
    push(r + 1, c);
    push(r, c - 1);
    push(r, c + 1);
  }
  return mask;
}

}  // namespace

Complex RasterGrid::pixel_center(int row, int col) const {
  const double dx = window.width / resolution;
  const double dy = window.height / resolution;
  // Written symmetrically about the center so conjugate rows mirror exactly.
  return {window.center.real() + (2 * col + 1 - resolution) * 0.5 * dx,
          window.center.imag() - (2 * row + 1 - resolution) * 0.5 * dy};
}

std::optional<std::pair<int, int>> RasterGrid::pixel_of(Complex z) const {
  const double u = (z.real() - window.center.real()) / window.width + 0.5;
  const double v = 0.5 - (z.imag() - window.center.imag()) / window.height;
  const auto col = static_cast<int>(std::floor(u * resolution));
  const auto row = static_cast<int>(std::floor(v * resolution));
  if (row < 0 || row >= resolution || col < 0 || col >= resolution) return std::nullopt;
  return std::pair(row, col);
}

PixelLabel classify_point(const ParabolicMap& f, Complex z, std::size_t n_max,
                          std::span<const PacManDomain> petals) {
  const Membership m = petal_membership(f, z, n_max, petals);
  switch (m.status) {
    case OrbitStatus::ConvergedToDirection:
      return {PixelLabel::Kind::Direction, static_cast<std::uint8_t>(m.direction)};
    case OrbitStatus::Escaped:
      return {PixelLabel::Kind::Escaped, 0};
    default:
      return {PixelLabel::Kind::Undecided, 0};
  }
}

RasterGrid classify_grid(const ParabolicMap& f, const Window& window,
                         int resolution, std::size_t n_max) {
  check_resolution(resolution);
  if (!(window.width > 0.0) || !(window.height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "window must have positive extent");
  }
  RasterGrid grid;
  grid.window = window;
  grid.resolution = resolution;
  grid.labels.resize(static_cast<std::size_t>(resolution) * resolution);
  grid.component_mask.assign(grid.labels.size(), 0);
  const auto petals = membership_petals(f);
#pragma omp parallel for schedule(dynamic, 1)
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      grid.labels[static_cast<std::size_t>(row) * resolution + col] =
          classify_point(f, grid.pixel_center(row, col), n_max, petals);
    }
  }
  return grid;
}

std::vector<std::uint8_t> immediate_component(const RasterGrid& grid, Complex seed) {
  const auto pixel = grid.pixel_of(seed);
  if (!pixel || grid.at(pixel->first, pixel->second).kind != PixelLabel::Kind::Direction) {
    throw Error(ErrorKind::SeedNotInBasin, "seed pixel is not labeled with a direction");
  }
  const PixelLabel label = grid.at(pixel->first, pixel->second);
  return fill(grid.resolution, grid.resolution, {*pixel},
              [&](int r, int c) { return grid.at(r, c) == label; });
}

PolarGrid classify_polar(const ParabolicMap& f, double R, double theta0,
                         int resolution, std::size_t n_max) {
  check_resolution(resolution);
  if (!(R > 0.0) || !(theta0 > 0.0 && theta0 < std::numbers::pi)) {
    throw Error(ErrorKind::InvalidArgument, "classify_polar: bad R or theta0");
  }
  PolarGrid grid;
  grid.R = R;
  grid.theta0 = theta0;
  grid.resolution = resolution;
  grid.labels.resize(static_cast<std::size_t>(grid.angle_rows()) * resolution);
  const auto petals = membership_petals(f);
#pragma omp parallel for schedule(dynamic, 1)
  for (int a = 0; a < grid.angle_rows(); ++a) {
    // Row 0 lies on theta = +theta0, the last row on theta = -theta0.
    const double theta = theta0 * (resolution - 2 * a) / resolution;
    for (int r = 0; r < resolution; ++r) {
      const double radius = R * (r + 0.5) / resolution;
      grid.labels[static_cast<std::size_t>(a) * resolution + r] =
          classify_point(f, std::polar(radius, theta), n_max, petals);
    }
  }
  return grid;
}

std::vector<std::uint8_t> flood_fill(const PolarGrid& grid,
                                     const std::vector<std::pair<int, int>>& seeds) {
  return fill(grid.angle_rows(), grid.resolution, seeds,
              [&](int a, int r) { return grid.in_basin(a, r); });
}

Prop3Report prop3_from_grid(const PolarGrid& grid) {
  const int n = grid.resolution;
  std::vector<std::pair<int, int>> top;
  std::vector<std::pair<int, int>> bottom;
  for (int r = 0; r < n; ++r) {
    top.emplace_back(0, r);
    bottom.emplace_back(grid.angle_rows() - 1, r);
  }
  const auto s1 = flood_fill(grid, top);
  const auto s2 = flood_fill(grid, bottom);
  Prop3Report report;
  report.resolution = n;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    report.s1_pixels += s1[i];
    report.s2_pixels += s2[i];
    report.overlap_pixels += s1[i] & s2[i];
  }
  report.disjoint = report.overlap_pixels == 0;
  return report;
}

Prop3Report prop3_disjointness(const ParabolicMap& f, double R, double theta0,
                               int resolution, std::size_t n_max) {
  if (!f.has_higher_terms()) {
    throw Error(ErrorKind::InvalidArgument,
                "prop3_disjointness: needs a term beyond a z^{m+1}");
  }
  return prop3_from_grid(classify_polar(f, R, theta0, resolution, n_max));
}

std::string encode_ppm(const RasterGrid& grid) {
  const int n = grid.resolution;
  std::string out = "P6\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * grid.labels.size());
  for (std::size_t i = 0; i < grid.labels.size(); ++i) {
    const PixelLabel& label = grid.labels[i];
    std::array<std::uint8_t, 3> color =
        label.kind == PixelLabel::Kind::Direction
            ? kDirectionColors[label.direction % kDirectionColors.size()]
        : label.kind == PixelLabel::Kind::Escaped ? kEscapedColor
                                                  : kUndecidedColor;
    if (i < grid.component_mask.size() && grid.component_mask[i]) {
      for (int k = 0; k < 3; ++k) {
        color[k] = static_cast<std::uint8_t>((color[k] + kMaskColor[k]) / 2);
      }
    }
    for (int k = 0; k < 3; ++k) out[header + 3 * i + k] = static_cast<char>(color[k]);
  }
  return out;
}

void write_image(const RasterGrid& grid, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  const std::string bytes = encode_ppm(grid);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) {
    throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
  }
}

}  // namespace parabasin
