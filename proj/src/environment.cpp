#include "uavnet/environment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "uavnet/errors.hpp"

namespace uavnet {
namespace {

std::size_t cells_along(double extent, double cell) {
  return static_cast<std::size_t>(std::ceil(extent / cell - 1e-12));
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

BuildingGrid::BuildingGrid(Region region, double cell_size, std::vector<double> heights)
    : region_(region), cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw InvalidArgument("cell size must be positive");
  if (!(region.width > 0.0) || !(region.height > 0.0))
    throw InvalidArgument("region dimensions must be positive");
  cols_ = cells_along(region.width, cell_size);
  rows_ = cells_along(region.height, cell_size);
  if (heights.size() != cols_ * rows_)
    throw InvalidArgument("height matrix is " + std::to_string(heights.size()) +
                          " cells, expected " + std::to_string(cols_ * rows_));
  for (double h : heights) {
    if (!(h >= 0.0) || !std::isfinite(h))
      throw InvalidArgument("building heights must be finite and >= 0");
  }
  heights_ = std::move(heights);
}

BuildingGrid BuildingGrid::flat(Region region, double cell_size) {
  if (!(cell_size > 0.0)) throw InvalidArgument("cell size must be positive");
  const std::size_t n =
      cells_along(region.width, cell_size) * cells_along(region.height, cell_size);
  return BuildingGrid(region, cell_size, std::vector<double>(n, 0.0));
}

std::size_t BuildingGrid::col_of(double x) const {
  const auto c = static_cast<std::ptrdiff_t>(std::floor(x / cell_size_));
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, cols_ - 1));
}

std::size_t BuildingGrid::row_of(double y) const {
  const auto r = static_cast<std::ptrdiff_t>(std::floor(y / cell_size_));
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(r, 0, rows_ - 1));
}

BuildingGrid BuildingGrid::with_height(std::size_t col, std::size_t row, double h) const {
  auto heights = heights_;
  heights.at(row * cols_ + col) = h;
  return BuildingGrid(region_, cell_size_, std::move(heights));
}

BuildingGrid generate_city(const Region& region, const CityParams& params, Rng& rng) {
  if (!(params.cell_size > 0.0)) throw InvalidArgument("cell size must be positive");
  if (params.height_min > params.height_max)
    throw InvalidArgument("building height_min exceeds height_max");
  if (params.height_min < 0.0) throw InvalidArgument("building heights must be >= 0");
  if (!(params.density >= 0.0 && params.density <= 1.0))
    throw InvalidArgument("building density must lie in [0, 1]");

  const std::size_t n = cells_along(region.width, params.cell_size) *
                        cells_along(region.height, params.cell_size);
  std::vector<double> heights(n, 0.0);
  for (double& h : heights) {
    // Draw both variates for every cell so the stream layout is independent
    // of the density.
    const double occupied = uniform(rng, 0.0, 1.0);
    const double height = uniform(rng, params.height_min, params.height_max);
    if (occupied < params.density) h = height;
  }
  return BuildingGrid(region, params.cell_size, std::move(heights));
}

std::vector<Crossing> crossing_points(const Point3& a, const Point3& b,
                                      const BuildingGrid& grid) {
  std::vector<Crossing> out;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  if (dx == 0.0 && dy == 0.0) return out;
  const double c = grid.cell_size();

  auto add_lines = [&](double from, double delta, GridLine kind) {
    if (delta == 0.0) return;
    const double lo = std::min(from, from + delta);
    const double hi = std::max(from, from + delta);
    auto first = static_cast<std::ptrdiff_t>(std::floor(lo / c)) + 1;
    auto last = static_cast<std::ptrdiff_t>(std::ceil(hi / c)) - 1;
    for (auto i = first; i <= last; ++i) {
      const double line = static_cast<double>(i) * c;
      const double t = (line - from) / delta;
      if (!(t > 0.0 && t < 1.0)) continue;
      Crossing cr{};
      cr.t = t;
      cr.line = kind;
      if (kind == GridLine::kVertical) {
        cr.x = line;
        cr.y = a.y + t * dy;
        cr.col = static_cast<std::size_t>(i);
      } else {
        cr.x = a.x + t * dx;
        cr.y = line;
        cr.row = static_cast<std::size_t>(i);
      }
      cr.z = a.z + t * (b.z - a.z);
      out.push_back(cr);
    }
  };
  add_lines(a.x, dx, GridLine::kVertical);
  add_lines(a.y, dy, GridLine::kHorizontal);

  std::sort(out.begin(), out.end(), [](const Crossing& l, const Crossing& r) {
    if (l.t != r.t) return l.t < r.t;
    return l.line < r.line;
  });

  // Merge a vertical and a horizontal crossing that hit the same corner.
  std::vector<Crossing> merged;
  merged.reserve(out.size());
  for (const auto& cr : out) {
    if (!merged.empty() && merged.back().line != GridLine::kCorner &&
        merged.back().line != cr.line && std::abs(merged.back().t - cr.t) <= 1e-12) {
      auto& prev = merged.back();
      const Crossing& v = prev.line == GridLine::kVertical ? prev : cr;
      const Crossing& h = prev.line == GridLine::kHorizontal ? prev : cr;
      Crossing corner = v;
      corner.y = h.y;
      corner.row = h.row;
      corner.line = GridLine::kCorner;
      prev = corner;
      continue;
    }
    merged.push_back(cr);
  }
  return merged;
}

namespace {

// Cell indices touching a crossing: both sides of every line it lies on.
void touching_cells(const Crossing& cr, const BuildingGrid& grid,
                    std::array<std::size_t, 2>& cols, std::size_t& ncols,
                    std::array<std::size_t, 2>& rows, std::size_t& nrows) {
  auto sides = [](std::size_t line, std::size_t count, std::array<std::size_t, 2>& idx,
                  std::size_t& n) {
    n = 0;
    if (line > 0) idx[n++] = std::min(line - 1, count - 1);
    if (line < count) idx[n++] = line;
  };
  if (cr.line == GridLine::kVertical || cr.line == GridLine::kCorner) {
    sides(cr.col, grid.cols(), cols, ncols);
  } else {
    cols[0] = grid.col_of(cr.x);
    ncols = 1;
  }
  if (cr.line == GridLine::kHorizontal || cr.line == GridLine::kCorner) {
    sides(cr.row, grid.rows(), rows, nrows);
  } else {
    rows[0] = grid.row_of(cr.y);
    nrows = 1;
  }
}

}  // namespace

bool los_link(const Point3& uav, const Point3& user, const BuildingGrid& grid) {
  if (!grid.region().contains(uav) || !grid.region().contains(user))
    throw InvalidArgument("link endpoint outside the region");

  if (uav.z <= grid.height(grid.col_of(uav.x), grid.row_of(uav.y))) return false;
  if (user.z <= grid.height(grid.col_of(user.x), grid.row_of(user.y))) return false;

  const double c = grid.cell_size();
  const double dx = user.x - uav.x;
  const double dy = user.y - uav.y;
  if (dx == 0.0 && dy == 0.0) return true;

  // Walk the crossings in place; same test as crossing_points() without the
  // allocation, in parameter order.
  std::array<std::size_t, 2> cols{};
  std::array<std::size_t, 2> rows{};
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  auto blocked = [&](const Crossing& cr) {
    touching_cells(cr, grid, cols, ncols, rows, nrows);
    for (std::size_t i = 0; i < ncols; ++i)
      for (std::size_t j = 0; j < nrows; ++j)
        if (cr.z <= grid.height(cols[i], rows[j])) return true;
    return false;
  };

  auto scan = [&](double from, double delta, GridLine kind) {
    if (delta == 0.0) return false;
    const double lo = std::min(from, from + delta);
    const double hi = std::max(from, from + delta);
    auto first = static_cast<std::ptrdiff_t>(std::floor(lo / c)) + 1;
    auto last = static_cast<std::ptrdiff_t>(std::ceil(hi / c)) - 1;
    for (auto i = first; i <= last; ++i) {
      const double line = static_cast<double>(i) * c;
      const double t = (line - from) / delta;
      if (!(t > 0.0 && t < 1.0)) continue;
      Crossing cr{};
      cr.t = t;
      cr.z = uav.z + t * (user.z - uav.z);
      if (kind == GridLine::kVertical) {
        cr.x = line;
        cr.y = uav.y + t * dy;
        cr.col = static_cast<std::size_t>(i);
      } else {
        cr.x = uav.x + t * dx;
        cr.y = line;
        cr.row = static_cast<std::size_t>(i);
      }
      // A crossing sitting on a corner is tested against all four cells.
      const double other = kind == GridLine::kVertical ? cr.y : cr.x;
      const double k = std::round(other / c);
      if (std::abs(other - k * c) <= 1e-9 * c && k >= 0.0) {
        if (kind == GridLine::kVertical)
          cr.row = static_cast<std::size_t>(k);
        else
          cr.col = static_cast<std::size_t>(k);
        cr.line = GridLine::kCorner;
      } else {
        cr.line = kind;
      }
      if (blocked(cr)) return true;
    }
    return false;
  };
  if (scan(uav.x, dx, GridLine::kVertical)) return false;
  if (scan(uav.y, dy, GridLine::kHorizontal)) return false;
  return true;
}

void write_grid(std::ostream& out, const BuildingGrid& grid) {
  out << format_double(grid.region().width) << ' ' << format_double(grid.region().height)
      << ' ' << format_double(grid.cell_size()) << '\n';
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(grid.height(c, r));
    }
    out << '\n';
  }
}

BuildingGrid read_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("grid file is empty");
  std::istringstream header(line);
  Region region;
  double cell = 0.0;
  if (!(header >> region.width >> region.height >> cell))
    throw IoError("grid header must be 'width height cell_size'");
  if (!(cell > 0.0)) throw InvalidArgument("cell size must be positive");
  const std::size_t cols = cells_along(region.width, cell);
  const std::size_t rows = cells_along(region.height, cell);

  std::vector<double> heights;
  heights.reserve(cols * rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw IoError("grid file has " + std::to_string(r) + " rows, expected " +
                    std::to_string(rows));
    std::istringstream row(line);
    double h = 0.0;
    std::size_t n = 0;
    while (row >> h) {
      heights.push_back(h);
      ++n;
    }
    if (!row.eof() || n != cols)
      throw IoError("grid row " + std::to_string(r) + " must hold " +
                    std::to_string(cols) + " numbers");
  }
  return BuildingGrid(region, cell, std::move(heights));
}

void save_grid(const std::string& path, const BuildingGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_grid(out, grid);
  if (!out) throw IoError("failed writing " + path);
}

BuildingGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_grid(in);
}

}  // namespace uavnet
