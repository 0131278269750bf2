#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

struct CityParams {
  double cell_size = 10.0;
  double density = 0.25;
  double height_min = 10.0;
  double height_max = 60.0;
};

/// Rasterized city: one building height per square cell, 0 for open ground.
/// Cells are stored row-major, row index along y and column index along x.
class BuildingGrid {
 public:
  BuildingGrid(Region region, double cell_size, std::vector<double> heights);

  static BuildingGrid flat(Region region, double cell_size);

  const Region& region() const { return region_; }
  double cell_size() const { return cell_size_; }
  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }

  double height(std::size_t col, std::size_t row) const {
    return heights_[row * cols_ + col];
  }
  std::span<const double> heights() const { return heights_; }

  // Cell containing a ground position; points on the far region edge map to
  // the last cell.
  std::size_t col_of(double x) const;
  std::size_t row_of(double y) const;

  // Copy with one cell replaced.
  BuildingGrid with_height(std::size_t col, std::size_t row, double h) const;

 private:
  Region region_;
  double cell_size_;
  std::size_t cols_;
  std::size_t rows_;
  std::vector<double> heights_;
};

BuildingGrid generate_city(const Region& region, const CityParams& params, Rng& rng);

enum class GridLine { kVertical, kHorizontal, kCorner };

/// Point where the ground projection of a link crosses a grid line.
struct Crossing {
  double t;  // fraction of the way from a to b
  double x;
  double y;
  double z;  // link height at this ground position
  GridLine line;
  std::size_t col;  // index of the crossed vertical line (x = col * cell)
  std::size_t row;  // index of the crossed horizontal line (y = row * cell)
};

/// Grid-line crossings of segment [a, b], sorted by distance from a.
/// Crossings landing on a cell corner are merged into one kCorner entry.
std::vector<Crossing> crossing_points(const Point3& a, const Point3& b,
                                      const BuildingGrid& grid);

/// LoS indicator: true iff the link clears every building it passes over.
/// Each crossing is tested against all cells touching it and the endpoint
/// cells are tested at the endpoint heights. A link exactly at roof height
/// counts as blocked. Throws InvalidArgument for points outside the region.
bool los_link(const Point3& uav, const Point3& user, const BuildingGrid& grid);

// Plain-text matrix format:
//   width height cell_size
//   h(0,0) h(1,0) ...        <- row 0 (smallest y)
void write_grid(std::ostream& out, const BuildingGrid& grid);
BuildingGrid read_grid(std::istream& in);
void save_grid(const std::string& path, const BuildingGrid& grid);
BuildingGrid load_grid(const std::string& path);

}  // namespace uavnet
