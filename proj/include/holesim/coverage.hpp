#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holesim/world.hpp"

namespace holesim {

struct GridCell {
  int i = 0;  // column, along x
  int j = 0;  // row, along y

  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

// Boolean occupancy grid over the field. true = covered.
class CoverageMap {
public:
  CoverageMap() = default;
  CoverageMap(int width_cells, int height_cells, double cell_size);

  int width_cells() const { return width_; }
  int height_cells() const { return height_; }
  double cell_size() const { return cell_size_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool covered(int i, int j) const { return cells_[index(i, j)] != 0; }
  void set(int i, int j, bool value) { cells_[index(i, j)] = value ? 1 : 0; }
  bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }

  Position cell_center(int i, int j) const { return {(i + 0.5) * cell_size_, (j + 0.5) * cell_size_}; }
  // Cell containing p; points on the far edge map to the last cell.
  GridCell cell_of(Position p) const;

  std::size_t covered_count() const;

  friend bool operator==(const CoverageMap&, const CoverageMap&) = default;

private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width_ + i; }

  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 1.0;
  std::vector<std::uint8_t> cells_;
};

struct HoleComponent {
  std::vector<GridCell> cells;  // sorted
  Position centroid;            // mean of cell centers, field coordinates
};

struct HoleSet {
  std::vector<GridCell> cells;  // every uncovered cell, row-major order
  std::vector<HoleComponent> components;

  bool empty() const { return cells.empty(); }
};

// All-false map sized to the field. Throws ConfigError when the cell size does not divide the field.
CoverageMap initialize_grid(const FieldConfig& config);

// Marks cells reached by live nodes. Throws DomainError if a node lies outside the grid.
CoverageMap mark_covered(CoverageMap map, std::span<const SensorNode> nodes, double sensing_radius,
                         CoverageMode mode = CoverageMode::disk);

// Uncovered cells, grouped into 4-connected components. With `region`, only cells whose
// centers lie inside it are considered.
HoleSet find_coverage_holes(const CoverageMap& map, std::optional<Rect> region = std::nullopt);
// Same, restricted to cells whose entry in `monitored` (row-major, one byte per cell) is nonzero.
HoleSet find_coverage_holes(const CoverageMap& map, std::span<const std::uint8_t> monitored);

// Row-major mask of the cells whose centers lie inside `region`.
std::vector<std::uint8_t> region_mask(const CoverageMap& map, const Rect& region);

double coverage_fraction(const CoverageMap& map);
double coverage_fraction(const CoverageMap& map, const Rect& region);

// Cells of `map` whose centers lie inside `region`.
std::vector<GridCell> cells_in(const CoverageMap& map, const Rect& region);

// '#' covered, '.' hole; one text row per grid row, row 0 first.
std::string to_text(const CoverageMap& map);
// Header "i,j,covered" then one row per cell.
std::string to_csv(const CoverageMap& map);

// Per-cell count of live sensing disks. Supports incremental moves for the relocation guard.
class CoverageCounter {
public:
  CoverageCounter(const CoverageMap& shape, double sensing_radius, const Rect& region);
  // Holes are counted only over cells flagged in `monitored`.
  CoverageCounter(const CoverageMap& shape, double sensing_radius, std::span<const std::uint8_t> monitored);

  void add(Position p);
  void remove(Position p);
  // Change in uncovered region cells if a disk moved from `from` to `to` (negative = fewer holes).
  long hole_delta(Position from, Position to) const;
  // Monitored cells that only the disk at `p` covers; 0 means the disk is redundant.
  std::size_t sole_cover(Position p) const;
  std::size_t holes() const { return holes_; }
  bool covered(int i, int j) const { return counts_[index(i, j)] > 0; }
  CoverageMap snapshot() const;
  std::span<const std::uint8_t> monitored() const { return in_region_; }

private:
  template <typename F>
  void for_cells_in_disk(Position p, F&& f) const;
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width_ + i; }

  int width_;
  int height_;
  double cell_size_;
  double radius_;
  std::vector<int> counts_;
  std::vector<std::uint8_t> in_region_;
  std::size_t holes_ = 0;
};

}  // namespace holesim
