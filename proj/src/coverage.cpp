#include "holesim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "holesim/error.hpp"

namespace holesim {

namespace {

bool in_disk(Position center, double radius, Position p) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  return dx * dx + dy * dy <= radius * radius;
}

}  // namespace

CoverageMap::CoverageMap(int width_cells, int height_cells, double cell_size)
    : width_(width_cells), height_(height_cells), cell_size_(cell_size),
      cells_(static_cast<std::size_t>(width_cells) * static_cast<std::size_t>(height_cells), 0) {
  if (width_cells <= 0 || height_cells <= 0 || !(cell_size > 0.0))
    throw DomainError("CoverageMap: dimensions must be positive");
}

GridCell CoverageMap::cell_of(Position p) const {
  const int i = std::clamp(static_cast<int>(std::floor(p.x / cell_size_)), 0, width_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor(p.y / cell_size_)), 0, height_ - 1);
  return {i, j};
}

std::size_t CoverageMap::covered_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

CoverageMap initialize_grid(const FieldConfig& config) {
  if (!(config.grid_cell_size > 0.0)) throw ConfigError("grid_cell_size must be strictly positive");
  if (!divides_evenly(config.field_width, config.grid_cell_size) ||
      !divides_evenly(config.field_height, config.grid_cell_size))
    throw ConfigError("grid_cell_size must divide the field dimensions evenly");
  const int w = static_cast<int>(std::lround(config.field_width / config.grid_cell_size));
  const int h = static_cast<int>(std::lround(config.field_height / config.grid_cell_size));
  return CoverageMap(w, h, config.grid_cell_size);
}

CoverageMap mark_covered(CoverageMap map, std::span<const SensorNode> nodes, double sensing_radius,
                         CoverageMode mode) {
  const double cs = map.cell_size();
  const double max_x = map.width_cells() * cs;
  const double max_y = map.height_cells() * cs;
  for (const auto& n : nodes) {
    if (!n.alive) continue;
    const Position p = n.position;
    if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= max_x && p.y <= max_y))
      throw DomainError("mark_covered: node " + std::to_string(n.id) + " lies outside the grid");
    if (mode == CoverageMode::node_cell) {
      const GridCell c = map.cell_of(p);
      map.set(c.i, c.j, true);
      continue;
    }
    const int i0 = std::max(0, static_cast<int>(std::floor((p.x - sensing_radius) / cs)));
    const int i1 = std::min(map.width_cells() - 1, static_cast<int>(std::floor((p.x + sensing_radius) / cs)));
    const int j0 = std::max(0, static_cast<int>(std::floor((p.y - sensing_radius) / cs)));
    const int j1 = std::min(map.height_cells() - 1, static_cast<int>(std::floor((p.y + sensing_radius) / cs)));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (in_disk(p, sensing_radius, map.cell_center(i, j))) map.set(i, j, true);
  }
  return map;
}

std::vector<GridCell> cells_in(const CoverageMap& map, const Rect& region) {
  std::vector<GridCell> out;
  for (int j = 0; j < map.height_cells(); ++j)
    for (int i = 0; i < map.width_cells(); ++i)
      if (region.contains(map.cell_center(i, j))) out.push_back({i, j});
  return out;
}

std::vector<std::uint8_t> region_mask(const CoverageMap& map, const Rect& region) {
  std::vector<std::uint8_t> mask(map.cell_count(), 0);
  for (int j = 0; j < map.height_cells(); ++j)
    for (int i = 0; i < map.width_cells(); ++i)
      if (region.contains(map.cell_center(i, j))) mask[static_cast<std::size_t>(j) * map.width_cells() + i] = 1;
  return mask;
}

HoleSet find_coverage_holes(const CoverageMap& map, std::optional<Rect> region) {
  if (!region) {
    const std::vector<std::uint8_t> all(map.cell_count(), 1);
    return find_coverage_holes(map, std::span<const std::uint8_t>(all));
  }
  const auto mask = region_mask(map, *region);
  return find_coverage_holes(map, std::span<const std::uint8_t>(mask));
}

HoleSet find_coverage_holes(const CoverageMap& map, std::span<const std::uint8_t> monitored) {
  if (monitored.size() != map.cell_count()) throw DomainError("find_coverage_holes: mask size mismatch");
  HoleSet out;
  const int w = map.width_cells();
  const int h = map.height_cells();
  auto considered = [&](int i, int j) {
    return map.in_grid(i, j) && !map.covered(i, j) && monitored[static_cast<std::size_t>(j) * w + i] != 0;
  };

  std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
  std::vector<GridCell> stack;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      if (!considered(i, j)) continue;
      out.cells.push_back({i, j});
      if (visited[static_cast<std::size_t>(j) * w + i]) continue;

      HoleComponent comp;
      stack.push_back({i, j});
      visited[static_cast<std::size_t>(j) * w + i] = 1;
      while (!stack.empty()) {
        const GridCell c = stack.back();
        stack.pop_back();
        comp.cells.push_back(c);
        constexpr int di[4] = {1, -1, 0, 0};
        constexpr int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int ni = c.i + di[k];
          const int nj = c.j + dj[k];
          if (!considered(ni, nj)) continue;
          auto& v = visited[static_cast<std::size_t>(nj) * w + ni];
          if (v) continue;
          v = 1;
          stack.push_back({ni, nj});
        }
      }
      std::sort(comp.cells.begin(), comp.cells.end(),
                [](GridCell a, GridCell b) { return a.j != b.j ? a.j < b.j : a.i < b.i; });
      double sx = 0.0, sy = 0.0;
      for (const auto& c : comp.cells) {
        const Position ctr = map.cell_center(c.i, c.j);
        sx += ctr.x;
        sy += ctr.y;
      }
      comp.centroid = {sx / comp.cells.size(), sy / comp.cells.size()};
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

double coverage_fraction(const CoverageMap& map) {
  if (map.cell_count() == 0) return 0.0;
  return static_cast<double>(map.covered_count()) / static_cast<double>(map.cell_count());
}

double coverage_fraction(const CoverageMap& map, const Rect& region) {
  std::size_t total = 0, covered = 0;
  for (int j = 0; j < map.height_cells(); ++j)
    for (int i = 0; i < map.width_cells(); ++i)
      if (region.contains(map.cell_center(i, j))) {
        ++total;
        covered += map.covered(i, j) ? 1 : 0;
      }
  return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

std::string to_text(const CoverageMap& map) {
  std::string out;
  out.reserve(static_cast<std::size_t>(map.width_cells() + 1) * map.height_cells());
  for (int j = 0; j < map.height_cells(); ++j) {
    for (int i = 0; i < map.width_cells(); ++i) out.push_back(map.covered(i, j) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

std::string to_csv(const CoverageMap& map) {
  std::string out = "i,j,covered\n";
  char line[48];
  for (int j = 0; j < map.height_cells(); ++j)
    for (int i = 0; i < map.width_cells(); ++i) {
      std::snprintf(line, sizeof line, "%d,%d,%d\n", i, j, map.covered(i, j) ? 1 : 0);
      out += line;
    }
  return out;
}

// ---------------------------------------------------------------------------

CoverageCounter::CoverageCounter(const CoverageMap& shape, double sensing_radius, const Rect& region)
    : width_(shape.width_cells()), height_(shape.height_cells()), cell_size_(shape.cell_size()),
      radius_(sensing_radius), counts_(shape.cell_count(), 0), in_region_(shape.cell_count(), 0) {
  for (int j = 0; j < height_; ++j)
    for (int i = 0; i < width_; ++i)
      if (region.contains(shape.cell_center(i, j))) {
        in_region_[index(i, j)] = 1;
        ++holes_;
      }
}

CoverageCounter::CoverageCounter(const CoverageMap& shape, double sensing_radius,
                                 std::span<const std::uint8_t> monitored)
    : width_(shape.width_cells()), height_(shape.height_cells()), cell_size_(shape.cell_size()),
      radius_(sensing_radius), counts_(shape.cell_count(), 0), in_region_(monitored.begin(), monitored.end()) {
  if (monitored.size() != shape.cell_count()) throw DomainError("CoverageCounter: mask size mismatch");
  for (std::uint8_t m : in_region_) holes_ += m ? 1 : 0;
}

template <typename F>
void CoverageCounter::for_cells_in_disk(Position p, F&& f) const {
  const int i0 = std::max(0, static_cast<int>(std::floor((p.x - radius_) / cell_size_)));
  const int i1 = std::min(width_ - 1, static_cast<int>(std::floor((p.x + radius_) / cell_size_)));
  const int j0 = std::max(0, static_cast<int>(std::floor((p.y - radius_) / cell_size_)));
  const int j1 = std::min(height_ - 1, static_cast<int>(std::floor((p.y + radius_) / cell_size_)));
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      const Position c{(i + 0.5) * cell_size_, (j + 0.5) * cell_size_};
      if (in_disk(p, radius_, c)) f(i, j);
    }
}

void CoverageCounter::add(Position p) {
  for_cells_in_disk(p, [&](int i, int j) {
    const std::size_t k = index(i, j);
    if (counts_[k]++ == 0 && in_region_[k]) --holes_;
  });
}

void CoverageCounter::remove(Position p) {
  for_cells_in_disk(p, [&](int i, int j) {
    const std::size_t k = index(i, j);
    if (--counts_[k] == 0 && in_region_[k]) ++holes_;
  });
}

long CoverageCounter::hole_delta(Position from, Position to) const {
  long delta = 0;
  for_cells_in_disk(from, [&](int i, int j) {
    const std::size_t k = index(i, j);
    if (in_region_[k] && counts_[k] == 1 && !in_disk(to, radius_, {(i + 0.5) * cell_size_, (j + 0.5) * cell_size_}))
      ++delta;
  });
  for_cells_in_disk(to, [&](int i, int j) {
    const std::size_t k = index(i, j);
    if (in_region_[k] && counts_[k] == 0) --delta;
  });
  return delta;
}

std::size_t CoverageCounter::sole_cover(Position p) const {
  std::size_t n = 0;
  for_cells_in_disk(p, [&](int i, int j) {
    const std::size_t k = index(i, j);
    if (in_region_[k] && counts_[k] == 1) ++n;
  });
  return n;
}

CoverageMap CoverageCounter::snapshot() const {
  CoverageMap map(width_, height_, cell_size_);
  for (int j = 0; j < height_; ++j)
    for (int i = 0; i < width_; ++i) map.set(i, j, counts_[index(i, j)] > 0);
  return map;
}

}  // namespace holesim
