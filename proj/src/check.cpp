#include "geoplan/check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace geoplan {

namespace {

int gcd3(int a, int b, int c) { return std::gcd(std::gcd(a, b), c); }

struct Move {
  GridCoord offset;
  double length;                   // in cells
  std::vector<GridCoord> visited;  // supercover cells relative to the start
};

/// Cells a straight segment between two cell centers passes through,
/// including both neighbors on exact boundary crossings.
std::vector<GridCoord> supercover(const GridCoord& delta, int dim) {
  std::set<std::array<int, 3>> cells;
  const int samples = 64 * std::max({std::abs(delta[0]), std::abs(delta[1]),
                                     std::abs(delta[2]), 1});
  for (int s = 0; s <= samples; ++s) {
    const double t = static_cast<double>(s) / samples;
    double x[3] = {t * delta[0], t * delta[1], t * delta[2]};
    std::vector<std::vector<int>> cands(3);
    for (int a = 0; a < 3; ++a) {
      if (a >= dim) {
        cands[a] = {0};
        continue;
      }
      const int base = static_cast<int>(std::lround(x[a]));
      cands[a] = {base};
      if (std::abs(x[a] - (base - 0.5)) < 1e-9) cands[a].push_back(base - 1);
      if (std::abs(x[a] - (base + 0.5)) < 1e-9) cands[a].push_back(base + 1);
    }
    for (int i : cands[0]) {
      for (int j : cands[1]) {
        for (int k : cands[2]) cells.insert({i, j, k});
      }
    }
  }
  std::vector<GridCoord> out;
  for (const auto& c : cells) out.emplace_back(GridCoord(c[0], c[1], c[2]));
  return out;
}

std::vector<Move> neighborhood_moves(int dim) {
  std::vector<Move> moves;
  const int zlo = dim == 3 ? -2 : 0;
  const int zhi = dim == 3 ? 2 : 0;
  for (int dz = zlo; dz <= zhi; ++dz) {
    for (int dy = -2; dy <= 2; ++dy) {
      for (int dx = -2; dx <= 2; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        if (gcd3(std::abs(dx), std::abs(dy), std::abs(dz)) != 1) continue;
        Move m;
        m.offset = GridCoord(dx, dy, dz);
        m.length = std::sqrt(double(dx * dx + dy * dy + dz * dz));
        m.visited = supercover(m.offset, dim);
        moves.push_back(std::move(m));
      }
    }
  }
  return moves;
}

}  // namespace

ScalarGrid dijkstra_distance(const ScalarGrid& grid, const Vec& source) {
  const GridCoord source_cell = grid.point_to_cell(source);
  if (!grid.is_free(source_cell)) {
    throw std::invalid_argument("dijkstra: source not in freespace");
  }
  const auto moves = neighborhood_moves(grid.dimension);

  ScalarGrid out = grid;
  out.reachable.assign(grid.cell_count(), 0);
  std::fill(out.values.begin(), out.values.end(), kGridSentinel);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  const int start = grid.linear(source_cell);
  out.values[start] = 0.0;
  queue.emplace(0.0, start);

  while (!queue.empty()) {
    const auto [dist, idx] = queue.top();
    queue.pop();
    if (dist > out.values[idx]) continue;
    out.reachable[idx] = 1;
    const GridCoord c = grid.unlinear(idx);
    for (const auto& move : moves) {
      const GridCoord nc = c + move.offset;
      if (!grid.in_grid(nc) || !grid.is_free(nc)) continue;
      bool visible = true;
      for (const auto& step : move.visited) {
        const GridCoord mid = c + step;
        if (!grid.in_grid(mid) || !grid.is_free(mid)) {
          visible = false;
          break;
        }
      }
      if (!visible) continue;
      const double nd = dist + move.length * grid.cell_size;
      const int nidx = grid.linear(nc);
      if (nd < out.values[nidx]) {
        out.values[nidx] = nd;
        queue.emplace(nd, nidx);
      }
    }
  }
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    if (!out.free_mask[i]) out.values[i] = kGridSentinel;
  }
  return out;
}

}  // namespace geoplan
