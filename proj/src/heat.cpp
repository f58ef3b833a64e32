#include "geoplan/heat.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "geoplan/io_util.hpp"

namespace geoplan {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

constexpr double kNormEps = 1e-9;

/// Maps reachable cells to solver indices; -1 elsewhere.
struct CellIndexMap {
  std::vector<int> to_solver;
  std::vector<int> to_cell;

  CellIndexMap(const ScalarGrid& grid, const std::vector<std::uint8_t>& active,
               int skip_cell = -1) {
    to_solver.assign(grid.cell_count(), -1);
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
      if (active[i] && static_cast<int>(i) != skip_cell) {
        to_solver[i] = static_cast<int>(to_cell.size());
        to_cell.push_back(static_cast<int>(i));
      }
    }
  }
  int size() const { return static_cast<int>(to_cell.size()); }
};

Vec solve_spd(const SpMat& a, const Vec& b, double tolerance) {
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(tolerance);
  cg.setMaxIterations(20 * a.rows() + 1000);
  cg.compute(a);
  Vec x = cg.solve(b);
  if (cg.info() != Eigen::Success && cg.error() > 1e-6) {
    throw std::runtime_error("heat: sparse solve failed to converge");
  }
  return x;
}

int locate_source_cell(const ScalarGrid& grid, const Vec& source) {
  const GridCoord c = grid.point_to_cell(source);
  const int idx = grid.linear(c);
  if (!grid.free_mask[idx]) {
    throw std::invalid_argument("source not in freespace");
  }
  return idx;
}

}  // namespace

ScalarGrid diffuse_heat(const ScalarGrid& ws_grid, const Vec& source,
                        const HeatParams& params) {
  const int source_idx = locate_source_cell(ws_grid, source);
  const auto component =
      connected_component(ws_grid, ws_grid.unlinear(source_idx));

  ScalarGrid out = ws_grid;
  out.reachable = component;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    if (!out.free_mask[i]) out.values[i] = kGridSentinel;
  }

  const double h = ws_grid.cell_size;

  if (params.mode == HeatParams::Mode::kClosedForm) {
    // (I - t L) u = delta_source with t = time_step * h^2; the 1/h^2 in L
    // cancels, so entries are resolution independent.
    const double tau = params.time_step;
    CellIndexMap map(ws_grid, component);
    std::vector<Triplet> triplets;
    triplets.reserve(map.size() * 7);
    for (int row = 0; row < map.size(); ++row) {
      const int cell = map.to_cell[row];
      const GridCoord c = ws_grid.unlinear(cell);
      int degree = 0;
      for (int a = 0; a < ws_grid.dimension; ++a) {
        for (int s = -1; s <= 1; s += 2) {
          GridCoord nb = c;
          nb[a] += s;
          if (!ws_grid.in_grid(nb)) continue;
          const int nb_idx = ws_grid.linear(nb);
          if (!component[nb_idx]) continue;
          ++degree;
          triplets.emplace_back(row, map.to_solver[nb_idx], -tau);
        }
      }
      triplets.emplace_back(row, row, 1.0 + tau * degree);
    }
    SpMat m(map.size(), map.size());
    m.setFromTriplets(triplets.begin(), triplets.end());
    Vec rhs = Vec::Zero(map.size());
    rhs[map.to_solver[source_idx]] = 1.0;
    const Vec u = solve_spd(m, rhs, params.solver_tolerance);
    for (int row = 0; row < map.size(); ++row) {
      out.values[map.to_cell[row]] = u[row];
    }
  } else {
    // Gauss-Seidel relaxation of L u = 0 with the source held at 1.
    out.values[source_idx] = 1.0;
    for (int sweep = 0; sweep < params.sweep_count; ++sweep) {
      double residual = 0.0;
      for (std::size_t i = 0; i < out.cell_count(); ++i) {
        if (!component[i] || static_cast<int>(i) == source_idx) continue;
        const GridCoord c = out.unlinear(static_cast<int>(i));
        double sum = 0.0;
        int degree = 0;
        for (int a = 0; a < out.dimension; ++a) {
          for (int s = -1; s <= 1; s += 2) {
            GridCoord nb = c;
            nb[a] += s;
            if (!out.in_grid(nb)) continue;
            const int nb_idx = out.linear(nb);
            if (!component[nb_idx]) continue;
            sum += out.values[nb_idx];
            ++degree;
          }
        }
        if (degree == 0) continue;
        const double next = sum / degree;
        residual = std::max(residual, std::abs(next - out.values[i]));
        out.values[i] = next;
      }
      if (residual < 1e-15) break;
    }
  }
  (void)h;
  return out;
}

std::vector<ScalarGrid> transient_heat_frames(const ScalarGrid& ws_grid,
                                              const Vec& source,
                                              const std::vector<int>& steps) {
  const int source_idx = locate_source_cell(ws_grid, source);

  ScalarGrid state = ws_grid;
  std::fill(state.values.begin(), state.values.end(), 0.0);
  state.values[source_idx] = 1.0;
  // Explicit Euler, factor well under the 1/(2 dim) stability limit.
  const double tau = 0.2 / ws_grid.dimension;

  std::vector<ScalarGrid> frames;
  std::vector<double> next(state.cell_count());
  int done = 0;
  for (int target : steps) {
    for (; done < target; ++done) {
      for (std::size_t i = 0; i < state.cell_count(); ++i) {
        if (!state.free_mask[i]) {
          next[i] = 0.0;
          continue;
        }
        const GridCoord c = state.unlinear(static_cast<int>(i));
        double acc = 0.0;
        int degree = 0;
        for (int a = 0; a < state.dimension; ++a) {
          for (int s = -1; s <= 1; s += 2) {
            GridCoord nb = c;
            nb[a] += s;
            if (!state.in_grid(nb)) continue;
            const int nb_idx = state.linear(nb);
            if (!state.free_mask[nb_idx]) continue;
            acc += state.values[nb_idx] - state.values[i];
            ++degree;
          }
        }
        (void)degree;
        next[i] = state.values[i] + tau * acc;
      }
      state.values.assign(next.begin(), next.end());
    }
    ScalarGrid frame = state;
    for (std::size_t i = 0; i < frame.cell_count(); ++i) {
      if (!frame.free_mask[i]) frame.values[i] = kGridSentinel;
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

ScalarGrid geodesic_distance(const ScalarGrid& heat, double solver_tolerance) {
  const int dim = heat.dimension;
  const double h = heat.cell_size;
  const std::vector<std::uint8_t>& active =
      heat.reachable.empty() ? heat.free_mask : heat.reachable;

  // The source is where the heat peaks.
  int source_idx = -1;
  double u_max = -1.0;
  for (std::size_t i = 0; i < heat.cell_count(); ++i) {
    if (active[i] && heat.values[i] > u_max) {
      u_max = heat.values[i];
      source_idx = static_cast<int>(i);
    }
  }
  if (source_idx < 0) {
    throw std::invalid_argument("geodesic_distance: no reachable heat");
  }

  // Normalized negative heat gradient per active cell (one-sided at walls).
  std::vector<Vec> x_field(heat.cell_count());
  std::vector<std::uint8_t> alive = active;
  for (std::size_t i = 0; i < heat.cell_count(); ++i) {
    if (!active[i]) continue;
    const GridCoord c = heat.unlinear(static_cast<int>(i));
    Vec g = Vec::Zero(dim);
    for (int a = 0; a < dim; ++a) {
      GridCoord cp = c, cm = c;
      cp[a] += 1;
      cm[a] -= 1;
      const bool has_p = heat.in_grid(cp) && active[heat.linear(cp)];
      const bool has_m = heat.in_grid(cm) && active[heat.linear(cm)];
      if (has_p && has_m) {
        g[a] = (heat.values[heat.linear(cp)] - heat.values[heat.linear(cm)]) /
               (2 * h);
      } else if (has_p) {
        g[a] = (heat.values[heat.linear(cp)] - heat.values[i]) / h;
      } else if (has_m) {
        g[a] = (heat.values[i] - heat.values[heat.linear(cm)]) / h;
      }
    }
    const double norm = g.norm();
    if (norm < 1e-300) {
      // Numerically dead region: no usable direction.
      x_field[i] = Vec::Zero(dim);
      alive[i] = 0;
    } else {
      x_field[i] = -g / norm;
    }
  }
  alive[source_idx] = 1;

  // Divergence of X (central where possible, one-sided at walls).
  Vec divergence = Vec::Zero(heat.cell_count());
  for (std::size_t i = 0; i < heat.cell_count(); ++i) {
    if (!active[i]) continue;
    const GridCoord c = heat.unlinear(static_cast<int>(i));
    double div = 0.0;
    for (int a = 0; a < dim; ++a) {
      GridCoord cp = c, cm = c;
      cp[a] += 1;
      cm[a] -= 1;
      const bool has_p = heat.in_grid(cp) && active[heat.linear(cp)];
      const bool has_m = heat.in_grid(cm) && active[heat.linear(cm)];
      if (has_p && has_m) {
        div += (x_field[heat.linear(cp)][a] - x_field[heat.linear(cm)][a]) /
               (2 * h);
      } else if (has_p) {
        div += (x_field[heat.linear(cp)][a] - x_field[i][a]) / h;
      } else if (has_m) {
        div += (x_field[i][a] - x_field[heat.linear(cm)][a]) / h;
      }
    }
    divergence[i] = div;
  }

  // Grounded Poisson system: (-L) d = -div(X) with d(source) = 0.
  CellIndexMap map(heat, active, source_idx);
  std::vector<Triplet> triplets;
  triplets.reserve(map.size() * 7);
  Vec rhs = Vec::Zero(map.size());
  const double inv_h2 = 1.0 / (h * h);
  for (int row = 0; row < map.size(); ++row) {
    const int cell = map.to_cell[row];
    const GridCoord c = heat.unlinear(cell);
    int degree = 0;
    for (int a = 0; a < dim; ++a) {
      for (int s = -1; s <= 1; s += 2) {
        GridCoord nb = c;
        nb[a] += s;
        if (!heat.in_grid(nb)) continue;
        const int nb_idx = heat.linear(nb);
        if (!active[nb_idx]) continue;
        ++degree;
        if (nb_idx != source_idx) {
          triplets.emplace_back(row, map.to_solver[nb_idx], -inv_h2);
        }
      }
    }
    triplets.emplace_back(row, row, degree * inv_h2);
    rhs[row] = -divergence[cell];
  }
  SpMat a(map.size(), map.size());
  a.setFromTriplets(triplets.begin(), triplets.end());

  ScalarGrid out = heat;
  out.reachable = alive;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    if (!out.free_mask[i]) out.values[i] = kGridSentinel;
  }
  if (map.size() > 0) {
    const Vec d = solve_spd(a, rhs, solver_tolerance);
    for (int row = 0; row < map.size(); ++row) {
      out.values[map.to_cell[row]] = std::max(d[row], 0.0);
    }
  }
  out.values[source_idx] = 0.0;
  // Cells that never received heat keep a sentinel distance.
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    if (out.free_mask[i] && !active[i]) out.values[i] = kGridSentinel;
  }
  return out;
}

GeodesicField::GeodesicField(ScalarGrid distance_grid, Vec source,
                             double blend_radius)
    : distance_(std::move(distance_grid)),
      source_(std::move(source)),
      blend_radius_(blend_radius) {
  ScalarGrid filled = distance_;
  std::vector<std::uint8_t> valid(filled.cell_count(), 0);
  for (std::size_t i = 0; i < filled.cell_count(); ++i) {
    valid[i] = std::isfinite(filled.values[i]) ? 1 : 0;
  }
  fill_masked_cells(filled, valid);
  spline_ = CubicSplineField(filled);
}

double GeodesicField::distance(const Vec& p) const {
  return query(p, false).distance;
}

Vec GeodesicField::flow(const Vec& p) const { return query(p, false).flow; }

GeodesicField::Sample GeodesicField::query(const Vec& p,
                                           bool with_jacobian) const {
  const int dim = distance_.dimension;
  Sample out;
  out.flow = Vec::Zero(dim);
  out.flow_jacobian = Mat::Zero(dim, dim);

  const Vec to_p = p - source_;
  const double r = to_p.norm();

  Vec gs(dim);
  Mat hs(dim, dim);
  bool clamped = false;
  const double ds =
      spline_.evaluate(p, &gs, with_jacobian ? &hs : nullptr, &clamped);
  out.clamped = clamped;

  const double blend = blend_radius_ > 0 ? blend_radius_ : 0.0;
  const double w = (blend > 0) ? std::min(r / blend, 1.0) : 1.0;

  if (r < 1e-12) {
    // Exactly at the goal: pure Euclidean limit of the blend.
    out.distance = 0.0;
    return out;
  }

  out.distance = w * ds + (1.0 - w) * r;

  const double ns = gs.norm();
  const Vec fs = -gs / (ns + kNormEps);
  const Vec u = to_p / r;
  const Vec fe = -u;
  const Vec v = w * fs + (1.0 - w) * fe;
  const double nv = v.norm();
  out.flow = v / (nv + kNormEps);

  if (with_jacobian) {
    const Mat eye = Mat::Identity(dim, dim);
    // d(fs)/dp through the spline hessian.
    const Mat proj_s =
        eye / (ns + kNormEps) -
        gs * gs.transpose() / (std::max(ns, kNormEps) * (ns + kNormEps) * (ns + kNormEps));
    Mat jv = w * (-proj_s * hs);
    if (w < 1.0) {
      // Inside the blend region; floor r to keep the sink Jacobian bounded.
      const double rf = std::max(r, 1e-4);
      const Mat jfe = -(eye - u * u.transpose()) / rf;
      const Vec grad_w = u / blend;
      jv += (1.0 - w) * jfe + (fs - fe) * grad_w.transpose();
    }
    const Mat proj_v =
        eye / (nv + kNormEps) -
        v * v.transpose() / (std::max(nv, kNormEps) * (nv + kNormEps) * (nv + kNormEps));
    out.flow_jacobian = proj_v * jv;
  }
  return out;
}

GeodesicField build_geodesic_field(const Workspace& ws, const Vec& goal,
                                   const FieldBuildParams& params) {
  if (sdf_workspace(goal, ws).value <= 0.0) {
    throw std::invalid_argument("goal not in freespace");
  }
  ScalarGrid grid = rasterize_workspace(ws, params.resolution);
  const GridCoord goal_cell = grid.point_to_cell(goal);
  if (!grid.is_free(goal_cell)) {
    throw std::invalid_argument("goal cell not resolved as free at this resolution");
  }

  const ScalarGrid heat = diffuse_heat(grid, goal, params.heat);
  const ScalarGrid dist = geodesic_distance(heat, params.heat.solver_tolerance);

  GeodesicField field(dist, goal, params.blend_radius_cells * grid.cell_size);

  // Passages the grid barely resolves: free cells with less than one cell of
  // clearance.
  for (std::size_t i = 0; i < dist.cell_count(); ++i) {
    if (!dist.free_mask[i] || !dist.is_reachable(static_cast<int>(i))) continue;
    const Vec c = dist.cell_center(dist.unlinear(static_cast<int>(i)));
    if (sdf_workspace(c, ws).value < dist.cell_size) {
      field.add_warning("passage width near grid resolution");
      break;
    }
  }
  return field;
}

void save_grid(const ScalarGrid& grid, const std::string& path) {
  std::string buf;
  auto put = [&buf](const void* p, std::size_t size) {
    buf.append(static_cast<const char*>(p), size);
  };
  const char magic[4] = {'G', 'P', 'L', 'F'};
  put(magic, 4);
  const std::uint32_t version = 1;
  const std::uint32_t dim = grid.dimension;
  put(&version, 4);
  put(&dim, 4);
  for (int a = 0; a < 3; ++a) {
    const std::uint32_t s = grid.shape[a];
    put(&s, 4);
  }
  double origin[3] = {0, 0, 0};
  for (int a = 0; a < grid.dimension; ++a) origin[a] = grid.origin[a];
  put(origin, sizeof(origin));
  put(&grid.cell_size, 8);
  put(grid.values.data(), grid.values.size() * 8);
  put(grid.free_mask.data(), grid.free_mask.size());
  const std::uint8_t has_reachable = grid.reachable.empty() ? 0 : 1;
  put(&has_reachable, 1);
  if (has_reachable) put(grid.reachable.data(), grid.reachable.size());
  atomic_write_file(path, buf);
}

std::optional<ScalarGrid> load_grid(const std::string& path) {
  std::string buf;
  try {
    buf = read_file(path);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  std::size_t off = 0;
  auto get = [&](void* p, std::size_t size) -> bool {
    if (off + size > buf.size()) return false;
    std::memcpy(p, buf.data() + off, size);
    off += size;
    return true;
  };
  char magic[4];
  std::uint32_t version = 0, dim = 0;
  if (!get(magic, 4) || std::memcmp(magic, "GPLF", 4) != 0) return std::nullopt;
  if (!get(&version, 4) || version != 1) return std::nullopt;
  if (!get(&dim, 4)) return std::nullopt;
  ScalarGrid g;
  g.dimension = static_cast<int>(dim);
  for (int a = 0; a < 3; ++a) {
    std::uint32_t s = 0;
    if (!get(&s, 4)) return std::nullopt;
    g.shape[a] = static_cast<int>(s);
  }
  double origin[3];
  if (!get(origin, sizeof(origin))) return std::nullopt;
  g.origin = Vec(g.dimension);
  for (int a = 0; a < g.dimension; ++a) g.origin[a] = origin[a];
  if (!get(&g.cell_size, 8)) return std::nullopt;
  g.values.resize(g.cell_count());
  g.free_mask.resize(g.cell_count());
  if (!get(g.values.data(), g.values.size() * 8)) return std::nullopt;
  if (!get(g.free_mask.data(), g.free_mask.size())) return std::nullopt;
  std::uint8_t has_reachable = 0;
  if (!get(&has_reachable, 1)) return std::nullopt;
  if (has_reachable) {
    g.reachable.resize(g.cell_count());
    if (!get(g.reachable.data(), g.reachable.size())) return std::nullopt;
  }
  return g;
}

std::uint64_t field_cache_key(const Workspace& ws, const Vec& goal,
                              int resolution) {
  std::ostringstream ss;
  ss.precision(17);
  ss << ws.dimension << ' ' << resolution << ' ' << ws.hessian_clamp << ' ';
  for (int a = 0; a < ws.dimension; ++a) {
    ss << ws.bounds.min[a] << ' ' << ws.bounds.max[a] << ' ';
  }
  for (const auto& obstacle : ws.obstacles) {
    if (const auto* box = std::get_if<BoxObstacle>(&obstacle)) {
      ss << "B " << box->center.transpose() << ' '
         << box->half_extents.transpose() << ' ' << box->rotation << ' ';
    } else if (const auto* sphere = std::get_if<SphereObstacle>(&obstacle)) {
      ss << "S " << sphere->center.transpose() << ' ' << sphere->radius << ' ';
    }
  }
  for (int a = 0; a < goal.size(); ++a) ss << goal[a] << ' ';
  return fnv1a_64(ss.str());
}

}  // namespace geoplan
