#pragma once

// Grid kernels over the uniform torus grid x_j = 2 pi j / N. Each kernel has
// a serial reference and an OpenMP variant. Sums reduce per slab of the
// leading index, then across slabs in index order, so both variants return
// bitwise identical results.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace symcartan {

enum class Exec { serial, parallel };

using GridFunction = std::function<double(std::span<const double>)>;

/// Number of grid points N^n.
std::int64_t grid_points(int n, int N);
/// Coordinates of the flat grid index.
void grid_point(int n, int N, std::int64_t index, std::span<double> x);

/// Mean of f over the grid (the trapezoidal rule for periodic f).
double grid_mean(int n, int N, const GridFunction& f, Exec exec = Exec::parallel);
/// Componentwise mean of a vector-valued f writing `count` values per point.
std::vector<double> grid_mean_multi(int n, int N, int count,
                                    const std::function<void(std::span<const double>, std::span<double>)>& f,
                                    Exec exec = Exec::parallel);
/// Minimum of f over the grid.
double grid_min(int n, int N, const GridFunction& f, Exec exec = Exec::parallel);
/// Maximum of f over an explicit point list.
double points_max(const std::vector<std::vector<double>>& points, const GridFunction& f,
                  Exec exec = Exec::parallel);

/// out[i] = f(i) for i in [0, count); results land in index order.
template <class T>
std::vector<T> indexed_map(int count, const std::function<T(int)>& f, Exec exec = Exec::parallel);

int worker_threads();

}  // namespace symcartan

#include "symcartan/kernels_impl.hpp"
