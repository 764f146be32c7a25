#include "symcartan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symcartan {

std::int64_t grid_points(int n, int N)
{
    if (n < 1 || N < 1) throw std::invalid_argument("grid needs positive dimension and size");
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) p *= N;
    return p;
}

void grid_point(int n, int N, std::int64_t index, std::span<double> x)
{
    const double h = 2 * std::numbers::pi / N;
    for (int i = n - 1; i >= 0; --i) {
        x[i] = h * static_cast<double>(index % N);
        index /= N;
    }
}

namespace {

// Sum over one slab (fixed leading index) in index order.
double slab_sum(int n, int N, int slab, const GridFunction& f)
{
    const std::int64_t per = grid_points(n, N) / N;
    std::vector<double> x(n);
    double s = 0;
    for (std::int64_t j = 0; j < per; ++j) {
        grid_point(n, N, slab * per + j, x);
        s += f(x);
    }
    return s;
}

double slab_min(int n, int N, int slab, const GridFunction& f)
{
    const std::int64_t per = grid_points(n, N) / N;
    std::vector<double> x(n);
    double m = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < per; ++j) {
        grid_point(n, N, slab * per + j, x);
        m = std::min(m, f(x));
    }
    return m;
}

template <class Reduce>
std::vector<double> per_slab(int N, Exec exec, Reduce reduce)
{
    std::vector<double> slabs(static_cast<std::size_t>(N));
    if (exec == Exec::serial) {
        for (int s = 0; s < N; ++s) slabs[s] = reduce(s);
        return slabs;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(N));
#pragma omp parallel for schedule(static)
    for (int s = 0; s < N; ++s) {
        try {
            slabs[s] = reduce(s);
        } catch (...) {
            errors[s] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return slabs;
}

}  // namespace

double grid_mean(int n, int N, const GridFunction& f, Exec exec)
{
    const auto slabs = per_slab(N, exec, [&](int s) { return slab_sum(n, N, s, f); });
    double total = 0;
    for (double v : slabs) total += v;
    return total / static_cast<double>(grid_points(n, N));
}

std::vector<double> grid_mean_multi(int n, int N, int count,
                                    const std::function<void(std::span<const double>, std::span<double>)>& f, Exec exec)
{
    const std::int64_t per = grid_points(n, N) / N;
    std::vector<std::vector<double>> slabs(static_cast<std::size_t>(N), std::vector<double>(count, 0.0));
    auto run = [&](int s) {
        std::vector<double> x(n), out(count);
        for (std::int64_t j = 0; j < per; ++j) {
            grid_point(n, N, s * per + j, x);
            std::fill(out.begin(), out.end(), 0.0);
            f(x, out);
            for (int c = 0; c < count; ++c) slabs[s][c] += out[c];
        }
    };
    if (exec == Exec::serial) {
        for (int s = 0; s < N; ++s) run(s);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(N));
#pragma omp parallel for schedule(static)
        for (int s = 0; s < N; ++s) {
            try {
                run(s);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<double> total(count, 0.0);
    for (const auto& slab : slabs)
        for (int c = 0; c < count; ++c) total[c] += slab[c];
    for (auto& t : total) t /= static_cast<double>(grid_points(n, N));
    return total;
}

double grid_min(int n, int N, const GridFunction& f, Exec exec)
{
    const auto slabs = per_slab(N, exec, [&](int s) { return slab_min(n, N, s, f); });
    return *std::min_element(slabs.begin(), slabs.end());
}

double points_max(const std::vector<std::vector<double>>& points, const GridFunction& f, Exec exec)
{
    const auto values = indexed_map<double>(
        static_cast<int>(points.size()), [&](int i) { return f(points[i]); }, exec);
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    return m;
}

int worker_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace symcartan
