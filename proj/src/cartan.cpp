#include "symcartan/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace symcartan {

namespace {

constexpr int kSeriesTerms = 30;

void require_one_form(const LieForm& f, const char* what)
{
    if (f.degree() != 1) throw std::invalid_argument(std::string(what) + " must be a 1-form");
}

}  // namespace

CartanConnection make_connection(LieForm omega, LieForm coframe)
{
    require_one_form(omega, "spin connection");
    require_one_form(coframe, "coframe");
    if (omega.algebra() != coframe.algebra() || omega.torus_dim() != coframe.torus_dim())
        throw std::invalid_argument("connection parts live on different algebras or tori");
    if (!omega.p_part().is_zero()) throw std::invalid_argument("spin connection has p-components");
    if (!coframe.h_part().is_zero()) throw std::invalid_argument("coframe has h-components");
    return {std::move(omega), std::move(coframe)};
}

CartanConnection split_connection(const LieForm& a)
{
    require_one_form(a, "connection");
    return {a.h_part(), a.p_part()};
}

LieForm curvature_form(const LieForm& a)
{
    return exterior_d(a) + Rational(1, 2) * bracket(a, a);
}

CurvatureReport curvature(const CartanConnection& a)
{
    CurvatureReport r;
    r.F = curvature_form(a.combined());
    r.F_h = r.F.h_part();
    r.F_p = r.F.p_part();
    r.R = curvature_form(a.omega);
    return r;
}

CartanConnection involute_connection(const CartanConnection& a)
{
    return {a.omega, -a.coframe};
}

BianchiResiduals bianchi_residuals(const CartanConnection& a)
{
    const auto A = a.combined();
    const auto F = curvature_form(A);
    const auto R = curvature_form(a.omega);
    const auto torsion = covariant_d(a.omega, a.coframe);
    return {covariant_d(A, F), covariant_d(a.omega, R), covariant_d(a.omega, torsion) + bracket(a.coframe, R)};
}

Eigen::MatrixXd coframe_matrix(const LieForm& coframe, std::span<const double> x)
{
    const auto& alg = *coframe.algebra();
    const int n = coframe.torus_dim();
    if (alg.dim_p() != n) throw std::invalid_argument("coframe check needs torus dimension equal to dim p");
    Eigen::MatrixXd m(n, n);
    for (int a = 0; a < n; ++a)
        for (int mu = 0; mu < n; ++mu) m(a, mu) = coframe.part(alg.dim_h() + a)[static_cast<std::size_t>(mu)].evaluate(x);
    return m;
}

CoframeCheck coframe_check(const LieForm& coframe, int grid, double tolerance, Exec exec)
{
    require_one_form(coframe, "coframe");
    if (coframe.algebra()->dim_p() != coframe.torus_dim())
        throw std::invalid_argument("coframe check needs torus dimension equal to dim p");
    if (grid < 1) throw std::invalid_argument("grid size must be positive");
    CoframeCheck c;
    c.grid = grid;
    c.min_abs_det = grid_min(
        coframe.torus_dim(), grid, [&](std::span<const double> x) { return std::abs(coframe_matrix(coframe, x).determinant()); },
        exec);
    c.nondegenerate = c.min_abs_det > tolerance;
    return c;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& x)
{
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Eigen::MatrixXd y = x / std::ldexp(1.0, squarings);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(x.rows(), x.cols());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * y / k;
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

ConnectionField maurer_cartan_field(const AlgebraPtr& alg, const std::vector<int>& generators)
{
    std::vector<Eigen::MatrixXd> t;
    for (int g : generators) {
        if (g < 0 || g >= alg->dim()) throw std::invalid_argument("chart generator index out of range");
        t.push_back(to_eigen(alg->basis[g]));
    }
    return [t](std::span<const double> x) {
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(t[0].rows(), t[0].cols());
        for (std::size_t i = 0; i < t.size(); ++i) X += x[i] * t[i];
        std::vector<Eigen::MatrixXd> a;
        a.reserve(t.size());
        for (const auto& ti : t) {
            Eigen::MatrixXd term = ti;
            Eigen::MatrixXd sum = ti;
            double fact = 1;  // (k+1)!
            for (int k = 1; k <= kSeriesTerms; ++k) {
                term = X * term - term * X;
                fact *= (k + 1);
                sum += ((k % 2) ? -1.0 : 1.0) / fact * term;
            }
            a.push_back(std::move(sum));
        }
        return a;
    };
}

double maurer_cartan_remainder(const AlgebraPtr& alg, const std::vector<int>& generators, double half_width)
{
    double xnorm = 0, tnorm = 0;
    for (int g : generators) {
        const double n = to_eigen(alg->basis[g]).norm();
        xnorm += half_width * n;
        tnorm = std::max(tnorm, n);
    }
    const double ad = 2 * xnorm;  // |ad_X| <= 2 |X|
    // tail sum_{k > K} ad^k / (k+1)! <= ad^{K+1} / (K+2)! / (1 - ad / (K+3))
    double lead = 1;
    for (int k = 1; k <= kSeriesTerms + 1; ++k) lead *= ad / (k + 1);
    if (ad >= kSeriesTerms + 3) return INFINITY;
    return tnorm * lead / (1 - ad / (kSeriesTerms + 3));
}

namespace {

// Richardson-extrapolated central difference of the j-th component along i.
Eigen::MatrixXd derivative(const ConnectionField& a, std::span<const double> x, int i, int j, double h)
{
    auto central = [&](double step) {
        std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
        xp[i] += step;
        xm[i] -= step;
        return Eigen::MatrixXd((a(xp)[j] - a(xm)[j]) / (2 * step));
    };
    const Eigen::MatrixXd d1 = central(h), d2 = central(h / 2), d4 = central(h / 4);
    const Eigen::MatrixXd r1 = (4 * d2 - d1) / 3, r2 = (4 * d4 - d2) / 3;
    return (16 * r2 - r1) / 15;
}

}  // namespace

FlatnessReport flatness(const ConnectionField& a, const std::vector<std::vector<double>>& points, double step,
                        Exec exec)
{
    FlatnessReport r;
    r.points = static_cast<int>(points.size());
    r.max_curvature = points_max(
        points,
        [&](std::span<const double> x) {
            const auto A = a(x);
            const int n = static_cast<int>(A.size());
            double worst = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const Eigen::MatrixXd F =
                        derivative(a, x, i, j, step) - derivative(a, x, j, i, step) + A[i] * A[j] - A[j] * A[i];
                    worst = std::max(worst, F.norm());
                }
            return worst;
        },
        exec);
    return r;
}

std::vector<std::vector<double>> box_points(int n, int samples, double half_width)
{
    std::vector<std::vector<double>> pts;
    const auto total = grid_points(n, samples);
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<double> x(n);
        auto k = idx;
        for (int i = n - 1; i >= 0; --i) {
            const auto c = static_cast<double>(k % samples);
            x[i] = samples == 1 ? 0.0 : -half_width + 2 * half_width * c / (samples - 1);
            k /= samples;
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

std::vector<ChartModel> bundled_charts()
{
    std::vector<ChartModel> charts;
    auto translations = [](AlgebraName name) {
        auto alg = build_algebra(name);
        std::vector<int> g;
        for (int a = alg->dim_h(); a < alg->dim(); ++a) g.push_back(a);
        return g;
    };
    for (auto [label, name] : std::vector<std::pair<const char*, AlgebraName>>{{"de_sitter_3", AlgebraName::so31},
                                                                             {"minkowski_3", AlgebraName::iso21},
                                                                             {"anti_de_sitter_3", AlgebraName::so22},
                                                                             {"de_sitter_4", AlgebraName::so41},
                                                                             {"minkowski_4", AlgebraName::iso31},
                                                                             {"anti_de_sitter_4", AlgebraName::so32}})
        charts.push_back({label, name, translations(name)});
    return charts;
}

std::vector<double> segment_point(const PathSegment& s, int dim, double t)
{
    std::vector<double> x(dim);
    if (s.kind == PathSegment::Kind::line) {
        for (int i = 0; i < dim; ++i) x[i] = s.from[i] + t * (s.to[i] - s.from[i]);
    } else {
        const double th = s.start + t * (s.end - s.start);
        x = s.center;
        x[s.plane_i] += s.radius * std::cos(th);
        x[s.plane_j] += s.radius * std::sin(th);
    }
    return x;
}

std::vector<double> segment_velocity(const PathSegment& s, int dim, double t)
{
    std::vector<double> v(dim, 0.0);
    if (s.kind == PathSegment::Kind::line) {
        for (int i = 0; i < dim; ++i) v[i] = s.to[i] - s.from[i];
    } else {
        const double th = s.start + t * (s.end - s.start);
        const double w = s.radius * (s.end - s.start);
        v[s.plane_i] = -w * std::sin(th);
        v[s.plane_j] = w * std::cos(th);
    }
    return v;
}

Path square_loop(int dim, std::vector<double> corner, double side, int i, int j)
{
    Path p;
    p.dim = dim;
    auto c = corner;
    const std::vector<std::pair<int, double>> moves = {{i, side}, {j, side}, {i, -side}, {j, -side}};
    for (auto [axis, delta] : moves) {
        PathSegment s;
        s.from = c;
        c[axis] += delta;
        s.to = c;
        p.segments.push_back(s);
    }
    return p;
}

Path circle_loop(int dim, std::vector<double> center, double radius, int i, int j)
{
    PathSegment s;
    s.kind = PathSegment::Kind::arc;
    s.center = std::move(center);
    s.radius = radius;
    s.plane_i = i;
    s.plane_j = j;
    s.start = 0;
    s.end = 2 * M_PI;
    return {dim, {s}};
}

namespace {

void validate(const Path& path)
{
    for (const auto& s : path.segments) {
        if (s.kind == PathSegment::Kind::line) {
            if (static_cast<int>(s.from.size()) != path.dim || static_cast<int>(s.to.size()) != path.dim)
                throw std::invalid_argument("path point has wrong dimension");
            if (s.from == s.to) throw std::invalid_argument("degenerate path segment of zero length");
        } else {
            if (static_cast<int>(s.center.size()) != path.dim) throw std::invalid_argument("arc centre has wrong dimension");
            if (s.radius <= 0 || s.start == s.end) throw std::invalid_argument("degenerate arc segment");
            if (s.plane_i == s.plane_j || s.plane_i < 0 || s.plane_j < 0 || s.plane_i >= path.dim ||
                s.plane_j >= path.dim)
                throw std::invalid_argument("arc plane axes invalid");
        }
    }
}

}  // namespace

HolonomyResult holonomy(const ConnectionField& a, const Path& path, int steps, const AlgebraDescriptor& alg)
{
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    validate(path);
    HolonomyResult r;
    r.steps = steps;
    r.matrix = Eigen::MatrixXd::Identity(alg.matrix_dim, alg.matrix_dim);
    const double dt = 1.0 / steps;
    for (const auto& s : path.segments)
        for (int k = 0; k < steps; ++k) {
            const double t = (k + 0.5) * dt;
            const auto x = segment_point(s, path.dim, t);
            const auto v = segment_velocity(s, path.dim, t);
            const auto comps = a(x);
            if (static_cast<int>(comps.size()) != path.dim) throw std::invalid_argument("connection and path dimension differ");
            Eigen::MatrixXd av = Eigen::MatrixXd::Zero(alg.matrix_dim, alg.matrix_dim);
            for (int i = 0; i < path.dim; ++i) av += v[i] * comps[i];
            r.matrix = matrix_exp(-dt * av) * r.matrix;
        }
    r.drift = group_drift(r.matrix, alg);
    return r;
}

double group_drift(const Eigen::MatrixXd& h, const AlgebraDescriptor& alg)
{
    const int N = alg.matrix_dim;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) g(i, i) = alg.metric[i];
    if (alg.lambda_sign != 0) return (h.transpose() * g * h - g).cwiseAbs().maxCoeff();
    // Affine group: Lorentz block preserves eta, bottom row stays (0, ..., 0, 1).
    const int n = N - 1;
    const Eigen::MatrixXd lam = h.topLeftCorner(n, n);
    const Eigen::MatrixXd eta = g.topLeftCorner(n, n);
    Eigen::VectorXd last = Eigen::VectorXd::Zero(N);
    last(n) = 1;
    return std::max((lam.transpose() * eta * lam - eta).cwiseAbs().maxCoeff(),
                    (h.row(n).transpose() - last).cwiseAbs().maxCoeff());
}

double rotation_angle(const Eigen::MatrixXd& h)
{
    if (h.rows() != 3 || h.cols() != 3) throw std::invalid_argument("rotation angle needs a 3x3 matrix");
    const double c = (h.trace() - 1) / 2;
    const Eigen::Vector3d axis(h(2, 1) - h(1, 2), h(0, 2) - h(2, 0), h(1, 0) - h(0, 1));
    return std::atan2(axis.norm() / 2, c);
}

ConnectionField sphere_model()
{
    auto alg = build_algebra(AlgebraName::so3);
    const Eigen::MatrixXd j = to_eigen(alg->basis[0]);
    return [j](std::span<const double> x) {
        // x = (phi, z)
        return std::vector<Eigen::MatrixXd>{x[1] * j, Eigen::MatrixXd::Zero(3, 3)};
    };
}

ConnectionField hamster_model()
{
    auto alg = build_algebra(AlgebraName::so3);
    const Eigen::MatrixXd p0 = to_eigen(alg->basis[1]), p1 = to_eigen(alg->basis[2]);
    return [p0, p1](std::span<const double>) { return std::vector<Eigen::MatrixXd>{p0, p1}; };
}

}  // namespace symcartan
