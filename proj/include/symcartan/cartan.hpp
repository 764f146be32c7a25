#pragma once

#include "symcartan/forms.hpp"
#include "symcartan/kernels.hpp"
#include "symcartan/numeric.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace symcartan {

/// A = omega + e with omega h-valued and e p-valued.
struct CartanConnection {
    LieForm omega;
    LieForm coframe;

    const AlgebraPtr& algebra() const { return omega.algebra(); }
    LieForm combined() const { return omega + coframe; }
};

/// Validates supports and degrees.
CartanConnection make_connection(LieForm omega, LieForm coframe);
/// Splits a g-valued 1-form by algebra index.
CartanConnection split_connection(const LieForm& a);

struct CurvatureReport {
    LieForm F;
    LieForm F_h;
    LieForm F_p;
    LieForm R;
};

/// dA + 1/2 [A, A]
LieForm curvature_form(const LieForm& a);
CurvatureReport curvature(const CartanConnection& a);
CartanConnection involute_connection(const CartanConnection& a);

struct BianchiResiduals {
    LieForm full;        // d_A F
    LieForm rotational;  // d_omega R
    LieForm torsional;   // d_omega d_omega e + [e, R]
};
BianchiResiduals bianchi_residuals(const CartanConnection& a);

struct CoframeCheck {
    bool nondegenerate = false;
    double min_abs_det = 0;
    int grid = 0;
};

/// Pointwise matrix e^a_mu(x).
Eigen::MatrixXd coframe_matrix(const LieForm& coframe, std::span<const double> x);
CoframeCheck coframe_check(const LieForm& coframe, int grid = 16, double tolerance = 1e-8,
                           Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// Numeric connections on a coordinate chart.

/// Components A_i(x) as matrices in the fundamental representation.
using ConnectionField = std::function<std::vector<Eigen::MatrixXd>(std::span<const double>)>;

/// Scaling-and-squaring Taylor exponential.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& x);

/// A = g^{-1} dg for g(x) = exp(sum_i x^i T_i), evaluated through the series
/// sum_k (-1)^k / (k+1)! ad_X^k (T_i).
ConnectionField maurer_cartan_field(const AlgebraPtr& alg, const std::vector<int>& generators);
/// Bound on the truncated tail of that series for |x^i| <= half_width.
double maurer_cartan_remainder(const AlgebraPtr& alg, const std::vector<int>& generators, double half_width);

struct FlatnessReport {
    double max_curvature = 0;  // max over points of the Frobenius norm of F_ij
    int points = 0;
};

/// F_ij = d_i A_j - d_j A_i + [A_i, A_j] with Richardson-extrapolated central
/// differences at the given points.
FlatnessReport flatness(const ConnectionField& a, const std::vector<std::vector<double>>& points,
                        double step = 1e-2, Exec exec = Exec::parallel);
/// Uniform samples^n points in the box [-half_width, half_width]^n.
std::vector<std::vector<double>> box_points(int n, int samples, double half_width);

struct ChartModel {
    std::string name;
    AlgebraName algebra;
    std::vector<int> generators;
};
/// de Sitter, Minkowski and anti de Sitter exponential charts for n = 3, 4.
std::vector<ChartModel> bundled_charts();

// ---------------------------------------------------------------------------
// Paths and holonomy.

struct PathSegment {
    enum class Kind { line, arc } kind = Kind::line;
    std::vector<double> from, to;           // line
    std::vector<double> center;             // arc
    double radius = 0;
    int plane_i = 0, plane_j = 1;
    double start = 0, end = 0;              // arc angles
};

struct Path {
    int dim = 0;
    std::vector<PathSegment> segments;
};

std::vector<double> segment_point(const PathSegment& s, int dim, double t);
std::vector<double> segment_velocity(const PathSegment& s, int dim, double t);

/// Closed square loop starting at corner with side length in plane (i, j).
Path square_loop(int dim, std::vector<double> corner, double side, int i = 0, int j = 1);
Path circle_loop(int dim, std::vector<double> center, double radius, int i = 0, int j = 1);

struct HolonomyResult {
    Eigen::MatrixXd matrix;
    double drift = 0;
    int steps = 0;
};

/// Path-ordered product of exp(-A(gamma'(t_mid)) dt) over `steps` equal
/// parameter steps per segment, later steps multiplying on the left.
HolonomyResult holonomy(const ConnectionField& a, const Path& path, int steps, const AlgebraDescriptor& alg);
/// Deviation of a matrix from the group preserving diag(eta, eps).
double group_drift(const Eigen::MatrixXd& h, const AlgebraDescriptor& alg);
/// Rotation angle of a 3x3 orthogonal matrix.
double rotation_angle(const Eigen::MatrixXd& h);

/// Levi-Civita connection of the unit sphere in the equal-area chart (phi, z):
/// omega = z dphi J (so the holonomy angle equals the enclosed chart area).
ConnectionField sphere_model();
/// Ball of unit radius rolling on the plane: A = dx P0 + dy P1 in so3.
ConnectionField hamster_model();

}  // namespace symcartan
