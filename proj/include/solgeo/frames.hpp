#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "solgeo/calculus.hpp"
#include "solgeo/field.hpp"
#include "solgeo/mat.hpp"
#include "solgeo/report.hpp"

namespace solgeo {

using Vec3 = std::array<double, 3>;

/// Small real matrix of dim 2 or 3 whose rows are the frame vectors
/// (e1, e2[, e3]). dim 2 is the plane case.
struct RMat {
    int dim = 3;
    std::array<double, 9> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }

    static RMat identity(int dim) {
        RMat m{dim, {}};
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static RMat zero(int dim) { return RMat{dim, {}}; }

    RMat& operator+=(const RMat& o) {
        for (int i = 0; i < dim * dim; ++i) a[static_cast<std::size_t>(i)] += o.a[static_cast<std::size_t>(i)];
        return *this;
    }
    RMat& operator-=(const RMat& o) {
        for (int i = 0; i < dim * dim; ++i) a[static_cast<std::size_t>(i)] -= o.a[static_cast<std::size_t>(i)];
        return *this;
    }
    RMat& operator*=(double s) {
        for (int i = 0; i < dim * dim; ++i) a[static_cast<std::size_t>(i)] *= s;
        return *this;
    }
    friend RMat operator+(RMat x, const RMat& y) { return x += y; }
    friend RMat operator-(RMat x, const RMat& y) { return x -= y; }
    friend RMat operator*(RMat x, double s) { return x *= s; }
    friend RMat operator*(double s, RMat x) { return x *= s; }

    friend RMat operator*(const RMat& x, const RMat& y) {
        RMat r{x.dim, {}};
        for (int i = 0; i < x.dim; ++i)
            for (int k = 0; k < x.dim; ++k)
                for (int j = 0; j < x.dim; ++j) r(i, j) += x(i, k) * y(k, j);
        return r;
    }

    double fnorm() const {
        double s = 0.0;
        for (int i = 0; i < dim * dim; ++i) s += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
        return std::sqrt(s);
    }
};

inline double node_mag(const RMat& m) { return m.fnorm(); }

using FrameField = Field<RMat>;

/// Frame coefficient matrix: dim 3 gives
///   [0, c1, -c2; -beta c1, 0, c3; beta c2, -c3, 0],
/// dim 2 keeps only the single coefficient c1: [0, c1; -beta c1, 0].
RMat frame_coeff_matrix(int dim, double c1, double c2, double c3, int beta);

/// Exact exponential exp(h * A) for the antisymmetric (beta=+1) coefficient
/// matrix: Rodrigues in dim 3, plane rotation in dim 2.
RMat frame_rotation(int dim, double c1, double c2, double c3, double h);

/// Gram matrix deviation from the metric diag(beta, 1, ..., 1), max entry.
double gram_drift(const RMat& frame, int beta);

/// Metric-orthonormalize the rows (Gram-Schmidt against diag(beta,1,1)).
RMat reorthonormalize(const RMat& frame, int beta);

enum class FrameStepper { rotation_exact, rk4 };

struct FrameLine {
    std::vector<RMat> frames;
    double h = 0.0;
    double origin = 0.0;
    FrameStepper used = FrameStepper::rotation_exact;
};

/// Coefficient triples as a function of the axis coordinate.
using CoeffFn = std::function<CurvatureTriple(double)>;

/// Propagate a seed frame along one axis: n frames at spacing h.
/// beta=+1 uses midpoint-sampled exact rotation steps; beta=-1 falls back to
/// RK4 with metric re-orthonormalization (reported via FrameLine::used).
FrameLine integrate_frame_axis(const RMat& frame0, const CoeffFn& coeffs, int n, double h,
                               double origin = 0.0,
                               FrameStepper stepper = FrameStepper::rotation_exact);

/// Per-axis analytic coefficient triples on a multi-axis grid.
struct ConnectionCoefficients {
    int beta = +1;
    std::map<std::string, std::function<CurvatureTriple(const std::array<double, 4>&)>> axes;
};

/// Fill a 2-axis grid with frames by integrating the first axis along the
/// second axis' origin line, then the second axis from every node of it.
FrameField integrate_frame_grid(const RMat& frame0, const ConnectionCoefficients& coeffs,
                                const GridSpec& spec, const std::string& first,
                                const std::string& second);

/// Cross-derivative compatibility of a grid frame field: for each axis,
/// || partial_a E - A_a E ||. All residuals are O(h^2) iff the coefficient
/// system satisfies its zero-curvature equations.
ResidualReport frame_compatibility_residual(const FrameField& frames,
                                            const ConnectionCoefficients& coeffs);

/// Paired-coordinate frame transport (e)_xi1 = a (e)_xi3 + C (e) over a
/// (xi1, xi3) grid, periodic in xi3, RK4 in xi1 with central differences.
/// Throws on CFL violation |a| h1/h3 > 1.
FrameField integrate_mmlxviii(const std::vector<RMat>& boundary,
                              const std::function<CurvatureTriple(const std::array<double, 4>&)>& coeffs,
                              double a, const GridSpec& spec);

/// Positions from a frame line by cumulative trapezoidal integration of e1.
std::vector<Vec3> reconstruct_curve(const FrameLine& line);

}  // namespace solgeo
