#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "solgeo/calculus.hpp"
#include "solgeo/field.hpp"
#include "solgeo/frames.hpp"
#include "solgeo/mat.hpp"
#include "solgeo/report.hpp"
#include "solgeo/zerocurvature.hpp"

namespace solgeo {

inline double node_mag(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Unit 3-vector field with the constant coupling n that scales the
/// curvature triple (k, sigma, tau) = n (S1, S2, S3).
struct SpinField {
    Field<Vec3> values;
    double n = 1.0;

    const GridSpec& spec() const { return values.spec(); }
    /// max | |S| - 1 | over all nodes.
    double max_norm_deviation() const;
};

/// Build the unit spin field S = (k, sigma, tau) / n. Throws std::domain_error
/// (with the max deviation in the message) unless k^2 + sigma^2 + tau^2 = n^2
/// within 1e-8 relative at every node.
SpinField spin_from_curvatures(const ScalarField& k, const ScalarField& sigma,
                               const ScalarField& tau, double n);

/// Inverse of spin_from_curvatures: (k, sigma, tau) = n S.
void curvatures_from_spin(const SpinField& s, ScalarField& k, ScalarField& sigma, ScalarField& tau);

/// Isotropic precession velocity S_t = S x S_xx, with a compact 3-point
/// second difference along x. Tangent to S at every node by construction.
Field<Vec3> lle_rhs(const SpinField& s);

/// Exact helical solution S = (sin t cos phi, sin t sin phi, cos t),
/// phi = k x - omega t with omega = k^2 cos theta, sampled over an (x) or
/// (x, t) grid.
SpinField helical_solution(const GridSpec& spec, double theta, double k, double n);

/// Precession rate of the helical wave.
inline double helical_rate(double theta, double k) { return k * k * std::cos(theta); }

/// Integrate S_t = S x S_xx from an x-line initial state over duration T.
/// Each node rotates exactly about the implicit-midpoint effective field
/// (solved by fixed-point iteration), so |S| is preserved to roundoff and the
/// stiff grid-scale precession modes stay neutrally stable. dt is adjusted to
/// divide T evenly; throws std::domain_error when dt exceeds the h^2 accuracy
/// bound.
/// The result lives on a (t, x) grid whose t axis has step ~dt.
SpinField lle_integrate(const SpinField& s0, double T, double dt);

/// Node-wise 2x2 matrix image of the spin field under spin_matrix.
MatrixField spin_matrix_field(const SpinField& s);

/// Time-flow matrix V = -i n S S_x - 2 i n^2 S (matrix form).
MatrixField lle_v_matrix(const SpinField& s, Scheme scheme = Scheme::central2);

/// Residuals of the two equivalent forms of the spin flow on an (x, t) field:
///   "m0":         S_t - (1/n) V_x + [S, V]
///   "lle":        S_t - (1/2i) [S, S_xx]
///   "difference": their gap, which vanishes at O(h^2) for any smooth unit S
/// (the identity uses S^2 = I and S S_x = -S_x S, so it holds off-shell).
ResidualReport m0_equivalence_residual(const SpinField& s, Scheme scheme = Scheme::central2);

/// Scaling convention of the spin Lax pair. `identity` keeps U = n S with
/// S^2 = I; `half_i` divides both members by 2i, matching the frame-system
/// convention, under which the pair is not compatible (kept for comparison).
enum class SpinLaxNormalization { identity, half_i };

/// Path-independence check of the transport psi_x = U psi, psi_t = V psi with
/// U = n S and V = -i n S S_x - 2 i n^2 S, via wavefunction_path_check.
ResidualReport lle_lax_check(const SpinField& s,
                             SpinLaxNormalization norm = SpinLaxNormalization::identity,
                             Scheme scheme = Scheme::central2);

/// Gauge transform of an (x, t) connection pair:
///   C = E^-1 C' E - E^-1 E_x,  G = E^-1 G' E - E^-1 E_t.
/// Flatness of (C', G') carries over to (C, G) at matching order. Throws on a
/// singular E node.
std::pair<MatrixField, MatrixField> gauge_frame_transform(const MatrixField& Cp,
                                                          const MatrixField& Gp,
                                                          const MatrixField& E,
                                                          Scheme scheme = Scheme::central2);

/// Time slice of a (t, x) spin field as an x-line SpinField.
SpinField time_slice(const SpinField& s, int t_index);

/// Discrete exchange energy sum |S_x|^2 h over an x-line field.
double exchange_energy(const SpinField& line);

}  // namespace solgeo
