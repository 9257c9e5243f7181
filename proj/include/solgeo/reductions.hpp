#pragma once

#include <array>
#include <optional>

#include "solgeo/manufactured.hpp"
#include "solgeo/sdym.hpp"
#include "solgeo/zerocurvature.hpp"

namespace solgeo {

enum class ReductionKind { GweCmpe, ZsAkns, Knwki, ChiralField, MmLxviConstraint };

struct NamedConnectionInputs {
    std::optional<Field<cplx>> p, q;                     // AKNS-type potentials
    std::optional<MatrixField> u, v;                     // chiral field pair
    std::optional<ScalarField> k, sigma, tau;            // curvature triple
    std::optional<ScalarField> omega1, omega2, omega3;   // time coefficients
    double n = 0.0;                                      // constraint radius
};

/// Assemble the connection members the given reduction specifies:
///   ZS-AKNS:   U = [i lambda, q; p, -i lambda]           (axis x)
///   KNWKI:     U = [i lambda, lambda q; lambda p, -i lambda]
///   Chiral:    U = u/(1-lambda), V = v/(1+lambda)        (axes x, t)
///   GWE-CMPE:  U, V from the curvature and omega triples, lambda-free
///   mM-LXVI:   GWE-CMPE members after validating k^2+sigma^2+tau^2 = n^2
/// Throws std::domain_error at the chiral poles lambda = +-1 and when the
/// mM-LXVI constraint is violated.
ConnectionSet named_connection(ReductionKind kind, const NamedConnectionInputs& in, cplx lambda);

/// Max pointwise deviation |k^2 + sigma^2 + tau^2 - n^2|.
double mmlxvi_constraint_deviation(const ScalarField& k, const ScalarField& sigma,
                                   const ScalarField& tau, double n);

/// Zero-curvature residual of the chiral connection U = u/(1-lambda),
/// V = v/(1+lambda); vanishes for all non-pole lambda iff the chiral field
/// equations hold.
ResidualReport chiral_field_residual(const MatrixField& u, const MatrixField& v, cplx lambda,
                                     Scheme scheme = Scheme::central2);

/// Evolve the principal chiral field system
///   u_t = -1/2 [u, v],  v_x = 1/2 [u, v]
/// on an (x, t) grid (both axes one-sided) from u(x, 0) and v(0, t), with a
/// Heun predictor-corrector in both directions (2nd order).
std::pair<MatrixField, MatrixField> evolve_chiral(
    const GridSpec& spec, const std::function<Mat(double)>& u0,
    const std::function<Mat(double)>& v_left);

/// Linear coordinate map xi = H x with cached inverse.
class CoordinateMap {
public:
    explicit CoordinateMap(const std::array<std::array<double, 4>, 4>& H);

    const std::array<std::array<double, 4>, 4>& H() const { return h_; }
    /// Jacobian entry b(i, mu) = d xi_mu / d x_i.
    double b(int i, int mu) const { return h_[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)]; }
    std::array<double, 4> apply(const std::array<double, 4>& x) const;

    static CoordinateMap identity();
    static CoordinateMap random(std::mt19937_64& rng, double spread = 0.4);

private:
    std::array<std::array<double, 4>, 4> h_;
};

/// Pull an analytic xi-space potential back to the (x,y,z,t) grid:
/// member_i(x) = sum_mu b(i, mu) A_mu(H x).
ConnectionSet pullback_connection(const AnalyticPotential& A, const CoordinateMap& map,
                                  const GridSpec& spec_xyzt);

/// Compare the curvature of the pulled-back connection (finite differences)
/// against the tensor transformation of the xi-space field strength
/// (analytic); reports one mismatch norm per x-axis pair. Requires
/// A.component_deriv.
ResidualReport transform_curvature_components(const AnalyticPotential& A, const CoordinateMap& map,
                                              const GridSpec& spec_xyzt,
                                              Scheme scheme = Scheme::central2);

/// 2+1 fields embedded as an xi-space gauge potential living on the real
/// (x,y,t) grid; the xi-derivatives act through the chain rule.
struct EmbeddedPotential {
    GridSpec spec;                    // (x, y, t)
    MatrixField A1, A2, A3, A4;
};

/// Embed (A, B, D) - the x-, y-, t-connections of a 2+1 zero-curvature
/// system - into null-coordinate gauge-potential components. The constant
/// factors are normalized so that an exactly flat (A, B, D) yields an exactly
/// self-dual image.
EmbeddedPotential embed_2p1_into_sdym(const MatrixField& A, const MatrixField& B,
                                      const MatrixField& D);

/// Self-duality residuals of an embedded potential, with the xi-derivatives
/// realized as chain-rule combinations of x-, y-, t-differences.
ResidualReport embedded_sd_residual(const EmbeddedPotential& P, Scheme scheme = Scheme::central2);

/// The paired-coordinate <-> null-Lax identification at a = b: returns the
/// representative potential (A1, A2, A3, A4) = (B0, B1, 0, 0) together with
/// the compatibility residual of the (B0, B1) pair. Throws if a != b.
struct IdentifyResult {
    GaugePotential potential;
    ResidualReport report;
};
IdentifyResult mmlxviii_sdym_identify(const MatrixField& B0, const MatrixField& B1, cplx a, cplx b);

/// Non-flat analytic potential with Fourier-sum entries and analytic
/// derivatives, for the tensor-transformation oracle.
AnalyticPotential random_analytic_potential(std::mt19937_64& rng, int dim, int naxes,
                                            double amplitude);

}  // namespace solgeo
