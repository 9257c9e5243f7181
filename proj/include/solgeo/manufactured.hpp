#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "solgeo/calculus.hpp"
#include "solgeo/field.hpp"
#include "solgeo/mat.hpp"

namespace solgeo {

/// Seeded low-order Fourier sum in up to 4 variables, 2*pi-periodic per
/// variable, with analytic partial derivatives. Refinement studies resample
/// the same underlying function.
class FourierScalar {
public:
    struct Mode {
        double amp = 0.0;
        std::array<int, 4> wav{};     // integer wavenumbers
        std::array<double, 4> phase{};
    };

    FourierScalar() = default;
    FourierScalar(int nvars, std::vector<Mode> modes) : nvars_(nvars), modes_(std::move(modes)) {}

    static FourierScalar random(std::mt19937_64& rng, int nvars, int max_wav, double amplitude,
                                int nmodes = 2);

    double eval(const std::array<double, 4>& x) const;
    double deriv(int var, const std::array<double, 4>& x) const;
    double deriv2(int v1, int v2, const std::array<double, 4>& x) const;

    int nvars() const { return nvars_; }

private:
    int nvars_ = 1;
    std::vector<Mode> modes_;
};

/// Random matrix with entries uniform in [-amp, amp] (real and imaginary parts).
Mat random_matrix(std::mt19937_64& rng, int dim, double amp, bool complex_entries = true);

/// Random anti-Hermitian matrix (exponentiates to a unitary).
Mat random_anti_hermitian(std::mt19937_64& rng, int dim, double amp);

/// Analytic matrix-valued function of up to 4 coordinates with analytic
/// partial derivatives.
struct AnalyticMatrixFunc {
    std::function<Mat(const std::array<double, 4>&)> value;
    std::function<Mat(int var, const std::array<double, 4>&)> deriv;
};

/// Analytic gauge potential on up to 4 coordinates: A_mu(x) with exact values
/// and (optionally) exact partial derivatives d_nu A_mu.
struct AnalyticPotential {
    int dim = 2;
    int naxes = 4;
    std::function<Mat(int axis, const std::array<double, 4>&)> component;
    std::function<Mat(int d_axis, int comp_axis, const std::array<double, 4>&)> component_deriv;
};

/// Smooth invertible group-valued function phi = exp(P K1) exp(Q K2) with
/// scalar Fourier sums P, Q and fixed non-commuting generators K1, K2.
/// Its logarithmic derivative (d_mu phi) phi^-1 is available in closed form,
/// so the induced pure-gauge potential is exactly flat.
class ManufacturedGauge {
public:
    ManufacturedGauge(FourierScalar p, FourierScalar q, Mat k1, Mat k2)
        : p_(std::move(p)), q_(std::move(q)), k1_(std::move(k1)), k2_(std::move(k2)) {}

    static ManufacturedGauge random(std::mt19937_64& rng, int dim, int nvars, double amplitude,
                                    int max_wav = 1);

    int dim() const { return k1_.dim(); }

    Mat value(const std::array<double, 4>& x) const;
    /// (d_var phi) phi^-1 = P_var K1 + Q_var exp(P K1) K2 exp(-P K1)
    Mat log_deriv(int var, const std::array<double, 4>& x) const;
    /// d_v1 of log_deriv(v2, .), in closed form.
    Mat log_deriv_deriv(int v1, int v2, const std::array<double, 4>& x) const;

    /// The flat potential A_mu = (d_mu phi) phi^-1 on `naxes` coordinates.
    AnalyticPotential flat_potential(int naxes) const;

private:
    FourierScalar p_, q_;
    Mat k1_, k2_;
};

/// Sample a group-valued function on a grid.
MatrixField sample_group(const ManufacturedGauge& g, const GridSpec& spec);

/// Connection members U_axis = (partial_axis g) g^-1 built with the grid's
/// finite-difference scheme; exactly flat in the continuum limit.
MatrixField fd_log_deriv(const MatrixField& g, const std::string& axis,
                         Scheme scheme = Scheme::central2);

}  // namespace solgeo
