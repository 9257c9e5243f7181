#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solgeo/calculus.hpp"
#include "solgeo/field.hpp"
#include "solgeo/report.hpp"

namespace solgeo {

/// Spectral parameters of the Lax operators. The exponents on the e- and
/// f-weighted terms are configurable because the source equations state them
/// inconsistently (lambda^2 vs lambda^3 on the same term).
struct LaxParameters {
    cplx lambda{0.0};
    cplx a{0.0};
    cplx b{0.0};
    cplx e{0.0};
    cplx f{0.0};
    int e_power = 3;
    int f_power = 4;
};

/// Axis name -> connection matrix field, all on one grid with one matrix dim.
class ConnectionSet {
public:
    ConnectionSet() = default;
    explicit ConnectionSet(GridSpec spec) : spec_(std::move(spec)) {}

    void set(const std::string& axis, MatrixField f);
    const MatrixField& at(const std::string& axis) const { return members_.at(axis); }
    bool has(const std::string& axis) const { return members_.count(axis) != 0; }
    const std::map<std::string, MatrixField>& members() const { return members_; }
    const GridSpec& spec() const { return spec_; }
    int dim() const;

    /// Axes in grid order (only those with members).
    std::vector<std::string> axes() const;

    LaxParameters params;

private:
    GridSpec spec_;
    std::map<std::string, MatrixField> members_;
};

/// Pairwise compatibility residual d_axisQ P - d_axisP Q + [P, Q], node-wise.
/// P is the connection along axisP, Q along axisQ.
MatrixField zc_residual(const MatrixField& P, const MatrixField& Q, const std::string& axisP,
                        const std::string& axisQ, Scheme scheme = Scheme::central2,
                        Exec exec = default_exec());

/// All pairwise residuals of a 2-4 axis connection set (6 pairs in 3+1,
/// 3 in 2+1, 1 in 1+1), labelled "F_<a><b>".
ResidualReport mmlxii_residual(const ConnectionSet& conns, Scheme scheme = Scheme::central2);

/// Scalar plane-case residuals: each of
///   k_y - m3_x, k_z - n3_x, m3_z - n3_y, m3_t - omega3_y, n3_t - omega3_z,
///   k_t - omega3_x
/// that the grid's axes support. n3 must be present iff the z axis is.
ResidualReport plane_residuals(const ScalarField& k, const ScalarField& m3,
                               const std::optional<ScalarField>& n3, const ScalarField& omega3,
                               Scheme scheme = Scheme::central2);

/// Compatibility residual of the paired-coordinate frame system:
///   B0_xi2 - b B0_xi4 + a B1_xi3 - B1_xi1 + [B0, B1]
/// Axes absent from the grid contribute nothing (degenerate 2+1 form).
MatrixField mmlxviii_residual(const MatrixField& B0, const MatrixField& B1, cplx a, cplx b,
                              Scheme scheme = Scheme::central2);

enum class LaxForm { covariant_3p1, covariant_2p1, sdym_null };

/// Pair of linear operators acting on a wavefunction field.
struct LaxOperators {
    std::function<MatrixField(const MatrixField&)> L;
    std::function<MatrixField(const MatrixField&)> M;
};

LaxOperators build_lax(const ConnectionSet& conns, const LaxParameters& params, LaxForm form);

/// Transport psi0 along axisA-then-axisB and along axisB-then-axisA across the
/// grid, by Magnus midpoint steps, and report the terminal mismatch relative
/// to the larger terminal wavefunction magnitude. Also
/// reports the flatness of the (axisA, axisB) pair; a "flatness_warning" entry
/// of 1 flags a pair whose residual exceeds 10 h^2 x field scale.
ResidualReport wavefunction_path_check(const ConnectionSet& conns, const Mat& psi0,
                                       const std::string& axisA, const std::string& axisB);

/// One term of a lambda-expansion: weight(lambda) times a coefficient field.
struct ExpansionTerm {
    std::function<cplx(cplx)> weight;
    Field<cplx> coeff;
};

inline std::function<cplx(cplx)> power_weight(int j) {
    return [j](cplx l) { return std::pow(l, j); };
}

/// Per-quantity ("k", "sigma", "tau", "omega1", ...) finite lambda-expansions.
class SpectralExpansion {
public:
    void add(const std::string& quantity, ExpansionTerm term) {
        terms_[quantity].push_back(std::move(term));
    }
    const std::map<std::string, std::vector<ExpansionTerm>>& terms() const { return terms_; }

private:
    std::map<std::string, std::vector<ExpansionTerm>> terms_;
};

/// Evaluate every quantity at a given lambda. Throws std::domain_error if a
/// weight has a pole (non-finite value) at lambda.
std::map<std::string, Field<cplx>> eval_expansion(const SpectralExpansion& exp, cplx lambda);

/// Assemble the 2x2 frame connection from (possibly complex) k, sigma, tau fields.
MatrixField su2_field(const Field<cplx>& k, const Field<cplx>& sigma, const Field<cplx>& tau);

}  // namespace solgeo
