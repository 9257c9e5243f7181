#pragma once

#include <array>
#include <map>
#include <string>

#include "solgeo/calculus.hpp"
#include "solgeo/field.hpp"
#include "solgeo/report.hpp"

namespace solgeo {

/// Gauge potential: one matrix field per xi-axis on a shared grid.
class GaugePotential {
public:
    GaugePotential() = default;
    explicit GaugePotential(GridSpec spec) : spec_(std::move(spec)) {}

    void set(const std::string& axis, MatrixField f);
    const MatrixField& at(const std::string& axis) const { return comps_.at(axis); }
    bool has(const std::string& axis) const { return comps_.count(axis) != 0; }
    const std::map<std::string, MatrixField>& components() const { return comps_; }
    const GridSpec& spec() const { return spec_; }
    int dim() const;

private:
    GridSpec spec_;
    std::map<std::string, MatrixField> comps_;
};

/// Antisymmetric field strength components F_{mu nu} = d_nu A_mu - d_mu A_nu
/// + [A_mu, A_nu] (the curvature of D_mu = d_mu - A_mu, which vanishes on
/// A_mu = (d_mu g) g^-1), keyed "F_<a><b>" for axis pairs in grid order.
class FieldStrength {
public:
    void set(const std::string& a, const std::string& b, MatrixField f);
    /// Component for any axis order; antisymmetry is applied on lookup.
    MatrixField at(const std::string& a, const std::string& b) const;
    const std::map<std::string, MatrixField>& components() const { return comps_; }

private:
    std::map<std::string, MatrixField> comps_;
};

FieldStrength field_strength(const GaugePotential& A, Scheme scheme = Scheme::central2);

/// Null-coordinate self-duality residuals on a 4-axis (xi1..xi4) grid:
///   F_{xi1 xi2},  F_{xi3 xi4},  F_{xi1 xi4} - F_{xi2 xi3}.
ResidualReport sd_residual(const GaugePotential& A, Scheme scheme = Scheme::central2);

/// Degenerate 2+1 form on a (xi1, xi2, xi4) grid where nothing depends on
/// xi3: the xi3-derivatives drop and the three residuals become
///   F_{xi1 xi2},  d_xi4 A3 + [A3, A4],  F_{xi1 xi4} - ([A2, A3] - d_xi2 A3).
ResidualReport sd_residual_2p1(const GaugePotential& A, Scheme scheme = Scheme::central2);

/// A_mu -> phi^-1 A_mu phi - phi^-1 d_mu phi, per axis. Throws if phi is
/// singular at any node.
GaugePotential gauge_transform(const GaugePotential& A, const MatrixField& phi,
                               Scheme scheme = Scheme::central2);

}  // namespace solgeo
