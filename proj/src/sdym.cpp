#include "solgeo/sdym.hpp"

#include <stdexcept>

namespace solgeo {

void GaugePotential::set(const std::string& axis, MatrixField f) {
    if (!(f.spec() == spec_)) throw std::invalid_argument("GaugePotential: grid mismatch");
    if (!comps_.empty() && f.size() > 0 && f[0].dim() != dim())
        throw std::invalid_argument("GaugePotential: matrix dim mismatch");
    comps_.insert_or_assign(axis, std::move(f));
}

int GaugePotential::dim() const {
    if (comps_.empty()) throw std::logic_error("GaugePotential: empty");
    return comps_.begin()->second[0].dim();
}

void FieldStrength::set(const std::string& a, const std::string& b, MatrixField f) {
    comps_.insert_or_assign("F_" + a + b, std::move(f));
}

MatrixField FieldStrength::at(const std::string& a, const std::string& b) const {
    auto it = comps_.find("F_" + a + b);
    if (it != comps_.end()) return it->second;
    it = comps_.find("F_" + b + a);
    if (it == comps_.end()) throw std::out_of_range("FieldStrength: no component " + a + b);
    MatrixField r = it->second;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -r[i];
    return r;
}

namespace {

// F_ab = d_b A_a - d_a A_b + [A_a, A_b]: the curvature of the transport
// operators D_mu = d_mu - A_mu, which vanishes on log-derivative potentials
// A_mu = (d_mu g) g^-1. Identical to the pairwise compatibility residual.
MatrixField pair_strength(const GaugePotential& A, const std::string& a, const std::string& b,
                          Scheme scheme) {
    const MatrixField& Aa = A.at(a);
    const MatrixField& Ab = A.at(b);
    MatrixField da = partial(Aa, b, scheme);
    MatrixField db = partial(Ab, a, scheme);
    MatrixField out = da;
    for_each_index(out.size(), [&](std::size_t i) {
        out[i] = da[i] - db[i] + commutator(Aa[i], Ab[i]);
    });
    return out;
}

}  // namespace

FieldStrength field_strength(const GaugePotential& A, Scheme scheme) {
    std::vector<std::string> axes;
    for (const Axis& ax : A.spec().axes())
        if (A.has(ax.name)) axes.push_back(ax.name);
    if (axes.size() < 2) throw std::invalid_argument("field_strength: need >= 2 axes");
    FieldStrength F;
    for (std::size_t i = 0; i < axes.size(); ++i)
        for (std::size_t j = i + 1; j < axes.size(); ++j)
            F.set(axes[i], axes[j], pair_strength(A, axes[i], axes[j], scheme));
    return F;
}

ResidualReport sd_residual(const GaugePotential& A, Scheme scheme) {
    for (const char* ax : {"xi1", "xi2", "xi3", "xi4"})
        if (!A.spec().has_axis(ax) || !A.has(ax))
            throw std::invalid_argument(std::string("sd_residual: missing axis ") + ax);
    ResidualReport rep;
    rep.set("F_xi1xi2", field_norms(pair_strength(A, "xi1", "xi2", scheme)));
    rep.set("F_xi3xi4", field_norms(pair_strength(A, "xi3", "xi4", scheme)));
    MatrixField d = pair_strength(A, "xi1", "xi4", scheme);
    MatrixField e = pair_strength(A, "xi2", "xi3", scheme);
    for_each_index(d.size(), [&](std::size_t i) { d[i] -= e[i]; });
    rep.set("F_xi1xi4-F_xi2xi3", field_norms(d));
    return rep;
}

ResidualReport sd_residual_2p1(const GaugePotential& A, Scheme scheme) {
    for (const char* ax : {"xi1", "xi2", "xi4"})
        if (!A.spec().has_axis(ax))
            throw std::invalid_argument(std::string("sd_residual_2p1: missing axis ") + ax);
    for (const char* ax : {"xi1", "xi2", "xi3", "xi4"})
        if (!A.has(ax))
            throw std::invalid_argument(std::string("sd_residual_2p1: missing member A_") + ax);

    const MatrixField& A2 = A.at("xi2");
    const MatrixField& A3 = A.at("xi3");
    const MatrixField& A4 = A.at("xi4");

    ResidualReport rep;
    rep.set("F_xi1xi2", field_norms(pair_strength(A, "xi1", "xi2", scheme)));

    // F_xi3xi4 with d_xi3 = 0 reduces to d_xi4 A3 + [A3, A4]
    MatrixField r2 = partial(A3, "xi4", scheme);
    for_each_index(r2.size(), [&](std::size_t i) { r2[i] += commutator(A3[i], A4[i]); });
    rep.set("d4A3+[A3,A4]", field_norms(r2));

    // F_xi2xi3 with d_xi3 = 0 reduces to [A2, A3] - d_xi2 A3
    MatrixField lhs = pair_strength(A, "xi1", "xi4", scheme);
    MatrixField d2A3 = partial(A3, "xi2", scheme);
    for_each_index(lhs.size(), [&](std::size_t i) {
        lhs[i] += d2A3[i] - commutator(A2[i], A3[i]);
    });
    rep.set("F_xi1xi4-F_xi2xi3", field_norms(lhs));
    return rep;
}

GaugePotential gauge_transform(const GaugePotential& A, const MatrixField& phi, Scheme scheme) {
    if (!(phi.spec() == A.spec())) throw std::invalid_argument("gauge_transform: grid mismatch");
    std::vector<Mat> phi_inv(phi.size(), Mat::zero(phi[0].dim()));
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (std::abs(phi[i].det()) < 1e-14)
            throw std::domain_error("gauge_transform: phi singular at a node");
        phi_inv[i] = phi[i].inverse();
    }
    GaugePotential out(A.spec());
    for (const auto& [axis, Amu] : A.components()) {
        MatrixField dphi = partial(phi, axis, scheme);
        MatrixField t = Amu;
        for_each_index(t.size(), [&](std::size_t i) {
            t[i] = phi_inv[i] * Amu[i] * phi[i] - phi_inv[i] * dphi[i];
        });
        out.set(axis, std::move(t));
    }
    return out;
}

}  // namespace solgeo
