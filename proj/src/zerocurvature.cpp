#include "solgeo/zerocurvature.hpp"

#include <cmath>
#include <stdexcept>

namespace solgeo {

void ConnectionSet::set(const std::string& axis, MatrixField f) {
    if (!(f.spec() == spec_)) throw std::invalid_argument("ConnectionSet: grid mismatch");
    spec_.axis_index(axis);  // must exist
    if (!members_.empty() && f.size() > 0 && f[0].dim() != dim())
        throw std::invalid_argument("ConnectionSet: matrix dim mismatch");
    members_.insert_or_assign(axis, std::move(f));
}

int ConnectionSet::dim() const {
    if (members_.empty()) throw std::logic_error("ConnectionSet: empty");
    return members_.begin()->second[0].dim();
}

std::vector<std::string> ConnectionSet::axes() const {
    std::vector<std::string> out;
    for (const Axis& a : spec_.axes())
        if (members_.count(a.name)) out.push_back(a.name);
    return out;
}

MatrixField zc_residual(const MatrixField& P, const MatrixField& Q, const std::string& axisP,
                        const std::string& axisQ, Scheme scheme, Exec exec) {
    if (!(P.spec() == Q.spec())) throw std::invalid_argument("zc_residual: grid mismatch");
    if (axisP == axisQ) throw std::invalid_argument("zc_residual: axes must differ");
    MatrixField dP = partial(P, axisQ, scheme, exec);
    MatrixField dQ = partial(Q, axisP, scheme, exec);
    MatrixField out = dP;
    for_each_index(P.size(), exec, [&](std::size_t i) {
        out[i] = dP[i] - dQ[i] + commutator(P[i], Q[i]);
    });
    return out;
}

ResidualReport mmlxii_residual(const ConnectionSet& conns, Scheme scheme) {
    const std::vector<std::string> axes = conns.axes();
    if (axes.size() < 2) throw std::invalid_argument("mmlxii_residual: need >= 2 axes");
    ResidualReport rep;
    for (std::size_t i = 0; i < axes.size(); ++i)
        for (std::size_t j = i + 1; j < axes.size(); ++j) {
            MatrixField r = zc_residual(conns.at(axes[i]), conns.at(axes[j]), axes[i], axes[j], scheme);
            rep.set("F_" + axes[i] + axes[j], field_norms(r));
        }
    return rep;
}

ResidualReport plane_residuals(const ScalarField& k, const ScalarField& m3,
                               const std::optional<ScalarField>& n3, const ScalarField& omega3,
                               Scheme scheme) {
    const GridSpec& spec = k.spec();
    const bool has_z = spec.has_axis("z");
    const bool has_t = spec.has_axis("t");
    if (has_z != n3.has_value())
        throw std::invalid_argument("plane_residuals: n3 must be present iff the z axis is");
    if (!spec.has_axis("x") || !spec.has_axis("y"))
        throw std::invalid_argument("plane_residuals: x and y axes required");

    ResidualReport rep;
    auto add = [&](const std::string& label, const ScalarField& lhs, const ScalarField& rhs) {
        rep.set(label, field_norms(lhs - rhs));
    };
    add("k_y-m3_x", partial(k, "y", scheme), partial(m3, "x", scheme));
    if (has_z) {
        add("k_z-n3_x", partial(k, "z", scheme), partial(*n3, "x", scheme));
        add("m3_z-n3_y", partial(m3, "z", scheme), partial(*n3, "y", scheme));
    }
    if (has_t) {
        add("m3_t-omega3_y", partial(m3, "t", scheme), partial(omega3, "y", scheme));
        if (has_z) add("n3_t-omega3_z", partial(*n3, "t", scheme), partial(omega3, "z", scheme));
        add("k_t-omega3_x", partial(k, "t", scheme), partial(omega3, "x", scheme));
    }
    return rep;
}

MatrixField mmlxviii_residual(const MatrixField& B0, const MatrixField& B1, cplx a, cplx b,
                              Scheme scheme) {
    const GridSpec& spec = B0.spec();
    if (!(spec == B1.spec())) throw std::invalid_argument("mmlxviii_residual: grid mismatch");
    const Mat zero = Mat::zero(B0[0].dim());
    auto term = [&](const MatrixField& f, const std::string& axis) -> MatrixField {
        if (spec.has_axis(axis)) return partial(f, axis, scheme);
        return MatrixField(spec, zero);
    };
    MatrixField d02 = term(B0, "xi2");
    MatrixField d04 = term(B0, "xi4");
    MatrixField d13 = term(B1, "xi3");
    MatrixField d11 = term(B1, "xi1");
    MatrixField out = d02;
    for_each_index(B0.size(), [&](std::size_t i) {
        out[i] = d02[i] - b * d04[i] + a * d13[i] - d11[i] + commutator(B0[i], B1[i]);
    });
    return out;
}

namespace {

MatrixField covariant_deriv(const ConnectionSet& conns, const MatrixField& psi,
                            const std::string& axis) {
    MatrixField d = partial(psi, axis);
    if (!conns.has(axis)) throw std::invalid_argument("build_lax: missing connection on axis " + axis);
    const MatrixField& u = conns.at(axis);
    for_each_index(psi.size(), [&](std::size_t i) { d[i] -= u[i] * psi[i]; });
    return d;
}

MatrixField axpy(MatrixField acc, cplx c, const MatrixField& x) {
    if (c == cplx(0.0)) return acc;
    for_each_index(acc.size(), [&](std::size_t i) { acc[i] += c * x[i]; });
    return acc;
}

}  // namespace

LaxOperators build_lax(const ConnectionSet& conns, const LaxParameters& p, LaxForm form) {
    auto need = [&](const std::string& axis) {
        if (!conns.spec().has_axis(axis) || !conns.has(axis))
            throw std::invalid_argument("build_lax: form requires axis '" + axis + "'");
    };
    LaxOperators ops;
    switch (form) {
        case LaxForm::covariant_3p1: {
            need("x");
            need("t");
            const cplx ca = p.a * p.lambda;
            const cplx cb = p.b * std::pow(p.lambda, 2);
            const cplx ce = p.e * std::pow(p.lambda, p.e_power);
            const cplx cf = p.f * std::pow(p.lambda, p.f_power);
            if (ca != cplx(0.0) || ce != cplx(0.0)) need("y");
            if (cb != cplx(0.0) || cf != cplx(0.0)) need("z");
            ops.L = [&conns, ca, cb](const MatrixField& psi) {
                MatrixField r = covariant_deriv(conns, psi, "x");
                if (ca != cplx(0.0)) r = axpy(std::move(r), ca, covariant_deriv(conns, psi, "y"));
                if (cb != cplx(0.0)) r = axpy(std::move(r), cb, covariant_deriv(conns, psi, "z"));
                return r;
            };
            ops.M = [&conns, ce, cf](const MatrixField& psi) {
                MatrixField r = covariant_deriv(conns, psi, "t");
                if (ce != cplx(0.0)) r = axpy(std::move(r), ce, covariant_deriv(conns, psi, "y"));
                if (cf != cplx(0.0)) r = axpy(std::move(r), cf, covariant_deriv(conns, psi, "z"));
                return r;
            };
            break;
        }
        case LaxForm::covariant_2p1: {
            need("x");
            need("t");
            const cplx ca = p.a * p.lambda;
            const cplx ce = p.e * std::pow(p.lambda, p.e_power);
            if (ca != cplx(0.0) || ce != cplx(0.0)) need("y");
            ops.L = [&conns, ca](const MatrixField& psi) {
                MatrixField r = covariant_deriv(conns, psi, "x");
                if (ca != cplx(0.0)) r = axpy(std::move(r), ca, covariant_deriv(conns, psi, "y"));
                return r;
            };
            ops.M = [&conns, ce](const MatrixField& psi) {
                MatrixField r = covariant_deriv(conns, psi, "t");
                if (ce != cplx(0.0)) r = axpy(std::move(r), ce, covariant_deriv(conns, psi, "y"));
                return r;
            };
            break;
        }
        case LaxForm::sdym_null: {
            for (const char* ax : {"xi1", "xi2", "xi3", "xi4"}) need(ax);
            const cplx l = p.lambda;
            ops.L = [&conns, l](const MatrixField& psi) {
                return axpy(covariant_deriv(conns, psi, "xi1"), -l, covariant_deriv(conns, psi, "xi3"));
            };
            ops.M = [&conns, l](const MatrixField& psi) {
                return axpy(covariant_deriv(conns, psi, "xi2"), -l, covariant_deriv(conns, psi, "xi4"));
            };
            break;
        }
    }
    return ops;
}

namespace {

/// One Magnus midpoint transport step psi <- exp(h/2 (U_a + U_b)) psi.
Mat transport_step(const Mat& ua, const Mat& ub, double h, const Mat& psi) {
    return expm((ua + ub) * cplx(0.5 * h)) * psi;
}

/// Transport psi along a full grid line of `axis`, starting from flat node
/// `start`, returning psi at the far end node.
Mat transport_line(const ConnectionSet& conns, const std::string& axis, std::size_t start, Mat psi) {
    const GridSpec& spec = conns.spec();
    const int ax = spec.axis_index(axis);
    const Axis& a = spec.axis(ax);
    const MatrixField& u = conns.at(axis);
    std::size_t idx = start;
    for (int i = 0; i < a.n - 1; ++i) {
        const std::size_t next = spec.shifted(idx, ax, 1);
        psi = transport_step(u[idx], u[next], a.h, psi);
        if (std::abs(psi.det()) < 1e-300)
            throw std::domain_error("wavefunction_path_check: non-invertible intermediate psi");
        idx = next;
    }
    return psi;
}

}  // namespace

ResidualReport wavefunction_path_check(const ConnectionSet& conns, const Mat& psi0,
                                       const std::string& axisA, const std::string& axisB) {
    const GridSpec& spec = conns.spec();
    const int ia = spec.axis_index(axisA);
    const int ib = spec.axis_index(axisB);

    // flatness pre-check on the pair
    MatrixField flat = zc_residual(conns.at(axisA), conns.at(axisB), axisA, axisB);
    const Norms fn = field_norms(flat);
    double scale = 0.0;
    for (std::size_t i = 0; i < conns.at(axisA).size(); ++i)
        scale = std::max({scale, conns.at(axisA)[i].fnorm(), conns.at(axisB)[i].fnorm()});
    const double hmax = std::max(spec.axis(ia).h, spec.axis(ib).h);
    const bool warn = fn.linf > 10.0 * hmax * hmax * std::max(scale, 1e-30);

    // path 1: A across, then B across from the far-A corner; path 2 reversed
    const std::size_t corner_a = static_cast<std::size_t>(spec.axis(ia).n - 1) * spec.stride(ia);
    const std::size_t corner_b = static_cast<std::size_t>(spec.axis(ib).n - 1) * spec.stride(ib);
    Mat psi1 = transport_line(conns, axisB, corner_a, transport_line(conns, axisA, 0, psi0));
    Mat psi2 = transport_line(conns, axisA, corner_b, transport_line(conns, axisB, 0, psi0));

    ResidualReport rep;
    // relative mismatch: the transported wavefunction can grow exponentially
    // with the connection strength, so the absolute gap is badly scaled
    const double mag = std::max({psi1.fnorm(), psi2.fnorm(), 1e-300});
    const double mismatch = (psi1 - psi2).fnorm() / mag;
    rep.set("path_mismatch", {mismatch, mismatch});
    rep.set("flatness", fn);
    rep.set("flatness_warning", {warn ? 1.0 : 0.0, warn ? 1.0 : 0.0});
    return rep;
}

std::map<std::string, Field<cplx>> eval_expansion(const SpectralExpansion& exp, cplx lambda) {
    std::map<std::string, Field<cplx>> out;
    for (const auto& [quantity, terms] : exp.terms()) {
        if (terms.empty()) continue;
        Field<cplx> acc(terms[0].coeff.spec(), cplx(0.0));
        for (const ExpansionTerm& t : terms) {
            const cplx w = t.weight(lambda);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                throw std::domain_error("eval_expansion: weight pole at given lambda for '" + quantity + "'");
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * t.coeff[i];
        }
        out.insert_or_assign(quantity, std::move(acc));
    }
    return out;
}

MatrixField su2_field(const Field<cplx>& k, const Field<cplx>& sigma, const Field<cplx>& tau) {
    MatrixField out(k.spec(), Mat::zero(2));
    for_each_index(k.size(), [&](std::size_t i) { out[i] = su2_from_triple(k[i], sigma[i], tau[i]); });
    return out;
}

}  // namespace solgeo
