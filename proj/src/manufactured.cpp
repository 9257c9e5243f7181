#include "solgeo/manufactured.hpp"

#include <cmath>

namespace solgeo {

GridSpec periodic_grid(const std::vector<std::string>& names, int n) {
    std::vector<Axis> axes;
    axes.reserve(names.size());
    const double h = 2.0 * M_PI / n;
    for (const std::string& name : names) axes.push_back({name, n, h, 0.0, Boundary::periodic});
    return GridSpec(std::move(axes));
}

FourierScalar FourierScalar::random(std::mt19937_64& rng, int nvars, int max_wav, double amplitude,
                                    int nmodes) {
    std::uniform_int_distribution<int> wav(-max_wav, max_wav);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> amp(0.5 * amplitude, amplitude);
    std::vector<Mode> modes;
    for (int m = 0; m < nmodes; ++m) {
        Mode mode;
        mode.amp = amp(rng);
        bool nonzero = false;
        for (int v = 0; v < nvars; ++v) {
            mode.wav[static_cast<std::size_t>(v)] = wav(rng);
            mode.phase[static_cast<std::size_t>(v)] = ph(rng);
            nonzero = nonzero || mode.wav[static_cast<std::size_t>(v)] != 0;
        }
        if (!nonzero) mode.wav[0] = 1;  // avoid purely constant modes
        modes.push_back(mode);
    }
    return FourierScalar(nvars, std::move(modes));
}

double FourierScalar::eval(const std::array<double, 4>& x) const {
    double s = 0.0;
    for (const Mode& m : modes_) {
        double p = m.amp;
        for (int v = 0; v < nvars_; ++v)
            p *= std::cos(m.wav[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)] +
                          m.phase[static_cast<std::size_t>(v)]);
        s += p;
    }
    return s;
}

double FourierScalar::deriv(int var, const std::array<double, 4>& x) const {
    double s = 0.0;
    for (const Mode& m : modes_) {
        double p = m.amp;
        for (int v = 0; v < nvars_; ++v) {
            const double arg = m.wav[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)] +
                               m.phase[static_cast<std::size_t>(v)];
            if (v == var)
                p *= -m.wav[static_cast<std::size_t>(v)] * std::sin(arg);
            else
                p *= std::cos(arg);
        }
        s += p;
    }
    return s;
}

double FourierScalar::deriv2(int v1, int v2, const std::array<double, 4>& x) const {
    double s = 0.0;
    for (const Mode& m : modes_) {
        double p = m.amp;
        for (int v = 0; v < nvars_; ++v) {
            const double w = m.wav[static_cast<std::size_t>(v)];
            const double arg = w * x[static_cast<std::size_t>(v)] + m.phase[static_cast<std::size_t>(v)];
            if (v == v1 && v == v2)
                p *= -w * w * std::cos(arg);
            else if (v == v1 || v == v2)
                p *= -w * std::sin(arg);
            else
                p *= std::cos(arg);
        }
        s += p;
    }
    return s;
}

Mat random_matrix(std::mt19937_64& rng, int dim, double amp, bool complex_entries) {
    std::uniform_real_distribution<double> u(-amp, amp);
    Mat m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = cplx(u(rng), complex_entries ? u(rng) : 0.0);
    return m;
}

Mat random_anti_hermitian(std::mt19937_64& rng, int dim, double amp) {
    Mat m = random_matrix(rng, dim, amp, true);
    return (m - m.adjoint()) * cplx(0.5);
}

ManufacturedGauge ManufacturedGauge::random(std::mt19937_64& rng, int dim, int nvars,
                                            double amplitude, int max_wav) {
    FourierScalar p = FourierScalar::random(rng, nvars, max_wav, amplitude);
    FourierScalar q = FourierScalar::random(rng, nvars, max_wav, amplitude);
    Mat k1 = random_anti_hermitian(rng, dim, 1.0);
    Mat k2 = random_anti_hermitian(rng, dim, 1.0);
    return ManufacturedGauge(std::move(p), std::move(q), std::move(k1), std::move(k2));
}

Mat ManufacturedGauge::value(const std::array<double, 4>& x) const {
    return expm(k1_ * cplx(p_.eval(x))) * expm(k2_ * cplx(q_.eval(x)));
}

Mat ManufacturedGauge::log_deriv(int var, const std::array<double, 4>& x) const {
    const double p = p_.eval(x);
    const Mat e1 = expm(k1_ * cplx(p));
    const Mat conj_k2 = e1 * k2_ * e1.inverse();
    return k1_ * cplx(p_.deriv(var, x)) + conj_k2 * cplx(q_.deriv(var, x));
}

Mat ManufacturedGauge::log_deriv_deriv(int v1, int v2, const std::array<double, 4>& x) const {
    const double p = p_.eval(x);
    const Mat e1 = expm(k1_ * cplx(p));
    const Mat c = e1 * k2_ * e1.inverse();
    // d_v1 [ P_v2 K1 + Q_v2 C ] with d_v1 C = P_v1 [K1, C]
    return k1_ * cplx(p_.deriv2(v1, v2, x)) + c * cplx(q_.deriv2(v1, v2, x)) +
           commutator(k1_, c) * cplx(q_.deriv(v2, x) * p_.deriv(v1, x));
}

AnalyticPotential ManufacturedGauge::flat_potential(int naxes) const {
    AnalyticPotential pot;
    pot.dim = dim();
    pot.naxes = naxes;
    pot.component = [g = *this](int axis, const std::array<double, 4>& x) {
        return g.log_deriv(axis, x);
    };
    pot.component_deriv = [g = *this](int d_axis, int comp_axis, const std::array<double, 4>& x) {
        return g.log_deriv_deriv(d_axis, comp_axis, x);
    };
    return pot;
}

MatrixField sample_group(const ManufacturedGauge& g, const GridSpec& spec) {
    return MatrixField::sampled(spec, [&](const std::array<double, 4>& x) { return g.value(x); });
}

MatrixField fd_log_deriv(const MatrixField& g, const std::string& axis, Scheme scheme) {
    MatrixField dg = partial(g, axis, scheme);
    MatrixField out = dg;
    for_each_index(g.size(), [&](std::size_t i) { out[i] = dg[i] * g[i].inverse(); });
    return out;
}

}  // namespace solgeo
