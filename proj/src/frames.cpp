#include "solgeo/frames.hpp"

#include <stdexcept>

namespace solgeo {

RMat frame_coeff_matrix(int dim, double c1, double c2, double c3, int beta) {
    RMat m = RMat::zero(dim);
    if (dim == 2) {
        m(0, 1) = c1;
        m(1, 0) = -double(beta) * c1;
        return m;
    }
    m(0, 1) = c1;
    m(0, 2) = -c2;
    m(1, 0) = -double(beta) * c1;
    m(1, 2) = c3;
    m(2, 0) = double(beta) * c2;
    m(2, 1) = -c3;
    return m;
}

RMat frame_rotation(int dim, double c1, double c2, double c3, double h) {
    if (dim == 2) {
        const double th = h * c1;
        RMat r = RMat::identity(2);
        r(0, 0) = std::cos(th);
        r(0, 1) = std::sin(th);
        r(1, 0) = -std::sin(th);
        r(1, 1) = std::cos(th);
        return r;
    }
    const RMat A = frame_coeff_matrix(3, c1, c2, c3, +1);
    const double w = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
    const double th = h * w;
    double s, c;  // sin(th)/th and (1-cos th)/th^2
    if (std::abs(th) < 1e-4) {
        s = 1.0 - th * th / 6.0;
        c = 0.5 - th * th / 24.0;
    } else {
        s = std::sin(th) / th;
        c = (1.0 - std::cos(th)) / (th * th);
    }
    const RMat hA = A * h;
    return RMat::identity(3) + s * hA + c * (hA * hA);
}

namespace {

double metric_dot(const RMat& f, int i, int j, int beta) {
    double s = 0.0;
    for (int k = 0; k < f.dim; ++k) s += f(i, k) * (k == 0 ? double(beta) : 1.0) * f(j, k);
    return s;
}

}  // namespace

double gram_drift(const RMat& frame, int beta) {
    double d = 0.0;
    for (int i = 0; i < frame.dim; ++i)
        for (int j = 0; j < frame.dim; ++j) {
            const double target = (i != j) ? 0.0 : (i == 0 ? double(beta) : 1.0);
            d = std::max(d, std::abs(metric_dot(frame, i, j, beta) - target));
        }
    return d;
}

RMat reorthonormalize(const RMat& frame, int beta) {
    RMat v = frame;
    for (int i = 0; i < v.dim; ++i) {
        for (int j = 0; j < i; ++j) {
            const double c = metric_dot(v, i, j, beta) / metric_dot(v, j, j, beta);
            for (int k = 0; k < v.dim; ++k) v(i, k) -= c * v(j, k);
        }
        const double n = metric_dot(v, i, i, beta);
        if (std::abs(n) < 1e-14)
            throw std::domain_error("reorthonormalize: degenerate frame under indefinite metric");
        const double inv = 1.0 / std::sqrt(std::abs(n));
        for (int k = 0; k < v.dim; ++k) v(i, k) *= inv;
    }
    return v;
}

FrameLine integrate_frame_axis(const RMat& frame0, const CoeffFn& coeffs, int n, double h,
                               double origin, FrameStepper stepper) {
    CurvatureTriple probe = coeffs(origin);
    const int beta = probe.beta;
    if (gram_drift(frame0, beta) > 1e-12)
        throw std::invalid_argument("integrate_frame_axis: seed frame not orthonormal");

    FrameLine line;
    line.h = h;
    line.origin = origin;
    line.used = (beta == +1 && stepper == FrameStepper::rotation_exact) ? FrameStepper::rotation_exact
                                                                        : FrameStepper::rk4;
    line.frames.reserve(static_cast<std::size_t>(n));
    line.frames.push_back(frame0);

    const int dim = frame0.dim;
    for (int i = 0; i < n - 1; ++i) {
        const double s = origin + i * h;
        const RMat& cur = line.frames.back();
        if (line.used == FrameStepper::rotation_exact) {
            const CurvatureTriple c = coeffs(s + 0.5 * h);
            line.frames.push_back(frame_rotation(dim, c.k, c.sigma, c.tau, h) * cur);
        } else {
            auto rhs = [&](double at, const RMat& e) {
                const CurvatureTriple c = coeffs(at);
                return frame_coeff_matrix(dim, c.k, c.sigma, c.tau, c.beta) * e;
            };
            const RMat k1 = rhs(s, cur);
            const RMat k2 = rhs(s + 0.5 * h, cur + 0.5 * h * k1);
            const RMat k3 = rhs(s + 0.5 * h, cur + 0.5 * h * k2);
            const RMat k4 = rhs(s + h, cur + h * k3);
            RMat next = cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            line.frames.push_back(reorthonormalize(next, beta));
        }
    }
    return line;
}

FrameField integrate_frame_grid(const RMat& frame0, const ConnectionCoefficients& coeffs,
                                const GridSpec& spec, const std::string& first,
                                const std::string& second) {
    const int a0 = spec.axis_index(first);
    const int a1 = spec.axis_index(second);
    const Axis& ax0 = spec.axis(a0);
    const Axis& ax1 = spec.axis(a1);

    auto coeff_on = [&](const std::string& axis, std::array<double, 4> pt) {
        CurvatureTriple t{};
        const CoefficientTriple c = [&] {
            auto fn = coeffs.axes.at(axis);
            const CurvatureTriple v = fn(pt);
            return CoefficientTriple{v.k, v.sigma, v.tau};
        }();
        t.k = c.c1;
        t.sigma = c.c2;
        t.tau = c.c3;
        t.beta = coeffs.beta;
        return t;
    };

    FrameField out(spec, frame0);
    // seed line along `first` at second = origin
    {
        auto fn = [&](double s) {
            std::array<double, 4> pt{};
            pt[static_cast<std::size_t>(a0)] = s;
            pt[static_cast<std::size_t>(a1)] = ax1.origin;
            return coeff_on(first, pt);
        };
        FrameLine seed = integrate_frame_axis(frame0, fn, ax0.n, ax0.h, ax0.origin);
        for (int i = 0; i < ax0.n; ++i)
            out[static_cast<std::size_t>(i) * spec.stride(a0)] = seed.frames[static_cast<std::size_t>(i)];
    }
    // fill along `second` from every seed node
    for_each_index(static_cast<std::size_t>(ax0.n), [&](std::size_t i) {
        const std::size_t base = i * spec.stride(a0);
        const double x0 = ax0.origin + static_cast<double>(i) * ax0.h;
        auto fn = [&](double s) {
            std::array<double, 4> pt{};
            pt[static_cast<std::size_t>(a0)] = x0;
            pt[static_cast<std::size_t>(a1)] = s;
            return coeff_on(second, pt);
        };
        FrameLine col = integrate_frame_axis(out[base], fn, ax1.n, ax1.h, ax1.origin);
        for (int j = 0; j < ax1.n; ++j)
            out[base + static_cast<std::size_t>(j) * spec.stride(a1)] = col.frames[static_cast<std::size_t>(j)];
    });
    return out;
}

ResidualReport frame_compatibility_residual(const FrameField& frames,
                                            const ConnectionCoefficients& coeffs) {
    const GridSpec& spec = frames.spec();
    if (spec.rank() < 2)
        throw std::invalid_argument("frame_compatibility_residual: need >= 2 axes");
    ResidualReport rep;
    for (const auto& [axis, fn] : coeffs.axes) {
        if (!spec.has_axis(axis)) continue;
        FrameField d = partial(frames, axis);
        for_each_index(frames.size(), [&](std::size_t i) {
            const CurvatureTriple c = fn(spec.point(i));
            const RMat A = frame_coeff_matrix(frames[i].dim, c.k, c.sigma, c.tau, coeffs.beta);
            d[i] -= A * frames[i];
        });
        rep.set("frame_" + axis, field_norms(d));
    }
    return rep;
}

FrameField integrate_mmlxviii(const std::vector<RMat>& boundary,
                              const std::function<CurvatureTriple(const std::array<double, 4>&)>& coeffs,
                              double a, const GridSpec& spec) {
    if (spec.rank() != 2) throw std::invalid_argument("integrate_mmlxviii: (xi1, xi3) grid required");
    const Axis& ax1 = spec.axis(0);  // marching coordinate xi1
    const Axis& ax3 = spec.axis(1);  // transverse coordinate xi3, periodic
    if (boundary.size() != static_cast<std::size_t>(ax3.n))
        throw std::invalid_argument("integrate_mmlxviii: boundary size mismatch");
    if (std::abs(a) * ax1.h / ax3.h > 1.0)
        throw std::domain_error("integrate_mmlxviii: CFL violation, |a| h1/h3 > 1");

    const int n3 = ax3.n;
    const int dim = boundary[0].dim;
    using Line = std::vector<RMat>;

    auto rhs = [&](double s1, const Line& e) {
        Line r(static_cast<std::size_t>(n3), RMat::zero(dim));
        for (int j = 0; j < n3; ++j) {
            const int jp = (j + 1) % n3;
            const int jm = (j - 1 + n3) % n3;
            RMat adv = (e[static_cast<std::size_t>(jp)] - e[static_cast<std::size_t>(jm)]) *
                       (a / (2.0 * ax3.h));
            std::array<double, 4> pt{s1, ax3.origin + j * ax3.h, 0.0, 0.0};
            const CurvatureTriple c = coeffs(pt);
            r[static_cast<std::size_t>(j)] =
                adv + frame_coeff_matrix(dim, c.k, c.sigma, c.tau, c.beta) * e[static_cast<std::size_t>(j)];
        }
        return r;
    };
    auto saxpy = [&](const Line& x, double s, const Line& y) {
        Line r = x;
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += s * y[j];
        return r;
    };

    FrameField out(spec, boundary[0]);
    Line cur = boundary;
    const double h = ax1.h;
    for (int i = 0; i < ax1.n; ++i) {
        for (int j = 0; j < n3; ++j)
            out[static_cast<std::size_t>(i) * spec.stride(0) + static_cast<std::size_t>(j)] =
                cur[static_cast<std::size_t>(j)];
        if (i == ax1.n - 1) break;
        const double s1 = ax1.origin + i * h;
        const Line k1 = rhs(s1, cur);
        const Line k2 = rhs(s1 + 0.5 * h, saxpy(cur, 0.5 * h, k1));
        const Line k3 = rhs(s1 + 0.5 * h, saxpy(cur, 0.5 * h, k2));
        const Line k4 = rhs(s1 + h, saxpy(cur, h, k3));
        for (int j = 0; j < n3; ++j) {
            const std::size_t sj = static_cast<std::size_t>(j);
            cur[sj] += (h / 6.0) * (k1[sj] + 2.0 * k2[sj] + 2.0 * k3[sj] + k4[sj]);
        }
    }
    return out;
}

std::vector<Vec3> reconstruct_curve(const FrameLine& line) {
    std::vector<Vec3> pos;
    pos.reserve(line.frames.size());
    Vec3 p{0.0, 0.0, 0.0};
    pos.push_back(p);
    for (std::size_t i = 0; i + 1 < line.frames.size(); ++i) {
        const RMat& f0 = line.frames[i];
        const RMat& f1 = line.frames[i + 1];
        for (int k = 0; k < f0.dim; ++k)
            p[static_cast<std::size_t>(k)] += 0.5 * line.h * (f0(0, k) + f1(0, k));
        pos.push_back(p);
    }
    return pos;
}

}  // namespace solgeo
