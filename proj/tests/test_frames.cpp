#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solgeo/frames.hpp"
#include "solgeo/mat.hpp"

using namespace solgeo;

namespace {

CoeffFn constant_coeffs(double k, double sigma, double tau, int beta = +1) {
    return [=](double) { return CurvatureTriple{k, sigma, tau, beta}; };
}

double frame_diff(const RMat& a, const RMat& b) { return (a - b).fnorm(); }

}  // namespace

TEST_CASE("zero coefficients leave the frame constant") {
    FrameLine line = integrate_frame_axis(RMat::identity(3), constant_coeffs(0, 0, 0), 100, 0.05);
    for (const RMat& f : line.frames) CHECK(frame_diff(f, RMat::identity(3)) == 0.0);
}

TEST_CASE("unit-curvature transport closes after one full turn") {
    const int n = 2000;
    const double h = 2.0 * M_PI / n;
    FrameLine line = integrate_frame_axis(RMat::identity(3), constant_coeffs(1, 0, 0), n + 1, h);
    CHECK(line.used == FrameStepper::rotation_exact);
    CHECK(frame_diff(line.frames.back(), RMat::identity(3)) < 1e-8);
}

TEST_CASE("constant coefficients match the matrix-exponential solution") {
    const double k = 0.9, sigma = 0.4, tau = -0.7;
    const int n = 500;
    const double h = 0.01;
    FrameLine line = integrate_frame_axis(RMat::identity(3), constant_coeffs(k, sigma, tau), n, h);
    Mat A = so3_from_triple(k, sigma, tau, +1);
    for (int i : {100, 250, 499}) {
        Mat ref = expm(A * cplx(i * h));
        const RMat& got = line.frames[static_cast<std::size_t>(i)];
        double d = 0.0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) d = std::max(d, std::abs(ref(r, c).real() - got(r, c)));
        CHECK(d < 1e-8);
    }
}

TEST_CASE("rotation-exact stepping keeps the Gram matrix to 1e-10 over 1e4 steps") {
    auto coeffs = [](double s) { return CurvatureTriple{std::sin(s), 0.3 * std::cos(2 * s), 0.8, +1}; };
    FrameLine line = integrate_frame_axis(RMat::identity(3), coeffs, 10001, 1e-3);
    double drift = 0.0;
    for (const RMat& f : line.frames) drift = std::max(drift, gram_drift(f, +1));
    CHECK(drift <= 1e-10);
}

TEST_CASE("transport commutes with a rigid rotation of the seed") {
    const RMat R = frame_rotation(3, 0.3, -0.5, 0.8, 1.0);
    auto coeffs = [](double s) { return CurvatureTriple{std::cos(s), 0.2, -0.4 * std::sin(s), +1}; };
    FrameLine a = integrate_frame_axis(RMat::identity(3), coeffs, 400, 0.01);
    FrameLine b = integrate_frame_axis(R, coeffs, 400, 0.01);
    for (std::size_t i = 0; i < a.frames.size(); i += 57)
        CHECK(frame_diff(a.frames[i] * R, b.frames[i]) < 1e-12);
}

TEST_CASE("indefinite-signature transport falls back to the projected RK4 path") {
    auto coeffs = [](double s) { return CurvatureTriple{0.5 * std::sin(s), 0.2, 0.3, -1}; };
    FrameLine line = integrate_frame_axis(RMat::identity(3), coeffs, 2000, 1e-3);
    CHECK(line.used == FrameStepper::rk4);
    double drift = 0.0;
    for (const RMat& f : line.frames) drift = std::max(drift, gram_drift(f, -1));
    CHECK(drift < 1e-8);
}

TEST_CASE("a non-orthonormal seed is rejected") {
    RMat bad = RMat::identity(3);
    bad(0, 0) = 1.5;
    CHECK_THROWS_AS((void)integrate_frame_axis(bad, constant_coeffs(1, 0, 0), 10, 0.1),
                    std::invalid_argument);
}

namespace {

/// Coefficient system on (x, y) with a shared generator: k-only triples with
/// the x coefficient depending only on x and the y coefficient only on y.
/// Such a system satisfies its cross-derivative compatibility exactly.
ConnectionCoefficients compatible_coeffs() {
    ConnectionCoefficients c;
    c.beta = +1;
    c.axes["x"] = [](const std::array<double, 4>& p) {
        return CurvatureTriple{1.0 + 0.5 * std::sin(p[0]), 0.0, 0.0, +1};
    };
    c.axes["y"] = [](const std::array<double, 4>& p) {
        return CurvatureTriple{0.7 * std::cos(p[1]), 0.0, 0.0, +1};
    };
    return c;
}

double max_compat_residual(int n) {
    GridSpec spec({Axis{"x", n, 1.0 / (n - 1), 0.0, Boundary::one_sided},
                   Axis{"y", n, 1.0 / (n - 1), 0.0, Boundary::one_sided}});
    FrameField frames = integrate_frame_grid(RMat::identity(3), compatible_coeffs(), spec, "x", "y");
    ResidualReport rep = frame_compatibility_residual(frames, compatible_coeffs());
    return rep.max_linf();
}

}  // namespace

TEST_CASE("frames from a compatible system satisfy the structure equations at O(h^2)") {
    const double r16 = max_compat_residual(17);
    const double r32 = max_compat_residual(33);
    const double r64 = max_compat_residual(65);
    CHECK(std::log2(r16 / r32) > 1.7);
    CHECK(std::log2(r32 / r64) > 1.7);
}

TEST_CASE("frames from an incompatible system leave a residual that does not vanish") {
    ConnectionCoefficients bad;
    bad.beta = +1;
    bad.axes["x"] = [](const std::array<double, 4>& p) {
        return CurvatureTriple{1.0 + 0.5 * std::sin(p[0]), 0.0, 0.0, +1};
    };
    // the y-coefficient varies with x and excites a different generator
    bad.axes["y"] = [](const std::array<double, 4>& p) {
        return CurvatureTriple{0.0, 0.0, 1.0 + 0.8 * std::sin(p[0]), +1};
    };
    auto residual = [&](int n) {
        GridSpec spec({Axis{"x", n, 1.0 / (n - 1), 0.0, Boundary::one_sided},
                       Axis{"y", n, 1.0 / (n - 1), 0.0, Boundary::one_sided}});
        FrameField frames = integrate_frame_grid(RMat::identity(3), bad, spec, "x", "y");
        return frame_compatibility_residual(frames, bad).at("frame_x").linf;
    };
    const double r32 = residual(33);
    const double r64 = residual(65);
    CHECK(r64 > 0.01);
    CHECK(r64 > 0.5 * r32);  // bounded away from zero under refinement
}

TEST_CASE("constant frame field has zero compatibility residual") {
    GridSpec spec({Axis{"x", 8, 0.1, 0.0, Boundary::one_sided},
                   Axis{"y", 8, 0.1, 0.0, Boundary::one_sided}});
    FrameField frames(spec, RMat::identity(3));
    ConnectionCoefficients zero;
    zero.axes["x"] = [](const std::array<double, 4>&) { return CurvatureTriple{0, 0, 0, +1}; };
    zero.axes["y"] = [](const std::array<double, 4>&) { return CurvatureTriple{0, 0, 0, +1}; };
    CHECK(frame_compatibility_residual(frames, zero).max_linf() == 0.0);
}

TEST_CASE("paired-coordinate transport: zero coefficients and zero advection") {
    GridSpec spec({Axis{"xi1", 10, 0.05, 0.0, Boundary::one_sided},
                   Axis{"xi3", 16, 2.0 * M_PI / 16, 0.0, Boundary::periodic}});
    std::vector<RMat> boundary(16, RMat::identity(3));
    FrameField out = integrate_mmlxviii(
        boundary, [](const std::array<double, 4>&) { return CurvatureTriple{0, 0, 0, +1}; }, 0.0,
        spec);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(frame_diff(out[i], RMat::identity(3)) == 0.0);
}

TEST_CASE("paired-coordinate transport: pure advection moves the boundary profile") {
    const double a = 0.5;
    auto zero = [](const std::array<double, 4>&) { return CurvatureTriple{0, 0, 0, +1}; };
    auto profile = [](double xi3) { return frame_rotation(3, std::sin(xi3), 0.0, 0.0, 1.0); };
    auto err = [&](int n3) {
        const int n1 = n3;
        GridSpec spec({Axis{"xi1", n1, 1.0 / (n1 - 1), 0.0, Boundary::one_sided},
                       Axis{"xi3", n3, 2.0 * M_PI / n3, 0.0, Boundary::periodic}});
        std::vector<RMat> boundary;
        for (int j = 0; j < n3; ++j) boundary.push_back(profile(j * spec.axis(1).h));
        FrameField out = integrate_mmlxviii(boundary, zero, a, spec);
        double e = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double xi1 = out.spec().coord(i, 0);
            const double xi3 = out.spec().coord(i, 1);
            e = std::max(e, frame_diff(out[i], profile(xi3 + a * xi1)));
        }
        return e;
    };
    const double e32 = err(32);
    const double e64 = err(64);
    CHECK(std::log2(e32 / e64) > 1.7);
}

TEST_CASE("paired-coordinate transport rejects unstable step ratios") {
    GridSpec spec({Axis{"xi1", 10, 1.0, 0.0, Boundary::one_sided},
                   Axis{"xi3", 8, 0.1, 0.0, Boundary::periodic}});
    std::vector<RMat> boundary(8, RMat::identity(3));
    CHECK_THROWS_AS((void)integrate_mmlxviii(
                        boundary, [](const std::array<double, 4>&) { return CurvatureTriple{0, 0, 0, +1}; },
                        2.0, spec),
                    std::domain_error);
}

TEST_CASE("curve reconstruction: straight line, circle, helix") {
    // straight segment
    FrameLine straight = integrate_frame_axis(RMat::identity(3), constant_coeffs(0, 0, 0), 101, 0.01);
    std::vector<Vec3> pts = reconstruct_curve(straight);
    CHECK(std::abs(pts.back()[0] - 1.0) < 1e-14);
    CHECK(std::abs(pts.back()[1]) == 0.0);

    // unit circle: curvature 1, torsion 0
    const int n = 8000;
    const double h = 2.0 * M_PI / n;
    FrameLine circ = integrate_frame_axis(RMat::identity(3), constant_coeffs(1, 0, 0), n + 1, h);
    std::vector<Vec3> cpts = reconstruct_curve(circ);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = i * h;
        const Vec3& p = cpts[static_cast<std::size_t>(i)];
        err = std::max({err, std::abs(p[0] - std::sin(s)), std::abs(p[1] - (1.0 - std::cos(s))),
                        std::abs(p[2])});
    }
    CHECK(err < 1e-6);

    // helix: constant curvature and torsion, closed-form pitch
    const double k = 0.8, tau = 0.4, w = std::hypot(k, tau);
    FrameLine hel = integrate_frame_axis(RMat::identity(3), constant_coeffs(k, 0, tau), n + 1, h);
    std::vector<Vec3> hpts = reconstruct_curve(hel);
    err = 0.0;
    for (int i = 0; i <= n; i += 101) {
        const double s = i * h;
        const Vec3& p = hpts[static_cast<std::size_t>(i)];
        err = std::max({err,
                        std::abs(p[0] - (tau * tau * s / (w * w) + k * k * std::sin(w * s) / (w * w * w))),
                        std::abs(p[1] - k * (1.0 - std::cos(w * s)) / (w * w)),
                        std::abs(p[2] - k * tau * (s - std::sin(w * s) / w) / (w * w))});
    }
    CHECK(err < 1e-6);
}

TEST_CASE("plane-case frames rotate by the integrated turning angle") {
    auto coeffs = [](double s) { return CurvatureTriple{std::cos(s), 0.0, 0.0, +1}; };
    FrameLine line = integrate_frame_axis(RMat::identity(2), coeffs, 1001, 1e-3);
    // exact frame angle is the antiderivative sin(s)
    const double s = 1.0;
    const RMat& f = line.frames.back();
    CHECK(std::abs(f(0, 0) - std::cos(std::sin(s))) < 1e-6);
    CHECK(std::abs(f(0, 1) - std::sin(std::sin(s))) < 1e-6);
}
