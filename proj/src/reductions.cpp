#include "solgeo/reductions.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace solgeo {

namespace {

const double kPoleTol = 1e-12;

Field<cplx> scaled(const Field<cplx>& f, cplx s) {
    Field<cplx> r = f;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= s;
    return r;
}

Field<cplx> to_cplx(const ScalarField& f) {
    Field<cplx> r(f.spec(), cplx(0.0));
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    return r;
}

Field<cplx> constant_field(const GridSpec& spec, cplx v) { return Field<cplx>(spec, v); }

}  // namespace

double mmlxvi_constraint_deviation(const ScalarField& k, const ScalarField& sigma,
                                   const ScalarField& tau, double n) {
    double d = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        d = std::max(d, std::abs(k[i] * k[i] + sigma[i] * sigma[i] + tau[i] * tau[i] - n * n));
    return d;
}

ConnectionSet named_connection(ReductionKind kind, const NamedConnectionInputs& in, cplx lambda) {
    switch (kind) {
        case ReductionKind::ZsAkns:
        case ReductionKind::Knwki: {
            if (!in.p || !in.q) throw std::invalid_argument("named_connection: p, q required");
            const GridSpec& spec = in.p->spec();
            const cplx i1(0.0, 1.0);
            // ZS-AKNS: k = i(p+q), sigma = p-q, tau = -2 lambda
            // KNWKI: the same with an extra factor lambda on k and sigma
            const cplx s = (kind == ReductionKind::Knwki) ? lambda : cplx(1.0);
            Field<cplx> k(spec, cplx(0.0)), sg(spec, cplx(0.0));
            for (std::size_t idx = 0; idx < k.size(); ++idx) {
                k[idx] = s * i1 * ((*in.p)[idx] + (*in.q)[idx]);
                sg[idx] = s * ((*in.p)[idx] - (*in.q)[idx]);
            }
            Field<cplx> tau = constant_field(spec, -2.0 * lambda);
            ConnectionSet c(spec);
            c.set("x", su2_field(k, sg, tau));
            c.params.lambda = lambda;
            return c;
        }
        case ReductionKind::ChiralField: {
            if (!in.u || !in.v) throw std::invalid_argument("named_connection: u, v required");
            if (std::abs(lambda - cplx(1.0)) < kPoleTol || std::abs(lambda + cplx(1.0)) < kPoleTol)
                throw std::domain_error("named_connection: chiral field pole at lambda = +-1");
            ConnectionSet c(in.u->spec());
            MatrixField U = *in.u;
            MatrixField V = *in.v;
            const cplx cu = 1.0 / (1.0 - lambda);
            const cplx cv = 1.0 / (1.0 + lambda);
            for (std::size_t i = 0; i < U.size(); ++i) U[i] *= cu;
            for (std::size_t i = 0; i < V.size(); ++i) V[i] *= cv;
            c.set("x", std::move(U));
            c.set("t", std::move(V));
            c.params.lambda = lambda;
            return c;
        }
        case ReductionKind::MmLxviConstraint:
        case ReductionKind::GweCmpe: {
            if (!in.k || !in.sigma || !in.tau || !in.omega1 || !in.omega2 || !in.omega3)
                throw std::invalid_argument("named_connection: curvature and omega triples required");
            if (kind == ReductionKind::MmLxviConstraint) {
                const double dev = mmlxvi_constraint_deviation(*in.k, *in.sigma, *in.tau, in.n);
                if (dev > 1e-8 * std::max(1.0, in.n * in.n))
                    throw std::domain_error("named_connection: mM-LXVI constraint violated, max deviation " +
                                            std::to_string(dev));
            }
            ConnectionSet c(in.k->spec());
            c.set("x", su2_field(to_cplx(*in.k), to_cplx(*in.sigma), to_cplx(*in.tau)));
            c.set("t", su2_field(to_cplx(*in.omega3), to_cplx(*in.omega2), to_cplx(*in.omega1)));
            return c;
        }
    }
    throw std::logic_error("named_connection: unknown kind");
}

ResidualReport chiral_field_residual(const MatrixField& u, const MatrixField& v, cplx lambda,
                                     Scheme scheme) {
    NamedConnectionInputs in;
    in.u = u;
    in.v = v;
    ConnectionSet c = named_connection(ReductionKind::ChiralField, in, lambda);
    MatrixField r = zc_residual(c.at("x"), c.at("t"), "x", "t", scheme);
    ResidualReport rep;
    rep.set("zc", field_norms(r));
    return rep;
}

std::pair<MatrixField, MatrixField> evolve_chiral(const GridSpec& spec,
                                                  const std::function<Mat(double)>& u0,
                                                  const std::function<Mat(double)>& v_left) {
    const int ax = spec.axis_index("x");
    const int at = spec.axis_index("t");
    const Axis& xa = spec.axis(ax);
    const Axis& ta = spec.axis(at);
    const double dx = xa.h, dt = ta.h;
    const int nx = xa.n, nt = ta.n;

    auto bracket = [](const Mat& a, const Mat& b) { return commutator(a, b); };

    std::vector<std::vector<Mat>> u(static_cast<std::size_t>(nt)), v(static_cast<std::size_t>(nt));
    for (int n = 0; n < nt; ++n) {
        u[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(nx), Mat::zero(2));
        v[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(nx), Mat::zero(2));
    }
    for (int j = 0; j < nx; ++j)
        u[0][static_cast<std::size_t>(j)] = u0(xa.origin + j * dx);

    // march v in x at time level n with Heun, given u at that level
    auto march_v = [&](const std::vector<Mat>& ulev, const Mat& left) {
        std::vector<Mat> out(static_cast<std::size_t>(nx), Mat::zero(2));
        out[0] = left;
        for (int j = 0; j < nx - 1; ++j) {
            const std::size_t sj = static_cast<std::size_t>(j);
            const Mat f0 = bracket(ulev[sj], out[sj]) * cplx(0.5);
            const Mat pred = out[sj] + f0 * cplx(dx);
            const Mat f1 = bracket(ulev[sj + 1], pred) * cplx(0.5);
            out[sj + 1] = out[sj] + (f0 + f1) * cplx(0.5 * dx);
        }
        return out;
    };

    v[0] = march_v(u[0], v_left(ta.origin));
    for (int n = 0; n < nt - 1; ++n) {
        const std::size_t sn = static_cast<std::size_t>(n);
        // predictor
        std::vector<Mat> upred(static_cast<std::size_t>(nx), Mat::zero(2));
        for (int j = 0; j < nx; ++j) {
            const std::size_t sj = static_cast<std::size_t>(j);
            upred[sj] = u[sn][sj] - bracket(u[sn][sj], v[sn][sj]) * cplx(0.5 * dt);
        }
        const std::vector<Mat> vpred = march_v(upred, v_left(ta.origin + (n + 1) * dt));
        // corrector
        for (int j = 0; j < nx; ++j) {
            const std::size_t sj = static_cast<std::size_t>(j);
            const Mat f0 = bracket(u[sn][sj], v[sn][sj]) * cplx(-0.5);
            const Mat f1 = bracket(upred[sj], vpred[sj]) * cplx(-0.5);
            u[sn + 1][sj] = u[sn][sj] + (f0 + f1) * cplx(0.5 * dt);
        }
        v[sn + 1] = march_v(u[sn + 1], v_left(ta.origin + (n + 1) * dt));
    }

    MatrixField uf(spec, Mat::zero(2)), vf(spec, Mat::zero(2));
    for (std::size_t i = 0; i < uf.size(); ++i) {
        const std::size_t jn = static_cast<std::size_t>(spec.coord_index(i, at));
        const std::size_t jx = static_cast<std::size_t>(spec.coord_index(i, ax));
        uf[i] = u[jn][jx];
        vf[i] = v[jn][jx];
    }
    return {std::move(uf), std::move(vf)};
}

CoordinateMap::CoordinateMap(const std::array<std::array<double, 4>, 4>& H) : h_(H) {
    // verify invertibility via Gaussian elimination
    std::array<std::array<double, 4>, 4> m = H;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        if (std::abs(m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-12)
            throw std::invalid_argument("CoordinateMap: singular H");
        std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                             m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int c = col; c < 4; ++c)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
}

std::array<double, 4> CoordinateMap::apply(const std::array<double, 4>& x) const {
    std::array<double, 4> xi{};
    for (int mu = 0; mu < 4; ++mu)
        for (int i = 0; i < 4; ++i)
            xi[static_cast<std::size_t>(mu)] +=
                h_[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return xi;
}

CoordinateMap CoordinateMap::identity() {
    std::array<std::array<double, 4>, 4> h{};
    for (int i = 0; i < 4; ++i) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return CoordinateMap(h);
}

CoordinateMap CoordinateMap::random(std::mt19937_64& rng, double spread) {
    std::uniform_real_distribution<double> u(-spread, spread);
    std::array<std::array<double, 4>, 4> h{};
    for (int i = 0; i < 4; ++i) {
        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0 + u(rng);
        for (int j = 0; j < 4; ++j)
            if (i != j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u(rng);
    }
    return CoordinateMap(h);
}

ConnectionSet pullback_connection(const AnalyticPotential& A, const CoordinateMap& map,
                                  const GridSpec& spec_xyzt) {
    ConnectionSet out(spec_xyzt);
    const int rank = spec_xyzt.rank();
    std::vector<std::vector<Mat>> members(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i)
        members[static_cast<std::size_t>(i)].assign(spec_xyzt.size(), Mat::zero(A.dim));
    for_each_index(spec_xyzt.size(), [&](std::size_t idx) {
        const std::array<double, 4> xi = map.apply(spec_xyzt.point(idx));
        std::array<Mat, 4> comp{Mat::zero(A.dim), Mat::zero(A.dim), Mat::zero(A.dim), Mat::zero(A.dim)};
        for (int mu = 0; mu < A.naxes; ++mu) comp[static_cast<std::size_t>(mu)] = A.component(mu, xi);
        for (int i = 0; i < rank; ++i) {
            Mat s = Mat::zero(A.dim);
            for (int mu = 0; mu < A.naxes; ++mu) s += comp[static_cast<std::size_t>(mu)] * cplx(map.b(i, mu));
            members[static_cast<std::size_t>(i)][idx] = s;
        }
    });
    for (int i = 0; i < rank; ++i)
        out.set(spec_xyzt.axis(i).name, MatrixField(spec_xyzt, std::move(members[static_cast<std::size_t>(i)])));
    return out;
}

ResidualReport transform_curvature_components(const AnalyticPotential& A, const CoordinateMap& map,
                                              const GridSpec& spec_xyzt, Scheme scheme) {
    if (!A.component_deriv)
        throw std::invalid_argument("transform_curvature_components: analytic derivative required");
    ConnectionSet conns = pullback_connection(A, map, spec_xyzt);
    const int rank = spec_xyzt.rank();
    ResidualReport rep;
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            const std::string& ai = spec_xyzt.axis(i).name;
            const std::string& aj = spec_xyzt.axis(j).name;
            // route 1: curvature of the pulled-back connection, by differences
            MatrixField direct = zc_residual(conns.at(ai), conns.at(aj), ai, aj, scheme);
            // route 2: tensor transformation of the analytic xi-space curvature
            MatrixField tensor(spec_xyzt, Mat::zero(A.dim));
            for_each_index(spec_xyzt.size(), [&](std::size_t idx) {
                const std::array<double, 4> xi = map.apply(spec_xyzt.point(idx));
                Mat s = Mat::zero(A.dim);
                for (int mu = 0; mu < A.naxes; ++mu)
                    for (int nu = 0; nu < A.naxes; ++nu) {
                        const double c = map.b(i, mu) * map.b(j, nu);
                        if (c == 0.0 || mu == nu) continue;
                        // F_{mu nu} = d_nu A_mu - d_mu A_nu + [A_mu, A_nu], use mu<nu once
                        if (mu < nu) {
                            Mat f = A.component_deriv(nu, mu, xi) - A.component_deriv(mu, nu, xi) +
                                    commutator(A.component(mu, xi), A.component(nu, xi));
                            s += f * cplx(map.b(i, mu) * map.b(j, nu) - map.b(i, nu) * map.b(j, mu));
                        }
                    }
                tensor[idx] = s;
            });
            rep.set("F_" + ai + aj, field_norms(direct - tensor));
        }
    return rep;
}

EmbeddedPotential embed_2p1_into_sdym(const MatrixField& A, const MatrixField& B,
                                      const MatrixField& D) {
    const GridSpec& spec = A.spec();
    if (!(spec == B.spec()) || !(spec == D.spec()))
        throw std::invalid_argument("embed_2p1_into_sdym: grid mismatch");
    for (const char* ax : {"x", "y", "t"})
        if (!spec.has_axis(ax))
            throw std::invalid_argument(std::string("embed_2p1_into_sdym: missing axis ") + ax);
    const cplx i1(0.0, 1.0);
    const int dim = A[0].dim();
    EmbeddedPotential P{spec, MatrixField(spec, Mat::zero(dim)), MatrixField(spec, Mat::zero(dim)),
                        MatrixField(spec, Mat::zero(dim)), MatrixField(spec, Mat::zero(dim))};
    for_each_index(spec.size(), [&](std::size_t idx) {
        P.A1[idx] = i1 * D[idx];
        P.A2[idx] = -i1 * D[idx];
        P.A3[idx] = cplx(-0.5) * (A[idx] - i1 * B[idx]);
        P.A4[idx] = cplx(-0.5) * (A[idx] + i1 * B[idx]);
    });
    return P;
}

namespace {

/// Chain-rule xi-derivatives on the real (x, y, t) grid:
///   d_xi1 = -i d_t,  d_xi2 = +i d_t,
///   d_xi3 = (d_x - i d_y)/2,  d_xi4 = (d_x + i d_y)/2.
MatrixField xi_deriv(const MatrixField& f, int which, Scheme scheme) {
    const cplx i1(0.0, 1.0);
    switch (which) {
        case 1: {
            MatrixField d = partial(f, "t", scheme);
            for_each_index(d.size(), [&](std::size_t k) { d[k] = -i1 * d[k]; });
            return d;
        }
        case 2: {
            MatrixField d = partial(f, "t", scheme);
            for_each_index(d.size(), [&](std::size_t k) { d[k] = i1 * d[k]; });
            return d;
        }
        case 3:
        case 4: {
            MatrixField dx = partial(f, "x", scheme);
            MatrixField dy = partial(f, "y", scheme);
            const cplx cy = (which == 3) ? -i1 : i1;
            for_each_index(dx.size(), [&](std::size_t k) { dx[k] = cplx(0.5) * (dx[k] + cy * dy[k]); });
            return dx;
        }
    }
    throw std::logic_error("xi_deriv: bad axis");
}

}  // namespace

ResidualReport embedded_sd_residual(const EmbeddedPotential& P, Scheme scheme) {
    auto strength = [&](const MatrixField& Aa, int a, const MatrixField& Ab, int b) {
        MatrixField da = xi_deriv(Ab, a, scheme);
        MatrixField db = xi_deriv(Aa, b, scheme);
        for_each_index(da.size(), [&](std::size_t k) {
            da[k] = da[k] - db[k] + commutator(Aa[k], Ab[k]);
        });
        return da;
    };
    ResidualReport rep;
    rep.set("F_xi1xi2", field_norms(strength(P.A1, 1, P.A2, 2)));
    rep.set("F_xi3xi4", field_norms(strength(P.A3, 3, P.A4, 4)));
    MatrixField d = strength(P.A1, 1, P.A4, 4);
    MatrixField e = strength(P.A2, 2, P.A3, 3);
    for_each_index(d.size(), [&](std::size_t k) { d[k] -= e[k]; });
    rep.set("F_xi1xi4-F_xi2xi3", field_norms(d));
    return rep;
}

IdentifyResult mmlxviii_sdym_identify(const MatrixField& B0, const MatrixField& B1, cplx a, cplx b) {
    if (a != b)
        throw std::invalid_argument("mmlxviii_sdym_identify: identification requires a == b");
    const int dim = B0[0].dim();
    GaugePotential pot(B0.spec());
    pot.set("xi1", B0);
    pot.set("xi2", B1);
    pot.set("xi3", MatrixField(B0.spec(), Mat::zero(dim)));
    pot.set("xi4", MatrixField(B0.spec(), Mat::zero(dim)));
    ResidualReport rep;
    rep.set("mmlxviii", field_norms(mmlxviii_residual(B0, B1, a, b)));
    return {std::move(pot), std::move(rep)};
}

AnalyticPotential random_analytic_potential(std::mt19937_64& rng, int dim, int naxes,
                                            double amplitude) {
    struct Entry {
        FourierScalar re, im;
    };
    auto comps = std::make_shared<std::vector<std::vector<Entry>>>();
    for (int mu = 0; mu < naxes; ++mu) {
        std::vector<Entry> entries;
        for (int e = 0; e < dim * dim; ++e)
            entries.push_back({FourierScalar::random(rng, naxes, 1, amplitude),
                               FourierScalar::random(rng, naxes, 1, amplitude)});
        comps->push_back(std::move(entries));
    }
    AnalyticPotential pot;
    pot.dim = dim;
    pot.naxes = naxes;
    pot.component = [comps, dim](int axis, const std::array<double, 4>& x) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const Entry& e = (*comps)[static_cast<std::size_t>(axis)][static_cast<std::size_t>(i * dim + j)];
                m(i, j) = cplx(e.re.eval(x), e.im.eval(x));
            }
        return m;
    };
    pot.component_deriv = [comps, dim](int d_axis, int comp_axis, const std::array<double, 4>& x) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const Entry& e =
                    (*comps)[static_cast<std::size_t>(comp_axis)][static_cast<std::size_t>(i * dim + j)];
                m(i, j) = cplx(e.re.deriv(d_axis, x), e.im.deriv(d_axis, x));
            }
        return m;
    };
    return pot;
}

}  // namespace solgeo
