#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace solgeo {

using cplx = std::complex<double>;

/// Per-point curvature data of a frame axis: normal curvature k, geodesic
/// curvature sigma, geodesic torsion tau, and the signature beta of e1.
struct CurvatureTriple {
    double k = 0.0;
    double sigma = 0.0;
    double tau = 0.0;
    int beta = +1;
};

/// Generic coefficient triple for the transverse axes (m, n, omega triples).
struct CoefficientTriple {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Small dense complex matrix of dimension 2 or 3, row-major, value semantics.
/// This is the single matrix type carried by every field in the library.
class Mat {
public:
    Mat() : dim_(2) {}
    explicit Mat(int dim) : dim_(dim) {
        if (dim != 2 && dim != 3) throw std::invalid_argument("Mat: dim must be 2 or 3");
    }

    static Mat zero(int dim) { return Mat(dim); }
    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

    Mat& operator+=(const Mat& o) {
        check_dim(o);
        for (int i = 0; i < dim_ * dim_; ++i) a_[static_cast<std::size_t>(i)] += o.a_[static_cast<std::size_t>(i)];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_dim(o);
        for (int i = 0; i < dim_ * dim_; ++i) a_[static_cast<std::size_t>(i)] -= o.a_[static_cast<std::size_t>(i)];
        return *this;
    }
    Mat& operator*=(cplx s) {
        for (int i = 0; i < dim_ * dim_; ++i) a_[static_cast<std::size_t>(i)] *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, cplx s) { return a *= s; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) { return a *= cplx(-1.0); }

    friend Mat operator*(const Mat& a, const Mat& b) {
        a.check_dim(b);
        Mat r(a.dim_);
        for (int i = 0; i < a.dim_; ++i)
            for (int k = 0; k < a.dim_; ++k) {
                const cplx aik = a(i, k);
                for (int j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    Mat transpose() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Mat adjoint() const {
        Mat r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double fnorm() const {
        double s = 0.0;
        for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[static_cast<std::size_t>(i)]);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (int i = 0; i < dim_ * dim_; ++i) s = std::max(s, std::abs(a_[static_cast<std::size_t>(i)]));
        return s;
    }

    cplx det() const {
        const Mat& m = *this;
        if (dim_ == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
             - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
             + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    /// Closed-form inverse (adjugate / determinant). Throws on a singular matrix.
    Mat inverse() const {
        const cplx d = det();
        if (std::abs(d) == 0.0) throw std::domain_error("Mat::inverse: singular matrix");
        const cplx id = 1.0 / d;
        Mat r(dim_);
        const Mat& m = *this;
        if (dim_ == 2) {
            r(0, 0) = m(1, 1) * id;
            r(0, 1) = -m(0, 1) * id;
            r(1, 0) = -m(1, 0) * id;
            r(1, 1) = m(0, 0) * id;
        } else {
            r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * id;
            r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * id;
            r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * id;
            r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * id;
            r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * id;
            r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * id;
            r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * id;
            r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * id;
            r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * id;
        }
        return r;
    }

private:
    void check_dim(const Mat& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("Mat: dimension mismatch");
    }

    int dim_;
    std::array<cplx, 9> a_{};
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Matrix exponential by scaling-and-squaring with a Taylor series.
/// Good to machine precision for the 2x2 / 3x3 matrices used here.
inline Mat expm(const Mat& m) {
    const double norm = m.fnorm();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Mat x = m * cplx(scale);
    Mat term = Mat::identity(m.dim());
    Mat sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * x * cplx(1.0 / k);
        sum += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

/// The 3x3 frame coefficient matrix
///   [ 0, c1, -c2; -beta*c1, 0, c3; beta*c2, -c3, 0 ]
/// with (c1,c2,c3) = (k, sigma, tau) or one of the (m,n,omega) triples.
/// Antisymmetric exactly when beta = +1.
inline Mat so3_from_triple(double c1, double c2, double c3, int beta) {
    Mat m(3);
    m(0, 1) = c1;
    m(0, 2) = -c2;
    m(1, 0) = -double(beta) * c1;
    m(1, 2) = c3;
    m(2, 0) = double(beta) * c2;
    m(2, 1) = -c3;
    return m;
}

inline Mat so3_from_triple(const CurvatureTriple& t) {
    return so3_from_triple(t.k, t.sigma, t.tau, t.beta);
}

inline Mat so3_from_triple(const CoefficientTriple& t, int beta) {
    return so3_from_triple(t.c1, t.c2, t.c3, beta);
}

/// The traceless 2x2 matrix (1/2i) [ a3, a1 - i a2; a1 + i a2, -a3 ].
/// With (a1,a2,a3) = (k, sigma, tau) this is the U of the frame Lax pair;
/// the same layout serves V, W, T and B0, B1.
inline Mat su2_from_triple(cplx a1, cplx a2, cplx a3) {
    const cplx half_over_i = cplx(0.0, -0.5);  // 1/(2i)
    Mat m(2);
    m(0, 0) = half_over_i * a3;
    m(0, 1) = half_over_i * (a1 - cplx(0.0, 1.0) * a2);
    m(1, 0) = half_over_i * (a1 + cplx(0.0, 1.0) * a2);
    m(1, 1) = -half_over_i * a3;
    return m;
}

/// Pauli-basis spin matrix S = S1 s1 + S2 s2 + S3 s3 =
/// [ S3, S1 - i S2; S1 + i S2, -S3 ].  Satisfies S*S = |S|^2 I.
inline Mat spin_matrix(double s1, double s2, double s3) {
    Mat m(2);
    m(0, 0) = s3;
    m(0, 1) = cplx(s1, -s2);
    m(1, 0) = cplx(s1, s2);
    m(1, 1) = -s3;
    return m;
}

}  // namespace solgeo
