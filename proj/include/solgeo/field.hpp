#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "solgeo/exec.hpp"
#include "solgeo/grid.hpp"
#include "solgeo/mat.hpp"

namespace solgeo {

/// One value of type T per grid node, immutable spec. T is double, Mat, or a
/// small vector type; it needs +, -, and scalar multiplication.
template <class T>
class Field {
public:
    Field() = default;
    Field(GridSpec spec, T fill) : spec_(std::move(spec)), values_(spec_.size(), fill) {}
    Field(GridSpec spec, std::vector<T> values) : spec_(std::move(spec)), values_(std::move(values)) {
        if (values_.size() != spec_.size())
            throw std::invalid_argument("Field: value count does not match grid size");
    }

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return values_.size(); }

    T& operator[](std::size_t i) { return values_[i]; }
    const T& operator[](std::size_t i) const { return values_[i]; }

    const std::vector<T>& values() const { return values_; }
    std::vector<T>& values() { return values_; }

    template <class F>
    static Field sampled(const GridSpec& spec, F&& fn) {
        std::vector<T> v;
        v.reserve(spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i) v.push_back(fn(spec.point(i)));
        return Field(spec, std::move(v));
    }

    Field& operator+=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }

private:
    void check(const Field& o) const {
        if (!(spec_ == o.spec_)) throw std::invalid_argument("Field: grid mismatch");
    }

    GridSpec spec_;
    std::vector<T> values_;
};

using ScalarField = Field<double>;
using MatrixField = Field<Mat>;

/// Frobenius magnitude of one node value, used by the norm aggregators.
inline double node_mag(double v) { return std::abs(v); }
inline double node_mag(const cplx& v) { return std::abs(v); }
inline double node_mag(const Mat& m) { return m.fnorm(); }

struct Norms {
    double linf = 0.0;
    double l2 = 0.0;
};

/// (L-inf, L2) over nodes; L2 is the RMS-style grid norm sqrt(sum |f_i|^2 * h^rank).
template <class T>
Norms field_norms(const Field<T>& f) {
    double cell = 1.0;
    for (const Axis& a : f.spec().axes()) cell *= a.h;
    Norms n;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double m = node_mag(f[i]);
        n.linf = std::max(n.linf, m);
        s += m * m;
    }
    n.l2 = std::sqrt(s * cell);
    return n;
}

}  // namespace solgeo
