#pragma once

#include <stdexcept>
#include <string>

#include "solgeo/field.hpp"

namespace solgeo {

enum class Scheme { central2, central4, one_sided2 };

namespace detail {

template <class T>
T axis_derivative_at(const Field<T>& f, std::size_t idx, int ax, Scheme scheme) {
    const GridSpec& spec = f.spec();
    const Axis& a = spec.axis(ax);
    const double h = a.h;
    const int i = spec.coord_index(idx, ax);
    const bool periodic = (a.boundary == Boundary::periodic);

    auto at = [&](int off) -> const T& { return f[spec.shifted(idx, ax, off)]; };

    const bool at_lo = (i == 0);
    const bool at_hi = (i == a.n - 1);
    const bool ends_one_sided = (scheme == Scheme::one_sided2) || !periodic;
    if (ends_one_sided && at_lo) return (at(1) * 4.0 - at(2) - f[idx] * 3.0) * (1.0 / (2.0 * h));
    if (ends_one_sided && at_hi) return (f[idx] * 3.0 - at(-1) * 4.0 + at(-2)) * (1.0 / (2.0 * h));

    if (scheme == Scheme::central4) {
        if (!periodic && (i < 2 || i > a.n - 3))  // degrade to 2nd order near the ends
            return (at(1) - at(-1)) * (1.0 / (2.0 * h));
        return (at(-2) - at(2) + (at(1) - at(-1)) * 8.0) * (1.0 / (12.0 * h));
    }

    return (at(1) - at(-1)) * (1.0 / (2.0 * h));
}

}  // namespace detail

/// Node-wise finite-difference derivative along a named axis.
template <class T>
Field<T> partial(const Field<T>& f, const std::string& axis, Scheme scheme = Scheme::central2,
                 Exec exec = default_exec()) {
    const GridSpec& spec = f.spec();
    const int ax = spec.axis_index(axis);
    const Axis& a = spec.axis(ax);
    const int need = (scheme == Scheme::central4) ? 5 : 3;
    if (a.n < need) throw std::invalid_argument("partial: stencil wider than grid on axis '" + axis + "'");

    Field<T> out = f;
    for_each_index(spec.size(), exec, [&](std::size_t idx) {
        out[idx] = detail::axis_derivative_at(f, idx, ax, scheme);
    });
    return out;
}

/// Cumulative trapezoidal integral along `axis`, anchored at 0 on the lower
/// boundary. Inverse of partial up to O(h^2) in the interior.
template <class T>
Field<T> antiderivative(const Field<T>& f, const std::string& axis, Exec exec = default_exec()) {
    const GridSpec& spec = f.spec();
    const int ax = spec.axis_index(axis);
    const Axis& a = spec.axis(ax);
    const double h = a.h;

    Field<T> out = f;
    // lines along `axis` are independent; parallelize over transverse nodes
    const std::size_t nlines = spec.size() / static_cast<std::size_t>(a.n);
    const std::size_t st = spec.stride(ax);

    for_each_index(nlines, exec, [&](std::size_t line) {
        // flat index of the line's first node: distribute `line` over all axes
        // except `ax`
        std::size_t rem = line;
        std::size_t base = 0;
        for (int other = spec.rank() - 1; other >= 0; --other) {
            if (other == ax) continue;
            const std::size_t n = static_cast<std::size_t>(spec.axis(other).n);
            base += (rem % n) * spec.stride(other);
            rem /= n;
        }
        T acc = f[base] - f[base];  // zero of the right shape
        out[base] = acc;
        for (int i = 1; i < a.n; ++i) {
            const std::size_t prev = base + static_cast<std::size_t>(i - 1) * st;
            const std::size_t cur = base + static_cast<std::size_t>(i) * st;
            acc += (f[prev] + f[cur]) * (0.5 * h);
            out[cur] = acc;
        }
    });
    return out;
}

}  // namespace solgeo
