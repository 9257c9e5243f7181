#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace solgeo {

/// Boundary handling per axis: periodic wrap, or one-sided stencils at the ends.
enum class Boundary { periodic, one_sided };

struct Axis {
    std::string name;
    int n = 0;          // point count, >= 3
    double h = 0.0;     // uniform spacing, > 0
    double origin = 0.0;
    Boundary boundary = Boundary::periodic;
};

/// Uniform tensor-product grid over 1-4 named coordinates.
class GridSpec {
public:
    GridSpec() = default;
    explicit GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
        if (axes_.empty() || axes_.size() > 4)
            throw std::invalid_argument("GridSpec: 1-4 axes required");
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            const Axis& a = axes_[i];
            if (a.n < 3) throw std::invalid_argument("GridSpec: axis '" + a.name + "' needs >= 3 points");
            if (!(a.h > 0.0)) throw std::invalid_argument("GridSpec: axis '" + a.name + "' needs spacing > 0");
            for (std::size_t j = 0; j < i; ++j)
                if (axes_[j].name == a.name)
                    throw std::invalid_argument("GridSpec: duplicate axis name '" + a.name + "'");
        }
        strides_.assign(axes_.size(), 1);
        for (int i = static_cast<int>(axes_.size()) - 2; i >= 0; --i)
            strides_[static_cast<std::size_t>(i)] =
                strides_[static_cast<std::size_t>(i) + 1] * static_cast<std::size_t>(axes_[static_cast<std::size_t>(i) + 1].n);
    }

    int rank() const { return static_cast<int>(axes_.size()); }
    const std::vector<Axis>& axes() const { return axes_; }
    const Axis& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }

    int axis_index(const std::string& name) const {
        for (std::size_t i = 0; i < axes_.size(); ++i)
            if (axes_[i].name == name) return static_cast<int>(i);
        throw std::invalid_argument("GridSpec: unknown axis '" + name + "'");
    }
    bool has_axis(const std::string& name) const {
        for (const Axis& a : axes_)
            if (a.name == name) return true;
        return false;
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (const Axis& a : axes_) s *= static_cast<std::size_t>(a.n);
        return s;
    }

    std::size_t stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }

    /// Index of this node along `axis`, decoded from the flat index.
    int coord_index(std::size_t flat, int axis) const {
        return static_cast<int>((flat / strides_[static_cast<std::size_t>(axis)]) %
                                static_cast<std::size_t>(axes_[static_cast<std::size_t>(axis)].n));
    }

    double coord(std::size_t flat, int axis) const {
        const Axis& a = axes_[static_cast<std::size_t>(axis)];
        return a.origin + a.h * coord_index(flat, axis);
    }

    /// Coordinates of a node, padded with zeros for absent axes.
    std::array<double, 4> point(std::size_t flat) const {
        std::array<double, 4> p{};
        for (int a = 0; a < rank(); ++a) p[static_cast<std::size_t>(a)] = coord(flat, a);
        return p;
    }

    /// Flat index of the node shifted by `offset` along `axis`, respecting the
    /// axis boundary. For one-sided axes the shift is clamped by the caller;
    /// here out-of-range means wrap (periodic) or throw.
    std::size_t shifted(std::size_t flat, int axis, int offset) const {
        const Axis& a = axes_[static_cast<std::size_t>(axis)];
        int i = coord_index(flat, axis) + offset;
        if (a.boundary == Boundary::periodic) {
            i = ((i % a.n) + a.n) % a.n;
        } else if (i < 0 || i >= a.n) {
            throw std::out_of_range("GridSpec::shifted: index outside one-sided axis");
        }
        const std::size_t st = strides_[static_cast<std::size_t>(axis)];
        const std::size_t base = flat - static_cast<std::size_t>(coord_index(flat, axis)) * st;
        return base + static_cast<std::size_t>(i) * st;
    }

    bool operator==(const GridSpec& o) const {
        if (axes_.size() != o.axes_.size()) return false;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            const Axis &a = axes_[i], &b = o.axes_[i];
            if (a.name != b.name || a.n != b.n || a.h != b.h || a.origin != b.origin ||
                a.boundary != b.boundary)
                return false;
        }
        return true;
    }

private:
    std::vector<Axis> axes_;
    std::vector<std::size_t> strides_;
};

/// Convenience: periodic grid over [0, 2*pi) per axis with n points each.
GridSpec periodic_grid(const std::vector<std::string>& names, int n);

}  // namespace solgeo
