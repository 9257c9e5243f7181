#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solgeo/field.hpp"

namespace solgeo {

/// Named residual norms for one check, plus optional refinement data.
class ResidualReport {
public:
    void set(const std::string& label, Norms n) { entries_[label] = n; }
    const Norms& at(const std::string& label) const { return entries_.at(label); }
    bool has(const std::string& label) const { return entries_.count(label) != 0; }
    const std::map<std::string, Norms>& entries() const { return entries_; }

    double max_linf() const {
        double m = 0.0;
        for (const auto& [k, v] : entries_) m = std::max(m, v.linf);
        return m;
    }

    void merge(const ResidualReport& o, const std::string& prefix = "") {
        for (const auto& [k, v] : o.entries_) entries_[prefix + k] = v;
    }

private:
    std::map<std::string, Norms> entries_;
};

/// Residuals of one labelled check across a sequence of grid refinements.
struct ConvergenceRow {
    double h = 0.0;
    Norms norms;
};

class ConvergenceTable {
public:
    void add(const std::string& label, double h, Norms n) { rows_[label].push_back({h, n}); }
    void add_level(double h, const ResidualReport& rep) {
        for (const auto& [k, v] : rep.entries()) add(k, h, v);
    }

    const std::map<std::string, std::vector<ConvergenceRow>>& rows() const { return rows_; }

    /// Observed order from the finest pair of levels (log-ratio of L-inf norms).
    /// Requires >= 3 levels; returns nullopt otherwise or when residuals are at
    /// rounding level (treated as "exactly zero" checks).
    static std::optional<double> observed_order(const std::vector<ConvergenceRow>& rows,
                                                double floor = 1e-13) {
        if (rows.size() < 3) return std::nullopt;
        const ConvergenceRow& a = rows[rows.size() - 2];
        const ConvergenceRow& b = rows[rows.size() - 1];
        if (a.norms.linf < floor || b.norms.linf < floor) return std::nullopt;
        return std::log(a.norms.linf / b.norms.linf) / std::log(a.h / b.h);
    }

    std::optional<double> order(const std::string& label) const {
        auto it = rows_.find(label);
        if (it == rows_.end()) return std::nullopt;
        return observed_order(it->second);
    }

private:
    std::map<std::string, std::vector<ConvergenceRow>> rows_;
};

}  // namespace solgeo
