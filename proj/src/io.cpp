#include "solgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace solgeo {

namespace {

const char* boundary_name(Boundary b) { return b == Boundary::periodic ? "periodic" : "one_sided"; }

Boundary boundary_from(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "one_sided") return Boundary::one_sided;
    throw std::invalid_argument("spec_from_json: unknown boundary '" + s + "'");
}

json cplx_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }
cplx cplx_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <class T>
json field_json(const Field<T>& f, const char* kind, const std::function<json(const T&)>& enc) {
    json vals = json::array();
    for (std::size_t i = 0; i < f.size(); ++i) vals.push_back(enc(f[i]));
    return json{{"spec", spec_to_json(f.spec())}, {"kind", kind}, {"values", std::move(vals)}};
}

void check_kind(const json& j, const char* kind) {
    if (j.at("kind").get<std::string>() != kind)
        throw std::invalid_argument(std::string("field import: expected kind '") + kind + "', got '" +
                                    j.at("kind").get<std::string>() + "'");
}

void csv_header(std::ostringstream& out, const GridSpec& spec) {
    for (int a = 0; a < spec.rank(); ++a) {
        if (a) out << ',';
        out << spec.axis(a).name;
    }
}

void csv_coords(std::ostringstream& out, const GridSpec& spec, std::size_t i) {
    for (int a = 0; a < spec.rank(); ++a) {
        if (a) out << ',';
        out << spec.coord(i, a);
    }
}

}  // namespace

json spec_to_json(const GridSpec& spec) {
    json axes = json::array();
    for (const Axis& a : spec.axes())
        axes.push_back(json{{"name", a.name},
                            {"n", a.n},
                            {"h", a.h},
                            {"origin", a.origin},
                            {"boundary", boundary_name(a.boundary)}});
    return json{{"axes", std::move(axes)}};
}

GridSpec spec_from_json(const json& j) {
    std::vector<Axis> axes;
    for (const json& a : j.at("axes"))
        axes.push_back(Axis{a.at("name").get<std::string>(), a.at("n").get<int>(),
                            a.at("h").get<double>(), a.at("origin").get<double>(),
                            boundary_from(a.at("boundary").get<std::string>())});
    return GridSpec(std::move(axes));
}

json field_to_json(const ScalarField& f) {
    return field_json<double>(f, "scalar", [](const double& v) { return json(v); });
}

json field_to_json(const Field<cplx>& f) {
    return field_json<cplx>(f, "complex", [](const cplx& v) { return cplx_to_json(v); });
}

json field_to_json(const MatrixField& f) {
    return field_json<Mat>(f, "matrix", [](const Mat& m) {
        json e = json::array();
        e.push_back(m.dim());
        for (int i = 0; i < m.dim(); ++i)
            for (int k = 0; k < m.dim(); ++k) e.push_back(cplx_to_json(m(i, k)));
        return e;
    });
}

json field_to_json(const Field<Vec3>& f) {
    return field_json<Vec3>(f, "vec3",
                            [](const Vec3& v) { return json::array({v[0], v[1], v[2]}); });
}

ScalarField scalar_field_from_json(const json& j) {
    check_kind(j, "scalar");
    GridSpec spec = spec_from_json(j.at("spec"));
    std::vector<double> v;
    for (const json& e : j.at("values")) v.push_back(e.get<double>());
    return ScalarField(std::move(spec), std::move(v));
}

Field<cplx> complex_field_from_json(const json& j) {
    check_kind(j, "complex");
    GridSpec spec = spec_from_json(j.at("spec"));
    std::vector<cplx> v;
    for (const json& e : j.at("values")) v.push_back(cplx_from_json(e));
    return Field<cplx>(std::move(spec), std::move(v));
}

MatrixField matrix_field_from_json(const json& j) {
    check_kind(j, "matrix");
    GridSpec spec = spec_from_json(j.at("spec"));
    std::vector<Mat> v;
    for (const json& e : j.at("values")) {
        const int dim = e.at(0).get<int>();
        Mat m(dim);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                m(i, k) = cplx_from_json(e.at(static_cast<std::size_t>(1 + i * dim + k)));
        v.push_back(m);
    }
    return MatrixField(std::move(spec), std::move(v));
}

Field<Vec3> vec3_field_from_json(const json& j) {
    check_kind(j, "vec3");
    GridSpec spec = spec_from_json(j.at("spec"));
    std::vector<Vec3> v;
    for (const json& e : j.at("values"))
        v.push_back(Vec3{e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
    return Field<Vec3>(std::move(spec), std::move(v));
}

std::string field_to_csv(const ScalarField& f) {
    std::ostringstream out;
    out.precision(17);
    csv_header(out, f.spec());
    out << ",value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        csv_coords(out, f.spec(), i);
        out << ',' << f[i] << '\n';
    }
    return out.str();
}

std::string field_to_csv(const MatrixField& f) {
    std::ostringstream out;
    out.precision(17);
    csv_header(out, f.spec());
    const int dim = f.size() ? f[0].dim() : 2;
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) out << ",re" << i << k << ",im" << i << k;
    out << '\n';
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        csv_coords(out, f.spec(), idx);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                out << ',' << f[idx](i, k).real() << ',' << f[idx](i, k).imag();
        out << '\n';
    }
    return out.str();
}

std::string field_to_csv(const Field<Vec3>& f) {
    std::ostringstream out;
    out.precision(17);
    csv_header(out, f.spec());
    out << ",S1,S2,S3\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        csv_coords(out, f.spec(), i);
        out << ',' << f[i][0] << ',' << f[i][1] << ',' << f[i][2] << '\n';
    }
    return out.str();
}

json report_to_json(const ResidualReport& rep) {
    json checks = json::object();
    for (const auto& [label, n] : rep.entries())
        checks[label] = json{{"linf", n.linf}, {"l2", n.l2}};
    return json{{"residuals", std::move(checks)}};
}

ResidualReport report_from_json(const json& j) {
    ResidualReport rep;
    for (const auto& [label, n] : j.at("residuals").items())
        rep.set(label, Norms{n.at("linf").get<double>(), n.at("l2").get<double>()});
    return rep;
}

std::string convergence_to_csv(const ConvergenceTable& table) {
    std::ostringstream out;
    out.precision(17);
    out << "label,h,linf,l2,order\n";
    for (const auto& [label, rows] : table.rows()) {
        const std::optional<double> order = ConvergenceTable::observed_order(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << label << ',' << rows[i].h << ',' << rows[i].norms.linf << ','
                << rows[i].norms.l2 << ',';
            if (i + 1 == rows.size() && order) out << *order;
            out << '\n';
        }
    }
    return out.str();
}

json convergence_to_json(const ConvergenceTable& table) {
    json out = json::object();
    for (const auto& [label, rows] : table.rows()) {
        json levels = json::array();
        for (const ConvergenceRow& r : rows)
            levels.push_back(json{{"h", r.h}, {"linf", r.norms.linf}, {"l2", r.norms.l2}});
        json entry{{"levels", std::move(levels)}};
        const std::optional<double> order = ConvergenceTable::observed_order(rows);
        if (order)
            entry["order"] = *order;
        else
            entry["order"] = nullptr;  // exact-zero or under-resolved check
        out[label] = std::move(entry);
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write_text_atomic: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_text_atomic: rename failed for " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text: cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace solgeo
