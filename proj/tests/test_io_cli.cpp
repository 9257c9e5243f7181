#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#include "solgeo/io.hpp"
#include "solgeo/manufactured.hpp"
#include "solgeo/scenario.hpp"

using namespace solgeo;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "solgeo_io_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string wpath(const std::string& name) { return (work_dir() / name).string(); }

/// Run the CLI binary named by SOLGEO_BIN; returns its exit status.
int run_cli(const std::string& args) {
    const char* bin = std::getenv("SOLGEO_BIN");
    REQUIRE(bin != nullptr);
    const int status = std::system((std::string(bin) + " " + args).c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

GridSpec mixed_spec() {
    return GridSpec(std::vector<Axis>{Axis{"x", 5, 0.31, -1.2, Boundary::periodic},
                                      Axis{"t", 4, 0.07, 0.5, Boundary::one_sided}});
}

}  // namespace

TEST_CASE("grid spec JSON round trip preserves every axis attribute") {
    GridSpec spec = mixed_spec();
    GridSpec back = spec_from_json(spec_to_json(spec));
    REQUIRE(back.rank() == spec.rank());
    for (int a = 0; a < spec.rank(); ++a) {
        CHECK(back.axis(a).name == spec.axis(a).name);
        CHECK(back.axis(a).n == spec.axis(a).n);
        CHECK(back.axis(a).h == spec.axis(a).h);
        CHECK(back.axis(a).origin == spec.axis(a).origin);
        CHECK(back.axis(a).boundary == spec.axis(a).boundary);
    }
    json bad = spec_to_json(spec);
    bad["axes"][0]["boundary"] = "reflecting";
    CHECK_THROWS_AS((void)spec_from_json(bad), std::invalid_argument);
}

TEST_CASE("scalar and complex field JSON round trips are bit exact") {
    GridSpec spec = mixed_spec();
    ScalarField f = ScalarField::sampled(
        spec, [](const std::array<double, 4>& x) { return std::sin(1.0 + x[0]) / (3.0 + x[1]); });
    ScalarField back = scalar_field_from_json(field_to_json(f));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

    Field<cplx> c = Field<cplx>::sampled(spec, [](const std::array<double, 4>& x) {
        return cplx(std::cos(x[0] * x[1]), std::exp(-x[0]));
    });
    Field<cplx> cback = complex_field_from_json(field_to_json(c));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(cback[i] == c[i]);
}

TEST_CASE("matrix field JSON round trip is bit exact for 2x2 and 3x3 entries") {
    GridSpec spec = mixed_spec();
    std::mt19937_64 rng(7);
    for (int dim : {2, 3}) {
        MatrixField f = MatrixField::sampled(spec, [&](const std::array<double, 4>&) {
            return random_matrix(rng, dim, 1.3);
        });
        MatrixField back = matrix_field_from_json(field_to_json(f));
        REQUIRE(back.size() == f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            REQUIRE(back[i].dim() == dim);
            CHECK((back[i] - f[i]).max_abs() == 0.0);
        }
    }
}

TEST_CASE("vec3 field JSON round trip is bit exact and kinds are validated") {
    GridSpec spec = mixed_spec();
    Field<Vec3> f = Field<Vec3>::sampled(spec, [](const std::array<double, 4>& x) {
        return Vec3{std::sin(x[0]), std::cos(x[1]), x[0] * x[1] / 7.0};
    });
    Field<Vec3> back = vec3_field_from_json(field_to_json(f));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(back[i][k] == f[i][k]);

    CHECK_THROWS_AS((void)scalar_field_from_json(field_to_json(f)), std::invalid_argument);
    CHECK_THROWS_AS((void)vec3_field_from_json(field_to_json(ScalarField(spec, 1.0))),
                    std::invalid_argument);
}

TEST_CASE("CSV exports carry coordinate columns and the expected headers") {
    GridSpec spec = mixed_spec();
    ScalarField s(spec, 2.5);
    std::string csv = field_to_csv(s);
    CHECK(csv.rfind("x,t,value\n", 0) == 0);
    // header plus one row per node
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + s.size());

    Field<Vec3> v(spec, Vec3{1, 0, 0});
    CHECK(field_to_csv(v).rfind("x,t,S1,S2,S3\n", 0) == 0);

    MatrixField m(spec, Mat::identity(2));
    std::string mcsv = field_to_csv(m);
    CHECK(mcsv.rfind("x,t,re00,im00,re01,im01,re10,im10,re11,im11\n", 0) == 0);
}

TEST_CASE("residual report JSON round trip") {
    ResidualReport rep;
    rep.set("F_xt", Norms{1.25e-4, 3.5e-5});
    rep.set("path_mismatch", Norms{0.0, 0.0});
    ResidualReport back = report_from_json(report_to_json(rep));
    REQUIRE(back.entries().size() == 2);
    CHECK(back.at("F_xt").linf == 1.25e-4);
    CHECK(back.at("F_xt").l2 == 3.5e-5);
    CHECK(back.at("path_mismatch").linf == 0.0);
}

TEST_CASE("convergence table serialization reports the observed order once per label") {
    ConvergenceTable table;
    for (int l = 0; l < 3; ++l) {
        const double h = 0.1 / (1 << l);
        ResidualReport rep;
        rep.set("quadratic", Norms{h * h, 0.5 * h * h});
        rep.set("flatline", Norms{0.0, 0.0});
        table.add_level(h, rep);
    }
    std::string csv = convergence_to_csv(table);
    CHECK(csv.rfind("label,h,linf,l2,order\n", 0) == 0);
    // the quadratic label ends with its observed order, earlier rows leave it blank
    CHECK(csv.find("quadratic,0.025") != std::string::npos);
    CHECK(csv.find(",2\n") != std::string::npos);

    json j = convergence_to_json(table);
    REQUIRE(j.contains("quadratic"));
    CHECK(j.at("quadratic").at("order").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(j.at("quadratic").at("levels").size() == 3);
    CHECK(j.at("flatline").at("order").is_null());
}

TEST_CASE("atomic text write round trips and read_text rejects missing files") {
    const std::string path = wpath("atomic.txt");
    const std::string content = "line one\nline two\n";
    write_text_atomic(path, content);
    CHECK(read_text(path) == content);
    CHECK(!fs::exists(path + ".tmp"));
    CHECK_THROWS_AS((void)read_text(wpath("does_not_exist.txt")), std::runtime_error);
}

TEST_CASE("cli runs a frame transport scenario and writes a passing report") {
    json cfg{{"schema", 1},
             {"kind", "frame-integration"},
             {"k", 0.8},
             {"tau", 0.4},
             {"steps", 2000},
             {"h", 1e-3},
             {"output", {{"report", wpath("frame_report.json")}}}};
    write_text_atomic(wpath("frame.json"), cfg.dump(2));
    CHECK(run_cli("--quiet run " + wpath("frame.json")) == 0);
    json report = json::parse(read_text(wpath("frame_report.json")));
    CHECK(report.at("pass").get<bool>());
    CHECK(report.at("kind").get<std::string>() == "frame-integration");
    REQUIRE(report.at("checks").size() == 2);
    for (const json& c : report.at("checks")) CHECK(c.at("pass").get<bool>());
}

TEST_CASE("identical config and seed give byte-identical reports") {
    json cfg{{"schema", 1},
             {"kind", "mmlxii-check"},
             {"axes", json::array({"x", "t"})},
             {"n", 8},
             {"amplitude", 0.1},
             {"output", {{"report", wpath("det_a.json")}, {"csv", wpath("det_a.csv")}}}};
    write_text_atomic(wpath("det.json"), cfg.dump(2));
    CHECK(run_cli("--quiet --seed 42 run " + wpath("det.json")) == 0);
    cfg["output"]["report"] = wpath("det_b.json");
    cfg["output"]["csv"] = wpath("det_b.csv");
    write_text_atomic(wpath("det.json"), cfg.dump(2));
    CHECK(run_cli("--quiet --seed 42 run " + wpath("det.json")) == 0);
    CHECK(read_text(wpath("det_a.json")) == read_text(wpath("det_b.json")));
    CHECK(read_text(wpath("det_a.csv")) == read_text(wpath("det_b.csv")));
}

TEST_CASE("an unattainable tolerance yields exit code 1") {
    json cfg{{"schema", 1},
             {"kind", "mmlxii-check"},
             {"axes", json::array({"x", "t"})},
             {"n", 8},
             {"amplitude", 0.1},
             {"output", {{"report", wpath("fail_report.json")}}}};
    write_text_atomic(wpath("fail.json"), cfg.dump(2));
    CHECK(run_cli("--quiet --tol 1e-30 run " + wpath("fail.json")) == 1);
    json report = json::parse(read_text(wpath("fail_report.json")));
    CHECK(!report.at("pass").get<bool>());
}

TEST_CASE("malformed configs yield exit code 2") {
    write_text_atomic(wpath("empty.json"), "{}\n");
    CHECK(run_cli("--quiet run " + wpath("empty.json")) == 2);
    write_text_atomic(wpath("noschema.json"), R"({"schema": 2, "kind": "mmlxii-check"})");
    CHECK(run_cli("--quiet run " + wpath("noschema.json")) == 2);
    write_text_atomic(wpath("badkind.json"), R"({"schema": 1, "kind": "mystery"})");
    CHECK(run_cli("--quiet run " + wpath("badkind.json")) == 2);
    CHECK(run_cli("--quiet run " + wpath("no_such_config.json")) == 2);
    write_text_atomic(wpath("notjson.json"), "this is not json\n");
    CHECK(run_cli("--quiet run " + wpath("notjson.json")) == 2);
}

TEST_CASE("sweep matches run at the same level count and rejects bespoke kinds") {
    json cfg{{"schema", 1},
             {"kind", "convergence-sweep"},
             {"target", "lax"},
             {"n", 24},
             {"output", {{"report", wpath("sweep_report.json")}}}};
    write_text_atomic(wpath("sweep.json"), cfg.dump(2));
    CHECK(run_cli("--quiet --seed 3 sweep " + wpath("sweep.json") + " --levels 3") == 0);
    json report = json::parse(read_text(wpath("sweep_report.json")));
    CHECK(report.at("levels").get<int>() == 3);
    CHECK(report.at("pass").get<bool>());

    json frame{{"schema", 1}, {"kind", "frame-integration"}};
    write_text_atomic(wpath("frame_sweep.json"), frame.dump(2));
    CHECK(run_cli("--quiet sweep " + wpath("frame_sweep.json")) == 2);
}

TEST_CASE("export converts a report to check rows or pretty json") {
    // reuse the passing frame report written by the run test; regenerate if absent
    if (!fs::exists(wpath("frame_report.json"))) {
        json cfg{{"schema", 1},
                 {"kind", "frame-integration"},
                 {"steps", 2000},
                 {"output", {{"report", wpath("frame_report.json")}}}};
        write_text_atomic(wpath("frame.json"), cfg.dump(2));
        REQUIRE(run_cli("--quiet run " + wpath("frame.json")) == 0);
    }
    CHECK(run_cli("export --input " + wpath("frame_report.json") + " --format csv --output " +
                  wpath("checks.csv")) == 0);
    std::string csv = read_text(wpath("checks.csv"));
    CHECK(csv.rfind("name,value,tol,pass\n", 0) == 0);
    CHECK(csv.find("gram_drift,") != std::string::npos);
    CHECK(csv.find("curve_reconstruction,") != std::string::npos);
    CHECK(csv.find(",1\n") != std::string::npos);

    CHECK(run_cli("export --input " + wpath("frame_report.json") + " --format json --output " +
                  wpath("pretty.json")) == 0);
    CHECK(json::parse(read_text(wpath("pretty.json"))) ==
          json::parse(read_text(wpath("frame_report.json"))));

    CHECK(run_cli("export --input " + wpath("does_not_exist.json") + " --format csv") == 2);
}

TEST_CASE("negative-control configs pass by detecting the broken member") {
    json cfg{{"schema", 1},
             {"kind", "mmlxii-check"},
             {"axes", json::array({"x", "t"})},
             {"n", 8},
             {"amplitude", 0.1},
             {"perturb", true},
             {"output", {{"report", wpath("perturb_report.json")}}}};
    write_text_atomic(wpath("perturb.json"), cfg.dump(2));
    CHECK(run_cli("--quiet run " + wpath("perturb.json")) == 0);
    json report = json::parse(read_text(wpath("perturb_report.json")));
    REQUIRE(report.at("checks").size() == 1);
    CHECK(report.at("checks")[0].at("name").get<std::string>() ==
          "negative_control.degraded_labels");
    CHECK(report.at("checks")[0].at("pass").get<bool>());
}
