#include "mnv/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mnv/error.hpp"
#include "mnv/field_io.hpp"
#include "mnv/inversion.hpp"
#include "mnv/mesh_io.hpp"
#include "mnv/moutard.hpp"
#include "mnv/parallel.hpp"
#include "mnv/quadrature.hpp"
#include "mnv/verify.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv::cli {

using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Acceptance thresholds not met; the report has already been written.
struct AcceptanceFailed {};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double to_double(const std::string& s, const char* what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
}

std::size_t to_count(const std::string& s, const char* what)
{
    const double v = to_double(s, what);
    if (v < 0 || v != std::floor(v)) {
        throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<Complex> coefficients_from_json(const json& j)
{
    std::vector<Complex> c;
    for (const json& e : j) {
        if (e.is_number()) {
            c.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
            c.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw InvalidArgument("spinor coefficients must be numbers or [re, im] pairs");
        }
    }
    return c;
}

/// Writes `text` to cfg.out, or to `out` when no path is set.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write)
{
    if (cfg.out.empty() || cfg.out == "-") {
        write(out);
        out.flush();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        throw IoError("cannot open '" + cfg.out + "' for writing");
    }
    write(f);
    f.flush();
    if (!f) {
        throw IoError("write to '" + cfg.out + "' failed");
    }
}

json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::vector<double> times_or(const RunConfig& cfg, std::vector<double> fallback)
{
    return cfg.times.empty() ? fallback : cfg.times;
}

double single_time(const RunConfig& cfg, const char* cmd)
{
    const std::vector<double> ts = times_or(cfg, {cfg.C + 1.0});
    if (ts.size() != 1) {
        throw InvalidArgument(std::string(cmd) + " takes a single --t");
    }
    return ts.front();
}

Field field_of(const RunConfig& cfg)
{
    return moutard_field(cfg.spinor(), origin_image(cfg.C));
}

std::string mesh_comment(const RunConfig& cfg, const char* kind, double t)
{
    std::ostringstream os;
    os.precision(17);
    os << kind << " C=" << cfg.C << " t=" << t << " grid=" << cfg.grid.nx << "x" << cfg.grid.ny;
    return os.str();
}

int cmd_field(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const std::vector<double> times = times_or(cfg, {cfg.C + 1.0});
    const FieldGrid fg = sample_field(field_of(cfg), cfg.grid, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (std::size_t j = 0; j < cfg.grid.ny; ++j) {
            for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
                if (std::isnan(fg.at(i, j, k).U)) {
                    err << "warning: field undefined at x=" << cfg.grid.x(i) << " y=" << cfg.grid.y(j)
                        << " t=" << times[k] << " (blow-up point), written as nan\n";
                }
            }
        }
    }
    emit(cfg, out, [&](std::ostream& os) { write_field_csv(os, fg); });
    return kOk;
}

json stats_json(const GridResidualStats& s)
{
    return {{"nodes", s.nodes},
            {"max_mnv", s.max_mnv},
            {"mean_mnv", s.mean_mnv},
            {"max_constraint", s.max_constraint},
            {"mean_constraint", s.mean_constraint}};
}

int cmd_verify(const RunConfig& cfg, bool sampled, std::ostream& out)
{
    json report;
    bool passed = true;
    if (!cfg.input.empty() || sampled) {
        FieldGrid fg;
        if (!cfg.input.empty()) {
            std::ifstream f(cfg.input);
            if (!f) {
                throw IoError("cannot open '" + cfg.input + "'");
            }
            fg = read_field_csv(f);
            report["source"] = "csv";
        } else {
            std::vector<double> times = times_or(cfg, {cfg.C + 1.0});
            if (times.size() == 1) {
                times = {times[0] - cfg.h_time, times[0], times[0] + cfg.h_time};
            }
            fg = sample_field(field_of(cfg), cfg.grid, times);
            report["source"] = "sampled";
        }
        const GridResidualStats s = grid_residuals(fg);
        const double max_residual = std::max(s.max_mnv, s.max_constraint);
        report["stats"] = stats_json(s);
        report["summary"] = {{"max_residual", max_residual}};
        passed = max_residual <= cfg.thresholds.max_residual;
    } else {
        std::vector<SpaceTimePoint> pts = cfg.points;
        if (pts.empty()) {
            for (double t : times_or(cfg, {cfg.C + 1.0})) {
                for (std::size_t j = 0; j < cfg.grid.ny; ++j) {
                    for (std::size_t i = 0; i < cfg.grid.nx; ++i) {
                        pts.push_back({cfg.grid.x(i), cfg.grid.y(j), t});
                    }
                }
            }
        }
        const Field field = field_of(cfg);
        const VerifyOptions opt{{cfg.h, cfg.h_time}, cfg.order_h0, 3};
        std::vector<std::optional<ResidualReport>> results(pts.size());
        std::vector<std::string> reasons(pts.size());
        parallel_for(pts.size(), [&](std::size_t n) {
            try {
                results[n] = verify_point(field, pts[n], opt);
            } catch (const StencilCollision& e) {
                reasons[n] = e.what();
            }
        });
        json points = json::array();
        json skipped = json::array();
        double max_residual = 0.0;
        double min_order = std::nan("");
        for (std::size_t n = 0; n < pts.size(); ++n) {
            const SpaceTimePoint& p = pts[n];
            if (!results[n]) {
                skipped.push_back({{"x", p.x}, {"y", p.y}, {"t", p.t}, {"reason", reasons[n]}});
                continue;
            }
            const ResidualReport& r = *results[n];
            const double order = r.estimated_order();
            points.push_back({{"x", p.x},
                              {"y", p.y},
                              {"t", p.t},
                              {"h", r.h_used},
                              {"mnv_residual", r.mnv_residual},
                              {"constraint_residual", r.constraint_residual},
                              {"order", number_or_null(order)},
                              {"mnv_order", number_or_null(r.mnv_order)},
                              {"constraint_order", number_or_null(r.constraint_order)}});
            max_residual = std::max({max_residual, r.mnv_residual, r.constraint_residual});
            if (std::isfinite(order) && !(order >= min_order)) {
                min_order = order;
            }
        }
        report["points"] = std::move(points);
        report["skipped"] = std::move(skipped);
        report["summary"] = {{"max_residual", max_residual}, {"min_order", number_or_null(min_order)}};
        passed = max_residual <= cfg.thresholds.max_residual
                 && (std::isnan(min_order) || min_order >= cfg.thresholds.min_order);
        report["thresholds"] = {{"max_residual", cfg.thresholds.max_residual},
                                {"min_order", cfg.thresholds.min_order}};
    }
    report["passed"] = passed;
    emit(cfg, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    if (!passed) {
        throw AcceptanceFailed{};
    }
    return kOk;
}

int cmd_conserve(const RunConfig& cfg, std::ostream& out)
{
    const double C = cfg.C;
    const std::vector<double> times = times_or(cfg, {C - 2.0, C - 1.0, C - 0.1, C, C + 0.1, C + 1.0});
    PlaneIntegralOptions opt;
    opt.tol = cfg.tol;
    opt.max_evaluations = cfg.max_evaluations;
    const bool reference = cfg.is_enneper();
    const ConservationScan scan = conservation_scan(field_of(cfg), C, times, opt, reference);

    json rows = json::array();
    bool passed = true;
    for (const ConservationRow& r : scan.rows) {
        rows.push_back({{"t", r.t},
                        {"C", r.C},
                        {"value", r.integral.value},
                        {"error_estimate", r.integral.abs_error_estimate},
                        {"tail_bound", r.integral.tail_bound},
                        {"reference", r.reference ? json(*r.reference) : json(nullptr)},
                        {"deviation", r.reference ? json(r.deviation) : json(nullptr)},
                        {"radius", r.integral.radius},
                        {"panels_used", r.integral.panels_used},
                        {"evaluations", r.integral.evaluations}});
        if (r.reference && r.deviation > cfg.thresholds.max_deviation) {
            passed = false;
        }
    }
    json report{{"rows", rows},
                {"tol", cfg.tol},
                {"max_deviation_regular", reference ? json(scan.max_deviation_regular) : json(nullptr)},
                {"threshold", cfg.thresholds.max_deviation},
                {"passed", passed}};
    emit(cfg, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    if (!passed) {
        throw AcceptanceFailed{};
    }
    return kOk;
}

int cmd_surface(const RunConfig& cfg, std::ostream& out)
{
    const double t = single_time(cfg, "surface");
    cfg.grid.validate();
    const TriangleMesh mesh = grid_mesh(cfg.grid, sample_surface(cfg.spinor(), cfg.grid, t, origin_image(cfg.C)));
    emit(cfg, out, [&](std::ostream& os) { write_obj(os, mesh, mesh_comment(cfg, "weierstrass surface", t)); });
    return kOk;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const double t = single_time(cfg, "invert");
    cfg.grid.validate();
    const auto samples = sample_inverted_surface(cfg.spinor(), cfg.grid, t, origin_image(cfg.C));
    for (const InvertedSample& s : samples) {
        if (s.degenerate) {
            err << "warning: vertex x=" << s.z.real() << " y=" << s.z.imag() << " t=" << s.t
                << " maps to infinity and is omitted\n";
        }
    }
    const TriangleMesh mesh = inverted_mesh(cfg.grid, samples);
    emit(cfg, out, [&](std::ostream& os) { write_obj(os, mesh, mesh_comment(cfg, "inverted surface", t)); });
    return kOk;
}

void write_error(std::ostream& err, std::string_view kind, const std::string& message)
{
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

SpinorPair RunConfig::spinor() const
{
    return SpinorPair(HoloPoly(spinor_p), HoloPoly(spinor_q));
}

bool RunConfig::is_enneper() const
{
    const SpinorPair s = spinor();
    const SpinorPair e = SpinorPair::enneper();
    return s.p() == e.p() && s.q() == e.q();
}

std::vector<Complex> parse_coefficients(const std::string& text)
{
    std::vector<Complex> c;
    for (const std::string& item : split(text, ',')) {
        const std::vector<std::string> parts = split(item, ':');
        if (parts.size() == 1) {
            c.emplace_back(to_double(parts[0], "coefficient"), 0.0);
        } else if (parts.size() == 2) {
            c.emplace_back(to_double(parts[0], "coefficient"), to_double(parts[1], "coefficient"));
        } else {
            throw InvalidArgument("bad coefficient '" + item + "', expected re:im");
        }
    }
    if (c.empty()) {
        throw InvalidArgument("empty coefficient list");
    }
    return c;
}

PlaneGrid parse_grid(const std::string& text)
{
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 6) {
        throw InvalidArgument("grid must be XMIN,XMAX,YMIN,YMAX,NX,NY");
    }
    PlaneGrid g{to_double(parts[0], "grid bound"), to_double(parts[1], "grid bound"),
                to_double(parts[2], "grid bound"), to_double(parts[3], "grid bound"),
                to_count(parts[4], "grid count"),  to_count(parts[5], "grid count")};
    g.validate();
    return g;
}

void apply_config_json(RunConfig& cfg, const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidArgument("config must be a JSON object");
    }
    try {
        if (j.contains("C")) cfg.C = j["C"].get<double>();
        if (j.contains("spinor")) {
            const json& s = j["spinor"];
            if (s.contains("p")) cfg.spinor_p = coefficients_from_json(s["p"]);
            if (s.contains("q")) cfg.spinor_q = coefficients_from_json(s["q"]);
        }
        if (j.contains("grid")) {
            const json& g = j["grid"];
            cfg.grid = {g.value("xmin", cfg.grid.xmin), g.value("xmax", cfg.grid.xmax),
                        g.value("ymin", cfg.grid.ymin), g.value("ymax", cfg.grid.ymax),
                        g.value("nx", cfg.grid.nx),     g.value("ny", cfg.grid.ny)};
        }
        if (j.contains("times")) cfg.times = j["times"].get<std::vector<double>>();
        if (j.contains("points")) {
            cfg.points.clear();
            for (const json& p : j["points"]) {
                if (p.size() != 3) {
                    throw InvalidArgument("points must be [x, y, t] triples");
                }
                cfg.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            }
        }
        if (j.contains("input")) cfg.input = j["input"].get<std::string>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
        if (j.contains("max_evaluations")) cfg.max_evaluations = j["max_evaluations"].get<std::size_t>();
        if (j.contains("h")) cfg.h = j["h"].get<double>();
        if (j.contains("h_time")) cfg.h_time = j["h_time"].get<double>();
        if (j.contains("order_h0")) cfg.order_h0 = j["order_h0"].get<double>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        if (j.contains("thresholds")) {
            const json& t = j["thresholds"];
            cfg.thresholds.max_residual = t.value("max_residual", cfg.thresholds.max_residual);
            cfg.thresholds.min_order = t.value("min_order", cfg.thresholds.min_order);
            cfg.thresholds.max_deviation = t.value("max_deviation", cfg.thresholds.max_deviation);
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Blow-up solutions of the modified Novikov-Veselov equation"};
    app.require_subcommand(1);

    std::string config_path, grid_text, p_text, q_text, out_path, input_path;
    double C = 0.0, tol = 0.0, h = 0.0, h_time = 0.0;
    std::vector<double> times;
    int threads = 0;
    bool sampled = false;

    // -h would clash with --h
    app.set_help_flag("--help", "print help and exit");
    auto common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help and exit");
        sub->add_option("--config", config_path, "JSON config; flags override it");
        sub->add_option("--C", C, "blow-up time C");
        sub->add_option("--t", times, "time value (repeatable)")->allow_extra_args(false);
        sub->add_option("--out", out_path, "output path (stdout if omitted)");
        sub->add_option("--tol", tol, "quadrature tolerance");
        sub->add_option("--h", h, "spatial finite-difference step");
        sub->add_option("--h-time", h_time, "temporal finite-difference step");
        sub->add_option("--grid", grid_text, "XMIN,XMAX,YMIN,YMAX,NX,NY");
        sub->add_option("--spinor-p", p_text, "coefficients of psi1 as re:im,...");
        sub->add_option("--spinor-q", q_text, "coefficients of conj(psi2) as re:im,...");
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
    };
    CLI::App* field = app.add_subcommand("field", "sample (U, V) on a grid as CSV");
    CLI::App* verify = app.add_subcommand("verify", "finite-difference residuals as JSON");
    CLI::App* conserve = app.add_subcommand("conserve", "integral of U^2 over the plane as JSON");
    CLI::App* surface = app.add_subcommand("surface", "Weierstrass surface as OBJ");
    CLI::App* invert = app.add_subcommand("invert", "inverted moving surface as OBJ");
    for (CLI::App* sub : {field, verify, conserve, surface, invert}) {
        common(sub);
    }
    verify->add_option("--input", input_path, "verify a field CSV instead of the field");
    verify->add_flag("--sampled", sampled, "verify grid samples at the --t values (t - h_time, t, t + h_time for one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidationError;
    }
    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const char* name) { return sub->count(name) > 0; };

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                throw IoError("cannot open config '" + config_path + "'");
            }
            std::stringstream ss;
            ss << f.rdbuf();
            apply_config_json(cfg, ss.str());
        }
        if (given("--C")) cfg.C = C;
        if (given("--t")) cfg.times = times;
        if (given("--out")) cfg.out = out_path;
        if (given("--tol")) cfg.tol = tol;
        if (given("--h")) cfg.h = h;
        if (given("--h-time")) cfg.h_time = h_time;
        if (given("--grid")) cfg.grid = parse_grid(grid_text);
        if (given("--spinor-p")) cfg.spinor_p = parse_coefficients(p_text);
        if (given("--spinor-q")) cfg.spinor_q = parse_coefficients(q_text);
        if (given("--threads")) cfg.threads = threads;
        if (sub == verify && given("--input")) cfg.input = input_path;

        if (!std::isfinite(cfg.C) || !(cfg.tol > 0) || !(cfg.h > 0) || !(cfg.h_time > 0) || cfg.threads < 0) {
            throw InvalidArgument("C must be finite; tol, h and h_time positive; threads non-negative");
        }
        for (double t : cfg.times) {
            if (!std::isfinite(t)) {
                throw InvalidArgument("times must be finite");
            }
        }
        cfg.grid.validate();
        if (cfg.spinor().is_zero()) {
            throw InvalidArgument("spinor must not be identically zero");
        }
        set_thread_count(static_cast<unsigned>(cfg.threads));

        if (sub == field) return cmd_field(cfg, out, err);
        if (sub == verify) return cmd_verify(cfg, sampled, out);
        if (sub == conserve) return cmd_conserve(cfg, out);
        if (sub == surface) return cmd_surface(cfg, out);
        return cmd_invert(cfg, out, err);
    } catch (const AcceptanceFailed&) {
        write_error(err, "AcceptanceFailure", "acceptance thresholds not met; see the report");
        return kAcceptanceFailure;
    } catch (const InvalidArgument& e) {
        write_error(err, to_string(e.kind()), e.what());
        return kValidationError;
    } catch (const Error& e) {
        write_error(err, to_string(e.kind()), e.what());
        return kAcceptanceFailure;
    } catch (const IoError& e) {
        write_error(err, "IoError", e.what());
        return kIoError;
    }
}

}  // namespace mnv::cli
