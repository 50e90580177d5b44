// Command-line front end: validates generators, computes direction sectors,
// evolves flows in real and complex time, builds and inverts the
// straightening coordinate, emits trajectory envelopes, and runs the
// boundary-quadrature operator checks.  All reports are deterministic JSON
// (or CSV) with numbers rendered at 17 significant digits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semiflow/checks.hpp"
#include "semiflow/envelope.hpp"
#include "semiflow/errors.hpp"
#include "semiflow/expression.hpp"
#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/hardy.hpp"
#include "semiflow/koenigs.hpp"
#include "semiflow/quadrature.hpp"
#include "semiflow/report.hpp"
#include "semiflow/types.hpp"

namespace sf = semiflow;
using sf::Cplx;
using sf::Json;

namespace {

struct CommonOpts {
    std::string gen_spec;
    int grid_re = 64;
    int grid_im = 65;
    double tol = 1e-10;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
    cmd->add_option("--gen", o->gen_spec,
                    "generator spec: kind:params or expr:<expression>, e.g. \"power: alpha=0.5\"")
        ->required();
    cmd->add_option("--grid-re", o->grid_re, "sample count along Re")->check(CLI::Range(2, 4096));
    cmd->add_option("--grid-im", o->grid_im, "sample count along Im")->check(CLI::Range(2, 4096));
    cmd->add_option("--tol", o->tol, "tolerance for the command's checks");
    cmd->add_option("--out", o->out_path, "write the report to this file instead of stdout");
    cmd->add_option("--format", o->format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", o->seed, "seed for randomized probes");
    cmd->add_option("--config", o->config_path,
                    "file of key=value defaults mirroring the long flags; explicit flags win");
}

// Expands `key=value` lines from the --config file into trailing `--key value`
// tokens, skipping keys already given explicitly so command-line flags win.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw sf::PreconditionFailed("cannot read config file: " + path);
    const std::vector<std::string> original = args;
    auto given = [&original](const std::string& flag) {
        for (const auto& a : original)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    while (std::getline(f, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (given("--" + key)) continue;
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

int emit(const CommonOpts& o, const std::string& payload, int code) {
    if (o.out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return code;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s for writing\n", o.out_path.c_str());
        return 3;
    }
    f << payload;
    return code;
}

int emit_report(const CommonOpts& o, const Json& report, int code) {
    const std::string payload =
        o.format == "csv" ? sf::records_csv(report) : report.dump(2) + "\n";
    return emit(o, payload, code);
}

Cplx parse_cplx(const std::string& text) {
    std::size_t pos = 0;
    const Cplx v = sf::parse_complex_value(text, &pos);
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos != text.size())
        throw sf::ParseError("trailing characters in complex value: " + text, pos, {});
    return v;
}

sf::FlowParams flow_params(double tol) {
    sf::FlowParams p;
    p.rel_tol = tol;
    p.abs_tol = tol * 1e-2;
    return p;
}

bool all_pass(const Json& report) {
    for (const auto& rec : report.at("records"))
        if (!rec.at("pass").get<bool>()) return false;
    return true;
}

int classify_exit(const sf::Error& e) {
    if (dynamic_cast<const sf::ParseError*>(&e) != nullptr ||
        dynamic_cast<const sf::OutOfRangeParameter*>(&e) != nullptr ||
        dynamic_cast<const sf::PreconditionFailed*>(&e) != nullptr ||
        dynamic_cast<const sf::DomainError*>(&e) != nullptr)
        return 2;
    return 3;
}

constexpr const char* kValidateStatement =
    "A holomorphic f on the right half-plane generates a one-parameter flow of self-maps "
    "exactly when Re( f(z) (conj z - 1)/(z + 1) ) <= Re z * Re( f(1) (conj z - 1)/(conj z + 1) ) "
    "at every point; for flows attracted to infinity this forces Re f >= 0.";
constexpr const char* kSectorStatement =
    "The flow of f extends holomorphically to complex time zeta in the cone "
    "-theta1 < arg zeta < theta2 with theta1 = pi/2 + inf arg f, theta2 = pi/2 - sup arg f; "
    "restricting the flow to Re z >= k shrinks |arg f| and widens the admissible cone.";
constexpr const char* kEvolveStatement =
    "The orbit solves du/ds = e^{i theta} f(u), u(0) = z0, and the time-additivity "
    "F_t(F_s(z)) = F_{t+s}(z) certifies the integration.";
constexpr const char* kExtendStatement =
    "Complex-time evolution is translation in the straightening coordinate: "
    "F_zeta(z) = h^{-1}( h(z) + zeta ) where h'(z) f(z) = 1 and h(1) = 0, and it agrees "
    "with integrating du/ds = e^{i arg zeta} f(u) for time |zeta| inside the admissible cone.";
constexpr const char* kKoenigsStatement =
    "The straightening coordinate h turns the flow into translation, h(F_t(z)) = h(z) + t; "
    "the image h(Pi) absorbs translations by e^{i theta} exactly when Re(e^{-i theta}/f) >= 0.";
constexpr const char* kEnvelopeStatement =
    "Rightward orbits have slope dIm/dRe = tan(arg f); bracketing arg f over half-planes "
    "{Re z >= s} encloses every orbit between two polygonal curves.";
constexpr const char* kHardyStatement =
    "For p > 1, composition with the flow acts on the space of analytic functions with "
    "bounded vertical-line p-means; the operator norm is e^{-delta t/p} with delta the "
    "angular derivative of f at infinity, and norm-1 analytic extension in t requires a "
    "parabolic flow.";
constexpr const char* kReportStatement =
    "Combined battery: generator admissibility, direction sector, flow self-consistency, "
    "straightening-coordinate residuals, and boundary-quadrature operator checks.";

// ---------------------------------------------------------------- validate

int run_validate(const CommonOpts& o) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const sf::SampleGrid grid = sf::SampleGrid::standard(0.0, o.grid_re, o.grid_im);

    Json rep = sf::make_report("validate", kValidateStatement);
    rep["generator"] = g.text();

    const auto inv = sf::check_flow_invariance(g, grid, o.tol);
    rep["records"].push_back(sf::make_record(
        "flow_invariance",
        Json{{"points", inv.points_checked}, {"tol", sf::json_real(o.tol)},
             {"violations", inv.violations.size()}},
        "pointwise excess <= 0", sf::json_real(inv.max_excess),
        sf::json_real(std::max(0.0, inv.max_excess)), inv.ok()));

    const auto rng = sf::check_range_halfplane(g, grid, o.tol);
    rep["records"].push_back(sf::make_record(
        "range_halfplane",
        Json{{"points", rng.points_checked}, {"argmin", sf::json_complex(rng.argmin)},
             {"violations", rng.violations.size()}},
        "min Re f >= 0", sf::json_real(rng.min_re), sf::json_real(std::max(0.0, -rng.min_re)),
        rng.ok()));

    Json cls_params = Json::object();
    std::string type_text = "unknown";
    bool cls_ok = false;
    try {
        type_text = sf::classify_type(g) == sf::SemigroupType::Hyperbolic ? "hyperbolic"
                                                                          : "parabolic";
        cls_ok = true;
    } catch (const sf::NotConverged& e) {
        cls_params["note"] = e.what();
    }
    const auto al = sf::angular_derivative_at_infinity(g);
    cls_params["delta"] = sf::json_real(al.delta);
    cls_params["delta_converged"] = al.converged;
    rep["records"].push_back(sf::make_record("classification", cls_params,
                                             "limit of f(R)/R settles", type_text,
                                             sf::json_real(0.0), cls_ok && al.converged));

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ------------------------------------------------------------------ sector

int run_sector(const CommonOpts& o, const std::vector<double>& ks) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const sf::SampleGrid grid = sf::SampleGrid::standard(0.0, o.grid_re, o.grid_im);

    Json rep = sf::make_report("sector", kSectorStatement);
    rep["generator"] = g.text();

    const auto sec = sf::sector_of_analyticity(g, grid);
    rep["empty"] = !sec.has_value();
    rep["theta1"] = sec ? Json(sf::json_real(sec->theta1)) : Json(nullptr);
    rep["theta2"] = sec ? Json(sf::json_real(sec->theta2)) : Json(nullptr);

    for (const double k : ks) {
        const sf::SampleGrid gk = sf::SampleGrid::standard(k, o.grid_re, o.grid_im);
        const sf::ArgEnvelope env = sf::arg_envelope(g, k, gk);
        Json params{{"k", sf::json_real(k)},
                    {"arg_min", sf::json_real(env.lo)},
                    {"arg_max", sf::json_real(env.hi)},
                    {"theta1", sf::json_real(0.5 * sf::kPi + env.lo)},
                    {"theta2", sf::json_real(0.5 * sf::kPi - env.hi)}};
        rep["records"].push_back(sf::make_record(
            "restricted_direction_cone", params, "|arg f| < pi/2 on Re z >= k",
            sf::json_real(std::max(env.gamma1, env.gamma2)), sf::json_real(0.0),
            !env.degenerate));
    }

    if (g.kind() == sf::GenKind::ClassG) {
        Json table = Json::array();
        for (const double k : ks) {
            const sf::SampleGrid gk = sf::SampleGrid::standard(k, o.grid_re, o.grid_im);
            const sf::ClassGSector cg = sf::class_g_sector(g, k, gk);
            table.push_back(Json{{"k", sf::json_real(k)},
                                 {"theta1", sf::json_real(cg.sector.theta1)},
                                 {"theta2", sf::json_real(cg.sector.theta2)},
                                 {"delta1", sf::json_real(cg.delta1)},
                                 {"delta2", sf::json_real(cg.delta2)}});
        }
        rep["power_tail_cones"] = std::move(table);
    }

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ------------------------------------------------------------------ evolve

int run_evolve(const CommonOpts& o, const std::string& z0s, double t, double theta, int samples) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const Cplx z0 = parse_cplx(z0s);
    const sf::FlowParams fp = flow_params(o.tol == 1e-10 ? 1e-10 : o.tol);

    const sf::Trajectory tr = sf::trajectory(g, z0, t, samples, theta, fp);
    if (o.format == "csv") return emit(o, sf::trajectory_csv(tr), 0);

    Json rep = sf::make_report("evolve", kEvolveStatement);
    rep["generator"] = g.text();
    Json pts = Json::array();
    for (const auto& s : tr.samples)
        pts.push_back(Json{{"t", sf::json_real(s.t)},
                           {"re", sf::json_real(s.z.real())},
                           {"im", sf::json_real(s.z.imag())}});
    rep["samples"] = std::move(pts);

    const Cplx final_z = tr.samples.back().z;
    const double law = sf::check_semigroup_law(g, z0, 0.5 * t, 0.5 * t, theta, fp);
    const double law_tol = 1e-7 * (1.0 + std::abs(final_z));
    rep["records"].push_back(sf::make_record(
        "evolve",
        Json{{"z0", sf::json_complex(z0)}, {"t", sf::json_real(t)}, {"theta", sf::json_real(theta)}},
        "two half-steps equal one full step", sf::json_complex(final_z), sf::json_real(law),
        law <= law_tol));
    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ------------------------------------------------------------------ extend

int run_extend(const CommonOpts& o, const std::string& z0s, const std::string& zetas) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const Cplx z0 = parse_cplx(z0s);
    const Cplx zeta = parse_cplx(zetas);

    const sf::KoenigsMap km(g);
    const Cplx w = km.extend(z0, zeta);
    const double translation_residual = std::abs(km.map(w) - km.map(z0) - zeta);

    Json rep = sf::make_report("extend", kExtendStatement);
    rep["generator"] = g.text();
    const double tol1 = 1e-8 * (1.0 + std::abs(km.map(z0)) + std::abs(zeta));
    rep["records"].push_back(sf::make_record(
        "analytic_extension",
        Json{{"z0", sf::json_complex(z0)}, {"zeta", sf::json_complex(zeta)}},
        "h(F_zeta(z0)) - h(z0) = zeta", sf::json_complex(w),
        sf::json_real(translation_residual), translation_residual <= tol1));

    // Cross-check against direct integration along the ray of zeta.
    Json ray_params{{"theta", sf::json_real(std::arg(zeta))},
                    {"s", sf::json_real(std::abs(zeta))}};
    try {
        const Cplx ray = sf::evolve(g, z0, std::abs(zeta), std::arg(zeta), flow_params(1e-10));
        const double diff = std::abs(ray - w);
        rep["records"].push_back(sf::make_record(
            "extension_matches_ray_flow", ray_params, "|F_zeta - ray ODE| <= 1e-6",
            sf::json_real(diff), sf::json_real(diff), diff <= 1e-6 * (1.0 + std::abs(w))));
    } catch (const sf::Error& e) {
        ray_params["note"] = e.what();
        rep["records"].push_back(sf::make_record("extension_matches_ray_flow", ray_params,
                                                 "|F_zeta - ray ODE| <= 1e-6",
                                                 "ray integration failed", sf::json_real(0.0),
                                                 false));
    }
    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ----------------------------------------------------------------- koenigs

int run_koenigs(const CommonOpts& o, const std::string& zs, double t, double theta) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const Cplx z = parse_cplx(zs);

    const sf::KoenigsMap km(g);
    const Cplx h = km.map(z);

    Json rep = sf::make_report("koenigs", kKoenigsStatement);
    rep["generator"] = g.text();

    rep["records"].push_back(sf::make_record(
        "straightening_value", Json{{"z", sf::json_complex(z)}}, "h(1) = 0, h'(z) f(z) = 1",
        sf::json_complex(h), sf::json_real(0.0), sf::is_finite(h)));

    const Cplx back = km.inverse(h);
    const double round = std::abs(back - z);
    rep["records"].push_back(sf::make_record(
        "inverse_roundtrip", Json{{"z", sf::json_complex(z)}}, "h^{-1}(h(z)) = z",
        sf::json_complex(back), sf::json_real(round), round <= 1e-8 * (1.0 + std::abs(z))));

    const double abel = km.abel_residual(z, t);
    rep["records"].push_back(sf::make_record(
        "translation_residual", Json{{"z", sf::json_complex(z)}, {"t", sf::json_real(t)}},
        "|h(F_t(z)) - h(z) - t| <= 1e-7", sf::json_real(abel), sf::json_real(abel),
        abel <= 1e-7));

    const sf::SampleGrid grid = sf::SampleGrid::standard(0.0, o.grid_re, o.grid_im);
    const sf::DirectionReport dir = sf::convexity_direction_check(km, theta, grid, o.tol);
    const char* status = dir.status == sf::DirectionStatus::Pass       ? "pass"
                         : dir.status == sf::DirectionStatus::Boundary ? "boundary"
                                                                       : "fail";
    rep["records"].push_back(sf::make_record(
        "image_absorbs_direction",
        Json{{"theta", sf::json_real(theta)}, {"argmin", sf::json_complex(dir.argmin)},
             {"status", status}},
        "Re(e^{-i theta}/f) >= 0", sf::json_real(dir.min_value),
        sf::json_real(std::max(0.0, -dir.min_value)),
        dir.status != sf::DirectionStatus::Fail));

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ---------------------------------------------------------------- envelope

int run_envelope(const CommonOpts& o, const std::string& z0s, double u_max, int knots,
                 double t_max, int samples) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const Cplx z0 = parse_cplx(z0s);

    const sf::EnvelopeBound bound = sf::envelope_bounds(
        g, z0, u_max, knots, static_cast<std::size_t>(o.grid_re),
        static_cast<std::size_t>(o.grid_im));
    if (o.format == "csv") return emit(o, sf::envelope_csv(bound), 0);

    const sf::Trajectory tr = sf::trajectory(g, z0, t_max, samples, 0.0, flow_params(1e-10));
    const sf::ContainmentReport cr = sf::verify_containment(bound, tr, 1e-7);

    Json rep = sf::make_report("envelope", kEnvelopeStatement);
    rep["generator"] = g.text();
    Json kn = Json::array();
    for (std::size_t i = 0; i < bound.u.size(); ++i)
        kn.push_back(Json{{"u", sf::json_real(bound.u[i])},
                          {"B1", sf::json_real(bound.b1[i])},
                          {"B2", sf::json_real(bound.b2[i])}});
    rep["knots"] = std::move(kn);
    rep["widening_bound"] = sf::json_real(bound.widening_bound);

    rep["records"].push_back(sf::make_record(
        "containment",
        Json{{"z0", sf::json_complex(z0)}, {"t_max", sf::json_real(t_max)},
             {"samples", cr.samples_checked}, {"argworst", sf::json_complex(cr.argworst)}},
        "B1(Re) <= Im <= B2(Re) along the orbit",
        sf::json_real(std::max(cr.worst_below, cr.worst_above)),
        sf::json_real(std::max({cr.worst_below, cr.worst_above, 0.0})), cr.ok));

    if (g.kind() == sf::GenKind::Moebius) {
        const double a = g.param("a")->real();
        const double b = g.param("b")->real();
        auto D = [&](double s) { return 0.5 * (a + b) + s + std::sqrt((s + a) * (s + b)); };
        const double ideal = (b - a) * std::log(D(bound.u.back()) / D(bound.u.front()));
        const double width = bound.b2.back() - bound.b1.back();
        const double allowance = ideal + 2.0 * bound.widening_bound + 1e-6;
        rep["records"].push_back(sf::make_record(
            "log_width_bound",
            Json{{"a", sf::json_real(a)}, {"b", sf::json_real(b)},
                 {"widening_bound", sf::json_real(bound.widening_bound)}},
            "final width <= (b-a) log(D(u_max)/D(u_0)) + widening", sf::json_real(width),
            sf::json_real(std::max(0.0, width - allowance)), width <= allowance));
    }

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ------------------------------------------------------------------- hardy

int run_hardy(const CommonOpts& o, const std::string& op, double p, int basis_n, int pair_n,
              const std::string& as, double t, const std::vector<std::string>& zeta_strs,
              int n_max) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    Json rep = sf::make_report("hardy", kHardyStatement);
    rep["generator"] = g.text();

    if (op == "norm") {
        const sf::NormResult nr = sf::hp_norm(sf::basis_function(basis_n, p));
        Json means = Json::array();
        for (const auto& [x, m] : nr.line_means)
            means.push_back(Json{{"x", sf::json_real(x)}, {"mean", sf::json_real(m)}});
        rep["records"].push_back(sf::make_record(
            "basis_norm",
            Json{{"n", basis_n}, {"p", sf::json_real(p)}, {"line_means", std::move(means)}},
            sf::json_real(1.0), sf::json_real(nr.value), sf::json_real(std::fabs(nr.value - 1.0)),
            std::fabs(nr.value - 1.0) <= 1e-6));
    } else if (op == "pairing") {
        const Cplx a = parse_cplx(as);
        const sf::PairingResult pr = sf::dissipativity_pairing(g, a, pair_n, p);
        const double agree_tol = std::max(1e-9, 1e-6 * std::abs(pr.closed_form));
        rep["records"].push_back(sf::make_record(
            "dissipativity_pairing",
            Json{{"a", sf::json_complex(a)}, {"n", pair_n}, {"p", sf::json_real(p)}},
            sf::json_complex(pr.closed_form), sf::json_complex(pr.quadrature_value),
            sf::json_real(pr.residual), pr.residual <= agree_tol));
        rep["records"].push_back(sf::make_record(
            "pairing_dissipative", Json{{"p", sf::json_real(p)}}, "Re(value) <= 0",
            sf::json_real(pr.quadrature_value.real()),
            sf::json_real(std::max(0.0, pr.quadrature_value.real())),
            pr.quadrature_value.real() <= 1e-9));
    } else if (op == "normlaw") {
        const sf::NormLawResult nl = sf::operator_norm_law(g, t, p);
        Json probes = Json::array();
        for (const auto& pb : nl.probes)
            probes.push_back(Json{{"probe", pb.name},
                                  {"base_norm", sf::json_real(pb.base_norm)},
                                  {"composed_norm", sf::json_real(pb.composed_norm)},
                                  {"ratio", sf::json_real(pb.ratio)}});
        rep["records"].push_back(sf::make_record(
            "operator_norm_law",
            Json{{"t", sf::json_real(t)}, {"p", sf::json_real(p)},
                 {"delta", sf::json_real(nl.delta)}, {"probes", std::move(probes)}},
            sf::json_real(nl.predicted), sf::json_real(nl.measured_lower),
            sf::json_real(std::max(0.0, nl.measured_lower - nl.predicted)),
            nl.measured_lower <= nl.predicted + 1e-6));
    } else if (op == "characterize") {
        auto flow_map = [&g, t](Cplx z) { return sf::evolve(g, z, t); };
        const sf::SampleGrid grid = sf::SampleGrid::standard(0.0, 24, 25);
        const auto ch = sf::characterize_composition(sf::composition_operator(flow_map, p),
                                                     n_max, grid);
        Json params{{"t", sf::json_real(t)},      {"p", sf::json_real(p)},
                    {"n_max", n_max},             {"min_re_F", sf::json_real(ch.min_re_F)},
                    {"slope", sf::json_complex(ch.angular_slope)},
                    {"branch_ambiguities", ch.branch_ambiguities.size()}};
        if (!ch.failures.empty()) params["failures"] = ch.failures;
        rep["records"].push_back(sf::make_record(
            "composition_characterization", std::move(params),
            "self-map + nonzero slope + power structure", ch.is_composition ? "composition"
                                                                            : "not a composition",
            sf::json_real(ch.max_residual), ch.is_composition));
    } else {  // extension
        std::vector<Cplx> zetas;
        for (const auto& zs : zeta_strs) zetas.push_back(parse_cplx(zs));
        const auto ext = sf::contractive_extension_check(g, zetas, p,
                                                         sf::flow_boundary_quadrature(), n_max);
        for (const auto& probe : ext.probes) {
            Json params{{"zeta", sf::json_complex(probe.zeta)},
                        {"extended", probe.extended}};
            if (!probe.extended) params["failure"] = probe.failure;
            rep["records"].push_back(sf::make_record(
                "contractive_extension", std::move(params),
                "norm ratio <= 1, composition structure, displacement additivity",
                probe.extended ? sf::json_real(probe.max_norm_ratio) : Json("no extension"),
                sf::json_real(std::max(probe.characterization_residual,
                                       probe.additivity_residual)),
                !probe.extended || probe.ok));
        }
        rep["extended_count"] = ext.extended_count;
    }

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

// ------------------------------------------------------------------ report

int run_report(const CommonOpts& o, double t, int probes) {
    const sf::Generator g = sf::parse_generator(o.gen_spec);
    const sf::SampleGrid grid = sf::SampleGrid::standard(0.0, o.grid_re, o.grid_im);
    Json rep = sf::make_report("report", kReportStatement);
    rep["generator"] = g.text();
    rep["seed"] = o.seed;

    const auto inv = sf::check_flow_invariance(g, grid, o.tol);
    rep["records"].push_back(sf::make_record(
        "flow_invariance", Json{{"points", inv.points_checked}}, "pointwise excess <= 0",
        sf::json_real(inv.max_excess), sf::json_real(std::max(0.0, inv.max_excess)), inv.ok()));
    const auto rng_rep = sf::check_range_halfplane(g, grid, o.tol);
    rep["records"].push_back(sf::make_record(
        "range_halfplane", Json{{"points", rng_rep.points_checked}}, "min Re f >= 0",
        sf::json_real(rng_rep.min_re), sf::json_real(std::max(0.0, -rng_rep.min_re)),
        rng_rep.ok()));

    const auto sec = sf::sector_of_analyticity(g, grid);
    rep["records"].push_back(sf::make_record(
        "direction_sector", Json::object(), "nonempty cone of admissible directions",
        sec ? "theta1 = " + std::string(sf::format_double(sec->theta1)) +
                  ", theta2 = " + std::string(sf::format_double(sec->theta2))
            : std::string("empty"),
        sf::json_real(0.0), sec.has_value()));

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> re_d(0.2, 3.0), im_d(-3.0, 3.0), t_d(0.1, 2.0);
    double worst_law = 0.0;
    for (int i = 0; i < probes; ++i) {
        const Cplx z0(re_d(rng), im_d(rng));
        worst_law = std::max(worst_law,
                             sf::check_semigroup_law(g, z0, t_d(rng), t_d(rng)));
    }
    rep["records"].push_back(sf::make_record(
        "semigroup_law", Json{{"probes", probes}}, "two-leg vs direct evolution <= 1e-7",
        sf::json_real(worst_law), sf::json_real(worst_law), worst_law <= 1e-7));

    try {
        const sf::KoenigsMap km(g);
        double worst_abel = 0.0;
        for (int i = 0; i < probes; ++i)
            worst_abel = std::max(worst_abel,
                                  km.abel_residual(Cplx(re_d(rng), im_d(rng)), t_d(rng)));
        rep["records"].push_back(sf::make_record(
            "translation_residual", Json{{"probes", probes}},
            "|h(F_t(z)) - h(z) - t| <= 1e-7", sf::json_real(worst_abel),
            sf::json_real(worst_abel), worst_abel <= 1e-7));
    } catch (const sf::Error& e) {
        rep["records"].push_back(sf::make_record("translation_residual",
                                                 Json{{"note", e.what()}},
                                                 "|h(F_t(z)) - h(z) - t| <= 1e-7",
                                                 "straightening unavailable", sf::json_real(0.0),
                                                 false));
    }

    const sf::NormResult nr = sf::hp_norm(sf::basis_function(0, 2.0));
    rep["records"].push_back(sf::make_record(
        "basis_norm", Json{{"n", 0}, {"p", sf::json_real(2.0)}}, sf::json_real(1.0),
        sf::json_real(nr.value), sf::json_real(std::fabs(nr.value - 1.0)),
        std::fabs(nr.value - 1.0) <= 1e-6));

    try {
        const sf::NormLawResult nl = sf::operator_norm_law(g, t, 2.0);
        rep["records"].push_back(sf::make_record(
            "operator_norm_law", Json{{"t", sf::json_real(t)}, {"delta", sf::json_real(nl.delta)}},
            sf::json_real(nl.predicted), sf::json_real(nl.measured_lower),
            sf::json_real(std::max(0.0, nl.measured_lower - nl.predicted)),
            nl.measured_lower <= nl.predicted + 1e-6));
    } catch (const sf::Error& e) {
        rep["records"].push_back(sf::make_record("operator_norm_law", Json{{"note", e.what()}},
                                                 "measured lower bound <= predicted",
                                                 "norm law unavailable", sf::json_real(0.0),
                                                 false));
    }

    return emit_report(o, rep, all_pass(rep) ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiflow: flows of holomorphic self-maps of the right half-plane"};
    app.set_version_flag("--version", sf::kVersionString);
    app.require_subcommand(1);

    CommonOpts vo;
    CLI::App* validate = app.add_subcommand("validate", "check that --gen generates a flow");
    add_common(validate, &vo);

    CommonOpts so;
    std::vector<double> ks{0.0, 0.1, 0.5, 1.0, 2.0, 4.5, 10.0};
    CLI::App* sector = app.add_subcommand("sector", "direction cone of complex-time extension");
    add_common(sector, &so);
    sector->add_option("--k", ks, "abscissa shifts for the restricted cones");

    CommonOpts eo;
    std::string e_z0 = "1";
    double e_t = 1.0, e_theta = 0.0;
    int e_samples = 101;
    CLI::App* evolve = app.add_subcommand("evolve", "integrate the flow from --z0 for time --t");
    add_common(evolve, &eo);
    evolve->add_option("--z0", e_z0, "starting point (complex, e.g. \"1+0.5i\")");
    evolve->add_option("--t", e_t, "evolution time (>= 0)");
    evolve->add_option("--theta", e_theta, "ray direction in radians");
    evolve->add_option("--samples", e_samples, "trajectory sample count")->check(CLI::Range(2, 100000));

    CommonOpts xo;
    std::string x_z0 = "1", x_zeta = "1";
    CLI::App* extend = app.add_subcommand("extend", "complex-time evolution via the straightening coordinate");
    add_common(extend, &xo);
    extend->add_option("--z0", x_z0, "starting point");
    extend->add_option("--zeta", x_zeta, "complex displacement");

    CommonOpts ko;
    std::string k_z = "2";
    double k_t = 1.0, k_theta = 0.0;
    CLI::App* koenigs = app.add_subcommand("koenigs", "straightening coordinate: values, inverse, residuals");
    add_common(koenigs, &ko);
    koenigs->add_option("--z", k_z, "evaluation point");
    koenigs->add_option("--t", k_t, "time for the translation residual");
    koenigs->add_option("--theta", k_theta, "direction for the absorption check");

    CommonOpts no;
    std::string n_z0 = "1";
    double n_umax = 40.0, n_tmax = 20.0;
    int n_knots = 64, n_samples = 201;
    CLI::App* envelope = app.add_subcommand("envelope", "polygonal curves enclosing the orbit");
    add_common(envelope, &no);
    envelope->add_option("--z0", n_z0, "orbit start");
    envelope->add_option("--u-max", n_umax, "abscissa horizon");
    envelope->add_option("--knots", n_knots, "envelope knot count")->check(CLI::Range(2, 100000));
    envelope->add_option("--t-max", n_tmax, "orbit time horizon for containment");
    envelope->add_option("--samples", n_samples, "orbit sample count")->check(CLI::Range(2, 100000));

    CommonOpts ho;
    std::string h_op = "norm", h_a = "2";
    double h_p = 2.0, h_t = 1.0;
    int h_basis_n = 0, h_pair_n = 1, h_nmax = 4;
    std::vector<std::string> h_zetas{"1"};
    CLI::App* hardy = app.add_subcommand("hardy", "boundary-quadrature operator checks");
    add_common(hardy, &ho);
    hardy->add_option("--op", h_op, "which check to run")
        ->check(CLI::IsMember({"norm", "pairing", "normlaw", "characterize", "extension"}));
    hardy->add_option("--p", h_p, "integrability exponent (> 1)");
    hardy->add_option("--basis-n", h_basis_n, "basis index for --op norm");
    hardy->add_option("--pair-n", h_pair_n, "norming index for --op pairing (>= 1)");
    hardy->add_option("--a", h_a, "norming parameter for --op pairing");
    hardy->add_option("--t", h_t, "flow time for normlaw/characterize");
    hardy->add_option("--zeta", h_zetas, "displacements for --op extension");
    hardy->add_option("--nmax", h_nmax, "largest basis index for characterize/extension");

    CommonOpts ro;
    double r_t = 1.0;
    int r_probes = 5;
    CLI::App* report = app.add_subcommand("report", "combined battery over one generator");
    add_common(report, &ro);
    report->add_option("--t", r_t, "flow time for the norm-law record");
    report->add_option("--probes", r_probes, "random probe count")->check(CLI::Range(1, 1000));

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config_file(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const sf::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(vo);
        if (sector->parsed()) return run_sector(so, ks);
        if (evolve->parsed()) return run_evolve(eo, e_z0, e_t, e_theta, e_samples);
        if (extend->parsed()) return run_extend(xo, x_z0, x_zeta);
        if (koenigs->parsed()) return run_koenigs(ko, k_z, k_t, k_theta);
        if (envelope->parsed()) return run_envelope(no, n_z0, n_umax, n_knots, n_tmax, n_samples);
        if (hardy->parsed())
            return run_hardy(ho, h_op, h_p, h_basis_n, h_pair_n, h_a, h_t, h_zetas, h_nmax);
        if (report->parsed()) return run_report(ro, r_t, r_probes);
    } catch (const sf::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify_exit(e);
    }
    return 2;
}
