// SPDX-License-Identifier: Apache-2.0
// Command-line front end: point evaluation, verification suites, and
// plot-data export for the Gegenbauer / Green-function library.
//
// Exit codes: 0 success, 2 validation error (diagnostic names the violated
// invariant), 3 numerical non-convergence (diagnostic reports the tolerance).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gegreen/gegreen.hpp"

using namespace gegreen;
using Cx = ComplexValue;
using ordered_json = nlohmann::ordered_json;

namespace {

struct OutputConfig {
    std::string format = "json";
    std::string path; // empty: stdout
};

void add_output_flags(CLI::App* cmd, OutputConfig& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output", out.path, "Output file path (default: stdout)");
}

void emit(const OutputConfig& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw DegenerateParams("output: cannot open file " + out.path);
    f << text;
}

std::string fmtd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Flat record -> JSON object or a one-row CSV with '#' provenance comments.
// Keys listed in `meta` become comments in CSV mode and plain fields in JSON.
struct Record {
    std::vector<std::pair<std::string, ordered_json>> fields;
    std::vector<std::pair<std::string, std::string>> meta;

    void add(const std::string& k, double v) { fields.emplace_back(k, v); }
    void add(const std::string& k, const std::string& v) { fields.emplace_back(k, v); }
    void add_complex(const std::string& k, Cx v) {
        fields.emplace_back(k + "_re", v.real());
        fields.emplace_back(k + "_im", v.imag());
    }
    void note(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void note(const std::string& k, double v) { meta.emplace_back(k, fmtd(v)); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            ordered_json j;
            for (const auto& [k, v] : fields) j[k] = v;
            for (const auto& [k, v] : meta) j[k] = v;
            return j.dump(2) + "\n";
        }
        std::ostringstream os;
        for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < fields.size(); ++i)
            os << (i ? "," : "") << fields[i].first;
        os << "\n";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& v = fields[i].second;
            os << (i ? "," : "")
               << (v.is_number() ? fmtd(v.get<double>()) : v.get<std::string>());
        }
        os << "\n";
        return os.str();
    }
};

// Multi-row table with the same comment convention.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
    std::vector<std::pair<std::string, std::string>> meta;

    void note(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void note(const std::string& k, double v) { meta.emplace_back(k, fmtd(v)); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            ordered_json j;
            for (const auto& [k, v] : meta) j[k] = v;
            ordered_json jrows = ordered_json::array();
            for (const auto& r : rows) {
                ordered_json jr;
                for (std::size_t i = 0; i < columns.size(); ++i) jr[columns[i]] = r[i];
                jrows.push_back(jr);
            }
            j["rows"] = jrows;
            return j.dump(2) + "\n";
        }
        std::ostringstream os;
        for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "")
                   << (r[i].is_number() ? fmtd(r[i].get<double>())
                                        : r[i].get<std::string>());
            }
            os << "\n";
        }
        return os.str();
    }
};

Space parse_space(const std::string& s) {
    return s == "spherical" ? Space::Spherical : Space::Hyperbolic;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Propagating: return "propagating";
        case Regime::Evanescent: return "evanescent";
        default: return "caustic";
    }
}

// ---------------------------------------------------------------------------
// eval-gegenbauer
// ---------------------------------------------------------------------------
struct GegenbauerOpts {
    std::string kind = "C";
    double nu_re = 0.0, nu_im = 0.0;
    double alpha_re = 1.0, alpha_im = 0.0;
    double z_re = 2.0, z_im = 0.0;
    std::string side = "plus";
    OutputConfig out;
};

int run_eval_gegenbauer(const GegenbauerOpts& o) {
    const Cx nu(o.nu_re, o.nu_im), alpha(o.alpha_re, o.alpha_im);
    const bool on_cut = o.z_im == 0.0 && o.z_re > -1.0 && o.z_re < 1.0;
    BranchedArg z{Cx(o.z_re, o.z_im)};
    std::string route = "off_cut_principal";
    if (on_cut && (o.kind == "C" || o.kind == "D")) {
        // the cut side selects the analytic branch of the formula explicitly
        z = (o.side == "minus") ? minus_i0(o.z_re) : plus_i0(o.z_re);
        route = (o.side == "minus") ? "cut_lower_side" : "cut_upper_side";
    }
    const GegenbauerArgs args{nu, alpha, z};
    Cx value;
    if (o.kind == "C") {
        value = eval_C(args);
    } else if (o.kind == "D") {
        value = eval_D(args);
    } else if (o.kind == "cutC") {
        value = eval_cut(Kind::CutC, args);
        route = "cut_combination_first";
    } else {
        value = eval_cut(Kind::CutD, args);
        route = "cut_combination_second";
    }
    Record rec;
    rec.add("command", std::string("eval-gegenbauer"));
    rec.add("kind", o.kind);
    rec.add_complex("nu", nu);
    rec.add_complex("alpha", alpha);
    rec.add_complex("z", Cx(o.z_re, o.z_im));
    rec.add_complex("value", value);
    rec.note("branch_route", route);
    rec.note("degree_convention", "degree is nu minus alpha");
    emit(o.out, rec.render(o.out.format));
    return 0;
}

// ---------------------------------------------------------------------------
// eval-green
// ---------------------------------------------------------------------------
struct GreenOpts {
    std::string space = "hyperbolic";
    double d = 3.0, R = 1.0, omega = 1.0, c = 1.0;
    double Theta = -1.0;
    double theta = -1.0, theta_prime = -1.0, phi = 0.0;
    OutputConfig out;
};

int run_eval_green(const GreenOpts& o) {
    const Space sp = parse_space(o.space);
    PhysicalParams p{o.d, o.R, o.omega, o.c};
    p.validate();
    const auto norm = normalization_constants(p);
    Record rec;
    rec.add("command", std::string("eval-green"));
    rec.add("space", o.space);
    rec.add("d", o.d);
    rec.add("R", o.R);
    rec.add("omega", o.omega);
    rec.add("c", o.c);
    GreenValue g;
    if (o.theta >= 0.0 && o.theta_prime >= 0.0) {
        if (o.phi != 0.0) {
            // composite separation from the two polar angles and the azimuth
            const double Theta = composite_angle(o.theta, o.theta_prime, o.phi, sp);
            g = (sp == Space::Hyperbolic) ? green_scalar_H(p, Theta)
                                          : green_scalar_S(p, Theta);
            rec.add("theta", o.theta);
            rec.add("theta_prime", o.theta_prime);
            rec.add("phi", o.phi);
            rec.add("Theta", Theta);
            rec.note("evaluation_route", "scalar_composite_angle");
        } else {
            g = (sp == Space::Hyperbolic) ? green_radial_H(p, o.theta, o.theta_prime)
                                          : green_radial_S(p, o.theta, o.theta_prime);
            rec.add("theta", o.theta);
            rec.add("theta_prime", o.theta_prime);
            rec.note("evaluation_route", "radial_second_first_product");
        }
    } else if (o.Theta >= 0.0) {
        g = (sp == Space::Hyperbolic) ? green_scalar_H(p, o.Theta)
                                      : green_scalar_S(p, o.Theta);
        rec.add("Theta", o.Theta);
        rec.note("evaluation_route", "scalar_closed_form");
    } else {
        throw DegenerateParams(
            "eval-green: provide --Theta or the pair --theta/--theta-prime");
    }
    rec.add_complex("value", g.value);
    rec.add("regime", std::string(regime_name(g.regime)));
    rec.note("normalization_solid_angle", norm.solid_angle);
    rec.note("normalization_radius_power", norm.radius_power);
    emit(o.out, rec.render(o.out.format));
    return 0;
}

// ---------------------------------------------------------------------------
// kernel-check
// ---------------------------------------------------------------------------
struct KernelOpts {
    std::string space = "hyperbolic";
    double theta = 1.0, theta_prime = 1.3;
    double alpha = 1.0;
    double contour_offset = -1.0; // < 0: per-space default
    double contour_lambda = 0.0;  // 0: per-space default
    int nodes_per_unit = 16;
    OutputConfig out;
};

int run_kernel_check(const KernelOpts& o) {
    const Space sp = parse_space(o.space);
    const Cx alpha(o.alpha, 0.0);
    const double offset =
        (o.contour_offset >= 0.0) ? o.contour_offset : (sp == Space::Spherical ? 0.25 : 0.0);
    const double lambda =
        (o.contour_lambda > 0.0) ? o.contour_lambda : (sp == Space::Spherical ? 150.0 : 120.0);
    const ContourSpec contour{offset, lambda, o.nodes_per_unit,
                              ContourRule::GaussLegendrePanels};
    double residual = 0.0;
    if (sp == Space::Hyperbolic) {
        SampledFunction probe = SampledFunction::from_callable(
            [&](double t) {
                const double u = (t - o.theta_prime);
                return Cx(std::exp(-u * u / 0.08), 0.0);
            },
            1e-3, o.theta_prime + 2.0, 257, Cx(2.0, 0.0), Space::Hyperbolic);
        residual = kernel_delta_check_H(o.theta, o.theta_prime, alpha, contour, probe,
                                        HKernelForm::Split);
    } else {
        const double lo = std::max(0.05, o.theta_prime - 1.2);
        const double hi = std::min(pi - 0.05, o.theta_prime + 1.2);
        SampledFunction probe = SampledFunction::from_callable(
            [&](double t) {
                const double u = (t - o.theta_prime);
                return Cx(std::exp(-u * u / 0.08), 0.0);
            },
            lo, hi, 257, Cx(2.0, 0.0), Space::Spherical);
        residual = kernel_delta_check_S(o.theta, o.theta_prime, alpha, contour, probe);
    }
    Record rec;
    rec.add("command", std::string("kernel-check"));
    rec.add("space", o.space);
    rec.add("theta", o.theta);
    rec.add("theta_prime", o.theta_prime);
    rec.add("alpha", o.alpha);
    rec.add("residual", residual);
    rec.note("kernel_route", sp == Space::Hyperbolic ? "continuous_split_kernel"
                                                     : "discrete_residue_sum");
    rec.note("contour_offset", offset);
    rec.note("contour_truncation", lambda);
    rec.note("contour_nodes_per_unit", static_cast<double>(o.nodes_per_unit));
    rec.note("probe", "gaussian bump centred at theta_prime, width 0.2");
    emit(o.out, rec.render(o.out.format));
    return 0;
}

// ---------------------------------------------------------------------------
// time-domain
// ---------------------------------------------------------------------------
struct TimeDomainOpts {
    std::string space = "hyperbolic";
    double d = 3.0, R = 1.0, c = 1.0;
    double theta = -1.0, theta_prime = -1.0, Theta = -1.0;
    double tmin = 0.0, tmax = 4.0, dt = 0.05;
    double omega_max = 400.0;
    int n_omega = 4001;
    std::string branch = "retarded";
    OutputConfig out;
};

int run_time_domain(const TimeDomainOpts& o) {
    const Space sp = parse_space(o.space);
    PhysicalParams p{o.d, o.R, 0.0, o.c};
    p.validate();
    if (!(o.dt > 0.0) || !(o.tmax > o.tmin)) {
        throw DegenerateParams("time-domain: requires dt > 0 and tmax > tmin");
    }
    std::vector<double> tg;
    for (double t = o.tmin; t <= o.tmax + 1e-12; t += o.dt) tg.push_back(t);
    const TimeDomainSpec spec{o.omega_max, o.n_omega, -1.0, 0.1};
    std::vector<Cx> series;
    std::string route;
    if (o.theta >= 0.0 && o.theta_prime >= 0.0) {
        const ContourPole pole =
            (sp == Space::Hyperbolic)
                ? (o.branch == "advanced" ? ContourPole::PlusSigma : ContourPole::MinusSigma)
                : (o.branch == "advanced" ? ContourPole::MinusTau : ContourPole::PlusTau);
        series = time_domain_green(p, sp, o.theta, o.theta_prime, tg, spec, pole);
        route = "radial_pole_synthesis";
    } else if (o.Theta >= 0.0) {
        series = time_domain_green_scalar(p, sp, o.Theta, tg, spec);
        route = "scalar_closed_form_synthesis";
    } else {
        throw DegenerateParams(
            "time-domain: provide --Theta or the pair --theta/--theta-prime");
    }
    Table tab;
    tab.columns = {"t", "re", "im"};
    for (std::size_t i = 0; i < tg.size(); ++i) {
        tab.rows.push_back({tg[i], series[i].real(), series[i].imag()});
    }
    tab.note("command", "time-domain");
    tab.note("space", o.space);
    tab.note("branch", o.branch);
    tab.note("synthesis_route", route);
    tab.note("omega_max", o.omega_max);
    tab.note("n_omega", static_cast<double>(o.n_omega));
    tab.note("time_unit", "R / c");
    emit(o.out, tab.render(o.out.format));
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
struct VerifyOpts {
    std::string suite = "wronskian";
    int samples = 200;
    unsigned seed = 1;
    OutputConfig out;
};

int run_verify(const VerifyOpts& o) {
    if (o.samples < 1) throw DegenerateParams("verify: requires samples >= 1");
    std::mt19937 rng(o.seed);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    Table tab;
    tab.columns = {"index", "nu_re", "nu_im", "alpha", "theta", "space", "residual"};
    tab.note("command", "verify");
    tab.note("suite", o.suite);
    tab.note("samples", static_cast<double>(o.samples));
    tab.note("seed", static_cast<double>(o.seed));
    double worst = 0.0;
    double tol = 1e-6;
    for (int i = 0; i < o.samples; ++i) {
        double residual = 0.0;
        Cx nu;
        double a = 0.0, th = 0.0;
        std::string spname = "hyperbolic";
        if (o.suite == "wronskian") {
            nu = Cx(uni(-5.0, 5.0), uni(-2.0, 2.0));
            a = uni(0.4, 2.4);
            const Space sp = (i % 2 == 0) ? Space::Hyperbolic : Space::Spherical;
            spname = (sp == Space::Hyperbolic) ? "hyperbolic" : "spherical";
            // keep the exponential growth of the cross terms moderate so the
            // finite-difference companion retains significance
            const double rate = std::abs(nu.real()) + std::abs(nu.imag()) + 0.1;
            th = uni(0.3, std::min(2.0, 6.0 / rate));
            residual = std::abs(wronskian_DC(nu, Cx(a, 0.0), th, sp) -
                                wronskian_DC_fd(nu, Cx(a, 0.0), th, sp)) /
                       std::abs(wronskian_DC(nu, Cx(a, 0.0), th, sp));
        } else if (o.suite == "symmetry") {
            tol = 1e-9;
            nu = Cx(uni(-6.0, 6.0), uni(-6.0, 6.0));
            a = std::floor(uni(0.0, 2.0)) + uni(0.15, 0.85);
            th = uni(0.2, 2.5);
            const GegenbauerArgs args{nu, Cx(a, 0.0),
                                      BranchedArg{Cx(std::cosh(th), 0.0)}};
            residual = std::max(symmetry_check_C(args), symmetry_check_D(args));
        } else if (o.suite == "connection") {
            tol = 1e-9;
            nu = Cx(uni(0.1, 4.0), uni(0.3, 6.0));
            a = std::floor(uni(0.0, 2.0)) + uni(0.15, 0.85);
            th = uni(0.2, 2.5);
            const GegenbauerArgs args{nu, Cx(a, 0.0),
                                      BranchedArg{Cx(std::cosh(th), 0.0)}};
            const Cx lhs = connection_CfromD(args), rhs = eval_C(args);
            residual = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        } else if (o.suite == "cut") {
            tol = 1e-9;
            nu = Cx(uni(-6.0, 6.0), uni(-7.0, 7.0));
            a = std::floor(uni(0.0, 2.0)) + uni(0.15, 0.85);
            th = uni(-0.9, 0.9); // here: the on-cut argument x
            const Cx alpha(a, 0.0);
            const GegenbauerArgs args{nu, alpha, BranchedArg{Cx(th, 0.0)}};
            const Cx cc = eval_cut(Kind::CutC, args);
            const Cx dd = eval_cut(Kind::CutD, args);
            const Cx dp = eval_D({nu, alpha, plus_i0(th)});
            const Cx dm = eval_D({nu, alpha, minus_i0(th)});
            const Cx i_unit(0.0, 1.0);
            const double den = std::max(std::abs(dp), std::abs(dm)) + 1e-300;
            residual = std::max(
                std::abs(0.5 * (cc + i_unit * dd) - dp) / den,
                std::abs(0.5 * std::exp(2.0 * i_unit * pi * alpha) * (cc - i_unit * dd) -
                         dm) /
                    den);
            spname = "cut";
        } else {
            throw DegenerateParams(
                "verify: unknown suite (wronskian|symmetry|connection|cut)");
        }
        worst = std::max(worst, residual);
        tab.rows.push_back({static_cast<double>(i), nu.real(), nu.imag(), a, th, spname,
                            residual});
    }
    tab.note("tolerance", tol);
    tab.note("worst_residual", worst);
    emit(o.out, tab.render(o.out.format));
    if (worst >= tol) {
        std::cerr << "verify: worst residual " << worst << " exceeds tolerance " << tol
                  << "\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// limit-check
// ---------------------------------------------------------------------------
struct LimitOpts {
    std::string space = "hyperbolic";
    double d = 3.0, R = 1.0, omega = 500.0, c = 1.0;
    double Theta = 0.05;
    bool sweep = false;
    OutputConfig out;
};

int run_limit_check(const LimitOpts& o) {
    const Space sp = parse_space(o.space);
    Table tab;
    tab.columns = {"kR", "Theta", "deviation"};
    tab.note("command", "limit-check");
    tab.note("space", o.space);
    tab.note("reference", "short-distance high-frequency closed form");
    std::vector<double> krs;
    if (o.sweep) {
        krs = {o.omega * o.R / (4.0 * o.c), o.omega * o.R / (2.0 * o.c),
               o.omega * o.R / o.c};
    } else {
        krs = {o.omega * o.R / o.c};
    }
    double last = 0.0;
    for (double kr : krs) {
        PhysicalParams p{o.d, o.R, kr * o.c / o.R, o.c};
        last = flat_limit_check(p, o.Theta, sp);
        tab.rows.push_back({kr, o.Theta, last});
    }
    tab.note("final_deviation", last);
    emit(o.out, tab.render(o.out.format));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gegreen: Gegenbauer functions, generalized transforms, and "
                 "causal radiation Green functions on constant-curvature spaces"};
    app.require_subcommand(1);

    GegenbauerOpts go;
    auto* cg = app.add_subcommand("eval-gegenbauer",
                                  "Evaluate a Gegenbauer function of complex degree");
    cg->add_option("--kind", go.kind)->check(CLI::IsMember({"C", "D", "cutC", "cutD"}));
    cg->add_option("--nu-re", go.nu_re);
    cg->add_option("--nu-im", go.nu_im);
    cg->add_option("--alpha-re", go.alpha_re);
    cg->add_option("--alpha-im", go.alpha_im);
    cg->add_option("--z-re", go.z_re);
    cg->add_option("--z-im", go.z_im);
    cg->add_option("--side", go.side, "Cut side when -1 < z < 1")
        ->check(CLI::IsMember({"plus", "minus"}));
    add_output_flags(cg, go.out);

    GreenOpts eo;
    auto* ce = app.add_subcommand("eval-green",
                                  "Evaluate a fixed-frequency radiation Green function");
    ce->add_option("--space", eo.space)->check(CLI::IsMember({"hyperbolic", "spherical"}));
    ce->add_option("--d", eo.d);
    ce->add_option("--R", eo.R);
    ce->add_option("--omega", eo.omega);
    ce->add_option("--c", eo.c);
    ce->add_option("--Theta", eo.Theta, "Composite separation angle");
    ce->add_option("--theta", eo.theta);
    ce->add_option("--theta-prime", eo.theta_prime);
    ce->add_option("--phi", eo.phi);
    add_output_flags(ce, eo.out);

    KernelOpts ko;
    auto* ck = app.add_subcommand("kernel-check",
                                  "Delta-kernel sifting residual of the transform pair");
    ck->add_option("--space", ko.space)->check(CLI::IsMember({"hyperbolic", "spherical"}));
    ck->add_option("--theta", ko.theta);
    ck->add_option("--theta-prime", ko.theta_prime);
    ck->add_option("--alpha", ko.alpha);
    ck->add_option("--contour-offset", ko.contour_offset);
    ck->add_option("--contour-lambda", ko.contour_lambda);
    ck->add_option("--nodes-per-unit", ko.nodes_per_unit);
    add_output_flags(ck, ko.out);

    TimeDomainOpts to;
    auto* ct = app.add_subcommand("time-domain",
                                  "Synthesize the causal time-domain Green function");
    ct->add_option("--space", to.space)->check(CLI::IsMember({"hyperbolic", "spherical"}));
    ct->add_option("--d", to.d);
    ct->add_option("--R", to.R);
    ct->add_option("--c", to.c);
    ct->add_option("--theta", to.theta);
    ct->add_option("--theta-prime", to.theta_prime);
    ct->add_option("--Theta", to.Theta);
    ct->add_option("--tmin", to.tmin);
    ct->add_option("--tmax", to.tmax);
    ct->add_option("--dt", to.dt);
    ct->add_option("--omega-max", to.omega_max);
    ct->add_option("--n-omega", to.n_omega);
    ct->add_option("--branch", to.branch)->check(CLI::IsMember({"retarded", "advanced"}));
    add_output_flags(ct, to.out);

    VerifyOpts vo;
    auto* cv = app.add_subcommand("verify", "Run an identity suite and export residuals");
    cv->add_option("--suite", vo.suite)
        ->check(CLI::IsMember({"wronskian", "symmetry", "connection", "cut"}));
    cv->add_option("--samples", vo.samples);
    cv->add_option("--seed", vo.seed);
    vo.out.format = "csv";
    add_output_flags(cv, vo.out);

    LimitOpts lo;
    auto* cl = app.add_subcommand("limit-check",
                                  "Deviation from the short-distance flat-space form");
    cl->add_option("--space", lo.space)->check(CLI::IsMember({"hyperbolic", "spherical"}));
    cl->add_option("--d", lo.d);
    cl->add_option("--R", lo.R);
    cl->add_option("--omega", lo.omega);
    cl->add_option("--c", lo.c);
    cl->add_option("--Theta", lo.Theta);
    cl->add_flag("--sweep", lo.sweep, "Halve kR twice to show the deviation decreasing");
    add_output_flags(cl, lo.out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cg->parsed()) return run_eval_gegenbauer(go);
        if (ce->parsed()) return run_eval_green(eo);
        if (ck->parsed()) return run_kernel_check(ko);
        if (ct->parsed()) return run_time_domain(to);
        if (cv->parsed()) return run_verify(vo);
        if (cl->parsed()) return run_limit_check(lo);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
