#include "dampresp/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "dampresp/dephasing.hpp"
#include "dampresp/eoe.hpp"
#include "dampresp/errors.hpp"
#include "dampresp/oscillator.hpp"
#include "dampresp/parallel.hpp"
#include "dampresp/twolevel.hpp"

namespace dampresp::cli {

namespace {

using cplx = std::complex<double>;
using Row = std::vector<double>;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::uint64_t seed_stride = 0x9E3779B97F4A7C15ULL;

void push(Row& row, cplx z)
{
    row.push_back(z.real());
    row.push_back(z.imag());
}

double rel(cplx a, cplx b)
{
    const double scale = std::abs(b);
    return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b);
}

struct Summary {
    std::vector<std::pair<std::string, std::string>> lines;

    void add(const std::string& key, const std::string& value) { lines.emplace_back(key, value); }
    void add(const std::string& key, double value) { add(key, format_number(value)); }
    void add_count(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
    void add_flag(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
};

std::vector<Row> evaluate(const ScenarioConfig& c, const std::vector<double>& xs,
                          const std::function<Row(std::size_t, double)>& point)
{
    std::vector<Row> rows(xs.size());
    parallel_for(xs.size(), c.threads, [&](std::size_t i) { rows[i] = point(i, xs[i]); });
    return rows;
}

ScenarioOutput oscillator_compare(const ScenarioConfig& c, Summary& s)
{
    const BathSpectrum bath = c.make_bath_spectrum();
    const ResonanceMatch match = match_at_resonance(c.oscillator, bath, c.kernel);
    const auto xs = c.sweep.values();

    CsvTable t{"oscillator-compare.csv",
               {"omega", "re_chi_exact", "im_chi_exact", "re_chi_phenom", "im_chi_phenom", "rel_deviation",
                "kernel_real", "kernel_imag"},
               {}};
    t.rows = evaluate(c, xs, [&](std::size_t, double w) {
        const cplx exact = chi_exact(match.bare, bath, w, c.kernel);
        const cplx phen = chi_phenomenological(match.phenomenological, w);
        const KernelValue k = kernel(bath, w, c.kernel);
        Row r{w};
        push(r, exact);
        push(r, phen);
        r.push_back(rel(phen, exact));
        r.push_back(k.real_part);
        r.push_back(k.imag_part);
        return r;
    });

    const double wr = c.oscillator.omega0;
    double near = -1.0;
    double far = -1.0;
    double overall = 0.0;
    for (const auto& r : t.rows) {
        overall = std::max(overall, r[5]);
        if (std::abs(r[0] - wr) <= 0.02 * wr) near = std::max(near, r[5]);
        if (r[0] <= 0.3 * wr) far = std::max(far, r[5]);
    }
    s.add("omega_resonance", wr);
    s.add("omega_bare", match.bare.omega0);
    s.add("gamma_matched", match.phenomenological.damping);
    s.add("kernel_real_at_resonance", match.kernel_at_resonance.real_part);
    s.add("kernel_imag_at_resonance", match.kernel_at_resonance.imag_part);
    s.add("max_rel_deviation_within_2pct_of_resonance", near < 0.0 ? std::string("none") : format_number(near));
    s.add("max_rel_deviation_below_0.3_resonance", far < 0.0 ? std::string("none") : format_number(far));
    s.add("max_rel_deviation", overall);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    return out;
}

ScenarioOutput static_limit(const ScenarioConfig& c, Summary& s)
{
    const BathSpectrum bath = c.make_bath_spectrum();
    const auto xs = c.sweep.values();
    CsvTable t{"static-limit.csv",
               {"omega", "kernel_imag", "kernel_real", "re_chi_exact", "im_chi_exact"},
               {}};
    t.rows = evaluate(c, xs, [&](std::size_t, double w) {
        const KernelValue k = kernel(bath, w, c.kernel);
        Row r{w, k.imag_part, k.real_part};
        push(r, chi_exact(c.oscillator, bath, w, c.kernel));
        return r;
    });

    // Monotone approach to 0 as omega decreases, over the low-frequency part.
    double limit = std::numeric_limits<double>::infinity();
    if (bath.kind() == BathKind::OhmicExpCutoff) limit = 0.1 * bath.parameters().cutoff;
    std::vector<std::pair<double, double>> low;
    for (const auto& r : t.rows) {
        if (r[0] <= limit) low.emplace_back(r[0], r[1]);
    }
    std::sort(low.begin(), low.end());
    bool monotone = true;
    for (std::size_t i = 1; i < low.size(); ++i) monotone = monotone && low[i].second >= low[i - 1].second;

    const auto& last = t.rows.back();
    s.add("omega_last", last[0]);
    s.add("kernel_imag_last", last[1]);
    s.add("im_chi_exact_last", last[4]);
    s.add("low_frequency_limit", limit);
    s.add_flag("kernel_imag_monotone_below_limit", monotone);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    return out;
}

ScenarioOutput twolevel_amplitudes(const ScenarioConfig& c, Summary& s)
{
    const BathSpectrum bath = c.make_bath_spectrum();
    const auto xs = c.sweep.values();
    CsvTable t{"twolevel-amplitudes.csv",
               {"omega", "re_psi_plus", "im_psi_plus", "re_psi_minus", "im_psi_minus", "absorptive_plus",
                "absorptive_minus", "dispersive_plus", "dispersive_minus", "re_p0", "im_p0"},
               {}};
    t.rows = evaluate(c, xs, [&](std::size_t, double w) {
        const Amplitude plus = amplitude_rotating(c.twolevel, bath, w, c.kernel);
        const Amplitude minus = amplitude_counter(c.twolevel, bath, w, c.kernel);
        Row r{w};
        push(r, plus.value);
        push(r, minus.value);
        r.push_back(plus.denominator.absorptive);
        r.push_back(minus.denominator.absorptive);
        r.push_back(plus.denominator.dispersive.imag());
        r.push_back(minus.denominator.dispersive.imag());
        push(r, polarization_amplitude(c.twolevel, bath, w, c.kernel));
        return r;
    });

    const double w_sens = c.sensitivity.omega.value_or(c.twolevel.omega0);
    CsvTable sens{"damping-sensitivity.csv",
                  {"scale", "abs_psi_plus", "abs_psi_minus", "absorptive_plus", "absorptive_minus"},
                  {}};
    for (const auto& row : damping_sensitivity(c.twolevel, bath, w_sens, c.sensitivity.scales, c.kernel)) {
        sens.rows.push_back({row.scale, row.abs_plus, row.abs_minus, row.absorptive_plus, row.absorptive_minus});
    }

    double max_minus = 0.0;
    for (const auto& r : t.rows) max_minus = std::max(max_minus, std::abs(r[6]));
    for (const auto& r : sens.rows) max_minus = std::max(max_minus, std::abs(r[4]));
    s.add("sensitivity_omega", w_sens);
    s.add("max_abs_absorptive_minus", max_minus);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    out.tables.push_back(std::move(sens));
    return out;
}

ScenarioOutput twolevel_timedomain(const ScenarioConfig& c, Summary& s)
{
    const BathSpectrum bath = c.make_bath_spectrum();
    const BathSpectrum sim_bath =
        bath.is_continuum() && bath.kind() != BathKind::Null
            ? discretize(bath, c.discretization.omega_max, static_cast<std::size_t>(c.discretization.modes))
            : bath;
    double fastest_mode = 0.0;
    for (const auto& m : sim_bath.modes()) fastest_mode = std::max(fastest_mode, m.frequency);

    const auto xs = c.sweep.values();
    std::vector<double> dts(xs.size());
    std::vector<double> t_maxes(xs.size());
    CsvTable t{"twolevel-timedomain.csv",
               {"omega", "re_psi_plus_sim", "im_psi_plus_sim", "re_psi_plus_analytic", "im_psi_plus_analytic",
                "re_psi_minus_sim", "im_psi_minus_sim", "re_psi_minus_analytic", "im_psi_minus_analytic",
                "rel_error_plus", "rel_error_minus", "fit_residual"},
               {}};
    t.rows = evaluate(c, xs, [&](std::size_t i, double w) {
        TimeDomainOptions opts;
        const double fastest = std::max({w, c.twolevel.omega0, fastest_mode});
        const double slowest = std::min(w, c.twolevel.omega0);
        opts.dt = c.simulation.dt > 0.0 ? c.simulation.dt : two_pi / (48.0 * fastest);
        opts.t_max = c.simulation.t_max > 0.0 ? c.simulation.t_max
                                              : std::max(150.0, 21.0 * two_pi / slowest);
        opts.fit_window = c.simulation.fit_window;
        opts.max_residual = c.simulation.max_residual;
        dts[i] = opts.dt;
        t_maxes[i] = opts.t_max;

        const CoherenceRun run = simulate_coherence(c.twolevel, sim_bath, w, opts);
        const cplx plus = amplitude_rotating(c.twolevel, bath, w, c.kernel).value;
        const cplx minus = amplitude_counter(c.twolevel, bath, w, c.kernel).value;
        Row r{w};
        push(r, run.fit.plus);
        push(r, plus);
        push(r, run.fit.minus);
        push(r, minus);
        r.push_back(rel(run.fit.plus, plus));
        r.push_back(rel(run.fit.minus, minus));
        r.push_back(run.fit.residual);
        return r;
    });

    double e_plus = 0.0;
    double e_minus = 0.0;
    double residual = 0.0;
    for (const auto& r : t.rows) {
        e_plus = std::max(e_plus, r[9]);
        e_minus = std::max(e_minus, r[10]);
        residual = std::max(residual, r[11]);
    }
    s.add_count("simulation_modes", sim_bath.modes().size());
    s.add("simulation_omega_max", fastest_mode);
    s.add("dt_min", *std::min_element(dts.begin(), dts.end()));
    s.add("t_max_max", *std::max_element(t_maxes.begin(), t_maxes.end()));
    s.add("max_rel_error_plus", e_plus);
    s.add("max_rel_error_minus", e_minus);
    s.add("max_fit_residual", residual);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    return out;
}

ScenarioOutput dephasing_regimes(const ScenarioConfig& c, Summary& s)
{
    const auto xs = c.sweep.values();
    const bool with_mc = c.monte_carlo.trajectories > 0;
    CsvTable t{"dephasing-regimes.csv",
               {c.sweep.parameter, "re_kubo", "im_kubo", "re_fast_modulation", "im_fast_modulation",
                "re_static_gaussian", "im_static_gaussian"},
               {}};
    if (with_mc) {
        for (const char* h : {"re_monte_carlo", "im_monte_carlo", "se_re_monte_carlo", "se_im_monte_carlo",
                              "z_monte_carlo"}) {
            t.header.emplace_back(h);
        }
    }

    double worst_z = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ScenarioConfig point = c;
        point.set_parameter(c.sweep.parameter, xs[i]);
        const DephasingParams& p = point.dephasing;
        Row r{xs[i]};
        const cplx kubo = kubo_coherence(p, c.kubo);
        push(r, kubo);
        push(r, fast_modulation_coherence(p));
        // Real bracket times G, the static limit of <sigma>/(iG) folded back
        // into the coherence.
        push(r, cplx(0.0, 1.0) * p.drive * static_gaussian_bracket(p.delta, p.f0));
        if (with_mc) {
            MonteCarloOptions mo;
            mo.trajectories = static_cast<std::size_t>(c.monte_carlo.trajectories);
            mo.seed = c.seed + seed_stride * static_cast<std::uint64_t>(i + 1);
            mo.t_max = c.monte_carlo.t_max;
            mo.dt = c.monte_carlo.dt;
            mo.threads = c.threads;
            const EnsembleEstimate est = mc_coherence(p, mo);
            push(r, est.mean);
            r.push_back(est.se_real);
            r.push_back(est.se_imag);
            const double z = std::max(est.se_real > 0.0 ? std::abs(est.mean.real() - kubo.real()) / est.se_real : 0.0,
                                      est.se_imag > 0.0 ? std::abs(est.mean.imag() - kubo.imag()) / est.se_imag : 0.0);
            r.push_back(z);
            worst_z = std::max(worst_z, z);
        }
        t.rows.push_back(std::move(r));
    }

    s.add("sweep_parameter", c.sweep.parameter);
    s.add_count("monte_carlo_trajectories", with_mc ? static_cast<std::size_t>(c.monte_carlo.trajectories) : 0);
    if (with_mc) s.add("max_monte_carlo_z", worst_z);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    return out;
}

ScenarioOutput eoe_verdict(const ScenarioConfig& c, Summary& s)
{
    const BathSpectrum bath = c.make_bath_spectrum();
    const auto xs = c.sweep.values();
    CsvTable t{"eoe-verdict.csv",
               {c.sweep.parameter, "re_x_phenomenological", "im_x_phenomenological", "re_x_frequency_dependent",
                "im_x_frequency_dependent", "re_x_collisional", "im_x_collisional", "suppression_exponent",
                "collisional_ratio", "radiative_vanishes", "collisional_negligible"},
               {}};
    t.rows = evaluate(c, xs, [&](std::size_t, double x) {
        ScenarioConfig point = c;
        point.set_parameter(c.sweep.parameter, x);
        const EoeReport rep = eoe_report(point.eoe, bath, point.eoe.f_ng);
        Row r{x};
        push(r, rep.phenomenological);
        push(r, rep.frequency_dependent);
        push(r, rep.collisional);
        r.push_back(rep.suppression_exponent);
        const double phen = std::abs(rep.phenomenological);
        r.push_back(phen > 0.0 ? std::abs(rep.collisional) / phen : 0.0);
        r.push_back(rep.radiative_vanishes ? 1.0 : 0.0);
        r.push_back(rep.collisional_negligible ? 1.0 : 0.0);
        return r;
    });

    bool all_radiative = true;
    bool all_negligible = true;
    for (const auto& r : t.rows) {
        all_radiative = all_radiative && r[9] == 1.0;
        all_negligible = all_negligible && r[10] == 1.0;
    }
    s.add("bath_density_at_zero", bath.density(0.0));
    s.add_flag("radiative_vanishes_everywhere", all_radiative);
    s.add_flag("collisional_negligible_everywhere", all_negligible);

    ScenarioOutput out;
    out.tables.push_back(std::move(t));
    return out;
}

}  // namespace

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_csv(const CsvTable& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_summary(const ScenarioOutput& output)
{
    std::string out;
    for (const auto& [k, v] : output.summary) out += k + " = " + v + "\n";
    return out;
}

ScenarioOutput compute_scenario(const ScenarioConfig& c)
{
    Summary s;
    s.add("scenario", c.scenario);
    s.add("tool_version", tool_version);
    s.add("units", "hbar = 1; all frequencies and rates share the unit of the config values");
    s.add("seed", std::to_string(c.seed));
    s.add_count("sweep_points", c.sweep.values().size());

    ScenarioOutput out;
    if (c.scenario == "oscillator-compare") {
        out = oscillator_compare(c, s);
    } else if (c.scenario == "static-limit") {
        out = static_limit(c, s);
    } else if (c.scenario == "twolevel-amplitudes") {
        out = twolevel_amplitudes(c, s);
    } else if (c.scenario == "twolevel-timedomain") {
        out = twolevel_timedomain(c, s);
    } else if (c.scenario == "dephasing-regimes") {
        out = dephasing_regimes(c, s);
    } else if (c.scenario == "eoe-verdict") {
        out = eoe_verdict(c, s);
    } else {
        throw InvalidArgument("compute_scenario", "unknown scenario '" + c.scenario + "'");
    }
    out.summary = std::move(s.lines);
    return out;
}

}  // namespace dampresp::cli
