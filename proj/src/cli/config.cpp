#include "dampresp/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dampresp/errors.hpp"

namespace dampresp::cli {

namespace {

using Node = YAML::Node;

const std::vector<std::string> common_keys = {"scenario", "seed", "output_dir", "threads"};
const std::vector<std::string> common_blocks = {"sweep", "tolerances"};

std::optional<BathKind> parse_bath_kind(const std::string& s)
{
    if (s == "null") return BathKind::Null;
    if (s == "ohmic") return BathKind::OhmicExpCutoff;
    if (s == "lorentzian") return BathKind::LorentzianPeak;
    if (s == "discrete") return BathKind::Discrete;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::vector<Violation>& out) : out_(out) {}

    void fail(const std::string& path, const Node& node, const std::string& msg)
    {
        Violation v{path, 0, 0, msg};
        if (node.IsDefined() && node.Mark().line >= 0) {
            v.line = node.Mark().line + 1;
            v.column = node.Mark().column + 1;
        }
        out_.push_back(std::move(v));
    }

    void fail_at(const std::string& path, const std::string& msg)
    {
        Violation v{path, 0, 0, msg};
        if (auto it = marks_.find(path); it != marks_.end()) {
            v.line = it->second.first;
            v.column = it->second.second;
        }
        out_.push_back(std::move(v));
    }

    void remember(const std::string& path, const Node& node)
    {
        if (node.Mark().line >= 0) marks_[path] = {node.Mark().line + 1, node.Mark().column + 1};
    }

    bool number(const std::string& path, const Node& n, double& dst)
    {
        remember(path, n);
        try {
            if (!n.IsScalar()) throw YAML::Exception(n.Mark(), "not a scalar");
            dst = n.as<double>();
            if (!std::isfinite(dst)) {
                fail(path, n, "expected a finite number");
                return false;
            }
            return true;
        } catch (const YAML::Exception&) {
            fail(path, n, "expected a number");
            return false;
        }
    }

    bool integer(const std::string& path, const Node& n, long long& dst)
    {
        double v = 0.0;
        if (!number(path, n, v)) return false;
        if (v != std::floor(v) || std::abs(v) > 9e15) {
            fail(path, n, "expected an integer");
            return false;
        }
        dst = static_cast<long long>(v);
        return true;
    }

    bool text(const std::string& path, const Node& n, std::string& dst)
    {
        remember(path, n);
        if (!n.IsScalar()) {
            fail(path, n, "expected a string");
            return false;
        }
        dst = n.as<std::string>();
        return true;
    }

    bool number_list(const std::string& path, const Node& n, std::vector<double>& dst)
    {
        remember(path, n);
        if (!n.IsSequence()) {
            fail(path, n, "expected a list of numbers");
            return false;
        }
        dst.clear();
        bool ok = true;
        for (std::size_t i = 0; i < n.size(); ++i) {
            double v = 0.0;
            if (number(path + "[" + std::to_string(i) + "]", n[i], v)) {
                dst.push_back(v);
            } else {
                ok = false;
            }
        }
        return ok;
    }

private:
    std::vector<Violation>& out_;
    std::map<std::string, std::pair<int, int>> marks_;
};

using Handler = std::function<void(Parser&, const std::string&, const Node&, ScenarioConfig&)>;

Handler num(std::function<void(ScenarioConfig&, double)> set)
{
    return [set](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
        double v = 0.0;
        if (p.number(path, n, v)) set(c, v);
    };
}

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> table = {
        {"scenario", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.text(path, n, c.scenario);
         }},
        {"seed", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             long long v = 0;
             if (!p.integer(path, n, v)) return;
             if (v < 0) {
                 p.fail(path, n, "seed must be >= 0");
                 return;
             }
             c.seed = static_cast<std::uint64_t>(v);
         }},
        {"output_dir", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.text(path, n, c.output_dir);
         }},
        {"threads", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             long long v = 0;
             if (!p.integer(path, n, v)) return;
             if (v < 1) {
                 p.fail(path, n, "threads must be >= 1");
                 return;
             }
             c.threads = static_cast<unsigned>(v);
         }},

        {"bath.kind", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             std::string s;
             if (!p.text(path, n, s)) return;
             if (auto k = parse_bath_kind(s)) {
                 c.bath_kind = *k;
             } else {
                 p.fail(path, n, "unknown bath kind '" + s + "' (null, ohmic, lorentzian, discrete)");
             }
         }},
        {"bath.eta", num([](ScenarioConfig& c, double v) { c.bath.eta = v; })},
        {"bath.cutoff", num([](ScenarioConfig& c, double v) { c.bath.cutoff = v; })},
        {"bath.center", num([](ScenarioConfig& c, double v) { c.bath.center = v; })},
        {"bath.width", num([](ScenarioConfig& c, double v) { c.bath.width = v; })},
        {"bath.strength", num([](ScenarioConfig& c, double v) { c.bath.strength = v; })},
        {"bath.modes", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.remember(path, n);
             if (!n.IsSequence()) {
                 p.fail(path, n, "expected a list of [frequency, weight] pairs");
                 return;
             }
             c.bath.modes.clear();
             for (std::size_t i = 0; i < n.size(); ++i) {
                 const std::string item = path + "[" + std::to_string(i) + "]";
                 std::vector<double> pair;
                 if (!p.number_list(item, n[i], pair)) continue;
                 if (pair.size() != 2) {
                     p.fail(item, n[i], "expected [frequency, weight]");
                     continue;
                 }
                 c.bath.modes.push_back({pair[0], pair[1]});
             }
         }},

        {"oscillator.mass", num([](ScenarioConfig& c, double v) { c.oscillator.mass = v; })},
        {"oscillator.charge", num([](ScenarioConfig& c, double v) { c.oscillator.charge = v; })},
        {"oscillator.omega0", num([](ScenarioConfig& c, double v) { c.oscillator.omega0 = v; })},
        {"oscillator.damping", num([](ScenarioConfig& c, double v) { c.oscillator.damping = v; })},

        {"drive.omega", num([](ScenarioConfig& c, double v) { c.drive_omega = v; })},

        {"twolevel.omega0", num([](ScenarioConfig& c, double v) { c.twolevel.omega0 = v; })},
        {"twolevel.drive_re", num([](ScenarioConfig& c, double v) { c.twolevel.drive.real(v); })},
        {"twolevel.drive_im", num([](ScenarioConfig& c, double v) { c.twolevel.drive.imag(v); })},
        {"twolevel.dipole_re", num([](ScenarioConfig& c, double v) { c.twolevel.dipole.real(v); })},
        {"twolevel.dipole_im", num([](ScenarioConfig& c, double v) { c.twolevel.dipole.imag(v); })},

        {"dephasing.f0", num([](ScenarioConfig& c, double v) { c.dephasing.f0 = v; })},
        {"dephasing.gamma", num([](ScenarioConfig& c, double v) { c.dephasing.gamma = v; })},
        {"dephasing.delta", num([](ScenarioConfig& c, double v) { c.dephasing.delta = v; })},
        {"dephasing.drive_re", num([](ScenarioConfig& c, double v) { c.dephasing.drive.real(v); })},
        {"dephasing.drive_im", num([](ScenarioConfig& c, double v) { c.dephasing.drive.imag(v); })},

        {"eoe.omega_ng", num([](ScenarioConfig& c, double v) { c.eoe.omega_ng = v; })},
        {"eoe.omega_mg", num([](ScenarioConfig& c, double v) { c.eoe.omega_mg = v; })},
        {"eoe.omega", num([](ScenarioConfig& c, double v) { c.eoe.omega = v; })},
        {"eoe.gamma_ng", num([](ScenarioConfig& c, double v) { c.eoe.gamma_ng = v; })},
        {"eoe.gamma_mg", num([](ScenarioConfig& c, double v) { c.eoe.gamma_mg = v; })},
        {"eoe.f_ng", num([](ScenarioConfig& c, double v) { c.eoe.f_ng = v; })},

        {"sweep.parameter", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.text(path, n, c.sweep.parameter);
         }},
        {"sweep.start", num([](ScenarioConfig& c, double v) { c.sweep.start = v; })},
        {"sweep.stop", num([](ScenarioConfig& c, double v) { c.sweep.stop = v; })},
        {"sweep.count", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.integer(path, n, c.sweep.count);
         }},
        {"sweep.spacing", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             std::string s;
             if (!p.text(path, n, s)) return;
             if (s == "linear") {
                 c.sweep.logarithmic = false;
             } else if (s == "log") {
                 c.sweep.logarithmic = true;
             } else {
                 p.fail(path, n, "spacing must be 'linear' or 'log'");
             }
         }},

        {"discretization.omega_max", num([](ScenarioConfig& c, double v) { c.discretization.omega_max = v; })},
        {"discretization.modes", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.integer(path, n, c.discretization.modes);
         }},

        {"simulation.t_max", num([](ScenarioConfig& c, double v) { c.simulation.t_max = v; })},
        {"simulation.dt", num([](ScenarioConfig& c, double v) { c.simulation.dt = v; })},
        {"simulation.fit_window", num([](ScenarioConfig& c, double v) { c.simulation.fit_window = v; })},
        {"simulation.max_residual", num([](ScenarioConfig& c, double v) { c.simulation.max_residual = v; })},

        {"monte_carlo.trajectories", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.integer(path, n, c.monte_carlo.trajectories);
         }},
        {"monte_carlo.t_max", num([](ScenarioConfig& c, double v) { c.monte_carlo.t_max = v; })},
        {"monte_carlo.dt", num([](ScenarioConfig& c, double v) { c.monte_carlo.dt = v; })},

        {"sensitivity.scales", [](Parser& p, const std::string& path, const Node& n, ScenarioConfig& c) {
             p.number_list(path, n, c.sensitivity.scales);
         }},
        {"sensitivity.omega", num([](ScenarioConfig& c, double v) { c.sensitivity.omega = v; })},

        {"tolerances.kernel_rel_tol", num([](ScenarioConfig& c, double v) { c.kernel.rel_tol = v; })},
        {"tolerances.pole_tolerance", num([](ScenarioConfig& c, double v) { c.kernel.pole_tolerance = v; })},
        {"tolerances.kubo_rel_tol", num([](ScenarioConfig& c, double v) { c.kubo.rel_tol = v; })},
        {"tolerances.envelope_floor", num([](ScenarioConfig& c, double v) { c.kubo.envelope_floor = v; })},
    };
    return table;
}

std::set<std::string> known_blocks()
{
    std::set<std::string> blocks;
    for (const auto& [path, h] : handlers()) {
        if (auto dot = path.find('.'); dot != std::string::npos) blocks.insert(path.substr(0, dot));
    }
    return blocks;
}

// Invariants of the blocks a scenario reads. `prefix` lets sweep
// validation report under the sweep block.
void check_blocks(const ScenarioConfig& c, const ScenarioInfo& info,
                  const std::function<void(bool, const std::string&, const std::string&)>& check)
{
    auto uses = [&](const std::string& block) {
        for (const auto& b : info.blocks) {
            if (b == block) return true;
        }
        return false;
    };

    if (uses("bath")) {
        const auto& b = c.bath;
        switch (c.bath_kind) {
            case BathKind::OhmicExpCutoff:
                check(b.eta >= 0.0, "bath.eta", "must be >= 0");
                check(b.cutoff > 0.0, "bath.cutoff", "must be > 0");
                break;
            case BathKind::LorentzianPeak:
                check(b.center > 0.0, "bath.center", "must be > 0");
                check(b.width > 0.0, "bath.width", "must be > 0");
                check(b.strength >= 0.0, "bath.strength", "must be >= 0");
                break;
            case BathKind::Discrete:
                for (std::size_t i = 0; i < b.modes.size(); ++i) {
                    const std::string path = "bath.modes[" + std::to_string(i) + "]";
                    check(b.modes[i].frequency > 0.0, path, "mode frequency must be > 0");
                    check(b.modes[i].weight >= 0.0, path, "mode weight must be >= 0");
                }
                break;
            case BathKind::Null: break;
        }
        const bool pointwise_kernel = info.name == "oscillator-compare" || info.name == "static-limit" ||
                                      info.name == "eoe-verdict";
        check(!pointwise_kernel || c.bath_kind != BathKind::Discrete, "bath.kind",
              "scenario '" + info.name + "' evaluates K''(w) pointwise and needs a continuum bath");
    }
    if (uses("oscillator")) {
        check(c.oscillator.mass > 0.0, "oscillator.mass", "must be > 0");
        check(c.oscillator.omega0 > 0.0, "oscillator.omega0", "must be > 0");
        check(c.oscillator.damping >= 0.0, "oscillator.damping", "must be >= 0");
    }
    if (uses("drive")) {
        check(c.drive_omega >= 0.0, "drive.omega", "must be >= 0");
        check(info.name != "twolevel-timedomain" || c.drive_omega > 0.0, "drive.omega",
              "must be > 0 for the two-tone fit");
    }
    if (uses("twolevel")) check(c.twolevel.omega0 > 0.0, "twolevel.omega0", "must be > 0");
    if (uses("dephasing")) {
        check(c.dephasing.f0 >= 0.0, "dephasing.f0", "must be >= 0");
        check(c.dephasing.f0 != 0.0, "dephasing.f0", "must be > 0 for the static-Gaussian column");
        check(c.dephasing.gamma > 0.0, "dephasing.gamma", "must be > 0");
        check(c.dephasing.f0 > 0.0 || c.dephasing.delta != 0.0, "dephasing.delta",
              "f0 = 0 and delta = 0 has no steady state");
    }
    if (uses("eoe")) {
        check(c.eoe.omega_ng > 0.0, "eoe.omega_ng", "must be > 0");
        check(c.eoe.omega > 0.0, "eoe.omega", "must be > 0");
        check(c.eoe.gamma_ng >= 0.0, "eoe.gamma_ng", "must be >= 0");
        check(c.eoe.gamma_mg >= 0.0, "eoe.gamma_mg", "must be >= 0");
        check(c.eoe.f_ng >= 0.0, "eoe.f_ng", "must be >= 0");
    }
    if (uses("discretization")) {
        check(c.discretization.omega_max > 0.0, "discretization.omega_max", "must be > 0");
        check(c.discretization.modes >= 1, "discretization.modes", "must be >= 1");
    }
    if (uses("simulation")) {
        check(c.simulation.t_max >= 0.0, "simulation.t_max", "must be >= 0 (0 selects automatically)");
        check(c.simulation.dt >= 0.0, "simulation.dt", "must be >= 0 (0 selects automatically)");
        check(c.simulation.fit_window > 0.0 && c.simulation.fit_window <= 1.0, "simulation.fit_window",
              "must be in (0, 1]");
        check(c.simulation.max_residual > 0.0, "simulation.max_residual", "must be > 0");
    }
    if (uses("monte_carlo")) {
        check(c.monte_carlo.trajectories == 0 || c.monte_carlo.trajectories >= 2, "monte_carlo.trajectories",
              "must be 0 (disabled) or >= 2");
        check(c.monte_carlo.t_max >= 0.0, "monte_carlo.t_max", "must be >= 0 (0 selects automatically)");
        check(c.monte_carlo.dt >= 0.0, "monte_carlo.dt", "must be >= 0 (0 selects automatically)");
    }
    if (uses("sensitivity")) {
        check(!c.sensitivity.scales.empty(), "sensitivity.scales", "must not be empty");
        for (double s : c.sensitivity.scales) check(s >= 0.0, "sensitivity.scales", "scales must be >= 0");
        if (c.sensitivity.omega) check(*c.sensitivity.omega >= 0.0, "sensitivity.omega", "must be >= 0");
    }
    check(c.kernel.rel_tol > 0.0, "tolerances.kernel_rel_tol", "must be > 0");
    check(c.kernel.pole_tolerance > 0.0, "tolerances.pole_tolerance", "must be > 0");
    check(c.kubo.rel_tol > 0.0, "tolerances.kubo_rel_tol", "must be > 0");
    check(c.kubo.envelope_floor > 0.0 && c.kubo.envelope_floor < 1.0, "tolerances.envelope_floor",
          "must be in (0, 1)");
}

}  // namespace

const std::vector<ScenarioInfo>& registered_scenarios()
{
    static const std::vector<ScenarioInfo> list = {
        {"oscillator-compare",
         "exact bath response vs the resonance-matched constant-damping oscillator over frequency",
         {"bath", "oscillator"},
         {"drive.omega"}},
        {"static-limit",
         "kernel K(w) and exact susceptibility swept down to the static field",
         {"bath", "oscillator"},
         {"drive.omega"}},
        {"twolevel-amplitudes",
         "rotating and counter-rotating coherence amplitudes plus coupling-scale sensitivity",
         {"bath", "twolevel", "sensitivity"},
         {"drive.omega"}},
        {"twolevel-timedomain",
         "time-domain coherence against the long-time analytic amplitudes",
         {"bath", "twolevel", "discretization", "simulation"},
         {"drive.omega"}},
        {"dephasing-regimes",
         "Kubo, fast-modulation, static-Gaussian and Monte Carlo coherences",
         {"dephasing", "monte_carlo"},
         {"dephasing.f0", "dephasing.gamma", "dephasing.delta"}},
        {"eoe-verdict",
         "electro-optic contribution under phenomenological, radiative and collisional damping",
         {"bath", "eoe"},
         {"eoe.f_ng", "eoe.omega_ng", "eoe.gamma_ng"}},
    };
    return list;
}

const ScenarioInfo* find_scenario(const std::string& name)
{
    for (const auto& s : registered_scenarios()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<double> SweepSpec::values() const
{
    std::vector<double> out;
    if (count < 1) return out;
    const auto n = static_cast<std::size_t>(count);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (n == 1) {
            out.push_back(start);
            break;
        }
        const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
        if (i == 0) {
            out.push_back(start);
        } else if (i + 1 == n) {
            out.push_back(stop);
        } else if (logarithmic) {
            out.push_back(std::exp(std::log(start) + frac * (std::log(stop) - std::log(start))));
        } else {
            out.push_back(start + frac * (stop - start));
        }
    }
    return out;
}

BathSpectrum ScenarioConfig::make_bath_spectrum() const { return make_bath(bath_kind, bath); }

bool ScenarioConfig::set_parameter(const std::string& path, double v)
{
    if (path == "drive.omega") drive_omega = v;
    else if (path == "dephasing.f0") dephasing.f0 = v;
    else if (path == "dephasing.gamma") dephasing.gamma = v;
    else if (path == "dephasing.delta") dephasing.delta = v;
    else if (path == "eoe.f_ng") eoe.f_ng = v;
    else if (path == "eoe.omega_ng") eoe.omega_ng = v;
    else if (path == "eoe.gamma_ng") eoe.gamma_ng = v;
    else return false;
    return true;
}

LoadResult parse_config(const std::string& text)
{
    LoadResult result;
    Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        result.violations.push_back({"", e.mark.line + 1, e.mark.column + 1, "parse error: " + e.msg});
        return result;
    }
    if (!root.IsMap()) {
        result.violations.push_back({"", 1, 1, "top level must be a mapping"});
        return result;
    }

    Parser parser(result.violations);
    ScenarioConfig c;
    const auto blocks = known_blocks();
    std::set<std::string> present_blocks;
    bool has_sweep = false;

    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        const Node& value = kv.second;
        if (blocks.count(key)) {
            if (!value.IsMap()) {
                parser.fail(key, value, "expected a mapping");
                continue;
            }
            present_blocks.insert(key);
            if (key == "sweep") has_sweep = true;
            for (const auto& inner : value) {
                const std::string path = key + "." + inner.first.as<std::string>();
                auto it = handlers().find(path);
                if (it == handlers().end()) {
                    parser.fail(path, inner.first, "unknown parameter");
                    continue;
                }
                it->second(parser, path, inner.second, c);
            }
            continue;
        }
        auto it = handlers().find(key);
        if (it == handlers().end()) {
            parser.fail(key, kv.first, "unknown key");
            continue;
        }
        it->second(parser, key, value, c);
    }

    const ScenarioInfo* info = find_scenario(c.scenario);
    if (!info) {
        std::string names;
        for (const auto& s : registered_scenarios()) names += (names.empty() ? "" : ", ") + s.name;
        parser.fail_at("scenario", c.scenario.empty() ? "missing scenario name; registered: " + names
                                                      : "unknown scenario '" + c.scenario +
                                                            "'; registered: " + names);
        return result;
    }

    std::vector<std::string> allowed = info->blocks;
    allowed.insert(allowed.end(), common_blocks.begin(), common_blocks.end());
    if (std::find(info->sweep_parameters.begin(), info->sweep_parameters.end(), "drive.omega") !=
        info->sweep_parameters.end()) {
        allowed.push_back("drive");
    }
    for (const auto& b : present_blocks) {
        if (std::find(allowed.begin(), allowed.end(), b) == allowed.end()) {
            parser.fail(b, root[b], "block not used by scenario '" + c.scenario + "'");
        }
    }

    ScenarioInfo effective = *info;
    effective.blocks = allowed;
    auto check = [&](bool ok, const std::string& path, const std::string& msg) {
        if (!ok) parser.fail_at(path, msg);
    };
    check_blocks(c, effective, check);

    if (!has_sweep) {
        parser.fail_at("sweep", "missing sweep block");
    } else {
        const auto& sw = c.sweep;
        const auto& params = info->sweep_parameters;
        if (std::find(params.begin(), params.end(), sw.parameter) == params.end()) {
            std::string names;
            for (const auto& p : params) names += (names.empty() ? "" : ", ") + p;
            parser.fail_at("sweep.parameter", "'" + sw.parameter + "' cannot be swept in scenario '" +
                                                  c.scenario + "'; choose one of: " + names);
        } else if (sw.count < 1) {
            parser.fail_at("sweep.count", "sweep count must be >= 1");
        } else if (sw.logarithmic && !(sw.start > 0.0 && sw.stop > 0.0)) {
            parser.fail_at("sweep.spacing", "log spacing needs start > 0 and stop > 0");
        } else {
            // Every swept value must itself satisfy the parameter's invariants.
            for (double v : sw.values()) {
                ScenarioConfig probe = c;
                probe.set_parameter(sw.parameter, v);
                bool bad = false;
                std::string why;
                check_blocks(probe, effective, [&](bool ok, const std::string& path, const std::string& msg) {
                    if (!ok && !bad && path == sw.parameter) {
                        bad = true;
                        why = msg;
                    }
                });
                if (bad) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "swept value " << v << " of " << sw.parameter << " is invalid: " << why;
                    parser.fail_at("sweep", os.str());
                    break;
                }
            }
        }
    }

    if (result.violations.empty()) result.config = std::move(c);
    return result;
}

LoadResult load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        LoadResult r;
        r.violations.push_back({"", 0, 0, "cannot read configuration file"});
        return r;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_yaml(const ScenarioConfig& c)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "scenario" << YAML::Value << c.scenario;
    out << YAML::Key << "seed" << YAML::Value << c.seed;
    out << YAML::Key << "output_dir" << YAML::Value << c.output_dir;
    out << YAML::Key << "threads" << YAML::Value << c.threads;

    const ScenarioInfo* info = find_scenario(c.scenario);
    auto uses = [&](const std::string& b) {
        return info && std::find(info->blocks.begin(), info->blocks.end(), b) != info->blocks.end();
    };

    if (uses("bath")) {
        out << YAML::Key << "bath" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "kind" << YAML::Value << to_string(c.bath_kind);
        switch (c.bath_kind) {
            case BathKind::OhmicExpCutoff:
                out << YAML::Key << "eta" << YAML::Value << c.bath.eta;
                out << YAML::Key << "cutoff" << YAML::Value << c.bath.cutoff;
                break;
            case BathKind::LorentzianPeak:
                out << YAML::Key << "center" << YAML::Value << c.bath.center;
                out << YAML::Key << "width" << YAML::Value << c.bath.width;
                out << YAML::Key << "strength" << YAML::Value << c.bath.strength;
                break;
            case BathKind::Discrete:
                out << YAML::Key << "modes" << YAML::Value << YAML::BeginSeq;
                for (const auto& m : c.bath.modes) {
                    out << YAML::Flow << YAML::BeginSeq << m.frequency << m.weight << YAML::EndSeq;
                }
                out << YAML::EndSeq;
                break;
            case BathKind::Null: break;
        }
        out << YAML::EndMap;
    }
    if (uses("oscillator")) {
        out << YAML::Key << "oscillator" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "mass" << YAML::Value << c.oscillator.mass;
        out << YAML::Key << "charge" << YAML::Value << c.oscillator.charge;
        out << YAML::Key << "omega0" << YAML::Value << c.oscillator.omega0;
        out << YAML::Key << "damping" << YAML::Value << c.oscillator.damping;
        out << YAML::EndMap;
    }
    if (info && std::find(info->sweep_parameters.begin(), info->sweep_parameters.end(), "drive.omega") !=
                    info->sweep_parameters.end()) {
        out << YAML::Key << "drive" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "omega" << YAML::Value << c.drive_omega;
        out << YAML::EndMap;
    }
    if (uses("twolevel")) {
        out << YAML::Key << "twolevel" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "omega0" << YAML::Value << c.twolevel.omega0;
        out << YAML::Key << "drive_re" << YAML::Value << c.twolevel.drive.real();
        out << YAML::Key << "drive_im" << YAML::Value << c.twolevel.drive.imag();
        out << YAML::Key << "dipole_re" << YAML::Value << c.twolevel.dipole.real();
        out << YAML::Key << "dipole_im" << YAML::Value << c.twolevel.dipole.imag();
        out << YAML::EndMap;
    }
    if (uses("dephasing")) {
        out << YAML::Key << "dephasing" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "f0" << YAML::Value << c.dephasing.f0;
        out << YAML::Key << "gamma" << YAML::Value << c.dephasing.gamma;
        out << YAML::Key << "delta" << YAML::Value << c.dephasing.delta;
        out << YAML::Key << "drive_re" << YAML::Value << c.dephasing.drive.real();
        out << YAML::Key << "drive_im" << YAML::Value << c.dephasing.drive.imag();
        out << YAML::EndMap;
    }
    if (uses("eoe")) {
        out << YAML::Key << "eoe" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "omega_ng" << YAML::Value << c.eoe.omega_ng;
        out << YAML::Key << "omega_mg" << YAML::Value << c.eoe.omega_mg;
        out << YAML::Key << "omega" << YAML::Value << c.eoe.omega;
        out << YAML::Key << "gamma_ng" << YAML::Value << c.eoe.gamma_ng;
        out << YAML::Key << "gamma_mg" << YAML::Value << c.eoe.gamma_mg;
        out << YAML::Key << "f_ng" << YAML::Value << c.eoe.f_ng;
        out << YAML::EndMap;
    }
    if (uses("discretization")) {
        out << YAML::Key << "discretization" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "omega_max" << YAML::Value << c.discretization.omega_max;
        out << YAML::Key << "modes" << YAML::Value << c.discretization.modes;
        out << YAML::EndMap;
    }
    if (uses("simulation")) {
        out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "t_max" << YAML::Value << c.simulation.t_max;
        out << YAML::Key << "dt" << YAML::Value << c.simulation.dt;
        out << YAML::Key << "fit_window" << YAML::Value << c.simulation.fit_window;
        out << YAML::Key << "max_residual" << YAML::Value << c.simulation.max_residual;
        out << YAML::EndMap;
    }
    if (uses("monte_carlo")) {
        out << YAML::Key << "monte_carlo" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "trajectories" << YAML::Value << c.monte_carlo.trajectories;
        out << YAML::Key << "t_max" << YAML::Value << c.monte_carlo.t_max;
        out << YAML::Key << "dt" << YAML::Value << c.monte_carlo.dt;
        out << YAML::EndMap;
    }
    if (uses("sensitivity")) {
        out << YAML::Key << "sensitivity" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "scales" << YAML::Value << YAML::Flow << c.sensitivity.scales;
        if (c.sensitivity.omega) out << YAML::Key << "omega" << YAML::Value << *c.sensitivity.omega;
        out << YAML::EndMap;
    }
    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "parameter" << YAML::Value << c.sweep.parameter;
    out << YAML::Key << "start" << YAML::Value << c.sweep.start;
    out << YAML::Key << "stop" << YAML::Value << c.sweep.stop;
    out << YAML::Key << "count" << YAML::Value << c.sweep.count;
    out << YAML::Key << "spacing" << YAML::Value << (c.sweep.logarithmic ? "log" : "linear");
    out << YAML::EndMap;

    out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "kernel_rel_tol" << YAML::Value << c.kernel.rel_tol;
    out << YAML::Key << "pole_tolerance" << YAML::Value << c.kernel.pole_tolerance;
    out << YAML::Key << "kubo_rel_tol" << YAML::Value << c.kubo.rel_tol;
    out << YAML::Key << "envelope_floor" << YAML::Value << c.kubo.envelope_floor;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string format_violation(const std::string& file, const Violation& v)
{
    std::ostringstream os;
    os << file;
    if (v.line > 0) os << ":" << v.line << ":" << v.column;
    os << ": ";
    if (!v.path.empty()) os << v.path << ": ";
    os << v.message;
    return os.str();
}

}  // namespace dampresp::cli
