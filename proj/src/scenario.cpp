#include "gcs/scenario.hpp"


#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gcs/observables.hpp"
#include "gcs/version.hpp"

namespace gcs {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

double need_number(const Json& j, const std::string& path) {
    if (!j.is_number()) field_error(path, "must be a real number");
    return j.get<double>();
}

int need_int(const Json& j, const std::string& path, int lo) {
    if (!j.is_number_integer()) field_error(path, "must be an integer");
    int v = j.get<int>();
    if (v < lo) field_error(path, "must be >= " + std::to_string(lo));
    return v;
}

Complex parse_complex(const Json& j, const std::string& path) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex{j[0].get<double>(), j[1].get<double>()};
    field_error(path, "must be a number or a [re, im] pair");
}

Channel parse_channel(const Json& j, const std::string& path, bool real_valued) {
    if (j.is_number() || (j.is_array() && !real_valued)) {
        // shorthand: a bare value is a constant channel
        Complex v = parse_complex(j, path);
        return Channel::constant(v);
    }
    if (!j.is_object()) field_error(path, "must be a number or a channel object");
    std::string kind = j.value("kind", "");
    auto member = [&](const char* name) -> const Json& {
        if (!j.contains(name)) field_error(path + "." + name, "is required");
        return j.at(name);
    };
    if (kind == "constant") {
        Complex v = parse_complex(member("value"), path + ".value");
        if (real_valued && v.imag() != 0.0) field_error(path + ".value", "must be real");
        return Channel::constant(v);
    }
    if (kind == "piecewise") {
        const Json& jt = member("times");
        const Json& jv = member("values");
        if (!jt.is_array() || !jv.is_array() || jt.size() != jv.size() || jt.empty())
            field_error(path, "piecewise channel needs matching nonempty times/values arrays");
        std::vector<double> times;
        std::vector<Complex> values;
        for (size_t i = 0; i < jt.size(); ++i) {
            times.push_back(need_number(jt[i], path + ".times[" + std::to_string(i) + "]"));
            Complex v = parse_complex(jv[i], path + ".values[" + std::to_string(i) + "]");
            if (real_valued && v.imag() != 0.0)
                field_error(path + ".values[" + std::to_string(i) + "]", "must be real");
            values.push_back(v);
        }
        return Channel::piecewise(std::move(times), std::move(values));
    }
    if (kind == "sinusoid") {
        double off = need_number(member("offset"), path + ".offset");
        double amp = need_number(member("amplitude"), path + ".amplitude");
        double freq = need_number(member("frequency"), path + ".frequency");
        double phase = j.contains("phase") ? need_number(j["phase"], path + ".phase") : 0.0;
        return Channel::sinusoid(off, amp, freq, phase);
    }
    field_error(path + ".kind", "must be one of constant | piecewise | sinusoid");
}

CoefficientTrack parse_track(const Json& j, const std::string& path) {
    if (!j.is_object()) field_error(path, "must be an object");
    CoefficientTrack t;
    if (!j.contains("T")) field_error(path + ".T", "is required");
    t.T = need_number(j["T"], path + ".T");
    if (!(t.T > 0.0)) field_error(path + ".T", "must be > 0");
    if (j.contains("omega")) t.omega = parse_channel(j["omega"], path + ".omega", true);
    if (j.contains("b")) t.b = parse_channel(j["b"], path + ".b", true);
    if (j.contains("h0")) t.h0 = parse_channel(j["h0"], path + ".h0", true);
    if (j.contains("h")) t.h = parse_channel(j["h"], path + ".h", false);
    if (j.contains("F")) t.F = parse_channel(j["F"], path + ".F", false);
    if (j.contains("g")) t.g = need_number(j["g"], path + ".g");
    if (j.contains("hmat")) {
        const Json& hm = j["hmat"];
        if (!hm.is_array() || hm.empty()) field_error(path + ".hmat", "must be a square matrix");
        size_t n = hm.size();
        CMatrix M(n, n);
        for (size_t r = 0; r < n; ++r) {
            if (!hm[r].is_array() || hm[r].size() != n)
                field_error(path + ".hmat", "must be square");
            for (size_t c = 0; c < n; ++c)
                M(r, c) = parse_complex(hm[r][c], path + ".hmat[" + std::to_string(r) + "][" +
                                                      std::to_string(c) + "]");
        }
        if (hermiticity_error(M) > 1e-12) field_error(path + ".hmat", "must be Hermitian");
        t.hmat = {M};
    }
    t.validate();
    return t;
}

Group parse_group(const Json& j, const std::string& path) {
    if (!j.is_string()) field_error(path, "must be a string");
    std::string g = j.get<std::string>();
    if (g == "heisenberg_weyl" || g == "hw") return Group::HeisenbergWeyl;
    if (g == "su2") return Group::SU2;
    if (g == "su11") return Group::SU11;
    if (g == "un1") return Group::UN1;
    field_error(path, "must be one of heisenberg_weyl | su2 | su11 | un1");
}

ExperimentKind parse_experiment(const Json& j, const std::string& path) {
    if (!j.is_string()) field_error(path, "must be a string");
    std::string e = j.get<std::string>();
    if (e == "classical") return ExperimentKind::Classical;
    if (e == "stability") return ExperimentKind::Stability;
    if (e == "mobius_vs_riccati" || e == "mobius-vs-riccati")
        return ExperimentKind::MobiusVsRiccati;
    if (e == "observables") return ExperimentKind::Observables;
    if (e == "thermal") return ExperimentKind::Thermal;
    field_error(path,
                "must be one of classical | stability | mobius_vs_riccati | observables | thermal");
}

}  // namespace

ScenarioConfig parse_scenario(const Json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    ScenarioConfig c;
    if (!j.contains("experiment")) field_error("experiment", "is required");
    c.experiment = parse_experiment(j["experiment"], "experiment");

    if (c.experiment != ExperimentKind::Thermal) {
        if (!j.contains("group")) field_error("group", "is required");
        c.group = parse_group(j["group"], "group");
        if (!j.contains("track")) field_error("track", "is required");
        c.track = parse_track(j["track"], "track");
    }

    if (j.contains("weights")) {
        if (!j["weights"].is_array() || j["weights"].empty())
            field_error("weights", "must be a nonempty array");
        for (size_t i = 0; i < j["weights"].size(); ++i)
            c.weights.push_back(need_number(j["weights"][i], "weights[" + std::to_string(i) + "]"));
    } else if (j.contains("weight")) {
        c.weights.push_back(need_number(j["weight"], "weight"));
    }

    if (j.contains("N")) c.N = need_int(j["N"], "N", 1);

    if (c.experiment != ExperimentKind::Thermal) {
        if (!j.contains("z0")) field_error("z0", "is required");
        const Json& z = j["z0"];
        if (c.group == Group::UN1) {
            if (!z.is_array() || z.empty()) field_error("z0", "must be an array of [re, im] pairs");
            CVector v(z.size());
            for (size_t i = 0; i < z.size(); ++i)
                v[i] = parse_complex(z[i], "z0[" + std::to_string(i) + "]");
            if (static_cast<int>(z.size()) != c.N) field_error("z0", "must have N components");
            c.z0 = PhasePoint::cn(v);
        } else {
            Complex v = parse_complex(z, "z0");
            if (c.group == Group::SU11) {
                if (std::abs(v) >= 1.0) field_error("z0", "must satisfy |z0| < 1 on the disc");
                c.z0 = PhasePoint::disc(v);
            } else if (c.group == Group::SU2) {
                c.z0 = PhasePoint::sphere(v);
            } else {
                c.z0 = PhasePoint::plane(v);
            }
        }
        if (c.weights.empty()) {
            if (c.group == Group::HeisenbergWeyl) c.weights = {0.0};
            else field_error("weight", "is required for this group");
        }
        for (size_t i = 0; i < c.weights.size(); ++i) {
            std::string p = "weights[" + std::to_string(i) + "]";
            double w = c.weights[i];
            switch (c.group) {
                case Group::SU2: RepLabel::su2(w); break;
                case Group::SU11:
                    if (!(w > 0.0)) field_error(p, "must be > 0");
                    break;
                case Group::UN1:
                    if (w < 1.0 || std::abs(w - std::lround(w)) > 1e-12)
                        field_error(p, "must be a positive integer (sector degree)");
                    break;
                case Group::HeisenbergWeyl: break;
            }
        }
    }

    if (j.contains("segments")) c.segments = need_int(j["segments"], "segments", 1);
    if (j.contains("substeps")) c.substeps = need_int(j["substeps"], "substeps", 1);
    if (j.contains("stride")) c.stride = need_int(j["stride"], "stride", 1);
    if (j.contains("trunc")) c.trunc = need_int(j["trunc"], "trunc", 2);
    if (j.contains("thermal_trunc"))
        c.thermal_trunc = need_int(j["thermal_trunc"], "thermal_trunc", 8);
    if (j.contains("beta_omega")) {
        if (!j["beta_omega"].is_array() || j["beta_omega"].empty())
            field_error("beta_omega", "must be a nonempty array");
        c.beta_omega.clear();
        for (size_t i = 0; i < j["beta_omega"].size(); ++i) {
            double bw = need_number(j["beta_omega"][i], "beta_omega[" + std::to_string(i) + "]");
            if (!(bw > 0.0)) field_error("beta_omega[" + std::to_string(i) + "]", "must be > 0");
            c.beta_omega.push_back(bw);
        }
    }
    if (j.contains("output")) {
        const Json& out = j["output"];
        if (!out.is_object()) field_error("output", "must be an object");
        if (out.contains("csv")) c.csv_path = out["csv"].get<std::string>();
        if (out.contains("summary")) c.summary_path = out["summary"].get<std::string>();
    }
    if (c.experiment == ExperimentKind::MobiusVsRiccati) {
        if (c.group != Group::SU11) field_error("group", "mobius_vs_riccati runs on su11");
        if (!c.track.omega) field_error("track.omega", "is required for mobius_vs_riccati");
    }
    c.echo = j.dump();
    return c;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_scenario(j);
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct CsvBuilder {
    std::ostringstream body;
    std::string z_bytes;

    void header(const std::vector<std::string>& cols) {
        for (size_t i = 0; i < cols.size(); ++i) body << (i ? "," : "") << cols[i];
        body << "\n";
    }
    void row(const std::vector<double>& vals, int z_cols = 0) {
        for (size_t i = 0; i < vals.size(); ++i) {
            std::string f = format_float(vals[i]);
            body << (i ? "," : "") << f;
            if (z_cols > 0 && i >= 1 && i < static_cast<size_t>(1 + z_cols)) z_bytes += f;
        }
        body << "\n";
    }
};

Json base_summary(const ScenarioConfig& cfg, double wall_s) {
    Json cfg_echo = Json::parse(cfg.echo);
    Json s;
    s["experiment"] = cfg_echo["experiment"];
    s["group"] = group_name(cfg.group);
    s["weights"] = cfg.weights;
    s["wall_time_s"] = wall_s;
    s["artifact_version"] = GCS_VERSION;
    s["config"] = cfg_echo;
    return s;
}

ScenarioOutput run_classical(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    CsvBuilder csv;
    Json extra;
    auto grid = uniform_grid(cfg.track.T, cfg.segments + 1);
    IntegratorControls ic;
    ic.substeps = cfg.substeps;

    if (cfg.group == Group::UN1) {
        auto traj = un1_flow(cfg.z0.vec, cfg.track, grid, ic);
        int n = static_cast<int>(cfg.z0.vec.size());
        std::vector<std::string> cols = {"t"};
        for (int i = 0; i < n; ++i) {
            std::string suffix = (i == 0) ? "" : std::to_string(i + 1);
            cols.push_back("re_z" + suffix);
            cols.push_back("im_z" + suffix);
        }
        csv.header(cols);
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            std::vector<double> row = {grid[i]};
            for (int q = 0; q < n; ++q) {
                row.push_back(traj.values[i][q].real());
                row.push_back(traj.values[i][q].imag());
            }
            csv.row(row, 2 * n);
        }
        extra["max_local_error"] = traj.max_local_error;
    } else {
        Trajectory traj;
        if (cfg.group == Group::SU11) traj = su11_flow(cfg.z0.value, cfg.track, grid, ic);
        else if (cfg.group == Group::SU2) traj = su2_flow(cfg.z0.value, cfg.track, grid, ic);
        else traj = glauber_flow(cfg.z0.value, cfg.track, grid, ic);
        csv.header({"t", "re_z", "im_z", "abs_z"});
        double abs_min = INFINITY, abs_max = 0.0;
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            double az = std::abs(traj.values[i]);
            abs_min = std::min(abs_min, az);
            abs_max = std::max(abs_max, az);
            csv.row({grid[i], traj.values[i].real(), traj.values[i].imag(), az}, 2);
        }
        extra["max_local_error"] = traj.max_local_error;
        extra["chart_switches"] = traj.chart_switches;
        extra["abs_z_min"] = abs_min;
        extra["abs_z_max"] = abs_max;
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ScenarioOutput out;
    out.summary = base_summary(cfg, wall);
    out.summary.update(extra);
    out.summary["z_hash"] = hash_hex(fnv1a(csv.z_bytes));
    out.csv = csv.body.str();
    return out;
}

ScenarioOutput run_stability(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    StabilityOptions opts;
    opts.segments = cfg.segments;
    opts.trunc = cfg.trunc;
    opts.flow_substeps = cfg.substeps;
    auto rep = stability_experiment(cfg.group, cfg.weights, cfg.track, cfg.z0, opts);

    CsvBuilder csv;
    if (cfg.group == Group::UN1) {
        int n = static_cast<int>(cfg.z0.vec.size());
        std::vector<std::string> cols = {"t"};
        for (int i = 0; i < n; ++i) {
            std::string suffix = (i == 0) ? "" : std::to_string(i + 1);
            cols.push_back("re_z" + suffix);
            cols.push_back("im_z" + suffix);
        }
        cols.push_back("fidelity");
        csv.header(cols);
        for (size_t i = 0; i < rep.classical_n.values.size(); i += cfg.stride) {
            std::vector<double> row = {rep.classical_n.times[i]};
            for (int q = 0; q < n; ++q) {
                row.push_back(rep.classical_n.values[i][q].real());
                row.push_back(rep.classical_n.values[i][q].imag());
            }
            double fmin = 1.0;
            for (auto& track : rep.fidelity_tracks) fmin = std::min(fmin, track[i]);
            row.push_back(fmin);
            csv.row(row, 2 * n);
        }
    } else {
        csv.header({"t", "re_z", "im_z", "fidelity"});
        for (size_t i = 0; i < rep.classical.values.size(); i += cfg.stride) {
            double fmin = 1.0;
            for (auto& track : rep.fidelity_tracks) fmin = std::min(fmin, track[i]);
            csv.row({rep.classical.times[i], rep.classical.values[i].real(),
                     rep.classical.values[i].imag(), fmin},
                    2);
        }
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ScenarioOutput out;
    out.summary = base_summary(cfg, wall);
    double fmin = 1.0, drift = 0.0, tail = 0.0;
    for (double f : rep.min_fidelity) fmin = std::min(fmin, f);
    for (double d : rep.max_norm_drift) drift = std::max(drift, d);
    for (double m : rep.max_tail_mass) tail = std::max(tail, m);
    out.summary["min_fidelity"] = fmin;
    out.summary["per_weight_min_fidelity"] = rep.min_fidelity;
    out.summary["max_norm_drift"] = drift;
    out.summary["max_tail_mass"] = tail;
    out.summary["z_hash"] = hash_hex(fnv1a(csv.z_bytes));
    out.csv = csv.body.str();
    return out;
}

ScenarioOutput run_mobius_vs_riccati(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto rep =
        mobius_vs_riccati_experiment(cfg.track, cfg.z0.value, cfg.segments + 1, cfg.substeps);
    CsvBuilder csv;
    csv.header({"t", "re_z", "im_z", "re_z2", "im_z2", "disc_distance"});
    for (size_t i = 0; i < rep.times.size(); i += cfg.stride)
        csv.row({rep.times[i], rep.riccati[i].real(), rep.riccati[i].imag(), rep.mobius[i].real(),
                 rep.mobius[i].imag(), disc_distance(rep.riccati[i], rep.mobius[i])},
                2);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ScenarioOutput out;
    out.summary = base_summary(cfg, wall);
    out.summary["sup_disc_distance"] = rep.sup_distance;
    out.summary["wronskian_drift"] = rep.wronskian_drift;
    out.summary["z_hash"] = hash_hex(fnv1a(csv.z_bytes));
    out.csv = csv.body.str();
    return out;
}

ScenarioOutput run_observables(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    auto grid = uniform_grid(cfg.track.T, cfg.segments + 1);
    IntegratorControls ic;
    ic.substeps = cfg.substeps;
    double w = cfg.weights.at(0);

    CsvBuilder csv;
    if (cfg.group == Group::SU11) {
        auto traj = su11_flow(cfg.z0.value, cfg.track, grid, ic);
        csv.header({"t", "re_z", "im_z", "k0", "q2", "p2", "uncertainty_product"});
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            Complex z = traj.values[i];
            csv.row({grid[i], z.real(), z.imag(), su11_means_closed(w, z).weight.real(),
                     su11_q2_mean(w, z), su11_p2_mean(w, z), uncertainty_product(w, z)},
                    2);
        }
    } else if (cfg.group == Group::SU2) {
        auto traj = su2_flow(cfg.z0.value, cfg.track, grid, ic);
        csv.header({"t", "re_z", "im_z", "j0", "re_jplus", "im_jplus"});
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            Complex z = traj.values[i];
            auto m = su2_means_closed(w, z);
            csv.row({grid[i], z.real(), z.imag(), m.weight.real(), m.raise.real(),
                     m.raise.imag()},
                    2);
        }
    } else if (cfg.group == Group::HeisenbergWeyl) {
        auto traj = glauber_flow(cfg.z0.value, cfg.track, grid, ic);
        csv.header({"t", "re_z", "im_z", "mean_occupation"});
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            Complex z = traj.values[i];
            csv.row({grid[i], z.real(), z.imag(), std::norm(z)}, 2);
        }
    } else {
        auto traj = un1_flow(cfg.z0.vec, cfg.track, grid, ic);
        int n = static_cast<int>(cfg.z0.vec.size());
        std::vector<std::string> cols = {"t"};
        for (int i = 0; i < n; ++i) {
            std::string suffix = (i == 0) ? "" : std::to_string(i + 1);
            cols.push_back("re_z" + suffix);
            cols.push_back("im_z" + suffix);
        }
        for (int i = 0; i <= n; ++i) cols.push_back("occupation" + std::to_string(i));
        csv.header(cols);
        for (size_t i = 0; i < grid.size(); i += cfg.stride) {
            std::vector<double> row = {grid[i]};
            const CVector& z = traj.values[i];
            for (int q = 0; q < n; ++q) {
                row.push_back(z[q].real());
                row.push_back(z[q].imag());
            }
            double denom = 1.0 + z.squaredNorm();
            row.push_back(w / denom);
            for (int q = 0; q < n; ++q) row.push_back(w * std::norm(z[q]) / denom);
            csv.row(row, 2 * n);
        }
    }

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ScenarioOutput out;
    out.summary = base_summary(cfg, wall);
    out.summary["z_hash"] = hash_hex(fnv1a(csv.z_bytes));
    out.csv = csv.body.str();
    return out;
}

ScenarioOutput run_thermal(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    CsvBuilder csv;
    csv.header({"beta_omega", "state_mean", "canonical_mean", "abs_diff"});
    CMatrix a = fock_lower(cfg.thermal_trunc);
    CMatrix n_op = a.adjoint() * a;
    double worst = 0.0;
    for (double bw : cfg.beta_omega) {
        auto rep = thermal_average_check(bw, 1.0, n_op, cfg.thermal_trunc);
        worst = std::max(worst, rep.abs_discrepancy);
        csv.row({bw, rep.matrix_value.real(), rep.closed_form_value.real(), rep.abs_discrepancy});
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ScenarioOutput out;
    out.summary = base_summary(cfg, wall);
    out.summary["max_thermal_discrepancy"] = worst;
    out.csv = csv.body.str();
    return out;
}

}  // namespace

ScenarioOutput run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::Classical: return run_classical(cfg);
        case ExperimentKind::Stability: return run_stability(cfg);
        case ExperimentKind::MobiusVsRiccati: return run_mobius_vs_riccati(cfg);
        case ExperimentKind::Observables: return run_observables(cfg);
        case ExperimentKind::Thermal: return run_thermal(cfg);
    }
    throw std::logic_error("unreachable");
}

namespace {

void set_dot_path(Json& j, const std::string& path, double value) {
    Json* cur = &j;
    size_t pos = 0;
    std::vector<std::string> parts;
    while (true) {
        size_t dot = path.find('.', pos);
        if (dot == std::string::npos) {
            parts.push_back(path.substr(pos));
            break;
        }
        parts.push_back(path.substr(pos, dot - pos));
        pos = dot + 1;
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!cur->contains(parts[i]))
            throw ConfigError("sweep." + path + ": base scenario has no field '" + parts[i] + "'");
        cur = &(*cur)[parts[i]];
    }
    (*cur)[parts.back()] = value;
}

}  // namespace

Json run_sweep(const Json& sweep_config, int* failures) {
    if (!sweep_config.is_object() || !sweep_config.contains("sweep") ||
        !sweep_config.contains("scenario"))
        throw ConfigError("sweep config: needs 'sweep' (grids) and 'scenario' (base) objects");
    const Json& grids = sweep_config["sweep"];
    if (!grids.is_object() || grids.empty())
        throw ConfigError("sweep: must be a nonempty object of field -> value-array");

    std::vector<std::string> axes;
    std::vector<std::vector<double>> values;
    for (auto it = grids.begin(); it != grids.end(); ++it) {
        if (!it.value().is_array() || it.value().empty())
            throw ConfigError("sweep." + it.key() + ": must be a nonempty array");
        axes.push_back(it.key());
        std::vector<double> vals;
        for (size_t i = 0; i < it.value().size(); ++i) {
            if (!it.value()[i].is_number())
                throw ConfigError("sweep." + it.key() + ": values must be numbers");
            vals.push_back(it.value()[i].get<double>());
        }
        values.push_back(std::move(vals));
    }

    size_t total = 1;
    for (auto& v : values) total *= v.size();
    if (total > 100000) throw ConfigError("sweep: grid too large");

    // materialize scenario patches up front so workers stay independent
    std::vector<Json> patched(total);
    std::vector<Json> coords(total);
    for (size_t idx = 0; idx < total; ++idx) {
        Json scenario = sweep_config["scenario"];
        Json coord;
        size_t rest = idx;
        for (size_t ax = 0; ax < axes.size(); ++ax) {
            size_t i = rest % values[ax].size();
            rest /= values[ax].size();
            double v = values[ax][i];
            coord[axes[ax]] = v;
            const std::string& key = axes[ax];
            if (key == "weight") {
                scenario.erase("weights");
                scenario["weight"] = v;
            } else if (key == "z0_re") {
                if (!scenario.contains("z0")) scenario["z0"] = {0.0, 0.0};
                scenario["z0"][0] = v;
            } else if (key == "z0_im") {
                if (!scenario.contains("z0")) scenario["z0"] = {0.0, 0.0};
                scenario["z0"][1] = v;
            } else if (key == "beta_omega") {
                scenario["beta_omega"] = {v};
            } else {
                set_dot_path(scenario, key, v);
            }
        }
        patched[idx] = std::move(scenario);
        coords[idx] = std::move(coord);
    }

    std::vector<Json> results(total);
    kernels::parallel_for(
        static_cast<int>(total),
        [&](int idx) {
            Json cell;
            cell["coords"] = coords[idx];
            try {
                ScenarioConfig cfg = parse_scenario(patched[idx]);
                ScenarioOutput out = run_scenario(cfg);
                cell["summary"] = out.summary;
                cell["status"] = "ok";
            } catch (const std::exception& e) {
                cell["status"] = "error";
                cell["message"] = e.what();
            }
            results[idx] = std::move(cell);
        },
        kernels::Exec::Parallel);

    int failed = 0;
    Json agg;
    agg["sweep"] = grids;
    agg["results"] = Json::array();
    for (size_t idx = 0; idx < total; ++idx) {
        if (results[idx]["status"] != "ok") ++failed;
        agg["results"].push_back(results[idx]);
    }
    agg["total"] = total;
    agg["failed"] = failed;
    agg["artifact_version"] = GCS_VERSION;
    if (failures) *failures = failed;
    return agg;
}

std::string apply_output_dir(const std::string& path, const std::string& override_dir) {
    if (override_dir.empty() || path.empty()) return path;
    size_t slash = path.find_last_of('/');
    std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
    if (override_dir.back() == '/') return override_dir + base;
    return override_dir + "/" + base;
}

}  // namespace gcs
