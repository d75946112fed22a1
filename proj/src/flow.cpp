#include "gcs/flow.hpp"

#include <algorithm>
#include <cmath>

namespace gcs {

Complex glauber_rhs(Complex z, double omega, Complex F) {
    return -I_UNIT * (omega * z + F);
}

Complex su2_riccati_rhs(Complex z, double h0, Complex h) {
    return -I_UNIT * (std::conj(h) + h0 * z - h * z * z);
}

Complex su11_riccati_rhs(Complex z, double h0, Complex h) {
    return -I_UNIT * (std::conj(h) * z * z + h0 * z + h);
}

std::vector<double> uniform_grid(double T, int points) {
    if (points < 2) throw ConfigError("grid needs at least two points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = T * i / (points - 1);
    return g;
}

namespace {

// sub-edges of [t0, t1]: uniform substeps plus any track breakpoints inside
std::vector<double> partition_interval(double t0, double t1, int substeps,
                                       const std::vector<double>& breakpoints) {
    std::vector<double> edges;
    edges.reserve(substeps + 3);
    for (int s = 0; s <= substeps; ++s) edges.push_back(t0 + (t1 - t0) * s / substeps);
    for (double bp : breakpoints)
        if (bp > t0 + 1e-14 && bp < t1 - 1e-14) edges.push_back(bp);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                edges.end());
    return edges;
}

bool is_breakpoint(double t, const std::vector<double>& breakpoints) {
    for (double bp : breakpoints)
        if (std::abs(t - bp) < 1e-13 * std::max(1.0, std::abs(bp))) return true;
    return false;
}

// Piecewise channels are right-continuous, so a step that ends exactly on a
// joint must sample its final stage just inside its own segment.
double end_stage_time(double t1, const std::vector<double>& breakpoints) {
    if (is_breakpoint(t1, breakpoints)) return t1 - 1e-12 * std::max(1.0, std::abs(t1));
    return t1;
}

Complex rk4_step(const FlowRhs& rhs, double t, double dt, double t_end_eval, Complex z,
                 Chart chart) {
    Complex k1 = rhs(t, z, chart);
    Complex k2 = rhs(t + 0.5 * dt, z + 0.5 * dt * k1, chart);
    Complex k3 = rhs(t + 0.5 * dt, z + 0.5 * dt * k2, chart);
    Complex k4 = rhs(t_end_eval, z + dt * k3, chart);
    return z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory integrate(const FlowRhs& rhs, Complex z0, const std::vector<double>& grid,
                     const std::vector<double>& breakpoints, const IntegratorControls& controls) {
    if (grid.size() < 2) throw ConfigError("integration grid needs at least two points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("integration grid must be strictly increasing");

    Trajectory traj;
    traj.times = grid;
    traj.values.reserve(grid.size());
    traj.charts.reserve(grid.size());

    Complex z = z0;
    Chart chart = Chart::Primary;
    auto primary_value = [&](Complex w, Chart c) {
        return (c == Chart::Primary) ? w : -1.0 / w;
    };

    traj.values.push_back(primary_value(z, chart));
    traj.charts.push_back(chart);

    for (size_t gi = 0; gi + 1 < grid.size(); ++gi) {
        auto edges = partition_interval(grid[gi], grid[gi + 1], controls.substeps, breakpoints);
        for (size_t s = 0; s + 1 < edges.size(); ++s) {
            double t = edges[s];
            double dt = edges[s + 1] - t;
            double t_end = end_stage_time(edges[s + 1], breakpoints);

            Complex full = rk4_step(rhs, t, dt, t_end, z, chart);
            Complex half = rk4_step(rhs, t, 0.5 * dt, t + 0.5 * dt, z, chart);
            half = rk4_step(rhs, t + 0.5 * dt, 0.5 * dt, t_end, half, chart);
            z = half;

            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw ComputeError("integration diverged (non-finite value)", edges[s + 1]);
            if (controls.disc_guard && std::abs(z) >= 1.0 - 1e-12)
                throw ComputeError("trajectory reached the unit circle: step too large or "
                                   "non-Hermitian coefficients",
                                   edges[s + 1]);

            // Richardson difference scaled to an error rate per unit time, so
            // halving the step divides the estimate by ~2^4
            double est = std::abs(full - half) / 15.0 / std::max(1.0, std::abs(z)) / dt;
            traj.max_local_error = std::max(traj.max_local_error, est);
            if (est > controls.error_budget)
                throw ComputeError("integrator local error estimate " + std::to_string(est) +
                                       " exceeds the budget; reduce the step",
                                   t);

            if (controls.sphere_chart_switch && std::abs(z) > controls.chart_threshold) {
                z = -1.0 / z;
                chart = (chart == Chart::Primary) ? Chart::Antipodal : Chart::Primary;
                ++traj.chart_switches;
            }
        }
        traj.values.push_back(primary_value(z, chart));
        traj.charts.push_back(chart);
    }
    return traj;
}

Trajectory glauber_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                        const IntegratorControls& controls) {
    track.validate();
    FlowRhs rhs = [&track](double t, Complex z, Chart) {
        return glauber_rhs(z, track.omega_at(t), track.F ? track.F->eval(t) : Complex{0.0, 0.0});
    };
    return integrate(rhs, z0, grid, track.breakpoints(), controls);
}

Trajectory su2_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                    const IntegratorControls& controls) {
    track.validate();
    IntegratorControls c = controls;
    c.sphere_chart_switch = true;
    FlowRhs rhs = [&track](double t, Complex z, Chart chart) {
        HamCoeffs hc = track.su_coeffs(t);
        if (chart == Chart::Antipodal)
            return su2_riccati_rhs(z, -hc.h0, -std::conj(hc.h));
        return su2_riccati_rhs(z, hc.h0, hc.h);
    };
    return integrate(rhs, z0, grid, track.breakpoints(), c);
}

Trajectory su11_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                     IntegratorControls controls) {
    track.validate();
    if (std::abs(z0) >= 1.0) throw ConfigError("su11 flow: |z0| must be < 1");
    controls.disc_guard = true;
    FlowRhs rhs = [&track](double t, Complex z, Chart) {
        HamCoeffs hc = track.su_coeffs(t);
        return su11_riccati_rhs(z, hc.h0, hc.h);
    };
    return integrate(rhs, z0, grid, track.breakpoints(), controls);
}

std::vector<Complex> glauber_closed_form(Complex z0, const CoefficientTrack& track,
                                         const std::vector<double>& grid, int quad_points) {
    track.validate();
    auto omega = [&track](double t) { return track.omega_at(t); };
    auto drive = [&track](double t) { return track.F ? track.F->eval(t) : Complex{0.0, 0.0}; };
    auto bps = track.breakpoints();

    std::vector<Complex> out;
    out.reserve(grid.size());
    double phi = 0.0;       // int_0^t omega
    Complex acc{0.0, 0.0};  // int_0^t F e^{+i phi}
    out.push_back(z0);
    for (size_t gi = 0; gi + 1 < grid.size(); ++gi) {
        auto edges = partition_interval(grid[gi], grid[gi + 1], quad_points, bps);
        for (size_t s = 0; s + 1 < edges.size(); ++s) {
            double t0 = edges[s], tm = 0.5 * (edges[s] + edges[s + 1]);
            double t1 = end_stage_time(edges[s + 1], bps);
            double h = edges[s + 1] - t0;
            // Simpson for phi at midpoint and end (each over half the step)
            double phi_m = phi + (h / 12.0) * (omega(t0) + 4.0 * omega(0.5 * (t0 + tm)) + omega(tm));
            double phi_1 =
                phi_m + (h / 12.0) * (omega(tm) + 4.0 * omega(0.5 * (tm + t1)) + omega(t1));
            Complex g0 = drive(t0) * std::exp(I_UNIT * phi);
            Complex gm = drive(tm) * std::exp(I_UNIT * phi_m);
            Complex g1 = drive(t1) * std::exp(I_UNIT * phi_1);
            acc += (h / 6.0) * (g0 + 4.0 * gm + g1);
            phi = phi_1;
        }
        out.push_back((z0 - I_UNIT * acc) * std::exp(-I_UNIT * phi));
    }
    return out;
}

TrajectoryN un1_flow(const CVector& z0, const CoefficientTrack& track,
                     const std::vector<double>& grid, const IntegratorControls& controls) {
    track.validate();
    const int N = static_cast<int>(z0.size());
    CVector w(N + 1);
    w[0] = 1.0;
    for (int i = 0; i < N; ++i) w[i + 1] = z0[i];
    w /= w.norm();

    auto rhs = [&track](double t, const CVector& v) -> CVector {
        return -I_UNIT * (track.hmat_at(t) * v);
    };
    auto rk4 = [&rhs](double t, double dt, double t_end, const CVector& v) {
        CVector k1 = rhs(t, v);
        CVector k2 = rhs(t + 0.5 * dt, v + 0.5 * dt * k1);
        CVector k3 = rhs(t + 0.5 * dt, v + 0.5 * dt * k2);
        CVector k4 = rhs(t_end, v + dt * k3);
        return (v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };
    auto chart_coords = [N](const CVector& v, double t) {
        if (std::abs(v[0]) < 1e-6 * v.norm())
            throw ComputeError("un1 flow reached the chart singularity w0 = 0; re-chart required", t);
        CVector z(N);
        for (int i = 0; i < N; ++i) z[i] = v[i + 1] / v[0];
        return z;
    };

    TrajectoryN traj;
    traj.times = grid;
    traj.values.reserve(grid.size());
    traj.values.push_back(chart_coords(w, grid.front()));
    auto bps = track.breakpoints();

    for (size_t gi = 0; gi + 1 < grid.size(); ++gi) {
        auto edges = partition_interval(grid[gi], grid[gi + 1], controls.substeps, bps);
        for (size_t s = 0; s + 1 < edges.size(); ++s) {
            double t = edges[s], dt = edges[s + 1] - t;
            double t_end = end_stage_time(edges[s + 1], bps);
            CVector full = rk4(t, dt, t_end, w);
            CVector half = rk4(t, 0.5 * dt, t + 0.5 * dt, w);
            half = rk4(t + 0.5 * dt, 0.5 * dt, t_end, half);
            traj.max_local_error =
                std::max(traj.max_local_error, (full - half).norm() / 15.0 / dt);
            w = half;
            w /= w.norm();  // projective representative
        }
        traj.values.push_back(chart_coords(w, grid[gi + 1]));
    }
    return traj;
}

double su2_classical_hamiltonian(double j, Complex z, double h0, Complex h) {
    double n = std::norm(z);
    return j * (4.0 * std::real(h * z) - h0 * (1.0 - n)) / (1.0 + n);
}

double su11_classical_hamiltonian(double k, Complex z, double h0, Complex h) {
    double n = std::norm(z);
    return k * (h0 * (1.0 + n) + 4.0 * std::real(h * std::conj(z))) / (1.0 - n);
}

double kahler_flow_residual(Group group, double weight, Complex z, double h0, Complex h,
                            double fd_step) {
    auto hamiltonian = [&](Complex zz) {
        return group == Group::SU2 ? su2_classical_hamiltonian(weight, zz, h0, h)
                                   : su11_classical_hamiltonian(weight, zz, h0, h);
    };
    double d = fd_step;
    double dx = (hamiltonian(z + d) - hamiltonian(z - d)) / (2.0 * d);
    double dy = (hamiltonian(z + I_UNIT * d) - hamiltonian(z - I_UNIT * d)) / (2.0 * d);
    Complex dH_dzstar = 0.5 * (dx + I_UNIT * dy);

    double n = std::norm(z);
    Complex rhs_kahler, rhs_closed;
    if (group == Group::SU2) {
        rhs_kahler = -I_UNIT / (2.0 * weight) * (1.0 + n) * (1.0 + n) * dH_dzstar;
        rhs_closed = su2_riccati_rhs(z, h0, h);
    } else if (group == Group::SU11) {
        rhs_kahler = -I_UNIT / (2.0 * weight) * (1.0 - n) * (1.0 - n) * dH_dzstar;
        rhs_closed = su11_riccati_rhs(z, h0, h);
    } else {
        throw ConfigError("kahler residual check supports su2 and su11 only");
    }
    return std::abs(rhs_kahler - rhs_closed) / std::max(1.0, std::abs(rhs_closed));
}

ErmakovInit ErmakovInit::stationary(double omega_sq0) {
    if (!(omega_sq0 > 0.0))
        throw ConfigError("stationary start requires Omega^2(0) > 0");
    double om = std::sqrt(omega_sq0);
    return {Complex{1.0 / std::sqrt(om), 0.0}, Complex{0.0, std::sqrt(om)}};
}

ErmakovInit ErmakovInit::propagator(double b0) {
    return {Complex{1.0, 0.0}, Complex{b0, 1.0}};
}

int EpsilonSolution::index_of(double t) const {
    for (size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return static_cast<int>(i);
    throw ConfigError("requested time is not on the epsilon grid");
}

EpsilonSolution ermakov_solve(const CoefficientTrack& track, const std::vector<double>& grid,
                              const ErmakovInit& init, int substeps) {
    track.validate();
    double w0 = std::imag(std::conj(init.eps0) * init.eps_dot0);
    if (std::abs(w0 - 1.0) > 1e-8)
        throw ConfigError("ermakov initial conditions violate the Wronskian normalization");

    struct State {
        Complex e, ed;
    };
    auto rhs = [&track](double t, const State& s) {
        return State{s.ed, -track.omega_sq_aux(t) * s.e};
    };
    auto rk4 = [&rhs](double t, double dt, double t_end, const State& s) {
        State k1 = rhs(t, s);
        State k2 = rhs(t + 0.5 * dt, {s.e + 0.5 * dt * k1.e, s.ed + 0.5 * dt * k1.ed});
        State k3 = rhs(t + 0.5 * dt, {s.e + 0.5 * dt * k2.e, s.ed + 0.5 * dt * k2.ed});
        State k4 = rhs(t_end, {s.e + dt * k3.e, s.ed + dt * k3.ed});
        return State{s.e + (dt / 6.0) * (k1.e + 2.0 * k2.e + 2.0 * k3.e + k4.e),
                     s.ed + (dt / 6.0) * (k1.ed + 2.0 * k2.ed + 2.0 * k3.ed + k4.ed)};
    };

    EpsilonSolution sol;
    sol.times = grid;
    State s{init.eps0, init.eps_dot0};
    auto bps = track.breakpoints();

    auto push = [&sol](const State& st) {
        sol.eps.push_back(st.e);
        sol.eps_dot.push_back(st.ed);
        sol.rho.push_back(std::abs(st.e));
        double raw = std::arg(st.e);
        if (sol.gamma.empty()) {
            sol.gamma.push_back(raw);
        } else {
            // unwrap to the branch nearest the previous sample
            double prev = sol.gamma.back();
            double delta = raw - prev;
            delta -= 2.0 * M_PI * std::round(delta / (2.0 * M_PI));
            sol.gamma.push_back(prev + delta);
        }
        double w = std::imag(std::conj(st.e) * st.ed);
        sol.max_wronskian_drift = std::max(sol.max_wronskian_drift, std::abs(w - 1.0));
    };
    push(s);

    for (size_t gi = 0; gi + 1 < grid.size(); ++gi) {
        auto edges = partition_interval(grid[gi], grid[gi + 1], substeps, bps);
        for (size_t e = 0; e + 1 < edges.size(); ++e)
            s = rk4(edges[e], edges[e + 1] - edges[e], end_stage_time(edges[e + 1], bps), s);
        push(s);
    }

    if (sol.max_wronskian_drift > 1e-8)
        throw ComputeError("ermakov solution lost the Wronskian normalization (drift " +
                           std::to_string(sol.max_wronskian_drift) + "); refine the grid");
    return sol;
}

MobiusElement MobiusElement::normalized() const {
    double d = det();
    if (!(d > 0.0)) throw ComputeError("Mobius element has non-positive determinant");
    double s = std::sqrt(d);
    return {a / s, c / s};
}

MobiusElement MobiusElement::inverse() const {
    double d = det();
    if (!(d > 0.0)) throw ComputeError("Mobius element has non-positive determinant");
    return {std::conj(a) / d, -c / d};
}

MobiusElement mobius_compose(const MobiusElement& m2, const MobiusElement& m1) {
    return {m2.a * m1.a + m2.c * std::conj(m1.c), m2.a * m1.c + m2.c * std::conj(m1.a)};
}

Complex mobius_apply(const MobiusElement& m, Complex z) {
    Complex denom = std::conj(m.c) * z + std::conj(m.a);
    if (std::abs(denom) < 1e-14)
        throw ComputeError("Mobius action is numerically degenerate at this point");
    return (m.a * z + m.c) / denom;
}

MobiusElement mobius_from_epsilon(const EpsilonSolution& eps, double t, EpsilonConvention conv) {
    int i = eps.index_of(t);
    double r2 = eps.rho[i] * eps.rho[i];
    double g = eps.gamma[i];
    Complex eg = std::exp(I_UNIT * g);
    if (conv == EpsilonConvention::PhasePlus)
        return {(r2 + 1.0) * eg, (r2 - 1.0) * std::conj(eg)};
    return {(1.0 + r2) * std::conj(eg), (1.0 - r2) * eg};
}

MobiusElement mobius_propagator(const EpsilonSolution& eps, double b_at_t, double t) {
    int i = eps.index_of(t);
    Complex e = eps.eps[i];
    Complex ed = eps.eps_dot[i];
    Complex one_ib{1.0, -b_at_t};
    return {0.5 * (one_ib * std::conj(e) + I_UNIT * std::conj(ed)),
            -0.5 * (one_ib * e + I_UNIT * ed)};
}

double disc_distance(Complex z, Complex w) {
    double num = std::abs(z - w);
    double den = std::abs(1.0 - std::conj(w) * z);
    if (den == 0.0) return INFINITY;
    double r = std::min(num / den, 1.0 - 1e-16);
    return 2.0 * std::atanh(r);
}

}  // namespace gcs
