#include "gcs/oracle.hpp"

#include <cmath>

namespace gcs {

double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ConfigError("fidelity: state dimensions differ");
    return std::abs(a.c.dot(b.c));
}

EvolutionResult schrodinger_evolve(const RepLabel& rep, const CoefficientTrack& track,
                                   const StateVector& psi0, int segments,
                                   const ReferenceState& reference, const EvolveOptions& opts) {
    rep.validate();
    track.validate();
    const int dim = rep.dim();
    if (psi0.dim() != dim) throw ConfigError("schrodinger_evolve: psi0 dimension mismatch");
    if (psi0.tail_mass > 1e-6)
        throw ConfigError("schrodinger_evolve: initial state carries too much truncation tail");

    SampledSegments sampled = midpoint_sample(track, rep, segments);
    const double dt = track.T / segments;
    // leakage can only happen in truncated ladder bases; finite representations
    // occupy their top rows legitimately
    const bool truncated = rep.trust_dim() < rep.dim();
    const int tail_rows = std::max(1, dim / 8);

    EvolutionResult res;
    res.times = sampled.edges;
    res.fidelity.reserve(segments + 1);

    CVector psi = psi0.c;
    auto tail_of = [&](const CVector& v) {
        double m = 0.0;
        for (int i = dim - tail_rows; i < dim; ++i) m += std::norm(v[i]);
        return m;
    };
    auto record = [&](int seg_idx, double t, const CVector& v) {
        res.max_norm_drift = std::max(res.max_norm_drift, std::abs(v.norm() - 1.0));
        double tail = truncated ? tail_of(v) : 0.0;
        res.max_tail_mass = std::max(res.max_tail_mass, tail);
        if (tail > opts.tail_abort)
            throw ComputeError("truncation leakage: tail mass " + std::to_string(tail) +
                                   " exceeds the guard; increase trunc_dim",
                               t);
        if (reference) {
            StateVector ref = reference(t, seg_idx);
            double f = std::abs(ref.c.dot(v));
            res.fidelity.push_back(f);
            res.min_fidelity = std::min(res.min_fidelity, f);
        }
        if (opts.store_stride > 0 && seg_idx % opts.store_stride == 0) {
            res.stored_states.push_back(v);
            res.stored_times.push_back(t);
        }
    };

    record(0, 0.0, psi);
    kernels::SegmentProvider provider = [&](int s) {
        kernels::SegmentHam h;
        if (rep.group == Group::UN1) {
            h.tridiagonal = false;
            h.dense = hamiltonian_matrix(rep, sampled.coeffs[s]);
        } else {
            TridiagHam t = hamiltonian_tridiag(rep, sampled.coeffs[s]);
            h.diag = std::move(t.diag);
            h.sub = std::move(t.sub);
        }
        return h;
    };
    kernels::SegmentObserver observer = [&](int s, const CVector& v) {
        record(s + 1, sampled.edges[s + 1], v);
    };
    kernels::evolve_segments(provider, segments, dt, psi, observer, opts.exec);
    res.final_state = psi;
    return res;
}

namespace {

StateVector reference_state(Group group, double weight, const RepLabel& rep, Complex z,
                            const CVector& zvec) {
    switch (group) {
        case Group::HeisenbergWeyl:
            // fixed-dimension build: tolerance 1 disables auto-growth, the
            // (tiny) missing tail only biases fidelity downward
            return glauber_cs(z, rep.dim(), 1.0);
        case Group::SU2:
            return su2_cs(weight, z);
        case Group::SU11:
            return su11_cs(weight, z, rep.dim(), 1.0);
        case Group::UN1:
            return un1_cs(rep.N, rep.m, zvec);
    }
    throw std::logic_error("unreachable");
}

RepLabel rep_for(Group group, double weight, int trunc, int N) {
    switch (group) {
        case Group::HeisenbergWeyl: return RepLabel::heisenberg_weyl(trunc);
        case Group::SU2: return RepLabel::su2(weight);
        case Group::SU11: return RepLabel::su11(weight, trunc);
        case Group::UN1: return RepLabel::un1(N, static_cast<int>(std::lround(weight)));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

StabilityReport stability_experiment(Group group, const std::vector<double>& weights,
                                     const CoefficientTrack& track, const PhasePoint& z0,
                                     const StabilityOptions& opts) {
    if (weights.empty()) throw ConfigError("stability experiment needs at least one weight");
    track.validate();

    StabilityReport report;
    report.weights = weights;
    auto grid = uniform_grid(track.T, opts.segments + 1);

    IntegratorControls ic;
    ic.substeps = opts.flow_substeps;

    int N = 0;
    if (group == Group::UN1) {
        N = static_cast<int>(z0.vec.size());
        report.classical_n = un1_flow(z0.vec, track, grid, ic);
    } else if (group == Group::SU11) {
        report.classical = su11_flow(z0.value, track, grid, ic);
    } else if (group == Group::SU2) {
        report.classical = su2_flow(z0.value, track, grid, ic);
    } else {
        report.classical = glauber_flow(z0.value, track, grid, ic);
    }

    // weights evolve independently off the one shared trajectory
    const int nw = static_cast<int>(weights.size());
    report.min_fidelity.resize(nw);
    report.max_norm_drift.resize(nw);
    report.max_tail_mass.resize(nw);
    report.fidelity_tracks.resize(nw);
    std::vector<std::exception_ptr> errors(nw);

    kernels::parallel_for(
        nw,
        [&](int wi) {
            try {
                double w = weights[wi];
                RepLabel rep = rep_for(group, w, opts.trunc, N);
                StateVector psi0 = reference_state(
                    group, w, rep, (group == Group::UN1) ? Complex{0, 0} : z0.value,
                    (group == Group::UN1) ? z0.vec : CVector{});
                ReferenceState ref = [&](double /*t*/, int seg) {
                    if (group == Group::UN1)
                        return reference_state(group, w, rep, Complex{0, 0},
                                               report.classical_n.values[seg]);
                    return reference_state(group, w, rep, report.classical.values[seg], CVector{});
                };
                EvolveOptions eo;
                eo.exec = opts.exec;
                eo.tail_abort = opts.tail_abort;
                EvolutionResult r = schrodinger_evolve(rep, track, psi0, opts.segments, ref, eo);
                report.min_fidelity[wi] = r.min_fidelity;
                report.max_norm_drift[wi] = r.max_norm_drift;
                report.max_tail_mass[wi] = r.max_tail_mass;
                report.fidelity_tracks[wi] = std::move(r.fidelity);
            } catch (...) {
                errors[wi] = std::current_exception();
            }
        },
        opts.exec);

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return report;
}

TwoPathReport mobius_vs_riccati_experiment(const CoefficientTrack& track, Complex z0, int points,
                                           int substeps) {
    track.validate();
    auto grid = uniform_grid(track.T, points);

    IntegratorControls ic;
    ic.substeps = substeps;
    Trajectory riccati = su11_flow(z0, track, grid, ic);

    // A friction discontinuity makes eps_dot and b jump together while the
    // propagator stays continuous, so the auxiliary solution is restarted on
    // every b-segment and the disc maps are composed across the joints.
    std::vector<double> cuts = {0.0};
    bool b_piecewise = track.b && track.b->kind == Channel::Kind::Piecewise;
    if (track.b)
        for (double bp : track.b->breakpoints())
            if (bp > 0.0 && bp < track.T) cuts.push_back(bp);
    cuts.push_back(track.T);

    TwoPathReport rep;
    rep.times = grid;
    rep.riccati = riccati.values;
    rep.mobius.resize(grid.size());

    MobiusElement acc = MobiusElement::identity();
    for (size_t w = 0; w + 1 < cuts.size(); ++w) {
        double ta = cuts[w], tb = cuts[w + 1];
        std::vector<double> wgrid = {ta};
        for (double t : grid)
            if (t > ta + 1e-12 && t < tb - 1e-12) wgrid.push_back(t);
        wgrid.push_back(tb);

        EpsilonSolution eps =
            ermakov_solve(track, wgrid, ErmakovInit::propagator(track.b_at(ta)), substeps);
        rep.wronskian_drift = std::max(rep.wronskian_drift, eps.max_wronskian_drift);

        for (size_t out = 0; out < grid.size(); ++out) {
            double t = grid[out];
            if (t < ta - 1e-12 || t > tb + 1e-12) continue;
            double bval = b_piecewise ? track.b_at(ta) : track.b_at(t);
            MobiusElement P = mobius_compose(mobius_propagator(eps, bval, t), acc);
            Complex zm = mobius_apply(P, z0);
            rep.mobius[out] = zm;
            rep.sup_distance = std::max(rep.sup_distance, disc_distance(riccati.values[out], zm));
        }
        double b_end = b_piecewise ? track.b_at(ta) : track.b_at(tb);
        acc = mobius_compose(mobius_propagator(eps, b_end, tb), acc);
    }
    return rep;
}

}  // namespace gcs
