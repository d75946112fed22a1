#pragma once

#include <functional>
#include <optional>

#include "gcs/flow.hpp"
#include "gcs/kernels.hpp"
#include "gcs/states.hpp"
#include "gcs/tracks.hpp"

namespace gcs {

// Exact segment-exponential Schroedinger evolution in a truncated basis.
// The track is rendered piecewise constant by midpoint sampling; each
// segment is advanced by exp(-i H dt) through a Hermitian eigendecomposition,
// so unitarity holds to round-off and fidelity against the classical
// prediction is a clean stability metric.

struct EvolveOptions {
    kernels::Exec exec = kernels::Exec::Parallel;
    double tail_abort = 1e-8;   // truncation-leakage guard
    int store_stride = 0;       // 0: keep only the final state
};

struct EvolutionResult {
    std::vector<double> times;              // segment edges, size segments+1
    std::vector<double> fidelity;           // |<ref(t)|psi(t)>| when a reference is given
    std::vector<CVector> stored_states;     // every store_stride segments
    std::vector<double> stored_times;
    CVector final_state;
    double max_norm_drift = 0.0;
    double max_tail_mass = 0.0;
    double min_fidelity = 1.0;
};

// reference(t) -> state to compare against (typically the coherent state at
// the classically evolved label z(t)); pass nullptr to skip fidelity.
using ReferenceState = std::function<StateVector(double t, int segment_index)>;

EvolutionResult schrodinger_evolve(const RepLabel& rep, const CoefficientTrack& track,
                                   const StateVector& psi0, int segments,
                                   const ReferenceState& reference = nullptr,
                                   const EvolveOptions& opts = {});

// One classical trajectory, many representations: every weight is evolved
// quantum mechanically and compared against its own coherent family evaluated
// on the shared z(t).
struct StabilityReport {
    std::vector<double> weights;
    std::vector<double> min_fidelity;       // per weight
    std::vector<double> max_norm_drift;     // per weight
    std::vector<double> max_tail_mass;      // per weight
    std::vector<std::vector<double>> fidelity_tracks;  // per weight, per edge
    Trajectory classical;                   // the shared trajectory (scalar groups)
    TrajectoryN classical_n;                // U(N+1)
};

struct StabilityOptions {
    int segments = 2048;
    int trunc = 512;           // ladder-basis truncation (where applicable)
    int flow_substeps = 8;
    kernels::Exec exec = kernels::Exec::Parallel;
    double tail_abort = 1e-8;
};

StabilityReport stability_experiment(Group group, const std::vector<double>& weights,
                                     const CoefficientTrack& track, const PhasePoint& z0,
                                     const StabilityOptions& opts = {});

// Disc evolution computed twice: once by integrating the Riccati equation,
// once by the Mobius action of the auxiliary-oscillator propagator.
struct TwoPathReport {
    std::vector<double> times;
    std::vector<Complex> riccati;
    std::vector<Complex> mobius;
    double sup_distance = 0.0;          // hyperbolic metric
    double wronskian_drift = 0.0;
};

TwoPathReport mobius_vs_riccati_experiment(const CoefficientTrack& track, Complex z0, int points,
                                           int substeps = 16);

double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace gcs
