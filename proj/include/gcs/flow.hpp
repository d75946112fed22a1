#pragma once

#include <functional>
#include <vector>

#include "gcs/tracks.hpp"
#include "gcs/types.hpp"

namespace gcs {

// ---------------------------------------------------------------------------
// Equations of motion on the classical phase spaces.  None of the right
// sides takes a representation weight: the flows are shared by every
// representation of the group.

// Plane:   i zdot = omega z + F
Complex glauber_rhs(Complex z, double omega, Complex F);

// Sphere chart:  i zdot = conj(h) + h0 z - h z^2
Complex su2_riccati_rhs(Complex z, double h0, Complex h);

// Disc:    i zdot = conj(h) z^2 + h0 z + h
Complex su11_riccati_rhs(Complex z, double h0, Complex h);

// ---------------------------------------------------------------------------
// Fixed-step classical integrator (RK4 over two half steps, with the
// one-step Richardson difference as local error estimate).

struct IntegratorControls {
    int substeps = 8;                  // integration steps per output interval
    double error_budget = 1e-6;        // max allowed relative local error estimate
    bool disc_guard = false;           // abort when |z| reaches the unit circle
    bool sphere_chart_switch = false;  // swap to the antipodal chart near the pole
    double chart_threshold = 1e6;      // pole-crossing runs need a lower value
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Complex> values;      // always reported in the primary chart
    std::vector<Chart> charts;        // chart the integrator was in
    double max_local_error = 0.0;     // Richardson estimate per unit time, relative
    int chart_switches = 0;
};

// rhs(t, z, chart) -> zdot.  The grid must be strictly increasing; interior
// track breakpoints are passed separately so steps land on them exactly.
using FlowRhs = std::function<Complex(double, Complex, Chart)>;

Trajectory integrate(const FlowRhs& rhs, Complex z0, const std::vector<double>& grid,
                     const std::vector<double>& breakpoints, const IntegratorControls& controls);

std::vector<double> uniform_grid(double T, int points);

// Convenience drivers for the three scalar flows.
Trajectory glauber_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                        const IntegratorControls& controls = {});
Trajectory su2_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                    const IntegratorControls& controls = {});
Trajectory su11_flow(Complex z0, const CoefficientTrack& track, const std::vector<double>& grid,
                     IntegratorControls controls = {});

// Quadrature closed form of the plane flow,
//   z(t) = (z0 - i int_0^t F e^{+i Phi} dt') e^{-i Phi(t)},  Phi = int_0^t omega,
// with Simpson integrals refined per output interval.
std::vector<Complex> glauber_closed_form(Complex z0, const CoefficientTrack& track,
                                         const std::vector<double>& grid, int quad_points = 64);

// ---------------------------------------------------------------------------
// C^N flow through the projective linear lift w = (1, z), i wdot = hmat w.

struct TrajectoryN {
    std::vector<double> times;
    std::vector<CVector> values;   // chart coordinates z_i = w_i / w_0
    double max_local_error = 0.0;
};

TrajectoryN un1_flow(const CVector& z0, const CoefficientTrack& track,
                     const std::vector<double>& grid, const IntegratorControls& controls = {});

// ---------------------------------------------------------------------------
// Kaehler-form consistency: assemble i zdot = (2w)^{-1} (1 +- |z|^2)^2 dH/dz*
// from the classical Hamiltonian by central finite differences and return the
// relative deviation from the closed Riccati right side.
double kahler_flow_residual(Group group, double weight, Complex z, double h0, Complex h,
                            double fd_step = 1e-6);

// Classical Hamiltonian mean values (the generating functions of the flows).
double su2_classical_hamiltonian(double j, Complex z, double h0, Complex h);
double su11_classical_hamiltonian(double k, Complex z, double h0, Complex h);

// ---------------------------------------------------------------------------
// Auxiliary-oscillator (Ermakov) solution eps = rho e^{i gamma} of
//   eps'' + Omega^2(t) eps = 0,  Omega^2 = omega^2 - b^2 - bdot,
// with the Wronskian normalization rho^2 gamma_dot = Im(eps* eps') = 1.

struct EpsilonSolution {
    std::vector<double> times;
    std::vector<Complex> eps;
    std::vector<Complex> eps_dot;
    std::vector<double> rho;
    std::vector<double> gamma;      // unwrapped phase
    double max_wronskian_drift = 0.0;

    int index_of(double t) const;
};

struct ErmakovInit {
    Complex eps0;
    Complex eps_dot0;
    // stationary start: rho = Omega^{-1/2}, gamma = 0, rho_dot = 0
    static ErmakovInit stationary(double omega_sq0);
    // propagator start: eps(0) = 1, eps'(0) = b(0) + i, so that the Mobius
    // element built from eps is the identity at t = 0
    static ErmakovInit propagator(double b0);
};

EpsilonSolution ermakov_solve(const CoefficientTrack& track, const std::vector<double>& grid,
                              const ErmakovInit& init, int substeps = 8);

// ---------------------------------------------------------------------------
// SU(1,1) disc action z -> (a z + c) / (c* z + a*).

struct MobiusElement {
    Complex a{1.0, 0.0};
    Complex c{0.0, 0.0};

    double det() const { return std::norm(a) - std::norm(c); }
    MobiusElement normalized() const;
    MobiusElement inverse() const;
    static MobiusElement identity() { return {}; }
};

MobiusElement mobius_compose(const MobiusElement& m2, const MobiusElement& m1);
Complex mobius_apply(const MobiusElement& m, Complex z);

// Pointwise maps built from (rho, gamma) alone.  PhaseMinus is the orientation
// consistent with the disc flow used here; PhasePlus is its complex-conjugate
// convention.  Both reproduce the evolution only for the stationary family
// (rho_dot = b rho, rho^2 = 1/omega); the general propagator below does not
// have that restriction.
enum class EpsilonConvention { PhasePlus, PhaseMinus };
MobiusElement mobius_from_epsilon(const EpsilonSolution& eps, double t, EpsilonConvention conv);

// Exact disc propagator of the friction-oscillator family from the
// auxiliary solution with ErmakovInit::propagator initial conditions:
//   a = ((1 - i b) eps* + i eps_dot*)/2,  c = -((1 - i b) eps + i eps_dot)/2.
// det = Im(eps* eps_dot) = 1 identically.
MobiusElement mobius_propagator(const EpsilonSolution& eps, double b_at_t, double t);

// Hyperbolic distance 2 atanh |(z - w)/(1 - conj(w) z)| on the unit disc.
double disc_distance(Complex z, Complex w);

}  // namespace gcs
