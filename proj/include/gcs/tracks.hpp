#pragma once

#include <optional>
#include <vector>

#include "gcs/algebra.hpp"
#include "gcs/types.hpp"

namespace gcs {

// One time-dependent coefficient channel on [0, T].  Piecewise channels hold
// right-open segments [times[i], times[i+1]); sampled channels interpolate
// linearly and carry optional derivative data.
struct Channel {
    enum class Kind { Constant, Piecewise, Sinusoid, Sampled };
    Kind kind = Kind::Constant;

    Complex value{0.0, 0.0};                    // Constant
    std::vector<double> times;                  // Piecewise / Sampled breakpoints
    std::vector<Complex> values;                // Piecewise / Sampled values
    std::vector<Complex> derivs;                // Sampled, optional
    double offset = 0.0, amplitude = 0.0, frequency = 1.0, phase = 0.0;  // Sinusoid

    static Channel constant(Complex v);
    static Channel constant(double v) { return constant(Complex{v, 0.0}); }
    static Channel piecewise(std::vector<double> times, std::vector<Complex> values);
    static Channel piecewise_real(std::vector<double> times, std::vector<double> values);
    static Channel sinusoid(double offset, double amplitude, double frequency, double phase = 0.0);

    Complex eval(double t) const;
    double eval_real(double t) const;
    // d/dt of the channel; piecewise-constant channels differentiate to zero
    // inside segments (joints are handled by the integrators, which align
    // steps with the breakpoints).
    Complex derivative(double t) const;
    bool has_derivative() const;
    bool is_real() const;
    // interior breakpoints in (0, T), for integrator step alignment
    std::vector<double> breakpoints() const;
};

// Hamiltonian coefficients over a time window.  Channels not used by a given
// group are simply ignored by the consumers.
struct CoefficientTrack {
    double T = 1.0;

    std::optional<Channel> omega;   // real: HW rotation / oscillator frequency
    std::optional<Channel> F;       // complex: HW drive
    std::optional<Channel> b;       // real: friction coefficient
    std::optional<Channel> h0;      // real: weight-generator coefficient
    std::optional<Channel> h;       // complex: ladder coefficient
    double g = 0.0;                 // singular-term strength (no effect on the flow)
    std::vector<CMatrix> hmat;      // U(N+1): constant or piecewise Hermitian matrices
    std::vector<double> hmat_times; // piecewise breakpoints for hmat

    void validate() const;

    // (h0, h) at time t: direct channels if given, otherwise mapped from the
    // oscillator channels via h0 = 1 + omega^2, h = (1 - omega^2)/2 - i b.
    HamCoeffs su_coeffs(double t) const;
    HamCoeffs hw_coeffs(double t) const;
    CMatrix hmat_at(double t) const;

    double omega_at(double t) const;
    double b_at(double t) const;
    // Squared frequency of the auxiliary oscillator: Omega^2 = omega^2 - b^2 - db/dt.
    double omega_sq_aux(double t) const;

    std::vector<double> breakpoints() const;
};

// Midpoint sampling of a track into piecewise-constant segments (used by the
// quantum oracle; classical flows evaluate channels directly).
struct SampledSegments {
    std::vector<double> edges;   // segments+1 edges over [0, T]
    std::vector<HamCoeffs> coeffs;
};
SampledSegments midpoint_sample(const CoefficientTrack& track, const RepLabel& rep, int segments);

}  // namespace gcs
