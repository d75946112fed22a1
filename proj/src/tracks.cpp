#include "gcs/tracks.hpp"

#include <algorithm>
#include <cmath>

namespace gcs {

Channel Channel::constant(Complex v) {
    Channel c;
    c.kind = Kind::Constant;
    c.value = v;
    return c;
}

Channel Channel::piecewise(std::vector<double> times, std::vector<Complex> values) {
    if (times.size() != values.size() || times.empty())
        throw ConfigError("piecewise channel needs matching nonempty times/values");
    if (!std::is_sorted(times.begin(), times.end()))
        throw ConfigError("piecewise channel times must be increasing");
    Channel c;
    c.kind = Kind::Piecewise;
    c.times = std::move(times);
    c.values = std::move(values);
    return c;
}

Channel Channel::piecewise_real(std::vector<double> times, std::vector<double> values) {
    std::vector<Complex> cv(values.begin(), values.end());
    return piecewise(std::move(times), std::move(cv));
}

Channel Channel::sinusoid(double offset, double amplitude, double frequency, double phase) {
    Channel c;
    c.kind = Kind::Sinusoid;
    c.offset = offset;
    c.amplitude = amplitude;
    c.frequency = frequency;
    c.phase = phase;
    return c;
}

Complex Channel::eval(double t) const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::Sinusoid: return Complex{offset + amplitude * std::sin(frequency * t + phase), 0.0};
        case Kind::Piecewise: {
            auto it = std::upper_bound(times.begin(), times.end(), t);
            size_t i = (it == times.begin()) ? 0 : (it - times.begin() - 1);
            return values[i];
        }
        case Kind::Sampled: {
            if (t <= times.front()) return values.front();
            if (t >= times.back()) return values.back();
            auto it = std::upper_bound(times.begin(), times.end(), t);
            size_t i = it - times.begin() - 1;
            double w = (t - times[i]) / (times[i + 1] - times[i]);
            return (1.0 - w) * values[i] + w * values[i + 1];
        }
    }
    return {};
}

double Channel::eval_real(double t) const {
    Complex v = eval(t);
    return v.real();
}

Complex Channel::derivative(double t) const {
    switch (kind) {
        case Kind::Constant: return {0.0, 0.0};
        case Kind::Piecewise: return {0.0, 0.0};
        case Kind::Sinusoid:
            return Complex{amplitude * frequency * std::cos(frequency * t + phase), 0.0};
        case Kind::Sampled: {
            if (derivs.empty())
                throw ConfigError("sampled channel has no derivative data");
            if (t <= times.front()) return derivs.front();
            if (t >= times.back()) return derivs.back();
            auto it = std::upper_bound(times.begin(), times.end(), t);
            size_t i = it - times.begin() - 1;
            double w = (t - times[i]) / (times[i + 1] - times[i]);
            return (1.0 - w) * derivs[i] + w * derivs[i + 1];
        }
    }
    return {};
}

bool Channel::has_derivative() const {
    return kind != Kind::Sampled || !derivs.empty();
}

bool Channel::is_real() const {
    if (kind == Kind::Sinusoid) return true;
    if (kind == Kind::Constant) return value.imag() == 0.0;
    for (const auto& v : values)
        if (v.imag() != 0.0) return false;
    return true;
}

std::vector<double> Channel::breakpoints() const {
    if (kind == Kind::Piecewise || kind == Kind::Sampled)
        return times;
    return {};
}

void CoefficientTrack::validate() const {
    if (!(T > 0.0)) throw ConfigError("track: time horizon T must be > 0");
    if (h0 && !h0->is_real()) throw ConfigError("track.h0: must be real-valued");
    if (omega && !omega->is_real()) throw ConfigError("track.omega: must be real-valued");
    if (b && !b->is_real()) throw ConfigError("track.b: must be real-valued");
    if (hmat.size() > 1 && hmat_times.size() != hmat.size())
        throw ConfigError("track.hmat: piecewise matrices need matching times");
    for (const auto& hm : hmat) require_hermitian(hm, 1e-12, "track.hmat");
}

HamCoeffs CoefficientTrack::su_coeffs(double t) const {
    if (h0 || h) {
        HamCoeffs c;
        c.h0 = h0 ? h0->eval_real(t) : 0.0;
        c.h = h ? h->eval(t) : Complex{0.0, 0.0};
        return c;
    }
    if (omega) return friction_oscillator_coeffs(omega_at(t), b_at(t));
    throw ConfigError("track: need either (h0, h) or (omega, b) channels");
}

HamCoeffs CoefficientTrack::hw_coeffs(double t) const {
    HamCoeffs c;
    c.omega = omega ? omega->eval_real(t) : 0.0;
    c.F = F ? F->eval(t) : Complex{0.0, 0.0};
    return c;
}

CMatrix CoefficientTrack::hmat_at(double t) const {
    if (hmat.empty()) throw ConfigError("track.hmat: no coefficient matrices");
    if (hmat.size() == 1) return hmat[0];
    auto it = std::upper_bound(hmat_times.begin(), hmat_times.end(), t);
    size_t i = (it == hmat_times.begin()) ? 0 : (it - hmat_times.begin() - 1);
    return hmat[i];
}

double CoefficientTrack::omega_at(double t) const {
    return omega ? omega->eval_real(t) : 0.0;
}

double CoefficientTrack::b_at(double t) const {
    return b ? b->eval_real(t) : 0.0;
}

double CoefficientTrack::omega_sq_aux(double t) const {
    double w = omega_at(t);
    double bb = b_at(t);
    double bdot = 0.0;
    if (b) {
        if (!b->has_derivative())
            throw ConfigError("track.b: sampled channel without derivative data cannot enter Omega^2");
        bdot = b->derivative(t).real();
    }
    return w * w - bb * bb - bdot;
}

std::vector<double> CoefficientTrack::breakpoints() const {
    std::vector<double> bp;
    auto add = [&bp, this](const std::optional<Channel>& ch) {
        if (!ch) return;
        for (double t : ch->breakpoints())
            if (t > 0.0 && t < T) bp.push_back(t);
    };
    add(omega);
    add(F);
    add(b);
    add(h0);
    add(h);
    for (double t : hmat_times)
        if (t > 0.0 && t < T) bp.push_back(t);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

SampledSegments midpoint_sample(const CoefficientTrack& track, const RepLabel& rep, int segments) {
    if (segments < 1) throw ConfigError("segments must be >= 1");
    SampledSegments s;
    s.edges.resize(segments + 1);
    for (int i = 0; i <= segments; ++i) s.edges[i] = track.T * i / segments;
    s.coeffs.reserve(segments);
    for (int i = 0; i < segments; ++i) {
        double tm = 0.5 * (s.edges[i] + s.edges[i + 1]);
        switch (rep.group) {
            case Group::HeisenbergWeyl: s.coeffs.push_back(track.hw_coeffs(tm)); break;
            case Group::SU2:
            case Group::SU11: s.coeffs.push_back(track.su_coeffs(tm)); break;
            case Group::UN1: {
                HamCoeffs c;
                c.hmat = track.hmat_at(tm);
                s.coeffs.push_back(std::move(c));
                break;
            }
        }
    }
    return s;
}

}  // namespace gcs
