#include "gcs/states.hpp"

#include <algorithm>
#include <cmath>

namespace gcs {

namespace {

// closed-form coefficient families are exactly normalized, so the truncation
// tail is 1 - |stored|^2; grow the basis until it is small enough
template <typename Builder>
StateVector auto_grow(int trunc, double tail_tol, const std::string& what, Builder build) {
    int n = std::max(trunc, 2);
    while (true) {
        StateVector s = build(n);
        s.tail_mass = std::max(0.0, 1.0 - s.c.squaredNorm());
        if (s.tail_mass <= tail_tol) return s;
        if (n >= kMaxAutoTrunc)
            throw ComputeError(what + ": tail tolerance unreachable at truncation " +
                               std::to_string(n));
        n = std::min(2 * n, kMaxAutoTrunc);
    }
}

}  // namespace

StateVector glauber_cs(Complex z, int trunc, double tail_tol) {
    return auto_grow(trunc, tail_tol, "glauber_cs", [z](int n) {
        StateVector s;
        s.basis = {BasisTag::Kind::Fock, 0.0, 0, 0, 0};
        s.c.resize(n);
        s.c[0] = std::exp(-0.5 * std::norm(z));
        for (int m = 0; m + 1 < n; ++m) s.c[m + 1] = s.c[m] * z / std::sqrt(m + 1.0);
        return s;
    });
}

StateVector su2_cs(double j, Complex z, Chart chart) {
    RepLabel rep = RepLabel::su2(j);
    int n = rep.dim();
    int tj = rep.twice_j;
    StateVector s;
    s.basis = {BasisTag::Kind::SU2, 0.5 * tj, 0, 0, 0};
    s.c.resize(n);
    double nz = std::norm(z);
    if (chart == Chart::Primary) {
        s.c[0] = std::pow(1.0 + nz, -0.5 * tj);
        for (int m = 0; m + 1 < n; ++m)
            s.c[m + 1] = s.c[m] * z * std::sqrt((tj - m) / (m + 1.0));
    } else {
        // same family built around the top weight vector; w ~ 1/z up to phase
        s.c[n - 1] = std::pow(1.0 + nz, -0.5 * tj);
        for (int m = n - 1; m > 0; --m)
            s.c[m - 1] = s.c[m] * z * std::sqrt(m / (tj - m + 1.0));
    }
    s.tail_mass = 0.0;
    return s;
}

StateVector su11_cs(double k, Complex z, int trunc, double tail_tol) {
    if (!(k > 0.0)) throw ConfigError("su11_cs: k must be > 0");
    if (std::abs(z) >= 1.0) throw ConfigError("su11_cs: |z| must be < 1");
    return auto_grow(trunc, tail_tol, "su11_cs", [k, z](int n) {
        StateVector s;
        s.basis = {BasisTag::Kind::SU11, k, 0, 0, 0};
        s.c.resize(n);
        s.c[0] = std::pow(1.0 - std::norm(z), k);
        for (int m = 0; m + 1 < n; ++m)
            s.c[m + 1] = s.c[m] * z * std::sqrt((2.0 * k + m) / (m + 1.0));
        return s;
    });
}

StateVector parity_cs(int parity, Complex z, int trunc, double tail_tol) {
    if (parity != 1 && parity != -1) throw ConfigError("parity_cs: parity must be +1 or -1");
    if (std::abs(z) >= 1.0) throw ConfigError("parity_cs: |z| must be < 1");
    return auto_grow(trunc, tail_tol, "parity_cs", [parity, z](int n) {
        StateVector s;
        s.basis = {BasisTag::Kind::Fock, 0.0, 0, 0, 0};
        s.c = CVector::Zero(n);
        if (parity > 0) {
            Complex c = std::pow(1.0 - std::norm(z), 0.25);
            for (int m = 0; 2 * m < n; ++m) {
                s.c[2 * m] = c;
                c *= z * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
            }
        } else {
            Complex c = std::pow(1.0 - std::norm(z), 0.75);
            for (int m = 0; 2 * m + 1 < n; ++m) {
                s.c[2 * m + 1] = c;
                c *= z * std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0));
            }
        }
        return s;
    });
}

StateVector thermal_cs(double z, int trunc, double tail_tol) {
    if (z < 0.0 || z >= 1.0) throw ConfigError("thermal_cs: need 0 <= z < 1");
    return auto_grow(trunc, tail_tol, "thermal_cs", [z](int n) {
        StateVector s;
        s.basis = {BasisTag::Kind::TwoModeDiagonal, 0.5, 0, 0, 0};
        s.c.resize(n);
        double c = std::sqrt(1.0 - z * z);
        for (int m = 0; m < n; ++m) {
            s.c[m] = c;
            c *= z;
        }
        return s;
    });
}

StateVector un1_cs(int N, int m, const CVector& z) {
    RepLabel rep = RepLabel::un1(N, m);
    if (z.size() != N) throw ConfigError("un1_cs: z must have N components");
    auto basis = un1_sector_basis(N, m);
    StateVector s;
    s.basis = {BasisTag::Kind::UN1Sector, 0.0, N, m, 0};
    s.c.resize(rep.dim());
    double nz = 1.0 + z.squaredNorm();
    double logm = log_factorial(m);
    for (size_t idx = 0; idx < basis.size(); ++idx) {
        const auto& mi = basis[idx];
        double lg = logm;
        for (int i = 0; i <= N; ++i) lg -= log_factorial(mi[i]);
        Complex mono{1.0, 0.0};
        for (int i = 1; i <= N; ++i)
            for (int p = 0; p < mi[i]; ++p) mono *= z[i - 1];
        s.c[idx] = std::exp(0.5 * lg) * mono;
    }
    s.c *= std::pow(nz, -0.5 * m);
    s.tail_mass = 0.0;
    return s;
}

StateVector schwinger_embed(const StateVector& su2_state) {
    if (su2_state.basis.kind != BasisTag::Kind::SU2)
        throw ConfigError("schwinger_embed expects an SU2-basis state");
    StateVector s = su2_state;
    s.basis.kind = BasisTag::Kind::TwoModeSector;
    s.basis.N = static_cast<int>(std::lround(2.0 * su2_state.basis.weight));
    return s;
}

StateVector parity_from_su11(const StateVector& su11_state) {
    double k = su11_state.basis.weight;
    int parity;
    if (std::abs(k - 0.25) < 1e-12) parity = 0;
    else if (std::abs(k - 0.75) < 1e-12) parity = 1;
    else throw ConfigError("parity_from_su11: only k = 1/4 and k = 3/4 embed in the Fock basis");
    int n = su11_state.dim();
    StateVector s;
    s.basis = {BasisTag::Kind::Fock, 0.0, 0, 0, 0};
    s.c = CVector::Zero(2 * n);
    for (int m = 0; m < n; ++m) s.c[2 * m + parity] = su11_state.c[m];
    s.tail_mass = su11_state.tail_mass;
    return s;
}

WavepacketCheck wavepacket_identity_check(Complex alpha, Complex z, int trunc_per_mode) {
    const int T = trunc_per_mode;
    if (T < 2) throw ConfigError("wavepacket check needs trunc_per_mode >= 2");
    const double root = std::sqrt(1.0 + std::norm(z));
    auto at = [T](CVector& v, int na, int nb) -> Complex& { return v[na * T + nb]; };

    // tower side: sum_N alpha^N / sqrt(N!) |N; z>
    CVector tower = CVector::Zero(T * T);
    Complex wN{1.0, 0.0};  // alpha^N / sqrt(N!)
    for (int N = 0; N <= 2 * (T - 1); ++N) {
        if (N > 0) wN *= alpha / std::sqrt(double(N));
        if (std::abs(wN) < 1e-20 && N > std::abs(alpha)) break;
        Complex coef = std::pow(root, -double(N));  // (1+|z|^2)^{-N/2} sqrt(C(N,0)) z^0
        for (int n = 0; n <= N; ++n) {
            if (n < T && N - n < T) at(tower, n, N - n) += wN * coef;
            coef *= z * std::sqrt((N - n) / (n + 1.0));
        }
    }

    // displaced side: exp(alpha (z a^dag + b^dag)/root) |0,0> by series
    CVector displaced = CVector::Zero(T * T);
    CVector term = CVector::Zero(T * T);
    term[0] = 1.0;
    displaced[0] = 1.0;
    Complex za = alpha * z / root, ba = alpha / root;
    for (int order = 1; order <= 8 * T; ++order) {
        CVector next = CVector::Zero(T * T);
        for (int na = 0; na < T; ++na)
            for (int nb = 0; nb < T; ++nb) {
                Complex v = term[na * T + nb];
                if (v == Complex{0.0, 0.0}) continue;
                if (na + 1 < T) next[(na + 1) * T + nb] += za * std::sqrt(na + 1.0) * v;
                if (nb + 1 < T) next[na * T + nb + 1] += ba * std::sqrt(nb + 1.0) * v;
            }
        next /= double(order);
        displaced += next;
        term.swap(next);
        if (term.norm() < 1e-18) break;
    }

    // product Glauber side (unnormalized): lambda^na mu^nb / sqrt(na! nb!)
    CVector product(T * T);
    for (int na = 0; na < T; ++na)
        for (int nb = 0; nb < T; ++nb) {
            Complex c = std::pow(za, na) * std::pow(ba, nb) *
                        std::exp(-0.5 * (log_factorial(na) + log_factorial(nb)));
            at(product, na, nb) = c;
        }

    // ladder eigenvalue: (A_z - alpha) applied to the normalized displaced state
    CVector psi = displaced / displaced.norm();
    CVector resid = CVector::Zero(T * T);
    for (int na = 0; na < T; ++na)
        for (int nb = 0; nb < T; ++nb) {
            Complex acc = -alpha * psi[na * T + nb];
            if (na + 1 < T) acc += std::conj(z) / root * std::sqrt(na + 1.0) * psi[(na + 1) * T + nb];
            if (nb + 1 < T) acc += 1.0 / root * std::sqrt(nb + 1.0) * psi[na * T + nb + 1];
            resid[na * T + nb] = acc;
        }

    WavepacketCheck out;
    out.tower_vs_displaced = (tower - displaced).norm();
    out.displaced_vs_product = (displaced - product).norm();
    out.ladder_eigen_residual = resid.norm();
    return out;
}

// ---------------------------------------------------------------------------

double gaussian_width_lambda(Complex z) {
    double den = std::norm(1.0 - z);
    if (den == 0.0) throw ConfigError("lambda undefined at z = 1");
    return (1.0 - std::norm(z)) / den;
}

WavefunctionParams WavefunctionParams::parity_family(int sign, Complex z) {
    if (sign != 1 && sign != -1) throw ConfigError("parity must be +1 or -1");
    WavefunctionParams p;
    p.family = Family::ParityGaussian;
    p.parity = sign;
    p.a = 0.5 * (1.0 + z) / (1.0 - z);
    if (!(p.a.real() > 0.0)) throw ConfigError("wavefunction width must satisfy Re a > 0");
    double beta = 2.0 * p.a.real();
    p.norm_const = (sign > 0) ? std::pow(beta / M_PI, 0.25)
                              : std::sqrt(2.0 * std::pow(beta, 1.5) / std::sqrt(M_PI));
    return p;
}

WavefunctionParams WavefunctionParams::singular_family(double d, Complex z) {
    if (!(d > 0.0)) throw ConfigError("singular family needs d > 0");
    WavefunctionParams p;
    p.family = Family::Singular;
    p.d = d;
    p.a = 0.5 * (1.0 + z) / (1.0 - z);
    if (!(p.a.real() > 0.0)) throw ConfigError("wavefunction width must satisfy Re a > 0");
    double beta = 2.0 * p.a.real();
    p.norm_const = std::sqrt(2.0 * std::pow(beta, d + 1.0) / std::tgamma(d + 1.0));
    return p;
}

WavefunctionParams WavefunctionParams::magnetic_family(int N, Complex s, double rho) {
    if (N < 0) throw ConfigError("magnetic family needs N >= 0");
    if (!(rho > 0.0)) throw ConfigError("magnetic family needs rho > 0");
    if (std::abs(s) >= 1.0) throw ConfigError("magnetic family needs |s| < 1");
    WavefunctionParams p;
    p.family = Family::Magnetic;
    p.N = N;
    p.a = (1.0 + s) / (2.0 * rho * rho * (1.0 - s));
    if (!(p.a.real() > 0.0)) throw ConfigError("wavefunction width must satisfy Re a > 0");
    p.norm_const =
        std::sqrt(std::pow(4.0 * p.a.real(), N + 1.0) / (M_PI * std::tgamma(N + 1.0)));
    return p;
}

Complex eval_wavefunction(const WavefunctionParams& p, double x) {
    switch (p.family) {
        case WavefunctionParams::Family::ParityGaussian: {
            Complex g = std::exp(-p.a * x * x);
            return p.parity > 0 ? p.norm_const * g : p.norm_const * x * g;
        }
        case WavefunctionParams::Family::Singular: {
            if (x <= 0.0) return {0.0, 0.0};
            return p.norm_const * std::pow(x, p.d + 0.5) * std::exp(-p.a * x * x);
        }
        case WavefunctionParams::Family::Magnetic: {
            if (x < 0.0) return {0.0, 0.0};
            return p.norm_const * std::pow(x, p.N) * std::exp(-2.0 * p.a * x * x);
        }
    }
    return {0.0, 0.0};
}

double density(const WavefunctionParams& p, double x) {
    return std::norm(eval_wavefunction(p, x));
}

double density_normalization(const WavefunctionParams& p, int points) {
    if (points % 2 == 0) ++points;
    double cut = 0.0;
    // width scale from the Gaussian tail
    double beta = (p.family == WavefunctionParams::Family::Magnetic) ? 4.0 * p.a.real()
                                                                     : 2.0 * p.a.real();
    cut = std::sqrt(50.0 / beta) + 10.0;
    double lo = (p.family == WavefunctionParams::Family::ParityGaussian) ? -cut : 0.0;
    double h = (cut - lo) / (points - 1);
    auto f = [&p](double x) {
        double w = density(p, x);
        if (p.family == WavefunctionParams::Family::Magnetic) w *= 2.0 * M_PI * x;
        return w;
    };
    double sum = f(lo) + f(cut);
    for (int i = 1; i + 1 < points; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

double laguerre(int n, double alpha, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int i = 1; i < n; ++i) {
        double lp1 = ((2.0 * i + 1.0 + alpha - x) * l - (i + alpha) * lm1) / (i + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

Complex singular_eigenfunction(double d, int n, Complex eps, Complex eps_dot, double b, double x) {
    if (!(d > 0.0)) throw ConfigError("singular eigenfunction needs d > 0");
    if (n < 0) throw ConfigError("singular eigenfunction needs n >= 0");
    if (x <= 0.0) return {0.0, 0.0};
    double rho2 = std::norm(eps);
    double gdot = std::imag(std::conj(eps) * eps_dot) / rho2;  // Wronskian / rho^2
    if (!(gdot > 0.0)) throw ConfigError("singular eigenfunction needs gamma_dot > 0");
    double gamma = std::arg(eps);
    double logc = 0.5 * (std::log(2.0) + (d + 1.0) * std::log(gdot) + log_factorial(n) -
                         std::lgamma(n + d + 1.0));
    Complex phase = std::exp(Complex{0.0, -2.0 * n * gamma} +
                             0.5 * I_UNIT * (eps_dot / eps - b) * x * x);
    return std::exp(logc) * std::pow(x, d + 0.5) * phase * laguerre(n, d, gdot * x * x);
}

Complex singular_eigenfunction(double d, int n, const EpsilonSolution& eps, double t, double b,
                               double x) {
    int i = eps.index_of(t);
    return singular_eigenfunction(d, n, eps.eps[i], eps.eps_dot[i], b, x);
}

}  // namespace gcs
