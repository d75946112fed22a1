#include "gcs/observables.hpp"

#include <cmath>
#include <random>

namespace gcs {

ObservableReport make_report(const std::string& name, Complex closed, Complex matrix) {
    ObservableReport r;
    r.name = name;
    r.closed_form_value = closed;
    r.matrix_value = matrix;
    r.abs_discrepancy = std::abs(closed - matrix);
    r.rel_discrepancy = r.abs_discrepancy / std::max(1.0, std::abs(closed));
    return r;
}

Complex mean_value(const StateVector& state, const CMatrix& op) {
    if (state.tail_mass > 1e-6)
        throw ConfigError("mean_value: state carries too much truncation tail (" +
                          std::to_string(state.tail_mass) + ")");
    if (state.basis.kind == BasisTag::Kind::TwoModeDiagonal) {
        if (op.rows() != state.dim() || op.cols() != state.dim())
            throw ConfigError("mean_value: operator dimension mismatch");
        double offdiag = 0.0;
        for (int i = 0; i < op.rows(); ++i)
            for (int j = 0; j < op.cols(); ++j)
                if (i != j) offdiag = std::max(offdiag, std::abs(op(i, j)));
        if (offdiag > 1e-12)
            throw ConfigError("mean_value: two-mode-diagonal states take Fock-diagonal operators");
        Complex acc{0.0, 0.0};
        for (int n = 0; n < state.dim(); ++n) acc += std::norm(state.c[n]) * op(n, n);
        return acc;
    }
    if (op.rows() != state.dim() || op.cols() != state.dim())
        throw ConfigError("mean_value: operator dimension mismatch");
    return state.c.dot(op * state.c);  // Eigen's dot conjugates the left factor
}

MeanTriple su2_means_closed(double j, Complex z) {
    double n = std::norm(z);
    MeanTriple t;
    t.raise = 2.0 * j * std::conj(z) / (1.0 + n);
    t.lower = 2.0 * j * z / (1.0 + n);
    t.weight = -j * (1.0 - n) / (1.0 + n);
    return t;
}

MeanTriple su11_means_closed(double k, Complex z) {
    double n = std::norm(z);
    if (n >= 1.0) throw ConfigError("su11 means need |z| < 1");
    MeanTriple t;
    t.raise = 2.0 * k * std::conj(z) / (1.0 - n);
    t.lower = 2.0 * k * z / (1.0 - n);
    t.weight = k * (1.0 + n) / (1.0 - n);
    return t;
}

double su11_q2_mean(double k, Complex z) {
    return 2.0 * k * std::norm(1.0 - z) / (1.0 - std::norm(z));
}

double su11_p2_mean(double k, Complex z) {
    return 2.0 * k * std::norm(1.0 + z) / (1.0 - std::norm(z));
}

double uncertainty_product(double k, Complex z) {
    return su11_q2_mean(k, z) * su11_p2_mean(k, z);
}

CMatrix su11_q2_operator(double k, int trunc) {
    LadderTriple t = su11_generators(k, trunc);
    return 2.0 * t.weight - t.raise - t.lower;
}

CMatrix su11_p2_operator(double k, int trunc) {
    LadderTriple t = su11_generators(k, trunc);
    return 2.0 * t.weight + t.raise + t.lower;
}

MagneticMeans magnetic_means(int N, Complex s, double rho) {
    if (std::abs(s) >= 1.0) throw ConfigError("magnetic means need |s| < 1");
    if (!(rho > 0.0)) throw ConfigError("magnetic means need rho > 0");
    double lam = (1.0 - std::norm(s)) / std::norm(1.0 - s);
    MagneticMeans m;
    m.x2 = rho * rho * (N + 1.0) / (2.0 * lam);
    double im2 = s.imag() * s.imag();
    double den = 1.0 - std::norm(s);
    double angular = 1.0 + 4.0 * im2 / (den * den);
    m.px2 = (N + 1.0) * lam / (2.0 * rho * rho) * angular;
    m.px2_printed = lam / (2.0 * rho * rho) * (1.0 + (N + 1.0) * 4.0 * im2 / (den * den));
    return m;
}

double singular_q2_mean(double k, Complex z, Complex eps) {
    double n = std::norm(z);
    if (n >= 1.0) throw ConfigError("singular q2 mean needs |z| < 1");
    return 2.0 * k / (1.0 - n) *
           (std::norm(eps) * (1.0 + n) - 2.0 * std::real(std::conj(z) * eps * eps));
}

ObservableReport thermal_average_check(double beta, double omega, const CMatrix& op_diag,
                                       int trunc) {
    if (!(beta * omega > 0.0)) throw ConfigError("thermal check needs beta * omega > 0");
    double z = std::exp(-0.5 * beta * omega);
    StateVector th = thermal_cs(z, trunc, 1e-14);
    int n = th.dim();
    if (op_diag.rows() < n)
        throw ComputeError("thermal check: operator truncation too small for this beta*omega");
    CMatrix op = op_diag.topLeftCorner(n, n);
    Complex lhs = mean_value(th, op);

    // canonical ensemble at matched truncation
    double Z = 0.0;
    Complex tr{0.0, 0.0};
    for (int m = 0; m < n; ++m) {
        double w = std::exp(-beta * omega * m);
        Z += w;
        tr += w * op(m, m);
    }
    return make_report("thermal average", tr / Z, lhs);
}

namespace {

Complex random_disc_point(std::mt19937& rng, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = rmax * std::sqrt(u(rng));
    double th = 2.0 * M_PI * u(rng);
    return std::polar(r, th);
}

}  // namespace

TypoResolution resolve_uncertainty_exponent(int draws, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uk(0.15, 2.5);
    TypoResolution res{"uncertainty-product denominator exponent", 2.0, 1.0, 0.0, draws};
    for (int i = 0; i < draws; ++i) {
        double k = uk(rng);
        Complex z = random_disc_point(rng, 0.75);
        double r2 = std::norm(z);
        if (r2 < 1e-3) continue;
        StateVector s = su11_cs(k, z, 96, 1e-13);
        int n = s.dim();
        double q2 = std::real(mean_value(s, su11_q2_operator(k, n)));
        double p2 = std::real(mean_value(s, su11_p2_operator(k, n)));
        double numer = 1.0 + r2 * r2 - 2.0 * r2 * std::cos(2.0 * std::arg(z));
        double fitted = std::log(4.0 * k * k * numer / (q2 * p2)) / std::log(1.0 - r2);
        res.max_deviation = std::max(res.max_deviation, std::abs(fitted - res.resolved_value));
    }
    return res;
}

TypoResolution resolve_j0_weight_factor(int draws, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> uj(1, 10);  // twice j
    TypoResolution res{"spin weight factor of <J0>", 1.0, 0.0, 0.0, draws};
    for (int i = 0; i < draws; ++i) {
        int tj = uj(rng);
        double j = 0.5 * tj;
        Complex z = random_disc_point(rng, 2.0);
        StateVector s = su2_cs(j, z);
        LadderTriple t = su2_generators(j);
        double matrix = std::real(mean_value(s, t.weight));
        double printed = -(1.0 - std::norm(z)) / (1.0 + std::norm(z));
        if (std::abs(printed) < 1e-3) continue;
        double factor = matrix / printed / j;  // should be 1 once the factor j is restored
        res.max_deviation = std::max(res.max_deviation, std::abs(factor - res.resolved_value));
    }
    return res;
}

TypoResolution resolve_un1_mean_prefactor(int draws, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> uN(1, 3), um(1, 4);
    TypoResolution res{"sector mean prefactor of <a_i^dag a_j>", 1.0, 0.5, 0.0, draws};
    for (int i = 0; i < draws; ++i) {
        int N = uN(rng), m = um(rng);
        CVector z(N);
        for (int q = 0; q < N; ++q) z[q] = random_disc_point(rng, 1.2) + Complex{0.3, 0.0};
        StateVector s = un1_cs(N, m, z);
        auto E = un1_generators(N, m);
        std::uniform_int_distribution<int> ui(1, N);
        int a = ui(rng), b = ui(rng);
        Complex matrix = mean_value(s, E[a][b]);
        Complex printed_unit = double(m) * std::conj(z[a - 1]) * z[b - 1] / (1.0 + z.squaredNorm());
        if (std::abs(printed_unit) < 1e-6) continue;
        Complex factor = matrix / printed_unit;
        res.max_deviation = std::max(res.max_deviation, std::abs(factor - res.resolved_value));
    }
    return res;
}

TypoResolution resolve_magnetic_px2_factor(int draws, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> uN(0, 3);
    std::uniform_real_distribution<double> ur(0.8, 1.4);
    TypoResolution res{"magnetic <p_x^2> against the (N+1)-weighted closed form", 1.0, 0.0, 0.0,
                       draws};
    double printed_worst = 1.0;
    for (int i = 0; i < draws; ++i) {
        int N = uN(rng);
        double rho = ur(rng);
        Complex s = random_disc_point(rng, 0.5);
        MagneticMeans m = magnetic_means(N, s, rho);
        Complex a = (1.0 + s) / (2.0 * rho * rho * (1.0 - s));

        // plane quadrature of psi ~ (x+iy)^N exp(-a(x^2+y^2))
        double L = std::sqrt(40.0 / (2.0 * a.real()));
        int pts = 301;
        double h = 2.0 * L / (pts - 1);
        double norm = 0.0, acc = 0.0;
        for (int ix = 0; ix < pts; ++ix) {
            double x = -L + ix * h;
            double wx = (ix == 0 || ix == pts - 1) ? 1.0 : (ix % 2 ? 4.0 : 2.0);
            for (int iy = 0; iy < pts; ++iy) {
                double y = -L + iy * h;
                double wy = (iy == 0 || iy == pts - 1) ? 1.0 : (iy % 2 ? 4.0 : 2.0);
                Complex w{x, y};
                double r2 = x * x + y * y;
                Complex body = std::pow(w, N) * std::exp(-a * r2);
                Complex grad =
                    (N > 0 ? double(N) * std::pow(w, N - 1) : Complex{0, 0}) * std::exp(-a * r2) -
                    2.0 * a * x * body;
                norm += wx * wy * std::norm(body);
                acc += wx * wy * std::norm(grad);
            }
        }
        double px2_quad = acc / norm;
        res.max_deviation = std::max(res.max_deviation, std::abs(px2_quad / m.px2 - 1.0));
        printed_worst = std::min(printed_worst, m.px2_printed / px2_quad);
    }
    res.printed_value = printed_worst;  // how small the printed form falls (1/(N+1) at real s)
    return res;
}

}  // namespace gcs
