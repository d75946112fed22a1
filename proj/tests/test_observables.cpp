#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcs/observables.hpp"

using namespace gcs;

namespace {

CVector exp_apply_series(const CMatrix& M, const CVector& v0, int max_order = 500) {
    CVector acc = v0, term = v0;
    for (int k = 1; k <= max_order; ++k) {
        term = (M * term) / double(k);
        acc += term;
        if (term.norm() < 1e-18) break;
    }
    return acc;
}

}  // namespace

TEST_CASE("mean_value basics") {
    StateVector vac = glauber_cs(Complex{0, 0}, 16);
    CMatrix a = fock_lower(16);
    CMatrix n = a.adjoint() * a;
    CHECK(std::abs(mean_value(vac, n)) < 1e-15);

    CHECK_THROWS_AS(mean_value(vac, fock_lower(8)), ConfigError);
}

TEST_CASE("closed means match matrix contractions") {
    // disc states
    for (double k : {0.25, 0.75, 1.5}) {
        for (Complex z : {Complex{0.0, 0.4}, Complex{0.3, -0.5}, Complex{0.0, 0.0}}) {
            StateVector s = su11_cs(k, z, 96, 1e-13);
            auto t = su11_generators(k, s.dim());
            auto closed = su11_means_closed(k, z);
            CHECK(std::abs(mean_value(s, t.raise) - closed.raise) < 1e-10);
            CHECK(std::abs(mean_value(s, t.lower) - closed.lower) < 1e-10);
            CHECK(std::abs(mean_value(s, t.weight) - closed.weight) < 1e-10);
        }
    }
    // spin states, including the fiducial value <J0> = -j
    for (double j : {0.5, 2.0, 4.5}) {
        for (Complex z : {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.6, -1.1}}) {
            StateVector s = su2_cs(j, z);
            auto t = su2_generators(j);
            auto closed = su2_means_closed(j, z);
            CHECK(std::abs(mean_value(s, t.raise) - closed.raise) < 1e-12);
            CHECK(std::abs(mean_value(s, t.lower) - closed.lower) < 1e-12);
            CHECK(std::abs(mean_value(s, t.weight) - closed.weight) < 1e-12);
        }
        CHECK(std::abs(su2_means_closed(j, Complex{0, 0}).weight - Complex{-j, 0}) < 1e-15);
        CHECK(std::abs(su2_means_closed(j, Complex{1.0, 0.0}).weight) < 1e-15);  // equator
    }
    CHECK(std::abs(su11_means_closed(0.8, Complex{0, 0}).weight - Complex{0.8, 0}) < 1e-15);
}

TEST_CASE("quadrature means and the uncertainty floor") {
    // vacuum: <q^2> = <p^2> = 1/2, product = 1/4 = 4 k^2 at k = 1/4
    CHECK(su11_q2_mean(0.25, Complex{0, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(su11_p2_mean(0.25, Complex{0, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(uncertainty_product(0.25, Complex{0, 0}) == doctest::Approx(0.25).epsilon(1e-14));

    // real nonnegative labels minimize the product
    CHECK(uncertainty_product(0.25, Complex{0.5, 0.0}) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(uncertainty_product(0.25, Complex{0.0, 0.5}) > 0.25 + 1e-3);

    // floor and equality pattern over random draws
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        double k = 0.25 + 2.0 * u(rng);
        Complex z = std::polar(0.95 * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
        double prod = uncertainty_product(k, z);
        CHECK(prod >= 4.0 * k * k - 1e-10);
        if (std::abs(std::arg(z)) > 0.01 && std::abs(z) > 0.1)
            CHECK(prod > 4.0 * k * k + 1e-8);
    }

    // matrix route through the ladder-basis quadrature operators
    for (double k : {0.25, 0.75}) {
        Complex z{0.4, 0.3};
        StateVector s = su11_cs(k, z, 128, 1e-13);
        double q2 = std::real(mean_value(s, su11_q2_operator(k, s.dim())));
        double p2 = std::real(mean_value(s, su11_p2_operator(k, s.dim())));
        CHECK(std::abs(q2 - su11_q2_mean(k, z)) < 1e-9);
        CHECK(std::abs(p2 - su11_p2_mean(k, z)) < 1e-9);
    }
}

TEST_CASE("magnetic means: closed product and quadrature oracle") {
    // trivial case
    auto m0 = magnetic_means(0, Complex{0, 0}, 1.0);
    CHECK(m0.x2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m0.px2 == doctest::Approx(0.5).epsilon(1e-14));

    // real labels minimize the product at (N+1)^2/4 = k^2; the printed
    // momentum mean would give (N+1)/4 instead
    for (int N : {0, 1, 2, 4}) {
        for (double z : {0.0, 0.3, -0.45}) {
            auto m = magnetic_means(N, Complex{z, 0.0}, 1.1);
            double k = 0.5 * (N + 1.0);
            CHECK(std::abs(m.x2 * m.px2 - k * k) < 1e-12);
            CHECK(std::abs(m.x2 * m.px2_printed - (N + 1.0) / 4.0) < 1e-12);
            // consistency with the disc-state quadrature means at weight k
            CHECK(std::abs(m.px2 - su11_p2_mean(k, Complex{z, 0.0}) / (2.0 * 1.1 * 1.1)) < 1e-12);
            CHECK(std::abs(m.x2 - su11_q2_mean(k, Complex{z, 0.0}) * 1.1 * 1.1 / 2.0) < 1e-12);
        }
    }

    // 2D quadrature over the physical plane for complex labels
    for (int N : {0, 1, 2}) {
        Complex s{0.25, -0.3};
        double rho = 1.15;
        auto m = magnetic_means(N, s, rho);
        Complex a = (1.0 + s) / (2.0 * rho * rho * (1.0 - s));

        // psi ~ (x + i y)^N exp(-a (x^2 + y^2)); p_x^2 by analytic gradient
        double L = std::sqrt(40.0 / (2.0 * a.real()));
        int pts = 501;
        double h = 2.0 * L / (pts - 1);
        double norm = 0.0, x2m = 0.0, px2m = 0.0;
        for (int i = 0; i < pts; ++i) {
            double x = -L + i * h;
            double wx = (i == 0 || i == pts - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            for (int jj = 0; jj < pts; ++jj) {
                double y = -L + jj * h;
                double wy = (jj == 0 || jj == pts - 1) ? 1.0 : (jj % 2 ? 4.0 : 2.0);
                Complex w{x, y};
                double r2 = x * x + y * y;
                Complex body = std::pow(w, N) * std::exp(-a * r2);
                Complex grad =
                    (N > 0 ? double(N) * std::pow(w, N - 1) : Complex{0, 0}) * std::exp(-a * r2) -
                    2.0 * a * x * body;
                double ww = wx * wy;
                norm += ww * std::norm(body);
                x2m += ww * x * x * std::norm(body);
                px2m += ww * std::norm(grad);
            }
        }
        x2m /= norm;
        px2m /= norm;
        CHECK(std::abs(x2m - m.x2) < 1e-6 * std::max(1.0, m.x2));
        CHECK(std::abs(px2m - m.px2) < 1e-6 * std::max(1.0, m.px2));
    }
}

TEST_CASE("magnetic means: two-mode operator oracle") {
    const int T = 26;
    const int D = T * T;
    CMatrix q1 = fock_position(T), p1 = fock_momentum(T), id = CMatrix::Identity(T, T);
    auto kron = [T](const CMatrix& A, const CMatrix& B) {
        CMatrix K(T * T, T * T);
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j) K.block(i * T, j * T, T, T) = A(i, j) * B;
        return K;
    };
    CMatrix X = kron(q1, id), PX = kron(p1, id), Y = kron(id, q1), PY = kron(id, p1);

    for (double rho : {1.0, 1.25}) {
        // integrals of motion at t = 0 with a stationary-start auxiliary solution
        CMatrix A = 0.5 * (rho * (PX + I_UNIT * PY) + (Y - I_UNIT * X) / rho);
        CMatrix B = 0.5 * (rho * (PY + I_UNIT * PX) + (X - I_UNIT * Y) / rho);

        // ladder algebra on rows far from the truncation edge
        CMatrix cAA = A * A.adjoint() - A.adjoint() * A - CMatrix::Identity(D, D);
        CMatrix cAB = A * B - B * A;
        CMatrix cABd = A * B.adjoint() - B.adjoint() * A;
        double worst = 0.0;
        for (int na = 0; na < T - 3; ++na)
            for (int nb = 0; nb < T - 3; ++nb)
                for (int ma = 0; ma < T - 3; ++ma)
                    for (int mb = 0; mb < T - 3; ++mb) {
                        int r = na * T + nb, c = ma * T + mb;
                        worst = std::max({worst, std::abs(cAA(r, c)), std::abs(cAB(r, c)),
                                          std::abs(cABd(r, c))});
                    }
        CHECK(worst < 1e-10);

        // joint A,B vacuum from the null space of A^dag A + B^dag B
        Eigen::SelfAdjointEigenSolver<CMatrix> es(A.adjoint() * A + B.adjoint() * B);
        CHECK(es.eigenvalues()[0] < 1e-8);
        CVector vac = es.eigenvectors().col(0);

        for (int N : {0, 1}) {
            // lowest K0 vector |k;0> = (B^dag)^N |vac> / norm
            CVector k0 = vac;
            for (int q = 0; q < N; ++q) k0 = B.adjoint() * k0;
            k0 /= k0.norm();

            Complex s{0.2, 0.25};
            Complex z_cs = I_UNIT * s;  // label convention of the rotating frame
            double kw = 0.5 * (N + 1.0);
            CVector cs = exp_apply_series(z_cs * (A.adjoint() * B.adjoint()), k0);
            cs *= std::pow(1.0 - std::norm(z_cs), kw);
            CHECK(std::abs(cs.norm() - 1.0) < 1e-9);

            auto m = magnetic_means(N, s, rho);
            Complex x2 = cs.dot((X * X) * cs);
            Complex px2 = cs.dot((PX * PX) * cs);
            CHECK(std::abs(x2.real() - m.x2) < 1e-7);
            CHECK(std::abs(px2.real() - m.px2) < 1e-7);
        }
    }
}

TEST_CASE("singular oscillator coordinate moment") {
    // z = 0: <q^2> = 2 k |eps|^2
    Complex eps{0.7, 0.4};
    CHECK(std::abs(singular_q2_mean(1.25, Complex{0, 0}, eps) - 2.5 * std::norm(eps)) < 1e-14);

    // matrix route: q^2(eps) = 2 eps* eps K0 - eps^2 K+ - eps*^2 K-
    double k = 1.25;
    Complex z{0.35, -0.15};
    StateVector s = su11_cs(k, z, 128, 1e-13);
    auto t = su11_generators(k, s.dim());
    CMatrix op = 2.0 * std::norm(eps) * t.weight - (eps * eps) * t.raise -
                 std::conj(eps) * std::conj(eps) * t.lower;
    CHECK(std::abs(mean_value(s, op).real() - singular_q2_mean(k, z, eps)) < 1e-9);

    // stationary case oscillates with period pi / Omega
    double Omega = 1.7;
    auto series = [&](double t0) {
        Complex e = std::pow(Omega, -0.5) * std::exp(I_UNIT * Omega * t0);
        return singular_q2_mean(0.75, Complex{0.3, 0.2}, e);
    };
    double period = M_PI / Omega;
    for (double t0 : {0.0, 0.3, 1.1}) CHECK(std::abs(series(t0) - series(t0 + period)) < 1e-12);
    // discrete autocorrelation peaks at the period
    int n = 400;
    double Tspan = 3.0 * period;
    std::vector<double> v(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        v[i] = series(Tspan * i / n);
        mean += v[i];
    }
    mean /= n;
    auto acf = [&](int lag) {
        double acc = 0.0;
        for (int i = 0; i + lag < n; ++i) acc += (v[i] - mean) * (v[i + lag] - mean);
        return acc / (n - lag);
    };
    int best = 20;
    for (int lag = 20; lag < n / 2; ++lag)
        if (acf(lag) > acf(best)) best = lag;
    double lag_time = Tspan * best / n;
    CHECK(std::abs(lag_time - period) < Tspan / n + 1e-12);
}

TEST_CASE("thermal averages equal canonical traces for diagonal observables") {
    for (double bw : {0.5, 1.0, 2.0, 5.0}) {
        int trunc = 256;
        CMatrix a = fock_lower(trunc);
        CMatrix n_op = a.adjoint() * a;
        auto rep = thermal_average_check(bw, 1.0, n_op, trunc);
        CHECK(rep.abs_discrepancy < 1e-10);
        CHECK(std::abs(rep.matrix_value.real() - 1.0 / (std::exp(bw) - 1.0)) < 1e-10);

        // identity and the ground-state projector
        auto rid = thermal_average_check(bw, 1.0, CMatrix::Identity(trunc, trunc), trunc);
        CHECK(std::abs(rid.matrix_value.real() - 1.0) < 1e-12);
        CMatrix proj = CMatrix::Zero(trunc, trunc);
        proj(0, 0) = 1.0;
        auto rp = thermal_average_check(bw, 1.0, proj, trunc);
        CHECK(std::abs(rp.matrix_value.real() - (1.0 - std::exp(-bw))) < 1e-10);
        CHECK(rp.abs_discrepancy < 1e-12);
    }

    // off-diagonal observables are rejected for the diagonal family
    CMatrix bad = CMatrix::Zero(64, 64);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(thermal_average_check(1.0, 1.0, bad, 64), ConfigError);
}

TEST_CASE("numerical resolutions of the printed-formula ambiguities") {
    auto d = resolve_uncertainty_exponent(128);
    CHECK(d.resolved_value == 2.0);
    CHECK(d.max_deviation < 1e-6);  // exponent fitted from the matrix route

    auto j0 = resolve_j0_weight_factor(128);
    CHECK(j0.max_deviation < 1e-10);  // <J0>/printed = j exactly

    auto un1 = resolve_un1_mean_prefactor(128);
    CHECK(un1.max_deviation < 1e-10);  // prefactor m, not m/2
    CHECK(std::abs(un1.resolved_value - 2.0 * un1.printed_value) < 1e-12);

    auto mag = resolve_magnetic_px2_factor(24);
    CHECK(mag.max_deviation < 1e-4);   // quadrature ratio to the corrected form
    CHECK(mag.printed_value < 0.55);   // the printed form undershoots by 1/(N+1)
}
