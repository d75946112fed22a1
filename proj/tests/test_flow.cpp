#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcs/flow.hpp"

using namespace gcs;

namespace {

// exp(-i t M) for traceless 2x2 M, via M^2 = mu^2 I
Eigen::Matrix2cd exp_traceless_2x2(const Eigen::Matrix2cd& M, double t) {
    Complex mu2 = M(0, 0) * M(0, 0) + M(0, 1) * M(1, 0);
    Complex mu = std::sqrt(mu2);
    Complex cosf, sincf;
    if (std::abs(mu) < 1e-12) {
        cosf = 1.0;
        sincf = Complex{0.0, -t};
    } else {
        cosf = std::cos(mu * t);
        sincf = -I_UNIT * std::sin(mu * t) / mu;
    }
    return cosf * Eigen::Matrix2cd::Identity() + sincf * M;
}

// disc action of the su(1,1) element generated by (h0, h)
Complex su11_matrix_oracle(Complex z0, double h0, Complex h, double t) {
    Eigen::Matrix2cd X;
    X << 0.5 * h0, h, -std::conj(h), -0.5 * h0;
    Eigen::Matrix2cd P = exp_traceless_2x2(X, t);
    return (P(0, 0) * z0 + P(0, 1)) / (P(1, 0) * z0 + P(1, 1));
}

// sphere-chart action of the su(2) element generated by (h0, h)
Complex su2_matrix_oracle(Complex z0, double h0, Complex h, double t) {
    Eigen::Matrix2cd X;
    X << -0.5 * h0, h, std::conj(h), 0.5 * h0;
    Eigen::Matrix2cd P = exp_traceless_2x2(X, t);
    return (P(1, 0) + P(1, 1) * z0) / (P(0, 0) + P(0, 1) * z0);
}

CoefficientTrack su_track(double T, double h0, Complex h) {
    CoefficientTrack tr;
    tr.T = T;
    tr.h0 = Channel::constant(h0);
    tr.h = Channel::constant(h);
    return tr;
}

}  // namespace

TEST_CASE("flow right sides carry no representation weight") {
    // the closed equations of motion are functions of (z, h0, h) only
    static_assert(std::is_same_v<decltype(&su2_riccati_rhs), Complex (*)(Complex, double, Complex)>);
    static_assert(std::is_same_v<decltype(&su11_riccati_rhs), Complex (*)(Complex, double, Complex)>);
    static_assert(std::is_same_v<decltype(&glauber_rhs), Complex (*)(Complex, double, Complex)>);
    CHECK(true);
}

TEST_CASE("sampled channels interpolate and guard the derivative") {
    Channel s;
    s.kind = Channel::Kind::Sampled;
    s.times = {0.0, 1.0, 2.0};
    s.values = {Complex{0.0, 0.0}, Complex{2.0, 0.0}, Complex{1.0, 0.0}};
    CHECK(std::abs(s.eval(0.5) - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(s.eval(1.5) - Complex{1.5, 0.0}) < 1e-15);
    CHECK(std::abs(s.eval(-1.0) - Complex{0.0, 0.0}) < 1e-15);  // clamped
    CHECK(!s.has_derivative());
    CHECK_THROWS_AS(s.derivative(0.5), ConfigError);

    // a sampled friction channel without derivative data cannot enter Omega^2
    CoefficientTrack tr;
    tr.T = 2.0;
    tr.omega = Channel::constant(1.0);
    tr.b = s;
    CHECK_THROWS_AS(tr.omega_sq_aux(0.5), ConfigError);

    // with derivative data it can
    tr.b->derivs = {Complex{2.0, 0.0}, Complex{2.0, 0.0}, Complex{-1.0, 0.0}};
    CHECK(tr.b->has_derivative());
    double w2 = tr.omega_sq_aux(0.5);
    CHECK(std::abs(w2 - (1.0 - 1.0 * 1.0 - 2.0)) < 1e-12);  // omega^2 - b^2 - bdot at b=1
}

TEST_CASE("glauber flow: rotations, translations, closed form") {
    CoefficientTrack rot;
    rot.T = 2.0;
    rot.omega = Channel::constant(1.3);
    auto grid = uniform_grid(rot.T, 41);
    auto traj = glauber_flow(Complex{0.7, -0.2}, rot, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        Complex expect = Complex{0.7, -0.2} * std::exp(-I_UNIT * 1.3 * grid[i]);
        CHECK(std::abs(traj.values[i] - expect) < 1e-10);
    }

    CoefficientTrack tra;
    tra.T = 2.0;
    tra.F = Channel::constant(Complex{0.5, 0.1});
    auto traj2 = glauber_flow(Complex{0.1, 0.0}, tra, grid);
    for (size_t i = 0; i < grid.size(); ++i) {
        Complex expect = Complex{0.1, 0.0} - I_UNIT * Complex{0.5, 0.1} * grid[i];
        CHECK(std::abs(traj2.values[i] - expect) < 1e-10);
    }

    // resonant drive: integrator vs quadrature closed form, z(pi) = -2
    CoefficientTrack res;
    res.T = M_PI;
    res.omega = Channel::constant(1.0);
    res.F = Channel::constant(1.0);
    auto g2 = uniform_grid(res.T, 101);
    auto ti = glauber_flow(Complex{0.0, 0.0}, res, g2);
    auto tc = glauber_closed_form(Complex{0.0, 0.0}, res, g2);
    for (size_t i = 0; i < g2.size(); ++i) CHECK(std::abs(ti.values[i] - tc[i]) < 1e-10);
    CHECK(std::abs(ti.values.back() - Complex{-2.0, 0.0}) < 1e-9);
}

TEST_CASE("su2 Riccati right side") {
    CHECK(su2_riccati_rhs(Complex{0, 0}, 0.7, Complex{0.2, 0.4}) == -I_UNIT * Complex{0.2, -0.4});

    // diagonal Hamiltonian rotates the label clockwise
    auto tr = su_track(2.0, 1.1, Complex{0.0, 0.0});
    auto grid = uniform_grid(tr.T, 21);
    auto traj = su2_flow(Complex{0.4, 0.1}, tr, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(traj.values[i] - Complex{0.4, 0.1} * std::exp(-I_UNIT * 1.1 * grid[i])) <
              1e-10);

    // h0 = 0, h = 1, z0 = 0: z(t) = -i tan(t)
    auto tr2 = su_track(1.0, 0.0, Complex{1.0, 0.0});
    auto grid2 = uniform_grid(tr2.T, 11);
    auto traj2 = su2_flow(Complex{0.0, 0.0}, tr2, grid2);
    for (size_t i = 0; i < grid2.size(); ++i)
        CHECK(std::abs(traj2.values[i] - Complex{0.0, -std::tan(grid2[i])}) < 1e-9);

    // constant complex coefficients against the defining-representation orbit
    double h0 = 0.8;
    Complex h{0.35, -0.6};
    auto tr3 = su_track(5.0, h0, h);
    auto grid3 = uniform_grid(tr3.T, 101);
    auto traj3 = su2_flow(Complex{0.3, 0.2}, tr3, grid3);
    for (size_t i = 0; i < grid3.size(); ++i)
        CHECK(std::abs(traj3.values[i] - su2_matrix_oracle(Complex{0.3, 0.2}, h0, h, grid3[i])) <
              1e-8);
}

TEST_CASE("su11 Riccati right side") {
    // pure rotation keeps |z|
    auto tr = su_track(3.0, 2.0, Complex{0.0, 0.0});
    auto grid = uniform_grid(tr.T, 31);
    IntegratorControls fine;
    fine.substeps = 32;
    auto traj = su11_flow(Complex{0.5, 0.2}, tr, grid, fine);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(std::abs(traj.values[i]) - std::abs(Complex{0.5, 0.2})) < 1e-10);
        CHECK(std::abs(traj.values[i] - Complex{0.5, 0.2} * std::exp(-2.0 * I_UNIT * grid[i])) <
              1e-10);
    }

    // friction-oscillator map at omega = 1, b = 0 is the same rotation
    CoefficientTrack osc;
    osc.T = 3.0;
    osc.omega = Channel::constant(1.0);
    auto traj2 = su11_flow(Complex{0.3, 0.0}, osc, grid, fine);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(traj2.values[i] - 0.3 * std::exp(-2.0 * I_UNIT * grid[i])) < 1e-10);

    // constant complex coefficients against the 2x2 matrix-exponential action
    double h0 = 2.3;
    Complex h{0.4, 0.25};
    auto tr3 = su_track(10.0, h0, h);
    auto grid3 = uniform_grid(tr3.T, 201);
    auto traj3 = su11_flow(Complex{-0.2, 0.35}, tr3, grid3);
    for (size_t i = 0; i < grid3.size(); ++i)
        CHECK(std::abs(traj3.values[i] - su11_matrix_oracle(Complex{-0.2, 0.35}, h0, h, grid3[i])) <
              1e-8);

    // Hermitian tracks preserve the disc
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        auto trr = su_track(4.0, 2.0 * u(rng), Complex{u(rng), u(rng)});
        Complex z0 = 0.6 * Complex{u(rng), u(rng)};
        auto tj = su11_flow(z0, trr, uniform_grid(4.0, 81));
        for (auto& z : tj.values) CHECK(std::abs(z) < 1.0);
    }
}

TEST_CASE("disc stress case raises a domain-exit error instead of NaN") {
    auto tr = su_track(1.0, 0.0, Complex{50.0, 0.0});
    auto grid = uniform_grid(tr.T, 11);
    CHECK_THROWS_AS(su11_flow(Complex{0.999, 0.0}, tr, grid), ComputeError);
}

TEST_CASE("integrator order and controls") {
    FlowRhs rhs = [](double, Complex z, Chart) { return -I_UNIT * z; };
    auto grid = uniform_grid(2.0 * M_PI, 629);
    IntegratorControls c;
    c.substeps = 10;  // step ~ 1e-3
    auto traj = integrate(rhs, Complex{1.0, 0.0}, grid, {}, c);
    CHECK(std::abs(traj.values.back() - Complex{1.0, 0.0}) < 1e-8);

    // halving the step cuts the local error estimate ~16x
    IntegratorControls c1, c2;
    c1.substeps = 4;
    c2.substeps = 8;
    auto t1 = integrate(rhs, Complex{1.0, 0.0}, uniform_grid(1.0, 11), {}, c1);
    auto t2 = integrate(rhs, Complex{1.0, 0.0}, uniform_grid(1.0, 11), {}, c2);
    double ratio = t1.max_local_error / t2.max_local_error;
    CHECK(ratio > 12.0);
    CHECK(ratio < 22.0);

    // error budget violations surface the offending time
    FlowRhs stiff = [](double, Complex z, Chart) { return Complex{40.0, 0.0} * z; };
    IntegratorControls cb;
    cb.substeps = 1;
    cb.error_budget = 1e-12;
    CHECK_THROWS_AS(integrate(stiff, Complex{1.0, 0.0}, uniform_grid(1.0, 5), {}, cb),
                    ComputeError);
}

TEST_CASE("sphere chart switch crosses the pole") {
    // z(t) = -i tan t passes through infinity at t = pi/2
    auto tr = su_track(3.0, 0.0, Complex{1.0, 0.0});
    auto grid = uniform_grid(tr.T, 301);
    IntegratorControls c;
    c.substeps = 20;
    c.chart_threshold = 25.0;
    auto traj = su2_flow(Complex{0.0, 0.0}, tr, grid, c);
    CHECK(traj.chart_switches >= 1);
    CHECK(std::abs(traj.values.back() - Complex{0.0, -std::tan(3.0)}) < 1e-6);
    bool saw_antipodal = false;
    for (auto ch : traj.charts) saw_antipodal |= (ch == Chart::Antipodal);
    CHECK(saw_antipodal);
}

TEST_CASE("Kaehler form reproduces the Riccati right sides") {
    CHECK(kahler_flow_residual(Group::SU2, 0.5, Complex{0.3, 0.1}, 1.0, Complex{0.5, 0.0}) < 1e-6);
    // the residual is weight independent: the closed right side has no j
    CHECK(kahler_flow_residual(Group::SU2, 5.0, Complex{0.3, 0.1}, 1.0, Complex{0.5, 0.0}) < 1e-6);
    CHECK(kahler_flow_residual(Group::SU2, 0.5, Complex{-0.4, 0.6}, 0.3, Complex{0.2, -0.7}) <
          1e-6);

    CHECK(kahler_flow_residual(Group::SU11, 0.25, Complex{0.4, -0.2}, 1.7, Complex{0.3, 0.4}) <
          1e-6);
    CHECK(kahler_flow_residual(Group::SU11, 3.0, Complex{0.4, -0.2}, 1.7, Complex{0.3, 0.4}) <
          1e-6);
    // h = 0: both sides are exactly -i h0 z
    CHECK(kahler_flow_residual(Group::SU11, 0.75, Complex{0.5, 0.1}, 2.0, Complex{0.0, 0.0}) <
          1e-9);
}

TEST_CASE("ermakov solution: stationary, piecewise, invariants") {
    // Omega = 1: eps = e^{it}
    CoefficientTrack tr;
    tr.T = 10.0;
    tr.omega = Channel::constant(1.0);
    auto grid = uniform_grid(tr.T, 501);
    auto sol = ermakov_solve(tr, grid, ErmakovInit::stationary(tr.omega_sq_aux(0.0)));
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(sol.rho[i] - 1.0) < 1e-10);
        CHECK(std::abs(sol.gamma[i] - grid[i]) < 1e-9);  // unwrapped well past 2 pi
    }
    CHECK(sol.max_wronskian_drift < 1e-10);

    // piecewise frequency: C^1 joint, closed-form continuation
    CoefficientTrack pw;
    pw.T = 2.0;
    pw.omega = Channel::piecewise_real({0.0, 1.0}, {1.0, 2.0});
    auto grid2 = uniform_grid(pw.T, 201);
    auto sol2 = ermakov_solve(pw, grid2, ErmakovInit::stationary(1.0));
    Complex e1 = std::exp(I_UNIT * 1.0);
    Complex ed1 = I_UNIT * e1;
    Complex expect = e1 * std::cos(2.0) + 0.5 * ed1 * std::sin(2.0);
    Complex expect_d = -2.0 * e1 * std::sin(2.0) + ed1 * std::cos(2.0);
    CHECK(std::abs(sol2.eps.back() - expect) < 1e-9);
    CHECK(std::abs(sol2.eps_dot.back() - expect_d) < 1e-9);
    CHECK(sol2.max_wronskian_drift < 1e-8);

    // invalid initial conditions are rejected
    ErmakovInit bad{Complex{1.0, 0.0}, Complex{0.0, 2.0}};
    CHECK_THROWS_AS(ermakov_solve(tr, grid, bad), ConfigError);
}

TEST_CASE("Mobius elements: group structure and disc action") {
    MobiusElement id = MobiusElement::identity();
    CHECK(mobius_apply(id, Complex{0.3, -0.4}) == Complex{0.3, -0.4});

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_element = [&]() {
        double r = 1.2 * std::abs(u(rng));
        MobiusElement m;
        m.a = std::polar(std::cosh(r), M_PI * u(rng));
        m.c = std::polar(std::sinh(r), M_PI * u(rng));
        return m.normalized();
    };

    for (int it = 0; it < 1000; ++it) {
        MobiusElement m1 = random_element(), m2 = random_element();
        Complex z = 0.999 * std::polar(std::sqrt(0.5 * (u(rng) + 1.0)), M_PI * u(rng));
        Complex w1 = mobius_apply(m1, z);
        CHECK(std::abs(w1) < 1.0);
        Complex w21 = mobius_apply(m2, w1);
        Complex wc = mobius_apply(mobius_compose(m2, m1), z);
        CHECK(std::abs(w21 - wc) < 1e-12);
        CHECK(std::abs(mobius_apply(m1.inverse(), w1) - z) < 1e-10);
        CHECK(std::abs(mobius_compose(m2, m1).det() - 1.0) < 1e-12);
    }
}

TEST_CASE("epsilon-built Mobius maps: printed conventions in the stationary case") {
    CoefficientTrack tr;
    tr.T = M_PI;
    tr.omega = Channel::constant(1.0);
    auto grid = uniform_grid(tr.T, 401);  // contains pi/4 at index 100
    auto sol = ermakov_solve(tr, grid, ErmakovInit::stationary(1.0));

    // rho(0) = 1, gamma(0) = 0: identity map, and |a|^2 - |c|^2 = 4 rho^2
    auto m0 = mobius_from_epsilon(sol, 0.0, EpsilonConvention::PhaseMinus);
    CHECK(std::abs(m0.a - 2.0) < 1e-12);
    CHECK(std::abs(m0.c) < 1e-12);
    for (int idx : {50, 100, 300}) {
        double t = grid[idx];
        auto m29 = mobius_from_epsilon(sol, t, EpsilonConvention::PhasePlus);
        auto m36 = mobius_from_epsilon(sol, t, EpsilonConvention::PhaseMinus);
        double r2 = sol.rho[idx] * sol.rho[idx];
        CHECK(std::abs(m29.det() - 4.0 * r2) < 1e-10);
        CHECK(std::abs(m36.det() - 4.0 * r2) < 1e-10);
    }

    // stationary oscillator: the PhaseMinus orientation tracks the disc flow, the
    // PhasePlus orientation is its complex conjugate
    Complex z0{0.2, 0.0};
    double t = grid[100];
    Complex expected = z0 * std::exp(-2.0 * I_UNIT * t);
    CHECK(std::abs(t - M_PI / 4.0) < 1e-15);
    CHECK(std::abs(mobius_apply(mobius_from_epsilon(sol, t, EpsilonConvention::PhaseMinus), z0) -
                   expected) < 1e-8);
    CHECK(std::abs(mobius_apply(mobius_from_epsilon(sol, t, EpsilonConvention::PhasePlus), z0) -
                   std::conj(expected)) < 1e-8);

    // z0 = 0 maps to c/a*
    auto m = mobius_from_epsilon(sol, grid[200], EpsilonConvention::PhaseMinus);
    CHECK(std::abs(mobius_apply(m, Complex{0, 0}) - m.c / std::conj(m.a)) < 1e-14);
}

TEST_CASE("exact propagator from the auxiliary solution") {
    // nonstationary frequency and friction, no special structure
    CoefficientTrack tr;
    tr.T = 6.0;
    tr.omega = Channel::sinusoid(1.2, 0.3, 0.9);
    tr.b = Channel::constant(0.25);
    auto grid = uniform_grid(tr.T, 301);
    IntegratorControls ic;
    ic.substeps = 16;

    auto sol = ermakov_solve(tr, grid, ErmakovInit::propagator(tr.b_at(0.0)), 16);
    auto riccati = su11_flow(Complex{0.35, -0.1}, tr, grid, ic);
    for (size_t i = 0; i < grid.size(); ++i) {
        auto P = mobius_propagator(sol, tr.b_at(grid[i]), grid[i]);
        CHECK(std::abs(P.det() - 1.0) < 1e-9);  // det = Wronskian
        Complex zm = mobius_apply(P, Complex{0.35, -0.1});
        CHECK(disc_distance(zm, riccati.values[i]) < 1e-8);
    }
}

TEST_CASE("un1 flow: projective invariance, N=1 reduction, matrix oracle") {
    // h = omega I: the common phase cancels in the quotient
    CoefficientTrack tr;
    tr.T = 2.0;
    tr.hmat = {0.9 * CMatrix::Identity(3, 3)};
    CVector z0(2);
    z0 << Complex{0.3, 0.1}, Complex{-0.2, 0.4};
    auto grid = uniform_grid(tr.T, 21);
    auto traj = un1_flow(z0, tr, grid);
    for (auto& v : traj.values) CHECK((v - z0).norm() < 1e-10);

    // N = 1 reduces to the sphere Riccati flow with h0 = h11 - h00, h = h01
    CMatrix h2(2, 2);
    h2 << Complex{0.2, 0.0}, Complex{0.4, -0.3}, Complex{0.4, 0.3}, Complex{1.1, 0.0};
    CoefficientTrack tr1;
    tr1.T = 4.0;
    tr1.hmat = {h2};
    CVector w0(1);
    w0 << Complex{0.25, -0.15};
    auto grid1 = uniform_grid(tr1.T, 81);
    auto lift = un1_flow(w0, tr1, grid1);
    auto tr_su2 = su_track(tr1.T, (h2(1, 1) - h2(0, 0)).real(), h2(0, 1));
    auto direct = su2_flow(w0[0], tr_su2, grid1);
    for (size_t i = 0; i < grid1.size(); ++i)
        CHECK(std::abs(lift.values[i][0] - direct.values[i]) < 1e-9);

    // N = 2 constant Hermitian coefficients against the matrix exponential
    CMatrix h3(3, 3);
    h3 << Complex{0.5, 0.0}, Complex{0.2, 0.1}, Complex{0.0, -0.3},
          Complex{0.2, -0.1}, Complex{-0.4, 0.0}, Complex{0.6, 0.0},
          Complex{0.0, 0.3}, Complex{0.6, 0.0}, Complex{0.1, 0.0};
    CoefficientTrack tr2;
    tr2.T = 3.0;
    tr2.hmat = {h3};
    auto grid2 = uniform_grid(tr2.T, 61);
    auto lift2 = un1_flow(z0, tr2, grid2);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h3);
    for (size_t i = 0; i < grid2.size(); ++i) {
        CVector w(3);
        w << 1.0, z0[0], z0[1];
        CVector diag(3);
        for (int q = 0; q < 3; ++q)
            diag[q] = std::exp(-I_UNIT * es.eigenvalues()[q] * grid2[i]);
        CVector wt = es.eigenvectors() * diag.asDiagonal() * (es.eigenvectors().adjoint() * w);
        CHECK(std::abs(lift2.values[i][0] - wt[1] / wt[0]) < 1e-9);
        CHECK(std::abs(lift2.values[i][1] - wt[2] / wt[0]) < 1e-9);
    }

    // chart singularity w0 -> 0 is reported
    CMatrix flip(2, 2);
    flip << Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0};
    CoefficientTrack trf;
    trf.T = 3.0;
    trf.hmat = {flip};
    CVector zi(1);
    zi << Complex{0.0, 1.0};
    // w0(t) = cos t + sin t vanishes at t = 3 pi / 4, a grid point here
    CHECK_THROWS_AS(un1_flow(zi, trf, uniform_grid(1.5 * M_PI, 7)), ComputeError);
}
