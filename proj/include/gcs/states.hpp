#pragma once

#include <vector>

#include "gcs/algebra.hpp"
#include "gcs/flow.hpp"
#include "gcs/types.hpp"

namespace gcs {

// Basis a StateVector's coefficients refer to.
struct BasisTag {
    enum class Kind {
        Fock,            // |n>, n = 0..dim-1
        SU2,             // |j, -j+m>
        SU11,            // |k; m>
        TwoModeSector,   // |n>_a |N-n>_b, fixed total N
        TwoModeDiagonal, // |n, n>
        TwoModeFull,     // |n_a, n_b>, index n_a * per_mode + n_b
        UN1Sector        // degree-m multi-indices of N+1 modes
    };
    Kind kind = Kind::Fock;
    double weight = 0.0;   // j or k where applicable
    int N = 0, m = 0;      // sector data
    int per_mode = 0;      // TwoModeFull truncation
};

struct StateVector {
    BasisTag basis;
    CVector c;
    double tail_mass = 0.0;    // probability weight beyond the stored rows

    int dim() const { return static_cast<int>(c.size()); }
    double norm() const { return c.norm(); }
};

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kMaxAutoTrunc = 4096;

// Glauber state: c_n = e^{-|z|^2/2} z^n / sqrt(n!).  trunc grows (doubling,
// up to kMaxAutoTrunc) until the closed-form tail is below tail_tol.
StateVector glauber_cs(Complex z, int trunc, double tail_tol = kDefaultTailTol);

// Spin state: c_m = (1+|z|^2)^{-j} sqrt(C(2j, m)) z^m.  The antipodal chart
// builds the same family around the top weight vector, parameter w ~ 1/z.
StateVector su2_cs(double j, Complex z, Chart chart = Chart::Primary);

// Disc state: c_m = (1-|z|^2)^k sqrt(Gamma(2k+m) / (m! Gamma(2k))) z^m.
StateVector su11_cs(double k, Complex z, int trunc, double tail_tol = kDefaultTailTol);

// Even/odd squeezed families in the full Fock basis (k = 1/4 resp. 3/4).
StateVector parity_cs(int parity, Complex z, int trunc, double tail_tol = kDefaultTailTol);

// Two-mode thermal-ground family (k = 1/2): c_n on |n, n>, c_n = sqrt(1-z^2) z^n.
StateVector thermal_cs(double z, int trunc, double tail_tol = kDefaultTailTol);

// U(N+1) symmetric-sector state with multinomial coefficients.
StateVector un1_cs(int N, int m, const CVector& z);

// Embedding helpers used by cross-checks.
StateVector schwinger_embed(const StateVector& su2_state);      // SU2 -> TwoModeSector
StateVector parity_from_su11(const StateVector& su11_state);    // k = 1/4 or 3/4 -> Fock

// Residuals of the two-mode wave-packet identity: the alpha-weighted tower
// of sector states against the displaced two-mode vacuum, the product
// Glauber form of the right side, and the ladder eigenvalue property.
struct WavepacketCheck {
    double tower_vs_displaced;
    double displaced_vs_product;
    double ladder_eigen_residual;
};
WavepacketCheck wavepacket_identity_check(Complex alpha, Complex z, int trunc_per_mode);

// ---------------------------------------------------------------------------
// Position-space families.

struct WavefunctionParams {
    enum class Family { ParityGaussian, Singular, Magnetic };
    Family family = Family::ParityGaussian;
    int parity = +1;         // ParityGaussian
    double d = 1.0;          // Singular: x^{d+1/2} prefactor exponent
    int N = 0;               // Magnetic: angular momentum
    Complex a{0.5, 0.0};     // Gaussian width parameter, Re a > 0
    double norm_const = 0.0; // computed, not transcribed

    // ParityGaussian / Singular at t = 0: a = (1+z)/(2(1-z)).
    static WavefunctionParams parity_family(int sign, Complex z);
    static WavefunctionParams singular_family(double d, Complex z);
    // Magnetic: a = (1+s) / (2 rho^2 (1-s)); the radial coordinate is the
    // modulus of the rotating-frame chart variable (physical radius / sqrt 2).
    static WavefunctionParams magnetic_family(int N, Complex s, double rho);
};

// Amplitude and probability density.  ParityGaussian lives on the real line,
// Singular on x > 0, Magnetic on the radial half-line (density per unit area).
Complex eval_wavefunction(const WavefunctionParams& p, double x);
double density(const WavefunctionParams& p, double x);

// quadrature of the density over its domain (should be 1)
double density_normalization(const WavefunctionParams& p, int points = 4001);

// lambda = (1 - |z|^2) / |1 - z|^2, the inverse squared width of the parity
// densities
double gaussian_width_lambda(Complex z);

// Generalized Laguerre polynomial by the three-term recurrence.
double laguerre(int n, double alpha, double x);

// Time-dependent eigenfunction of the singular family,
//   psi_n(x) = C_n x^{d+1/2} exp(-2 i n gamma + (i/2)(eps_dot/eps - b) x^2) L_n^d(gdot x^2),
// normalized on (0, inf) by quadrature-free Gamma-function moments.
Complex singular_eigenfunction(double d, int n, Complex eps, Complex eps_dot, double b, double x);
Complex singular_eigenfunction(double d, int n, const EpsilonSolution& eps, double t, double b,
                               double x);

}  // namespace gcs
