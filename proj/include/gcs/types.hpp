#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace gcs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex I_UNIT{0.0, 1.0};

// Invalid user input (bad weights, malformed configs).  Maps to exit code 2
// in the CLI.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure during a run (domain exit, truncation leakage, ...).
// Carries the time at which the computation had to stop.  Exit code 1.
class ComputeError : public std::runtime_error {
public:
    ComputeError(const std::string& what, double t)
        : std::runtime_error(what + " (at t = " + std::to_string(t) + ")"), time(t) {}
    explicit ComputeError(const std::string& what)
        : std::runtime_error(what), time(0.0) {}
    double time;
};

enum class Group { HeisenbergWeyl, SU2, SU11, UN1 };

std::string group_name(Group g);

// Label of a concrete (possibly truncated) irreducible representation.
//
// weight:  SU(2) stores twice_j (so j may be half-integer), SU(1,1) stores the
// Bargmann index k > 0 of the discrete series, U(N+1) stores the pair (N, m)
// of the symmetric representation (m, 0, ..., 0).  trunc_dim is the basis size
// used for infinite-dimensional representations; finite ones have their
// dimension forced by the weight.
struct RepLabel {
    Group group = Group::SU11;
    int twice_j = 1;       // SU(2)
    double k = 0.5;        // SU(1,1)
    int N = 1, m = 1;      // U(N+1)
    int trunc_dim = 64;    // Heisenberg-Weyl and SU(1,1)

    static RepLabel heisenberg_weyl(int trunc_dim);
    static RepLabel su2(double j);
    static RepLabel su11(double k, int trunc_dim);
    static RepLabel un1(int N, int m);

    // Basis size of the stored matrices / state vectors.
    int dim() const;
    // Rows of a truncated ladder basis that single-generator identities can
    // be trusted on (all rows for finite representations).
    int trust_dim() const;
    void validate() const;
};

// Binomial and multiset helpers used by the sector bases.
double log_factorial(int n);
long long binomial(int n, int kk);

enum class Chart { Primary, Antipodal };

// A point of one of the classical phase spaces.  Scalar domains use value,
// the C^N domain uses vec.
struct PhasePoint {
    enum class Domain { Plane, SphereChart, Disc, CN };
    Domain domain = Domain::Plane;
    Complex value{0.0, 0.0};
    CVector vec;
    Chart chart = Chart::Primary;

    static PhasePoint plane(Complex z) { return {Domain::Plane, z, {}, Chart::Primary}; }
    static PhasePoint sphere(Complex z, Chart c = Chart::Primary) {
        return {Domain::SphereChart, z, {}, c};
    }
    static PhasePoint disc(Complex z);
    static PhasePoint cn(CVector z) {
        return {Domain::CN, Complex{0, 0}, std::move(z), Chart::Primary};
    }
};

}  // namespace gcs
