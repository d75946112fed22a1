#pragma once

#include <array>
#include <vector>

#include "gcs/types.hpp"

namespace gcs {

// Matrix representations of the generators, all built in fixed canonical
// bases so representations can be compared entry by entry.

struct LadderTriple {
    CMatrix raise;    // J_+ / K_+ / a^dagger
    CMatrix lower;    // J_- / K_- / a
    CMatrix weight;   // J_0 / K_0 / a^dagger a
};

// SU(2) generators in the basis |j, -j + m>, m = 0 .. 2j.
LadderTriple su2_generators(double j);

// SU(1,1) discrete-series generators in |k; m>, m = 0 .. trunc_dim - 1.
// Ladder elements K_+|k;m> = sqrt((m+1)(2k+m)) |k;m+1>, phase fixed real
// positive so that K_- = K_+^dagger and K_0 = diag(k + m).
LadderTriple su11_generators(double k, int trunc_dim);

// Single-mode Fock ladder a with a|n> = sqrt(n)|n-1>, and the quadratures
// in the convention a^dagger = (p + i q)/sqrt(2), i.e.
//   p = (a + a^dagger)/sqrt(2),  q = i (a - a^dagger)/sqrt(2).
CMatrix fock_lower(int trunc_dim);
CMatrix fock_position(int trunc_dim);
CMatrix fock_momentum(int trunc_dim);

struct OscillatorSU11 {
    CMatrix K1, K2, K3;   // K1 = (p^2-q^2)/4, K2 = (pq+qp)/4, K3 = (p^2+q^2)/4
    CMatrix Kp, Km;       // K1 +- i K2 = a^dagger^2/2, a^2/2
};

// The two-photon su(1,1) realization on the full Fock space; its even (odd)
// rows carry the k = 1/4 (k = 3/4) discrete series.
OscillatorSU11 oscillator_su11(int trunc_dim);

// Extract the even- or odd-row block of a full-Fock operator (parity blocks
// of the oscillator realization).
CMatrix parity_block(const CMatrix& op, int parity);

// Two-mode Schwinger realization restricted to the total-number-N sector,
// basis |N; n> = |n>_a |N-n>_b.  Matches su2_generators(N/2) under
// |N; n> <-> |j, -j + n>.
LadderTriple schwinger_su2(int N);

// Multi-index basis of the degree-m symmetric sector of N+1 modes, ordered
// descending-lexicographically on (m_0, ..., m_N); index 0 is (m, 0, ..., 0).
std::vector<std::vector<int>> un1_sector_basis(int N, int m);

// All (N+1)^2 operators a_i^dagger a_j restricted to the sector.
std::vector<std::vector<CMatrix>> un1_generators(int N, int m);

// Time-local Hamiltonian coefficients.  h0 is real by Hermiticity; the
// complex coefficient h couples to the ladder pair.  For the Heisenberg-Weyl
// group omega/F are used instead, for U(N+1) the Hermitian matrix hmat.
struct HamCoeffs {
    double h0 = 0.0;
    Complex h{0.0, 0.0};
    double omega = 0.0;
    Complex F{0.0, 0.0};
    CMatrix hmat;
};

// Friction-oscillator map onto su(1,1) coefficients:
//   h0 = 1 + omega^2,  h = (1 - omega^2)/2 - i b.
HamCoeffs friction_oscillator_coeffs(double omega, double b);

// Hermitian Hamiltonian matrix for the representation:
//   HW:    omega a^dagger a + F a^dagger + conj(F) a
//   SU(2): h0 J0 + conj(h) J+ + h J-
//   SU(1,1): h0 K0 + h K+ + conj(h) K-
//   U(N+1): sum h_ij a_i^dagger a_j on the sector
// The SU(2) complex coefficient is attached to the lowering generator; with
// the coherent-state conventions used here this is the assignment under
// which the sphere and disc flows take the same closed Riccati form.
CMatrix hamiltonian_matrix(const RepLabel& rep, const HamCoeffs& c);

// Tridiagonal view (diagonal real, first subdiagonal complex) for ladder
// Hamiltonians; the evolution kernels use it to avoid dense factorizations.
struct TridiagHam {
    RVector diag;
    CVector sub;
};
TridiagHam hamiltonian_tridiag(const RepLabel& rep, const HamCoeffs& c);

double hermiticity_error(const CMatrix& H);
void require_hermitian(const CMatrix& H, double tol, const std::string& what);

}  // namespace gcs
