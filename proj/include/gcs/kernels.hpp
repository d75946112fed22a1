#pragma once

#include <functional>
#include <vector>

#include "gcs/algebra.hpp"
#include "gcs/types.hpp"

namespace gcs {
namespace kernels {

// Execution policy for the evolution kernels.  Serial is the reference
// implementation (Eigen tridiagonal QL with accumulated eigenvectors);
// Parallel is the production path (eigenvalues by QL, eigenvectors by
// OpenMP inverse iteration, threaded propagator application).  Both paths
// are kept so they can be cross-checked and benchmarked against each other.
enum class Exec { Serial, Parallel };

struct RealTridiagEig {
    RVector values;
    RMatrix vectors;   // columns are eigenvectors
};

// Reference: Eigen's tridiagonal QL with vector accumulation, O(n^3).
RealTridiagEig tridiag_eig_reference(const RVector& diag, const RVector& sub);

// Fast: eigenvalues only by QL, eigenvectors by inverse iteration with
// cluster re-orthogonalization (O(n^2) per matrix, rows solved in parallel).
// Falls back to the reference path if any residual check fails.
RealTridiagEig tridiag_eig_fast(const RVector& diag, const RVector& sub);

// Residual max_i ||T v_i - lambda_i v_i||_inf, for validation.
double tridiag_eig_residual(const RVector& diag, const RVector& sub, const RealTridiagEig& eig);

// Hermitian-tridiagonal unitary step psi <- exp(-i H dt) psi, where H has
// real diagonal d and first subdiagonal s (H(i+1,i) = s(i)).  The complex
// phases are gauged onto the basis so the core solve is real symmetric.
void tridiag_exp_apply(const RVector& diag, const CVector& sub, double dt, CVector& psi, Exec exec);

// Dense Hermitian step via full eigendecomposition (used for sector
// Hamiltonians that are not tridiagonal).
void dense_exp_apply(const CMatrix& H, double dt, CVector& psi);

// Piecewise-constant evolution driver: for each segment i the provider
// returns the Hamiltonian of that segment; psi is advanced through all of
// them, with an observer called after each step.
struct SegmentHam {
    bool tridiagonal = true;
    RVector diag;
    CVector sub;
    CMatrix dense;
};

using SegmentProvider = std::function<SegmentHam(int segment)>;
using SegmentObserver = std::function<void(int segment, const CVector& psi)>;

void evolve_segments(const SegmentProvider& provider, int segments, double dt,
                     CVector& psi, const SegmentObserver& observer, Exec exec);

// Deterministic parallel map: out[i] = fn(i), i = 0..n-1.  Slot-indexed, so
// the result does not depend on the schedule.
void parallel_for(int n, const std::function<void(int)>& fn, Exec exec);

int max_threads();

}  // namespace kernels
}  // namespace gcs
