#include "gcs/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcs {
namespace kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

RealTridiagEig tridiag_eig_reference(const RVector& diag, const RVector& sub) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw ComputeError("tridiagonal eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// preallocated per-thread work arrays for the shifted solves
struct SolveWorkspace {
    std::vector<double> row_u, row_v, row_w, lower;
    std::vector<char> swapped;
    void resize(int n) {
        row_u.resize(n);
        row_v.resize(n);
        row_w.resize(n);
        lower.resize(n);
        swapped.resize(n);
    }
};

// Solve (T - lambda I) x = b for symmetric tridiagonal T by Gaussian
// elimination with partial pivoting (fill-in limited to two superdiagonals).
void shifted_tridiag_solve(const RVector& d, const RVector& e, double lambda,
                           std::vector<double>& x, SolveWorkspace& ws) {
    const int n = static_cast<int>(d.size());
    ws.resize(n);
    auto& row_u = ws.row_u;
    auto& row_v = ws.row_v;
    auto& row_w = ws.row_w;
    auto& lower = ws.lower;
    auto& swapped = ws.swapped;

    for (int i = 0; i < n; ++i) {
        row_u[i] = d[i] - lambda;
        row_v[i] = (i + 1 < n) ? e[i] : 0.0;
        row_w[i] = 0.0;
        swapped[i] = 0;
    }

    // forward elimination on the matrix [u v w; e u v; ...]
    for (int i = 0; i + 1 < n; ++i) {
        double below = e[i];
        if (std::abs(below) > std::abs(row_u[i])) {
            // swap row i with row i+1
            std::swap(row_u[i], below);
            double tmpv = row_v[i];
            row_v[i] = row_u[i + 1];
            row_u[i + 1] = tmpv;
            row_w[i] = row_v[i + 1];
            row_v[i + 1] = 0.0;
            swapped[i] = 1;
        }
        double piv = row_u[i];
        if (piv == 0.0) piv = 1e-307;
        double mult = below / piv;
        lower[i] = mult;
        row_u[i + 1] -= mult * row_v[i];
        row_v[i + 1] -= mult * row_w[i];
        row_u[i] = piv;
    }
    if (row_u[n - 1] == 0.0) row_u[n - 1] = 1e-307;

    // forward substitution on rhs
    for (int i = 0; i + 1 < n; ++i) {
        if (swapped[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= lower[i] * x[i];
    }
    // back substitution
    x[n - 1] /= row_u[n - 1];
    if (n >= 2) {
        x[n - 2] = (x[n - 2] - row_v[n - 2] * x[n - 1]) / row_u[n - 2];
    }
    for (int i = n - 3; i >= 0; --i)
        x[i] = (x[i] - row_v[i] * x[i + 1] - row_w[i] * x[i + 2]) / row_u[i];
}

double infnorm_scale(const RVector& d, const RVector& e) {
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) s = std::max(s, std::abs(d[i]));
    for (int i = 0; i < e.size(); ++i) s = std::max(s, std::abs(e[i]));
    return std::max(s, 1e-300);
}

}  // namespace

RealTridiagEig tridiag_eig_fast(const RVector& diag, const RVector& sub) {
    const int n = static_cast<int>(diag.size());
    Eigen::SelfAdjointEigenSolver<RMatrix> values_only;
    values_only.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (values_only.info() != Eigen::Success)
        throw ComputeError("tridiagonal eigenvalue sweep failed to converge");

    RealTridiagEig out;
    out.values = values_only.eigenvalues();
    out.vectors.resize(n, n);

    const double scale = infnorm_scale(diag, sub);
    const double cluster_tol = 1e-10 * scale;

    // cluster boundaries over the sorted spectrum
    std::vector<int> cluster_of(n, 0);
    for (int i = 1; i < n; ++i)
        cluster_of[i] = (out.values[i] - out.values[i - 1] < cluster_tol)
                            ? cluster_of[i - 1]
                            : cluster_of[i - 1] + 1;
    std::vector<int> cluster_start(n, 0);
    for (int i = 1; i < n; ++i)
        cluster_start[i] = (cluster_of[i] == cluster_of[i - 1]) ? cluster_start[i - 1] : i;

    std::atomic<bool> fail{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        if (cluster_start[i] != i) continue;  // whole cluster handled by its head
        int end = i;
        while (end + 1 < n && cluster_start[end + 1] == i) ++end;

        std::vector<double> x(n);
        SolveWorkspace ws;
        for (int idx = i; idx <= end; ++idx) {
            // deterministic start vector
            unsigned long long state = 0x9e3779b97f4a7c15ULL + 0x100000001b3ULL * (idx + 1);
            for (int r = 0; r < n; ++r) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                x[r] = ((state >> 11) * (1.0 / 9007199254740992.0)) - 0.5;
            }
            double lambda = out.values[idx];
            for (int iter = 0; iter < 3; ++iter) {
                shifted_tridiag_solve(diag, sub, lambda, x, ws);
                // the solve amplifies by ~1/gap and can approach overflow when
                // a pivot degenerates; rescale before squaring
                double xmax = 0.0;
                for (int r = 0; r < n; ++r) xmax = std::max(xmax, std::abs(x[r]));
                if (!std::isfinite(xmax) || xmax == 0.0) { fail = true; break; }
                for (int r = 0; r < n; ++r) x[r] /= xmax;
                // orthogonalize against earlier members of the cluster
                for (int prev = i; prev < idx; ++prev) {
                    double dot = 0.0;
                    for (int r = 0; r < n; ++r) dot += out.vectors(r, prev) * x[r];
                    for (int r = 0; r < n; ++r) x[r] -= dot * out.vectors(r, prev);
                }
                double nrm = 0.0;
                for (int r = 0; r < n; ++r) nrm += x[r] * x[r];
                nrm = std::sqrt(nrm);
                if (!(nrm > 1e-8)) { fail = true; break; }  // cluster collapse
                for (int r = 0; r < n; ++r) x[r] /= nrm;
                if (iter >= 1) {
                    // residual ||T x - lambda x||
                    double res = 0.0;
                    for (int r = 0; r < n; ++r) {
                        double tv = (diag[r] - lambda) * x[r];
                        if (r > 0) tv += sub[r - 1] * x[r - 1];
                        if (r + 1 < n) tv += sub[r] * x[r + 1];
                        if (!std::isfinite(tv)) { res = INFINITY; break; }
                        res = std::max(res, std::abs(tv));
                    }
                    if (res < 1e-11 * scale) break;
                    if (iter == 2) fail = true;
                }
            }
            for (int r = 0; r < n; ++r) out.vectors(r, idx) = x[r];
        }
    }

    if (fail) return tridiag_eig_reference(diag, sub);
    return out;
}

double tridiag_eig_residual(const RVector& diag, const RVector& sub, const RealTridiagEig& eig) {
    const int n = static_cast<int>(diag.size());
    double worst = 0.0;
    for (int idx = 0; idx < n; ++idx) {
        for (int r = 0; r < n; ++r) {
            double tv = (diag[r] - eig.values[idx]) * eig.vectors(r, idx);
            if (r > 0) tv += sub[r - 1] * eig.vectors(r - 1, idx);
            if (r + 1 < n) tv += sub[r] * eig.vectors(r + 1, idx);
            if (!std::isfinite(tv)) return INFINITY;
            worst = std::max(worst, std::abs(tv));
        }
    }
    return worst;
}

void tridiag_exp_apply(const RVector& diag, const CVector& sub, double dt, CVector& psi,
                       Exec exec) {
    const int n = static_cast<int>(diag.size());
    if (n == 1) {
        psi[0] *= std::exp(Complex(0.0, -diag[0] * dt));
        return;
    }

    // gauge the subdiagonal phases onto the basis: H = D T D^dagger
    CVector phase(n);
    RVector rsub(n - 1);
    phase[0] = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
        double mag = std::abs(sub[i]);
        rsub[i] = mag;
        phase[i + 1] = (mag > 0.0) ? phase[i] * (sub[i] / mag) : phase[i];
    }

    CVector y(n);
    for (int i = 0; i < n; ++i) y[i] = std::conj(phase[i]) * psi[i];

    RealTridiagEig eig = (exec == Exec::Parallel) ? tridiag_eig_fast(diag, rsub)
                                                  : tridiag_eig_reference(diag, rsub);

    // w = V^T y, then y' = V (exp(-i lambda dt) .* w), on split re/im parts
    const RMatrix& V = eig.vectors;
    RVector yr(n), yi(n);
    for (int i = 0; i < n; ++i) {
        yr[i] = y[i].real();
        yi[i] = y[i].imag();
    }
    RVector wr(n), wi(n);
    wr.noalias() = V.transpose() * yr;
    wi.noalias() = V.transpose() * yi;
    for (int c = 0; c < n; ++c) {
        Complex rot = std::exp(Complex(0.0, -eig.values[c] * dt)) * Complex{wr[c], wi[c]};
        wr[c] = rot.real();
        wi[c] = rot.imag();
    }
    yr.noalias() = V * wr;
    yi.noalias() = V * wi;
    for (int i = 0; i < n; ++i) psi[i] = phase[i] * Complex{yr[i], yi[i]};
}

void dense_exp_apply(const CMatrix& H, double dt, CVector& psi) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw ComputeError("dense Hermitian eigensolver failed to converge");
    CVector w = solver.eigenvectors().adjoint() * psi;
    for (int i = 0; i < w.size(); ++i)
        w[i] *= std::exp(Complex(0.0, -solver.eigenvalues()[i] * dt));
    psi = solver.eigenvectors() * w;
}

void evolve_segments(const SegmentProvider& provider, int segments, double dt, CVector& psi,
                     const SegmentObserver& observer, Exec exec) {
    for (int s = 0; s < segments; ++s) {
        SegmentHam h = provider(s);
        if (h.tridiagonal)
            tridiag_exp_apply(h.diag, h.sub, dt, psi, exec);
        else
            dense_exp_apply(h.dense, dt, psi);
        if (observer) observer(s, psi);
    }
}

void parallel_for(int n, const std::function<void(int)>& fn, Exec exec) {
    if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(guided)
#endif
        for (int i = 0; i < n; ++i) fn(i);
    } else {
        for (int i = 0; i < n; ++i) fn(i);
    }
}

}  // namespace kernels
}  // namespace gcs
