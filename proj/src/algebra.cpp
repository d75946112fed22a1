#include "gcs/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace gcs {

LadderTriple su2_generators(double j) {
    RepLabel rep = RepLabel::su2(j);
    int n = rep.dim();
    double jj = 0.5 * rep.twice_j;
    LadderTriple t;
    t.raise = CMatrix::Zero(n, n);
    t.lower = CMatrix::Zero(n, n);
    t.weight = CMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        t.weight(m, m) = -jj + m;
        if (m + 1 < n) {
            double amp = std::sqrt((m + 1.0) * (2.0 * jj - m));
            t.raise(m + 1, m) = amp;
            t.lower(m, m + 1) = amp;
        }
    }
    return t;
}

LadderTriple su11_generators(double k, int trunc_dim) {
    RepLabel rep = RepLabel::su11(k, trunc_dim);
    int n = rep.dim();
    LadderTriple t;
    t.raise = CMatrix::Zero(n, n);
    t.lower = CMatrix::Zero(n, n);
    t.weight = CMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        t.weight(m, m) = k + m;
        if (m + 1 < n) {
            double amp = std::sqrt((m + 1.0) * (2.0 * k + m));
            t.raise(m + 1, m) = amp;
            t.lower(m, m + 1) = amp;
        }
    }
    return t;
}

CMatrix fock_lower(int trunc_dim) {
    CMatrix a = CMatrix::Zero(trunc_dim, trunc_dim);
    for (int m = 1; m < trunc_dim; ++m) a(m - 1, m) = std::sqrt(double(m));
    return a;
}

CMatrix fock_position(int trunc_dim) {
    CMatrix a = fock_lower(trunc_dim);
    return I_UNIT / std::sqrt(2.0) * (a - a.adjoint().eval());
}

CMatrix fock_momentum(int trunc_dim) {
    CMatrix a = fock_lower(trunc_dim);
    return (a + a.adjoint().eval()) / std::sqrt(2.0);
}

OscillatorSU11 oscillator_su11(int trunc_dim) {
    if (trunc_dim < 4) throw ConfigError("oscillator_su11: trunc_dim must be >= 4");
    CMatrix q = fock_position(trunc_dim);
    CMatrix p = fock_momentum(trunc_dim);
    OscillatorSU11 o;
    o.K1 = 0.25 * (p * p - q * q);
    o.K2 = 0.25 * (p * q + q * p);
    o.K3 = 0.25 * (p * p + q * q);
    o.Kp = o.K1 + I_UNIT * o.K2;
    o.Km = o.K1 - I_UNIT * o.K2;
    return o;
}

CMatrix parity_block(const CMatrix& op, int parity) {
    int n = static_cast<int>(op.rows());
    int nb = (n + 1 - (parity & 1)) / 2;
    CMatrix blk(nb, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) blk(i, j) = op(2 * i + parity, 2 * j + parity);
    return blk;
}

LadderTriple schwinger_su2(int N) {
    if (N < 1) throw ConfigError("schwinger_su2: N must be >= 1");
    int n = N + 1;
    LadderTriple t;
    t.raise = CMatrix::Zero(n, n);
    t.lower = CMatrix::Zero(n, n);
    t.weight = CMatrix::Zero(n, n);
    for (int na = 0; na < n; ++na) {
        int nb = N - na;
        t.weight(na, na) = 0.5 * (na - nb);
        if (na + 1 < n) {
            // a^dagger b on |na, nb>
            double amp = std::sqrt((na + 1.0) * nb);
            t.raise(na + 1, na) = amp;
            t.lower(na, na + 1) = amp;
        }
    }
    return t;
}

std::vector<std::vector<int>> un1_sector_basis(int N, int m) {
    std::vector<std::vector<int>> basis;
    std::vector<int> idx(N + 1, 0);
    idx[0] = m;
    // descending lexicographic enumeration, from (m, 0, ..., 0) to (0, ..., 0, m);
    // positions between the rightmost nonzero head entry and the tail are zero
    while (true) {
        basis.push_back(idx);
        int i = N - 1;
        while (i >= 0 && idx[i] == 0) --i;
        if (i < 0) break;
        --idx[i];
        int tail = idx[N];
        idx[N] = 0;
        idx[i + 1] = tail + 1;
    }
    return basis;
}

std::vector<std::vector<CMatrix>> un1_generators(int N, int m) {
    RepLabel rep = RepLabel::un1(N, m);
    auto basis = un1_sector_basis(N, m);
    int dim = static_cast<int>(basis.size());
    if (dim != rep.dim()) throw std::logic_error("un1 sector enumeration mismatch");

    // index lookup
    std::vector<std::vector<int>> sorted = basis;
    auto find_index = [&basis](const std::vector<int>& v) {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == v) return static_cast<int>(i);
        return -1;
    };

    std::vector<std::vector<CMatrix>> E(N + 1, std::vector<CMatrix>(N + 1));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) E[i][j] = CMatrix::Zero(dim, dim);

    for (int col = 0; col < dim; ++col) {
        const auto& mu = basis[col];
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                if (i == j) {
                    E[i][i](col, col) = mu[i];
                    continue;
                }
                if (mu[j] == 0) continue;
                std::vector<int> nu = mu;
                nu[j] -= 1;
                nu[i] += 1;
                int row = find_index(nu);
                E[i][j](row, col) = std::sqrt((mu[i] + 1.0) * mu[j]);
            }
        }
    }
    return E;
}

HamCoeffs friction_oscillator_coeffs(double omega, double b) {
    HamCoeffs c;
    c.h0 = 1.0 + omega * omega;
    c.h = Complex{0.5 * (1.0 - omega * omega), -b};
    return c;
}

CMatrix hamiltonian_matrix(const RepLabel& rep, const HamCoeffs& c) {
    rep.validate();
    CMatrix H;
    switch (rep.group) {
        case Group::HeisenbergWeyl: {
            CMatrix a = fock_lower(rep.trunc_dim);
            CMatrix ad = a.adjoint();
            H = c.omega * (ad * a) + c.F * ad + std::conj(c.F) * a;
            break;
        }
        case Group::SU2: {
            LadderTriple t = su2_generators(0.5 * rep.twice_j);
            H = c.h0 * t.weight + std::conj(c.h) * t.raise + c.h * t.lower;
            break;
        }
        case Group::SU11: {
            LadderTriple t = su11_generators(rep.k, rep.trunc_dim);
            H = c.h0 * t.weight + c.h * t.raise + std::conj(c.h) * t.lower;
            break;
        }
        case Group::UN1: {
            if (c.hmat.rows() != rep.N + 1 || c.hmat.cols() != rep.N + 1)
                throw ConfigError("un1 coefficient matrix must be (N+1) x (N+1)");
            require_hermitian(c.hmat, 1e-12, "un1 coefficient matrix h_ij");
            auto E = un1_generators(rep.N, rep.m);
            H = CMatrix::Zero(rep.dim(), rep.dim());
            for (int i = 0; i <= rep.N; ++i)
                for (int j = 0; j <= rep.N; ++j) H += c.hmat(i, j) * E[i][j];
            break;
        }
    }
    require_hermitian(H, 1e-12, "hamiltonian");
    return H;
}

TridiagHam hamiltonian_tridiag(const RepLabel& rep, const HamCoeffs& c) {
    int n = rep.dim();
    TridiagHam t;
    t.diag = RVector::Zero(n);
    t.sub = CVector::Zero(std::max(0, n - 1));
    switch (rep.group) {
        case Group::HeisenbergWeyl:
            for (int m = 0; m < n; ++m) t.diag[m] = c.omega * m;
            for (int m = 0; m + 1 < n; ++m) t.sub[m] = c.F * std::sqrt(m + 1.0);
            break;
        case Group::SU2: {
            double jj = 0.5 * rep.twice_j;
            for (int m = 0; m < n; ++m) t.diag[m] = c.h0 * (-jj + m);
            for (int m = 0; m + 1 < n; ++m)
                t.sub[m] = std::conj(c.h) * std::sqrt((m + 1.0) * (2.0 * jj - m));
            break;
        }
        case Group::SU11:
            for (int m = 0; m < n; ++m) t.diag[m] = c.h0 * (rep.k + m);
            for (int m = 0; m + 1 < n; ++m)
                t.sub[m] = c.h * std::sqrt((m + 1.0) * (2.0 * rep.k + m));
            break;
        case Group::UN1:
            throw ConfigError("un1 Hamiltonians are not tridiagonal");
    }
    return t;
}

double hermiticity_error(const CMatrix& H) {
    double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    return (H - H.adjoint().eval()).cwiseAbs().maxCoeff() / scale;
}

void require_hermitian(const CMatrix& H, double tol, const std::string& what) {
    double err = hermiticity_error(H);
    if (err > tol)
        throw ConfigError(what + " is not Hermitian (relative error " + std::to_string(err) + ")");
}

}  // namespace gcs
