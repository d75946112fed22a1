#include "gcs/types.hpp"

#include <cmath>

namespace gcs {

std::string group_name(Group g) {
    switch (g) {
        case Group::HeisenbergWeyl: return "heisenberg_weyl";
        case Group::SU2: return "su2";
        case Group::SU11: return "su11";
        case Group::UN1: return "un1";
    }
    return "?";
}

RepLabel RepLabel::heisenberg_weyl(int trunc_dim) {
    RepLabel r;
    r.group = Group::HeisenbergWeyl;
    r.trunc_dim = trunc_dim;
    r.validate();
    return r;
}

RepLabel RepLabel::su2(double j) {
    RepLabel r;
    r.group = Group::SU2;
    double tj = 2.0 * j;
    r.twice_j = static_cast<int>(std::lround(tj));
    if (std::abs(tj - r.twice_j) > 1e-12)
        throw ConfigError("su2 weight j must be a half-integer, got " + std::to_string(j));
    r.validate();
    return r;
}

RepLabel RepLabel::su11(double k, int trunc_dim) {
    RepLabel r;
    r.group = Group::SU11;
    r.k = k;
    r.trunc_dim = trunc_dim;
    r.validate();
    return r;
}

RepLabel RepLabel::un1(int N, int m) {
    RepLabel r;
    r.group = Group::UN1;
    r.N = N;
    r.m = m;
    r.validate();
    return r;
}

int RepLabel::dim() const {
    switch (group) {
        case Group::HeisenbergWeyl: return trunc_dim;
        case Group::SU2: return twice_j + 1;
        case Group::SU11: return trunc_dim;
        case Group::UN1: return static_cast<int>(binomial(N + m, m));
    }
    return 0;
}

int RepLabel::trust_dim() const {
    switch (group) {
        case Group::HeisenbergWeyl: return trunc_dim - 1;
        case Group::SU2: return twice_j + 1;
        case Group::SU11: return trunc_dim - 1;
        case Group::UN1: return dim();
    }
    return 0;
}

void RepLabel::validate() const {
    switch (group) {
        case Group::HeisenbergWeyl:
            if (trunc_dim < 2) throw ConfigError("heisenberg_weyl: trunc_dim must be >= 2");
            break;
        case Group::SU2:
            if (twice_j < 1) throw ConfigError("su2: j must be >= 1/2");
            break;
        case Group::SU11:
            if (!(k > 0.0)) throw ConfigError("su11: k must be > 0");
            if (trunc_dim < 2) throw ConfigError("su11: trunc_dim must be >= 2");
            break;
        case Group::UN1:
            if (N < 1 || m < 1) throw ConfigError("un1: need N >= 1 and m >= 1");
            break;
    }
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

long long binomial(int n, int kk) {
    if (kk < 0 || kk > n) return 0;
    kk = std::min(kk, n - kk);
    long long r = 1;
    for (int i = 1; i <= kk; ++i) r = r * (n - kk + i) / i;
    return r;
}

PhasePoint PhasePoint::disc(Complex z) {
    if (std::abs(z) >= 1.0)
        throw ConfigError("disc point must satisfy |z| < 1, got |z| = " + std::to_string(std::abs(z)));
    return {Domain::Disc, z, {}, Chart::Primary};
}

}  // namespace gcs
