#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace linea::detail {

/// Scratch space for one 1-D lower-envelope pass over a line of length n.
struct EnvelopeScratch {
    std::vector<double> line;
    std::vector<double> out;
    std::vector<int> sites;
    std::vector<double> bounds;

    explicit EnvelopeScratch(int n)
        : line(n), out(n), sites(n), bounds(static_cast<std::size_t>(n) + 1)
    {}
};

/// Squared-distance lower envelope of the parabolas (q - p)^2 + f(p). Entries
/// of f equal to +inf are not sites; a line without sites stays +inf.
inline void squared_envelope_1d(EnvelopeScratch& s, int n)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double* f = s.line.data();
    int* v = s.sites.data();
    double* z = s.bounds.data();

    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == inf)
            continue;
        if (k < 0) {
            k = 0;
            v[0] = q;
            z[0] = -inf;
            z[1] = inf;
            continue;
        }
        const double fq = f[q] + static_cast<double>(q) * q;
        double cut = 0.0;
        for (;;) {
            const int p = v[k];
            cut = (fq - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
            if (cut > z[k])
                break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = cut;
        z[k + 1] = inf;
    }

    double* d = s.out.data();
    if (k < 0) {
        for (int q = 0; q < n; ++q)
            d[q] = inf;
        return;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q)
            ++k;
        const double dq = static_cast<double>(q - v[k]);
        d[q] = dq * dq + f[v[k]];
    }
}

} // namespace linea::detail
