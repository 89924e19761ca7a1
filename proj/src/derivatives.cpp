#include "bchardy/derivatives.hpp"

#include <cmath>
#include <stdexcept>

#include "bchardy/fft.hpp"

namespace bchardy {

std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order) {
    const int n = static_cast<int>(nodes.size()) - 1;
    const int m = order;
    if (n < m) throw std::invalid_argument("fornberg_weights: not enough nodes");
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

namespace {

struct RadialStencil {
    int first;                   // index into the signed-node universe
    std::vector<double> weights;
};

// Signed-radius universe: -r_{N-1},...,-r_0, r_0,...,r_{N-1}. A sample at
// (-r, theta) is the sample at (r, theta+pi), which is on-grid for even
// n_angles. This keeps stencils centered near the coordinate origin.
std::vector<double> signed_radii(const PolarGrid& g) {
    const auto& r = g.radii();
    std::vector<double> s;
    s.reserve(2 * r.size());
    for (auto it = r.rbegin(); it != r.rend(); ++it) s.push_back(-*it);
    for (double x : r) s.push_back(x);
    return s;
}

RadialStencil make_stencil(const std::vector<double>& nodes, double x0, int width) {
    const int n = static_cast<int>(nodes.size());
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x0);
    int center = static_cast<int>(std::distance(nodes.begin(), it));
    int first = std::clamp(center - width / 2, 0, n - width);
    std::vector<double> local(nodes.begin() + first, nodes.begin() + first + width);
    return {first, fornberg_weights(x0, local, 1)};
}

struct PolarDerivatives {
    std::vector<Complex> d_r;
    std::vector<Complex> d_theta;
    std::vector<Complex> d_r_low;  // 3-node radial scheme, for the error estimate
};

PolarDerivatives differentiate_field(const PolarGrid& g, const std::vector<Complex>& vals) {
    const int nr = g.n_radii();
    const int nt = g.n_angles();
    PolarDerivatives out;
    out.d_r.resize(vals.size());
    out.d_theta.resize(vals.size());
    out.d_r_low.resize(vals.size());

    // Spectral derivative in theta, ring by ring.
    std::vector<Complex> row(nt);
    for (int i = 0; i < nr; ++i) {
        for (int k = 0; k < nt; ++k) row[k] = vals[g.index(i, k)];
        fft_forward(row);
        for (int k = 0; k < nt; ++k) {
            int freq = (k <= nt / 2) ? k : k - nt;
            if (k == nt / 2) freq = 0;  // Nyquist mode carries no usable phase
            row[k] *= Complex{0.0, static_cast<double>(freq)};
        }
        fft_inverse(row);
        const double inv_n = 1.0 / nt;
        for (int k = 0; k < nt; ++k) out.d_theta[g.index(i, k)] = row[k] * inv_n;
    }

    // Radial derivative on the signed-node universe.
    const std::vector<double> nodes = signed_radii(g);
    auto value_at = [&](int node_idx, int k) -> Complex {
        const int n = nr;
        if (node_idx >= n) return vals[g.index(node_idx - n, k)];
        const int ring = n - 1 - node_idx;
        return vals[g.index(ring, (k + nt / 2) % nt)];
    };
    for (int i = 0; i < nr; ++i) {
        const RadialStencil s5 = make_stencil(nodes, g.radius(i), 5);
        const RadialStencil s3 = make_stencil(nodes, g.radius(i), 3);
        for (int k = 0; k < nt; ++k) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j < s5.weights.size(); ++j)
                acc += s5.weights[j] * value_at(s5.first + static_cast<int>(j), k);
            out.d_r[g.index(i, k)] = acc;
            Complex lo{0.0, 0.0};
            for (std::size_t j = 0; j < s3.weights.size(); ++j)
                lo += s3.weights[j] * value_at(s3.first + static_cast<int>(j), k);
            out.d_r_low[g.index(i, k)] = lo;
        }
    }
    return out;
}

struct WirtingerPair {
    DiskFunction dz;
    DiskFunction dzbar;
    double est_error = 0.0;
};

WirtingerPair numerical_wirtinger(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid) {
    if (!grid) {
        if (f.is_sampled())
            grid = f.grid_ptr();
        else
            grid = std::make_shared<const PolarGrid>(PolarGrid::make_default());
    }
    const DiskFunction samp =
        (f.is_sampled() && f.grid().same_layout(*grid)) ? f : f.materialize(grid);
    const PolarGrid& g = samp.grid();
    const auto& vals = samp.values();

    std::vector<Complex> sc(vals.size()), vec(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        sc[i] = vals[i].sc;
        vec[i] = vals[i].vec;
    }
    const PolarDerivatives dsc = differentiate_field(g, sc);
    const PolarDerivatives dvec = differentiate_field(g, vec);

    // dz = e^{-i theta}/2 (d_r - (i/r) d_theta); dz* = e^{i theta}/2 (d_r + (i/r) d_theta)
    std::vector<Bicomplex> dz(vals.size()), dzbar(vals.size());
    double est = 0.0;
    const Complex iu{0.0, 1.0};
    for (int i = 0; i < g.n_radii(); ++i) {
        const double r = g.radius(i);
        for (int k = 0; k < g.n_angles(); ++k) {
            const std::size_t idx = g.index(i, k);
            const Complex em = std::polar(0.5, -g.angle(k));
            const Complex ep = std::polar(0.5, g.angle(k));
            const Complex sc_t = iu * dsc.d_theta[idx] / r;
            const Complex vec_t = iu * dvec.d_theta[idx] / r;
            dz[idx] = Bicomplex{em * (dsc.d_r[idx] - sc_t), em * (dvec.d_r[idx] - vec_t)};
            dzbar[idx] = Bicomplex{ep * (dsc.d_r[idx] + sc_t), ep * (dvec.d_r[idx] + vec_t)};
            const Bicomplex low{em * (dsc.d_r_low[idx] - sc_t), em * (dvec.d_r_low[idx] - vec_t)};
            est = std::max(est, bnorm(dz[idx] - low));
        }
    }
    WirtingerPair out;
    out.dz = DiskFunction::sampled(samp.grid_ptr(), std::move(dz), f.codomain());
    out.dzbar = DiskFunction::sampled(samp.grid_ptr(), std::move(dzbar), f.codomain());
    out.est_error = est;
    return out;
}

}  // namespace

DerivativeReport wirtinger_dz(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid) {
    if (f.is_closed_form())
        return {DiskFunction::closed_form(f.closed().d_z(), f.codomain()),
                DerivativeScheme::ClosedFormExact, 0.0};
    WirtingerPair p = numerical_wirtinger(f, std::move(grid));
    return {p.dz, DerivativeScheme::SpectralFiniteDifference, p.est_error};
}

DerivativeReport wirtinger_dzbar(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid) {
    if (f.is_closed_form())
        return {DiskFunction::closed_form(f.closed().d_zbar(), f.codomain()),
                DerivativeScheme::ClosedFormExact, 0.0};
    WirtingerPair p = numerical_wirtinger(f, std::move(grid));
    return {p.dzbar, DerivativeScheme::SpectralFiniteDifference, p.est_error};
}

namespace {

// partialbar f = p+ (dz f) + p- (dz* f); partial swaps the two.
DerivativeReport combine_bc(const DiskFunction& f, bool bar, std::shared_ptr<const PolarGrid> grid) {
    if (f.is_closed_form()) {
        const ClosedForm dz = f.closed().d_z();
        const ClosedForm dzb = f.closed().d_zbar();
        const ClosedForm out = bar ? dz.scaled(bc_p_plus()) + dzb.scaled(bc_p_minus())
                                   : dzb.scaled(bc_p_plus()) + dz.scaled(bc_p_minus());
        return {DiskFunction::closed_form(out, Codomain::BicomplexValued),
                DerivativeScheme::ClosedFormExact, 0.0};
    }
    WirtingerPair p = numerical_wirtinger(f, std::move(grid));
    const DiskFunction& a = bar ? p.dz : p.dzbar;
    const DiskFunction& b = bar ? p.dzbar : p.dz;
    DiskFunction out = a.scaled(bc_p_plus()) + b.scaled(bc_p_minus());
    return {out, DerivativeScheme::SpectralFiniteDifference, p.est_error};
}

}  // namespace

DerivativeReport bc_partial(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid) {
    return combine_bc(f, false, std::move(grid));
}

DerivativeReport bc_partialbar(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid) {
    return combine_bc(f, true, std::move(grid));
}

DerivativeReport bc_partialbar_power(const DiskFunction& f, int k, std::shared_ptr<const PolarGrid> grid) {
    if (k < 0) throw std::invalid_argument("bc_partialbar_power: negative order");
    DerivativeReport rep{f, DerivativeScheme::ClosedFormExact, 0.0};
    for (int j = 0; j < k; ++j) {
        DerivativeReport next = bc_partialbar(rep.values, grid);
        next.est_error += rep.est_error;
        rep = std::move(next);
    }
    return rep;
}

}  // namespace bchardy
