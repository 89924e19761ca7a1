#include "bchardy/integral_ops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bchardy/util.hpp"

namespace bchardy {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double harmonic(int n) {
    double r = 0.0;
    for (int k = 1; k <= n; ++k) r += 1.0 / k;
    return r;
}

Complex ipow(Complex z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    Complex r{1.0, 0.0};
    for (int k = 0; k < n; ++k) r *= z;
    return r;
}

void check_kernel_id(KernelId id) {
    if (id.m < 0 || id.gamma < 0 || id.m + id.gamma < 1)
        throw std::invalid_argument("KernelId: need m, gamma >= 0 and m + gamma >= 1");
}

// Quintic smoothstep: 0 below rho_in, 1 above rho_out, C^2 in between.
inline double chi_blend(double d, double rho_in, double rho_out) {
    if (d <= rho_in) return 0.0;
    if (d >= rho_out) return 1.0;
    const double x = (d - rho_in) / (rho_out - rho_in);
    return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// Near-field radial structure: kernel(z, z + rho e^{i phi}) * rho =
// pref * rho^a * (c0 + clog * log(rho^2)) * e^{i ang phi}.
struct NearForm {
    double a = 0.0;
    Complex pref{1.0, 0.0};
    double c0 = 1.0;
    double clog = 0.0;
    int ang = 0;
};

NearForm near_form_cauchy() { return {0.0, {1.0, 0.0}, 1.0, 0.0, -1}; }
NearForm near_form_cauchy_conj() { return {0.0, {1.0, 0.0}, 1.0, 0.0, +1}; }

NearForm near_form_bh(KernelId id) {
    // u = z - zeta = -rho e^{i phi}:
    // u^{m-1} (u*)^{g-1} = (-1)^{m+g} rho^{m+g-2} e^{i (m-g) phi}.
    NearForm nf;
    const int m = id.m, g = id.gamma;
    nf.a = m + g - 1;
    nf.ang = m - g;
    const double sign = ((m + g) % 2 == 0) ? 1.0 : -1.0;
    if (m == 0) {
        nf.pref = sign / (factorial(g - 1) * kPi);
    } else if (g == 0) {
        nf.pref = sign / (factorial(m - 1) * kPi);
    } else {
        nf.pref = sign / (factorial(m - 1) * factorial(g - 1) * kPi);
        nf.c0 = -(harmonic(m - 1) + harmonic(g - 1));
        nf.clog = 1.0;
    }
    return nf;
}

// Exact radial moments over [ra, rb]: M0 = int rho^a, Mlog = int rho^a log(rho^2).
double moment_pow(double a, double ra, double rb) {
    return (std::pow(rb, a + 1.0) - std::pow(ra, a + 1.0)) / (a + 1.0);
}

double moment_pow_log(double a, double ra, double rb) {
    auto prim = [a](double r) {
        if (r == 0.0) return 0.0;
        const double p = std::pow(r, a + 1.0);
        return p * (2.0 * std::log(r)) / (a + 1.0) - 2.0 * p / ((a + 1.0) * (a + 1.0));
    };
    return prim(rb) - prim(ra);
}

}  // namespace

Complex kernel_K(KernelId id, Complex z) {
    check_kernel_id(id);
    if (z == Complex{0.0, 0.0}) throw std::domain_error("kernel_K: z = 0 is not integrable pointwise");
    const int m = id.m, g = id.gamma;
    if (m == 0) return ipow(z, -1) * ipow(std::conj(z), g - 1) / (factorial(g - 1) * kPi);
    if (g == 0) return ipow(z, m - 1) * ipow(std::conj(z), -1) / (factorial(m - 1) * kPi);
    const double logpart = std::log(std::norm(z)) - harmonic(m - 1) - harmonic(g - 1);
    return ipow(z, m - 1) * ipow(std::conj(z), g - 1) * logpart / (factorial(m - 1) * factorial(g - 1) * kPi);
}

DiskOperator::DiskOperator(std::shared_ptr<const PolarGrid> grid, QuadratureScheme scheme)
    : grid_(std::move(grid)), scheme_(scheme) {
    if (!grid_) throw std::invalid_argument("DiskOperator: null grid");
    const PolarGrid& g = *grid_;
    cx_.resize(g.size());
    cy_.resize(g.size());
    cw_.resize(g.size());
    for (int i = 0; i < g.n_radii(); ++i) {
        const double w = g.weight(i);
        for (int k = 0; k < g.n_angles(); ++k) {
            const std::size_t idx = g.index(i, k);
            const Complex node = g.node(i, k);
            cx_[idx] = node.real();
            cy_[idx] = node.imag();
            cw_[idx] = w;
        }
    }
}

DiskOperator::Band DiskOperator::band_at(Complex z) const {
    const double h = grid_->cell_scale(std::abs(z));
    double rho_in = scheme_.rho_in_cells * h;
    double rho_out = scheme_.rho_out_cells * h;
    const double cap = 0.25;
    if (rho_out > cap) {
        rho_in *= cap / rho_out;
        rho_out = cap;
    }
    return {rho_in, rho_out};
}

DiskOperator::Bound DiskOperator::bind(const DiskFunction& f) const {
    Bound b;
    b.op_ = this;
    b.f_ = f;
    const std::size_t n = grid_->size();
    b.pr_.resize(n);
    b.pi_.resize(n);
    b.mr_.resize(n);
    b.mi_.resize(n);
    const PolarGrid& g = *grid_;
    for (int i = 0; i < g.n_radii(); ++i)
        for (int k = 0; k < g.n_angles(); ++k) {
            const std::size_t idx = g.index(i, k);
            const IdempotentPair p = to_idempotent(f.evaluate(g.node(i, k)));
            b.pr_[idx] = p.plus.real();
            b.pi_[idx] = p.plus.imag();
            b.mr_[idx] = p.minus.real();
            b.mi_[idx] = p.minus.imag();
        }
    return b;
}

namespace {

struct FarAccum {
    double re = 0.0, im = 0.0;
};

// Far field: sum over cells of chi(d) * w * kernel * f. KernelEval maps the
// offset (dx, dy) = zeta - z to the kernel value.
template <typename KernelEval>
FarAccum far_sum(const std::vector<double>& cx, const std::vector<double>& cy,
                 const std::vector<double>& cw, const std::vector<double>& fr,
                 const std::vector<double>& fi, Complex z, double rho_in, double rho_out,
                 KernelEval&& kernel) {
    const double zx = z.real(), zy = z.imag();
    const double rin2 = rho_in * rho_in;
    const double rout2 = rho_out * rho_out;
    FarAccum acc;
    const std::size_t n = cx.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = cx[i] - zx;
        const double dy = cy[i] - zy;
        const double d2 = dx * dx + dy * dy;
        if (d2 <= rin2) continue;
        double w = cw[i];
        if (d2 < rout2) w *= chi_blend(std::sqrt(d2), rho_in, rho_out);
        double kr, ki;
        kernel(dx, dy, d2, kr, ki);
        const double vr = fr[i], vi = fi[i];
        acc.re += w * (kr * vr - ki * vi);
        acc.im += w * (kr * vi + ki * vr);
    }
    return acc;
}

// Near field in local polar coordinates, weighted by 1 - chi and clipped to D.
Complex near_sum(const NearForm& nf, const std::function<Complex(Complex)>& f_eval, Complex z,
                 double rho_in, double rho_out, int n_radial, int n_angular) {
    const double dr = rho_out / n_radial;
    const double dphi = 2.0 * kPi / n_angular;
    const bool clipped = std::abs(z) + rho_out > 1.0;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n_radial; ++j) {
        const double ra = j * dr, rb = ra + dr;
        const double rmid = 0.5 * (ra + rb);
        const double blend = 1.0 - chi_blend(rmid, rho_in, rho_out);
        if (blend == 0.0) continue;
        const double mom = nf.c0 * moment_pow(nf.a, ra, rb) +
                           (nf.clog != 0.0 ? nf.clog * moment_pow_log(nf.a, ra, rb) : 0.0);
        const Complex radial = nf.pref * (blend * mom);
        Complex ring{0.0, 0.0};
        for (int k = 0; k < n_angular; ++k) {
            const double phi = (k + 0.5) * dphi;
            const Complex dir = std::polar(1.0, phi);
            const Complex zeta = z + rmid * dir;
            if (clipped && std::norm(zeta) > 1.0) continue;
            const Complex ang = std::polar(1.0, nf.ang * phi);
            ring += f_eval(zeta) * ang;
        }
        acc += radial * ring * dphi;
    }
    return acc;
}

void kernel_cauchy(double dx, double dy, double d2, double& kr, double& ki) {
    // 1/(zeta - z)
    const double inv = 1.0 / d2;
    kr = dx * inv;
    ki = -dy * inv;
}

void kernel_cauchy_conj(double dx, double dy, double d2, double& kr, double& ki) {
    // 1/(zeta* - z*) = conj(1/(zeta - z))
    const double inv = 1.0 / d2;
    kr = dx * inv;
    ki = dy * inv;
}

}  // namespace

Complex DiskOperator::Bound::T_at(Complex z) const {
    if (!f_.is_complex_valued())
        throw std::invalid_argument("T: integrand must be complex-valued");
    if (std::abs(z) > 1.0 + 1e-12) throw std::domain_error("T: need |z| <= 1");
    const DiskOperator& op = *op_;
    const auto band = op.band_at(z);
    const FarAccum far = far_sum(op.cx_, op.cy_, op.cw_, mr_, mi_, z, band.rho_in, band.rho_out,
                                 kernel_cauchy);
    const DiskFunction f = f_;
    const int n_ang = (std::abs(z) + band.rho_out > 1.0) ? op.scheme_.near_angular_clipped
                                                         : op.scheme_.near_angular;
    const Complex near = near_sum(
        near_form_cauchy(), [&f](Complex zeta) { return f.evaluate(zeta).sc; }, z, band.rho_in,
        band.rho_out, op.scheme_.near_radial, n_ang);
    return (-1.0 / kPi) * (Complex{far.re, far.im} + near);
}

Bicomplex DiskOperator::Bound::TB_at(Complex z) const {
    if (std::abs(z) > 1.0 + 1e-12) throw std::domain_error("TB: need |z| <= 1");
    const DiskOperator& op = *op_;
    const auto band = op.band_at(z);
    const int n_ang = (std::abs(z) + band.rho_out > 1.0) ? op.scheme_.near_angular_clipped
                                                         : op.scheme_.near_angular;
    const DiskFunction f = f_;

    const FarAccum far_p = far_sum(op.cx_, op.cy_, op.cw_, pr_, pi_, z, band.rho_in, band.rho_out,
                                   kernel_cauchy_conj);
    const Complex near_p = near_sum(
        near_form_cauchy_conj(), [&f](Complex zeta) { return to_idempotent(f.evaluate(zeta)).plus; },
        z, band.rho_in, band.rho_out, op.scheme_.near_radial, n_ang);
    const Complex plus = (-1.0 / kPi) * (Complex{far_p.re, far_p.im} + near_p);

    const FarAccum far_m = far_sum(op.cx_, op.cy_, op.cw_, mr_, mi_, z, band.rho_in, band.rho_out,
                                   kernel_cauchy);
    const Complex near_m = near_sum(
        near_form_cauchy(), [&f](Complex zeta) { return to_idempotent(f.evaluate(zeta)).minus; }, z,
        band.rho_in, band.rho_out, op.scheme_.near_radial, n_ang);
    const Complex minus = (-1.0 / kPi) * (Complex{far_m.re, far_m.im} + near_m);

    return from_idempotent(plus, minus);
}

Complex DiskOperator::Bound::convolve_at(KernelId id, Complex z) const {
    check_kernel_id(id);
    if (!f_.is_complex_valued())
        throw std::invalid_argument("convolve_kernel: integrand must be complex-valued");
    if (std::abs(z) > 1.0 + 1e-12) throw std::domain_error("convolve_kernel: need |z| <= 1");
    const DiskOperator& op = *op_;
    const auto band = op.band_at(z);
    const FarAccum far =
        far_sum(op.cx_, op.cy_, op.cw_, mr_, mi_, z, band.rho_in, band.rho_out,
                [id](double dx, double dy, double, double& kr, double& ki) {
                    const Complex k = kernel_K(id, Complex{-dx, -dy});  // K(z - zeta)
                    kr = k.real();
                    ki = k.imag();
                });
    const DiskFunction f = f_;
    const int n_ang = (std::abs(z) + band.rho_out > 1.0) ? op.scheme_.near_angular_clipped
                                                         : op.scheme_.near_angular;
    const Complex near = near_sum(
        near_form_bh(id), [&f](Complex zeta) { return f.evaluate(zeta).sc; }, z, band.rho_in,
        band.rho_out, op.scheme_.near_radial, n_ang);
    return Complex{far.re, far.im} + near;
}

Complex DiskOperator::T(const DiskFunction& f, Complex z) const { return bind(f).T_at(z); }

Bicomplex DiskOperator::TB(const DiskFunction& f, Complex z) const { return bind(f).TB_at(z); }

Complex DiskOperator::convolve_kernel(KernelId id, const DiskFunction& f, Complex z) const {
    return bind(f).convolve_at(id, z);
}

DiskFunction DiskOperator::materialize_T(const DiskFunction& f) const {
    const Bound b = bind(f);
    const PolarGrid& g = *grid_;
    std::vector<Bicomplex> out(g.size());
    parallel_for(g.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / g.n_angles();
        const int k = static_cast<int>(idx) % g.n_angles();
        out[idx] = Bicomplex(b.T_at(g.node(i, k)));
    });
    return DiskFunction::sampled(grid_, std::move(out), Codomain::ComplexValued);
}

DiskFunction DiskOperator::materialize_TB(const DiskFunction& f) const {
    const Bound b = bind(f);
    const PolarGrid& g = *grid_;
    std::vector<Bicomplex> out(g.size());
    parallel_for(g.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / g.n_angles();
        const int k = static_cast<int>(idx) % g.n_angles();
        out[idx] = b.TB_at(g.node(i, k));
    });
    return DiskFunction::sampled(grid_, std::move(out), Codomain::BicomplexValued);
}

std::vector<Bicomplex> DiskOperator::boundary_TB(const DiskFunction& f, int n_samples) const {
    const Bound b = bind(f);
    std::vector<Bicomplex> out(n_samples);
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / n_samples;
        out[k] = b.TB_at(std::polar(1.0, theta));
    });
    return out;
}

DiskFunction DiskOperator::iterated_TB(const std::vector<DiskFunction>& levels,
                                       const DiskFunction& w) const {
    DiskFunction nest = materialize_TB(w);
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) nest = materialize_TB(*it + nest);
    return nest;
}

Bicomplex DiskOperator::iterated_TB_at(const std::vector<DiskFunction>& levels,
                                       const DiskFunction& w, Complex z) const {
    if (levels.empty()) return TB(w, z);
    DiskFunction nest = materialize_TB(w);
    for (std::size_t j = levels.size() - 1; j >= 1; --j) nest = materialize_TB(levels[j] + nest);
    return TB(levels.front() + nest, z);
}

Complex oracle_quadrature(const DiskFunction& f,
                          const std::function<Complex(Complex, Complex)>& kernel, Complex z,
                          int resolution) {
    if (resolution < 64) throw std::invalid_argument("oracle_quadrature: resolution >= 64 required");
    // Cells of linear size ~1/resolution: `resolution` radial shells and
    // 4*resolution sectors (arc length 2 pi / (4 R) ~ 1/R near the rim).
    const int nr = resolution;
    const int nt = 4 * resolution;
    const double dr = 1.0 / nr;
    const double dth = 2.0 * kPi / nt;
    Complex acc{0.0, 0.0};
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * dr;
        const double w = r * dr * dth;
        const double excl = 1.5 * std::hypot(dr, r * dth);
        for (int k = 0; k < nt; ++k) {
            const Complex zeta = std::polar(r, (k + 0.5) * dth);
            if (std::abs(zeta - z) < excl) continue;
            acc += w * kernel(z, zeta) * f.evaluate(zeta).sc;
        }
    }
    return acc;
}

}  // namespace bchardy
