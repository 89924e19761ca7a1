#include "bchardy/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bchardy/fft.hpp"

namespace bchardy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}
}  // namespace

std::vector<std::pair<double, double>> gauss_legendre(int n) {
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    std::sort(nw.begin(), nw.end());
    return nw;
}

Complex TrigPoly::eval(double theta) const {
    Complex acc{0.0, 0.0};
    for (const auto& [n, c] : coeffs) acc += c * std::polar(1.0, n * theta);
    return acc;
}

TrigPoly TrigPoly::exponential(int n, Complex c) {
    TrigPoly p;
    p.coeffs[n] = c;
    return p;
}

// ---------------------------------------------------------------------------
// BoundaryDistribution

BoundaryDistribution BoundaryDistribution::trig(std::map<int, Bicomplex> coeffs) {
    BoundaryDistribution b;
    b.kind_ = Kind::TrigCoeffs;
    b.coeffs_ = std::move(coeffs);
    return b;
}

BoundaryDistribution BoundaryDistribution::density(std::vector<Bicomplex> samples) {
    if (samples.empty()) throw std::invalid_argument("BoundaryDistribution: empty density");
    BoundaryDistribution b;
    b.kind_ = Kind::Density;
    b.samples_ = std::move(samples);
    return b;
}

BoundaryDistribution BoundaryDistribution::atomic(std::vector<ArcTerm> terms,
                                                  std::optional<std::vector<Bicomplex>> tail) {
    BoundaryDistribution b;
    b.kind_ = Kind::AtomicSum;
    b.terms_ = std::move(terms);
    b.tail_ = std::move(tail);
    return b;
}

BoundaryDistribution BoundaryDistribution::zero() {
    return trig({});
}

namespace {

Bicomplex density_eval(const std::vector<Bicomplex>& samples, double theta) {
    const int n = static_cast<int>(samples.size());
    const double dt = kTwoPi / n;
    const double t = wrap_angle(theta) / dt;
    const int k0 = std::min(static_cast<int>(t), n - 1);
    const int k1 = (k0 + 1) % n;
    const double w = t - k0;
    return (1.0 - w) * samples[k0] + w * samples[k1];
}

// theta relative to a piece: is the wrapped angle inside [start, start+len)?
bool in_piece(const ArcPiece& p, double theta, double* local) {
    double d = wrap_angle(theta - p.start);
    if (d < p.length) {
        *local = p.start + d;
        return true;
    }
    return false;
}

Bicomplex arc_eval(const std::vector<ArcTerm>& terms, double theta) {
    Bicomplex acc;
    for (const ArcTerm& t : terms) {
        Complex v{0.0, 0.0};
        for (const ArcPiece& p : t.pieces) {
            double local;
            if (in_piece(p, theta, &local)) v += p.profile(local);
        }
        acc += t.coeff * v;
    }
    return acc;
}

// int over the piece of profile * phi, by 32-node Gauss-Legendre.
Complex arc_piece_integral(const ArcPiece& p, const std::function<Complex(double)>& phi) {
    static const auto nw = gauss_legendre(32);
    const double mid = p.start + 0.5 * p.length;
    const double half = 0.5 * p.length;
    Complex acc{0.0, 0.0};
    for (const auto& [x, w] : nw) {
        const double t = mid + half * x;
        acc += w * p.profile(t) * phi(t);
    }
    return half * acc;
}

}  // namespace

Bicomplex BoundaryDistribution::eval(double theta) const {
    switch (kind_) {
        case Kind::TrigCoeffs: {
            Bicomplex acc;
            for (const auto& [n, c] : coeffs_) acc += c * std::polar(1.0, n * theta);
            return acc;
        }
        case Kind::Density:
            return density_eval(samples_, theta);
        case Kind::AtomicSum: {
            Bicomplex acc = arc_eval(terms_, theta);
            if (tail_) acc += density_eval(*tail_, theta);
            return acc;
        }
    }
    return {};
}

Bicomplex BoundaryDistribution::pair(const TrigPoly& phi) const {
    switch (kind_) {
        case Kind::TrigCoeffs: {
            // Orthogonality: int e^{i n t} e^{i m t} dt = 2 pi [m = -n].
            Bicomplex acc;
            for (const auto& [n, c] : coeffs_) {
                auto it = phi.coeffs.find(-n);
                if (it != phi.coeffs.end()) acc += c * it->second;
            }
            return kTwoPi * acc;
        }
        case Kind::Density: {
            const int n = static_cast<int>(samples_.size());
            Bicomplex acc;
            for (int k = 0; k < n; ++k) acc += samples_[k] * phi.eval(kTwoPi * k / n);
            return (kTwoPi / n) * acc;
        }
        case Kind::AtomicSum: {
            Bicomplex acc;
            auto phi_fn = [&phi](double t) { return phi.eval(t); };
            for (const ArcTerm& t : terms_) {
                Complex v{0.0, 0.0};
                for (const ArcPiece& p : t.pieces) v += arc_piece_integral(p, phi_fn);
                acc += t.coeff * v;
            }
            if (tail_) {
                const int n = static_cast<int>(tail_->size());
                Bicomplex tacc;
                for (int k = 0; k < n; ++k) tacc += (*tail_)[k] * phi.eval(kTwoPi * k / n);
                acc += (kTwoPi / n) * tacc;
            }
            return acc;
        }
    }
    return {};
}

Bicomplex BoundaryDistribution::fourier_coefficient(int n) const {
    return (1.0 / kTwoPi) * pair(TrigPoly::exponential(-n));
}

BoundaryDistribution BoundaryDistribution::plus_component() const {
    auto proj = [](const Bicomplex& w) { return Bicomplex(to_idempotent(w).plus); };
    switch (kind_) {
        case Kind::TrigCoeffs: {
            std::map<int, Bicomplex> c;
            for (const auto& [n, v] : coeffs_) c[n] = proj(v);
            return trig(std::move(c));
        }
        case Kind::Density: {
            std::vector<Bicomplex> s(samples_.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = proj(samples_[i]);
            return density(std::move(s));
        }
        case Kind::AtomicSum: {
            std::vector<ArcTerm> ts = terms_;
            for (ArcTerm& t : ts) t.coeff = proj(t.coeff);
            std::optional<std::vector<Bicomplex>> tail;
            if (tail_) {
                tail.emplace(tail_->size());
                for (std::size_t i = 0; i < tail_->size(); ++i) (*tail)[i] = proj((*tail_)[i]);
            }
            return atomic(std::move(ts), std::move(tail));
        }
    }
    return {};
}

BoundaryDistribution BoundaryDistribution::minus_component() const {
    auto proj = [](const Bicomplex& w) { return Bicomplex(to_idempotent(w).minus); };
    switch (kind_) {
        case Kind::TrigCoeffs: {
            std::map<int, Bicomplex> c;
            for (const auto& [n, v] : coeffs_) c[n] = proj(v);
            return trig(std::move(c));
        }
        case Kind::Density: {
            std::vector<Bicomplex> s(samples_.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = proj(samples_[i]);
            return density(std::move(s));
        }
        case Kind::AtomicSum: {
            std::vector<ArcTerm> ts = terms_;
            for (ArcTerm& t : ts) t.coeff = proj(t.coeff);
            std::optional<std::vector<Bicomplex>> tail;
            if (tail_) {
                tail.emplace(tail_->size());
                for (std::size_t i = 0; i < tail_->size(); ++i) (*tail)[i] = proj((*tail_)[i]);
            }
            return atomic(std::move(ts), std::move(tail));
        }
    }
    return {};
}

std::vector<Bicomplex> BoundaryDistribution::to_density(int n_samples) const {
    std::vector<Bicomplex> out(n_samples);
    for (int k = 0; k < n_samples; ++k) out[k] = eval(kTwoPi * k / n_samples);
    return out;
}

// ---------------------------------------------------------------------------
// Pairings against interior functions

std::vector<double> default_pairing_radii() {
    std::vector<double> r;
    for (int k = 3; k <= 9; ++k) r.push_back(1.0 - std::pow(2.0, -k));
    return r;
}

namespace {

struct Extrapolated {
    Bicomplex value;
    double error;
};

// Neville tableau at t = 0 for nodes t_i = 1 - r_i; Theorem-3.1-type growth
// makes the circle integrals polynomial-like in 1 - r.
Extrapolated neville_to_zero(const std::vector<double>& ts, std::vector<Bicomplex> vs) {
    const std::size_t n = ts.size();
    Bicomplex prev = vs.back();
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            const double denom = ts[i - j] - ts[i];
            vs[i] = (1.0 / denom) * (ts[i - j] * vs[i] - ts[i] * vs[i - 1]);
        }
        if (j == n - 2) prev = vs[n - 1];
    }
    return {vs[n - 1], bnorm(vs[n - 1] - prev)};
}

}  // namespace

// Hardy-type functions have effective bandwidth ~1/(1-r) on the circle of
// radius r; sampling must outrun it or high modes alias into the pairing.
static int circle_samples(int n_theta, double r) {
    int n = n_theta;
    const double need = 24.0 / (1.0 - r);
    while (n < need && n < 16384) n *= 2;
    return n;
}

PairingResult distributional_pairing(const DiskFunction& f,
                                     const std::function<Complex(double)>& phi,
                                     std::vector<double> radii, int n_theta) {
    if (radii.empty()) radii = default_pairing_radii();
    std::sort(radii.begin(), radii.end());
    std::vector<double> ts;
    std::vector<Bicomplex> vs;
    for (double r : radii) {
        const int n = circle_samples(n_theta, r);
        Bicomplex acc;
        for (int k = 0; k < n; ++k) {
            const double t = kTwoPi * k / n;
            acc += f.evaluate(std::polar(r, t)) * phi(t);
        }
        ts.push_back(1.0 - r);
        vs.push_back((kTwoPi / n) * acc);
    }
    const Extrapolated e = neville_to_zero(ts, std::move(vs));
    PairingResult out;
    out.value = e.value;
    out.radii_used = std::move(radii);
    out.extrapolation_error = e.error;
    out.converged = e.error <= 1e-3 * (1.0 + bnorm(e.value));
    return out;
}

PairingResult distributional_pairing(const DiskFunction& f, const TrigPoly& phi,
                                     std::vector<double> radii, int n_theta) {
    return distributional_pairing(
        f, [&phi](double t) { return phi.eval(t); }, std::move(radii), n_theta);
}

double poisson_kernel(double r, double theta) {
    return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
}

Bicomplex poisson_extend(const BoundaryDistribution& b, double r, double theta) {
    if (r < 0.0 || r >= 1.0) throw std::domain_error("poisson_extend: need 0 <= r < 1");
    switch (b.kind()) {
        case BoundaryDistribution::Kind::TrigCoeffs: {
            Bicomplex acc;
            for (const auto& [n, c] : b.coeffs())
                acc += c * (std::pow(r, std::abs(n)) * std::polar(1.0, n * theta));
            return acc;
        }
        case BoundaryDistribution::Kind::Density: {
            const auto& u = b.samples();
            const int n = static_cast<int>(u.size());
            Bicomplex acc;
            for (int k = 0; k < n; ++k) acc += poisson_kernel(r, theta - kTwoPi * k / n) * u[k];
            return (1.0 / n) * acc;
        }
        case BoundaryDistribution::Kind::AtomicSum: {
            Bicomplex acc;
            auto pk = [r, theta](double t) { return Complex{poisson_kernel(r, theta - t), 0.0}; };
            for (const ArcTerm& term : b.terms()) {
                Complex v{0.0, 0.0};
                for (const ArcPiece& p : term.pieces) v += arc_piece_integral(p, pk);
                acc += term.coeff * v;
            }
            acc = (1.0 / kTwoPi) * acc;
            if (b.tail()) {
                const auto& u = *b.tail();
                const int n = static_cast<int>(u.size());
                Bicomplex tacc;
                for (int k = 0; k < n; ++k) tacc += poisson_kernel(r, theta - kTwoPi * k / n) * u[k];
                acc += (1.0 / n) * tacc;
            }
            return acc;
        }
    }
    return {};
}

BoundaryDistribution boundary_coefficients(const DiskFunction& f, int max_mode,
                                           std::vector<double> radii) {
    if (radii.empty()) radii = default_pairing_radii();
    std::sort(radii.begin(), radii.end());
    int base = 1024;
    while (base < 4 * max_mode) base *= 2;

    // One FFT per circle gives every mode at once; each circle is sampled
    // past its own effective bandwidth, then every mode is extrapolated.
    std::vector<double> ts;
    std::vector<int> sizes;
    std::vector<std::vector<Complex>> sc_coeffs, vec_coeffs;
    for (double r : radii) {
        const int n_theta = circle_samples(base, r);
        std::vector<Complex> sc(n_theta), vec(n_theta);
        for (int k = 0; k < n_theta; ++k) {
            const Bicomplex v = f.evaluate(std::polar(r, kTwoPi * k / n_theta));
            sc[k] = v.sc;
            vec[k] = v.vec;
        }
        sc_coeffs.push_back(fourier_coefficients(sc));
        vec_coeffs.push_back(fourier_coefficients(vec));
        ts.push_back(1.0 - r);
        sizes.push_back(n_theta);
    }
    std::map<int, Bicomplex> out;
    for (int n = -max_mode; n <= max_mode; ++n) {
        std::vector<Bicomplex> vs;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const int bin = n >= 0 ? n : sizes[i] + n;
            vs.emplace_back(sc_coeffs[i][bin], vec_coeffs[i][bin]);
        }
        const Bicomplex c = neville_to_zero(ts, std::move(vs)).value;
        if (bnorm(c) > 1e-14) out[n] = c;
    }
    return BoundaryDistribution::trig(std::move(out));
}

double poisson_reproduction_check(const DiskFunction& f, const BoundaryDistribution& b,
                                  const std::vector<Complex>& sample_points) {
    double worst = 0.0;
    for (Complex z : sample_points) {
        const double r = std::abs(z);
        const double theta = std::arg(z);
        worst = std::max(worst, bnorm(f.evaluate(z) - poisson_extend(b, r, theta)));
    }
    return worst;
}

std::vector<std::pair<double, double>> lp_boundary_convergence(const DiskFunction& f,
                                                               const BoundaryDistribution& f_boundary,
                                                               double p, std::vector<double> radii,
                                                               int n_theta) {
    if (radii.empty()) radii = default_pairing_radii();
    std::sort(radii.begin(), radii.end());
    std::vector<std::pair<double, double>> out;
    for (double r : radii) {
        double acc = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const double t = kTwoPi * k / n_theta;
            acc += std::pow(bnorm(f.evaluate(std::polar(r, t)) - f_boundary.eval(t)), p);
        }
        out.emplace_back(r, acc * kTwoPi / n_theta);
    }
    return out;
}

MembershipReport lone_distbv_check(const DiskFunction& f, const LoneDistBvOptions& opts) {
    MembershipReport rep;
    rep.class_name = "L1-distbv";
    std::vector<double> radii = opts.radii.empty() ? default_pairing_radii() : opts.radii;
    std::sort(radii.begin(), radii.end());
    const int nt = opts.n_theta;
    rep.residuals["basis_modes"] = opts.basis_modes;

    // Boundary trace and L1 convergence toward it (prerequisites).
    std::vector<Bicomplex> u(nt);
    for (int k = 0; k < nt; ++k) u[k] = f.evaluate(std::polar(1.0, kTwoPi * k / nt));
    double u_l1 = 0.0;
    for (const Bicomplex& v : u) u_l1 += bnorm(v) * kTwoPi / nt;
    rep.residuals["boundary_l1"] = u_l1;

    double last_err = 0.0, first_err = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double e = 0.0;
        for (int k = 0; k < nt; ++k) {
            const double t = kTwoPi * k / nt;
            e += bnorm(f.evaluate(std::polar(radii[i], t)) - u[k]) * kTwoPi / nt;
        }
        if (i == 0) first_err = e;
        last_err = e;
    }
    rep.residuals["l1_error_first"] = first_err;
    rep.residuals["l1_error_last"] = last_err;
    const bool l1_ok = last_err <= opts.l1_tol * (1.0 + u_l1) && last_err <= first_err + 1e-12;
    if (!l1_ok) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    // Pairing vs direct boundary integration on the test basis. One FFT per
    // circle yields every mode's pairing integral at once:
    // int f(r e^{i t}) e^{i n t} dt = 2 pi c_{-n}(r).
    std::vector<double> ts;
    std::vector<std::vector<Complex>> sc_c, vec_c;
    for (double r : radii) {
        std::vector<Complex> sc(nt), vec(nt);
        for (int k = 0; k < nt; ++k) {
            const Bicomplex v = f.evaluate(std::polar(r, kTwoPi * k / nt));
            sc[k] = v.sc;
            vec[k] = v.vec;
        }
        sc_c.push_back(fourier_coefficients(sc));
        vec_c.push_back(fourier_coefficients(vec));
        ts.push_back(1.0 - r);
    }
    double worst = 0.0, worst_budget = 0.0;
    const BoundaryDistribution ub = BoundaryDistribution::density(u);
    for (int n = -opts.basis_modes; n <= opts.basis_modes; ++n) {
        const int bin = (-n) >= 0 ? -n : nt - n;  // coefficient index of c_{-n}
        std::vector<Bicomplex> vs;
        for (std::size_t i = 0; i < ts.size(); ++i)
            vs.push_back(kTwoPi * Bicomplex(sc_c[i][bin], vec_c[i][bin]));
        const Extrapolated pr = neville_to_zero(ts, std::move(vs));
        const Bicomplex direct = ub.pair(TrigPoly::exponential(n));
        const double diff = bnorm(pr.value - direct);
        const double budget = pr.error + opts.pairing_tol * (1.0 + bnorm(direct));
        if (diff - budget > worst - worst_budget) {
            worst = diff;
            worst_budget = budget;
        }
    }
    rep.residuals["pairing_max_diff"] = worst;
    rep.residuals["pairing_budget"] = worst_budget;
    rep.verdict = worst <= worst_budget ? Verdict::Pass : Verdict::Fail;
    return rep;
}

}  // namespace bchardy
