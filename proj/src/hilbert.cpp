#include "bchardy/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bchardy/fft.hpp"

namespace bchardy {

namespace {
constexpr double kPi = std::numbers::pi;
}

HilbertPvResult hilbert_pv(const std::function<Complex(double)>& u, double theta,
                           std::vector<double> epsilons) {
    if (epsilons.empty())
        for (int k = 4; k <= 10; ++k) epsilons.push_back(std::pow(2.0, -k));
    std::sort(epsilons.begin(), epsilons.end(), std::greater<>());

    static const auto nw = gauss_legendre(16);
    // Symmetric excision folds the kernel's odd singularity:
    //   I(eps) = (1/pi) int_eps^pi [u(theta-t) - u(theta+t)] / (2 tan(t/2)) dt,
    // whose integrand extends continuously to t = 0 for smooth u.
    auto truncated = [&](double eps) {
        Complex acc{0.0, 0.0};
        double a = eps;
        while (a < kPi) {
            const double b = std::min(2.0 * a, kPi);
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (const auto& [x, w] : nw) {
                const double t = mid + half * x;
                acc += (w * half / (2.0 * std::tan(0.5 * t))) * (u(theta - t) - u(theta + t));
            }
            a = b;
        }
        return acc / kPi;
    };

    std::vector<Complex> vals;
    for (double e : epsilons) vals.push_back(truncated(e));

    HilbertPvResult out;
    if (vals.size() == 1) {
        out.value = vals[0];
        out.est_error = std::abs(vals[0]);
        out.converged = false;
        return out;
    }
    // Linear extrapolation in eps over consecutive halvings.
    std::vector<Complex> extr;
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        const double e0 = epsilons[k], e1 = epsilons[k + 1];
        extr.push_back((e0 * vals[k + 1] - e1 * vals[k]) / (e0 - e1));
    }
    out.value = extr.back();
    if (extr.size() >= 2) {
        const double last = std::abs(extr[extr.size() - 1] - extr[extr.size() - 2]);
        out.est_error = last;
        out.converged = last <= 1e-4 * (1.0 + std::abs(out.value));
    }
    return out;
}

std::vector<Complex> hilbert_fft(const std::vector<Complex>& u) {
    const int n = static_cast<int>(u.size());
    if (n < 2) throw std::invalid_argument("hilbert_fft: need at least two samples");
    std::vector<Complex> c = u;
    fft_forward(c);
    c[0] = {0.0, 0.0};
    const Complex mi{0.0, -1.0};
    for (int k = 1; k < n; ++k) {
        if (k == n / 2 && n % 2 == 0) {
            c[k] = {0.0, 0.0};  // unpaired Nyquist bin
        } else if (k < (n + 1) / 2) {
            c[k] *= mi;          // positive frequencies
        } else {
            c[k] *= -mi;         // negative frequencies
        }
    }
    fft_inverse(c);
    const double inv = 1.0 / n;
    for (auto& v : c) v *= inv;
    return c;
}

std::vector<Bicomplex> hilbert_bc(const std::vector<Bicomplex>& u) {
    std::vector<Complex> plus(u.size()), minus(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const IdempotentPair p = to_idempotent(u[i]);
        plus[i] = p.plus;
        minus[i] = p.minus;
    }
    plus = hilbert_fft(plus);
    minus = hilbert_fft(minus);
    std::vector<Bicomplex> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = from_idempotent(plus[i], minus[i]);
    return out;
}

ContinuityTable hilbert_continuity_check(const std::vector<BCAtomicBoundary>& corpus, double p,
                                         double gamma, int n_samples) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("hilbert_continuity_check: p outside (0,1]");
    ContinuityTable table;
    for (const BCAtomicBoundary& b : corpus) {
        ContinuityRow row;
        const BoundaryDistribution fb = synthesize_boundary(b, n_samples);
        const std::vector<Bicomplex> h = hilbert_bc(fb.samples());
        row.transform_norm = circle_lp_norm_bc(h, p);
        row.boundary_norm = b.tail ? quasi_norm_b(b, gamma) : bc_atomic_norm(b);
        row.ratio = row.boundary_norm > 0.0 ? row.transform_norm / row.boundary_norm : 0.0;
        table.max_ratio = std::max(table.max_ratio, row.ratio);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace bchardy
