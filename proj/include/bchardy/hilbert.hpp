#pragma once

#include <functional>
#include <vector>

#include "bchardy/atoms.hpp"

namespace bchardy {

struct HilbertPvResult {
    Complex value{0.0, 0.0};
    double est_error = 0.0;
    bool converged = true;
};

/// Principal-value Hilbert transform at one point,
///   H(u)(e^{i theta}) = lim (1/pi) int_{eps<=|t|<=pi} u(e^{i(theta-t)}) / (2 tan(t/2)) dt,
/// via symmetric excision (the t and -t nodes pair up) on dyadic panels and
/// linear extrapolation over the epsilon ladder {2^-k}, k = 4..10.
HilbertPvResult hilbert_pv(const std::function<Complex(double)>& u, double theta,
                           std::vector<double> epsilons = {});

/// Fourier-multiplier realization on the uniform grid: coefficient n maps to
/// -i sgn(n) c_n, n = 0 (and the unpaired Nyquist bin) annihilated.
std::vector<Complex> hilbert_fft(const std::vector<Complex>& u);

/// H applied componentwise in idempotent coordinates.
std::vector<Bicomplex> hilbert_bc(const std::vector<Bicomplex>& u);

struct ContinuityRow {
    double transform_norm = 0.0;  // ||H(f_b)||_{L^p(dD, B)}
    double boundary_norm = 0.0;   // atomic norm, or quasi-norm when a tail is present
    double ratio = 0.0;
};

struct ContinuityTable {
    std::vector<ContinuityRow> rows;
    double max_ratio = 0.0;
};

/// Empirical operator constant of H over a corpus of atomic boundaries:
/// each row is ||H(synthesized f_b)||_{L^p} against the item's B-atomic norm
/// (quasi-norm with `gamma` when the item carries a tail). Zero boundaries
/// get ratio 0 by convention.
ContinuityTable hilbert_continuity_check(const std::vector<BCAtomicBoundary>& corpus, double p,
                                         double gamma = 2.0, int n_samples = 4096);

}  // namespace bchardy
