#pragma once

#include <memory>

#include "bchardy/disk_function.hpp"

namespace bchardy {

enum class DerivativeScheme { ClosedFormExact, SpectralFiniteDifference };

struct DerivativeReport {
    DiskFunction values;
    DerivativeScheme scheme = DerivativeScheme::ClosedFormExact;
    double est_error = 0.0;
};

/// Complex Wirtinger derivatives d/dz = (d_x - i d_y)/2 and
/// d/dz* = (d_x + i d_y)/2, applied coordinate-wise to bicomplex values.
/// Closed forms differentiate symbolically (est_error = 0); everything else
/// is sampled on `grid` (default grid when null) and differentiated
/// spectrally in theta and with 5-node stencils in r, using the reflection
/// f(-r, theta) = f(r, theta+pi) through the center.
DerivativeReport wirtinger_dz(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid = nullptr);
DerivativeReport wirtinger_dzbar(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid = nullptr);

/// Bicomplex operators: partial = p+ d/dz* + p- d/dz (and the bar variant
/// with the roles swapped), evaluated componentwise in idempotent
/// coordinates.
DerivativeReport bc_partial(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid = nullptr);
DerivativeReport bc_partialbar(const DiskFunction& f, std::shared_ptr<const PolarGrid> grid = nullptr);

/// k-fold dbar with per-level reports collapsed into one (errors add).
DerivativeReport bc_partialbar_power(const DiskFunction& f, int k,
                                     std::shared_ptr<const PolarGrid> grid = nullptr);

/// Finite-difference weights for the m-th derivative at x0 from arbitrary
/// nodes (Fornberg's recurrence). Exposed for tests.
std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order);

}  // namespace bchardy
