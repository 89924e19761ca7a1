#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "bchardy/disk_function.hpp"

namespace bchardy {

/// Index of a Begehr-Hile kernel K_{m,gamma}; m + gamma >= 1.
struct KernelId {
    int m = 0;
    int gamma = 0;
};

/// Pointwise K_{m,gamma}(z) exactly as printed (the (-m)!(-1)^m and
/// (-gamma)!(-1)^gamma factors both equal one in their cases). z != 0.
Complex kernel_K(KernelId id, Complex z);

/// Singularity handling for the disk quadrature. The integral is split by a
/// smooth radial partition of unity chi(|zeta - z|): the far part reuses the
/// global grid (midpoint rule, cells weighted by chi), the near part changes
/// variables to local polar coordinates zeta = z + rho e^{i phi}, where the
/// Jacobian cancels the Cauchy singularity and the radial kernel moments
/// (powers and powers times log) integrate exactly per subcell. chi rises
/// from 0 at rho_in (default 2 local cells) to 1 at rho_out.
struct QuadratureScheme {
    double rho_in_cells = 2.0;
    double rho_out_cells = 4.0;
    int near_radial = 16;
    int near_angular = 32;
    int near_angular_clipped = 96;  // when the near ball pokes outside D
};

/// Disk integral operators bound to a grid + scheme. `bind` samples the
/// integrand once; the returned handle evaluates at many points cheaply and
/// is safe to use from several threads.
class DiskOperator {
public:
    explicit DiskOperator(std::shared_ptr<const PolarGrid> grid, QuadratureScheme scheme = {});

    const PolarGrid& grid() const { return *grid_; }
    std::shared_ptr<const PolarGrid> grid_ptr() const { return grid_; }
    const QuadratureScheme& scheme() const { return scheme_; }

    class Bound {
    public:
        /// Cauchy-Pompeiu T(f)(z) = -(1/pi) iint_D f(zeta)/(zeta - z) dA.
        Complex T_at(Complex z) const;

        /// Bicomplex Theodorescu operator, evaluated from its definition:
        /// p+ (-(1/pi) iint f+ /(zeta* - z*)) + p- (-(1/pi) iint f- /(zeta - z)).
        Bicomplex TB_at(Complex z) const;

        /// iint_D K_{m,gamma}(z - zeta) f(zeta) dA for complex-valued f.
        Complex convolve_at(KernelId id, Complex z) const;

    private:
        friend class DiskOperator;
        const DiskOperator* op_ = nullptr;
        DiskFunction f_;
        std::vector<double> pr_, pi_, mr_, mi_;  // f+ and f- at the grid cells
    };

    Bound bind(const DiskFunction& f) const;

    Complex T(const DiskFunction& f, Complex z) const;
    Bicomplex TB(const DiskFunction& f, Complex z) const;
    Complex convolve_kernel(KernelId id, const DiskFunction& f, Complex z) const;

    DiskFunction materialize_T(const DiskFunction& f) const;
    DiskFunction materialize_TB(const DiskFunction& f) const;

    /// Boundary restriction of TB(f) on the uniform angle grid (r = 1).
    std::vector<Bicomplex> boundary_TB(const DiskFunction& f, int n_samples) const;

    /// Psi = TB(Phi_1 + TB(Phi_2 + ... + TB(Phi_{n-1} + TB(w)) ...)),
    /// materialized innermost-first; empty levels degenerate to TB(w).
    DiskFunction iterated_TB(const std::vector<DiskFunction>& levels, const DiskFunction& w) const;
    Bicomplex iterated_TB_at(const std::vector<DiskFunction>& levels, const DiskFunction& w,
                             Complex z) const;

private:
    friend class Bound;
    std::shared_ptr<const PolarGrid> grid_;
    QuadratureScheme scheme_;
    std::vector<double> cx_, cy_, cw_;  // flattened cell centers and weights

    struct Band {
        double rho_in, rho_out;
    };
    Band band_at(Complex z) const;
};

/// Brute-force midpoint oracle on a uniform polar grid with cells of linear
/// size ~1/resolution; cells whose centers fall within 1.5 cell diagonals of
/// the kernel singularity at `z` are excluded. Test-side reference only.
Complex oracle_quadrature(const DiskFunction& f,
                          const std::function<Complex(Complex, Complex)>& kernel, Complex z,
                          int resolution);

}  // namespace bchardy
