#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bchardy/disk_function.hpp"
#include "bchardy/hardy.hpp"

namespace bchardy {

/// Finite trigonometric polynomial sum_n c_n e^{i n theta}, the smooth test
/// functions everything is paired against.
struct TrigPoly {
    std::map<int, Complex> coeffs;
    Complex eval(double theta) const;
    static TrigPoly exponential(int n, Complex c = {1.0, 0.0});
};

/// One coefficient times a piecewise-smooth arc-supported boundary function.
/// Pieces carry their own smooth profiles so that jumps (e.g. step atoms)
/// land on piece boundaries and Gauss-Legendre stays accurate per piece.
struct ArcPiece {
    double start = 0.0;
    double length = 0.0;
    std::function<Complex(double)> profile;  // evaluated at absolute theta
};

struct ArcTerm {
    Bicomplex coeff;
    std::vector<ArcPiece> pieces;
};

/// Boundary object: finite Fourier series, sampled integrable density on the
/// uniform angle grid, or a finite atomic/arc sum (plus optional density
/// tail). Pairings are linear; bicomplex objects split componentwise.
class BoundaryDistribution {
public:
    enum class Kind { TrigCoeffs, Density, AtomicSum };

    static BoundaryDistribution trig(std::map<int, Bicomplex> coeffs);
    static BoundaryDistribution density(std::vector<Bicomplex> samples);
    static BoundaryDistribution atomic(std::vector<ArcTerm> terms,
                                       std::optional<std::vector<Bicomplex>> tail = {});
    static BoundaryDistribution zero();

    Kind kind() const { return kind_; }
    const std::map<int, Bicomplex>& coeffs() const { return coeffs_; }
    const std::vector<Bicomplex>& samples() const { return samples_; }
    const std::vector<ArcTerm>& terms() const { return terms_; }
    const std::optional<std::vector<Bicomplex>>& tail() const { return tail_; }

    /// Pointwise value (density: linear interpolation between samples).
    Bicomplex eval(double theta) const;

    /// int_0^{2pi} b(theta) phi(theta) dtheta, exact per representation
    /// (trig: orthogonality; density: trapezoid; arcs: per-piece quadrature).
    Bicomplex pair(const TrigPoly& phi) const;

    /// Fourier coefficient pairing (1/2pi) int b e^{-i n theta} dtheta.
    Bicomplex fourier_coefficient(int n) const;

    /// Idempotent components as complex-valued distributions.
    BoundaryDistribution plus_component() const;
    BoundaryDistribution minus_component() const;

    /// Density sampling at n uniform angles (any representation).
    std::vector<Bicomplex> to_density(int n_samples) const;

private:
    Kind kind_ = Kind::Density;
    std::map<int, Bicomplex> coeffs_;
    std::vector<Bicomplex> samples_;
    std::vector<ArcTerm> terms_;
    std::optional<std::vector<Bicomplex>> tail_;
};

struct PairingResult {
    Bicomplex value;
    std::vector<double> radii_used;
    double extrapolation_error = 0.0;
    bool converged = true;
};

std::vector<double> default_pairing_radii();  // 1 - 2^-k, k = 3..9

/// <f_b, phi> = lim_{r->1} int f(r e^{i theta}) phi(e^{i theta}) dtheta,
/// realized as Neville extrapolation of the circle integrals in (1 - r).
PairingResult distributional_pairing(const DiskFunction& f, const TrigPoly& phi,
                                     std::vector<double> radii = {}, int n_theta = 1024);
PairingResult distributional_pairing(const DiskFunction& f,
                                     const std::function<Complex(double)>& phi,
                                     std::vector<double> radii = {}, int n_theta = 1024);

/// Poisson kernel P_r(theta) = (1-r^2)/(1 - 2 r cos theta + r^2).
double poisson_kernel(double r, double theta);

/// (1/2pi) <b, P_r(theta - .)>; trig coefficients use the exact multiplier r^|n|.
Bicomplex poisson_extend(const BoundaryDistribution& b, double r, double theta);

/// Fourier coefficients of f_b for |n| <= max_mode via pairing + extrapolation.
BoundaryDistribution boundary_coefficients(const DiskFunction& f, int max_mode,
                                           std::vector<double> radii = {});

/// max over sample points of ||f - Poisson(b)||_B.
double poisson_reproduction_check(const DiskFunction& f, const BoundaryDistribution& b,
                                  const std::vector<Complex>& sample_points);

/// Circle errors int ||f(r e^{it}) - u(t)||_B^p dt per radius.
std::vector<std::pair<double, double>> lp_boundary_convergence(const DiskFunction& f,
                                                               const BoundaryDistribution& f_boundary,
                                                               double p, std::vector<double> radii = {},
                                                               int n_theta = 512);

struct LoneDistBvOptions {
    int basis_modes = 32;      // pairing checked for |n| <= basis_modes
    int n_theta = 1024;
    double l1_tol = 5e-2;      // decay required of the circle L1 errors
    double pairing_tol = 1e-6; // slack added to the extrapolation error
    std::vector<double> radii;
};

/// Checks that f (integrable, with an integrable boundary trace) has a
/// distributional boundary value equal to f|_{partial D}: L^1 convergence of
/// circle errors first, then pairing vs direct boundary integration over the
/// test basis. The basis can only refute, never fully confirm; reports carry
/// "basis_modes" for that reason.
MembershipReport lone_distbv_check(const DiskFunction& f, const LoneDistBvOptions& opts = {});

/// Gauss-Legendre nodes/weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace bchardy
