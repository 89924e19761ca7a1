#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bchardy/derivatives.hpp"
#include "bchardy/disk_function.hpp"

namespace bchardy {

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

/// Radial scan of circle integrals (int |f(r e^{i t})|^p dt)^{1/p}. The sup
/// over all r < 1 is not computable; sup_estimate is the max over the
/// sampled radii and `converged` records whether the scan stabilized
/// (last two values within 1% relative).
struct HardyNormEstimate {
    double p = 2.0;
    std::vector<std::pair<double, double>> values_by_radius;
    double sup_estimate = 0.0;
    bool converged = false;
};

struct MembershipReport {
    std::string class_name;
    Verdict verdict = Verdict::Inconclusive;
    std::map<std::string, double> residuals;
    std::string to_json() const;
};

std::vector<double> default_norm_radii();   // {0.5, 0.75, 0.9, 0.95, 0.99, 0.995}
std::vector<double> default_growth_radii(); // 1 - 2^-k, k = 2..10

/// Circle integrals by the trapezoid rule (exact for resolved trig
/// polynomials); p < 1 is integrated directly.
HardyNormEstimate hp_norm(const DiskFunction& f, double p, std::vector<double> radii = {},
                          int n_theta = 512);

/// Same scan with the bicomplex norm in the integrand.
HardyNormEstimate bc_hp_norm(const DiskFunction& f, double p, std::vector<double> radii = {},
                             int n_theta = 512);

/// Least-squares slope of log sup_theta |f| against -log(1-r) over the last
/// six radii, clamped to [0, inf). Returns NaN when the fit degenerates.
double growth_exponent(const DiskFunction& f, std::vector<double> radii = {}, int n_theta = 512);

struct ClassifyParams {
    double p = 2.0;
    int n = 1;                              // order, H^{n,p}_w only
    const DiskFunction* source = nullptr;   // right-hand side w (nullptr = 0)
    double residual_tol = 1e-8;             // gate floor; 10x est_error is also allowed
    std::vector<double> radii;              // norm-scan radii (defaults when empty)
    std::shared_ptr<const PolarGrid> grid;  // grid for numerical derivatives
    double interior_rmax = 0.9;             // residuals sampled on |z| <= this
    int n_theta = 512;
};

/// Desk-scale membership checks. class_name is one of
///   H^p | H^p_f | H^p(D,B) | H^p_w(D,B) | H^{n,p}_w(D,B).
/// Fail = the defining differential equation visibly violated;
/// Inconclusive = equation holds but the norm scan neither stabilized nor
/// stayed below 1e6. Thresholds are desk-scale choices, echoed in residuals.
MembershipReport classify(const DiskFunction& f, const std::string& class_name,
                          const ClassifyParams& params);

// Shared quadrature helpers.
double circle_lp_norm(const std::vector<Complex>& vals, double p);
double circle_lp_norm_bc(const std::vector<Bicomplex>& vals, double p);
std::vector<Bicomplex> sample_circle(const DiskFunction& f, double r, int n_theta);

/// (iint_D ||f||_B^m dA)^{1/m} over the grid cells.
double disk_lp_norm(const DiskFunction& f, double m, const PolarGrid& grid);

}  // namespace bchardy
