#pragma once

#include "bchardy/atoms.hpp"
#include "bchardy/integral_ops.hpp"

namespace bchardy {

/// Per-materialization quadrature error allowance used in the composed
/// tolerance bookkeeping below (measured headroom on the smooth corpus at
/// the default grid).
inline constexpr double kOperatorQuadTol = 1.5e-3;

struct FirstOrderRep {
    DiskFunction phi;         // recovered holomorphic part
    DiskFunction source;      // w
    DiskFunction correction;  // T_B(w) (or T(w)) materialized
    double residual_dbar_phi = 0.0;
    double est_tolerance = 0.0;  // composed error budget of phi
};

struct HigherOrderRep {
    int n = 1;
    std::vector<DiskFunction> Phi;  // Phi_0 .. Phi_{n-1}
    DiskFunction source;
    DiskFunction Psi;               // materialized nest, f = Phi_0 + Psi
    std::vector<double> residuals;  // dbar residual per recovered Phi_k
    double est_tolerance = 0.0;
};

struct RecoverOptions {
    double equation_gate = 5e-2;  // reject inputs whose dbar residual exceeds this
    double interior_rmax = 0.85;  // residuals measured inside this radius
};

/// Splits a solution of dbar f = w (or d/dz* f = w in the complex case) into
/// holomorphic part + correction: phi = f - T_B(w) on the operator's grid.
/// Throws std::invalid_argument when f visibly fails the equation.
FirstOrderRep recover_holomorphic(const DiskFunction& f, const DiskFunction& w,
                                  const DiskOperator& op, const RecoverOptions& opts = {});

/// f = phi + T_B(w) (complex phi and w use T instead), materialized.
DiskFunction build_solution(const DiskFunction& phi, const DiskFunction& w, const DiskOperator& op);

/// Iterated peeling for dbar^n f = w: Phi_{n-1} = dbar^{n-1} f - T_B(w),
/// then downward through the nested tails; materializes Psi.
HigherOrderRep higher_order_peel(const DiskFunction& f, const DiskFunction& w, int n,
                                 const DiskOperator& op, const RecoverOptions& opts = {});

/// f = Phi_0 + T_B(Phi_1 + T_B(... + T_B(w)...)) from supplied parts.
DiskFunction build_higher(const std::vector<DiskFunction>& Phi, const DiskFunction& w,
                          const DiskOperator& op);

/// Evaluates the single-convolution form of the same representation
/// (kernels K_{k,0} on the plus components, K_{0,k} on the minus ones) and
/// returns the max deviation from Phi_0 + Psi over the sample points.
double kernel_form_check(const HigherOrderRep& rep, const std::vector<Complex>& sample_points,
                         const DiskOperator& op);

struct AtomicBoundaryOptions {
    int boundary_samples = 1024;
    double poisson_tol = 5e-2;      // gate on |phi - Poisson(atomic part)| inside r <= 0.7
    double tail_source_q = 4.0;     // declared L^q exponent of w
    int pairing_modes = 32;
};

struct AtomicBoundaryResult {
    BCAtomicBoundary boundary;
    double poisson_residual = 0.0;    // phi vs Poisson extension of the atomic part
    double pairing_max_diff = 0.0;    // <f_b, e^{i n t}> vs assembled object
    double pairing_budget = 0.0;
};

/// Assembles f_b = p+ (sum c+ a+)* + p- (sum c- a-) + T_B(w)_b from a
/// SUPPLIED decomposition of the holomorphic part (extraction from arbitrary
/// f is out of scope) and validates it by Poisson extension and by pairing
/// both sides against the exponential test basis.
AtomicBoundaryResult atomic_boundary_of_solution(const DiskFunction& f, const DiskFunction& w,
                                                 const AtomicDecomposition& plus_part,
                                                 const AtomicDecomposition& minus_part,
                                                 const DiskOperator& op,
                                                 const AtomicBoundaryOptions& opts = {});

}  // namespace bchardy
