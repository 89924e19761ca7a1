#include "bchardy/representation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bchardy/derivatives.hpp"

namespace bchardy {

namespace {

double interior_max_diff(const DiskFunction& a, const DiskFunction& b, const PolarGrid& g,
                         double rmax) {
    double worst = 0.0;
    for (int i = 0; i < g.n_radii(); ++i) {
        if (g.radius(i) > rmax) break;
        for (int k = 0; k < g.n_angles(); ++k) {
            const Complex z = g.node(i, k);
            worst = std::max(worst, bnorm(a.evaluate(z) - b.evaluate(z)));
        }
    }
    return worst;
}

double interior_max(const DiskFunction& a, const PolarGrid& g, double rmax) {
    double worst = 0.0;
    for (int i = 0; i < g.n_radii(); ++i) {
        if (g.radius(i) > rmax) break;
        for (int k = 0; k < g.n_angles(); ++k)
            worst = std::max(worst, bnorm(a.evaluate(g.node(i, k))));
    }
    return worst;
}

bool complex_route(const DiskFunction& f, const DiskFunction& w) {
    return f.is_complex_valued() && w.is_complex_valued();
}

}  // namespace

FirstOrderRep recover_holomorphic(const DiskFunction& f, const DiskFunction& w,
                                  const DiskOperator& op, const RecoverOptions& opts) {
    const bool cplx = complex_route(f, w);
    const PolarGrid& g = op.grid();

    // Verify the equation before peeling anything off.
    DerivativeReport df = cplx ? wirtinger_dzbar(f, op.grid_ptr()) : bc_partialbar(f, op.grid_ptr());
    const double eq_residual = interior_max_diff(df.values, w, g, opts.interior_rmax);
    const double gate = std::max(opts.equation_gate, 10.0 * df.est_error);
    if (eq_residual > gate)
        throw std::invalid_argument("recover_holomorphic: dbar f = w residual " +
                                    std::to_string(eq_residual) + " exceeds gate");

    FirstOrderRep rep;
    rep.source = w;
    rep.correction = cplx ? op.materialize_T(w) : op.materialize_TB(w);
    rep.phi = f.materialize(op.grid_ptr()) - rep.correction;
    DerivativeReport dphi =
        cplx ? wirtinger_dzbar(rep.phi, op.grid_ptr()) : bc_partialbar(rep.phi, op.grid_ptr());
    rep.residual_dbar_phi = interior_max(dphi.values, g, opts.interior_rmax);
    rep.est_tolerance = kOperatorQuadTol;
    return rep;
}

DiskFunction build_solution(const DiskFunction& phi, const DiskFunction& w, const DiskOperator& op) {
    const bool cplx = complex_route(phi, w);
    const DiskFunction corr = cplx ? op.materialize_T(w) : op.materialize_TB(w);
    return phi.materialize(op.grid_ptr()) + corr;
}

HigherOrderRep higher_order_peel(const DiskFunction& f, const DiskFunction& w, int n,
                                 const DiskOperator& op, const RecoverOptions& opts) {
    if (n < 1 || n > 3) throw std::invalid_argument("higher_order_peel: n must be 1..3");
    const PolarGrid& g = op.grid();

    // dbar^k f, symbolically when the generator allows it.
    std::vector<DiskFunction> dbar_k;
    std::vector<double> dbar_err;
    {
        DiskFunction level = f;
        double est = 0.0;
        dbar_k.push_back(level);
        dbar_err.push_back(0.0);
        for (int k = 1; k <= n; ++k) {
            DerivativeReport d = bc_partialbar(level, op.grid_ptr());
            est += d.est_error;
            level = d.values;
            dbar_k.push_back(level);
            dbar_err.push_back(est);
        }
    }

    const double eq_residual = interior_max_diff(dbar_k[n], w, g, opts.interior_rmax);
    const double gate = std::max(opts.equation_gate, 10.0 * dbar_err[n]);
    if (eq_residual > gate)
        throw std::invalid_argument("higher_order_peel: dbar^n f = w residual " +
                                    std::to_string(eq_residual) + " exceeds gate");

    HigherOrderRep rep;
    rep.n = n;
    rep.source = w;
    rep.Phi.resize(n);
    rep.residuals.resize(n);

    DiskFunction tail = op.materialize_TB(w);
    double tail_tol = kOperatorQuadTol;
    for (int k = n - 1; k >= 0; --k) {
        rep.Phi[k] = dbar_k[k].materialize(op.grid_ptr()) - tail;
        DerivativeReport dphi = bc_partialbar(rep.Phi[k], op.grid_ptr());
        rep.residuals[k] = interior_max(dphi.values, g, opts.interior_rmax);
        if (k > 0) {
            tail = op.materialize_TB(rep.Phi[k] + tail);
            tail_tol += kOperatorQuadTol;
        }
    }
    rep.Psi = tail;
    rep.est_tolerance = tail_tol + dbar_err[n];
    return rep;
}

DiskFunction build_higher(const std::vector<DiskFunction>& Phi, const DiskFunction& w,
                          const DiskOperator& op) {
    if (Phi.empty()) throw std::invalid_argument("build_higher: need Phi_0");
    const std::vector<DiskFunction> levels(Phi.begin() + 1, Phi.end());
    return Phi.front().materialize(op.grid_ptr()) + op.iterated_TB(levels, w);
}

double kernel_form_check(const HigherOrderRep& rep, const std::vector<Complex>& sample_points,
                         const DiskOperator& op) {
    const int n = rep.n;
    if (n > 3) throw std::invalid_argument("kernel_form_check: n <= 3 at desk scale");

    // Plus components convolve against K_{k,0}, minus ones against K_{0,k}.
    std::vector<DiskOperator::Bound> plus_bounds, minus_bounds;
    for (int k = 1; k < n; ++k) {
        plus_bounds.push_back(op.bind(rep.Phi[k].plus_component()));
        minus_bounds.push_back(op.bind(rep.Phi[k].minus_component()));
    }
    const DiskOperator::Bound wp = op.bind(rep.source.plus_component());
    const DiskOperator::Bound wm = op.bind(rep.source.minus_component());

    double worst = 0.0;
    for (Complex z : sample_points) {
        Complex plus{0.0, 0.0}, minus{0.0, 0.0};
        for (int k = 1; k < n; ++k) {
            plus += plus_bounds[k - 1].convolve_at({k, 0}, z);
            minus += minus_bounds[k - 1].convolve_at({0, k}, z);
        }
        plus += wp.convolve_at({n, 0}, z);
        minus += wm.convolve_at({0, n}, z);
        const Bicomplex kernel_side =
            rep.Phi[0].evaluate(z) + from_idempotent(plus, minus);
        const Bicomplex nested_side = rep.Phi[0].evaluate(z) + rep.Psi.evaluate(z);
        worst = std::max(worst, bnorm(kernel_side - nested_side));
    }
    return worst;
}

AtomicBoundaryResult atomic_boundary_of_solution(const DiskFunction& f, const DiskFunction& w,
                                                 const AtomicDecomposition& plus_part,
                                                 const AtomicDecomposition& minus_part,
                                                 const DiskOperator& op,
                                                 const AtomicBoundaryOptions& opts) {
    AtomicBoundaryResult out;
    out.boundary.plus = plus_part;
    out.boundary.minus = minus_part;
    out.boundary.tail_source_q = opts.tail_source_q;

    const bool zero_source = w.is_closed_form() && w.closed().empty();
    DiskFunction correction;
    if (!zero_source) {
        out.boundary.tail = op.boundary_TB(w, opts.boundary_samples);
        correction = op.materialize_TB(w);
    }

    // Gate: the supplied decomposition must reproduce the holomorphic part.
    const DiskFunction phi =
        zero_source ? f.materialize(op.grid_ptr()) : f.materialize(op.grid_ptr()) - correction;
    BCAtomicBoundary atomic_only{plus_part, minus_part, std::nullopt, 0.0};
    const BoundaryDistribution phi_b = synthesize_boundary_exact(atomic_only);
    double worst = 0.0;
    const PolarGrid& g = op.grid();
    for (int i = 0; i < g.n_radii(); i += 4) {
        if (g.radius(i) > 0.7) break;
        for (int k = 0; k < g.n_angles(); k += 16) {
            const Complex z = g.node(i, k);
            worst = std::max(
                worst, bnorm(phi.evaluate(z) - poisson_extend(phi_b, std::abs(z), std::arg(z))));
        }
    }
    out.poisson_residual = worst;
    if (worst > opts.poisson_tol)
        throw std::invalid_argument(
            "atomic_boundary_of_solution: supplied decomposition's Poisson extension disagrees "
            "with the holomorphic part (residual " + std::to_string(worst) + ")");

    // Pairing equivalence against the exponential basis.
    const BoundaryDistribution assembled = synthesize_boundary_exact(out.boundary);
    for (int nmode = -opts.pairing_modes; nmode <= opts.pairing_modes; ++nmode) {
        const TrigPoly phi_test = TrigPoly::exponential(nmode);
        const PairingResult lhs = distributional_pairing(f, phi_test);
        const Bicomplex rhs = assembled.pair(phi_test);
        const double diff = bnorm(lhs.value - rhs);
        const double budget = lhs.extrapolation_error + 1e-3 * (1.0 + bnorm(rhs)) +
                              (zero_source ? 0.0 : kOperatorQuadTol * 2.0 * std::numbers::pi);
        if (diff - budget > out.pairing_max_diff - out.pairing_budget) {
            out.pairing_max_diff = diff;
            out.pairing_budget = budget;
        }
    }
    return out;
}

}  // namespace bchardy
