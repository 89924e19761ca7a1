#include "bchardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace bchardy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormCap = 1e6;  // "bounded" gate for the finite-sup proxy
}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

std::string MembershipReport::to_json() const {
    nlohmann::json j;
    j["class"] = class_name;
    j["verdict"] = verdict_name(verdict);
    j["residuals"] = residuals;
    return j.dump(2);
}

std::vector<double> default_norm_radii() { return {0.5, 0.75, 0.9, 0.95, 0.99, 0.995}; }

std::vector<double> default_growth_radii() {
    std::vector<double> r;
    for (int k = 2; k <= 10; ++k) r.push_back(1.0 - std::pow(2.0, -k));
    return r;
}

std::vector<Bicomplex> sample_circle(const DiskFunction& f, double r, int n_theta) {
    std::vector<Bicomplex> out(n_theta);
    for (int k = 0; k < n_theta; ++k) out[k] = f.evaluate(std::polar(r, kTwoPi * k / n_theta));
    return out;
}

double circle_lp_norm(const std::vector<Complex>& vals, double p) {
    double acc = 0.0;
    for (const Complex& v : vals) acc += std::pow(std::abs(v), p);
    return std::pow(acc * kTwoPi / vals.size(), 1.0 / p);
}

double circle_lp_norm_bc(const std::vector<Bicomplex>& vals, double p) {
    double acc = 0.0;
    for (const Bicomplex& v : vals) acc += std::pow(bnorm(v), p);
    return std::pow(acc * kTwoPi / vals.size(), 1.0 / p);
}

namespace {

HardyNormEstimate norm_scan(const DiskFunction& f, double p, std::vector<double> radii, int n_theta,
                            bool bicomplex_norm) {
    if (p <= 0.0) throw std::invalid_argument("hp_norm: p must be positive");
    if (radii.empty()) radii = default_norm_radii();
    std::sort(radii.begin(), radii.end());
    if (radii.front() <= 0.0 || radii.back() >= 1.0)
        throw std::invalid_argument("hp_norm: radii must lie in (0,1)");
    HardyNormEstimate est;
    est.p = p;
    std::vector<double> raw;  // circle integrals int |f|^p dtheta
    for (double r : radii) {
        const auto vals = sample_circle(f, r, n_theta);
        double acc = 0.0;
        for (const Bicomplex& b : vals)
            acc += std::pow(bicomplex_norm ? bnorm(b) : std::abs(b.sc), p);
        acc *= kTwoPi / vals.size();
        raw.push_back(acc);
        const double v = std::pow(acc, 1.0 / p);
        est.values_by_radius.emplace_back(r, v);
        est.sup_estimate = std::max(est.sup_estimate, v);
    }
    // Stabilization is judged on the raw circle integrals at the two largest
    // radii, not on their 1/p-th powers.
    if (raw.size() >= 2) {
        const double a = raw[raw.size() - 2], b = raw.back();
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        est.converged = std::abs(b - a) / scale < 0.01;
    }
    return est;
}

}  // namespace

HardyNormEstimate hp_norm(const DiskFunction& f, double p, std::vector<double> radii, int n_theta) {
    if (!f.is_complex_valued()) throw std::invalid_argument("hp_norm: complex-valued f expected");
    return norm_scan(f, p, std::move(radii), n_theta, false);
}

HardyNormEstimate bc_hp_norm(const DiskFunction& f, double p, std::vector<double> radii, int n_theta) {
    return norm_scan(f, p, std::move(radii), n_theta, true);
}

double growth_exponent(const DiskFunction& f, std::vector<double> radii, int n_theta) {
    if (radii.empty()) radii = default_growth_radii();
    std::sort(radii.begin(), radii.end());
    // Only the last six radii enter the fit; earlier ones carry transients.
    if (radii.size() > 6) radii.erase(radii.begin(), radii.end() - 6);
    std::vector<double> xs, ys;
    for (double r : radii) {
        double sup = 0.0;
        for (int k = 0; k < n_theta; ++k)
            sup = std::max(sup, bnorm(f.evaluate(std::polar(r, kTwoPi * k / n_theta))));
        if (!(sup > 0.0) || !std::isfinite(sup)) return std::numeric_limits<double>::quiet_NaN();
        xs.push_back(-std::log(1.0 - r));
        ys.push_back(std::log(sup));
    }
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double slope = (n * sxy - sx * sy) / denom;
    if (!std::isfinite(slope)) return std::numeric_limits<double>::quiet_NaN();
    return std::max(slope, 0.0);
}

double disk_lp_norm(const DiskFunction& f, double m, const PolarGrid& grid) {
    double acc = 0.0;
    for (int i = 0; i < grid.n_radii(); ++i) {
        const double w = grid.weight(i);
        for (int k = 0; k < grid.n_angles(); ++k)
            acc += w * std::pow(bnorm(f.evaluate(grid.node(i, k))), m);
    }
    return std::pow(acc, 1.0 / m);
}

namespace {

// Max residual bnorm over grid nodes with |z| <= rmax; `diff` is sampled or
// closed-form, `source` may be null (treated as zero).
double interior_residual(const DiskFunction& diff, const DiskFunction* source, const PolarGrid& g,
                         double rmax) {
    double worst = 0.0;
    for (int i = 0; i < g.n_radii(); ++i) {
        if (g.radius(i) > rmax) break;
        for (int k = 0; k < g.n_angles(); ++k) {
            const Complex z = g.node(i, k);
            Bicomplex r = diff.evaluate(z);
            if (source) r -= source->evaluate(z);
            worst = std::max(worst, bnorm(r));
        }
    }
    return worst;
}

struct NormGate {
    bool ok;
    HardyNormEstimate est;
};

NormGate finite_norm_gate(const DiskFunction& f, double p, const ClassifyParams& prm,
                          bool bicomplex_norm) {
    HardyNormEstimate est = bicomplex_norm ? bc_hp_norm(f, p, prm.radii, prm.n_theta)
                                           : hp_norm(f, p, prm.radii, prm.n_theta);
    // Finite sup proxy: the scan either stabilized or stayed within the cap.
    const bool ok = est.converged || est.sup_estimate <= kNormCap;
    return {ok, est};
}

}  // namespace

MembershipReport classify(const DiskFunction& f, const std::string& class_name,
                          const ClassifyParams& params) {
    MembershipReport rep;
    rep.class_name = class_name;
    auto grid = params.grid ? params.grid : std::make_shared<const PolarGrid>(PolarGrid::make_default());

    const bool complex_class = (class_name == "H^p" || class_name == "H^p_f");
    const bool bc_first_order = (class_name == "H^p(D,B)" || class_name == "H^p_w(D,B)");
    const bool bc_higher = (class_name == "H^{n,p}_w(D,B)");
    if (!complex_class && !bc_first_order && !bc_higher)
        throw std::invalid_argument("classify: unknown class '" + class_name + "'");
    const bool has_source = (class_name == "H^p_f" || class_name == "H^p_w(D,B)" || bc_higher);
    if (has_source && !params.source)
        throw std::invalid_argument("classify: class " + class_name + " needs a source term");

    const int order = bc_higher ? params.n : 1;
    if (order < 1 || order > 3) throw std::invalid_argument("classify: order n must be in 1..3");

    // (a) differential-equation residual on the interior grid
    double est_error = 0.0;
    DiskFunction derivative;
    if (complex_class) {
        DerivativeReport d = wirtinger_dzbar(f, grid);
        derivative = d.values;
        est_error = d.est_error;
    } else {
        DerivativeReport d = bc_partialbar_power(f, order, grid);
        derivative = d.values;
        est_error = d.est_error;
    }
    const double residual =
        interior_residual(derivative, has_source ? params.source : nullptr, *grid, params.interior_rmax);
    const double gate = std::max(params.residual_tol, 10.0 * est_error);
    rep.residuals["equation_residual"] = residual;
    rep.residuals["residual_gate"] = gate;
    rep.residuals["derivative_est_error"] = est_error;

    if (residual > gate) {
        rep.verdict = Verdict::Fail;
        return rep;
    }

    // (b) finite norm scans
    bool norms_ok = true;
    if (bc_higher) {
        DiskFunction level = f;
        for (int k = 0; k < order; ++k) {
            const NormGate g = finite_norm_gate(level, params.p, params, true);
            rep.residuals["norm_sup_k" + std::to_string(k)] = g.est.sup_estimate;
            rep.residuals["norm_converged_k" + std::to_string(k)] = g.est.converged ? 1.0 : 0.0;
            norms_ok = norms_ok && g.ok;
            if (k + 1 < order) level = bc_partialbar(level, grid).values;
        }
    } else {
        const NormGate g = finite_norm_gate(f, params.p, params, !complex_class);
        rep.residuals["norm_sup"] = g.est.sup_estimate;
        rep.residuals["norm_converged"] = g.est.converged ? 1.0 : 0.0;
        norms_ok = g.ok;
    }

    rep.verdict = norms_ok ? Verdict::Pass : Verdict::Inconclusive;
    return rep;
}

}  // namespace bchardy
