#include "bchardy/disk_function.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace bchardy {

namespace {

constexpr double kDomainSlack = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_domain(Complex z) {
    if (std::abs(z) > 1.0 + kDomainSlack)
        throw std::domain_error("DiskFunction: point outside the closed unit disk");
}

}  // namespace

DiskFunction DiskFunction::closed_form(ClosedForm cf, Codomain cod) {
    DiskFunction f;
    f.body_ = std::move(cf);
    f.codomain_ = cod;
    return f;
}

DiskFunction DiskFunction::callable(Evaluator fn, Codomain cod, std::string label) {
    DiskFunction f;
    f.body_ = Callable{std::move(fn), std::move(label)};
    f.codomain_ = cod;
    return f;
}

DiskFunction DiskFunction::sampled(std::shared_ptr<const PolarGrid> grid, std::vector<Bicomplex> values,
                                   Codomain cod) {
    if (!grid) throw std::invalid_argument("DiskFunction::sampled: null grid");
    if (values.size() != grid->size())
        throw std::invalid_argument("DiskFunction::sampled: value count does not match grid");
    DiskFunction f;
    f.body_ = Sampled{std::move(grid), std::make_shared<const std::vector<Bicomplex>>(std::move(values))};
    f.codomain_ = cod;
    return f;
}

DiskFunction DiskFunction::zero(Codomain cod) {
    return closed_form(ClosedForm(), cod);
}

DiskFunction DiskFunction::constant(Bicomplex c) {
    return closed_form(ClosedForm::constant(c), Codomain::BicomplexValued);
}

DiskFunction DiskFunction::constant(Complex c) {
    return closed_form(ClosedForm::constant(Bicomplex(c)), Codomain::ComplexValued);
}

bool DiskFunction::is_closed_form() const { return std::holds_alternative<ClosedForm>(body_); }
bool DiskFunction::is_sampled() const { return std::holds_alternative<Sampled>(body_); }
bool DiskFunction::is_callable() const { return std::holds_alternative<Callable>(body_); }

const ClosedForm& DiskFunction::closed() const {
    if (!is_closed_form()) throw std::logic_error("DiskFunction: not a closed form");
    return std::get<ClosedForm>(body_);
}

const PolarGrid& DiskFunction::grid() const {
    if (!is_sampled()) throw std::logic_error("DiskFunction: not sampled");
    return *std::get<Sampled>(body_).grid;
}

std::shared_ptr<const PolarGrid> DiskFunction::grid_ptr() const {
    if (!is_sampled()) throw std::logic_error("DiskFunction: not sampled");
    return std::get<Sampled>(body_).grid;
}

const std::vector<Bicomplex>& DiskFunction::values() const {
    if (!is_sampled()) throw std::logic_error("DiskFunction: not sampled");
    return *std::get<Sampled>(body_).values;
}

Bicomplex DiskFunction::eval_sampled(const Sampled& s, Complex z) const {
    const PolarGrid& g = *s.grid;
    const std::vector<Bicomplex>& vals = *s.values;
    const int nt = g.n_angles();
    const double dtheta = g.angle_step();

    double r = std::abs(z);
    double theta = std::arg(z);
    if (theta < 0.0) theta += kTwoPi;

    // Angular bracket with wraparound.
    int k0 = static_cast<int>(std::floor(theta / dtheta));
    if (k0 >= nt) k0 = nt - 1;
    const int k1 = (k0 + 1) % nt;
    const double wt = (theta - k0 * dtheta) / dtheta;

    auto row_value = [&](int i, int k) -> Bicomplex { return vals[g.index(i, k)]; };
    auto angular = [&](int i, double frac, int ka, int kb) -> Bicomplex {
        return (1.0 - frac) * row_value(i, ka) + frac * row_value(i, kb);
    };

    const std::vector<double>& radii = g.radii();
    const int nr = g.n_radii();

    if (r <= radii.front()) {
        // Interpolate along the diameter through z using the reflected
        // sample at theta + pi; smooth across the coordinate center.
        const int kpi0 = (k0 + nt / 2) % nt;
        const int kpi1 = (k1 + nt / 2) % nt;
        const Bicomplex a = angular(0, wt, kpi0, kpi1);  // at radius -r0
        const Bicomplex b = angular(0, wt, k0, k1);      // at radius +r0
        const double r0 = radii.front();
        const double lam = (r + r0) / (2.0 * r0);
        return (1.0 - lam) * a + lam * b;
    }

    int i0;
    double wr;
    if (r >= radii.back()) {
        i0 = nr - 2;  // extrapolate over the outer half-cell
        wr = (r - radii[i0]) / (radii[i0 + 1] - radii[i0]);
    } else {
        auto it = std::upper_bound(radii.begin(), radii.end(), r);
        i0 = static_cast<int>(std::distance(radii.begin(), it)) - 1;
        i0 = std::clamp(i0, 0, nr - 2);
        wr = (r - radii[i0]) / (radii[i0 + 1] - radii[i0]);
    }
    const Bicomplex a = angular(i0, wt, k0, k1);
    const Bicomplex b = angular(i0 + 1, wt, k0, k1);
    return (1.0 - wr) * a + wr * b;
}

Bicomplex DiskFunction::evaluate(Complex z) const {
    check_domain(z);
    if (const auto* cf = std::get_if<ClosedForm>(&body_)) return cf->evaluate(z);
    if (const auto* cb = std::get_if<Callable>(&body_)) return cb->fn(z);
    return eval_sampled(std::get<Sampled>(body_), z);
}

Complex DiskFunction::evaluate_complex(Complex z) const {
    if (!is_complex_valued())
        throw std::logic_error("DiskFunction: complex value requested from bicomplex-valued function");
    return evaluate(z).sc;
}

DiskFunction DiskFunction::plus_component() const {
    if (const auto* cf = std::get_if<ClosedForm>(&body_))
        return closed_form(cf->plus_component(), Codomain::ComplexValued);
    if (is_sampled()) {
        const Sampled& s = std::get<Sampled>(body_);
        std::vector<Bicomplex> out(s.values->size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = Bicomplex(to_idempotent((*s.values)[i]).plus);
        return sampled(s.grid, std::move(out), Codomain::ComplexValued);
    }
    const Callable& c = std::get<Callable>(body_);
    auto fn = c.fn;
    return callable([fn](Complex z) { return Bicomplex(to_idempotent(fn(z)).plus); },
                    Codomain::ComplexValued, c.label + "+");
}

DiskFunction DiskFunction::minus_component() const {
    if (const auto* cf = std::get_if<ClosedForm>(&body_))
        return closed_form(cf->minus_component(), Codomain::ComplexValued);
    if (is_sampled()) {
        const Sampled& s = std::get<Sampled>(body_);
        std::vector<Bicomplex> out(s.values->size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = Bicomplex(to_idempotent((*s.values)[i]).minus);
        return sampled(s.grid, std::move(out), Codomain::ComplexValued);
    }
    const Callable& c = std::get<Callable>(body_);
    auto fn = c.fn;
    return callable([fn](Complex z) { return Bicomplex(to_idempotent(fn(z)).minus); },
                    Codomain::ComplexValued, c.label + "-");
}

DiskFunction DiskFunction::starred() const {
    if (const auto* cf = std::get_if<ClosedForm>(&body_)) return closed_form(cf->star(), codomain_);
    if (is_sampled()) {
        const Sampled& s = std::get<Sampled>(body_);
        std::vector<Bicomplex> out(s.values->size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = star((*s.values)[i]);
        return sampled(s.grid, std::move(out), codomain_);
    }
    const Callable& c = std::get<Callable>(body_);
    auto fn = c.fn;
    return callable([fn](Complex z) { return star(fn(z)); }, codomain_, c.label + "*");
}

DiskFunction DiskFunction::scaled(Bicomplex c) const {
    const Codomain cod =
        (is_complex_valued() && std::abs(c.vec) == 0.0) ? Codomain::ComplexValued : Codomain::BicomplexValued;
    if (const auto* cf = std::get_if<ClosedForm>(&body_)) return closed_form(cf->scaled(c), cod);
    if (is_sampled()) {
        const Sampled& s = std::get<Sampled>(body_);
        std::vector<Bicomplex> out(s.values->size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * (*s.values)[i];
        return sampled(s.grid, std::move(out), cod);
    }
    const Callable& cb = std::get<Callable>(body_);
    auto fn = cb.fn;
    return callable([fn, c](Complex z) { return c * fn(z); }, cod, cb.label);
}

DiskFunction operator+(const DiskFunction& a, const DiskFunction& b) {
    const Codomain cod = (a.is_complex_valued() && b.is_complex_valued()) ? Codomain::ComplexValued
                                                                          : Codomain::BicomplexValued;
    if (a.is_closed_form() && b.is_closed_form())
        return DiskFunction::closed_form(a.closed() + b.closed(), cod);
    if (a.is_sampled() && b.is_sampled() && a.grid().same_layout(b.grid())) {
        std::vector<Bicomplex> out(a.values().size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + b.values()[i];
        return DiskFunction::sampled(a.grid_ptr(), std::move(out), cod);
    }
    DiskFunction fa = a, fb = b;
    return DiskFunction::callable([fa, fb](Complex z) { return fa.evaluate(z) + fb.evaluate(z); }, cod, "sum");
}

DiskFunction operator-(const DiskFunction& a, const DiskFunction& b) {
    return a + b.scaled(Bicomplex(-1.0));
}

DiskFunction DiskFunction::materialize(std::shared_ptr<const PolarGrid> grid) const {
    if (!grid) throw std::invalid_argument("materialize: null grid");
    std::vector<Bicomplex> out(grid->size());
    for (int i = 0; i < grid->n_radii(); ++i)
        for (int k = 0; k < grid->n_angles(); ++k) out[grid->index(i, k)] = evaluate(grid->node(i, k));
    return sampled(std::move(grid), std::move(out), codomain_);
}

void DiskFunction::save_csv(const std::string& path) const {
    if (!is_sampled()) throw std::logic_error("save_csv: only sampled functions serialize");
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("save_csv: cannot open " + path);
    std::fprintf(fp, "r,theta,re_sc,im_sc,re_vec,im_vec\n");
    const PolarGrid& g = grid();
    const auto& vals = values();
    for (int i = 0; i < g.n_radii(); ++i)
        for (int k = 0; k < g.n_angles(); ++k) {
            const Bicomplex& v = vals[g.index(i, k)];
            std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", g.radius(i), g.angle(k),
                         v.sc.real(), v.sc.imag(), v.vec.real(), v.vec.imag());
        }
    std::fclose(fp);
}

DiskFunction DiskFunction::load_csv(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "r");
    if (!fp) throw std::runtime_error("load_csv: cannot open " + path);
    char header[256];
    if (!std::fgets(header, sizeof header, fp)) {
        std::fclose(fp);
        throw std::runtime_error("load_csv: empty file");
    }
    std::vector<double> radii;
    std::vector<Bicomplex> vals;
    double r, th, a, b, c, d;
    bool any_vec = false;
    while (std::fscanf(fp, "%lf,%lf,%lf,%lf,%lf,%lf", &r, &th, &a, &b, &c, &d) == 6) {
        if (radii.empty() || r != radii.back()) radii.push_back(r);
        vals.emplace_back(Complex{a, b}, Complex{c, d});
        any_vec = any_vec || c != 0.0 || d != 0.0;
    }
    std::fclose(fp);
    if (radii.empty() || vals.size() % radii.size() != 0)
        throw std::runtime_error("load_csv: malformed grid layout");
    const int n_angles = static_cast<int>(vals.size() / radii.size());
    auto grid = std::make_shared<const PolarGrid>(radii, n_angles);
    return sampled(std::move(grid), std::move(vals),
                   any_vec ? Codomain::BicomplexValued : Codomain::ComplexValued);
}

// ---------------------------------------------------------------------------
// Test-function catalog

namespace {

int int_param(const std::vector<Complex>& params, std::size_t i) {
    if (i >= params.size()) throw std::invalid_argument("make_test_function: missing parameter");
    return static_cast<int>(std::lround(params[i].real()));
}

Complex cx_param(const std::vector<Complex>& params, std::size_t i) {
    if (i >= params.size()) throw std::invalid_argument("make_test_function: missing parameter");
    return params[i];
}

}  // namespace

DiskFunction make_test_function(const std::string& name, const std::vector<Complex>& params) {
    FunctionInfo info;
    info.name = name;
    if (name == "const") {
        DiskFunction f = DiskFunction::constant(cx_param(params, 0));
        info.holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "monomial") {
        const int n = int_param(params, 0);
        DiskFunction f = DiskFunction::closed_form(ClosedForm::monomial(Bicomplex(1.0), n, 0),
                                                   Codomain::ComplexValued);
        info.holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "conj-monomial") {
        const int n = int_param(params, 0);
        DiskFunction f = DiskFunction::closed_form(ClosedForm::monomial(Bicomplex(1.0), 0, n),
                                                   Codomain::ComplexValued);
        info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "mixed-monomial") {
        const int a = int_param(params, 0), b = int_param(params, 1);
        DiskFunction f = DiskFunction::closed_form(ClosedForm::monomial(Bicomplex(1.0), a, b),
                                                   Codomain::ComplexValued);
        info.bounded_on_disk = true;
        info.holomorphic = (b == 0);
        f.info = info;
        return f;
    }
    if (name == "pole") {  // 1/(1-z)^alpha, boundary pole
        const int alpha = int_param(params, 0);
        DiskFunction f = DiskFunction::closed_form(ClosedForm::pole(Bicomplex(1.0), Complex{1.0, 0.0}, alpha),
                                                   Codomain::ComplexValued);
        info.holomorphic = true;
        f.info = info;
        return f;
    }
    if (name == "outer-pole") {  // 1/(1 - c z), |c| < 1
        const Complex c = cx_param(params, 0);
        if (std::abs(c) >= 1.0) throw std::invalid_argument("outer-pole: need |c| < 1");
        DiskFunction f = DiskFunction::closed_form(ClosedForm::pole(Bicomplex(1.0), c, 1),
                                                   Codomain::ComplexValued);
        info.holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "taylor-decay") {  // sum_{k<=N} (k+1)^-s z^k
        const double s = cx_param(params, 0).real();
        const int N = int_param(params, 1);
        ClosedForm cf;
        for (int k = 0; k <= N; ++k)
            cf = cf + ClosedForm::monomial(Bicomplex(std::pow(k + 1.0, -s)), k, 0);
        DiskFunction f = DiskFunction::closed_form(cf, Codomain::ComplexValued);
        info.holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "abs-pole") {  // |1-z|^-beta, real-valued, in L^q for beta q < 2
        const double beta = cx_param(params, 0).real();
        DiskFunction f = DiskFunction::callable(
            [beta](Complex z) { return Bicomplex(std::pow(std::abs(1.0 - z), -beta)); },
            Codomain::ComplexValued, "abs-pole");
        f.info = info;
        return f;
    }
    if (name == "bc-const") {
        DiskFunction f = DiskFunction::constant(from_idempotent(cx_param(params, 0), cx_param(params, 1)));
        info.bc_holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "bc-holo") {  // p+ (z*)^a + p- z^b, in Hol(D,B)
        const int a = int_param(params, 0), b = int_param(params, 1);
        ClosedForm cf = ClosedForm::monomial(bc_p_plus(), 0, a) + ClosedForm::monomial(bc_p_minus(), b, 0);
        DiskFunction f = DiskFunction::closed_form(cf, Codomain::BicomplexValued);
        info.bc_holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "bc-zhat") {  // zhat^n = p+ (z*)^n + p- z^n
        const int n = int_param(params, 0);
        ClosedForm cf = ClosedForm::monomial(bc_p_plus(), 0, n) + ClosedForm::monomial(bc_p_minus(), n, 0);
        DiskFunction f = DiskFunction::closed_form(cf, Codomain::BicomplexValued);
        info.bc_holomorphic = info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "bc-zstarhat") {  // (z* hat)^n = p+ z^n + p- (z*)^n
        const int n = int_param(params, 0);
        ClosedForm cf = ClosedForm::monomial(bc_p_plus(), n, 0) + ClosedForm::monomial(bc_p_minus(), 0, n);
        DiskFunction f = DiskFunction::closed_form(cf, Codomain::BicomplexValued);
        info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    if (name == "bc-mixed") {  // zhat^a (z* hat)^b
        const int a = int_param(params, 0), b = int_param(params, 1);
        ClosedForm cf = ClosedForm::monomial(bc_p_plus(), b, a) + ClosedForm::monomial(bc_p_minus(), a, b);
        DiskFunction f = DiskFunction::closed_form(cf, Codomain::BicomplexValued);
        info.bounded_on_disk = true;
        f.info = info;
        return f;
    }
    throw std::invalid_argument("make_test_function: unknown name '" + name + "'");
}

}  // namespace bchardy
