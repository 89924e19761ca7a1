#include <doctest.h>

#include <numbers>

#include "bchardy/boundary.hpp"
#include "bchardy/integral_ops.hpp"

using namespace bchardy;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex I{0.0, 1.0};
}  // namespace

TEST_CASE("distributional pairing: constants, orthogonality, boundary pole") {
    const DiskFunction one = DiskFunction::constant(Complex{1.0, 0.0});
    const PairingResult a = distributional_pairing(one, TrigPoly::exponential(0));
    CHECK(std::abs(a.value.sc - kTwoPi) < 1e-10);
    CHECK(a.converged);

    const DiskFunction z2 = make_test_function("monomial", {Complex{2, 0}});
    const PairingResult hit = distributional_pairing(z2, TrigPoly::exponential(-2));
    CHECK(std::abs(hit.value.sc - kTwoPi) < 1e-9);
    const PairingResult miss = distributional_pairing(z2, TrigPoly::exponential(1));
    CHECK(std::abs(miss.value.sc) < 1e-10);

    // geometric series: only the k = 1 coefficient survives against e^{-i t}
    const DiskFunction pole = make_test_function("pole", {Complex{1, 0}});
    const PairingResult g = distributional_pairing(pole, TrigPoly::exponential(-1));
    CHECK(std::abs(g.value.sc - kTwoPi) < 1e-6);
}

TEST_CASE("pairing splits componentwise and is conjugation compatible") {
    const DiskFunction f = make_test_function("bc-mixed", {Complex{1, 0}, Complex{1, 0}});
    const TrigPoly phi = TrigPoly::exponential(2);
    const PairingResult whole = distributional_pairing(f, phi);
    const PairingResult plus = distributional_pairing(f.plus_component(), phi);
    const PairingResult minus = distributional_pairing(f.minus_component(), phi);
    CHECK(bnorm(whole.value -
                (bc_p_plus() * plus.value.sc + bc_p_minus() * minus.value.sc)) <= 1e-10);

    // int (w+)*(r e^{it}) phi(t) dt = conj(int w+(r e^{it}) phi*(t) dt), at a fixed radius
    const DiskFunction wplus = make_test_function("monomial", {Complex{2, 0}});
    TrigPoly phi_star;
    for (const auto& [n, c] : phi.coeffs) phi_star.coeffs[-n] = std::conj(c);
    const Complex lhs = distributional_pairing(wplus.starred(), phi, {0.9}).value.sc;
    const Complex rhs = std::conj(distributional_pairing(wplus, phi_star, {0.9}).value.sc);
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("poisson_extend: constants, exponentials, kernel value at zero offset") {
    const BoundaryDistribution c = BoundaryDistribution::trig({{0, Bicomplex(Complex{2.0, -1.0})}});
    CHECK(bnorm(poisson_extend(c, 0.37, 1.2) - Bicomplex(Complex{2.0, -1.0})) < 1e-14);

    // e^{i n t} extends with multiplier r^{|n|}: exact for trig, quadrature for density
    const int n = 3;
    const BoundaryDistribution e3 = BoundaryDistribution::trig({{n, Bicomplex(Complex{1, 0})}});
    const double r = 0.8, th = 0.9;
    CHECK(std::abs(poisson_extend(e3, r, th).sc - std::pow(r, n) * std::polar(1.0, n * th)) < 1e-14);

    std::vector<Bicomplex> samples(512);
    for (int k = 0; k < 512; ++k) samples[k] = Bicomplex(std::polar(1.0, n * kTwoPi * k / 512));
    const BoundaryDistribution dens = BoundaryDistribution::density(samples);
    CHECK(std::abs(poisson_extend(dens, r, th).sc - std::pow(r, n) * std::polar(1.0, n * th)) < 1e-9);

    // the denominator cancels catastrophically near r = 1, hence the slack
    for (double rr : {0.3, 0.9, 0.99})
        CHECK(poisson_kernel(rr, 0.0) == doctest::Approx((1 + rr) / (1 - rr)).epsilon(1e-10));

    CHECK_THROWS_AS(poisson_extend(c, 1.0, 0.0), std::domain_error);
}

TEST_CASE("poisson reproduction from paired coefficients") {
    std::vector<Complex> pts;
    for (int i = 0; i < 40; ++i)
        pts.push_back(std::polar(0.9 * (i % 5 + 1) / 5.0, kTwoPi * i / 40.0));

    const DiskFunction z4 = make_test_function("monomial", {Complex{4, 0}});
    const BoundaryDistribution b4 = boundary_coefficients(z4, 16);
    CHECK(poisson_reproduction_check(z4, b4, pts) <= 1e-8);

    const DiskFunction c = make_test_function("const", {Complex{0.3, 0.4}});
    CHECK(poisson_reproduction_check(c, boundary_coefficients(c, 8), pts) <= 1e-12);

    // geometric tail: truncation at N = 256 leaves r^N/(1-r) inside r <= 0.9
    const DiskFunction pole = make_test_function("pole", {Complex{1, 0}});
    const BoundaryDistribution bp = boundary_coefficients(pole, 256);
    CHECK(poisson_reproduction_check(pole, bp, pts) <= 1e-3);
}

TEST_CASE("lp boundary convergence: closed form for z, zero for constants, decay for T") {
    const DiskFunction fz = make_test_function("monomial", {Complex{1, 0}});
    const BoundaryDistribution bz = BoundaryDistribution::trig({{1, Bicomplex(Complex{1, 0})}});
    for (const auto& [r, err] : lp_boundary_convergence(fz, bz, 2.0, {0.5, 0.9, 0.99}))
        CHECK(err == doctest::Approx(kTwoPi * (1 - r) * (1 - r)).epsilon(1e-9));

    const DiskFunction c = make_test_function("const", {Complex{1, -1}});
    const BoundaryDistribution bc = BoundaryDistribution::trig({{0, Bicomplex(Complex{1, -1})}});
    for (const auto& [r, err] : lp_boundary_convergence(c, bc, 2.0, {0.5, 0.9}))
        CHECK(err <= 1e-14);

    // T(g) of a smooth density converges to its boundary restriction in L^1
    auto grid = std::make_shared<const PolarGrid>(64, 512);
    const DiskOperator op(grid);
    const DiskFunction g = make_test_function("mixed-monomial", {Complex{1, 0}, Complex{1, 0}});
    auto bound = std::make_shared<DiskOperator::Bound>(op.bind(g));
    const DiskFunction tg = DiskFunction::callable(
        [bound](Complex z) { return Bicomplex(bound->T_at(z)); }, Codomain::ComplexValued, "T(g)");
    const BoundaryDistribution tb = BoundaryDistribution::density(sample_circle(tg, 1.0, 256));
    const auto errs = lp_boundary_convergence(tg, tb, 1.0, {0.9, 0.99, 0.999}, 256);
    CHECK(errs[1].second < errs[0].second);
    CHECK(errs[2].second < errs[1].second);
}

TEST_CASE("lone_distbv_check: TB of smooth source, constants, zhat") {
    auto grid = std::make_shared<const PolarGrid>(64, 512);
    const DiskOperator op(grid);
    const DiskFunction g = make_test_function("bc-mixed", {Complex{1, 0}, Complex{1, 0}});
    auto bound = std::make_shared<DiskOperator::Bound>(op.bind(g));
    const DiskFunction tbg = DiskFunction::callable(
        [bound](Complex z) { return bound->TB_at(z); }, Codomain::BicomplexValued, "TB(g)");
    LoneDistBvOptions opts;
    opts.basis_modes = 16;
    opts.n_theta = 512;
    opts.pairing_tol = 2e-3;  // TB circles carry quadrature error
    CHECK(lone_distbv_check(tbg, opts).verdict == Verdict::Pass);

    CHECK(lone_distbv_check(DiskFunction::constant(Bicomplex{Complex{1, 2}, Complex{0, 1}}))
              .verdict == Verdict::Pass);

    const DiskFunction zhat = make_test_function("bc-zhat", {Complex{1, 0}});
    CHECK(lone_distbv_check(zhat).verdict == Verdict::Pass);
    // both routes give the bicomplexified e^{i t} coefficient: c_1 = p-
    const BoundaryDistribution ub = BoundaryDistribution::density(sample_circle(zhat, 1.0, 512));
    CHECK(bnorm(ub.fourier_coefficient(1) - bc_p_minus()) < 1e-12);
    CHECK(bnorm(ub.fourier_coefficient(-1) - bc_p_plus()) < 1e-12);
}

TEST_CASE("boundary distribution representations agree pointwise") {
    // trig object sampled to a density, then evaluated back
    const BoundaryDistribution t =
        BoundaryDistribution::trig({{1, Bicomplex(Complex{0.5, 0})}, {-2, bc_p_plus()}});
    const BoundaryDistribution d = BoundaryDistribution::density(t.to_density(1024));
    for (double th : {0.1, 2.0, 5.5})
        CHECK(bnorm(t.eval(th) - d.eval(th)) < 1e-4);
    CHECK(bnorm(t.pair(TrigPoly::exponential(-1)) - d.pair(TrigPoly::exponential(-1))) < 1e-12);
}
