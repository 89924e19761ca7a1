#include <doctest.h>

#include <numbers>

#include "bchardy/hardy.hpp"

using namespace bchardy;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("hp_norm: monomials, constants, boundary pole at small p") {
    // |z^n| = r^n, circle integral 2 pi r^{2n}; the sup over the sampled
    // radii sits at r = 0.995.
    const DiskFunction z3 = make_test_function("monomial", {Complex{3, 0}});
    const HardyNormEstimate e = hp_norm(z3, 2.0);
    CHECK(e.sup_estimate == doctest::Approx(std::sqrt(kTwoPi)).epsilon(0.035));
    CHECK(e.sup_estimate <= std::sqrt(kTwoPi) * (1 + 1e-12));
    for (std::size_t i = 1; i < e.values_by_radius.size(); ++i)
        CHECK(e.values_by_radius[i].second >= e.values_by_radius[i - 1].second);

    const DiskFunction c = make_test_function("const", {Complex{-1.5, 2.0}});
    const double cabs = std::abs(Complex{-1.5, 2.0});
    CHECK(hp_norm(c, 2.0).sup_estimate == doctest::Approx(std::sqrt(kTwoPi) * cabs).epsilon(1e-12));
    CHECK(hp_norm(c, 0.5).sup_estimate == doctest::Approx(std::pow(kTwoPi, 2.0) * cabs).epsilon(1e-9));

    // 1/(1-z) lies in H^p for p < 1; the p = 1/2 scan stabilizes.
    const DiskFunction pole = make_test_function("pole", {Complex{1, 0}});
    const HardyNormEstimate ep = hp_norm(pole, 0.5);
    CHECK(std::isfinite(ep.sup_estimate));
    CHECK(ep.converged);

    CHECK_THROWS_AS(hp_norm(z3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(hp_norm(z3, 2.0, {1.5}), std::invalid_argument);
}

TEST_CASE("bc_hp_norm: constants and one-component functions") {
    const Complex c{0.6, -0.8};
    const DiskFunction fc = DiskFunction::constant(Bicomplex(c));
    CHECK(bc_hp_norm(fc, 2.0).sup_estimate ==
          doctest::Approx(std::sqrt(kTwoPi) * std::abs(c)).epsilon(1e-12));

    // f = p- z^n: ||f||_B = r^n / sqrt(2), so the p = 2 value tends to sqrt(pi).
    ClosedForm cf = ClosedForm::monomial(bc_p_minus(), 2, 0);
    const DiskFunction f = DiskFunction::closed_form(cf, Codomain::BicomplexValued);
    CHECK(bc_hp_norm(f, 2.0).sup_estimate == doctest::Approx(std::sqrt(kPi)).epsilon(0.025));

    // components in H^p  =>  finite bicomplex norm
    const DiskFunction bh = make_test_function("bc-holo", {Complex{2, 0}, Complex{3, 0}});
    const HardyNormEstimate e = bc_hp_norm(bh, 2.0);
    CHECK(std::isfinite(e.sup_estimate));
    CHECK(e.sup_estimate < 10.0);
}

TEST_CASE("growth_exponent: constants flat, boundary pole of order one") {
    CHECK(growth_exponent(make_test_function("const", {Complex{3, 0}})) ==
          doctest::Approx(0.0).epsilon(1e-9));
    const double alpha = growth_exponent(make_test_function("pole", {Complex{1, 0}}));
    CHECK(alpha == doctest::Approx(1.0).epsilon(0.05));
    for (const char* name : {"monomial", "outer-pole"}) {
        const DiskFunction f = std::string(name) == "monomial"
                                   ? make_test_function(name, {Complex{3, 0}})
                                   : make_test_function(name, {Complex{0.8, 0}});
        CHECK(growth_exponent(f) <= 0.05);
    }
}

TEST_CASE("classify: holomorphic, nonhomogeneous, higher-order, and failures") {
    ClassifyParams prm;
    prm.p = 2.0;

    CHECK(classify(make_test_function("monomial", {Complex{1, 0}}), "H^p", prm).verdict ==
          Verdict::Pass);

    // f = T(1) + z realized through its closed form z* + z; the residual
    // d/dz* f - 1 vanishes identically.
    const DiskFunction f = DiskFunction::closed_form(
        ClosedForm::monomial(Bicomplex(1.0), 0, 1) + ClosedForm::monomial(Bicomplex(1.0), 1, 0),
        Codomain::ComplexValued);
    const DiskFunction one = DiskFunction::constant(Complex{1.0, 0.0});
    prm.source = &one;
    MembershipReport rep = classify(f, "H^p_f", prm);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.residuals.at("equation_residual") < 1e-14);

    // zhat solves dbar^2 f = 0 with every lower norm finite
    ClassifyParams prm2;
    prm2.p = 2.0;
    prm2.n = 2;
    const DiskFunction zero = DiskFunction::zero(Codomain::BicomplexValued);
    prm2.source = &zero;
    CHECK(classify(make_test_function("bc-zhat", {Complex{1, 0}}), "H^{n,p}_w(D,B)", prm2).verdict ==
          Verdict::Pass);

    // z z* is not holomorphic
    ClassifyParams prm3;
    CHECK(classify(make_test_function("mixed-monomial", {Complex{1, 0}, Complex{1, 0}}), "H^p", prm3)
              .verdict == Verdict::Fail);

    CHECK_THROWS_AS(classify(f, "H^q", prm3), std::invalid_argument);
    CHECK_THROWS_AS(classify(f, "H^p_f", prm3), std::invalid_argument);  // missing source

    // report serializes with the spec'd fields
    const std::string j = rep.to_json();
    CHECK(j.find("\"class\"") != std::string::npos);
    CHECK(j.find("\"verdict\"") != std::string::npos);
    CHECK(j.find("\"residuals\"") != std::string::npos);
}

TEST_CASE("component comparison inequalities on circle integrals") {
    const double p = 2.0;
    const double Cp = std::max(1.0, std::pow(2.0, p - 1.0));
    for (const char* name : {"bc-zhat", "bc-mixed"}) {
        const DiskFunction f = std::string(name) == "bc-zhat"
                                   ? make_test_function(name, {Complex{2, 0}})
                                   : make_test_function(name, {Complex{1, 0}, Complex{1, 0}});
        const auto vals = sample_circle(f, 0.9, 512);
        double bc = 0.0, plus = 0.0, minus = 0.0;
        for (const Bicomplex& v : vals) {
            const IdempotentPair ip = to_idempotent(v);
            bc += std::pow(bnorm(v), p);
            plus += std::pow(std::abs(ip.plus), p);
            minus += std::pow(std::abs(ip.minus), p);
        }
        const double scale = kTwoPi / vals.size();
        bc *= scale;
        plus *= scale;
        minus *= scale;
        CHECK(std::pow(2.0, -p / 2.0) * std::max(plus, minus) <= bc * (1 + 1e-12));
        CHECK(bc <= std::pow(2.0, -p / 2.0) * Cp * (plus + minus) * (1 + 1e-12));
    }
}

TEST_CASE("monotone refinement: larger radii sets never shrink the sup") {
    const DiskFunction f = make_test_function("monomial", {Complex{2, 0}});
    const double small = hp_norm(f, 2.0, {0.5, 0.9}).sup_estimate;
    const double large = hp_norm(f, 2.0, {0.3, 0.5, 0.7, 0.9, 0.99}).sup_estimate;
    CHECK(large >= small);
}

TEST_CASE("bicomplex membership equivalence with the component classes") {
    // pass iff (f+)* and f- both pass as complex H^p members
    struct Case {
        const char* name;
        std::vector<Complex> params;
    };
    const std::vector<Case> corpus = {
        {"bc-holo", {Complex{1, 0}, Complex{1, 0}}},
        {"bc-holo", {Complex{2, 0}, Complex{0, 0}}},
        {"bc-zstarhat", {Complex{1, 0}}},
        {"bc-mixed", {Complex{1, 0}, Complex{1, 0}}},
    };
    ClassifyParams prm;
    prm.p = 2.0;
    for (const Case& c : corpus) {
        const DiskFunction f = make_test_function(c.name, c.params);
        const Verdict whole = classify(f, "H^p(D,B)", prm).verdict;
        const Verdict vp = classify(f.plus_component().starred(), "H^p", prm).verdict;
        const Verdict vm = classify(f.minus_component(), "H^p", prm).verdict;
        const Verdict both = (vp == Verdict::Pass && vm == Verdict::Pass) ? Verdict::Pass
                             : (vp == Verdict::Fail || vm == Verdict::Fail) ? Verdict::Fail
                                                                            : Verdict::Inconclusive;
        CAPTURE(c.name);
        CHECK(whole == both);
    }
}

TEST_CASE("members embed in L^m(D,B) for m below 2p") {
    const PolarGrid grid(48, 256);
    const double p = 2.0;
    for (const char* name : {"bc-holo", "bc-zhat"}) {
        const DiskFunction f = std::string(name) == "bc-holo"
                                   ? make_test_function(name, {Complex{1, 0}, Complex{2, 0}})
                                   : make_test_function(name, {Complex{1, 0}});
        for (double m : {p, 1.5 * p}) {
            const double norm = disk_lp_norm(f, m, grid);
            CHECK(std::isfinite(norm));
            CHECK(norm < 1e6);
        }
    }
}
