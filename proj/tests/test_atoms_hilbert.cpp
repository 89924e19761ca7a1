#include <doctest.h>

#include <cstdio>
#include <numbers>
#include <random>

#include "bchardy/atoms.hpp"
#include "bchardy/hilbert.hpp"
#include "bchardy/integral_ops.hpp"
#include "bchardy/util.hpp"

using namespace bchardy;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const Complex I{0.0, 1.0};

// (2pi)^{-1} (+1 on [0,pi), -1 on [pi,2pi)): a 1-atom on the whole circle.
PAtom half_circle_atom() {
    PAtom a;
    a.p = 1.0;
    a.arc_start = 0.0;
    a.arc_len = kTwoPi;
    a.pieces = {{0.0, 0.5, {Complex{1.0 / kTwoPi, 0}}, {}, {}},
                {0.5, 1.0, {Complex{-1.0 / kTwoPi, 0}}, {}, {}}};
    return a;
}

// (1/pi) (+1 on [0,pi/2), -1 on [pi/2,pi)) with J = [0,pi].
PAtom quarter_step_atom() {
    PAtom a;
    a.p = 1.0;
    a.arc_start = 0.0;
    a.arc_len = kPi;
    a.pieces = {{0.0, 0.5, {Complex{1.0 / kPi, 0}}, {}, {}},
                {0.5, 1.0, {Complex{-1.0 / kPi, 0}}, {}, {}}};
    return a;
}

PAtom constant_non_atom() {
    PAtom a;
    a.p = 1.0;
    a.arc_start = 0.0;
    a.arc_len = kTwoPi;
    a.pieces = {{0.0, 1.0, {Complex{1.0 / kTwoPi, 0}}, {}, {}}};
    return a;
}

}  // namespace

TEST_CASE("validate_atom: hand-built atoms pass, the constant is rejected") {
    CHECK(validate_atom(half_circle_atom()).valid);
    CHECK(validate_atom(quarter_step_atom()).valid);

    const AtomReport bad = validate_atom(constant_non_atom());
    CHECK_FALSE(bad.valid);
    REQUIRE_FALSE(bad.violations.empty());
    CHECK(bad.violations.front().find("moment k=0") != std::string::npos);

    // size bound violations are caught too
    PAtom oversized = quarter_step_atom();
    for (auto& piece : oversized.pieces)
        for (auto& c : piece.poly) c *= 2.0;
    CHECK_FALSE(validate_atom(oversized).valid);
}

TEST_CASE("random atom generator meets the definition") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 20; ++i) {
        const double p = (i % 2 == 0) ? 1.0 : 0.5;
        const PAtom a = random_atom(rng, p);
        const AtomReport rep = validate_atom(a);
        CAPTURE(i);
        CHECK(rep.valid);
        CHECK(rep.sup_abs <= a.arc_bound() * (1 + 1e-9));
        // moments vanish to the scale-aware tolerance
        for (double m : rep.moment_abs) CHECK(m <= rep.moment_tol);
    }
}

TEST_CASE("atomic_norm_upper") {
    PAtom a = quarter_step_atom();
    AtomicDecomposition one{1.0, {Complex{1, 0}}, {a}};
    CHECK(atomic_norm_upper(one) == doctest::Approx(1.0).epsilon(1e-15));

    AtomicDecomposition geo{1.0, {}, {}};
    for (int n = 1; n <= 40; ++n) {
        geo.coefficients.push_back(Complex{std::pow(2.0, -n), 0});
        geo.atoms.push_back(a);
    }
    CHECK(atomic_norm_upper(geo) == doctest::Approx(1.0).epsilon(1e-9));

    AtomicDecomposition half{0.5, {Complex{1, 0}, Complex{0.25, 0}}, {a, a}};
    CHECK(atomic_norm_upper(half) == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("bc_atomic_norm and quasi_norm_b") {
    const PAtom a = quarter_step_atom();
    BCAtomicBoundary both;
    both.plus = {1.0, {Complex{1, 0}}, {a}};
    both.minus = {1.0, {Complex{1, 0}}, {a}};
    CHECK(bc_atomic_norm(both) == doctest::Approx(2.0).epsilon(1e-14));

    BCAtomicBoundary minus_only;
    minus_only.plus = {1.0, {}, {}};
    minus_only.minus = {1.0, {Complex{0, 2}}, {a}};
    CHECK(bc_atomic_norm(minus_only) == doctest::Approx(2.0).epsilon(1e-14));

    // conjugating the plus coefficients leaves the value unchanged
    BCAtomicBoundary conj_plus = both;
    for (auto& c : conj_plus.plus.coefficients) c = std::conj(c);
    CHECK(bc_atomic_norm(conj_plus) == doctest::Approx(bc_atomic_norm(both)).epsilon(1e-15));

    // tails route to the quasi-norm
    BCAtomicBoundary tailed = both;
    tailed.tail = std::vector<Bicomplex>(256, Bicomplex{});
    tailed.tail_source_q = 4.0;
    CHECK_THROWS_AS(bc_atomic_norm(tailed), std::invalid_argument);
    CHECK(quasi_norm_b(tailed, 2.0) == doctest::Approx(bc_atomic_norm(both)).epsilon(1e-14));

    // constant tail of modulus |c| adds (2 pi)^{1/gamma} |c|
    BCAtomicBoundary const_tail;
    const_tail.plus = {1.0, {}, {}};
    const_tail.minus = {1.0, {}, {}};
    const_tail.tail = std::vector<Bicomplex>(256, Bicomplex(Complex{0.0, 3.0}));
    const_tail.tail_source_q = 4.0;
    CHECK(quasi_norm_b(const_tail, 2.0) ==
          doctest::Approx(std::sqrt(kTwoPi) * 3.0).epsilon(1e-12));

    // gamma range gate: q = 1.5 allows only gamma < 3
    BCAtomicBoundary low_q = const_tail;
    low_q.tail_source_q = 1.5;
    CHECK_THROWS_AS(quasi_norm_b(low_q, 3.5), std::invalid_argument);
    CHECK_NOTHROW(quasi_norm_b(low_q, 2.5));
}

TEST_CASE("quasi-norm of a TB(1) tail matches the closed form") {
    auto grid = std::make_shared<const PolarGrid>(64, 512);
    const DiskOperator op(grid);
    BCAtomicBoundary b;
    b.plus = {1.0, {}, {}};
    b.minus = {1.0, {}, {}};
    b.tail = op.boundary_TB(DiskFunction::constant(Bicomplex(1.0)), 512);
    b.tail_source_q = 4.0;
    // TB(1) = x - j y has unit bicomplex norm on the circle
    const double gamma = 2.0;
    CHECK(quasi_norm_b(b, gamma) == doctest::Approx(std::pow(kTwoPi, 1.0 / gamma)).epsilon(1e-3));
}

TEST_CASE("synthesize_boundary: zero, pointwise assembly, termwise pairing") {
    BCAtomicBoundary empty;
    empty.plus = {1.0, {}, {}};
    empty.minus = {1.0, {}, {}};
    const BoundaryDistribution zero = synthesize_boundary(empty, 256);
    for (const Bicomplex& v : zero.samples()) CHECK(bnorm(v) == 0.0);

    const PAtom ap = quarter_step_atom();
    const PAtom am = half_circle_atom();
    BCAtomicBoundary b;
    b.plus = {1.0, {Complex{1, 0}}, {ap}};
    b.minus = {1.0, {Complex{1, 0}}, {am}};
    const BoundaryDistribution exact = synthesize_boundary_exact(b);
    for (double th : {0.2, 1.0, 2.5, 4.0}) {
        const Bicomplex want =
            bc_p_plus() * std::conj(ap.eval(th)) + bc_p_minus() * am.eval(th);
        CHECK(bnorm(exact.eval(th) - want) < 1e-14);
    }

    // pairing the exact synthesis against e^{ikt} is the termwise sum of
    // atom integrals; the sampled density approaches it as samples grow
    for (int k : {0, 1, 3}) {
        const TrigPoly phi = TrigPoly::exponential(k);
        static const auto nodes = gauss_legendre(32);
        Complex plus_int{0, 0}, minus_int{0, 0};
        for (const ArcPiece& piece : ap.arc_pieces()) {
            const double mid = piece.start + 0.5 * piece.length, half = 0.5 * piece.length;
            for (const auto& [x, w] : nodes) {
                const double t = mid + half * x;
                plus_int += w * half * std::conj(piece.profile(t)) * phi.eval(t);
            }
        }
        for (const ArcPiece& piece : am.arc_pieces()) {
            const double mid = piece.start + 0.5 * piece.length, half = 0.5 * piece.length;
            for (const auto& [x, w] : nodes) {
                const double t = mid + half * x;
                minus_int += w * half * piece.profile(t) * phi.eval(t);
            }
        }
        const Bicomplex want = bc_p_plus() * plus_int + bc_p_minus() * minus_int;
        CHECK(bnorm(exact.pair(phi) - want) < 1e-12);

        const BoundaryDistribution coarse = synthesize_boundary(b, 4096);
        const BoundaryDistribution fine = synthesize_boundary(b, 16384);
        const double err_c = bnorm(coarse.pair(phi) - want);
        const double err_f = bnorm(fine.pair(phi) - want);
        CHECK(err_c < 5e-3);
        CHECK(err_f < 0.5 * err_c + 1e-12);
    }
}

TEST_CASE("hilbert_pv: constants exactly zero, cos -> sin, the multiplier") {
    const HilbertPvResult zero = hilbert_pv([](double) { return Complex{1.0, 0.0}; }, 0.7);
    CHECK(std::abs(zero.value) < 1e-15);

    for (int n : {1, 3, 5}) {
        for (double th : {0.0, 0.9, 3.0}) {
            const HilbertPvResult r =
                hilbert_pv([n](double t) { return Complex{std::cos(n * t), 0.0}; }, th);
            CHECK(r.converged);
            CHECK(std::abs(r.value - std::sin(n * th)) < 1e-7);
        }
    }

    // e^{i n t} -> -i sgn(n) e^{i n t}
    for (int n : {2, -2}) {
        const double th = 1.3;
        const HilbertPvResult r =
            hilbert_pv([n](double t) { return std::polar(1.0, n * t); }, th);
        const Complex want = Complex{0, -1} * double(n > 0 ? 1 : -1) * std::polar(1.0, n * th);
        CHECK(std::abs(r.value - want) < 1e-7);
    }
}

TEST_CASE("hilbert_fft: multiplier action and Parseval contraction") {
    std::vector<Complex> ones(1024, Complex{1.0, 0.0});
    for (const Complex& v : hilbert_fft(ones)) CHECK(std::abs(v) < 1e-13);

    const int n = 4;
    std::vector<Complex> sn(1024), want(1024);
    for (int k = 0; k < 1024; ++k) {
        const double t = kTwoPi * k / 1024;
        sn[k] = Complex{std::sin(n * t), 0.0};
        want[k] = Complex{-std::cos(n * t), 0.0};
    }
    const auto h = hilbert_fft(sn);
    double worst = 0.0;
    for (int k = 0; k < 1024; ++k) worst = std::max(worst, std::abs(h[k] - want[k]));
    CHECK(worst < 1e-12);

    std::mt19937_64 rng(9);
    double ratio = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Complex> u(256);
        TrigPoly poly;
        for (int m = -8; m <= 8; ++m)
            poly.coeffs[m] = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        for (int k = 0; k < 256; ++k) u[k] = poly.eval(kTwoPi * k / 256);
        const auto hu = hilbert_fft(u);
        const double nu = circle_lp_norm(u, 2.0);
        if (nu > 0) ratio = std::max(ratio, circle_lp_norm(hu, 2.0) / nu);
    }
    CHECK(ratio <= 1.0 + 1e-10);
}

TEST_CASE("hilbert: H^2 = -(I - mean) and M. Riesz ratios at p = 1.5 and 3") {
    std::mt19937_64 rng(10);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        TrigPoly poly;
        for (int m = -16; m <= 16; ++m)
            poly.coeffs[m] = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        std::vector<Complex> u(512);
        for (int k = 0; k < 512; ++k) u[k] = poly.eval(kTwoPi * k / 512);
        Complex mean{0, 0};
        for (const Complex& v : u) mean += v;
        mean /= 512.0;
        const auto h2 = hilbert_fft(hilbert_fft(u));
        for (int k = 0; k < 512; ++k) worst = std::max(worst, std::abs(h2[k] + (u[k] - mean)));
    }
    CHECK(worst <= 1e-10);

    for (double p : {1.5, 3.0}) {
        double maxr = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            TrigPoly poly;
            for (int m = -8; m <= 8; ++m)
                poly.coeffs[m] = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
            std::vector<Complex> u(256);
            for (int k = 0; k < 256; ++k) u[k] = poly.eval(kTwoPi * k / 256);
            const double nu = circle_lp_norm(u, p);
            if (nu > 1e-9) maxr = std::max(maxr, circle_lp_norm(hilbert_fft(u), p) / nu);
        }
        CAPTURE(p);
        CHECK(std::isfinite(maxr));
        CHECK(maxr < 10.0);  // the constant depends only on p; desk bound
    }
}

TEST_CASE("hilbert_bc: constants, component multipliers, norm split") {
    std::vector<Bicomplex> cvec(256, Bicomplex{Complex{1, 1}, Complex{0, 2}});
    for (const Bicomplex& v : hilbert_bc(cvec)) CHECK(bnorm(v) < 1e-12);

    // p+ e^{it} + p- e^{-it} -> p+ (-i e^{it}) + p- (i e^{-it})
    std::vector<Bicomplex> u(512), want(512);
    for (int k = 0; k < 512; ++k) {
        const double t = kTwoPi * k / 512;
        u[k] = from_idempotent(std::polar(1.0, t), std::polar(1.0, -t));
        want[k] = from_idempotent(-I * std::polar(1.0, t), I * std::polar(1.0, -t));
    }
    const auto h = hilbert_bc(u);
    double worst = 0.0;
    for (int k = 0; k < 512; ++k) worst = std::max(worst, bnorm(h[k] - want[k]));
    CHECK(worst < 1e-12);

    // ||H(b)||_{L^p(B)} <= (1/sqrt 2)(||H b+||_p + ||H b-||_p)
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Bicomplex> b(256);
        TrigPoly pp, pm;
        for (int m = -6; m <= 6; ++m) {
            pp.coeffs[m] = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
            pm.coeffs[m] = Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        }
        std::vector<Complex> bp(256), bm(256);
        for (int k = 0; k < 256; ++k) {
            const double t = kTwoPi * k / 256;
            bp[k] = pp.eval(t);
            bm[k] = pm.eval(t);
            b[k] = from_idempotent(bp[k], bm[k]);
        }
        const double p = 1.0;
        const double lhs = circle_lp_norm_bc(hilbert_bc(b), p);
        const double rhs = (circle_lp_norm(hilbert_fft(bp), p) + circle_lp_norm(hilbert_fft(bm), p)) /
                           std::sqrt(2.0);
        CHECK(lhs <= rhs * (1 + 1e-12));
    }
}

TEST_CASE("hilbert_continuity_check: zero, random corpus stability, tails") {
    BCAtomicBoundary zero;
    zero.plus = {1.0, {}, {}};
    zero.minus = {1.0, {}, {}};
    const ContinuityTable zt = hilbert_continuity_check({zero}, 1.0);
    CHECK(zt.rows[0].ratio == 0.0);

    auto build_corpus = [](std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::vector<BCAtomicBoundary> corpus;
        for (int i = 0; i < 25; ++i) {
            BCAtomicBoundary b;
            b.plus = {1.0, {}, {}};
            b.minus = {1.0, {}, {}};
            auto& side = (i % 2 == 0) ? b.plus : b.minus;
            side.coefficients.push_back(Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)});
            side.atoms.push_back(random_atom(rng, 1.0));
            corpus.push_back(std::move(b));
        }
        return corpus;
    };
    const ContinuityTable a = hilbert_continuity_check(build_corpus(77), 1.0);
    const ContinuityTable b = hilbert_continuity_check(build_corpus(77), 1.0);
    CHECK(std::isfinite(a.max_ratio));
    CHECK(a.max_ratio > 0.0);
    CHECK(a.max_ratio == b.max_ratio);  // same seed, same corpus, same table

    // a smooth tail switches the denominator to the quasi-norm
    BCAtomicBoundary tailed;
    tailed.plus = {1.0, {Complex{1, 0}}, {quarter_step_atom()}};
    tailed.minus = {1.0, {}, {}};
    BCAtomicBoundary plain = tailed;
    tailed.tail = std::vector<Bicomplex>(4096, Bicomplex(Complex{0.5, 0.0}));
    tailed.tail_source_q = 4.0;
    const double denom_plain = bc_atomic_norm(plain);
    const double denom_tail = quasi_norm_b(tailed, 2.0);
    CHECK(denom_tail == doctest::Approx(denom_plain + std::sqrt(kTwoPi) * 0.5).epsilon(1e-12));
    const ContinuityTable tt = hilbert_continuity_check({tailed}, 1.0, 2.0);
    CHECK(tt.rows[0].boundary_norm == doctest::Approx(denom_tail).epsilon(1e-12));
}

TEST_CASE("decomposition fixtures round trip through JSON") {
    AtomicDecomposition d;
    d.p = 0.5;
    d.coefficients = {Complex{1, 0}, Complex{0.25, -0.5}};
    d.atoms = {quarter_step_atom(), half_circle_atom()};
    d.atoms[0].p = d.atoms[1].p = 0.5;  // moments k <= 1 need not vanish here; IO only
    const std::string path = "/tmp/bchardy_fixture.json";
    save_decomposition_json(d, path);
    const AtomicDecomposition r = load_decomposition_json(path);
    CHECK(r.p == d.p);
    REQUIRE(r.atoms.size() == 2);
    REQUIRE(r.coefficients.size() == 2);
    CHECK(r.coefficients[1] == d.coefficients[1]);
    for (double th : {0.3, 1.8, 2.9})
        CHECK(std::abs(r.atoms[0].eval(th) - d.atoms[0].eval(th)) == 0.0);
    std::remove(path.c_str());
}
