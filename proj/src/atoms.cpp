#include "bchardy/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "bchardy/util.hpp"

namespace bchardy {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}
}  // namespace

Complex ProfilePiece::eval(double x) const {
    Complex acc{0.0, 0.0};
    double xp = 1.0;
    for (const Complex& c : poly) {
        acc += c * xp;
        xp *= x;
    }
    for (std::size_t j = 0; j < cos_terms.size(); ++j)
        acc += cos_terms[j] * std::cos((j + 1) * std::numbers::pi * x);
    for (std::size_t j = 0; j < sin_terms.size(); ++j)
        acc += sin_terms[j] * std::sin((j + 1) * std::numbers::pi * x);
    return acc;
}

Complex PAtom::eval_local(double x) const {
    for (const ProfilePiece& p : pieces)
        if (x >= p.x0 && x < p.x1) return p.eval(x);
    return {0.0, 0.0};
}

Complex PAtom::eval(double theta) const {
    const double d = wrap_angle(theta - arc_start);
    if (d >= arc_len) return {0.0, 0.0};
    return eval_local(d / arc_len);
}

std::vector<ArcPiece> PAtom::arc_pieces() const {
    std::vector<ArcPiece> out;
    for (const ProfilePiece& p : pieces) {
        ArcPiece ap;
        ap.start = arc_start + p.x0 * arc_len;
        ap.length = (p.x1 - p.x0) * arc_len;
        const double s = arc_start, len = arc_len;
        const ProfilePiece piece = p;
        ap.profile = [s, len, piece](double t) { return piece.eval(wrap_angle(t - s) / len); };
        out.push_back(std::move(ap));
    }
    return out;
}

double PAtom::arc_bound() const { return std::pow(arc_len, -1.0 / p); }

int PAtom::max_moment() const { return static_cast<int>(std::floor(1.0 / p - 1.0 + 1e-9)); }

AtomReport validate_atom(const PAtom& a, double tol) {
    AtomReport rep;
    rep.size_bound = a.arc_bound();
    if (tol < 0.0) tol = 1e-10 * std::pow(a.arc_len, 1.0 - 1.0 / a.p);
    rep.moment_tol = tol;

    if (!(a.p > 0.0 && a.p <= 1.0)) rep.violations.push_back("p outside (0,1]");
    if (!(a.arc_len > 0.0 && a.arc_len <= kTwoPi + 1e-12)) rep.violations.push_back("arc length outside (0,2pi]");

    // Size bound, sampled densely per piece.
    for (const ProfilePiece& p : a.pieces) {
        if (p.x0 < -1e-12 || p.x1 > 1.0 + 1e-12 || p.x0 >= p.x1)
            rep.violations.push_back("piece outside the arc");
        for (int k = 0; k <= 512; ++k) {
            const double x = p.x0 + (p.x1 - p.x0) * k / 512.0;
            rep.sup_abs = std::max(rep.sup_abs, std::abs(p.eval(x)));
        }
    }
    if (rep.sup_abs > rep.size_bound * (1.0 + 1e-9))
        rep.violations.push_back("size bound |a| <= |J|^{-1/p} violated");

    // Moments against the standard coordinate theta in [0, 2pi).
    static const auto nw = gauss_legendre(48);
    const int kmax = a.max_moment();
    for (int k = 0; k <= kmax; ++k) {
        Complex acc{0.0, 0.0};
        for (const ProfilePiece& p : a.pieces) {
            const double t0 = a.arc_start + p.x0 * a.arc_len;
            const double t1 = a.arc_start + p.x1 * a.arc_len;
            const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
            for (const auto& [x, w] : nw) {
                const double t = mid + half * x;
                acc += w * half * p.eval((t - a.arc_start) / a.arc_len) *
                       std::pow(wrap_angle(t), k);
            }
        }
        rep.moment_abs.push_back(std::abs(acc));
        if (std::abs(acc) > tol)
            rep.violations.push_back("moment k=" + std::to_string(k) + " nonzero");
    }

    rep.valid = rep.violations.empty();
    return rep;
}

double atomic_norm_upper(const AtomicDecomposition& d) {
    if (!(d.p > 0.0 && d.p <= 1.0)) throw std::invalid_argument("atomic_norm_upper: p outside (0,1]");
    double acc = 0.0;
    for (const Complex& c : d.coefficients) acc += std::pow(std::abs(c), d.p);
    return std::pow(acc, 1.0 / d.p);
}

double bc_atomic_norm(const BCAtomicBoundary& b) {
    if (b.tail) throw std::invalid_argument("bc_atomic_norm: tail present, use quasi_norm_b");
    // Conjugating the plus coefficients does not change sum |c|^p, so the
    // conjugated synthesis shares this value.
    return atomic_norm_upper(b.plus) + atomic_norm_upper(b.minus);
}

double quasi_norm_b(const BCAtomicBoundary& b, double gamma) {
    if (!b.tail) throw std::invalid_argument("quasi_norm_b: no tail; use bc_atomic_norm");
    const double q = b.tail_source_q;
    const double upper = q < 2.0 ? q / (2.0 - q) : std::numeric_limits<double>::infinity();
    if (!(gamma > 1.0 && gamma < upper))
        throw std::invalid_argument("quasi_norm_b: gamma outside (1, q/(2-q))");
    const double atomic = atomic_norm_upper(b.plus) + atomic_norm_upper(b.minus);
    return atomic + circle_lp_norm_bc(*b.tail, gamma);
}

namespace {

std::vector<ArcTerm> synthesis_terms(const BCAtomicBoundary& b) {
    std::vector<ArcTerm> terms;
    // p+ (sum c+ a+)*: conjugation of c a is (c*) (a*), still arc-supported.
    for (std::size_t i = 0; i < b.plus.atoms.size(); ++i) {
        ArcTerm t;
        t.coeff = bc_p_plus() * std::conj(b.plus.coefficients[i]);
        for (ArcPiece ap : b.plus.atoms[i].arc_pieces()) {
            auto base = ap.profile;
            ap.profile = [base](double th) { return std::conj(base(th)); };
            t.pieces.push_back(std::move(ap));
        }
        terms.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < b.minus.atoms.size(); ++i) {
        ArcTerm t;
        t.coeff = bc_p_minus() * b.minus.coefficients[i];
        t.pieces = b.minus.atoms[i].arc_pieces();
        terms.push_back(std::move(t));
    }
    return terms;
}

void check_sizes(const BCAtomicBoundary& b) {
    if (b.plus.coefficients.size() != b.plus.atoms.size() ||
        b.minus.coefficients.size() != b.minus.atoms.size())
        throw std::invalid_argument("BCAtomicBoundary: coefficient/atom count mismatch");
}

}  // namespace

BoundaryDistribution synthesize_boundary(const BCAtomicBoundary& b, int n_samples) {
    check_sizes(b);
    const BoundaryDistribution exact =
        BoundaryDistribution::atomic(synthesis_terms(b), b.tail);
    return BoundaryDistribution::density(exact.to_density(n_samples));
}

BoundaryDistribution synthesize_boundary_exact(const BCAtomicBoundary& b) {
    check_sizes(b);
    return BoundaryDistribution::atomic(synthesis_terms(b), b.tail);
}

namespace {

// Solve the (K+1)x(K+1) system G c = m by Gaussian elimination with partial
// pivoting; K <= 4 in practice.
std::vector<Complex> solve_small(std::vector<std::vector<double>> G, std::vector<Complex> m) {
    const int n = static_cast<int>(m.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        std::swap(G[piv], G[col]);
        std::swap(m[piv], m[col]);
        if (G[col][col] == 0.0) throw std::runtime_error("moment projection: singular Gram matrix");
        for (int r = col + 1; r < n; ++r) {
            const double f = G[r][col] / G[col][col];
            for (int c = col; c < n; ++c) G[r][c] -= f * G[col][c];
            m[r] -= f * m[col];
        }
    }
    std::vector<Complex> x(n);
    for (int r = n - 1; r >= 0; --r) {
        Complex acc = m[r];
        for (int c = r + 1; c < n; ++c) acc -= G[r][c] * x[c];
        x[r] = acc / G[r][r];
    }
    return x;
}

}  // namespace

PAtom random_atom(std::mt19937_64& rng, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("random_atom: p outside (0,1]");
    for (int attempt = 0; attempt < 64; ++attempt) {
        PAtom a;
        a.p = p;
        a.arc_len = uniform(rng, 0.8, 2.4);
        a.arc_start = uniform(rng, 0.0, kTwoPi - a.arc_len);  // no wrap by construction

        ProfilePiece piece;
        piece.x0 = 0.0;
        piece.x1 = 1.0;
        for (int j = 0; j < 3; ++j) {
            piece.cos_terms.push_back(Complex{uniform(rng, -1.0, 1.0), 0.0});
            piece.sin_terms.push_back(Complex{uniform(rng, -1.0, 1.0), 0.0});
        }

        // Remove the theta-moment projection onto span{1, theta, ..., theta^K}.
        const int K = a.max_moment();
        const double t0 = a.arc_start, t1 = a.arc_start + a.arc_len;
        auto power_int = [&](int k) {
            return (std::pow(t1, k + 1) - std::pow(t0, k + 1)) / (k + 1);
        };
        std::vector<std::vector<double>> G(K + 1, std::vector<double>(K + 1));
        for (int j = 0; j <= K; ++j)
            for (int k = 0; k <= K; ++k) G[j][k] = power_int(j + k);
        static const auto nw = gauss_legendre(48);
        std::vector<Complex> m(K + 1, Complex{0.0, 0.0});
        const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
        for (int j = 0; j <= K; ++j)
            for (const auto& [x, w] : nw) {
                const double t = mid + half * x;
                m[j] += w * half * piece.eval((t - t0) / a.arc_len) * std::pow(t, j);
            }
        const std::vector<Complex> c = solve_small(G, m);
        // Subtract sum c_k theta^k = sum c_k (t0 + L x)^k as a poly in x.
        std::vector<Complex> polyx(K + 1, Complex{0.0, 0.0});
        for (int k = 0; k <= K; ++k) {
            // (t0 + L x)^k expanded by the binomial theorem
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                polyx[j] -= c[k] * binom * std::pow(t0, k - j) * std::pow(a.arc_len, j);
                binom = binom * (k - j) / (j + 1.0);
            }
        }
        piece.poly = polyx;

        double sup = 0.0;
        for (int k = 0; k <= 1024; ++k) sup = std::max(sup, std::abs(piece.eval(k / 1024.0)));
        if (sup < 1e-6) continue;  // degenerate draw, retry

        const double scale = 0.98 * a.arc_bound() / sup;
        for (auto& v : piece.poly) v *= scale;
        for (auto& v : piece.cos_terms) v *= scale;
        for (auto& v : piece.sin_terms) v *= scale;
        a.pieces.push_back(std::move(piece));
        if (validate_atom(a).valid) return a;
    }
    throw std::runtime_error("random_atom: rejection sampling failed");
}

// ---------------------------------------------------------------------------
// Fixture IO

namespace {

nlohmann::json complex_json(const Complex& c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex complex_from(const nlohmann::json& j) {
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
}

std::vector<Complex> complex_list_from(const nlohmann::json& j) {
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from(e));
    return out;
}

nlohmann::json complex_list_json(const std::vector<Complex>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const Complex& c : v) j.push_back(complex_json(c));
    return j;
}

}  // namespace

AtomicDecomposition load_decomposition_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_decomposition_json: cannot open " + path);
    nlohmann::json j;
    in >> j;
    AtomicDecomposition d;
    d.p = j.at("p").get<double>();
    for (const auto& c : j.at("coefficients")) d.coefficients.push_back(complex_from(c));
    const auto& arcs = j.at("arcs");
    const auto& profiles = j.at("profiles");
    if (arcs.size() != profiles.size() || arcs.size() != d.coefficients.size())
        throw std::runtime_error("load_decomposition_json: arcs/profiles/coefficients size mismatch");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        PAtom a;
        a.p = d.p;
        a.arc_start = arcs[i].at(0).get<double>();
        a.arc_len = arcs[i].at(1).get<double>();
        for (const auto& pj : profiles[i]) {
            ProfilePiece piece;
            piece.x0 = pj.at("x").at(0).get<double>();
            piece.x1 = pj.at("x").at(1).get<double>();
            if (pj.contains("poly")) piece.poly = complex_list_from(pj["poly"]);
            if (pj.contains("cos")) piece.cos_terms = complex_list_from(pj["cos"]);
            if (pj.contains("sin")) piece.sin_terms = complex_list_from(pj["sin"]);
            a.pieces.push_back(std::move(piece));
        }
        d.atoms.push_back(std::move(a));
    }
    return d;
}

void save_decomposition_json(const AtomicDecomposition& d, const std::string& path) {
    nlohmann::json j;
    j["p"] = d.p;
    j["coefficients"] = complex_list_json(d.coefficients);
    nlohmann::json arcs = nlohmann::json::array();
    nlohmann::json profiles = nlohmann::json::array();
    for (const PAtom& a : d.atoms) {
        arcs.push_back(nlohmann::json::array({a.arc_start, a.arc_len}));
        nlohmann::json pieces = nlohmann::json::array();
        for (const ProfilePiece& p : a.pieces) {
            nlohmann::json pj;
            pj["x"] = nlohmann::json::array({p.x0, p.x1});
            if (!p.poly.empty()) pj["poly"] = complex_list_json(p.poly);
            if (!p.cos_terms.empty()) pj["cos"] = complex_list_json(p.cos_terms);
            if (!p.sin_terms.empty()) pj["sin"] = complex_list_json(p.sin_terms);
            pieces.push_back(std::move(pj));
        }
        profiles.push_back(std::move(pieces));
    }
    j["arcs"] = std::move(arcs);
    j["profiles"] = std::move(profiles);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_decomposition_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace bchardy
