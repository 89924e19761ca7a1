#pragma once

#include <cmath>
#include <complex>

namespace bchardy {

using Complex = std::complex<double>;

struct IdempotentPair {
    Complex plus;   // w+
    Complex minus;  // w-
};

/// An element of the commutative algebra B = C + jC with j^2 = -1.
///
/// Stored in Cartesian form (sc + j*vec); the idempotent coordinates
/// (w+, w-) with w = p+ w+ + p- w- are computed views. Multiplication acts
/// componentwise in idempotent coordinates, which is what most of the
/// function theory below relies on.
struct Bicomplex {
    Complex sc{0.0, 0.0};   // scalar part z1
    Complex vec{0.0, 0.0};  // vector part z2

    Bicomplex() = default;
    Bicomplex(Complex s, Complex v) : sc(s), vec(v) {}
    explicit Bicomplex(double s) : sc(s), vec(0.0) {}
    explicit Bicomplex(Complex s) : sc(s), vec(0.0) {}

    Bicomplex& operator+=(const Bicomplex& o) {
        sc += o.sc;
        vec += o.vec;
        return *this;
    }
    Bicomplex& operator-=(const Bicomplex& o) {
        sc -= o.sc;
        vec -= o.vec;
        return *this;
    }
};

inline Bicomplex operator+(Bicomplex a, const Bicomplex& b) { return a += b; }
inline Bicomplex operator-(Bicomplex a, const Bicomplex& b) { return a -= b; }
inline Bicomplex operator-(const Bicomplex& a) { return {-a.sc, -a.vec}; }

// (z1 + j z2)(w1 + j w2) = (z1 w1 - z2 w2) + j (z1 w2 + z2 w1)
inline Bicomplex operator*(const Bicomplex& a, const Bicomplex& b) {
    return {a.sc * b.sc - a.vec * b.vec, a.sc * b.vec + a.vec * b.sc};
}

inline Bicomplex operator*(const Complex& c, const Bicomplex& a) { return {c * a.sc, c * a.vec}; }
inline Bicomplex operator*(const Bicomplex& a, const Complex& c) { return c * a; }
inline Bicomplex operator*(double c, const Bicomplex& a) { return {c * a.sc, c * a.vec}; }
inline Bicomplex operator*(const Bicomplex& a, double c) { return c * a; }

// w+- = Sc w -+ i Vec w
inline IdempotentPair to_idempotent(const Bicomplex& w) {
    const Complex i{0.0, 1.0};
    return {w.sc - i * w.vec, w.sc + i * w.vec};
}

// w = p+ w+ + p- w-, i.e. sc = (w+ + w-)/2, vec = i (w+ - w-)/2
inline Bicomplex from_idempotent(const IdempotentPair& p) {
    const Complex i{0.0, 1.0};
    return {0.5 * (p.plus + p.minus), 0.5 * i * (p.plus - p.minus)};
}

inline Bicomplex from_idempotent(Complex plus, Complex minus) {
    return from_idempotent(IdempotentPair{plus, minus});
}

inline Bicomplex bc_p_plus() { return from_idempotent(1.0, 0.0); }    // (1 + ij)/2
inline Bicomplex bc_p_minus() { return from_idempotent(0.0, 1.0); }   // (1 - ij)/2
inline Bicomplex bc_one() { return Bicomplex(1.0); }
inline Bicomplex bc_j() { return Bicomplex(Complex{0, 0}, Complex{1, 0}); }

// Bicomplex conjugate: z1 + j z2 -> z1 - j z2.
inline Bicomplex bconj(const Bicomplex& w) { return {w.sc, -w.vec}; }

// Complex conjugation applied to both idempotent components, i.e. the map
// induced by u -> u* on B = C^2. Needed for the (f+)* manipulations below.
inline Bicomplex star(const Bicomplex& w) { return {std::conj(w.sc), std::conj(w.vec)}; }

// ||w||_B = sqrt((|w+|^2 + |w-|^2)/2)
inline double bnorm(const Bicomplex& w) {
    const IdempotentPair p = to_idempotent(w);
    return std::sqrt(0.5 * (std::norm(p.plus) + std::norm(p.minus)));
}

// Bicomplexification of u = x + iy is x + jy.
inline Bicomplex bicomplexify(Complex u) {
    return {Complex{u.real(), 0.0}, Complex{u.imag(), 0.0}};
}

// True iff w sits on the zero-divisor cone (one idempotent component
// vanishes) but w itself is not zero. Floating zeros are approximate, so the
// test takes a tolerance; pass a negative value to get the scale-aware
// default 1e-12 * ||w||_B.
inline bool is_zero_divisor(const Bicomplex& w, double tol = -1.0) {
    const IdempotentPair p = to_idempotent(w);
    const double ap = std::abs(p.plus);
    const double am = std::abs(p.minus);
    if (tol < 0.0) tol = 1e-12 * bnorm(w);
    if (ap <= tol && am <= tol) return false;  // w == 0 at this tolerance
    return std::min(ap, am) <= tol;
}

}  // namespace bchardy
