#pragma once

#include <vector>

#include "bchardy/bicomplex.hpp"

namespace bchardy {

/// One summand coeff * z^zpow * (z*)^zbarpow * (1 - u z)^-upow * (1 - v z*)^-vpow.
///
/// The family is closed under the Wirtinger derivatives, pointwise complex
/// conjugation and idempotent projection, which is all the generator catalog
/// needs. Pole factors with |u| >= 1 place the pole on or outside the closed
/// disk, so every term is finite on D.
struct Term {
    Bicomplex coeff;
    int zpow = 0;
    int zbarpow = 0;
    Complex u{0.0, 0.0};
    int upow = 0;
    Complex v{0.0, 0.0};
    int vpow = 0;
};

/// A finite sum of Terms; the closed-form backing of generator DiskFunctions.
class ClosedForm {
public:
    ClosedForm() = default;
    explicit ClosedForm(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static ClosedForm constant(Bicomplex c);
    static ClosedForm monomial(Bicomplex c, int zpow, int zbarpow);
    // c / (1 - u z)^p
    static ClosedForm pole(Bicomplex c, Complex u, int p);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Bicomplex evaluate(Complex z) const;

    ClosedForm d_z() const;
    ClosedForm d_zbar() const;

    // Pointwise star map (complex conjugation in both idempotent components).
    ClosedForm star() const;

    // Idempotent components as complex-valued closed forms (vec-free coeffs).
    ClosedForm plus_component() const;
    ClosedForm minus_component() const;

    ClosedForm scaled(const Bicomplex& c) const;

    friend ClosedForm operator+(const ClosedForm& a, const ClosedForm& b);
    friend ClosedForm operator-(const ClosedForm& a, const ClosedForm& b);

    // Degree bound in z and z* combined; pole factors count as unbounded
    // smooth factors and are ignored here.
    int polynomial_degree() const;

    bool has_pole_factors() const;

private:
    std::vector<Term> terms_;
};

}  // namespace bchardy
