#include "bchardy/closed_form.hpp"

#include <algorithm>
#include <cmath>

namespace bchardy {

namespace {

Complex ipow(Complex z, int n) {
    Complex r{1.0, 0.0};
    for (int k = 0; k < n; ++k) r *= z;
    return r;
}

Complex eval_term_scalar(const Term& t, Complex z) {
    const Complex zb = std::conj(z);
    Complex val = ipow(z, t.zpow) * ipow(zb, t.zbarpow);
    if (t.upow > 0) val /= ipow(1.0 - t.u * z, t.upow);
    if (t.vpow > 0) val /= ipow(1.0 - t.v * zb, t.vpow);
    return val;
}

}  // namespace

ClosedForm ClosedForm::constant(Bicomplex c) {
    return ClosedForm({Term{c, 0, 0, {}, 0, {}, 0}});
}

ClosedForm ClosedForm::monomial(Bicomplex c, int zpow, int zbarpow) {
    return ClosedForm({Term{c, zpow, zbarpow, {}, 0, {}, 0}});
}

ClosedForm ClosedForm::pole(Bicomplex c, Complex u, int p) {
    return ClosedForm({Term{c, 0, 0, u, p, {}, 0}});
}

Bicomplex ClosedForm::evaluate(Complex z) const {
    Bicomplex acc;
    for (const Term& t : terms_) acc += t.coeff * eval_term_scalar(t, z);
    return acc;
}

ClosedForm ClosedForm::d_z() const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (t.zpow > 0) {
            Term s = t;
            s.coeff = static_cast<double>(t.zpow) * t.coeff;
            s.zpow -= 1;
            out.push_back(s);
        }
        if (t.upow > 0) {
            // d/dz (1 - u z)^-p = p u (1 - u z)^-(p+1)
            Term s = t;
            s.coeff = (static_cast<double>(t.upow) * t.u) * t.coeff;
            s.upow += 1;
            out.push_back(s);
        }
    }
    return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::d_zbar() const {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        if (t.zbarpow > 0) {
            Term s = t;
            s.coeff = static_cast<double>(t.zbarpow) * t.coeff;
            s.zbarpow -= 1;
            out.push_back(s);
        }
        if (t.vpow > 0) {
            Term s = t;
            s.coeff = (static_cast<double>(t.vpow) * t.v) * t.coeff;
            s.vpow += 1;
            out.push_back(s);
        }
    }
    return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::star() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        Term s;
        s.coeff = bchardy::star(t.coeff);
        s.zpow = t.zbarpow;
        s.zbarpow = t.zpow;
        s.u = std::conj(t.v);
        s.upow = t.vpow;
        s.v = std::conj(t.u);
        s.vpow = t.upow;
        out.push_back(s);
    }
    return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::plus_component() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        Term s = t;
        s.coeff = Bicomplex(to_idempotent(t.coeff).plus);
        out.push_back(s);
    }
    return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::minus_component() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        Term s = t;
        s.coeff = Bicomplex(to_idempotent(t.coeff).minus);
        out.push_back(s);
    }
    return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::scaled(const Bicomplex& c) const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.coeff = c * t.coeff;
    return ClosedForm(std::move(out));
}

ClosedForm operator+(const ClosedForm& a, const ClosedForm& b) {
    std::vector<Term> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return ClosedForm(std::move(out));
}

ClosedForm operator-(const ClosedForm& a, const ClosedForm& b) {
    return a + b.scaled(Bicomplex(-1.0));
}

int ClosedForm::polynomial_degree() const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, t.zpow + t.zbarpow);
    return d;
}

bool ClosedForm::has_pole_factors() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.upow > 0 || t.vpow > 0; });
}

}  // namespace bchardy
