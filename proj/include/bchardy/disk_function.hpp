#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bchardy/bicomplex.hpp"
#include "bchardy/closed_form.hpp"
#include "bchardy/polar_grid.hpp"

namespace bchardy {

enum class Codomain { ComplexValued, BicomplexValued };

/// Hints attached by the test-function catalog; purely informational.
struct FunctionInfo {
    std::string name;
    bool holomorphic = false;      // complex-valued, d/dz* = 0
    bool bc_holomorphic = false;   // bicomplex-valued, dbar = 0
    bool bounded_on_disk = false;
};

/// An evaluable function on the unit disk. Three backings:
///  - closed form (Term algebra; exact Wirtinger derivatives),
///  - callable (arbitrary pointwise rule; derivatives go numerical),
///  - sampled (values on a PolarGrid; bilinear interpolation off-grid).
/// Values are immutable after construction; copies are cheap (shared state).
class DiskFunction {
public:
    using Evaluator = std::function<Bicomplex(Complex)>;

    DiskFunction() = default;

    static DiskFunction closed_form(ClosedForm cf, Codomain cod);
    static DiskFunction callable(Evaluator fn, Codomain cod, std::string label = "callable");
    static DiskFunction sampled(std::shared_ptr<const PolarGrid> grid, std::vector<Bicomplex> values,
                                Codomain cod);

    static DiskFunction zero(Codomain cod = Codomain::ComplexValued);
    static DiskFunction constant(Bicomplex c);
    static DiskFunction constant(Complex c);

    bool is_closed_form() const;
    bool is_sampled() const;
    bool is_callable() const;

    Codomain codomain() const { return codomain_; }
    bool is_complex_valued() const { return codomain_ == Codomain::ComplexValued; }

    /// Value at z, |z| <= 1 (the closed disk; sampled data extrapolates over
    /// the outer half-cell). Throws std::domain_error outside.
    Bicomplex evaluate(Complex z) const;

    /// Scalar value; requires a complex-valued codomain.
    Complex evaluate_complex(Complex z) const;

    const ClosedForm& closed() const;
    const PolarGrid& grid() const;
    std::shared_ptr<const PolarGrid> grid_ptr() const;
    const std::vector<Bicomplex>& values() const;

    /// Idempotent components as complex-valued functions (f+ resp. f-).
    DiskFunction plus_component() const;
    DiskFunction minus_component() const;

    /// Pointwise star map z -> star(f(z)).
    DiskFunction starred() const;

    DiskFunction scaled(Bicomplex c) const;

    /// Sum; closed+closed stays closed form, anything else is wrapped as a
    /// callable (or merged pointwise when both are sampled on one grid).
    friend DiskFunction operator+(const DiskFunction& a, const DiskFunction& b);
    friend DiskFunction operator-(const DiskFunction& a, const DiskFunction& b);

    /// Values at every node of `grid` as a sampled function.
    DiskFunction materialize(std::shared_ptr<const PolarGrid> grid) const;

    /// Columnar CSV round trip for sampled functions
    /// (header: r,theta,re_sc,im_sc,re_vec,im_vec).
    void save_csv(const std::string& path) const;
    static DiskFunction load_csv(const std::string& path);

    std::optional<FunctionInfo> info;

private:
    struct Sampled {
        std::shared_ptr<const PolarGrid> grid;
        std::shared_ptr<const std::vector<Bicomplex>> values;
    };
    struct Callable {
        Evaluator fn;
        std::string label;
    };

    std::variant<ClosedForm, Sampled, Callable> body_;
    Codomain codomain_ = Codomain::ComplexValued;

    Bicomplex eval_sampled(const Sampled& s, Complex z) const;
};

/// Catalog of named generators with known structure. Throws on unknown name.
/// Names: const, monomial, conj-monomial, mixed-monomial, pole, outer-pole,
/// taylor-decay, abs-pole, bc-holo, bc-zhat, bc-zstarhat, bc-mixed, bc-const.
DiskFunction make_test_function(const std::string& name, const std::vector<Complex>& params);

}  // namespace bchardy
