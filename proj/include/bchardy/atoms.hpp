#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bchardy/boundary.hpp"

namespace bchardy {

/// Smooth profile data on a sub-window [x0, x1] of the arc's local
/// coordinate x in [0, 1]:
///   sum_k poly[k] x^k + sum_j cos_terms[j] cos((j+1) pi x)
///                     + sum_j sin_terms[j] sin((j+1) pi x).
/// Jumps in an atom must land on piece boundaries.
struct ProfilePiece {
    double x0 = 0.0;
    double x1 = 1.0;
    std::vector<Complex> poly;
    std::vector<Complex> cos_terms;
    std::vector<Complex> sin_terms;
    Complex eval(double x) const;
};

/// A p-atom candidate: boundary function supported in the arc J =
/// [arc_start, arc_start + arc_len), bounded by |J|^{-1/p}, with vanishing
/// theta-moments up to degree floor(1/p - 1).
struct PAtom {
    double p = 1.0;
    double arc_start = 0.0;
    double arc_len = 2.0 * 3.141592653589793;
    std::vector<ProfilePiece> pieces;

    Complex eval_local(double x) const;   // x in [0,1), support-aware
    Complex eval(double theta) const;     // absolute angle, 0 off the arc
    std::vector<ArcPiece> arc_pieces() const;
    double arc_bound() const;             // |J|^{-1/p}
    int max_moment() const;               // floor(1/p - 1)
};

struct AtomReport {
    bool valid = false;
    double sup_abs = 0.0;
    double size_bound = 0.0;
    std::vector<double> moment_abs;  // |int a(theta) theta^k dtheta|
    double moment_tol = 0.0;
    std::vector<std::string> violations;
};

/// Checks the size bound and the moment conditions (the moment variable is
/// the standard angle theta in [0, 2pi), also under arcs that wrap).
/// tol < 0 selects the scale-aware default 1e-10 |J|^{1 - 1/p}.
AtomReport validate_atom(const PAtom& a, double tol = -1.0);

struct AtomicDecomposition {
    double p = 1.0;
    std::vector<Complex> coefficients;
    std::vector<PAtom> atoms;
};

/// (sum |c_n|^p)^{1/p}: an upper bound for the infimum-defined atomic norm.
/// The infimum over equivalent decompositions is not searched.
double atomic_norm_upper(const AtomicDecomposition& d);

/// Composite boundary object p+ (sum c+ a+)* + p- (sum c- a-) [+ tail].
struct BCAtomicBoundary {
    AtomicDecomposition plus;   // enters the synthesis conjugated
    AtomicDecomposition minus;
    std::optional<std::vector<Bicomplex>> tail;  // density samples, uniform grid
    double tail_source_q = 0.0;                  // declared L^q exponent behind the tail
};

/// ||w+_b||_at + ||w-_b||_at (upper bounds). Throws if a tail is present;
/// quasi_norm_b covers that case.
double bc_atomic_norm(const BCAtomicBoundary& b);

/// Atomic part + L^gamma boundary norm of the tail. gamma must satisfy
/// 1 < gamma < q/(2-q) for the declared source exponent q (no upper
/// constraint once q >= 2).
double quasi_norm_b(const BCAtomicBoundary& b, double gamma);

/// Realizes the boundary object as a density on n_samples uniform angles.
BoundaryDistribution synthesize_boundary(const BCAtomicBoundary& b, int n_samples = 4096);

/// Exact arc-term view of the synthesis (no sampling); pairing against it
/// reproduces the termwise atom integrals.
BoundaryDistribution synthesize_boundary_exact(const BCAtomicBoundary& b);

/// Rejection-sampled random atom: random non-wrapping arc, smooth bounded
/// profile, theta-moment projection onto polynomials of degree <= 1/p - 1
/// removed, then rescaled to the size bound.
PAtom random_atom(std::mt19937_64& rng, double p);

// Fixture IO: JSON with fields p, arcs, profiles, coefficients.
AtomicDecomposition load_decomposition_json(const std::string& path);
void save_decomposition_json(const AtomicDecomposition& d, const std::string& path);

}  // namespace bchardy
