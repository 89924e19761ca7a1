#pragma once

#include <complex>
#include <vector>

namespace bchardy {

/// Tensor grid (r_i, theta_k) on the unit disk with cell quadrature weights.
///
/// Radii are the centers of a partition 0 = e_0 < e_1 < ... < e_Nr = 1 of
/// [0,1]; the default edges are sin(pi i / (2 Nr)), which clusters cells
/// toward r = 1 where the boundary limits are taken. Because each radius is
/// the midpoint of its cell, sum_i r_i (e_{i+1}-e_i) = 1/2 exactly and the
/// weights add up to the disk area pi (up to rounding).
class PolarGrid {
public:
    PolarGrid(int n_radii, int n_angles);

    // Rebuild from explicit cell-center radii (e.g. read back from CSV).
    PolarGrid(std::vector<double> radii, int n_angles);

    static PolarGrid make_default() { return PolarGrid(64, 512); }

    int n_radii() const { return static_cast<int>(radii_.size()); }
    int n_angles() const { return n_angles_; }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& angles() const { return angles_; }
    double angle_step() const { return dtheta_; }

    double radius(int i) const { return radii_[i]; }
    double angle(int k) const { return angles_[k]; }
    double cell_dr(int i) const { return edges_[i + 1] - edges_[i]; }

    // Area weight of cell (i, k); independent of k.
    double weight(int i) const { return radii_[i] * cell_dr(i) * dtheta_; }

    std::complex<double> node(int i, int k) const {
        return std::polar(radii_[i], angles_[k]);
    }

    // Linear index (radius-major) used by sampled functions.
    std::size_t index(int i, int k) const {
        return static_cast<std::size_t>(i) * n_angles_ + k;
    }
    std::size_t size() const { return radii_.size() * static_cast<std::size_t>(n_angles_); }

    // Largest cell extent (radial or azimuthal) among cells near radius r.
    double cell_scale(double r) const;

    double total_weight() const;

    bool same_layout(const PolarGrid& other) const;

private:
    void build_angles();

    std::vector<double> edges_;   // size n_radii + 1
    std::vector<double> radii_;   // cell centers
    std::vector<double> angles_;  // equispaced, [0, 2pi)
    int n_angles_ = 0;
    double dtheta_ = 0.0;
};

}  // namespace bchardy
