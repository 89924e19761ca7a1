#include "bchardy/polar_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bchardy {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

PolarGrid::PolarGrid(int n_radii, int n_angles) : n_angles_(n_angles) {
    if (n_radii < 2) throw std::invalid_argument("PolarGrid: need at least 2 radii");
    if (!is_power_of_two(n_angles)) throw std::invalid_argument("PolarGrid: n_angles must be a power of two");
    edges_.resize(n_radii + 1);
    for (int i = 0; i <= n_radii; ++i)
        edges_[i] = std::sin(std::numbers::pi * i / (2.0 * n_radii));
    edges_.front() = 0.0;
    edges_.back() = 1.0;
    radii_.resize(n_radii);
    for (int i = 0; i < n_radii; ++i) radii_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
    build_angles();
}

PolarGrid::PolarGrid(std::vector<double> radii, int n_angles) : n_angles_(n_angles) {
    if (radii.size() < 2) throw std::invalid_argument("PolarGrid: need at least 2 radii");
    if (!is_power_of_two(n_angles)) throw std::invalid_argument("PolarGrid: n_angles must be a power of two");
    if (!std::is_sorted(radii.begin(), radii.end()) ||
        radii.front() <= 0.0 || radii.back() >= 1.0)
        throw std::invalid_argument("PolarGrid: radii must be strictly increasing in (0,1)");
    radii_ = std::move(radii);
    // Recover edges from the midpoint property: e_{i+1} = 2 r_i - e_i.
    edges_.resize(radii_.size() + 1);
    edges_[0] = 0.0;
    for (std::size_t i = 0; i < radii_.size(); ++i) edges_[i + 1] = 2.0 * radii_[i] - edges_[i];
    if (std::abs(edges_.back() - 1.0) > 1e-9)
        throw std::invalid_argument("PolarGrid: radii are not midpoints of a partition of [0,1]");
    edges_.back() = 1.0;
    build_angles();
}

void PolarGrid::build_angles() {
    dtheta_ = 2.0 * std::numbers::pi / n_angles_;
    angles_.resize(n_angles_);
    for (int k = 0; k < n_angles_; ++k) angles_[k] = k * dtheta_;
}

double PolarGrid::cell_scale(double r) const {
    r = std::clamp(r, 0.0, 1.0);
    auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    int i = static_cast<int>(std::distance(edges_.begin(), it)) - 1;
    i = std::clamp(i, 0, n_radii() - 1);
    double scale = std::max(cell_dr(i), radii_[i] * dtheta_);
    // Neighboring rings can be coarser; take the worst nearby.
    if (i > 0) scale = std::max(scale, cell_dr(i - 1));
    if (i + 1 < n_radii()) scale = std::max(scale, cell_dr(i + 1));
    return scale;
}

double PolarGrid::total_weight() const {
    double s = 0.0;
    for (int i = 0; i < n_radii(); ++i) s += weight(i) * n_angles_;
    return s;
}

bool PolarGrid::same_layout(const PolarGrid& other) const {
    return n_angles_ == other.n_angles_ && radii_ == other.radii_;
}

}  // namespace bchardy
