#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace cdeim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

/// Boolean mask over grid points; true marks a candidate sensor location.
using AccessMask = std::vector<std::uint8_t>;

/// Inclusive range [u_min, u_max] a reconstruction must stay within.
struct BoundsSpec {
    double u_min;
    double u_max;

    bool contains(double u) const { return u >= u_min && u <= u_max; }
};

}  // namespace cdeim
