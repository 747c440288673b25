#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "contagion/model.hpp"

namespace contagion::quad {

// Gauss-Legendre rule on [-1, 1]. Tables are computed once per node count
// and cached; the returned spans stay valid for the process lifetime.
struct Rule {
    std::span<const double> nodes;
    std::span<const double> weights;
};
Rule gauss_legendre(int n);

// Nested Clenshaw-Curtis rule on [-1, 1] at a given level: 1 point at level
// 1, 2^{level-1} + 1 points from level 2 on. Cached like gauss_legendre.
Rule clenshaw_curtis(int level);

// Tensor vs Smolyak selection for integrate_3d / integrate_2d.
struct GridSpec {
    GridKind kind = GridKind::tensor;
    std::array<int, 3> nodes = {32, 32, 32};  // per-axis counts, tensor backend
    int level = 10;                           // Smolyak level, sparse backend
};

double integrate_1d(const std::function<double(double)>& f, double a, double b, int nodes);

double integrate_2d(const std::function<double(double, double)>& f,
                    std::array<double, 2> lo, std::array<double, 2> hi, const GridSpec& spec);

double integrate_3d(const std::function<double(double, double, double)>& f,
                    std::array<double, 3> lo, std::array<double, 3> hi, const GridSpec& spec);

// int_0^T e^{-rf s} P(s) ds for a survival-type integrand with P(0+) = 1.
// Gauss-Legendre on (0, T]; the open left endpoint is never sampled at 0.
double integrate_time_leg(const std::function<double(double)>& P, double rf, double T, int nodes);

}  // namespace contagion::quad
