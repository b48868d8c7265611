#pragma once

#include "spd/types.hpp"

#include <optional>
#include <variant>

namespace spd {

// Tagged descriptors for the per-sample convex functions g(s,.) and p(s,.).
// Every descriptor has a closed-form proximal map.

struct Zero {};                               // h(x) = 0
struct Linear { Vector c; };                  // h(x) = <c, x>
struct Quadratic { Matrix Q; Vector b; };     // h(x) = x'Qx/2 + <b, x>, Q sym. PSD
struct IndicatorSimplex {};                   // h = indicator of the unit simplex
struct IndicatorBox { Vector lo, hi; };       // h = indicator of [lo, hi]
struct IndicatorPoint { Vector c; };          // h = indicator of {c}
struct L1 { double weight = 1.0; };           // h(x) = weight * ||x||_1

using ProxFunction = std::variant<Zero, Linear, Quadratic, IndicatorSimplex,
                                  IndicatorBox, IndicatorPoint, L1>;

/// Dimension pinned by the descriptor's payload, or nullopt when the
/// descriptor applies to any dimension (Zero, IndicatorSimplex, L1).
std::optional<Index> dimension_of(const ProxFunction& h);

/// h evaluated at x. Indicators return 0 inside their set (within a small
/// membership tolerance) and +infinity outside.
double value(const ProxFunction& h, const Vector& x);

/// Moreau proximity operator: the unique minimizer of
/// h(y) + ||y - v||^2 / (2 gamma). For indicators this is the Euclidean
/// projection, independent of gamma.
Vector prox(const ProxFunction& h, double gamma, const Vector& v);

/// Euclidean projection onto the unit probability simplex via the
/// sort-and-threshold rule: y_i = max(v_i - tau, 0) with sum y_i = 1.
Vector project_simplex(const Vector& v);

/// Least-norm element of the subdifferential at x, or nullopt when
/// x lies outside dom(subdiff h).
std::optional<Vector> least_norm_subgradient(const ProxFunction& h, const Vector& x);

/// Projection onto cl(dom(subdiff h)); the identity for full-domain
/// descriptors.
Vector domain_projection(const ProxFunction& h, const Vector& x);

bool is_indicator(const ProxFunction& h);

// membership tolerance used by value() and least_norm_subgradient()
inline constexpr double kDomainTol = 1e-9;

}  // namespace spd
