#include "spd/prox.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>

namespace spd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const ProxFunction& h, const Vector& v, const char* op) {
  if (auto d = dimension_of(h); d && *d != v.size())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

void check_box(const IndicatorBox& h) {
  require(h.lo.size() == h.hi.size() && (h.lo.array() <= h.hi.array()).all(),
          "IndicatorBox: requires lo <= hi");
}

bool on_simplex(const Vector& x) {
  return x.minCoeff() >= -kDomainTol && std::abs(x.sum() - 1.0) <= kDomainTol;
}

}  // namespace

std::optional<Index> dimension_of(const ProxFunction& h) {
  return std::visit(
      [](const auto& f) -> std::optional<Index> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Linear>) return f.c.size();
        else if constexpr (std::is_same_v<T, Quadratic>) return f.b.size();
        else if constexpr (std::is_same_v<T, IndicatorBox>) return f.lo.size();
        else if constexpr (std::is_same_v<T, IndicatorPoint>) return f.c.size();
        else return std::nullopt;
      },
      h);
}

bool is_indicator(const ProxFunction& h) {
  return std::holds_alternative<IndicatorSimplex>(h) ||
         std::holds_alternative<IndicatorBox>(h) ||
         std::holds_alternative<IndicatorPoint>(h);
}

double value(const ProxFunction& h, const Vector& x) {
  check_dim(h, x, "value");
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return f.c.dot(x);
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return 0.5 * x.dot(f.Q * x) + f.b.dot(x);
        } else if constexpr (std::is_same_v<T, IndicatorSimplex>) {
          return on_simplex(x) ? 0.0 : kInf;
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          check_box(f);
          const bool in = (x.array() >= f.lo.array() - kDomainTol).all() &&
                          (x.array() <= f.hi.array() + kDomainTol).all();
          return in ? 0.0 : kInf;
        } else if constexpr (std::is_same_v<T, IndicatorPoint>) {
          return ((x - f.c).template lpNorm<Eigen::Infinity>() <= kDomainTol) ? 0.0 : kInf;
        } else {  // L1
          return f.weight * x.template lpNorm<1>();
        }
      },
      h);
}

Vector project_simplex(const Vector& v) {
  require(v.size() >= 1, "project_simplex: empty vector");
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    css += u[j];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  return v.unaryExpr([tau](double vi) { return std::max(vi - tau, 0.0); });
}

Vector prox(const ProxFunction& h, double gamma, const Vector& v) {
  require(gamma > 0.0, "prox: gamma must be positive");
  check_dim(h, v, "prox");
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return v;
        } else if constexpr (std::is_same_v<T, Linear>) {
          return v - gamma * f.c;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          require(f.Q.rows() == f.Q.cols() && f.Q.rows() == v.size(),
                  "prox: quadratic dimension mismatch");
          Matrix A = gamma * f.Q;
          A.diagonal().array() += 1.0;
          Eigen::LLT<Matrix> llt(A);
          if (llt.info() != Eigen::Success)
            throw std::invalid_argument("prox: I + gamma*Q not positive definite (Q not PSD)");
          return llt.solve(v - gamma * f.b);
        } else if constexpr (std::is_same_v<T, IndicatorSimplex>) {
          return project_simplex(v);
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          check_box(f);
          return v.cwiseMax(f.lo).cwiseMin(f.hi);
        } else if constexpr (std::is_same_v<T, IndicatorPoint>) {
          return f.c;
        } else {  // L1: componentwise soft threshold at gamma * weight
          const double t = gamma * f.weight;
          return v.unaryExpr([t](double vi) {
            const double m = std::abs(vi) - t;
            return m > 0.0 ? (vi > 0.0 ? m : -m) : 0.0;
          });
        }
      },
      h);
}

std::optional<Vector> least_norm_subgradient(const ProxFunction& h, const Vector& x) {
  check_dim(h, x, "least_norm_subgradient");
  return std::visit(
      [&](const auto& f) -> std::optional<Vector> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return Vector(Vector::Zero(x.size()));
        } else if constexpr (std::is_same_v<T, Linear>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return Vector(f.Q * x + f.b);
        } else if constexpr (std::is_same_v<T, IndicatorSimplex>) {
          // 0 lies in the normal cone at every point of the simplex and
          // is its least-norm element, boundary included
          if (!on_simplex(x)) return std::nullopt;
          return Vector(Vector::Zero(x.size()));
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          check_box(f);
          const bool in = (x.array() >= f.lo.array() - kDomainTol).all() &&
                          (x.array() <= f.hi.array() + kDomainTol).all();
          if (!in) return std::nullopt;
          return Vector(Vector::Zero(x.size()));
        } else if constexpr (std::is_same_v<T, IndicatorPoint>) {
          if ((x - f.c).template lpNorm<Eigen::Infinity>() > kDomainTol) return std::nullopt;
          return Vector(Vector::Zero(x.size()));
        } else {  // L1
          return Vector(x.unaryExpr([&f](double xi) {
            return xi > 0.0 ? f.weight : (xi < 0.0 ? -f.weight : 0.0);
          }));
        }
      },
      h);
}

Vector domain_projection(const ProxFunction& h, const Vector& x) {
  check_dim(h, x, "domain_projection");
  return std::visit(
      [&](const auto& f) -> Vector {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, IndicatorSimplex>) {
          return project_simplex(x);
        } else if constexpr (std::is_same_v<T, IndicatorBox>) {
          check_box(f);
          return x.cwiseMax(f.lo).cwiseMin(f.hi);
        } else if constexpr (std::is_same_v<T, IndicatorPoint>) {
          return f.c;
        } else {
          return x;  // full domain
        }
      },
      h);
}

}  // namespace spd
