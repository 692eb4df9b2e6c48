#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "annulus/expr.hpp"

namespace annulus {

using Point = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

enum class Provenance { Symbolic, FiniteDifference };

/// Scalar function of the plane with first and second derivatives.
/// Copies share the underlying evaluator; evaluation is pure.
class ScalarField {
public:
    ScalarField() = default;

    double value(const Point& p) const;
    Vec2 gradient(const Point& p) const;
    /// Symmetric Hessian [[f_xx, f_xy], [f_xy, f_yy]].
    Mat2 hessian(const Point& p) const;
    Provenance provenance() const;

    /// Symbolic source expression when provenance is Symbolic.
    const ExprPtr& expression() const;

    static ScalarField from_expr(ExprPtr e);
    static ScalarField from_function(std::function<double(const Point&)> f);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Planar vector field (P, Q) with Jacobian [[P_x, P_y], [Q_x, Q_y]].
class VectorField {
public:
    VectorField() = default;

    Vec2 operator()(const Point& p) const;
    Mat2 jacobian(const Point& p) const;
    Provenance provenance() const;

    static VectorField from_exprs(ExprPtr p_comp, ExprPtr q_comp);
    static VectorField from_functions(std::function<Vec2(const Point&)> v,
                                      std::function<Mat2(const Point&)> jac,
                                      Provenance prov = Provenance::Symbolic);
    static VectorField from_function(std::function<Vec2(const Point&)> v);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// A named planar system under study.
struct SystemDef {
    std::string name;
    std::string description;
    VectorField V;
    std::optional<ScalarField> H;       // first integral
    std::optional<ScalarField> kappa;   // reciprocal integrating factor, > 0
    std::optional<Point> center_hint;
    std::optional<std::pair<double, double>> annulus_hint;  // (H_min, H_max)
};

ScalarField scalar_from_expr(const ExprPtr& e);

/// P = H_y, Q = -H_x. The Jacobian comes from H's Hessian, so div V == 0
/// identically.
VectorField hamiltonian_field(const ScalarField& H);

/// P = H_y * kappa, Q = -H_x * kappa; kappa is then a RIF of the result.
/// Evaluation throws DomainError where kappa <= 0.
VectorField reparametrized_field(const ScalarField& H, const ScalarField& kappa);

/// Derivatives by central differences: gradient with step 1e-6*max(1,|c|),
/// Hessian with step 1e-4*max(1,|c|) per coordinate c.
ScalarField finite_difference_lift(std::function<double(const Point&)> f);

/// Built-in registry. Names: harmonic, eikonal, quartic, twowell,
/// rotational:<rho-expr>, harmonic-rif:<kappa-expr>.
SystemDef builtin_system(const std::string& name);

/// Registry listing (sorted), name -> one-line description.
std::vector<std::pair<std::string, std::string>> builtin_catalog();

}  // namespace annulus
