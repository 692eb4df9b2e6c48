#pragma once

#include <functional>
#include <string>
#include <utility>

#include "annulus/fields.hpp"

namespace annulus {

/// Planar cross product a1*b2 - a2*b1; zero iff the vectors are parallel.
inline double wedge(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Rotate a field by +90 degrees: (P, Q) -> (-Q, P), with matching Jacobian.
VectorField perp(const VectorField& v);

double divergence(const VectorField& v, const Point& p);

/// Commutator [V, W] = d_V W - d_W V = J_W V - J_V W.
Vec2 lie_bracket(const VectorField& V, const VectorField& W, const Point& p);

/// ([V,W] . V) / |V|^2; the normalizing function when W normalizes V.
/// Throws EquilibriumError when |V(p)|^2 falls below tolerance.
double mu_from_bracket(const VectorField& V, const VectorField& W, const Point& p);

/// mu of the gradient normalizer of a Hamiltonian system:
///   ((H_yy - H_xx) H_x^2 - 4 H_xy H_x H_y + (H_xx - H_yy) H_y^2) / |grad H|^4,
/// which also equals div(grad H / |grad H|^2).
double mu_hamiltonian(const ScalarField& H, const Point& p);

/// Numerator of mu_hamiltonian, so mu_hamiltonian = lambda_H / |grad H|^4.
double lambda_h(const ScalarField& H, const Point& p);

/// mu of the kappa normalizer of V = (P, Q):
///   kappa * (-P^2 (Q_x+P_y) + 2 P Q (P_x-Q_y) + Q^2 (Q_x+P_y)) / (P^2+Q^2)^2.
double mu_kappa(const VectorField& V, const ScalarField& kappa, const Point& p);

/// Separable-Hamiltonian closed form (H = F(y) + G(x)):
///   (F'' - G'') (F'^2 - G'^2) / (F'^2 + G'^2)^2.
/// F is read as a function of y, G as a function of x. Throws
/// SingularGradientError at joint critical points (F' = G' = 0).
double mu_separable(const ScalarField& F, const ScalarField& G, const Point& p);

/// mu of the component-quotient normalizer (G/G', F/F'):
///   1 - G G''/G'^2 - F F''/F'^2, defined where F'(y) G'(x) != 0.
double mu_fgg(const ScalarField& F, const ScalarField& G, const Point& p);

/// eta = ([V,W] ^ W) / (V ^ W). Throws TangencyError when |V ^ W| is tiny.
double eta(const VectorField& V, const VectorField& W, const Point& p);

/// nu = ([V,W] ^ V) / (W ^ V).
double nu(const VectorField& V, const VectorField& W, const Point& p);

/// mu of W as a normalizer of the reparametrized field kappa*V:
/// mu_bar = mu - d_W ln kappa. Throws DomainError when kappa(p) <= 0.
double reparametrize_mu(double mu_val, const VectorField& W, const ScalarField& kappa,
                        const Point& p);

/// Coefficients (a, b) with [V,W] = a V + b W:
///   a = -d_W ln(V^W) + div W,   b = d_V ln(V^W) - div V.
std::pair<double, double> wazewski_decompose(const VectorField& V, const VectorField& W,
                                             const Point& p);

enum class NormalizerTag { Gradient, Zeta, Kappa, Separable, Combined, Reparametrized };

const char* normalizer_tag_name(NormalizerTag tag);

/// A transversal field W with [V,W] = mu V on its guard region, packaged
/// with its normalizing function, the domain guard, and the function xi
/// with d_W H = xi(H) (used to convert the mu integral into T'(H)).
struct NormalizerField {
    VectorField W;
    std::function<double(const Point&)> mu;
    std::function<bool(const Point&)> guard;
    std::function<double(double)> xi;
    NormalizerTag tag = NormalizerTag::Gradient;
    std::string name;

    /// mu with the guard enforced; throws GuardViolation outside it.
    double mu_checked(const Point& p) const;
};

/// W = grad H / |grad H|^2; d_W H = 1, mu = mu_hamiltonian.
NormalizerField normalizer_gradient(const ScalarField& H);

/// W = zeta(H) grad H / |grad H|^2; d_W H = zeta(H). The zeta expression is
/// univariate in `x` (standing for the value of H).
NormalizerField normalizer_zeta(const ScalarField& H, const ExprPtr& zeta_expr);

/// W = kappa (-Q, P) / (P^2+Q^2); mu = mu_kappa; d_W H = 1 when V is the
/// kappa-reparametrized Hamiltonian field of H.
NormalizerField normalizer_kappa(const VectorField& V, const ScalarField& kappa);

/// W = (G/G', F/F'); d_W H = H for H = F(y) + G(x); mu = mu_fgg.
NormalizerField normalizer_separable(const ScalarField& F, const ScalarField& G);

/// N* = psi(H) N + g V with mu* = psi(H) mu + d_V g. psi is univariate in
/// `x` (the value of H), g is an expression in (x, y).
NormalizerField combine_normalizer(const NormalizerField& N, const ExprPtr& psi_expr,
                                   const ExprPtr& g_expr, const VectorField& V,
                                   const ScalarField& H);

/// Same W viewed as a normalizer of kappa*V (mu adjusted per mu_bar).
NormalizerField reparametrized_normalizer(const NormalizerField& N, const ScalarField& kappa);

}  // namespace annulus
