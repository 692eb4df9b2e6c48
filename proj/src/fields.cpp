#include "annulus/fields.hpp"

#include <cmath>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

double fd_step1(double c) { return 1e-6 * std::max(1.0, std::abs(c)); }
double fd_step2(double c) { return 1e-4 * std::max(1.0, std::abs(c)); }

}  // namespace

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

struct ScalarField::Impl {
    Provenance prov = Provenance::Symbolic;

    // symbolic exprs; null for finite-difference provenance
    ExprPtr f, fx, fy, fxx, fxy, fyy;

    std::function<double(const Point&)> fn;  // finite-difference carrier

    double value(const Point& p) const {
        if (prov == Provenance::Symbolic) return evaluate(f, p.x(), p.y());
        return fn(p);
    }

    Vec2 gradient(const Point& p) const {
        if (prov == Provenance::Symbolic)
            return {evaluate(fx, p.x(), p.y()), evaluate(fy, p.x(), p.y())};
        double hx = fd_step1(p.x()), hy = fd_step1(p.y());
        return {(fn({p.x() + hx, p.y()}) - fn({p.x() - hx, p.y()})) / (2 * hx),
                (fn({p.x(), p.y() + hy}) - fn({p.x(), p.y() - hy})) / (2 * hy)};
    }

    Mat2 hessian(const Point& p) const {
        Mat2 h;
        if (prov == Provenance::Symbolic) {
            double a = evaluate(fxx, p.x(), p.y());
            double b = evaluate(fxy, p.x(), p.y());
            double c = evaluate(fyy, p.x(), p.y());
            h << a, b, b, c;
            return h;
        }
        double hx = fd_step2(p.x()), hy = fd_step2(p.y());
        double c0 = fn(p);
        double axx = (fn({p.x() + hx, p.y()}) - 2 * c0 + fn({p.x() - hx, p.y()})) / (hx * hx);
        double ayy = (fn({p.x(), p.y() + hy}) - 2 * c0 + fn({p.x(), p.y() - hy})) / (hy * hy);
        double axy = (fn({p.x() + hx, p.y() + hy}) - fn({p.x() + hx, p.y() - hy}) -
                      fn({p.x() - hx, p.y() + hy}) + fn({p.x() - hx, p.y() - hy})) /
                     (4 * hx * hy);
        h << axx, axy, axy, ayy;
        return h;
    }
};

double ScalarField::value(const Point& p) const { return impl_->value(p); }
Vec2 ScalarField::gradient(const Point& p) const { return impl_->gradient(p); }
Mat2 ScalarField::hessian(const Point& p) const { return impl_->hessian(p); }
Provenance ScalarField::provenance() const { return impl_->prov; }
const ExprPtr& ScalarField::expression() const { return impl_->f; }

ScalarField ScalarField::from_expr(ExprPtr e) {
    auto impl = std::make_shared<Impl>();
    impl->prov = Provenance::Symbolic;
    impl->f = fold(e);
    impl->fx = differentiate(impl->f, Var::X);
    impl->fy = differentiate(impl->f, Var::Y);
    impl->fxx = differentiate(impl->fx, Var::X);
    impl->fxy = differentiate(impl->fx, Var::Y);
    impl->fyy = differentiate(impl->fy, Var::Y);
    ScalarField s;
    s.impl_ = std::move(impl);
    return s;
}

ScalarField ScalarField::from_function(std::function<double(const Point&)> f) {
    auto impl = std::make_shared<Impl>();
    impl->prov = Provenance::FiniteDifference;
    impl->fn = std::move(f);
    ScalarField s;
    s.impl_ = std::move(impl);
    return s;
}

ScalarField scalar_from_expr(const ExprPtr& e) { return ScalarField::from_expr(e); }

ScalarField finite_difference_lift(std::function<double(const Point&)> f) {
    return ScalarField::from_function(std::move(f));
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

struct VectorField::Impl {
    Provenance prov = Provenance::Symbolic;
    std::function<Vec2(const Point&)> val;
    std::function<Mat2(const Point&)> jac;
};

Vec2 VectorField::operator()(const Point& p) const { return impl_->val(p); }
Mat2 VectorField::jacobian(const Point& p) const { return impl_->jac(p); }
Provenance VectorField::provenance() const { return impl_->prov; }

VectorField VectorField::from_exprs(ExprPtr p_comp, ExprPtr q_comp) {
    ExprPtr P = fold(p_comp), Q = fold(q_comp);
    ExprPtr Px = differentiate(P, Var::X), Py = differentiate(P, Var::Y);
    ExprPtr Qx = differentiate(Q, Var::X), Qy = differentiate(Q, Var::Y);
    auto impl = std::make_shared<Impl>();
    impl->prov = Provenance::Symbolic;
    impl->val = [P, Q](const Point& p) -> Vec2 {
        return {evaluate(P, p.x(), p.y()), evaluate(Q, p.x(), p.y())};
    };
    impl->jac = [Px, Py, Qx, Qy](const Point& p) -> Mat2 {
        Mat2 j;
        j << evaluate(Px, p.x(), p.y()), evaluate(Py, p.x(), p.y()),
             evaluate(Qx, p.x(), p.y()), evaluate(Qy, p.x(), p.y());
        return j;
    };
    VectorField v;
    v.impl_ = std::move(impl);
    return v;
}

VectorField VectorField::from_functions(std::function<Vec2(const Point&)> v,
                                        std::function<Mat2(const Point&)> jac,
                                        Provenance prov) {
    auto impl = std::make_shared<Impl>();
    impl->prov = prov;
    impl->val = std::move(v);
    impl->jac = std::move(jac);
    VectorField f;
    f.impl_ = std::move(impl);
    return f;
}

VectorField VectorField::from_function(std::function<Vec2(const Point&)> v) {
    auto jac = [v](const Point& p) -> Mat2 {
        double hx = fd_step1(p.x()), hy = fd_step1(p.y());
        Vec2 dx = (v({p.x() + hx, p.y()}) - v({p.x() - hx, p.y()})) / (2 * hx);
        Vec2 dy = (v({p.x(), p.y() + hy}) - v({p.x(), p.y() - hy})) / (2 * hy);
        Mat2 j;
        j << dx.x(), dy.x(), dx.y(), dy.y();
        return j;
    };
    return from_functions(std::move(v), std::move(jac), Provenance::FiniteDifference);
}

VectorField hamiltonian_field(const ScalarField& H) {
    auto val = [H](const Point& p) -> Vec2 {
        Vec2 g = H.gradient(p);
        return {g.y(), -g.x()};
    };
    auto jac = [H](const Point& p) -> Mat2 {
        Mat2 h = H.hessian(p);
        Mat2 j;
        // P = H_y, Q = -H_x
        j << h(0, 1), h(1, 1), -h(0, 0), -h(0, 1);
        return j;
    };
    return VectorField::from_functions(val, jac, H.provenance());
}

VectorField reparametrized_field(const ScalarField& H, const ScalarField& kappa) {
    auto check = [](double k, const Point& p) {
        if (!(k > 0.0))
            throw DomainError("reparametrized field needs kappa > 0, got " + std::to_string(k) +
                              " at (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
    };
    auto val = [H, kappa, check](const Point& p) -> Vec2 {
        double k = kappa.value(p);
        check(k, p);
        Vec2 g = H.gradient(p);
        return {g.y() * k, -g.x() * k};
    };
    auto jac = [H, kappa, check](const Point& p) -> Mat2 {
        double k = kappa.value(p);
        check(k, p);
        Vec2 g = H.gradient(p);
        Vec2 gk = kappa.gradient(p);
        Mat2 h = H.hessian(p);
        Mat2 j;
        j << h(0, 1) * k + g.y() * gk.x(), h(1, 1) * k + g.y() * gk.y(),
            -h(0, 0) * k - g.x() * gk.x(), -h(0, 1) * k - g.x() * gk.y();
        return j;
    };
    Provenance prov = (H.provenance() == Provenance::Symbolic &&
                       kappa.provenance() == Provenance::Symbolic)
                          ? Provenance::Symbolic
                          : Provenance::FiniteDifference;
    return VectorField::from_functions(val, jac, prov);
}

// ---------------------------------------------------------------------------
// Built-in registry
// ---------------------------------------------------------------------------

namespace {

SystemDef make_hamiltonian_system(std::string name, std::string descr, const char* h_text,
                                  Point center, std::pair<double, double> range) {
    SystemDef sys;
    sys.name = std::move(name);
    sys.description = std::move(descr);
    sys.H = scalar_from_expr(parse(h_text));
    sys.V = hamiltonian_field(*sys.H);
    sys.center_hint = center;
    sys.annulus_hint = range;
    return sys;
}

// V = (y*f, -x*f), H = (x^2+y^2)/2, kappa = f; covers both the rotational
// family (f = rho) and reparametrized harmonic systems (f = kappa).
SystemDef make_scaled_rotation(std::string name, std::string descr, const std::string& f_text,
                               std::pair<double, double> range) {
    SystemDef sys;
    sys.name = std::move(name);
    sys.description = std::move(descr);
    ExprPtr f = parse(f_text);
    sys.H = scalar_from_expr(parse("(x^2+y^2)/2"));
    sys.kappa = scalar_from_expr(f);
    sys.V = reparametrized_field(*sys.H, *sys.kappa);
    sys.center_hint = Point(0.0, 0.0);
    sys.annulus_hint = range;
    return sys;
}

}  // namespace

SystemDef builtin_system(const std::string& name) {
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);

    if (head == "harmonic" && colon == std::string::npos) {
        return make_hamiltonian_system("harmonic", "linear center, H = (x^2+y^2)/2 (isochronous)",
                                       "(x^2+y^2)/2", {0.0, 0.0}, {0.1, 2.0});
    }
    if (head == "eikonal" && colon == std::string::npos) {
        return make_hamiltonian_system(
            "eikonal", "unit-gradient first integral H = sqrt(x^2+y^2), T(H) = 2*pi*H",
            "sqrt(x^2+y^2)", {0.0, 0.0}, {0.5, 2.0});
    }
    if (head == "quartic" && colon == std::string::npos) {
        return make_hamiltonian_system("quartic",
                                       "pure quartic well, H = y^2/2+x^4/4, T ~ H^(-1/4)",
                                       "y^2/2+x^4/4", {0.0, 0.0}, {0.25, 2.0});
    }
    if (head == "twowell" && colon == std::string::npos) {
        return make_hamiltonian_system(
            "twowell",
            "double well, H = y^2+(x^2-1)^2; outer annulus encircles both centers",
            "y^2+(x^2-1)^2", {1.0, 0.0}, {2.0, 5.0});
    }
    if (head == "rotational") {
        if (arg.empty())
            throw ConfigError("rotational system needs an angular-speed expression: rotational:<rho(x,y)>");
        return make_scaled_rotation("rotational:" + arg,
                                    "circular orbits with angular speed rho, x' = y*rho, y' = -x*rho",
                                    arg, {0.1, 2.0});
    }
    if (head == "harmonic-rif") {
        if (arg.empty())
            throw ConfigError("harmonic-rif system needs a factor expression: harmonic-rif:<kappa(x,y)>");
        return make_scaled_rotation("harmonic-rif:" + arg,
                                    "harmonic center reparametrized by kappa, x' = y*kappa, y' = -x*kappa",
                                    arg, {0.25, 1.0});
    }
    throw ConfigError("unknown system '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> builtin_catalog() {
    return {
        {"eikonal", "unit-gradient first integral H = sqrt(x^2+y^2); T(H) = 2*pi*H, increasing"},
        {"harmonic", "linear center, H = (x^2+y^2)/2; isochronous, T = 2*pi"},
        {"harmonic-rif:<kappa-expr>", "harmonic center reparametrized by a positive factor kappa(x,y)"},
        {"quartic", "pure quartic well, H = y^2/2+x^4/4; T proportional to H^(-1/4)"},
        {"rotational:<rho-expr>", "x' = y*rho, y' = -x*rho with rho evaluated at x^2+y^2; T(H) = 2*pi/rho(2H)"},
        {"twowell", "double well, H = y^2+(x^2-1)^2; outer period annulus encircles both centers"},
    };
}

}  // namespace annulus
