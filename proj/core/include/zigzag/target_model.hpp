#pragma once

#include <functional>
#include <optional>
#include <string>

namespace zigzag {

// Velocity of the zig-zag particle; only +1 and -1 exist.
class Direction {
public:
    static Direction up() { return Direction(+1); }
    static Direction down() { return Direction(-1); }
    static Direction from_int(int v);

    double sign() const { return value_; }
    int as_int() const { return static_cast<int>(value_); }
    Direction flipped() const { return Direction(-value_); }
    void flip() { value_ = -value_; }

    bool operator==(const Direction& other) const { return value_ == other.value_; }
    bool operator!=(const Direction& other) const { return value_ != other.value_; }

private:
    explicit Direction(double v) : value_(v) {}
    double value_;
};

// A one-dimensional target distribution pi(x) = exp(-U(x)) / normalization,
// described through its potential and derivative. Immutable once built.
struct TargetModel {
    enum class Family { gaussian, student_t, custom };

    std::function<double(double)> potential; // U
    std::function<double(double)> grad;      // U'
    std::optional<double> hessian_bound;     // L with |U''| <= L everywhere
    std::optional<double> grad_bound;        // K with |U'| <= K everywhere
    double normalization = 0.0;              // integral of exp(-U)
    double scale = 1.0;                      // characteristic width, used by tail maps
    Family family = Family::custom;
    double family_param = 0.0;               // gaussian: variance, student_t: dof
    std::string name;

    double density(double x) const { return std::exp(-potential(x)) / normalization; }
};

// Excess switching rate gamma(x) >= 0. The built-in families are constant
// and quadratic a(1+x^2); anything else can be supplied as a callable with
// family = custom (the extension point; thinning bounds reject it).
struct ExcessRate {
    enum class Family { none, constant, quadratic, custom };

    Family family = Family::none;
    std::function<double(double)> value;
    std::function<double(double)> derivative; // needed by the diffusion limit
    // largest value of gamma on the segment between x0 and x1
    std::function<double(double, double)> sup_on_segment;
    bool identically_zero = false;
    std::string description = "none";

    static ExcessRate none();
    static ExcessRate constant(double c);
    static ExcessRate quadratic(double a); // gamma(x) = a (1 + x^2)
};

struct SwitchingRate {
    TargetModel target;
    ExcessRate excess = ExcessRate::none();
};

// lambda(x, theta) = (theta U'(x))^+ + gamma(x)
double switching_rate(const SwitchingRate& rate, double x, Direction theta);

TargetModel make_gaussian(double variance);
TargetModel make_student_t(double dof);

struct CustomBounds {
    std::optional<double> grad_bound;
    std::optional<double> hessian_bound;
    double scale = 1.0;
};

// Normalization is computed by tan-mapped adaptive quadrature (abs tol 1e-10).
TargetModel make_custom(std::function<double(double)> u,
                        std::function<double(double)> u_prime,
                        const CustomBounds& bounds = {},
                        const std::string& name = "custom");

} // namespace zigzag
