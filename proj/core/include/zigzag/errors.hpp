#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

// Base class for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (nonpositive variance, bad horizon, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// A user callable produced a non-finite value.
class evaluation_error : public error {
public:
    evaluation_error(const std::string& what, double at) : error(what), at_(at) {}
    double at() const { return at_; }

private:
    double at_;
};

// Adaptive quadrature failed to reach its tolerance.
class quadrature_error : public error {
public:
    quadrature_error(const std::string& what, double residual)
        : error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// A thinning bound was caught below the true rate at runtime.
class bound_violation_error : public error {
public:
    bound_violation_error(const std::string& what, double t, double x, int theta)
        : error(what), t_(t), x_(x), theta_(theta) {}
    double t() const { return t_; }
    double x() const { return x_; }
    int theta() const { return theta_; }

private:
    double t_;
    double x_;
    int theta_;
};

// The switching clock has no finite arrival along the current ray.
class no_switch_error : public error {
public:
    explicit no_switch_error(const std::string& what) : error(what) {}
};

// Not enough data for an empirical estimator (e.g. too few renewal cycles).
class insufficient_data_error : public error {
public:
    explicit insufficient_data_error(const std::string& what) : error(what) {}
};

// An operation requires optional model metadata that is absent.
class capability_error : public error {
public:
    explicit capability_error(const std::string& what) : error(what) {}
};

// Step-size tuning failed to bracket the requested acceptance rate.
class tuning_error : public error {
public:
    explicit tuning_error(const std::string& what) : error(what) {}
};

// A closed form was requested outside its validity range.
class validity_error : public error {
public:
    explicit validity_error(const std::string& what) : error(what) {}
};

// SDE integration produced a non-finite state.
class integration_error : public error {
public:
    integration_error(const std::string& what, std::size_t step)
        : error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

} // namespace zigzag
