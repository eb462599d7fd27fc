#pragma once

#include <functional>
#include <optional>

namespace zigzag {

// A function of position. Monomials and tail indicators are tagged so that
// path averages can use exact per-segment integrals instead of quadrature.
struct Observable {
    enum class Kind { monomial, tail_indicator, generic };

    Kind kind = Kind::generic;
    int power = 0;          // monomial: f(x) = x^power
    double threshold = 0.0; // tail indicator: f(x) = 1{x >= threshold}
    std::function<double(double)> eval;
    std::optional<double> centering; // m = pi(f) when known analytically

    static Observable monomial(int p);
    static Observable tail(double a);
    static Observable generic(std::function<double(double)> f,
                              std::optional<double> centering = std::nullopt);
};

} // namespace zigzag
