#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace skeletree {

/// Dense real polynomial, constant term first. Trailing zero coefficients are
/// trimmed, so the leading coefficient is nonzero unless the polynomial is 0.
class PolynomialReal {
public:
    PolynomialReal() = default;
    explicit PolynomialReal(std::vector<double> coeffs);
    PolynomialReal(std::initializer_list<double> coeffs) : PolynomialReal(std::vector<double>(coeffs)) {}

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::span<const double> coefficients() const { return c_; }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
    double leading() const { return c_.empty() ? 0.0 : c_.back(); }

    double operator()(double x) const;
    PolynomialReal derivative() const;
    /// |p(x)| divided by the largest |c_k x^k|.
    double relative_residual(double x) const;

    bool operator==(const PolynomialReal&) const = default;

private:
    std::vector<double> c_;
};

} // namespace skeletree
