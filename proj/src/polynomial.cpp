#include "skeletree/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace skeletree {

PolynomialReal::PolynomialReal(std::vector<double> coeffs) : c_(std::move(coeffs))
{
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double PolynomialReal::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolynomialReal PolynomialReal::derivative() const
{
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
    return PolynomialReal(std::move(d));
}

double PolynomialReal::relative_residual(double x) const
{
    double scale = 0.0, xk = 1.0;
    for (double c : c_) {
        scale = std::max(scale, std::abs(c * xk));
        xk *= x;
    }
    if (scale == 0.0) return 0.0;
    return std::abs((*this)(x)) / scale;
}

} // namespace skeletree
