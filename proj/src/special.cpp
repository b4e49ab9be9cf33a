#include "skeletree/special.hpp"

#include "skeletree/inverse.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace skeletree {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> ratios(std::span<const double> lengths)
{
    if (lengths.size() < 3) throw SolverError("a star needs at least three legs");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l)) throw SolverError("star leg lengths must be positive");
    std::vector<double> m;
    for (double l : lengths) m.push_back(lengths[0] / l);
    return m;
}

double x_max(const std::vector<double>& m) { return 1.0 / *std::max_element(m.begin(), m.end()); }

double safe_asin(double y) { return std::asin(std::min(y, 1.0)); }

// Plain bisection for an increasing f with f(lo) < 0 <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi)
{
    for (int it = 0; it < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::optional<StarSolution> solve_star_convex(std::span<const double> lengths, const ToleranceConfig& cfg)
{
    const auto m = ratios(lengths);
    const double target = static_cast<double>(m.size() - 2) * kPi / 2;
    auto lhs = [&](double x) {
        double s = 0.0;
        for (double mi : m) s += safe_asin(mi * x);
        return s - target;
    };
    const double hi = x_max(m);
    if (lhs(hi) < -cfg.solver_tol) return std::nullopt;

    StarSolution sol;
    sol.x = lhs(hi) <= 0.0 ? hi : bisect(lhs, 0.0, hi);
    for (double mi : m) sol.alpha.push_back(safe_asin(mi * sol.x));
    sol.time = lengths[0] * sol.x;
    sol.residual = std::abs(lhs(sol.x));
    return sol;
}

double branch_target(const BranchChoice& b)
{
    const auto reflex = std::count(b.begin(), b.end(), Branch::Reflex);
    return static_cast<double>(b.size() - 2) * kPi / 2 - static_cast<double>(reflex) * kPi;
}

std::vector<BranchRoots> solve_star_all_branches(std::span<const double> lengths, const ToleranceConfig& cfg,
                                                 BranchScanOptions opts)
{
    const auto m = ratios(lengths);
    const std::size_t n = m.size();
    if (n > 12) throw SolverError("branch enumeration is limited to 12 legs");
    if (opts.samples < 2) throw SolverError("branch scan needs at least two samples");
    const double hi = x_max(m);
    const double step = hi / opts.samples;

    struct Found {
        BranchRoots br;
        std::vector<std::vector<double>> angles;
    };
    std::vector<Found> found;
    auto angles_at = [&](const BranchChoice& b, double x) {
        std::vector<double> a;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = safe_asin(m[i] * x);
            a.push_back(b[i] == Branch::Principal ? p : kPi - p);
        }
        return a;
    };
    auto same_angles = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(a[i] - b[i]) > std::sqrt(cfg.solver_tol)) return false;
        return true;
    };

    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        BranchChoice b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = (mask >> i) & 1u ? Branch::Reflex : Branch::Principal;
        const double target = branch_target(b);
        auto f = [&](double x) {
            double s = -target;
            for (std::size_t i = 0; i < n; ++i) s += (b[i] == Branch::Principal ? 1.0 : -1.0) * safe_asin(m[i] * x);
            return s;
        };
        BranchRoots br{b, {}, false};
        double x0 = 0.0, f0 = f(0.0);
        for (int k = 1; k <= opts.samples; ++k) {
            const double x1 = k == opts.samples ? hi : step * k;
            const double f1 = f(x1);
            double root = std::numeric_limits<double>::quiet_NaN();
            if (f1 == 0.0) {
                root = x1;
            } else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
                const double sgn = f0 < 0.0 ? 1.0 : -1.0;
                root = bisect([&](double x) { return sgn * f(x); }, x0, x1);
            }
            if (!std::isnan(root) && root > 0.0) {
                br.roots.push_back(root);
                if (hi - root <= step) br.near_boundary = true;
            }
            x0 = x1;
            f0 = f1;
        }
        if (br.roots.empty()) continue;

        std::vector<std::vector<double>> angles;
        for (double r : br.roots) angles.push_back(angles_at(b, r));
        // Near x = min 1/m_i the two branches of a leg coincide.
        bool duplicate = false;
        for (const auto& other : found)
            if (other.angles.size() == angles.size() &&
                std::equal(angles.begin(), angles.end(), other.angles.begin(), same_angles))
                duplicate = true;
        if (!duplicate) found.push_back({std::move(br), std::move(angles)});
    }
    std::vector<BranchRoots> out;
    for (auto& f : found) out.push_back(std::move(f.br));
    return out;
}

PolynomialReal triangle_cubic(double ao, double bo, double co)
{
    if (!(ao > 0.0 && bo > 0.0 && co > 0.0)) throw SolverError("triangle legs must be positive");
    const double a2 = ao * ao, b2 = bo * bo, c2 = co * co;
    return PolynomialReal({-c2 * b2, 0.0, a2 * c2 + a2 * b2 + b2 * c2, 2.0 * a2 * bo * co});
}

CubicRoots solve_cubic(const PolynomialReal& p, const ToleranceConfig&)
{
    if (p.degree() != 3) throw SolverError("solve_cubic needs a polynomial of degree 3");
    const double a = p[3], b = p[2], c = p[1], d = p[0];

    CubicRoots out;
    out.discriminant = 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
    {
        using boost::multiprecision::cpp_rational;
        const cpp_rational A(a), B(b), C(c), D(d);
        const cpp_rational disc = 18 * A * B * C * D - 4 * B * B * B * D + B * B * C * C - 4 * A * C * C * C -
                                  27 * A * A * D * D;
        out.discriminant_sign = disc.sign();
    }

    // Depressed cubic t^3 + pp t + qq with x = t - b/(3a).
    const double bn = b / a, cn = c / a, dn = d / a;
    const double shift = bn / 3.0;
    const double pp = cn - bn * bn / 3.0;
    const double qq = 2.0 * bn * bn * bn / 27.0 - bn * cn / 3.0 + dn;
    std::vector<double> t;
    if (out.discriminant_sign == 0) {
        if (pp == 0.0) t = {0.0, 0.0, 0.0};
        else t = {3.0 * qq / pp, -1.5 * qq / pp, -1.5 * qq / pp};
    } else if (out.discriminant_sign > 0) {
        const double r = 2.0 * std::sqrt(std::max(-pp / 3.0, 0.0));
        const double arg = r > 0.0 ? std::clamp(3.0 * qq / (pp * r), -1.0, 1.0) : 0.0;
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) t.push_back(r * std::cos(phi - 2.0 * kPi * k / 3.0));
    } else {
        const double s = std::sqrt(std::max(qq * qq / 4.0 + pp * pp * pp / 27.0, 0.0));
        t = {std::cbrt(-qq / 2.0 + s) + std::cbrt(-qq / 2.0 - s)};
    }

    const PolynomialReal dp = p.derivative();
    for (double ti : t) {
        double x = ti - shift;
        const double slope = dp(x);
        // Skip the polish at a repeated root, where the slope vanishes.
        if (std::abs(slope) > std::sqrt(std::numeric_limits<double>::epsilon()) * std::abs(a) * std::max(1.0, x * x))
            x -= p(x) / slope;
        out.roots.push_back(x);
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

TriangleCubicReport analyze_triangle_cubic(const PolynomialReal& p, const ToleranceConfig& cfg)
{
    TriangleCubicReport r;
    r.cubic = solve_cubic(p, cfg);
    r.discriminant_nonnegative = r.cubic.discriminant_sign >= 0;
    for (double x : r.cubic.roots) {
        if (x > 0.0) {
            ++r.positive_roots;
            r.positive_root = x;
        }
    }
    r.root_at_most_one = r.positive_roots >= 1 && r.positive_root <= 1.0 + cfg.solver_tol;
    return r;
}

namespace {

using boost::multiprecision::cpp_int;

std::int64_t as_integer(double c)
{
    if (!std::isfinite(c) || std::floor(c) != c || std::abs(c) > 9007199254740992.0)
        throw SolverError("rational root test needs integer coefficients, got " + std::to_string(c));
    return static_cast<std::int64_t>(c);
}

std::vector<std::int64_t> divisors(std::int64_t v)
{
    const auto u = static_cast<std::uint64_t>(v < 0 ? -v : v);
    std::vector<std::int64_t> small, large;
    for (std::uint64_t k = 1; k * k <= u; ++k) {
        if (u % k) continue;
        small.push_back(static_cast<std::int64_t>(k));
        if (k != u / k) large.push_back(static_cast<std::int64_t>(u / k));
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace

RationalRootReport rational_root_test(const PolynomialReal& p)
{
    std::vector<std::int64_t> c;
    for (double x : p.coefficients()) c.push_back(as_integer(x));
    if (c.size() < 2) throw SolverError("rational root test needs degree >= 1");
    if (c.front() == 0) throw SolverError("rational root test needs a nonzero constant term");

    RationalRootReport r;
    r.constant_divisors = divisors(c.front());
    r.leading_divisors = divisors(c.back());
    const std::size_t deg = c.size() - 1;
    for (std::int64_t a : r.constant_divisors) {
        for (std::int64_t b : r.leading_divisors) {
            for (std::int64_t sgn : {1, -1}) {
                const RationalCandidate cand{sgn * a, b};
                r.tried.push_back(cand);
                if (r.root) continue;
                // b^deg * p(num/den) = sum c_k num^k den^(deg-k), exactly.
                cpp_int sum = 0, num_pow = 1;
                for (std::size_t k = 0; k <= deg; ++k) {
                    cpp_int den_pow = 1;
                    for (std::size_t j = k; j < deg; ++j) den_pow *= b;
                    sum += cpp_int(c[k]) * num_pow * den_pow;
                    num_pow *= cand.num;
                }
                if (sum == 0) r.root = cand;
            }
        }
    }
    return r;
}

PolynomialReal five_star_polynomial()
{
    return PolynomialReal({1.0, -2330.0, 1837225.0, -653926400.0, 111607040000.0, -8795136000000.0,
                           256000000000000.0});
}

FiveStarReport five_star_check(const ToleranceConfig& cfg)
{
    FiveStarReport r;
    r.p = five_star_polynomial();
    r.p_at_zero = r.p(0.0);
    const std::vector<double> legs{1.0, 1.0, 1.0, 10.0 / 11.0, 10.0 / 12.0};
    const auto sol = solve_star_convex(legs, cfg);
    if (!sol) throw SolverError("five-star equation has no root");
    r.x = sol->x;
    r.equation_residual = sol->residual;
    r.relative_residual = r.p.relative_residual(r.x * r.x);
    const double y = r.x / 10.0;
    r.rescaled_relative_residual = r.p.relative_residual(y * y);
    return r;
}

} // namespace skeletree
