#pragma once

#include "skeletree/geometry.hpp"
#include "skeletree/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace skeletree {

/// Convex star solution with hub center: x = sin(alpha_1), alpha_i = asin(m_i x)
/// where m_i = l_1 / l_i.
struct StarSolution {
    double x = 0.0;
    std::vector<double> alpha;
    /// Center time, l_1 * x.
    double time = 0.0;
    /// |sum(alpha) - (n-2)pi/2|
    double residual = 0.0;
};

/// Bisection on sum asin(m_i x) = (n-2)pi/2 over x in (0, min 1/m_i]. Empty
/// when the left side never reaches the target.
std::optional<StarSolution> solve_star_convex(std::span<const double> lengths, const ToleranceConfig& cfg = {});

enum class Branch { Principal, Reflex };

/// Per-leaf branch of the two-valued inverse sine: asin(y) or pi - asin(y).
using BranchChoice = std::vector<Branch>;

struct BranchRoots {
    BranchChoice branch;
    std::vector<double> roots;
    /// A root sits within one scan step of the domain end x = min 1/m_i,
    /// where both branches meet and sign changes may be missed.
    bool near_boundary = false;
};

struct BranchScanOptions {
    int samples = 10000;
};

/// Every branch choice (2^n, n <= 12) with at least one root, after merging
/// roots that describe the same angles under different choices.
std::vector<BranchRoots> solve_star_all_branches(std::span<const double> lengths, const ToleranceConfig& cfg = {},
                                                 BranchScanOptions opts = {});

/// Right-hand side of the branch equation after moving every reflex term:
/// (n-2)pi/2 - (#reflex)pi.
double branch_target(const BranchChoice& b);

/// Cubic in x = sin(alpha_A) for the three-leaf star with legs AO, BO, CO:
/// -CO^2 BO^2 + (AO^2 CO^2 + AO^2 BO^2 + BO^2 CO^2) x^2 + 2 AO^2 BO CO x^3.
PolynomialReal triangle_cubic(double ao, double bo, double co);

struct CubicRoots {
    /// Real roots in increasing order, repeated by multiplicity.
    std::vector<double> roots;
    /// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 for ax^3 + bx^2 + cx + d.
    double discriminant = 0.0;
    /// Sign of the discriminant computed exactly from the stored coefficients.
    int discriminant_sign = 0;
};

/// Closed form (trigonometric for three real roots, Cardano otherwise) with
/// one Newton polish per root. Throws SolverError unless deg p = 3.
CubicRoots solve_cubic(const PolynomialReal& p, const ToleranceConfig& cfg = {});

struct TriangleCubicReport {
    CubicRoots cubic;
    int positive_roots = 0;
    double positive_root = 0.0;
    bool discriminant_nonnegative = false;
    bool root_at_most_one = false;

    bool ok() const { return discriminant_nonnegative && positive_roots == 1 && root_at_most_one; }
};

/// solve_cubic plus the checks every triangle cubic must pass.
TriangleCubicReport analyze_triangle_cubic(const PolynomialReal& p, const ToleranceConfig& cfg = {});

struct RationalCandidate {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct RationalRootReport {
    std::optional<RationalCandidate> root;
    /// Every (+-a, b) pair tried, a | constant term, b | leading term.
    std::vector<RationalCandidate> tried;
    std::vector<std::int64_t> constant_divisors;
    std::vector<std::int64_t> leading_divisors;
};

/// Exact rational root test. Throws SolverError for non-integer coefficients
/// (or ones beyond 2^53) and for zero constant or leading terms.
RationalRootReport rational_root_test(const PolynomialReal& p);

struct FiveStarReport {
    /// Root of 3 asin(x) + asin(11x/10) + asin(12x/10) = 3pi/2.
    double x = 0.0;
    double equation_residual = 0.0;
    /// Relative residual of p at x^2 with p's listed coefficients.
    double relative_residual = 0.0;
    /// Relative residual of p at (x/10)^2.
    double rescaled_relative_residual = 0.0;
    double p_at_zero = 0.0;
    PolynomialReal p;
};

/// The degree-6 polynomial whose roots are claimed to contain x^2.
PolynomialReal five_star_polynomial();
FiveStarReport five_star_check(const ToleranceConfig& cfg = {});

} // namespace skeletree
