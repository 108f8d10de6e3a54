#ifndef OL_ORLICZ_HPP
#define OL_ORLICZ_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ol/report.hpp"

namespace ol {

/// M(t) = c * t^p on [0, inf), p >= 1, c > 0.
struct PowerFn {
    double p;
    double c;
};

/// Convex piecewise-linear function with knots t[0]=0 < t[1] < ... and
/// values v[0]=0 <= v[1] <= ... (slopes non-decreasing). Past the last knot
/// the function continues with `final_slope`; if `domain_bound` is set the
/// value is +inf beyond it (this shape arises as the conjugate of a function
/// with finite final slope).
struct PiecewiseLinearFn {
    std::vector<double> t;
    std::vector<double> v;
    double final_slope = 0.0;
    std::optional<double> domain_bound;
};

/// An Orlicz function: convex, M(0) = 0, non-decreasing. A leading
/// zero-slope segment (M = 0 on an initial interval) marks the function
/// "degenerate"; such functions arise as conjugates and are rejected by
/// operations that need strict positivity.
class OrliczFunction {
public:
    static OrliczFunction power(double p, double c = 1.0);
    static OrliczFunction piecewise_linear(std::vector<double> t, std::vector<double> v,
                                           double final_slope,
                                           std::optional<double> domain_bound = {});
    /// Breakpoint pairs (t, v); final slope defaults to the last segment's.
    static OrliczFunction piecewise_linear(const std::vector<std::pair<double, double>>& points);

    /// M(t); +inf past a domain bound. Throws on t < 0.
    double operator()(double t) const;

    /// Generalized inverse sup{t >= 0 : M(t) <= s}. Flats resolve to their
    /// right endpoint; values past a bounded range saturate at the domain
    /// bound; +inf when M is bounded with unbounded domain.
    double inverse(double s) const;

    /// Legendre transform M*(x) = sup_t (x t - M(t)). Analytic for power
    /// functions, exact breakpoint algebra for piecewise-linear ones.
    OrliczFunction conjugate() const;

    bool is_power() const { return std::holds_alternative<PowerFn>(fn_); }
    const PowerFn& as_power() const { return std::get<PowerFn>(fn_); }
    const PiecewiseLinearFn& as_piecewise_linear() const { return std::get<PiecewiseLinearFn>(fn_); }

    bool is_degenerate() const;
    bool is_strict() const { return !is_degenerate(); }

    /// Supremum of attainable (finite) values; +inf when unbounded.
    double sup_value() const;

private:
    explicit OrliczFunction(PowerFn f) : fn_(f) {}
    explicit OrliczFunction(PiecewiseLinearFn f) : fn_(std::move(f)) {}

    std::variant<PowerFn, PiecewiseLinearFn> fn_;
};

/// Strictly increasing positive evaluation abscissae.
struct Grid {
    std::vector<double> points;

    explicit Grid(std::vector<double> pts);
    static Grid log_spaced(double lo, double hi, int count);
    static Grid linear(double lo, double hi, int count);
};

/// (min, max) over the grid of M^{-1}(s) / N^{-1}(s). Grid points outside the
/// attainable range of either function are dropped first.
std::pair<double, double> equivalence_ratio(const OrliczFunction& M, const OrliczFunction& N,
                                            const Grid& g);

/// Checks t <= M^{-1}(t) (M*)^{-1}(t) <= 2t on the grid. Rejects degenerate M.
VerificationReport check_duality_product(const OrliczFunction& M, const Grid& g);

/// Checks that t -> M(t)/t^q is non-increasing across consecutive grid
/// points (1e-12 relative tolerance). Exact for power functions.
VerificationReport check_power_ratio_monotone(const OrliczFunction& M, double q, const Grid& g);

/// Result of building an Orlicz function N from prescribed values of
/// (N*)^{-1} at s = l/n. `majorized` is set when the samples had to be
/// raised to their least concave majorant, `tail_flattened` when a
/// non-increasing tail had to be replaced by its running maximum.
struct ConcaveInverseBuild {
    OrliczFunction n_function;
    OrliczFunction n_conjugate;
    bool majorized = false;
    bool tail_flattened = false;
    double max_lift = 0.0;
};

/// Builds N from samples (s_l, phi_l), s_l = l/n, phi positive. Prepends
/// (0,0), takes the least concave majorant (with a monotone tail repair),
/// inverts it exactly to get N*, and returns N = conjugate(N*) together
/// with N* and the repair flags. (N*)^{-1}(l/n) reproduces the majorized
/// phi_l to machine precision.
ConcaveInverseBuild pl_from_concave_inverse(const std::vector<std::pair<double, double>>& samples);

/// Textual grammar: `power:p=<real>[,c=<real>]` and
/// `pl:[[t0,v0],[t1,v1],...][;slope=<real>][;bound=<real>]`.
OrliczFunction parse_orlicz(std::string_view text);
std::string format_orlicz(const OrliczFunction& M);

} // namespace ol

#endif
