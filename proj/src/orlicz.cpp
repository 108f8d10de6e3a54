#include "ol/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double segment_slope(const PiecewiseLinearFn& f, std::size_t j) {
    // slope of the segment ending at knot j (j >= 1)
    return (f.v[j] - f.v[j - 1]) / (f.t[j] - f.t[j - 1]);
}

void validate_pl(const PiecewiseLinearFn& f) {
    if (f.t.empty() || f.t.size() != f.v.size())
        throw std::invalid_argument("piecewise-linear function needs matching knot/value lists");
    if (f.t.front() != 0.0 || f.v.front() != 0.0)
        throw std::invalid_argument("piecewise-linear function must start at (0, 0)");
    for (std::size_t j = 1; j < f.t.size(); ++j) {
        if (!(f.t[j] > f.t[j - 1]))
            throw std::invalid_argument("piecewise-linear knots must be strictly increasing");
        if (f.v[j] < f.v[j - 1])
            throw std::invalid_argument("piecewise-linear values must be non-decreasing");
    }
    double prev = 0.0;
    for (std::size_t j = 1; j < f.t.size(); ++j) {
        double s = segment_slope(f, j);
        if (s < prev * (1.0 - 1e-9) - 1e-300)
            throw std::invalid_argument("piecewise-linear slopes must be non-decreasing (convexity)");
        prev = std::max(prev, s);
    }
    if (!(f.final_slope >= 0.0) || !std::isfinite(f.final_slope))
        throw std::invalid_argument("final slope must be finite and non-negative");
    if (f.final_slope < prev * (1.0 - 1e-9) - 1e-300)
        throw std::invalid_argument("final slope must not fall below the last segment slope");
    if (f.domain_bound) {
        if (!(*f.domain_bound >= f.t.back()))
            throw std::invalid_argument("domain bound must not precede the last knot");
    }
    bool all_zero = f.v.back() == 0.0 && f.final_slope == 0.0 && !f.domain_bound;
    if (all_zero)
        throw std::invalid_argument("the zero function is not an Orlicz function");
}

double pl_eval(const PiecewiseLinearFn& f, double t) {
    if (f.domain_bound && t > *f.domain_bound)
        return kInf;
    if (t >= f.t.back())
        return f.v.back() + f.final_slope * (t - f.t.back());
    auto it = std::upper_bound(f.t.begin(), f.t.end(), t);
    std::size_t j = static_cast<std::size_t>(it - f.t.begin()); // first knot > t, j >= 1
    return f.v[j - 1] + segment_slope(f, j) * (t - f.t[j - 1]);
}

double pl_sup_value(const PiecewiseLinearFn& f) {
    if (f.domain_bound)
        return f.v.back() + f.final_slope * (*f.domain_bound - f.t.back());
    return f.final_slope > 0.0 ? kInf : f.v.back();
}

double pl_inverse(const PiecewiseLinearFn& f, double s) {
    double vmax = pl_sup_value(f);
    if (s >= vmax) {
        if (f.domain_bound)
            return *f.domain_bound; // sub-level set saturates at the bound
        if (s > vmax)
            return kInf;
        // s == v.back() with zero final slope: flat to infinity
        if (f.final_slope == 0.0)
            return kInf;
    }
    if (s >= f.v.back())
        return f.t.back() + (s - f.v.back()) / f.final_slope;
    // first value strictly above s; flats resolve to their right endpoint
    auto it = std::upper_bound(f.v.begin(), f.v.end(), s);
    std::size_t j = static_cast<std::size_t>(it - f.v.begin());
    return f.t[j - 1] + (s - f.v[j - 1]) / segment_slope(f, j);
}

} // namespace

OrliczFunction OrliczFunction::power(double p, double c) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("power exponent must satisfy p >= 1");
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("power scale must be positive");
    return OrliczFunction(PowerFn{p, c});
}

OrliczFunction OrliczFunction::piecewise_linear(std::vector<double> t, std::vector<double> v,
                                                double final_slope,
                                                std::optional<double> domain_bound) {
    PiecewiseLinearFn f{std::move(t), std::move(v), final_slope, domain_bound};
    validate_pl(f);
    return OrliczFunction(std::move(f));
}

OrliczFunction OrliczFunction::piecewise_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("need at least two breakpoints");
    std::vector<double> t, v;
    t.reserve(points.size());
    v.reserve(points.size());
    for (auto& [ti, vi] : points) {
        t.push_back(ti);
        v.push_back(vi);
    }
    double fs = (v.back() - v[v.size() - 2]) / (t.back() - t[t.size() - 2]);
    return piecewise_linear(std::move(t), std::move(v), fs);
}

double OrliczFunction::operator()(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("Orlicz functions are defined on [0, inf)");
    if (is_power()) {
        const auto& f = as_power();
        return t == 0.0 ? 0.0 : f.c * std::pow(t, f.p);
    }
    return pl_eval(as_piecewise_linear(), t);
}

double OrliczFunction::inverse(double s) const {
    if (s < 0.0)
        throw std::invalid_argument("inverse argument must be non-negative");
    if (is_power()) {
        const auto& f = as_power();
        return s == 0.0 ? 0.0 : std::pow(s / f.c, 1.0 / f.p);
    }
    return pl_inverse(as_piecewise_linear(), s);
}

bool OrliczFunction::is_degenerate() const {
    if (is_power())
        return false;
    const auto& f = as_piecewise_linear();
    if (f.t.size() == 1)
        return false; // pure linear extension from the origin
    return f.v[1] == 0.0;
}

double OrliczFunction::sup_value() const {
    if (is_power())
        return kInf;
    return pl_sup_value(as_piecewise_linear());
}

OrliczFunction OrliczFunction::conjugate() const {
    if (is_power()) {
        const auto& f = as_power();
        if (f.p == 1.0) {
            // sup(xt - c t) is 0 for x <= c and +inf beyond
            return piecewise_linear({0.0, f.c}, {0.0, 0.0}, 0.0, f.c);
        }
        double q = f.p / (f.p - 1.0);
        double cq = (f.p - 1.0) / f.p * std::pow(f.c * f.p, -1.0 / (f.p - 1.0));
        return power(q, cq);
    }

    const auto& f = as_piecewise_linear();
    // segments of M as (slope, right knot, right value); a finite domain
    // bound turns the linear extension into one more ordinary segment
    std::vector<double> slope, knot, val;
    for (std::size_t j = 1; j < f.t.size(); ++j) {
        slope.push_back(segment_slope(f, j));
        knot.push_back(f.t[j]);
        val.push_back(f.v[j]);
    }
    bool bounded = f.domain_bound.has_value();
    if (bounded && *f.domain_bound > f.t.back()) {
        slope.push_back(f.final_slope);
        knot.push_back(*f.domain_bound);
        val.push_back(f.v.back() + f.final_slope * (*f.domain_bound - f.t.back()));
    }

    std::vector<double> xs{0.0}, ys{0.0};
    double left_t = 0.0, left_v = 0.0;
    auto push = [&](double x, double y) {
        if (x > xs.back() + 1e-14 * (1.0 + std::abs(x))) {
            xs.push_back(x);
            ys.push_back(y);
        }
    };
    for (std::size_t j = 0; j < slope.size(); ++j) {
        push(slope[j], slope[j] * left_t - left_v);
        left_t = knot[j];
        left_v = val[j];
    }

    if (!bounded) {
        // extension slope is the conjugate's last knot; +inf past it
        push(f.final_slope, f.final_slope * left_t - left_v);
        double last_segment = xs.size() >= 2 ? (ys.back() - ys[ys.size() - 2]) / (xs.back() - xs[xs.size() - 2])
                                             : left_t;
        double bound = xs.back();
        return piecewise_linear(std::move(xs), std::move(ys), last_segment, bound);
    }
    // bounded M: the conjugate grows with slope equal to the domain bound
    return piecewise_linear(std::move(xs), std::move(ys), *f.domain_bound);
}

Grid::Grid(std::vector<double> pts) : points(std::move(pts)) {
    if (points.empty())
        throw std::invalid_argument("grid must be non-empty");
    double prev = 0.0;
    for (double p : points) {
        if (!(p > prev))
            throw std::invalid_argument("grid points must be positive and strictly increasing");
        prev = p;
    }
}

Grid Grid::log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced needs 0 < lo < hi and count >= 2");
    std::vector<double> pts(static_cast<std::size_t>(count));
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (count - 1));
    pts.front() = lo;
    pts.back() = hi;
    return Grid(std::move(pts));
}

Grid Grid::linear(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("linear grid needs 0 < lo < hi and count >= 2");
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return Grid(std::move(pts));
}

std::pair<double, double> equivalence_ratio(const OrliczFunction& M, const OrliczFunction& N,
                                            const Grid& g) {
    double cap = std::min(M.sup_value(), N.sup_value());
    double lo = kInf, hi = -kInf;
    std::size_t used = 0;
    for (double s : g.points) {
        if (s > cap)
            continue;
        double num = M.inverse(s);
        double den = N.inverse(s);
        if (!(den > 0.0) || !std::isfinite(num) || !std::isfinite(den))
            continue;
        double r = num / den;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++used;
    }
    if (used == 0)
        throw std::invalid_argument("no grid point lies in the attainable range of both functions");
    return {lo, hi};
}

VerificationReport check_duality_product(const OrliczFunction& M, const Grid& g) {
    if (M.is_degenerate())
        throw std::invalid_argument("duality check requires a strict (non-degenerate) Orlicz function");
    constexpr double tol = 1e-9;
    OrliczFunction conj = M.conjugate();

    VerificationReport report;
    report.command = "check_duality_product";
    report.params["orlicz"] = format_orlicz(M);
    report.params["grid_points"] = g.points.size();

    bool ok = true;
    double worst_lo = kInf, worst_hi = 0.0;
    nlohmann::json failures = nlohmann::json::array();
    for (double t : g.points) {
        double product = M.inverse(t) * conj.inverse(t);
        worst_lo = std::min(worst_lo, product / t);
        worst_hi = std::max(worst_hi, product / t);
        bool here = product >= t * (1.0 - tol) && product <= 2.0 * t * (1.0 + tol);
        if (!here) {
            ok = false;
            if (failures.size() < 8)
                failures.push_back({{"t", t}, {"product", product}});
        }
    }
    report.results["min_product_over_t"] = worst_lo;
    report.results["max_product_over_t"] = worst_hi;
    if (!failures.empty())
        report.results["failures"] = failures;
    report.passed = ok;
    return report;
}

VerificationReport check_power_ratio_monotone(const OrliczFunction& M, double q, const Grid& g) {
    if (!(q > 0.0))
        throw std::invalid_argument("exponent q must be positive");

    VerificationReport report;
    report.command = "check_power_ratio_monotone";
    report.params["orlicz"] = format_orlicz(M);
    report.params["q"] = q;

    if (M.is_power()) {
        bool ok = M.as_power().p <= q;
        report.results["analytic"] = true;
        report.passed = ok;
        if (!ok)
            report.results["failing_point"] = g.points.front();
        return report;
    }

    bool ok = true;
    double prev = -kInf;
    double failing = 0.0;
    for (double t : g.points) {
        double ratio = M(t) / std::pow(t, q);
        if (prev != -kInf && ratio > prev * (1.0 + 1e-12)) {
            ok = false;
            failing = t;
            break;
        }
        prev = ratio;
    }
    report.results["analytic"] = false;
    report.passed = ok;
    if (!ok)
        report.results["failing_point"] = failing;
    return report;
}

ConcaveInverseBuild pl_from_concave_inverse(const std::vector<std::pair<double, double>>& samples) {
    std::size_t n = samples.size();
    if (n == 0)
        throw std::invalid_argument("need at least one sample");
    for (std::size_t l = 0; l < n; ++l) {
        double s_expected = static_cast<double>(l + 1) / static_cast<double>(n);
        if (std::abs(samples[l].first - s_expected) > 1e-12 * (1.0 + s_expected))
            throw std::invalid_argument("sample abscissae must be l/n for l = 1..n");
        if (!(samples[l].second > 0.0) || !std::isfinite(samples[l].second))
            throw std::invalid_argument("sample values must be positive and finite");
    }

    // least concave majorant of (0,0) followed by the samples: upper hull
    std::vector<double> hx{0.0}, hy{0.0};
    auto hull_slope = [&](std::size_t j) { return (hy[j] - hy[j - 1]) / (hx[j] - hx[j - 1]); };
    for (std::size_t l = 0; l < n; ++l) {
        double x = samples[l].first, y = samples[l].second;
        while (hx.size() >= 2) {
            double s_new = (y - hy.back()) / (x - hx.back());
            if (hull_slope(hx.size() - 1) <= s_new + 1e-15 * (1.0 + std::abs(s_new))) {
                hx.pop_back();
                hy.pop_back();
            } else {
                break;
            }
        }
        hx.push_back(x);
        hy.push_back(y);
    }

    ConcaveInverseBuild out{
        OrliczFunction::power(1.0), OrliczFunction::power(1.0), false, false, 0.0};

    // majorization amount at the original abscissae
    {
        std::size_t seg = 1;
        for (std::size_t l = 0; l < n; ++l) {
            double x = samples[l].first;
            while (seg + 1 < hx.size() && hx[seg] < x)
                ++seg;
            double y = hy[seg - 1] + hull_slope(seg) * (x - hx[seg - 1]);
            double lift = y - samples[l].second;
            if (lift > 1e-12 * (1.0 + samples[l].second)) {
                out.majorized = true;
                out.max_lift = std::max(out.max_lift, lift);
            }
        }
    }

    // drop the non-increasing tail: past the peak the generalized inverse is
    // flat, which the conjugate pair encodes as a bounded domain
    std::size_t peak = hx.size() - 1;
    while (peak >= 1 && hy[peak] <= hy[peak - 1] + 1e-15 * (1.0 + hy[peak - 1]))
        --peak;
    if (peak + 1 < hx.size()) {
        out.tail_flattened = true;
        hx.resize(peak + 1);
        hy.resize(peak + 1);
    }

    // invert the majorant: N* has knots (phi, s)
    std::vector<double> nt, nv;
    nt.reserve(hx.size());
    nv.reserve(hx.size());
    for (std::size_t j = 0; j < hx.size(); ++j) {
        nt.push_back(hy[j]);
        nv.push_back(hx[j]);
    }
    if (nt.size() < 2)
        throw std::invalid_argument("degenerate sample set");

    double fs = (nv.back() - nv[nv.size() - 2]) / (nt.back() - nt[nt.size() - 2]);
    if (out.tail_flattened) {
        // the flat stretch of the majorant means N* jumps to +inf past the peak
        double bound = nt.back();
        out.n_conjugate = OrliczFunction::piecewise_linear(std::move(nt), std::move(nv), fs, bound);
    } else {
        out.n_conjugate = OrliczFunction::piecewise_linear(std::move(nt), std::move(nv), fs);
    }
    out.n_function = out.n_conjugate.conjugate();
    return out;
}

namespace {

double parse_real(std::string_view text, const char* what) {
    try {
        std::size_t pos = 0;
        double value = std::stod(std::string(text), &pos);
        if (pos != text.size())
            throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("malformed ") + what + ": '" + std::string(text) + "'");
    }
}

} // namespace

OrliczFunction parse_orlicz(std::string_view text) {
    if (text.rfind("power:", 0) == 0) {
        std::string_view body = text.substr(6);
        double p = 0.0, c = 1.0;
        bool have_p = false;
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t end = body.find(',', start);
            std::string_view field = body.substr(start, end == std::string_view::npos ? end : end - start);
            if (field.rfind("p=", 0) == 0) {
                p = parse_real(field.substr(2), "power exponent");
                have_p = true;
            } else if (field.rfind("c=", 0) == 0) {
                c = parse_real(field.substr(2), "power scale");
            } else {
                throw std::invalid_argument("unknown power field: '" + std::string(field) + "'");
            }
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
        if (!have_p)
            throw std::invalid_argument("power grammar requires p=<real>");
        return OrliczFunction::power(p, c);
    }
    if (text.rfind("pl:", 0) == 0) {
        std::string_view body = text.substr(3);
        std::optional<double> slope, bound;
        while (true) {
            std::size_t semi = body.rfind(';');
            if (semi == std::string_view::npos)
                break;
            std::string_view tail = body.substr(semi + 1);
            if (tail.rfind("slope=", 0) == 0)
                slope = parse_real(tail.substr(6), "final slope");
            else if (tail.rfind("bound=", 0) == 0)
                bound = parse_real(tail.substr(6), "domain bound");
            else
                throw std::invalid_argument("unknown pl suffix: '" + std::string(tail) + "'");
            body = body.substr(0, semi);
        }
        nlohmann::json pts = nlohmann::json::parse(body, nullptr, false);
        if (pts.is_discarded() || !pts.is_array())
            throw std::invalid_argument("pl grammar expects a JSON array of [t,v] pairs");
        std::vector<double> t, v;
        for (const auto& pair : pts) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("pl breakpoints must be [t,v] pairs");
            t.push_back(pair[0].get<double>());
            v.push_back(pair[1].get<double>());
        }
        if (t.size() < 2 && !slope)
            throw std::invalid_argument("pl grammar needs two breakpoints or an explicit slope");
        double fs = slope ? *slope : (v.back() - v[v.size() - 2]) / (t.back() - t[t.size() - 2]);
        return OrliczFunction::piecewise_linear(std::move(t), std::move(v), fs, bound);
    }
    throw std::invalid_argument("unknown Orlicz grammar: '" + std::string(text) + "'");
}

std::string format_orlicz(const OrliczFunction& M) {
    std::ostringstream os;
    os.precision(17);
    if (M.is_power()) {
        const auto& f = M.as_power();
        os << "power:p=" << f.p;
        if (f.c != 1.0)
            os << ",c=" << f.c;
        return os.str();
    }
    const auto& f = M.as_piecewise_linear();
    os << "pl:[";
    for (std::size_t j = 0; j < f.t.size(); ++j) {
        if (j)
            os << ",";
        os << "[" << f.t[j] << "," << f.v[j] << "]";
    }
    os << "]";
    os << ";slope=" << f.final_slope;
    if (f.domain_bound)
        os << ";bound=" << *f.domain_bound;
    return os.str();
}

} // namespace ol
