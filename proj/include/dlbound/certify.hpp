#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "interval.hpp"

namespace dlbound {

enum class ResidualKind { backlund, partial_summation, gamma_glue, theorem2_glue };

inline std::string_view to_string(ResidualKind k)
{
    switch (k) {
    case ResidualKind::backlund: return "backlund";
    case ResidualKind::partial_summation: return "psum";
    case ResidualKind::gamma_glue: return "gamma-glue";
    default: return "t2-glue";
    }
}

inline ResidualKind residual_kind_from_string(std::string_view s)
{
    for (auto k : {ResidualKind::backlund, ResidualKind::partial_summation, ResidualKind::gamma_glue,
                   ResidualKind::theorem2_glue}) {
        if (s == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown residual kind: " + std::string(s));
}

/// Rectangle in (q, t). Single-variable residuals ignore q.
struct Region
{
    double q_lo = 0.0;
    double q_hi = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct ResidualSpec
{
    ResidualKind kind = ResidualKind::backlund;
    double m = 0.0;
    double b = 0.0;
    Region region;
    /// Also certify beyond t_hi (and beyond q_hi for two-variable residuals).
    bool include_tails = true;
};

enum class CellMethod { monotone_endpoint, interval_extension, sampled };

inline std::string_view to_string(CellMethod m)
{
    switch (m) {
    case CellMethod::monotone_endpoint: return "monotone-endpoint";
    case CellMethod::interval_extension: return "interval-extension";
    default: return "sampled";
    }
}

struct CertifiedCell
{
    Interval q;
    Interval t;
    /// Upper bound of the residual over the cell (strictly negative when certified).
    double upper = 0.0;
    CellMethod method = CellMethod::monotone_endpoint;
    bool tail = false;
};

/// failed: a point where the residual is provably >= 0 was found.
/// inconclusive: neither proof nor witness within the cell budget / tolerance.
/// evidence_only: covered, but some cells rest on corner samples only.
enum class CertificateStatus { certified, failed, inconclusive, evidence_only };

inline std::string_view to_string(CertificateStatus s)
{
    switch (s) {
    case CertificateStatus::certified: return "certified";
    case CertificateStatus::failed: return "failed";
    case CertificateStatus::inconclusive: return "inconclusive";
    default: return "evidence_only";
    }
}

inline CertificateStatus certificate_status_from_string(std::string_view s)
{
    for (auto v : {CertificateStatus::certified, CertificateStatus::failed, CertificateStatus::inconclusive,
                   CertificateStatus::evidence_only}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    throw std::invalid_argument("unknown certificate status: " + std::string(s));
}

struct ResidualCertificate
{
    ResidualSpec spec;
    double tolerance = 0.0;
    CertificateStatus status = CertificateStatus::failed;
    std::vector<CertifiedCell> cells;
    std::vector<CertifiedCell> tails;
    std::optional<CertifiedCell> failing_cell;
    std::string message;

    /// The cell whose upper bound is closest to zero (the certified minimum margin).
    [[nodiscard]] std::optional<CertifiedCell> worst_cell() const
    {
        std::optional<CertifiedCell> worst;
        for (const auto* list : {&cells, &tails}) {
            for (const auto& c : *list) {
                if (!worst || c.upper > worst->upper) {
                    worst = c;
                }
            }
        }
        return worst;
    }
};

struct CertifyOptions
{
    std::size_t max_cells = 2'000'000;
    /// At minimum width, fall back to the natural interval extension when
    /// monotonicity cannot be decided. Without it such cells are only sampled.
    bool interval_fallback = true;
};

namespace detail {

using IntervalFn = std::function<Interval(const Interval& q, const Interval& t)>;

// One additive piece of a residual, with explicitly coded partial derivatives
// (left empty when the term does not depend on that variable).
struct ResidualTerm
{
    IntervalFn value;
    IntervalFn d_dt;
    IntervalFn d_dq;
};

struct ResidualModel
{
    bool uses_q = false;
    std::vector<ResidualTerm> terms;
};

inline ResidualModel make_model(const ResidualSpec& spec)
{
    const Interval gamma = constants::euler_gamma_enclosure();
    const Interval m(spec.m);
    const Interval b(spec.b);
    ResidualModel model;
    switch (spec.kind) {
    case ResidualKind::backlund: {
        // -log m + γ + 1/t + m/(2(t-m)) + (m^2/24)(1 + (1+m)/(t-m))(1 + (4+m)/(t-m))
        const Interval c1 = Interval(1.0) + m;
        const Interval c4 = Interval(4.0) + m;
        const Interval scale = m * m / Interval(24.0);
        model.terms.push_back({[=](auto&, auto&) { return -log(m) + gamma; }, {}, {}});
        model.terms.push_back({[](auto&, const Interval& t) { return t.reciprocal(); },
                               [](auto&, const Interval& t) { return -(t.reciprocal() * t.reciprocal()); }, {}});
        model.terms.push_back({[=](auto&, const Interval& t) { return m / (Interval(2.0) * (t - m)); },
                               [=](auto&, const Interval& t) {
                                   const Interval inv = (t - m).reciprocal();
                                   return -(m / Interval(2.0)) * inv * inv;
                               },
                               {}});
        model.terms.push_back({[=](auto&, const Interval& t) {
                                   const Interval inv = (t - m).reciprocal();
                                   return scale * (Interval(1.0) + c1 * inv) * (Interval(1.0) + c4 * inv);
                               },
                               [=](auto&, const Interval& t) {
                                   const Interval inv = (t - m).reciprocal();
                                   const Interval inv2 = inv * inv;
                                   return -(scale * (c1 * inv2 * (Interval(1.0) + c4 * inv) +
                                                     c4 * inv2 * (Interval(1.0) + c1 * inv)));
                               },
                               {}});
        break;
    }
    case ResidualKind::partial_summation: {
        // -log m + (γ - 1) + m/2 + (m/2) F / D,  F = 2 + m + q(1-b),  D = q(t+b) - m
        model.uses_q = true;
        const Interval half_m = m / Interval(2.0);
        const Interval one_minus_b = Interval(1.0) - b;
        const Interval b_minus_1_m = (b - Interval(1.0)) * m;
        const Interval two_plus_m = Interval(2.0) + m;
        auto f = [=](const Interval& q) { return two_plus_m + q * one_minus_b; };
        auto d = [=](const Interval& q, const Interval& t) { return q * (t + b) - m; };
        model.terms.push_back({[=](auto&, auto&) { return -log(m) + (gamma - Interval(1.0)) + half_m; }, {}, {}});
        model.terms.push_back({[=](const Interval& q, const Interval& t) { return half_m * f(q) / d(q, t); },
                               [=](const Interval& q, const Interval& t) {
                                   const Interval inv = d(q, t).reciprocal();
                                   return -(half_m * f(q) * q * inv * inv);
                               },
                               [=](const Interval& q, const Interval& t) {
                                   const Interval inv = d(q, t).reciprocal();
                                   return half_m * (b_minus_1_m - two_plus_m * (t + b)) * inv * inv;
                               }});
        break;
    }
    case ResidualKind::gamma_glue: {
        // γ - log(e^γ + 109/(2t))
        const Interval eg = exp(gamma);
        const Interval c = Interval(109.0) / Interval(2.0);
        model.terms.push_back({[=](auto&, auto&) { return gamma; }, {}, {}});
        model.terms.push_back({[=](auto&, const Interval& t) { return -log(eg + c * t.reciprocal()); },
                               [=](auto&, const Interval& t) {
                                   const Interval inv = t.reciprocal();
                                   return c * inv * inv * (eg + c * inv).reciprocal();
                               },
                               {}});
        break;
    }
    case ResidualKind::theorem2_glue: {
        // 1 + log(t + 14/5) - log(e^γ t + 109/2)
        const Interval eg = exp(gamma);
        const Interval a = Interval(14.0) / Interval(5.0);
        const Interval c = Interval(109.0) / Interval(2.0);
        model.terms.push_back({[](auto&, auto&) { return Interval(1.0); }, {}, {}});
        model.terms.push_back({[=](auto&, const Interval& t) { return log(t + a) - log(eg * t + c); },
                               [=](auto&, const Interval& t) {
                                   return (c - a * eg) * ((t + a) * (eg * t + c)).reciprocal();
                               },
                               {}});
        break;
    }
    }
    return model;
}

inline void validate_region(const ResidualSpec& spec)
{
    const auto& r = spec.region;
    if (!(r.t_lo <= r.t_hi) || !std::isfinite(r.t_hi)) {
        throw std::invalid_argument("certify: t range must be finite and nonempty");
    }
    switch (spec.kind) {
    case ResidualKind::backlund:
        if (!(spec.m > 0.0 && r.t_lo > spec.m)) {
            throw std::invalid_argument("certify backlund: requires t_min > m > 0");
        }
        break;
    case ResidualKind::partial_summation:
        if (!(spec.m > 0.0 && r.q_lo > 0.0 && r.q_lo <= r.q_hi && std::isfinite(r.q_hi) && r.t_lo >= 0.0)) {
            throw std::invalid_argument("certify psum: requires m > 0, 0 < q_min <= q_max, t_min >= 0");
        }
        if (!(r.q_lo * (r.t_lo + spec.b) > spec.m)) {
            throw std::invalid_argument("certify psum: requires 2q(t+b) > 2m on the region");
        }
        break;
    case ResidualKind::gamma_glue:
        if (!(r.t_lo > 0.0)) {
            throw std::invalid_argument("certify gamma-glue: requires t_min > 0");
        }
        break;
    case ResidualKind::theorem2_glue:
        if (!(r.t_lo >= 0.0)) {
            throw std::invalid_argument("certify t2-glue: requires t_min >= 0");
        }
        break;
    }
}

enum class Monotone { decreasing, increasing, unknown };

inline Monotone direction(const IntervalFn& derivative, const Interval& q, const Interval& t)
{
    if (!derivative) {
        return Monotone::decreasing; // constant in this variable: any endpoint
    }
    const Interval d = derivative(q, t);
    if (d.hi() <= 0.0) {
        return Monotone::decreasing;
    }
    if (d.lo() >= 0.0) {
        return Monotone::increasing;
    }
    return Monotone::unknown;
}

/// A finite point inside x used to probe which variable a derivative depends on.
inline double representative(const Interval& x)
{
    if (std::isinf(x.hi())) {
        return std::isinf(x.lo()) ? 0.0 : 2.0 * std::abs(x.lo()) + 1.0;
    }
    return x.mid();
}

struct CellBound
{
    std::optional<double> upper;
    bool blame_q = false;
    bool blame_t = false;
};

/// Sup of every term at its monotone corner; empty when some direction is undecided.
inline CellBound monotone_bound(const ResidualModel& model, const Interval& q, const Interval& t)
{
    CellBound out;
    Interval total(0.0);
    bool decided = true;
    for (const auto& term : model.terms) {
        const auto dt = direction(term.d_dt, q, t);
        const auto dq = model.uses_q ? direction(term.d_dq, q, t) : Monotone::decreasing;
        if (dt == Monotone::unknown) {
            decided = false;
            // derivative decided once q is pinned: its sign is driven by q
            if (model.uses_q && direction(term.d_dt, Interval(representative(q)), t) != Monotone::unknown) {
                out.blame_q = true;
            } else {
                out.blame_t = true;
            }
        }
        if (dq == Monotone::unknown) {
            decided = false;
            if (direction(term.d_dq, q, Interval(representative(t))) != Monotone::unknown) {
                out.blame_t = true;
            } else {
                out.blame_q = true;
            }
        }
        if (decided) {
            const double tc = dt == Monotone::decreasing ? t.lo() : t.hi();
            const double qc = dq == Monotone::decreasing ? q.lo() : q.hi();
            total = total + term.value(Interval(qc), Interval(tc));
        }
    }
    if (decided) {
        out.upper = total.hi();
    }
    return out;
}

inline double interval_extension_bound(const ResidualModel& model, const Interval& q, const Interval& t)
{
    Interval total(0.0);
    for (const auto& term : model.terms) {
        total = total + term.value(q, t);
    }
    return total.hi();
}

inline std::pair<Interval, Interval> halves(const Interval& x)
{
    double split = x.mid();
    if (std::isinf(x.hi())) {
        split = std::max(2.0 * x.lo(), x.lo() + 1.0);
    }
    return {Interval(x.lo(), split), Interval(split, x.hi())};
}

} // namespace detail

/// Adaptive bisection proving the residual negative on spec.region (and its tails).
/// Each cell is bounded by evaluating every term at the corner its coded partial
/// derivatives point to; cells whose monotonicity is undecided or whose bound is
/// not negative are split until their width falls below subdivision_tolerance.
inline ResidualCertificate certify_residual_negative(const ResidualSpec& spec, double subdivision_tolerance,
                                                     const CertifyOptions& options = {})
{
    detail::validate_region(spec);
    if (!(subdivision_tolerance > 0.0)) {
        throw std::invalid_argument("certify: subdivision tolerance must be positive");
    }
    const auto model = detail::make_model(spec);
    const auto& r = spec.region;

    ResidualCertificate cert;
    cert.spec = spec;
    cert.tolerance = subdivision_tolerance;
    cert.status = CertificateStatus::certified;

    struct Pending
    {
        Interval q;
        Interval t;
        bool tail;
    };
    const Interval q_main = model.uses_q ? Interval(r.q_lo, r.q_hi) : Interval(0.0);
    std::vector<Pending> stack;
    if (spec.include_tails) {
        if (model.uses_q) {
            stack.push_back({Interval(r.q_hi, Interval::inf), Interval(r.t_lo, r.t_hi), true});
            stack.push_back({Interval(r.q_lo, Interval::inf), Interval(r.t_hi, Interval::inf), true});
        } else {
            stack.push_back({q_main, Interval(r.t_hi, Interval::inf), true});
        }
    }
    stack.push_back({q_main, Interval(r.t_lo, r.t_hi), false});

    std::size_t processed = 0;
    bool sampled_any = false;
    // Stop at a cell that cannot be proved negative; it is a disproof only if
    // some finite corner has a residual enclosure lying entirely in [0, inf).
    auto fail = [&](const CertifiedCell& cell, std::string why) {
        cert.status = CertificateStatus::inconclusive;
        cert.failing_cell = cell;
        cert.message = std::move(why);
        for (double qc : {cell.q.lo(), cell.q.hi()}) {
            for (double tc : {cell.t.lo(), cell.t.hi()}) {
                if (!std::isfinite(qc) || !std::isfinite(tc)) {
                    continue;
                }
                Interval total(0.0);
                for (const auto& term : model.terms) {
                    total = total + term.value(Interval(qc), Interval(tc));
                }
                if (total.lo() >= 0.0) {
                    cert.status = CertificateStatus::failed;
                    cert.message += "; residual >= " + std::to_string(total.lo()) + " at q=" + std::to_string(qc) +
                                    ", t=" + std::to_string(tc);
                    return;
                }
            }
        }
    };

    while (!stack.empty()) {
        if (++processed > options.max_cells) {
            cert.status = CertificateStatus::inconclusive;
            cert.message = "cell budget exhausted";
            break;
        }
        const Pending cell = stack.back();
        stack.pop_back();
        const bool q_splittable = model.uses_q && !(cell.q.width() < subdivision_tolerance);
        const bool t_splittable = !(cell.t.width() < subdivision_tolerance);
        auto split = [&](bool along_q) {
            const auto [a, b] = detail::halves(along_q ? cell.q : cell.t);
            // left/lower half on top so the region is explored in order
            if (along_q) {
                stack.push_back({b, cell.t, cell.tail});
                stack.push_back({a, cell.t, cell.tail});
            } else {
                stack.push_back({cell.q, b, cell.tail});
                stack.push_back({cell.q, a, cell.tail});
            }
        };
        auto split_widest = [&]() {
            if (q_splittable && (!t_splittable || cell.q.width() >= cell.t.width())) {
                split(true);
            } else {
                split(false);
            }
        };
        auto record = [&](double upper, CellMethod method) {
            (cell.tail ? cert.tails : cert.cells).push_back({cell.q, cell.t, upper, method, cell.tail});
        };

        const auto bound = detail::monotone_bound(model, cell.q, cell.t);
        if (bound.upper) {
            if (*bound.upper < 0.0) {
                record(*bound.upper, CellMethod::monotone_endpoint);
            } else if (q_splittable || t_splittable) {
                split_widest();
            } else {
                fail({cell.q, cell.t, *bound.upper, CellMethod::monotone_endpoint, cell.tail},
                     "nonnegative upper bound at minimum width");
                break;
            }
            continue;
        }
        if ((bound.blame_q && q_splittable) || (bound.blame_t && t_splittable)) {
            split(bound.blame_q && q_splittable);
            continue;
        }
        if (options.interval_fallback) {
            const double upper = detail::interval_extension_bound(model, cell.q, cell.t);
            if (upper < 0.0) {
                record(upper, CellMethod::interval_extension);
            } else if (q_splittable || t_splittable) {
                split_widest();
            } else {
                fail({cell.q, cell.t, upper, CellMethod::interval_extension, cell.tail},
                     "nonnegative upper bound at minimum width");
                break;
            }
            continue;
        }
        if (q_splittable || t_splittable) {
            split_widest();
            continue;
        }
        // undecided monotonicity and no fallback: corner samples only
        double worst = -Interval::inf;
        for (double qc : {cell.q.lo(), cell.q.hi()}) {
            for (double tc : {cell.t.lo(), cell.t.hi()}) {
                worst = std::max(worst, detail::interval_extension_bound(model, Interval(qc), Interval(tc)));
            }
        }
        if (worst < 0.0) {
            sampled_any = true;
            record(worst, CellMethod::sampled);
        } else {
            fail({cell.q, cell.t, worst, CellMethod::sampled, cell.tail}, "nonnegative sample at minimum width");
            break;
        }
    }
    if (cert.status == CertificateStatus::certified && sampled_any) {
        cert.status = CertificateStatus::evidence_only;
    }
    return cert;
}

/// Re-evaluates every recorded cell from scratch and checks that the cells tile
/// the region; true when the certificate stands on its own.
inline bool recheck_certificate(const ResidualCertificate& cert)
{
    if (cert.status != CertificateStatus::certified) {
        return false;
    }
    const auto model = detail::make_model(cert.spec);
    double area = 0.0;
    const auto& r = cert.spec.region;
    for (const auto* list : {&cert.cells, &cert.tails}) {
        for (const auto& c : *list) {
            double upper = 0.0;
            if (c.method == CellMethod::monotone_endpoint) {
                const auto b = detail::monotone_bound(model, c.q, c.t);
                if (!b.upper) {
                    return false;
                }
                upper = *b.upper;
            } else if (c.method == CellMethod::interval_extension) {
                upper = detail::interval_extension_bound(model, c.q, c.t);
            } else {
                return false;
            }
            if (!(upper < 0.0)) {
                return false;
            }
            if (!c.tail) {
                if (c.t.lo() < r.t_lo || c.t.hi() > r.t_hi) {
                    return false;
                }
                area += c.t.width() * (model.uses_q ? c.q.width() : 1.0);
            }
        }
    }
    const double full = (r.t_hi - r.t_lo) * (model.uses_q ? (r.q_hi - r.q_lo) : 1.0);
    return std::abs(area - full) <= 1e-9 * std::max(1.0, full);
}

namespace detail {

inline nlohmann::json endpoint_json(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

inline double endpoint_from_json(const nlohmann::json& j)
{
    if (j.is_string()) {
        return j.get<std::string>() == "inf" ? Interval::inf : -Interval::inf;
    }
    return j.get<double>();
}

inline nlohmann::json cell_json(const CertifiedCell& c)
{
    return {{"q", {endpoint_json(c.q.lo()), endpoint_json(c.q.hi())}},
            {"t", {endpoint_json(c.t.lo()), endpoint_json(c.t.hi())}},
            {"upper_bound", c.upper},
            {"method", std::string(to_string(c.method))},
            {"rounding", "outward: 1 ulp per arithmetic op, 4 ulp per log/exp"}};
}

inline CertifiedCell cell_from_json(const nlohmann::json& j, bool tail)
{
    CertifiedCell c;
    c.q = Interval(endpoint_from_json(j.at("q").at(0)), endpoint_from_json(j.at("q").at(1)));
    c.t = Interval(endpoint_from_json(j.at("t").at(0)), endpoint_from_json(j.at("t").at(1)));
    c.upper = j.at("upper_bound").get<double>();
    const auto method = j.at("method").get<std::string>();
    c.method = method == "monotone-endpoint"    ? CellMethod::monotone_endpoint
               : method == "interval-extension" ? CellMethod::interval_extension
                                                : CellMethod::sampled;
    c.tail = tail;
    return c;
}

} // namespace detail

/// Structured text form: one record per cell so each can be re-checked independently.
inline nlohmann::json certificate_to_json(const ResidualCertificate& cert)
{
    nlohmann::json j;
    j["kind"] = std::string(to_string(cert.spec.kind));
    j["m"] = cert.spec.m;
    j["b"] = cert.spec.b;
    j["region"] = {{"q_min", cert.spec.region.q_lo},
                   {"q_max", cert.spec.region.q_hi},
                   {"t_min", cert.spec.region.t_lo},
                   {"t_max", cert.spec.region.t_hi}};
    j["include_tails"] = cert.spec.include_tails;
    j["tolerance"] = cert.tolerance;
    j["status"] = std::string(to_string(cert.status));
    if (!cert.message.empty()) {
        j["message"] = cert.message;
    }
    if (auto w = cert.worst_cell()) {
        j["worst_cell"] = detail::cell_json(*w);
    }
    if (cert.failing_cell) {
        j["failing_cell"] = detail::cell_json(*cert.failing_cell);
    }
    j["cells"] = nlohmann::json::array();
    for (const auto& c : cert.cells) {
        j["cells"].push_back(detail::cell_json(c));
    }
    j["tails"] = nlohmann::json::array();
    for (const auto& c : cert.tails) {
        j["tails"].push_back(detail::cell_json(c));
    }
    return j;
}

inline ResidualCertificate certificate_from_json(const nlohmann::json& j)
{
    ResidualCertificate cert;
    cert.spec.kind = residual_kind_from_string(j.at("kind").get<std::string>());
    cert.spec.m = j.at("m").get<double>();
    cert.spec.b = j.at("b").get<double>();
    const auto& r = j.at("region");
    cert.spec.region = {r.at("q_min").get<double>(), r.at("q_max").get<double>(), r.at("t_min").get<double>(),
                        r.at("t_max").get<double>()};
    cert.spec.include_tails = j.at("include_tails").get<bool>();
    cert.tolerance = j.at("tolerance").get<double>();
    cert.status = certificate_status_from_string(j.at("status").get<std::string>());
    for (const auto& c : j.at("cells")) {
        cert.cells.push_back(detail::cell_from_json(c, false));
    }
    for (const auto& c : j.at("tails")) {
        cert.tails.push_back(detail::cell_from_json(c, true));
    }
    return cert;
}

} // namespace dlbound
