#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "characters.hpp"
#include "hurwitz.hpp"
#include "interval.hpp"
#include "lfun.hpp"

namespace dlbound {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
} // namespace exit_code

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class Evaluator { hurwitz, partial_sum, both };
enum class BoundName { theorem1, theorem2, corollary, lemma };

inline std::string_view to_string(BoundName b)
{
    switch (b) {
    case BoundName::theorem1: return "theorem1";
    case BoundName::theorem2: return "theorem2";
    case BoundName::corollary: return "corollary";
    default: return "lemma";
    }
}

struct SweepConfig
{
    std::uint64_t q_min = 3;
    std::uint64_t q_max = 10;
    double t_start = 1e-3;
    double t_stop = 1e3;
    std::size_t t_count = 40;
    bool t_log_spacing = true;
    /// Explicit t values; when non-empty they replace the generated grid.
    std::vector<double> t_values;
    double target_radius = 1e-6;
    Evaluator evaluator = Evaluator::hurwitz;
    std::vector<BoundName> bounds_checked{BoundName::theorem1, BoundName::theorem2, BoundName::corollary};
    std::string output_path;
    unsigned parallelism = 1;
    /// Ceiling on the partial-summation series length.
    std::uint64_t psum_max_terms = 5'000'000;
    unsigned em_order = 1;

    void validate() const
    {
        if (q_min < 3) {
            throw ConfigError("q_min must be >= 3");
        }
        if (q_max < q_min) {
            throw ConfigError("q_max must be >= q_min");
        }
        if (t_values.empty()) {
            if (!(t_start > 0.0) || !(t_stop >= t_start) || t_count < 1) {
                throw ConfigError("t grid requires 0 < t_start <= t_stop and t_count >= 1");
            }
        } else if (std::any_of(t_values.begin(), t_values.end(), [](double t) { return !(t > 0.0) || !std::isfinite(t); })) {
            throw ConfigError("t_values must be finite and positive");
        }
        if (!(target_radius > 0.0)) {
            throw ConfigError("target_radius must be positive");
        }
        if (parallelism < 1) {
            throw ConfigError("parallelism must be >= 1");
        }
        if (bounds_checked.empty()) {
            throw ConfigError("bounds must name at least one bound");
        }
    }

    [[nodiscard]] std::vector<double> t_grid() const
    {
        if (!t_values.empty()) {
            return t_values;
        }
        std::vector<double> out(t_count);
        for (std::size_t i = 0; i < t_count; ++i) {
            const double f = t_count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(t_count - 1);
            out[i] = t_log_spacing ? std::exp(std::log(t_start) + f * (std::log(t_stop) - std::log(t_start)))
                                   : t_start + f * (t_stop - t_start);
        }
        out.front() = t_start;
        out.back() = t_stop;
        return out;
    }
};

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (auto v = trim(item); !v.empty()) {
            out.push_back(v);
        }
    }
    return out;
}

inline double parse_double(const std::string& key, const std::string& v)
{
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("bad number for " + key + ": " + v);
    }
    return x;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v)
{
    std::uint64_t x = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end) {
        // accept integral values written in floating notation, e.g. 1e4
        const double d = parse_double(key, v);
        if (d < 0 || d != std::floor(d) || d > 9e15) {
            throw ConfigError("bad integer for " + key + ": " + v);
        }
        return static_cast<std::uint64_t>(d);
    }
    return x;
}

} // namespace detail

/// Flat "key = value" document; '#' starts a comment.
inline SweepConfig parse_sweep_config(std::istream& in)
{
    SweepConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = detail::trim(std::string_view(body).substr(0, eq));
        const auto value = detail::trim(std::string_view(body).substr(eq + 1));
        if (key == "q_min") {
            cfg.q_min = detail::parse_uint(key, value);
        } else if (key == "q_max") {
            cfg.q_max = detail::parse_uint(key, value);
        } else if (key == "t_start") {
            cfg.t_start = detail::parse_double(key, value);
        } else if (key == "t_stop") {
            cfg.t_stop = detail::parse_double(key, value);
        } else if (key == "t_count") {
            cfg.t_count = detail::parse_uint(key, value);
        } else if (key == "t_spacing") {
            if (value != "log" && value != "linear") {
                throw ConfigError("t_spacing must be log or linear");
            }
            cfg.t_log_spacing = value == "log";
        } else if (key == "t_values") {
            cfg.t_values.clear();
            for (const auto& v : detail::split_list(value)) {
                cfg.t_values.push_back(detail::parse_double(key, v));
            }
        } else if (key == "target_radius") {
            cfg.target_radius = detail::parse_double(key, value);
        } else if (key == "evaluator") {
            if (value == "hurwitz") {
                cfg.evaluator = Evaluator::hurwitz;
            } else if (value == "partial_sum" || value == "psum") {
                cfg.evaluator = Evaluator::partial_sum;
            } else if (value == "both") {
                cfg.evaluator = Evaluator::both;
            } else {
                throw ConfigError("evaluator must be hurwitz, partial_sum or both");
            }
        } else if (key == "bounds") {
            cfg.bounds_checked.clear();
            for (const auto& v : detail::split_list(value)) {
                bool found = false;
                for (auto b : {BoundName::theorem1, BoundName::theorem2, BoundName::corollary, BoundName::lemma}) {
                    if (v == to_string(b)) {
                        cfg.bounds_checked.push_back(b);
                        found = true;
                    }
                }
                if (!found) {
                    throw ConfigError("unknown bound: " + v);
                }
            }
        } else if (key == "output_path") {
            cfg.output_path = value;
        } else if (key == "parallelism") {
            cfg.parallelism = static_cast<unsigned>(detail::parse_uint(key, value));
        } else if (key == "psum_max_terms") {
            cfg.psum_max_terms = detail::parse_uint(key, value);
        } else if (key == "em_order") {
            cfg.em_order = static_cast<unsigned>(detail::parse_uint(key, value));
        } else {
            throw ConfigError("unknown key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    return parse_sweep_config(in);
}

enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    default: return "INCONCLUSIVE";
    }
}

struct BoundReportRow
{
    std::uint64_t q = 0;
    std::uint64_t chi_index = 0;
    std::string chi_exponents;
    double t = 0.0;
    LMethod method = LMethod::hurwitz_decomposition;
    double l_abs_mid = std::numeric_limits<double>::quiet_NaN();
    double l_abs_radius = std::numeric_limits<double>::infinity();
    BoundName bound = BoundName::theorem2;
    double bound_value = 0.0;
    /// bound - (|L| + radius), rounded towards -inf.
    double margin = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::inconclusive;
    /// Why a row carries no value or a radius above target; not part of the CSV.
    std::string note;
};

/// Interval enclosure of the named bound, or nothing when (q, t) is outside its hypothesis.
inline std::optional<Interval> bound_enclosure(BoundName b, std::uint64_t q, double t)
{
    switch (b) {
    case BoundName::theorem1:
        if (!(t > 50.0)) {
            return std::nullopt;
        }
        theorem1_truncation(t, 3.0, q, q); // worst shift a = q; throws if the argument's N drops below 1
        return theorem1_bound<Interval>(q, t);
    case BoundName::theorem2: return theorem2_bound<Interval>(q, t);
    case BoundName::corollary: return corollary_bound<Interval>(q, t);
    case BoundName::lemma: {
        // (1/q) sum_{(a,q)=1} (log t + q/a), the L-bound the Hurwitz lemma yields
        if (!(t > 50.0)) {
            return std::nullopt;
        }
        Interval sum(0.0);
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) == 1) {
                sum = sum + Interval(1.0) / Interval(static_cast<double>(a));
            }
        }
        const Interval phi_ratio = Interval(static_cast<double>(totient(q))) / Interval(static_cast<double>(q));
        return phi_ratio * log(Interval(t)) + sum;
    }
    }
    return std::nullopt;
}

/// |L| ± radius compared against a bound enclosure.
inline Verdict judge(double abs_mid, double abs_radius, const Interval& bound)
{
    if (!std::isfinite(abs_mid) || !std::isfinite(abs_radius)) {
        return Verdict::inconclusive;
    }
    const Interval value = Interval(abs_mid) + Interval(-abs_radius, abs_radius);
    if (value.hi() < bound.lo()) {
        return Verdict::pass;
    }
    if (value.lo() > bound.hi()) {
        return Verdict::fail;
    }
    return Verdict::inconclusive;
}

inline void fill_rows(std::vector<BoundReportRow>& out, const SweepConfig& cfg, std::uint64_t q,
                      const DirichletCharacter& chi, double t, LMethod method,
                      const std::optional<ErrorBoundedComplex>& value, const std::string& note = {})
{
    for (auto b : cfg.bounds_checked) {
        const auto enclosure = bound_enclosure(b, q, t);
        if (!enclosure) {
            continue;
        }
        BoundReportRow row;
        row.q = q;
        row.chi_index = chi.index();
        row.chi_exponents = chi.label();
        row.t = t;
        row.method = method;
        row.bound = b;
        row.bound_value = enclosure->mid();
        row.note = note;
        if (value) {
            const auto [m, r] = value->modulus();
            row.l_abs_mid = m;
            row.l_abs_radius = r;
            row.margin = (Interval(enclosure->lo()) - (Interval(m) + Interval(r))).lo();
            row.verdict = judge(m, r, *enclosure);
        }
        out.push_back(std::move(row));
    }
}

struct SweepSummary
{
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t inconclusive = 0;
    std::optional<BoundReportRow> min_margin_row;
};

struct SweepResult
{
    std::vector<BoundReportRow> rows;
    SweepSummary summary;

    [[nodiscard]] int exit_status() const
    {
        if (summary.fail > 0) {
            return exit_code::failure;
        }
        return summary.inconclusive > 0 ? exit_code::inconclusive : exit_code::ok;
    }
};

/// All rows for one (q, t) grid point.
inline std::vector<BoundReportRow> sweep_point(const SweepConfig& cfg, const std::shared_ptr<const UnitGroupStructure>& group,
                                               const std::vector<DirichletCharacter>& chars, double t)
{
    std::vector<BoundReportRow> rows;
    const auto q = group->modulus();
    if (cfg.evaluator != Evaluator::partial_sum) {
        std::optional<HurwitzTable> table;
        std::string note;
        try {
            table.emplace(group, t, cfg.target_radius, cfg.em_order);
        } catch (const TruncationUnreachable& e) {
            note = e.what(); // rows stay INCONCLUSIVE with no value
        }
        for (const auto& chi : chars) {
            std::optional<ErrorBoundedComplex> v;
            if (table) {
                v = table->combine(chi);
            }
            fill_rows(rows, cfg, q, chi, t, LMethod::hurwitz_decomposition, v, note);
        }
    }
    if (cfg.evaluator != Evaluator::hurwitz) {
        // past the cap the rigorous radius is larger than the target but still honest
        const auto cap = std::max<std::uint64_t>(q, cfg.psum_max_terms / q * q);
        std::uint64_t n = cap;
        try {
            n = std::min(n, partial_sum_truncation(q, t, cfg.target_radius));
        } catch (const TruncationUnreachable&) {
        }
        const std::string note = n == cap && partial_sum_tail_bound(q, t, n, 0.0) > cfg.target_radius
                                     ? "partial-summation length capped at " + std::to_string(n)
                                     : std::string();
        const auto points = l_eval_partial_sum_batch(chars, t, n);
        for (const auto& p : points) {
            fill_rows(rows, cfg, q, p.chi, t, LMethod::partial_summation, p.value, note);
        }
    }
    return rows;
}

inline SweepSummary summarize(const std::vector<BoundReportRow>& rows)
{
    SweepSummary s;
    for (const auto& r : rows) {
        switch (r.verdict) {
        case Verdict::pass: ++s.pass; break;
        case Verdict::fail: ++s.fail; break;
        default: ++s.inconclusive; break;
        }
        if (std::isfinite(r.margin) && (!s.min_margin_row || r.margin < s.min_margin_row->margin)) {
            s.min_margin_row = r;
        }
    }
    return s;
}

inline SweepResult run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    const auto ts = cfg.t_grid();
    struct Job
    {
        std::size_t q_slot;
        double t;
    };
    std::vector<std::shared_ptr<const UnitGroupStructure>> groups;
    std::vector<std::vector<DirichletCharacter>> chars;
    std::vector<Job> jobs;
    for (auto q = cfg.q_min; q <= cfg.q_max; ++q) {
        groups.push_back(build_unit_group(q));
        chars.push_back(enumerate_characters(groups.back(), false));
        for (double t : ts) {
            jobs.push_back({groups.size() - 1, t});
        }
    }

    std::vector<std::vector<BoundReportRow>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (std::size_t i = next++; i < jobs.size() && !failed; i = next++) {
            try {
                results[i] = sweep_point(cfg, groups[jobs[i].q_slot], chars[jobs[i].q_slot], jobs[i].t);
            } catch (...) {
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
            }
        }
    };
    const unsigned n_workers = std::max(1U, std::min<unsigned>(cfg.parallelism, static_cast<unsigned>(jobs.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    SweepResult out;
    for (auto& r : results) {
        std::move(r.begin(), r.end(), std::back_inserter(out.rows));
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const BoundReportRow& a, const BoundReportRow& b) {
        return std::tie(a.q, a.chi_index, a.t, a.method, a.bound) < std::tie(b.q, b.chi_index, b.t, b.method, b.bound);
    });
    out.summary = summarize(out.rows);
    return out;
}

/// 17 significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline constexpr std::string_view csv_header =
    "q,chi_exponents,t,method,l_abs_mid,l_abs_radius,bound_name,bound_value,margin,verdict";

inline void write_csv(std::ostream& os, const std::vector<BoundReportRow>& rows)
{
    os << csv_header << '\n';
    for (const auto& r : rows) {
        os << r.q << ',' << r.chi_exponents << ',' << format_number(r.t) << ',' << to_string(r.method) << ','
           << format_number(r.l_abs_mid) << ',' << format_number(r.l_abs_radius) << ',' << to_string(r.bound) << ','
           << format_number(r.bound_value) << ',' << format_number(r.margin) << ',' << to_string(r.verdict) << '\n';
    }
}

inline std::string csv_string(const std::vector<BoundReportRow>& rows)
{
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

struct IdentityCheck
{
    std::string name;
    std::string detail;
    bool ok = false;
};

struct IdentityReport
{
    std::vector<IdentityCheck> checks;

    [[nodiscard]] bool all_ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
    }
};

namespace detail {

inline std::string describe(cplx s)
{
    std::ostringstream os;
    os << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i";
    return os.str();
}

} // namespace detail

/// Σ_{a=1}^{q} ζ(s, a/q) against q^s ζ(s, 1).
inline IdentityCheck check_multiplication_theorem(std::uint64_t q, cplx s, double target_radius = 1e-9)
{
    ErrorBoundedComplex lhs(cplx(0.0, 0.0));
    for (std::uint64_t a = 1; a <= q; ++a) {
        lhs += hurwitz_zeta(s, HurwitzShift::rational(a, q), target_radius);
    }
    const auto rhs = real_pow(static_cast<double>(q), s) * hurwitz_zeta(s, HurwitzShift::real(1.0), target_radius);
    std::ostringstream os;
    os << "q=" << q << " s=" << detail::describe(s) << " gap=" << std::abs(lhs.mid() - rhs.mid())
       << " radii=" << lhs.radius() + rhs.radius();
    return {"multiplication", os.str(), overlaps(lhs, rhs)};
}

/// ζ(s, 1/2) against (2^s - 1) ζ(s, 1).
inline IdentityCheck check_half_shift(cplx s, double target_radius = 1e-9)
{
    const auto lhs = hurwitz_zeta(s, HurwitzShift::rational(1, 2), target_radius);
    const auto factor = real_pow(2.0, s) - ErrorBoundedComplex(cplx(1.0, 0.0));
    const auto rhs = factor * hurwitz_zeta(s, HurwitzShift::real(1.0), target_radius);
    std::ostringstream os;
    os << "s=" << detail::describe(s) << " gap=" << std::abs(lhs.mid() - rhs.mid()) << " radii=" << lhs.radius() + rhs.radius();
    return {"half-shift", os.str(), overlaps(lhs, rhs)};
}

/// Σ_{a=1}^{q} χ(a) vanishes for every non-principal χ mod q.
inline IdentityCheck check_orthogonality(std::uint64_t q)
{
    double worst = 0.0;
    bool ok = true;
    for (const auto& chi : enumerate_characters(q, false)) {
        BallAccumulator acc;
        for (std::uint64_t a = 1; a <= q; ++a) {
            acc.add(char_eval(chi, static_cast<std::int64_t>(a)).to_complex());
        }
        const auto sum = acc.result();
        worst = std::max(worst, std::abs(sum.mid()));
        ok = ok && sum.contains(cplx(0.0, 0.0)) && sum.radius() < 1e-12;
    }
    return {"orthogonality", "q=" + std::to_string(q) + " max|sum|=" + std::to_string(worst), ok};
}

/// Hurwitz-decomposition and partial-summation values must overlap for every χ mod q.
inline IdentityCheck check_cross_evaluators(std::uint64_t q, double t, double hurwitz_radius = 1e-8,
                                            double psum_radius = 1e-3)
{
    const auto group = build_unit_group(q);
    const auto chars = enumerate_characters(group, false);
    const HurwitzTable table(group, t, hurwitz_radius);
    const auto psum = l_eval_partial_sum_batch(chars, t, partial_sum_truncation(q, t, psum_radius));
    bool ok = true;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const LPoint h{q, chars[i], t, table.combine(chars[i]), LMethod::hurwitz_decomposition, table.max_truncation()};
        if (cross_check(h, psum[i]) != CrossCheck::consistent) {
            ok = false;
            ++bad;
        }
    }
    std::ostringstream os;
    os << "q=" << q << " t=" << t << " characters=" << chars.size() << " inconsistent=" << bad;
    return {"cross-evaluator", os.str(), ok};
}

inline IdentityReport run_identities(std::uint64_t q_max, const std::vector<cplx>& s_list,
                                     const std::vector<double>& cross_ts = {0.5, 5.0, 55.0})
{
    if (q_max < 2) {
        throw ConfigError("identities: q_max must be >= 2");
    }
    IdentityReport report;
    for (auto s : s_list) {
        report.checks.push_back(check_half_shift(s));
        for (std::uint64_t q = 2; q <= q_max; ++q) {
            report.checks.push_back(check_multiplication_theorem(q, s));
        }
    }
    for (std::uint64_t q = 3; q <= q_max; ++q) {
        report.checks.push_back(check_orthogonality(q));
        for (double t : cross_ts) {
            report.checks.push_back(check_cross_evaluators(q, t));
        }
    }
    return report;
}

} // namespace dlbound
