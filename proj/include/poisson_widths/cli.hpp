#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <chrono>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kernels.hpp"
#include "precision.hpp"
#include "skspline.hpp"
#include "threshold.hpp"
#include "tolerances.hpp"
#include "version.hpp"
#include "widths.hpp"

// Command layer shared by the binary and the tests: each run_* function
// takes parsed options and returns exit code, rendered output, and the run
// manifest. Nothing here touches stdout or the filesystem.
namespace poisson_widths {
namespace cli {

using ordered_json = nlohmann::ordered_json;

enum class output_format { csv, json };

struct common_options {
    std::string precision; // "", "auto", "standard64", "extended:<digits>"
    output_format format = output_format::csv;
    std::string output_path; // consumed by the binary, recorded here for the manifest
};

struct widths_options : common_options {
    std::string q;    // comma list
    std::string beta; // comma list
    std::string n;    // comma list of values or a..b ranges
};

struct nq_options : common_options {
    std::string q; // comma list
    long long cap = tol::default_threshold_cap;
};

struct verify_options : common_options {
    std::string q;
    std::string beta;
    int n = 0;
};

struct spline_options : common_options {
    std::string q;
    std::string beta;
    int n = 0;
    std::string y = "auto"; // "auto" resolves to the peak point y0
    int samples = 256;
};

struct run_result {
    int exit_code = 0;
    std::string output;
    ordered_json manifest;
};

// exit codes shared with the binary
inline constexpr int exit_ok = 0;
inline constexpr int exit_contradiction = 1; // a certified configuration failed to verify
inline constexpr int exit_degenerate = 2;    // near-singular / degenerate / ill-conditioned
inline constexpr int exit_usage = 64;

// ---------------------------------------------------------------------------
// small parsing and formatting helpers

namespace detail {

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    for (const std::string& t : out)
        if (t.empty())
            throw std::invalid_argument("empty entry in list '" + s + "'");
    return out;
}

inline double checked_double(const std::string& s)
{
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

inline int checked_int(const std::string& s)
{
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (pos != s.size() || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw std::invalid_argument("not an integer: '" + s + "'");
    return int(v);
}

// "1..4,8,12..14" -> {1,2,3,4,8,12,13,14}
inline std::vector<int> parse_order_list(const std::string& s)
{
    std::vector<int> out;
    for (const std::string& tok : split_list(s)) {
        const std::size_t dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(checked_int(tok));
            continue;
        }
        const int a = checked_int(tok.substr(0, dots));
        const int b = checked_int(tok.substr(dots + 2));
        if (b < a)
            throw std::invalid_argument("descending range '" + tok + "'");
        if (long(b) - a > 1000000)
            throw std::invalid_argument("range '" + tok + "' spans more than 10^6 rows");
        for (int v = a; v <= b; ++v)
            out.push_back(v);
    }
    for (int v : out)
        if (v < 1)
            throw std::invalid_argument("orders must be >= 1");
    return out;
}

// Builds the tier's value from the user's decimal token, not from a double
// round trip, so extended runs see the token at full precision.
template <typename Real>
Real real_from_token(const std::string& s)
{
    checked_double(s); // syntax and rough-range gate
    if constexpr (std::is_same_v<Real, double>)
        return checked_double(s);
    else
        return Real(s);
}

template <typename Real>
std::string format_real(const Real& x)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
    return os.str();
}

// JSON numbers are binary64; anything outside that range (the extended
// tiers produce magnitudes like 1e-590) is carried as its decimal string.
inline void put_real_string(ordered_json& obj, const std::string& key, const std::string& formatted)
{
    if (formatted.empty()) {
        obj[key] = nullptr;
        return;
    }
    const double d = std::strtod(formatted.c_str(), nullptr);
    const bool flushed = d == 0 && formatted.find_first_of("123456789") != std::string::npos;
    if (std::isfinite(d) && !flushed)
        obj[key] = d;
    else
        obj[key] = formatted;
}

inline ordered_json real_string_to_json(const std::string& formatted)
{
    ordered_json tmp;
    put_real_string(tmp, "v", formatted);
    return tmp["v"];
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// RFC 4180: comma separated, CRLF line endings.
class csv_builder {
public:
    csv_builder& row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += csv_escape(cells[i]);
        }
        text_ += "\r\n";
        return *this;
    }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

inline std::string iso8601_utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline const char* format_name(output_format f) { return f == output_format::csv ? "csv" : "json"; }

inline ordered_json make_manifest(const std::string& command, ordered_json parameters,
                                  precision_tier tier)
{
    ordered_json m;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    m["precision_mode"] = tier_name(tier);
    m["library_version"] = library_version();
    m["timestamp"] = iso8601_utc_now();
    return m;
}

// precedence: explicit flag, then POISSON_WIDTHS_PRECISION, then "auto"
inline std::string effective_precision_request(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("POISSON_WIDTHS_PRECISION"); env && *env)
        return env;
    return "auto";
}

inline precision_tier parse_tier(const std::string& request, bool auto_wants_extended)
{
    if (request == "auto")
        return auto_wants_extended ? precision_tier::extended50 : precision_tier::standard64;
    if (request == "standard64")
        return precision_tier::standard64;
    if (request == "extended")
        return precision_tier::extended50;
    if (request.rfind("extended:", 0) == 0)
        return tier_for_digits(checked_int(request.substr(9)));
    throw std::invalid_argument("unrecognized precision '" + request +
                                "' (expected auto, standard64, or extended:<digits>)");
}

inline const char* tag_name(closed_form_tag tag)
{
    switch (tag) {
    case closed_form_tag::beta_even: return "beta_even";
    case closed_form_tag::beta_odd: return "beta_odd";
    default: return "general";
    }
}

// Runs jobs [0, count) across hardware threads, each job writing only its
// own slot; assembly order is the input order by construction.
template <typename F>
void parallel_rows(std::size_t count, F&& job)
{
    const unsigned workers =
        unsigned((std::min<std::size_t>)(count, (std::max)(1u, std::thread::hardware_concurrency())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::vector<std::future<void>> fs;
    fs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        fs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers)
                job(i);
        }));
    for (auto& f : fs)
        f.get(); // rethrows the first failure
}

inline run_result usage_error(const std::string& message)
{
    return { exit_usage, "error: " + message + "\n", {} };
}

} // namespace detail

// ---------------------------------------------------------------------------
// widths

// One row per (q, beta, n). `certified` says whether the sign-condition
// threshold has been passed at this exact (q, n), decided in log space so it
// stays meaningful when the raw inequality sides underflow; `status` is
// "ok", "underflow" (some magnitude left the tier's range), or an error.
inline run_result run_widths(const widths_options& opt)
{
    struct row_data {
        std::string q, beta;
        int n = 0;
        std::string theta, value, tag, certified, status;
    };
    try {
        const std::vector<std::string> qs = detail::split_list(opt.q);
        const std::vector<std::string> betas = detail::split_list(opt.beta);
        const std::vector<int> ns = detail::parse_order_list(opt.n);

        bool wants_extended = false;
        for (const std::string& qtok : qs) {
            const double qd = detail::checked_double(qtok);
            if (!(qd > 0 && qd < 1))
                throw std::invalid_argument("q must lie in (0,1), got '" + qtok + "'");
            if (wants_extended_for_ratio(qd))
                wants_extended = true;
            for (int n : ns)
                if (wants_extended_for_order(qd, n))
                    wants_extended = true;
        }
        for (const std::string& btok : betas)
            detail::checked_double(btok);
        const precision_tier tier =
            detail::parse_tier(detail::effective_precision_request(opt.precision), wants_extended);

        std::vector<row_data> rows(qs.size() * betas.size() * ns.size());
        std::size_t idx = 0;
        for (const std::string& qtok : qs)
            for (const std::string& btok : betas)
                for (int n : ns) {
                    rows[idx].q = qtok;
                    rows[idx].beta = btok;
                    rows[idx].n = n;
                    ++idx;
                }

        with_tier(tier, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            detail::parallel_rows(rows.size(), [&](std::size_t i) {
                row_data& row = rows[i];
                try {
                    const kernel_params<Real> p(detail::real_from_token<Real>(row.q),
                                                detail::real_from_token<Real>(row.beta));
                    row.status = "ok";
                    const width_value<Real> w = best_approximation(p, row.n);
                    row.theta = detail::format_real(w.theta);
                    row.value = detail::format_real(w.value);
                    row.tag = detail::tag_name(w.tag);
                    if (row.n < 9) {
                        row.certified = "false"; // the threshold order never sits below 9
                    } else {
                        const inequality_sides<Real> sides = master_inequality(p.q, row.n);
                        row.certified = sides.holds ? "true" : "false";
                        if (sides.rhs == 0 || sides.lhs == 0)
                            row.status = "underflow"; // log-space verdict stands, raw sides don't
                    }
                } catch (const precision_underflow&) {
                    row.status = "underflow";
                } catch (const std::exception& e) {
                    row.status = std::string("error: ") + e.what();
                }
            });
        });

        std::string text;
        if (opt.format == output_format::csv) {
            detail::csv_builder csv;
            csv.row({ "q", "beta", "n", "theta", "value", "tag", "certified", "status" });
            for (const row_data& r : rows)
                csv.row({ r.q, r.beta, std::to_string(r.n), r.theta, r.value, r.tag, r.certified,
                          r.status });
            text = csv.str();
        } else {
            ordered_json doc;
            doc["command"] = "widths";
            doc["rows"] = ordered_json::array();
            for (const row_data& r : rows) {
                ordered_json jr;
                detail::put_real_string(jr, "q", r.q);
                detail::put_real_string(jr, "beta", r.beta);
                jr["n"] = r.n;
                detail::put_real_string(jr, "theta", r.theta);
                detail::put_real_string(jr, "value", r.value);
                jr["tag"] = r.tag;
                jr["certified"] = r.certified.empty() ? ordered_json(nullptr)
                                                      : ordered_json(r.certified == "true");
                jr["status"] = r.status;
                doc["rows"].push_back(std::move(jr));
            }
            text = doc.dump(2) + "\n";
        }

        ordered_json params;
        params["q"] = opt.q;
        params["beta"] = opt.beta;
        params["n"] = opt.n;
        params["format"] = detail::format_name(opt.format);
        return { exit_ok, std::move(text), detail::make_manifest("widths", std::move(params), tier) };
    } catch (const std::invalid_argument& e) {
        return detail::usage_error(e.what());
    }
}

// ---------------------------------------------------------------------------
// nq

// One row per q: the threshold order, the inequality sides there, whether
// the remainder-domination condition holds across n in [9,200], and the
// closed-form lower bound on the order. Rows that hit the scan cap keep the
// bound and are flagged instead of failing the run.
inline run_result run_nq(const nq_options& opt)
{
    struct row_data {
        std::string q;
        std::string n_q, lhs, rhs, z_all, bound, status;
    };
    try {
        const std::vector<std::string> qs = detail::split_list(opt.q);
        if (opt.cap < 9)
            throw std::invalid_argument("--cap must be >= 9");
        bool wants_extended = false;
        for (const std::string& qtok : qs) {
            const double qd = detail::checked_double(qtok);
            if (!(qd > 0 && qd < 1))
                throw std::invalid_argument("q must lie in (0,1), got '" + qtok + "'");
            if (wants_extended_for_ratio(qd))
                wants_extended = true;
        }
        const precision_tier tier =
            detail::parse_tier(detail::effective_precision_request(opt.precision), wants_extended);

        std::vector<row_data> rows(qs.size());
        with_tier(tier, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            detail::parallel_rows(rows.size(), [&](std::size_t i) {
                row_data& row = rows[i];
                row.q = qs[i];
                try {
                    const Real q = detail::real_from_token<Real>(qs[i]);
                    row.bound = detail::format_real(order_bound_n1(q));
                    bool z_all = true;
                    for (long long n = 9; n <= 200 && z_all; ++n)
                        z_all = condition_z(q, n).holds;
                    row.z_all = z_all ? "true" : "false";
                    const nq_result<Real> res = threshold_order(q, opt.cap);
                    row.n_q = std::to_string(res.n_q);
                    row.lhs = detail::format_real(res.at_nq.lhs);
                    row.rhs = detail::format_real(res.at_nq.rhs);
                    row.status = res.at_nq.rhs == 0 || res.at_nq.lhs == 0 ? "underflow" : "ok";
                } catch (const iteration_cap_exceeded& e) {
                    row.bound = detail::format_real(e.analytic_lower_bound);
                    row.status = "cap_exceeded";
                } catch (const std::exception& e) {
                    row.status = std::string("error: ") + e.what();
                }
            });
        });

        std::string text;
        if (opt.format == output_format::csv) {
            detail::csv_builder csv;
            csv.row({ "q", "n_q", "lhs", "rhs", "condition_z_9_200", "order_lower_bound", "status" });
            for (const row_data& r : rows)
                csv.row({ r.q, r.n_q, r.lhs, r.rhs, r.z_all, r.bound, r.status });
            text = csv.str();
        } else {
            ordered_json doc;
            doc["command"] = "nq";
            doc["rows"] = ordered_json::array();
            for (const row_data& r : rows) {
                ordered_json jr;
                detail::put_real_string(jr, "q", r.q);
                jr["n_q"] = r.n_q.empty() ? ordered_json(nullptr) : ordered_json(std::stoll(r.n_q));
                detail::put_real_string(jr, "lhs", r.lhs);
                detail::put_real_string(jr, "rhs", r.rhs);
                jr["condition_z_9_200"] = r.z_all == "true";
                detail::put_real_string(jr, "order_lower_bound", r.bound);
                jr["status"] = r.status;
                doc["rows"].push_back(std::move(jr));
            }
            text = doc.dump(2) + "\n";
        }

        ordered_json params;
        params["q"] = opt.q;
        params["cap"] = opt.cap;
        params["format"] = detail::format_name(opt.format);
        return { exit_ok, std::move(text), detail::make_manifest("nq", std::move(params), tier) };
    } catch (const std::invalid_argument& e) {
        return detail::usage_error(e.what());
    }
}

// ---------------------------------------------------------------------------
// verify

// Full condition report at the peak shift. Exit code 1 is reserved for the
// one outcome theory forbids: a threshold-certified configuration whose
// sign pattern fails to verify.
inline run_result run_verify(const verify_options& opt)
{
    try {
        if (opt.n < 1)
            throw std::invalid_argument("--n must be >= 1");
        const double qd = detail::checked_double(opt.q);
        if (!(qd > 0 && qd < 1))
            throw std::invalid_argument("q must lie in (0,1), got '" + opt.q + "'");
        detail::checked_double(opt.beta);
        const precision_tier tier = detail::parse_tier(
            detail::effective_precision_request(opt.precision), wants_extended_for_order(qd, opt.n));

        int exit_code = exit_ok;
        std::string error_text;
        ordered_json doc;
        with_tier(tier, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            const kernel_params<Real> p(detail::real_from_token<Real>(opt.q),
                                        detail::real_from_token<Real>(opt.beta));
            bool certified = false;
            if (opt.n >= 9)
                certified = master_inequality(p.q, opt.n).holds;

            std::optional<condition_report<Real>> computed;
            try {
                computed = verify_condition(p, opt.n);
            } catch (const numeric_error& e) {
                exit_code = exit_degenerate;
                error_text = std::string("error: ") + e.what() + "\n";
                return;
            }
            const condition_report<Real>& rep = *computed;

            doc["command"] = "verify";
            detail::put_real_string(doc, "q", opt.q);
            detail::put_real_string(doc, "beta", opt.beta);
            doc["n"] = opt.n;
            doc["threshold_certified"] = certified;
            doc["verdict"] = verdict_name(rep.verdict);
            doc["epsilon_sign"] = rep.epsilon_sign;
            detail::put_real_string(doc, "y0", detail::format_real(rep.y0));
            detail::put_real_string(doc, "min_abs_lambda", detail::format_real(rep.min_abs_lambda));
            detail::put_real_string(doc, "heat_min", detail::format_real(rep.heat_min));
            detail::put_real_string(doc, "margin", detail::format_real(rep.margin));
            doc["gamma_max"] = ordered_json::array();
            for (const Real& g : rep.gamma.max_abs)
                doc["gamma_max"].push_back(detail::real_string_to_json(detail::format_real(g)));
            detail::put_real_string(doc, "gamma_total", detail::format_real(rep.gamma.total));
            doc["midpoint_values"] = ordered_json::array();
            for (const Real& v : rep.midpoint_values)
                doc["midpoint_values"].push_back(detail::real_string_to_json(detail::format_real(v)));
            doc["e_flags"] = ordered_json::array();
            for (bool e : rep.e_flags)
                doc["e_flags"].push_back(e);
            doc["gamma_per_k"] = ordered_json::object();
            for (int m = 0; m < 5; ++m) {
                ordered_json arr = ordered_json::array();
                for (const Real& g : rep.gamma.per_k[m])
                    arr.push_back(detail::real_string_to_json(detail::format_real(g)));
                doc["gamma_per_k"]["gamma" + std::to_string(m + 1)] = std::move(arr);
            }
            doc["note"] = rep.note;

            if (rep.verdict == condition_verdict::degenerate)
                exit_code = exit_degenerate;
            else if (certified && rep.verdict != condition_verdict::verified)
                exit_code = exit_contradiction;
        });

        ordered_json verify_params;
        verify_params["q"] = opt.q;
        verify_params["beta"] = opt.beta;
        verify_params["n"] = opt.n;
        verify_params["format"] = detail::format_name(opt.format);
        if (!error_text.empty())
            return { exit_code, std::move(error_text),
                     detail::make_manifest("verify", std::move(verify_params), tier) };

        std::string text;
        if (opt.format == output_format::csv) {
            detail::csv_builder csv;
            csv.row({ "key", "value" });
            for (const char* key : { "q", "beta", "n", "threshold_certified", "verdict",
                                     "epsilon_sign", "y0", "min_abs_lambda", "heat_min", "margin",
                                     "gamma_total", "note" })
                csv.row({ key, doc[key].is_string() ? doc[key].get<std::string>() : doc[key].dump() });
            csv.row({});
            csv.row({ "k", "midpoint_value", "e_flag", "gamma1", "gamma2", "gamma3", "gamma4",
                      "gamma5" });
            for (std::size_t k = 0; k < doc["midpoint_values"].size(); ++k) {
                std::vector<std::string> cells;
                cells.push_back(std::to_string(k));
                const auto cell = [&](const ordered_json& v) {
                    cells.push_back(v.is_string() ? v.get<std::string>() : v.dump());
                };
                cell(doc["midpoint_values"][k]);
                cells.push_back(doc["e_flags"][k].get<bool>() ? "1" : "0");
                for (int m = 1; m <= 5; ++m)
                    cell(doc["gamma_per_k"]["gamma" + std::to_string(m)][k]);
                csv.row(cells);
            }
            text = csv.str();
        } else {
            text = doc.dump(2) + "\n";
        }

        return { exit_code, std::move(text),
                 detail::make_manifest("verify", std::move(verify_params), tier) };
    } catch (const std::invalid_argument& e) {
        return detail::usage_error(e.what());
    }
}

// ---------------------------------------------------------------------------
// spline

// Dumps the fundamental interpolant: coefficients, node residuals, a value
// trace over [0, 2pi), and the cell-wise derivative at the midpoints.
inline run_result run_spline(const spline_options& opt)
{
    try {
        if (opt.n < 1)
            throw std::invalid_argument("--n must be >= 1");
        if (opt.samples < 1)
            throw std::invalid_argument("--samples must be >= 1");
        const double qd = detail::checked_double(opt.q);
        if (!(qd > 0 && qd < 1))
            throw std::invalid_argument("q must lie in (0,1), got '" + opt.q + "'");
        detail::checked_double(opt.beta);
        if (opt.y != "auto")
            detail::checked_double(opt.y);
        const bool wants_extended =
            wants_extended_for_order(qd, opt.n) || wants_extended_for_collocation(qd, opt.n);
        const precision_tier tier =
            detail::parse_tier(detail::effective_precision_request(opt.precision), wants_extended);

        int exit_code = exit_ok;
        std::string text;
        with_tier(tier, [&](auto tag) {
            using Real = typename decltype(tag)::type;
            const kernel_params<Real> p(detail::real_from_token<Real>(opt.q),
                                        detail::real_from_token<Real>(opt.beta));
            try {
                const Real y = opt.y == "auto" ? peak_point(p, opt.n)
                                               : detail::real_from_token<Real>(opt.y);
                const sk_spline<Real> spline = build_fundamental_spline(p, opt.n, y);

                const Real pi = ::poisson_widths::detail::pi_v<Real>();
                const Real h = pi / opt.n;
                ordered_json doc;
                doc["command"] = "spline";
                detail::put_real_string(doc, "q", opt.q);
                detail::put_real_string(doc, "beta", opt.beta);
                doc["n"] = opt.n;
                detail::put_real_string(doc, "y", detail::format_real(y));
                detail::put_real_string(doc, "alpha0", detail::format_real(spline.alpha0));

                detail::csv_builder csv;
                csv.row({ "kind", "index", "t", "value" });
                csv.row({ "alpha0", "", "", detail::format_real(spline.alpha0) });
                doc["alpha"] = ordered_json::array();
                for (std::size_t k = 0; k < spline.alpha.size(); ++k) {
                    const std::string v = detail::format_real(spline.alpha[k]);
                    csv.row({ "alpha", std::to_string(k + 1),
                              detail::format_real(spline.part.nodes[k + 1]), v });
                    doc["alpha"].push_back(detail::real_string_to_json(v));
                }
                doc["interp_residuals"] = ordered_json::array();
                for (int i = 0; i < 2 * opt.n; ++i) {
                    const Real yi = y + Real(i) * h;
                    const Real target = i == 0 ? Real(1) : Real(0);
                    const std::string v = detail::format_real(spline.value(yi) - target);
                    csv.row({ "interp_residual", std::to_string(i), detail::format_real(yi), v });
                    doc["interp_residuals"].push_back(detail::real_string_to_json(v));
                }
                doc["samples"] = ordered_json::array();
                for (int i = 0; i < opt.samples; ++i) {
                    const Real t = 2 * pi * Real(i) / opt.samples;
                    const std::string v = detail::format_real(spline.value(t));
                    csv.row({ "sample", std::to_string(i), detail::format_real(t), v });
                    ordered_json jr;
                    detail::put_real_string(jr, "t", detail::format_real(t));
                    detail::put_real_string(jr, "value", v);
                    doc["samples"].push_back(std::move(jr));
                }
                doc["midpoint_derivatives"] = ordered_json::array();
                for (int i = 0; i < 2 * opt.n; ++i) {
                    const Real t = spline.part.midpoints[i];
                    const std::string v = detail::format_real(spline.derivative_value(t));
                    csv.row({ "midpoint_derivative", std::to_string(i), detail::format_real(t), v });
                    ordered_json jr;
                    detail::put_real_string(jr, "t", detail::format_real(t));
                    detail::put_real_string(jr, "value", v);
                    doc["midpoint_derivatives"].push_back(std::move(jr));
                }
                text = opt.format == output_format::csv ? csv.str() : doc.dump(2) + "\n";
            } catch (const ill_conditioned& e) {
                exit_code = exit_degenerate;
                text = std::string("error: ") + e.what() + " (condition estimate " +
                       std::to_string(e.condition_estimate) + ")\n";
            } catch (const numeric_error& e) {
                exit_code = exit_degenerate;
                text = std::string("error: ") + e.what() + "\n";
            }
        });

        ordered_json params;
        params["q"] = opt.q;
        params["beta"] = opt.beta;
        params["n"] = opt.n;
        params["y"] = opt.y;
        params["samples"] = opt.samples;
        params["format"] = detail::format_name(opt.format);
        return { exit_code, std::move(text), detail::make_manifest("spline", std::move(params), tier) };
    } catch (const std::invalid_argument& e) {
        return detail::usage_error(e.what());
    }
}

} // namespace cli
} // namespace poisson_widths
