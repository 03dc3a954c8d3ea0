#include "entrokit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "entrokit/analytic.hpp"
#include "entrokit/discretization.hpp"
#include "entrokit/distributions.hpp"
#include "entrokit/functionals.hpp"
#include "entrokit/parse.hpp"

namespace entrokit::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Numerical non-convergence, reported as exit code 3.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void usage_error(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Cell for output tables: either text or a number rendered at 9 significant
// digits (the same rounding feeds both CSV and JSON, keeping them in sync).
struct Cell {
    enum class Kind { blank, text, number, boolean };
    Kind kind = Kind::blank;
    std::string text;
    double number = 0.0;
    bool flag = false;

    static Cell blank() { return {}; }
    static Cell of(std::string s) { return {Kind::text, std::move(s), 0.0, false}; }
    static Cell of(double v) { return {Kind::number, {}, v, false}; }
    static Cell of(bool b) { return {Kind::boolean, {}, 0.0, b}; }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::blank: return "";
        case Cell::Kind::text: return csv_escape(c.text);
        case Cell::Kind::number: return fmt9(c.number);
        case Cell::Kind::boolean: return c.flag ? "true" : "false";
    }
    return "";
}

ordered_json cell_json(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::blank: return nullptr;
        case Cell::Kind::text: return c.text;
        case Cell::Kind::boolean: return c.flag;
        case Cell::Kind::number: {
            if (!std::isfinite(c.number)) return fmt9(c.number);
            return std::strtod(fmt9(c.number).c_str(), nullptr);
        }
    }
    return nullptr;
}

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> footers;  // rendered as trailing '# ...' lines

    void add_row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

void render_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.headers.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.headers[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_csv(row[i]);
        os << '\n';
    }
    for (const auto& f : t.footers) os << "# " << f << '\n';
}

ordered_json table_json(const Table& t) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
        ordered_json col = ordered_json::array();
        for (const auto& row : t.rows) col.push_back(cell_json(row[i]));
        obj[t.headers[i]] = std::move(col);
    }
    return obj;
}

void render(const Table& t, const std::string& format, std::ostream& os,
            ordered_json extra = {}) {
    if (format == "csv") {
        render_csv(t, os);
        return;
    }
    ordered_json obj = table_json(t);
    if (extra.is_object())
        for (auto& [k, v] : extra.items()) obj[k] = v;
    os << obj.dump(2) << '\n';
}

// Resolves the output sink: `config.out` names a file, otherwise stdout.
void emit(const RunConfig& c, const std::string& path, const std::string& content,
          std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) usage_error("cannot open output file '" + path + "'");
    f << content;
    if (!f) usage_error("failed writing output file '" + path + "'");
    (void)c;
}

void check_format(const std::string& format) {
    if (format != "csv" && format != "json")
        usage_error("unknown format '" + format + "' (expected csv or json)");
}

// Pulls one numeric parameter back out of a density spec text such as
// "gaussian:m=0,sigma=1".
std::optional<double> spec_param(std::string_view text, std::string_view key) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const std::size_t eq = item.find('=');
        if (eq != std::string_view::npos && item.substr(0, eq) == key)
            return std::strtod(std::string(item.substr(eq + 1)).c_str(), nullptr);
    }
    return std::nullopt;
}

std::string_view dist_name(std::string_view text) {
    const std::size_t colon = text.find(':');
    return colon == std::string_view::npos ? text : text.substr(0, colon);
}

// Closed-form reference value when the density family has one.
std::optional<double> closed_form_for(const RunConfig& c, const EntropyVariant& v) {
    const std::string_view name = dist_name(c.dist);
    if (name == "gaussian") {
        const auto sigma = spec_param(c.dist, "sigma");
        if (!sigma) return std::nullopt;
        if (v.family == EntropyFamily::shannon) return gaussian_alt_cf(*sigma, v.form).value;
        if (v.form == EntropyForm::classical) return gaussian_renyi_cf(*sigma, v.alpha);
        return renyi_alt_cf(AnalyticFamily::gaussian, *sigma, v.alpha, v.form).value;
    }
    if (name == "exponential") {
        const auto mu = spec_param(c.dist, "mu");
        if (!mu) return std::nullopt;
        if (v.family == EntropyFamily::shannon) return exponential_alt_cf(*mu, v.form).value;
        if (v.form == EntropyForm::classical) return exponential_renyi_cf(*mu, v.alpha);
        return renyi_alt_cf(AnalyticFamily::exponential, *mu, v.alpha, v.form).value;
    }
    return std::nullopt;
}

void require_alpha_usage(const RunConfig& c) {
    const bool needs = variant_needs_alpha(c.variant);
    if (needs && !c.alpha)
        usage_error("variant '" + c.variant + "' requires --alpha");
    if (!needs && c.alpha)
        usage_error("--alpha applies only to the Renyi variants (renyi, r1, r2, r3)");
}

constexpr double kCrossCheckTol = 1e-6;

int cmd_compute(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.dist.empty()) usage_error("compute requires --dist");
    if (c.variant.empty()) usage_error("compute requires --variant");
    require_alpha_usage(c);

    const DensityModel d = parse_density_spec(c.dist);
    const EntropyVariant v = parse_variant_name(c.variant, c.alpha.value_or(0.0));
    const EntropyResult res = evaluate_entropy(d, v);
    if (!res.converged)
        throw NonConvergence("quadrature for " + c.variant + " on " + c.dist +
                             " did not converge");

    const std::optional<double> cf = closed_form_for(c, v);
    if (cf && !res.divergent && std::abs(res.value - *cf) > kCrossCheckTol)
        throw NonConvergence("cross-check failed for " + c.variant + " on " + c.dist +
                             ": computed " + fmt9(res.value) + ", closed form " + fmt9(*cf));

    Table t;
    t.headers = {"variant", "value", "method", "error_estimate", "divergent", "closed_form"};
    t.add_row({Cell::of(c.variant), Cell::of(res.value),
               Cell::of(std::string(res.method == EvalMethod::quadrature ? "quadrature"
                                                                         : "summation")),
               Cell::of(res.error_estimate), Cell::of(res.divergent),
               cf ? Cell::of(*cf) : Cell::blank()});

    std::ostringstream buf;
    render(t, c.format, buf, ordered_json{{"dist", c.dist}});
    emit(c, c.out, buf.str(), out);
    (void)err;
    return kExitOk;
}

void require_functional_alpha(const RunConfig& c) {
    const bool needs = c.variant.rfind("raw-renyi", 0) == 0 ||
                       c.variant.rfind("compatible-renyi", 0) == 0;
    if (needs && !c.alpha) usage_error("functional '" + c.variant + "' requires --alpha");
    if (!needs && c.alpha) usage_error("--alpha applies only to the Renyi functionals");
}

int cmd_discretize(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.dist.empty()) usage_error("discretize requires --dist");
    if (c.variant.empty()) usage_error("discretize requires --variant (a functional name)");
    if (c.partition.empty()) usage_error("discretize requires --partition");
    require_functional_alpha(c);

    const DensityModel d = parse_density_spec(c.dist);
    const PartitionSpec p = parse_partition_spec(c.partition);
    const DiscretizationFunctional f =
        parse_functional_name(c.variant, c.alpha.value_or(0.0), c.include_tails, c.paper_literal);
    const DiscretizedDistribution dd = discretize(d, p);

    double value = 0.0;
    Cell inner = Cell::blank();
    switch (f.kind) {
        case DiscretizationFunctional::Kind::raw_shannon:
            value = raw_shannon(dd, f.include_tails);
            break;
        case DiscretizationFunctional::Kind::compatible_shannon:
            value = compatible_shannon(dd, f.form, f.paper_literal);
            break;
        case DiscretizationFunctional::Kind::raw_renyi: {
            const RenyiDiscretization r = raw_renyi(dd, f.alpha, f.include_tails);
            value = r.entropy_value;
            inner = Cell::of(r.inner_sum);
            break;
        }
        case DiscretizationFunctional::Kind::compatible_renyi: {
            const RenyiDiscretization r = compatible_renyi(dd, f.alpha);
            value = r.entropy_value;
            inner = Cell::of(r.inner_sum);
            break;
        }
    }

    Table t;
    t.headers = {"functional", "partition", "cells", "value", "inner_sum"};
    t.add_row({Cell::of(f.label()), Cell::of(p.describe()),
               Cell::of(static_cast<double>(p.cells())), Cell::of(value), inner});

    std::ostringstream buf;
    render(t, c.format, buf, ordered_json{{"dist", c.dist}});
    emit(c, c.out, buf.str(), out);
    (void)err;
    return kExitOk;
}

int cmd_converge(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.dist.empty()) usage_error("converge requires --dist");
    if (c.variant.empty()) usage_error("converge requires --variant (a functional name)");
    if (c.schedule.empty()) usage_error("converge requires --schedule");
    require_functional_alpha(c);

    const DensityModel d = parse_density_spec(c.dist);
    const std::vector<PartitionSpec> schedule = parse_schedule_spec(c.schedule, d);
    const DiscretizationFunctional f =
        parse_functional_name(c.variant, c.alpha.value_or(0.0), c.include_tails, c.paper_literal);

    const ConvergenceSeries series = divergence_series(d, f, schedule);

    Table t;
    t.headers = {"param", "value", "ok", "error"};
    for (const auto& pt : series.points)
        t.add_row({Cell::of(pt.param), Cell::of(pt.value), Cell::of(pt.ok),
                   pt.error.empty() ? Cell::blank() : Cell::of(pt.error)});

    ordered_json fit_json;
    try {
        const LogRateFit fit = fit_log_rate(series);
        t.footers.push_back("fit: slope=" + fmt9(fit.slope) + ",intercept=" +
                            fmt9(fit.intercept) + ",rmse=" + fmt9(fit.rmse));
        fit_json = ordered_json{
            {"slope", cell_json(Cell::of(fit.slope))},
            {"intercept", cell_json(Cell::of(fit.intercept))},
            {"rmse", cell_json(Cell::of(fit.rmse))}};
    } catch (const std::exception& e) {
        t.footers.push_back(std::string("fit: unavailable (") + e.what() + ")");
        fit_json = nullptr;
    }

    ordered_json extra{{"functional", series.functional_label}, {"fit", fit_json}};
    std::ostringstream buf;
    render(t, c.format, buf, extra);
    emit(c, c.out, buf.str(), out);

    for (const auto& pt : series.points)
        if (!pt.ok) {
            err << "schedule point param=" << fmt9(pt.param) << " failed: " << pt.error << '\n';
            return kExitUsage;
        }
    return kExitOk;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string item(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        char* end = nullptr;
        const double a = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size())
            usage_error("malformed alpha '" + item + "' in --alphas");
        validate_alpha(a);
        out.push_back(a);
    }
    return out;
}

int cmd_thresholds(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::vector<double> alphas = parse_alpha_list(c.alphas);
    const ThresholdResult th = solve_thresholds();

    Table t;
    t.headers = {"quantity", "value"};
    t.add_row({Cell::of(std::string("u0")), Cell::of(th.u0)});
    t.add_row({Cell::of(std::string("sigma0")), Cell::of(th.sigma0)});
    t.add_row({Cell::of(std::string("min_h1")), Cell::of(th.min_value)});
    for (double a : alphas) {
        t.add_row({Cell::of("sigma_alpha(" + fmt9(a) + ")"), Cell::of(threshold_sigma_alpha(a))});
        t.add_row({Cell::of("mu_alpha(" + fmt9(a) + ")"), Cell::of(threshold_mu_alpha(a))});
    }

    std::ostringstream buf;
    render(t, c.format, buf);
    emit(c, c.out, buf.str(), out);
    (void)err;
    return kExitOk;
}

// ---- curves ----

struct CurveDef {
    std::string variant;
    std::function<double(double)> eval;  // closed-form value at the scale parameter
};

std::vector<CurveDef> figure_curves(const std::string& figure, std::optional<double> alpha) {
    const auto galt = [](EntropyForm f) {
        return [f](double s) { return gaussian_alt_cf(s, f).value; };
    };
    const auto ealt = [](EntropyForm f) {
        return [f](double m) { return exponential_alt_cf(m, f).value; };
    };
    if (figure == "h1-gauss") return {{"h1", galt(EntropyForm::abs)}};
    if (figure == "h123-gauss")
        return {{"h1", galt(EntropyForm::abs)},
                {"h2", galt(EntropyForm::pos)},
                {"h3", galt(EntropyForm::log1p)}};
    if (figure == "h123-exp")
        return {{"h1", ealt(EntropyForm::abs)},
                {"h2", ealt(EntropyForm::pos)},
                {"h3", ealt(EntropyForm::log1p)}};

    const bool rg = figure == "renyi-gauss";
    const bool re = figure == "renyi-exp";
    if (rg || re) {
        if (!alpha) usage_error("figure '" + figure + "' requires --alpha");
        const double a = *alpha;
        validate_alpha(a);
        const AnalyticFamily fam = rg ? AnalyticFamily::gaussian : AnalyticFamily::exponential;
        const auto ralt = [fam, a](EntropyForm f) {
            return [fam, a, f](double s) { return renyi_alt_cf(fam, s, a, f).value; };
        };
        return {{"r1", ralt(EntropyForm::abs)},
                {"r2", ralt(EntropyForm::pos)},
                {"r3", ralt(EntropyForm::log1p)}};
    }
    usage_error("unknown figure '" + figure +
                "' (expected h1-gauss, h123-gauss, h123-exp, renyi-gauss or renyi-exp)");
}

RangeSpec default_range(const std::string& figure) {
    if (figure == "h123-exp" || figure == "renyi-exp") return {0.05, 4.0, 200};
    return {0.05, 3.0, 200};
}

// Evaluates all curves over the grid with a small thread pool; points are
// written into preallocated slots so the output order is deterministic.
std::vector<std::vector<double>> evaluate_curves(const std::vector<CurveDef>& curves,
                                                 const std::vector<double>& params) {
    std::vector<std::vector<double>> values(curves.size(),
                                            std::vector<double>(params.size(), 0.0));
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(hw, params.size()));
    std::mutex err_mutex;
    std::exception_ptr first_error;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < params.size(); i += workers)
                    for (std::size_t k = 0; k < curves.size(); ++k)
                        values[k][i] = curves[k].eval(params[i]);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return values;
}

// Output path for one curve of a figure: the stem gains a -variant suffix
// when the figure holds several curves.
std::string curve_path(const std::string& base, const std::string& variant, bool multi) {
    if (!multi) return base;
    const std::size_t dot = base.find_last_of('.');
    const std::size_t slash = base.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    if (!has_ext) return base + "-" + variant;
    return base.substr(0, dot) + "-" + variant + base.substr(dot);
}

int cmd_curves(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.figure.empty()) usage_error("curves requires --figure");
    const std::vector<CurveDef> curves = figure_curves(c.figure, c.alpha);
    const RangeSpec range = c.range ? *c.range : default_range(c.figure);
    if (!(range.lo > 0.0)) usage_error("curve range requires lo > 0");

    std::vector<double> params(static_cast<std::size_t>(range.steps));
    for (std::size_t i = 0; i < params.size(); ++i)
        params[i] = range.lo + (range.hi - range.lo) * static_cast<double>(i) /
                                   static_cast<double>(range.steps - 1);
    const auto values = evaluate_curves(curves, params);

    if (c.format == "json") {
        ordered_json obj{{"figure", c.figure}};
        ordered_json param_col = ordered_json::array();
        for (double p : params) param_col.push_back(cell_json(Cell::of(p)));
        obj["param"] = std::move(param_col);
        for (std::size_t k = 0; k < curves.size(); ++k) {
            ordered_json col = ordered_json::array();
            for (double v : values[k]) col.push_back(cell_json(Cell::of(v)));
            obj[curves[k].variant] = std::move(col);
        }
        emit(c, c.out, obj.dump(2) + "\n", out);
        return kExitOk;
    }

    // CSV: one two-column table per curve, to its own file when --out is set.
    const bool multi = curves.size() > 1;
    std::string stdout_blob;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        Table t;
        t.headers = {"param", curves[k].variant};
        for (std::size_t i = 0; i < params.size(); ++i)
            t.add_row({Cell::of(params[i]), Cell::of(values[k][i])});
        std::ostringstream buf;
        render_csv(t, buf);
        if (c.out.empty()) {
            if (!stdout_blob.empty()) stdout_blob += '\n';
            stdout_blob += buf.str();
        } else {
            emit(c, curve_path(c.out, curves[k].variant, multi), buf.str(), out);
        }
    }
    if (c.out.empty()) out << stdout_blob;
    (void)err;
    return kExitOk;
}

}  // namespace

RangeSpec parse_range_spec(const std::string& text) {
    RangeSpec r;
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        usage_error("range must be lo:hi:steps, got '" + text + "'");
    const std::string lo = text.substr(0, c1);
    const std::string hi = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string steps = text.substr(c2 + 1);
    char* end = nullptr;
    r.lo = std::strtod(lo.c_str(), &end);
    if (lo.empty() || end != lo.c_str() + lo.size()) usage_error("malformed range lo '" + lo + "'");
    r.hi = std::strtod(hi.c_str(), &end);
    if (hi.empty() || end != hi.c_str() + hi.size()) usage_error("malformed range hi '" + hi + "'");
    r.steps = std::strtoll(steps.c_str(), &end, 10);
    if (steps.empty() || end != steps.c_str() + steps.size())
        usage_error("malformed range steps '" + steps + "'");
    if (!(r.lo < r.hi)) usage_error("range requires lo < hi");
    if (r.steps < 2) usage_error("range requires steps >= 2");
    return r;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        check_format(config.format);
        if (config.command == "compute") return cmd_compute(config, out, err);
        if (config.command == "discretize") return cmd_discretize(config, out, err);
        if (config.command == "converge") return cmd_converge(config, out, err);
        if (config.command == "thresholds") return cmd_thresholds(config, out, err);
        if (config.command == "curves") return cmd_curves(config, out, err);
        err << "unknown command '" << config.command << "'\n";
        return kExitUsage;
    } catch (const NonConvergence& e) {
        err << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitNonConvergence;
    }
}

}  // namespace entrokit::cli
