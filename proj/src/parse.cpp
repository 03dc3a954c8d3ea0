#include "entrokit/parse.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "entrokit/distributions.hpp"

namespace entrokit {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double parse_number(std::string_view text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        fail("malformed number '" + std::string(text) + "' for " + what);
    return v;
}

// "key=value,key=value" parameter list with required/optional lookup and a
// leftover check so typos surface as errors instead of silent defaults.
class ParamSet {
  public:
    ParamSet(std::string_view text, std::string context) : context_(std::move(context)) {
        while (!text.empty()) {
            const std::size_t comma = text.find(',');
            std::string_view item = text.substr(0, comma);
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
            if (item.empty()) continue;
            const std::size_t eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0)
                fail(context_ + ": expected key=value, got '" + std::string(item) + "'");
            const std::string key(item.substr(0, eq));
            if (values_.count(key)) fail(context_ + ": duplicate key '" + key + "'");
            values_[key] = parse_number(item.substr(eq + 1), context_ + " key '" + key + "'");
        }
    }

    double require(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) fail(context_ + ": missing required key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    std::optional<double> optional(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    double value_or(const std::string& key, double fallback) {
        return optional(key).value_or(fallback);
    }

    void finish() const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key)) fail(context_ + ": unknown key '" + key + "'");
    }

  private:
    std::string context_;
    std::map<std::string, double> values_;
    std::set<std::string> used_;
};

long long as_integer(double v, const std::string& what) {
    if (!std::isfinite(v) || v != std::floor(v))
        fail(what + " must be an integer, got " + std::to_string(v));
    return static_cast<long long>(v);
}

std::pair<std::string_view, std::string_view> split_name(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) return {text, {}};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace

DensityModel parse_density_spec(std::string_view text) {
    const auto [name, rest] = split_name(text);
    ParamSet params(rest, "density '" + std::string(name) + "'");
    if (name == "gaussian") {
        const double m = params.value_or("m", 0.0);
        const double sigma = params.require("sigma");
        params.finish();
        return make_gaussian(m, sigma);
    }
    if (name == "exponential") {
        const double mu = params.require("mu");
        params.finish();
        return make_exponential(mu);
    }
    if (name == "uniform") {
        const double a = params.require("a");
        const double b = params.require("b");
        params.finish();
        return make_uniform(a, b);
    }
    if (name == "staircase") {
        const long long K = as_integer(params.require("K"), "staircase K");
        params.finish();
        if (K < 2 || K > 100'000'000) fail("staircase K out of range [2, 1e8]");
        return make_staircase_comb(static_cast<int>(K));
    }
    if (name == "heavytail") {
        params.finish();
        return make_heavy_tail_log();
    }
    if (name == "rational") {
        params.finish();
        return make_rational_decay();
    }
    if (name == "quartic") {
        params.finish();
        return make_quartic_exp();
    }
    fail("unknown density '" + std::string(name) + "'");
}

PartitionSpec parse_partition_spec(std::string_view text) {
    const auto [name, rest] = split_name(text);
    ParamSet params(rest, "partition '" + std::string(name) + "'");
    if (name == "window") {
        const double N = params.require("N");
        const double h = params.require("h");
        params.finish();
        return PartitionSpec::window(N, h);
    }
    if (name == "aligned") {
        const double a = params.require("a");
        const double b = params.require("b");
        const long long n = as_integer(params.require("n"), "aligned n");
        params.finish();
        return PartitionSpec::aligned(a, b, n);
    }
    if (name == "rated") {
        const double N = params.require("N");
        const long long C = as_integer(params.require("C"), "rated C");
        params.finish();
        return PartitionSpec::rated(N, C);
    }
    fail("unknown partition '" + std::string(name) + "'");
}

std::vector<PartitionSpec> parse_schedule_spec(std::string_view text, const DensityModel& d) {
    const auto [name, rest] = split_name(text);
    ParamSet params(rest, "schedule '" + std::string(name) + "'");
    std::vector<PartitionSpec> out;
    if (name == "aligned-doubling") {
        const long long from = as_integer(params.require("from"), "aligned-doubling from");
        const long long to = as_integer(params.require("to"), "aligned-doubling to");
        const double a = params.value_or("a", d.support.lower);
        const double b = params.value_or("b", d.support.upper);
        params.finish();
        if (from < 1 || to < from) fail("aligned-doubling needs 1 <= from <= to");
        if (!std::isfinite(a) || !std::isfinite(b))
            fail("aligned-doubling: model support is unbounded; pass a=..,b=..");
        for (long long n = from; n <= to; n *= 2) out.push_back(PartitionSpec::aligned(a, b, n));
        return out;
    }
    if (name == "window-doubling") {
        const double from = params.require("from");
        const double to = params.require("to");
        const auto h = params.optional("h");
        params.finish();
        if (!(from > 0.0) || !(to >= from)) fail("window-doubling needs 0 < from <= to");
        for (double N = from; N <= to * (1.0 + 1e-12); N *= 2.0)
            out.push_back(PartitionSpec::window(N, h.value_or(1.0 / N)));
        return out;
    }
    if (name == "rated-exponential") {
        const double N = params.require("N");
        const long long jfrom = as_integer(params.require("jfrom"), "rated-exponential jfrom");
        const long long jto = as_integer(params.require("jto"), "rated-exponential jto");
        params.finish();
        if (jfrom < 0 || jto < jfrom || jto > 40)
            fail("rated-exponential needs 0 <= jfrom <= jto <= 40");
        for (long long j = jfrom; j <= jto; ++j)
            out.push_back(PartitionSpec::rated(N, 1LL << j));
        return out;
    }
    fail("unknown schedule '" + std::string(name) + "'");
}

EntropyVariant parse_variant_name(std::string_view name, double alpha) {
    if (name == "shannon") return EntropyVariant::shannon(EntropyForm::classical);
    if (name == "h1") return EntropyVariant::shannon(EntropyForm::abs);
    if (name == "h2") return EntropyVariant::shannon(EntropyForm::pos);
    if (name == "h3") return EntropyVariant::shannon(EntropyForm::log1p);
    if (name == "h4") return EntropyVariant::shannon(EntropyForm::scaled);
    if (name == "renyi") return EntropyVariant::renyi_of(alpha, EntropyForm::classical);
    if (name == "r1") return EntropyVariant::renyi_of(alpha, EntropyForm::abs);
    if (name == "r2") return EntropyVariant::renyi_of(alpha, EntropyForm::pos);
    if (name == "r3") return EntropyVariant::renyi_of(alpha, EntropyForm::log1p);
    fail("unknown entropy variant '" + std::string(name) + "'");
}

bool variant_needs_alpha(std::string_view name) {
    return name == "renyi" || name == "r1" || name == "r2" || name == "r3";
}

DiscretizationFunctional parse_functional_name(std::string_view name, double alpha,
                                               bool include_tails, bool paper_literal) {
    DiscretizationFunctional f;
    f.include_tails = include_tails;
    f.paper_literal = paper_literal;
    const auto [kind, form] = split_name(name);
    if (kind == "raw-shannon") {
        f.kind = DiscretizationFunctional::Kind::raw_shannon;
    } else if (kind == "raw-renyi") {
        validate_alpha(alpha);
        f.kind = DiscretizationFunctional::Kind::raw_renyi;
        f.alpha = alpha;
    } else if (kind == "compatible-renyi") {
        validate_alpha(alpha);
        f.kind = DiscretizationFunctional::Kind::compatible_renyi;
        f.alpha = alpha;
    } else if (kind == "compatible-shannon") {
        f.kind = DiscretizationFunctional::Kind::compatible_shannon;
        if (form == "signed") f.form = CompatibleForm::signed_;
        else if (form == "abs") f.form = CompatibleForm::abs;
        else if (form == "pos") f.form = CompatibleForm::pos;
        else if (form == "log1p") f.form = CompatibleForm::log1p;
        else fail("compatible-shannon needs a form: signed, abs, pos or log1p");
    } else {
        fail("unknown functional '" + std::string(kind) + "'");
    }
    if (!form.empty() && kind != "compatible-shannon")
        fail("functional '" + std::string(kind) + "' takes no form suffix");
    if (f.paper_literal && (f.kind != DiscretizationFunctional::Kind::compatible_shannon ||
                            f.form != CompatibleForm::log1p))
        fail("paper-literal display applies only to compatible-shannon:log1p");
    return f;
}

}  // namespace entrokit
