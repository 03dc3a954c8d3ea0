#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entrokit/analytic.hpp"
#include "entrokit/discretization.hpp"
#include "entrokit/distributions.hpp"
#include "entrokit/functionals.hpp"
#include "entrokit/parse.hpp"

namespace py = pybind11;
using namespace entrokit;

namespace {

py::dict result_dict(const EntropyResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["method"] = r.method == EvalMethod::quadrature ? "quadrature" : "summation";
    d["error_estimate"] = r.error_estimate;
    d["divergent"] = r.divergent;
    d["converged"] = r.converged;
    return d;
}

DiscretizationFunctional make_functional(const std::string& name, double alpha,
                                         bool include_tails, bool paper_literal) {
    return parse_functional_name(name, alpha, include_tails, paper_literal);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Differential and Renyi entropy toolkit";

    py::class_<DensityModel>(m, "Density")
        .def_property_readonly("label", [](const DensityModel& d) { return d.label; })
        .def_property_readonly("flags", [](const DensityModel& d) { return d.flags; })
        .def("pdf", [](const DensityModel& d, double x) { return d.pdf(x); }, py::arg("x"))
        .def("log_pdf", [](const DensityModel& d, double x) { return d.log_pdf(x); },
             py::arg("x"))
        .def("cdf", [](const DensityModel& d, double x) { return d.cdf(x); }, py::arg("x"))
        .def_property_readonly("support",
                               [](const DensityModel& d) {
                                   return py::make_tuple(d.support.lower, d.support.upper);
                               })
        .def("__repr__",
             [](const DensityModel& d) { return "<Density " + d.label + ">"; });

    m.def("density", &parse_density_spec, py::arg("spec"),
          "Build a density from a text spec such as 'gaussian:m=0,sigma=1'");

    m.def(
        "entropy",
        [](const DensityModel& d, const std::string& variant, double alpha) {
            return result_dict(evaluate_entropy(d, parse_variant_name(variant, alpha)));
        },
        py::arg("density"), py::arg("variant"), py::arg("alpha") = 0.0,
        "Entropy of a density: variant in shannon,h1,h2,h3,h4,renyi,r1,r2,r3");

    m.def(
        "discrete_entropy",
        [](long long K) { return result_dict(shannon_discrete(make_log_square_discrete(), K)); },
        py::arg("K"),
        "Partial entropy sum of the built-in slowly diverging discrete distribution");

    m.def(
        "discretized",
        [](const DensityModel& d, const std::string& partition, const std::string& functional,
           double alpha, bool include_tails, bool paper_literal) {
            const PartitionSpec spec = parse_partition_spec(partition);
            const DiscretizationFunctional f =
                make_functional(functional, alpha, include_tails, paper_literal);
            const DiscretizedDistribution dd = discretize(d, spec);
            py::dict out;
            out["cells"] = spec.cells();
            out["functional"] = f.label();
            switch (f.kind) {
                case DiscretizationFunctional::Kind::raw_shannon:
                    out["value"] = raw_shannon(dd, f.include_tails);
                    break;
                case DiscretizationFunctional::Kind::compatible_shannon:
                    out["value"] = compatible_shannon(dd, f.form, f.paper_literal);
                    break;
                case DiscretizationFunctional::Kind::raw_renyi: {
                    const RenyiDiscretization r = raw_renyi(dd, f.alpha, f.include_tails);
                    out["value"] = r.entropy_value;
                    out["inner_sum"] = r.inner_sum;
                    break;
                }
                case DiscretizationFunctional::Kind::compatible_renyi: {
                    const RenyiDiscretization r = compatible_renyi(dd, f.alpha);
                    out["value"] = r.entropy_value;
                    out["inner_sum"] = r.inner_sum;
                    break;
                }
            }
            return out;
        },
        py::arg("density"), py::arg("partition"), py::arg("functional"), py::arg("alpha") = 0.0,
        py::arg("include_tails") = false, py::arg("paper_literal") = false,
        "Discretized functional over one partition spec such as 'window:N=10,h=0.01'");

    m.def(
        "converge",
        [](const DensityModel& d, const std::string& functional, const std::string& schedule,
           double alpha, bool include_tails, bool paper_literal) {
            const std::vector<PartitionSpec> specs = parse_schedule_spec(schedule, d);
            const DiscretizationFunctional f =
                make_functional(functional, alpha, include_tails, paper_literal);
            const ConvergenceSeries series = divergence_series(d, f, specs);
            py::list params, values, oks;
            for (const auto& pt : series.points) {
                params.append(pt.param);
                values.append(pt.value);
                oks.append(pt.ok);
            }
            py::dict out;
            out["functional"] = series.functional_label;
            out["param"] = params;
            out["value"] = values;
            out["ok"] = oks;
            try {
                const LogRateFit fit = fit_log_rate(series);
                py::dict fd;
                fd["slope"] = fit.slope;
                fd["intercept"] = fit.intercept;
                fd["rmse"] = fit.rmse;
                out["fit"] = fd;
            } catch (const std::exception&) {
                out["fit"] = py::none();
            }
            return out;
        },
        py::arg("density"), py::arg("functional"), py::arg("schedule"), py::arg("alpha") = 0.0,
        py::arg("include_tails") = false, py::arg("paper_literal") = false,
        "Functional values along a named partition schedule, with a log-rate fit");

    m.def(
        "thresholds",
        []() {
            const ThresholdResult t = solve_thresholds();
            py::dict d;
            d["u0"] = t.u0;
            d["sigma0"] = t.sigma0;
            d["min_h1"] = t.min_value;
            return d;
        },
        "Location and value of the Gaussian abs-entropy minimum");

    m.def("sigma_alpha", &threshold_sigma_alpha, py::arg("alpha"),
          "Gaussian scale where the order-alpha Renyi alternatives touch zero");
    m.def("mu_alpha", &threshold_mu_alpha, py::arg("alpha"),
          "Exponential scale where the order-alpha Renyi alternatives touch zero");

    m.def(
        "closed_form",
        [](const std::string& family, double param, const std::string& variant, double alpha) {
            const EntropyVariant v = parse_variant_name(variant, alpha);
            const bool gauss = family == "gaussian";
            if (!gauss && family != "exponential")
                throw std::invalid_argument("closed_form family must be gaussian or exponential");
            if (v.family == EntropyFamily::shannon)
                return gauss ? gaussian_alt_cf(param, v.form).value
                             : exponential_alt_cf(param, v.form).value;
            if (v.form == EntropyForm::classical)
                return gauss ? gaussian_renyi_cf(param, alpha)
                             : exponential_renyi_cf(param, alpha);
            return renyi_alt_cf(gauss ? AnalyticFamily::gaussian : AnalyticFamily::exponential,
                                param, alpha, v.form)
                .value;
        },
        py::arg("family"), py::arg("param"), py::arg("variant"), py::arg("alpha") = 0.0,
        "Closed-form entropy for the gaussian/exponential families");

    m.def(
        "local_comparability",
        [](const DensityModel& d, double D, double x0, double K, int samples) {
            const ComparabilityResult r = check_local_comparability(d, D, x0, K, samples);
            py::dict out;
            out["holds"] = r.holds;
            if (r.witness) {
                py::dict w;
                w["x"] = r.witness->x;
                w["y"] = r.witness->y;
                w["p_x"] = r.witness->p_x;
                w["p_y"] = r.witness->p_y;
                w["log_excess"] = r.witness->log_excess;
                out["witness"] = w;
            } else {
                out["witness"] = py::none();
            }
            return out;
        },
        py::arg("density"), py::arg("D"), py::arg("x0") = 0.0, py::arg("K") = 2.0,
        py::arg("samples") = 2000,
        "Grid check of the bound p(x) <= K p(y) for |x - y| <= 1/D");
}
