#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "entrokit/cli.hpp"

namespace {

// Shared option plumbing; each subcommand picks the flags it understands.
struct Options {
    entrokit::cli::RunConfig cfg;
    double alpha = 0.0;
    std::string range;

    void finalize(CLI::App* sub) {
        const CLI::Option* a = sub->get_option_no_throw("--alpha");
        if (a && a->count()) cfg.alpha = alpha;
        const CLI::Option* r = sub->get_option_no_throw("--range");
        if (r && r->count()) cfg.range = entrokit::cli::parse_range_spec(range);
    }
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.cfg.format, "Output format: csv or json");
    sub->add_option("--out", o.cfg.out, "Output file path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for differential and Renyi entropies"};
    app.require_subcommand(1);

    Options o;

    CLI::App* compute = app.add_subcommand("compute", "Entropy of one distribution");
    compute->add_option("--dist", o.cfg.dist, "Density spec, e.g. gaussian:m=0,sigma=1")
        ->required();
    compute->add_option("--variant", o.cfg.variant,
                        "Entropy variant: shannon, h1, h2, h3, h4, renyi, r1, r2, r3")
        ->required();
    compute->add_option("--alpha", o.alpha, "Renyi order (variants renyi, r1, r2, r3)");
    add_common(compute, o);

    CLI::App* discretize = app.add_subcommand("discretize", "Discretized functional on one partition");
    discretize->add_option("--dist", o.cfg.dist, "Density spec")->required();
    discretize
        ->add_option("--variant", o.cfg.variant,
                     "Functional: raw-shannon, raw-renyi, compatible-shannon:FORM, compatible-renyi")
        ->required();
    discretize->add_option("--partition", o.cfg.partition,
                           "Partition spec: window:N=..,h=.. | aligned:a=..,b=..,n=.. | rated:N=..,C=..")
        ->required();
    discretize->add_option("--alpha", o.alpha, "Renyi order");
    discretize->add_flag("--include-tails", o.cfg.include_tails,
                         "Add the two tail masses to raw sums");
    discretize->add_flag("--paper-literal", o.cfg.paper_literal,
                         "Report the literal prelimit display of the log1p form");
    add_common(discretize, o);

    CLI::App* converge = app.add_subcommand("converge", "Functional along a partition schedule");
    converge->add_option("--dist", o.cfg.dist, "Density spec")->required();
    converge->add_option("--variant", o.cfg.variant, "Functional name")->required();
    converge
        ->add_option("--schedule", o.cfg.schedule,
                     "Schedule: aligned-doubling:from=..,to=.. | window-doubling:from=..,to=.. | "
                     "rated-exponential:N=..,jfrom=..,jto=..")
        ->required();
    converge->add_option("--alpha", o.alpha, "Renyi order");
    converge->add_flag("--include-tails", o.cfg.include_tails,
                       "Add the two tail masses to raw sums");
    converge->add_flag("--paper-literal", o.cfg.paper_literal,
                       "Report the literal prelimit display of the log1p form");
    add_common(converge, o);

    CLI::App* thresholds = app.add_subcommand("thresholds", "Scale thresholds and minima");
    thresholds->add_option("--alphas", o.cfg.alphas,
                           "Comma list of Renyi orders for sigma_alpha/mu_alpha rows");
    add_common(thresholds, o);

    CLI::App* curves = app.add_subcommand("curves", "Entropy curves as CSV/JSON");
    curves
        ->add_option("--figure", o.cfg.figure,
                     "Curve set: h1-gauss, h123-gauss, h123-exp, renyi-gauss, renyi-exp")
        ->required();
    curves->add_option("--alpha", o.alpha, "Renyi order (renyi-gauss, renyi-exp)");
    curves->add_option("--range", o.range, "Scale range lo:hi:steps");
    add_common(curves, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return entrokit::cli::kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    o.cfg.command = active->get_name();
    try {
        o.finalize(active);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return entrokit::cli::kExitUsage;
    }
    return entrokit::cli::run(o.cfg, std::cout, std::cerr);
}
