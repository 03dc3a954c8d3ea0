#pragma once

#include <string_view>
#include <vector>

#include "entrokit/density.hpp"
#include "entrokit/discretization.hpp"
#include "entrokit/functionals.hpp"

namespace entrokit {

// Text form "name" or "name:key=value,key=value".  Known names:
//   gaussian:m=0,sigma=1   exponential:mu=2   uniform:a=0,b=1
//   heavytail              staircase:K=1000   rational   quartic
// Unknown names, unknown keys, missing keys and malformed numbers all raise
// std::invalid_argument with a message naming the offending piece.
DensityModel parse_density_spec(std::string_view text);

// "window:N=100,h=0.01", "aligned:a=0,b=1,n=64" or "rated:N=10,C=4096".
PartitionSpec parse_partition_spec(std::string_view text);

// Named schedule generators:
//   aligned-doubling:from=2,to=1024[,a=..,b=..]   n doubling; [a,b] defaults
//                                                 to the model's support
//   window-doubling:from=4,to=64[,h=..]           N doubling; h defaults to 1/N
//   rated-exponential:N=10,jfrom=6,jto=14         C = 2^j
// The model supplies default interval bounds where needed.
std::vector<PartitionSpec> parse_schedule_spec(std::string_view text, const DensityModel& d);

// Variant names used on the command line: shannon h1 h2 h3 h4 renyi r1 r2 r3.
EntropyVariant parse_variant_name(std::string_view name, double alpha);
bool variant_needs_alpha(std::string_view name);

// Functional names for schedule runs: raw-shannon, raw-renyi,
// compatible-shannon:signed|abs|pos|log1p, compatible-renyi.
DiscretizationFunctional parse_functional_name(std::string_view name, double alpha,
                                               bool include_tails, bool paper_literal);

}  // namespace entrokit
