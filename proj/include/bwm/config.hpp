// Experiment configuration in sectioned `key = value` form.
//
//   [experiment]  name, suite, seed, output
//   [grid]        dim, n, box
//   [target]      kind, L, epsilon, poly, series_order, series_base
//   [data]        profile, delta, sharpness, radius, mode
//   [run]         dt, safety, t_final, record_every, picard_iterations,
//                 renormalize, nonlinear, refinement_check
//   [identity]    family, stencil_order, samples, dt, blocks
//   [picard]      deltas
//   [rescale]     lambda
//   [norms]       input, block_steps
//   [norm.<id>]   family, s, p, q, b, lambda, e    (one section per norm)
//
// `poly` lists perturbation terms as `component:coeff:e0,e1,...` separated
// by `;`. Lines starting with `#` or `;` are comments.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bwm/evolution.hpp"
#include "bwm/norms.hpp"

namespace bwm {

enum class Suite { linear, identity, conservation, picard, scaling, norms };
std::string to_string(Suite s);
Suite suite_from_string(const std::string& s);

struct IdentityOptions {
  std::string family = "random-linear";  // zero | sphere | dot | random-linear
  int stencil_order = 4;
  int samples = 9;
  double dt = 1e-2;
  int blocks = 3;
};

struct NormsOptions {
  std::string input;    // block file; empty generates a free-flow block
  int block_steps = 32;
  std::vector<NormSpec> specs;
};

struct Experiment {
  std::string name = "default";
  Suite suite = Suite::linear;
  std::uint64_t seed = 1;
  std::string output = "out";
  RunConfig run;
  bool refinement_check = true;
  IdentityOptions identity;
  std::vector<double> picard_deltas{0.01, 0.02, 0.04};
  double rescale_lambda = 2.0;
  NormsOptions norms;
};

Experiment parse_experiment(std::istream& in);
Experiment load_experiment(const std::string& path);
/// Text that parses back to the same experiment.
std::string serialize_experiment(const Experiment& e);

/// 17-significant-digit decimal form used for every floating output.
std::string format_double(double v);

}  // namespace bwm
