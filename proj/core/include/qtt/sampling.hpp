#pragma once

#include <random>

#include "qtt/reps.hpp"

namespace qtt {

// seeded draws used by the tests, the acceptance runner, benchmarks and the CLI
class Sampler {
 public:
  explicit Sampler(unsigned long long seed) : rng_(seed) {}
  // modulus log-uniform in [1/spread, spread], uniform argument
  cplx nonzero(double spread = 1.6);
  cplx gaussian();
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  WeightModuleSpec cyclic();
  WeightModuleSpec semi();
  WeightModuleSpec diag(int N);
  WeightModuleSpec any_weight(int N);
  StandardModuleSpec standard();

 private:
  std::mt19937_64 rng_;
};

}  // namespace qtt
