#include "qtt/sampling.hpp"

namespace qtt {

cplx Sampler::nonzero(double spread) {
  const double r = std::exp(uniform(-std::log(spread), std::log(spread)));
  return std::polar(r, uniform(-std::acos(-1.0), std::acos(-1.0)));
}

cplx Sampler::gaussian() {
  std::normal_distribution<double> nd;
  return {nd(rng_), nd(rng_)};
}

WeightModuleSpec Sampler::cyclic() { return WeightModuleSpec::cyclic(nonzero(), nonzero(), nonzero(), nonzero()); }

WeightModuleSpec Sampler::semi() { return WeightModuleSpec::semi(nonzero(), nonzero(), nonzero()); }

WeightModuleSpec Sampler::diag(int N) {
  return WeightModuleSpec::diag(nonzero(), integer(0, 1) ? 1 : -1, integer(0, N - 1));
}

WeightModuleSpec Sampler::any_weight(int N) {
  switch (integer(0, 2)) {
    case 0: return diag(N);
    case 1: return cyclic();
    default: return semi();
  }
}

StandardModuleSpec Sampler::standard() { return {nonzero(), nonzero(), nonzero(), nonzero()}; }

}  // namespace qtt
