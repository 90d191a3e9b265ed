#pragma once

#include <string>
#include <vector>

#include "qtt/torus.hpp"

namespace qtt {

enum class Gen { E, F, Kh, Khi, Lh, Lhi };
using Word = std::vector<Gen>;
const char* gen_name(Gen g);

struct GeneratorSet {
  TorusElement E, F, Khalf, Khalf_inv, Lhalf, Lhalf_inv, C, T, Hp, Hdel;
  const TorusElement& get(Gen g) const;
  TorusElement eval(const Word& w) const;
};

GeneratorSet build_generators(const RootContext& ctx, TriPtr d1);
GeneratorSet build_generators(const RootContext& ctx);

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};
using Report = std::vector<CheckResult>;
bool all_pass(const Report& r);

// sum of coefficient * word = 0
struct Relation {
  std::string id;
  std::vector<std::pair<ExactScalar, Word>> terms;
};
std::vector<Relation> presentation_relations(int N);

Report verify_presentation(const GeneratorSet& g);
Report casimir_and_center_check(const GeneratorSet& g);

// sum over terms of coefficient * (word_1 (x) ... (x) word_n)
struct TensorWordSum {
  int width = 1;
  std::vector<std::pair<ExactScalar, std::vector<Word>>> terms;
};
TensorWordSum coproduct_word(int N, Gen g);
// applies the coproduct to tensor slot `slot`, widening by one
TensorWordSum apply_coproduct(const TensorWordSum& x, int slot);
TensorTorusElement evaluate(const GeneratorSet& g, const TensorWordSum& x);
TensorTorusElement coproduct(const GeneratorSet& g, Gen x);
Report hopf_axiom_check(const GeneratorSet& g);

Gen cartan(Gen g);
Report cartan_involution_check(int N);

}  // namespace qtt
