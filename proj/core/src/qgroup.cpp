#include "qtt/qgroup.hpp"

#include <map>

namespace qtt {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::E: return "E";
    case Gen::F: return "F";
    case Gen::Kh: return "K^1/2";
    case Gen::Khi: return "K^-1/2";
    case Gen::Lh: return "L^1/2";
    case Gen::Lhi: return "L^-1/2";
  }
  return "?";
}

const TorusElement& GeneratorSet::get(Gen g) const {
  switch (g) {
    case Gen::E: return E;
    case Gen::F: return F;
    case Gen::Kh: return Khalf;
    case Gen::Khi: return Khalf_inv;
    case Gen::Lh: return Lhalf;
    case Gen::Lhi: return Lhalf_inv;
  }
  throw Error("Internal", "unknown generator");
}

TorusElement GeneratorSet::eval(const Word& w) const {
  TorusElement r = TorusElement::scalar(E.tri(), E.N(), ExactScalar::integer(E.N(), 1));
  for (Gen g : w) r = r * get(g);
  return r;
}

GeneratorSet build_generators(const RootContext& ctx, TriPtr tri) {
  const int N = ctx.N;
  auto mono = [&](const Expo& k) { return TorusElement::monomial(tri, N, k); };
  auto u = ExactScalar::u_pow(N, 1);
  GeneratorSet g;
  g.Khalf = mono({-1, 0, -1, -1});
  g.Khalf_inv = mono({1, 0, 1, 1});
  g.Lhalf = mono({-1, -1, 0, -1});
  g.Lhalf_inv = mono({1, 1, 0, 1});
  g.E = (mono(d1::X(4, -1)) + mono(d1::add({d1::X(3, -1), d1::X(4, -1)}))).scaled(-u);
  g.F = (mono(d1::X(1, -1)) + mono(d1::add({d1::X(1, -1), d1::X(2, -1)}))).scaled(u);
  g.Hp = mono(d1::Hp);
  g.Hdel = mono(d1::Hdel);
  g.T = g.Hp + mono(d1::neg(d1::Hp));
  g.C = (g.T * mono(d1::neg(d1::Hdel))).scaled(-(u * u));
  return g;
}

GeneratorSet build_generators(const RootContext& ctx) { return build_generators(ctx, delta1(ctx)); }

bool all_pass(const Report& r) {
  for (auto& c : r)
    if (!c.pass) return false;
  return true;
}

std::vector<Relation> presentation_relations(int N) {
  auto one = ExactScalar::integer(N, 1);
  auto m1 = ExactScalar::integer(N, -1);
  auto u = ExactScalar::u_pow(N, 1);
  std::vector<Relation> rels;
  auto qcomm = [&](const char* id, Gen a, Gen b, int qexp) {
    // a b = q^qexp b a
    rels.push_back({id, {{one, {a, b}}, {-ExactScalar::q_pow(N, qexp), {b, a}}}});
  };
  qcomm("E K^1/2 = q^-1 K^1/2 E", Gen::E, Gen::Kh, -1);
  qcomm("E L^1/2 = q L^1/2 E", Gen::E, Gen::Lh, 1);
  qcomm("F K^1/2 = q K^1/2 F", Gen::F, Gen::Kh, 1);
  qcomm("F L^1/2 = q^-1 L^1/2 F", Gen::F, Gen::Lh, -1);
  const Gen cartan_family[] = {Gen::Kh, Gen::Khi, Gen::Lh, Gen::Lhi};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Gen a = cartan_family[i], b = cartan_family[j];
      std::string id = std::string(gen_name(a)) + " " + gen_name(b) + " = " + gen_name(b) + " " + gen_name(a);
      rels.push_back({id, {{one, {a, b}}, {m1, {b, a}}}});
    }
  rels.push_back({"K^1/2 K^-1/2 = 1", {{one, {Gen::Kh, Gen::Khi}}, {m1, {}}}});
  rels.push_back({"L^1/2 L^-1/2 = 1", {{one, {Gen::Lh, Gen::Lhi}}, {m1, {}}}});
  rels.push_back({"EF - FE = (K - L)/(q - q^-1)",
                  {{one, {Gen::E, Gen::F}},
                   {m1, {Gen::F, Gen::E}},
                   {-u, {Gen::Kh, Gen::Kh}},
                   {u, {Gen::Lh, Gen::Lh}}}});
  return rels;
}

static TorusElement eval_relation(const GeneratorSet& g, const Relation& r) {
  TorusElement acc;
  for (auto& [c, w] : r.terms) acc += g.eval(w).scaled(c);
  return acc;
}

Report verify_presentation(const GeneratorSet& g) {
  Report rep;
  for (auto& r : presentation_relations(g.E.N())) {
    auto res = eval_relation(g, r);
    rep.push_back({r.id, res.is_zero(), res.is_zero() ? "" : std::to_string(res.terms().size()) + " residual terms"});
  }
  return rep;
}

Report casimir_and_center_check(const GeneratorSet& g) {
  const int N = g.E.N();
  auto tri = g.E.tri();
  auto one = TorusElement::scalar(tri, N, ExactScalar::integer(N, 1));
  auto u = ExactScalar::u_pow(N, 1);
  auto K = g.Khalf * g.Khalf;
  auto L = g.Lhalf * g.Lhalf;
  Report rep;
  auto add = [&](const std::string& id, const TorusElement& res) { rep.push_back({id, res.is_zero(), ""}); };

  add("H_del = K^-1/2 L^-1/2", g.Hdel - g.Khalf_inv * g.Lhalf_inv);
  add("Casimir: C = EF + (qL + q^-1 K)/(q - q^-1)^2",
      g.C - g.E * g.F - (L.scaled(ExactScalar::q_pow(N, 1)) + K.scaled(ExactScalar::q_pow(N, -1))).scaled(u * u));

  // two-term collapse (a + b)^N = a^N + b^N for the q^2-commuting summands of E and F
  auto mono = [&](const Expo& k) { return TorusElement::monomial(tri, N, k); };
  auto ea = mono(d1::X(4, -1)), eb = mono(d1::add({d1::X(3, -1), d1::X(4, -1)}));
  auto fa = mono(d1::X(1, -1)), fb = mono(d1::add({d1::X(1, -1), d1::X(2, -1)}));
  add("(X4^-1 + [X3X4]^-1)^N = X4^-N + [X3X4]^-N", (ea + eb).pow(N) - ea.pow(N) - eb.pow(N));
  add("(X1^-1 + [X1X2]^-1)^N = X1^-N + [X1X2]^-N", (fa + fb).pow(N) - fa.pow(N) - fb.pow(N));
  auto sgn = ExactScalar::integer(N, (N % 2) ? -1 : 1);
  auto EN = (ea.pow(N) + eb.pow(N)).scaled(sgn * ExactScalar::u_pow(N, N));
  auto FN = (fa.pow(N) + fb.pow(N)).scaled(ExactScalar::u_pow(N, N));
  add("E^N via collapse", EN - g.E.pow(N));
  add("F^N via collapse", FN - g.F.pow(N));

  // Chebyshev on the torus element T
  TorusElement t0 = one.scaled(ExactScalar::integer(N, 2)), t1 = g.T;
  for (int i = 1; i < N; ++i) {
    auto t2 = g.T * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  auto center = t1 + g.Khalf.pow(N) * g.Lhalf_inv.pow(N) + g.Lhalf.pow(N) * g.Khalf_inv.pow(N) +
                (EN * FN * g.Hdel.pow(N)).scaled(ExactScalar::u_pow(N, -2 * N));
  add("T_N(T) + K^N/2 L^-N/2 + L^N/2 K^-N/2 + (q - q^-1)^2N E^N F^N H_del^N = 0", center);

  auto trunc = g.T + g.Hdel * (K.scaled(ExactScalar::q_pow(N, -1)) + L.scaled(ExactScalar::q_pow(N, 1))) +
               (g.E * g.F * g.Hdel).scaled(ExactScalar::u_pow(N, -2));
  add("T = -H_del (q^-1 K + q L) - (q - q^-1)^2 E F H_del", trunc);

  for (Gen x : {Gen::E, Gen::F, Gen::Kh, Gen::Lh}) {
    add(std::string("T commutes with ") + gen_name(x), g.T * g.get(x) - g.get(x) * g.T);
    add(std::string("E^N commutes with ") + gen_name(x), EN * g.get(x) - g.get(x) * EN);
    add(std::string("F^N commutes with ") + gen_name(x), FN * g.get(x) - g.get(x) * FN);
  }
  // no cross terms survive: exactly the two N-th powers remain
  // coefficients are unreduced cyclotomic sums, so count the ones that are really nonzero
  auto live = [](const TorusElement& x) {
    int n = 0;
    for (auto& [k, c] : x.terms()) n += !c.is_zero();
    return n;
  };
  rep.push_back({"E^N has two monomials", live(g.E.pow(N)) == 2, ""});
  rep.push_back({"F^N has two monomials", live(g.F.pow(N)) == 2, ""});
  return rep;
}

// --- Hopf structure on generator words -------------------------------------

TensorWordSum coproduct_word(int N, Gen g) {
  auto one = ExactScalar::integer(N, 1);
  TensorWordSum d;
  d.width = 2;
  switch (g) {
    case Gen::E:
      d.terms = {{one, {{}, {Gen::E}}}, {one, {{Gen::E}, {Gen::Kh, Gen::Kh}}}};
      break;
    case Gen::F:
      d.terms = {{one, {{Gen::F}, {}}}, {one, {{Gen::Lh, Gen::Lh}, {Gen::F}}}};
      break;
    default:
      d.terms = {{one, {{g}, {g}}}};
  }
  return d;
}

TensorWordSum apply_coproduct(const TensorWordSum& x, int slot) {
  TensorWordSum out;
  out.width = x.width + 1;
  const int N = x.terms.empty() ? 3 : x.terms.front().first.N();
  for (auto& [c, words] : x.terms) {
    // Delta of a word is the product of Delta of its letters
    std::vector<std::pair<ExactScalar, std::pair<Word, Word>>> acc{{c, {{}, {}}}};
    for (Gen g : words[slot]) {
      auto dg = coproduct_word(N, g);
      std::vector<std::pair<ExactScalar, std::pair<Word, Word>>> nxt;
      for (auto& [c1, ww] : acc)
        for (auto& [c2, pair] : dg.terms) {
          Word a = ww.first, b = ww.second;
          a.insert(a.end(), pair[0].begin(), pair[0].end());
          b.insert(b.end(), pair[1].begin(), pair[1].end());
          nxt.push_back({c1 * c2, {a, b}});
        }
      acc.swap(nxt);
    }
    for (auto& [c1, ww] : acc) {
      std::vector<Word> w2;
      for (int s = 0; s < x.width; ++s) {
        if (s == slot) {
          w2.push_back(ww.first);
          w2.push_back(ww.second);
        } else {
          w2.push_back(words[s]);
        }
      }
      out.terms.push_back({c1, w2});
    }
  }
  return out;
}

TensorTorusElement evaluate(const GeneratorSet& g, const TensorWordSum& x) {
  TensorTorusElement acc(std::vector<TriPtr>(x.width, g.E.tri()), g.E.N());
  for (auto& [c, words] : x.terms) {
    std::vector<TorusElement> fs;
    for (auto& w : words) fs.push_back(g.eval(w));
    acc += TensorTorusElement::outer(fs).scaled(c);
  }
  return acc;
}

TensorTorusElement coproduct(const GeneratorSet& g, Gen x) { return evaluate(g, coproduct_word(g.E.N(), x)); }

static bool counit_letter(Gen g) { return g != Gen::E && g != Gen::F; }

// S is an anti-homomorphism; on each letter it returns a signed word
static std::pair<long long, Word> antipode_word(const Word& w) {
  long long sign = 1;
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (*it) {
      case Gen::E: sign = -sign; out.insert(out.end(), {Gen::E, Gen::Khi, Gen::Khi}); break;
      case Gen::F: sign = -sign; out.insert(out.end(), {Gen::Lhi, Gen::Lhi, Gen::F}); break;
      case Gen::Kh: out.push_back(Gen::Khi); break;
      case Gen::Khi: out.push_back(Gen::Kh); break;
      case Gen::Lh: out.push_back(Gen::Lhi); break;
      case Gen::Lhi: out.push_back(Gen::Lh); break;
    }
  }
  return {sign, out};
}

Report hopf_axiom_check(const GeneratorSet& g) {
  const int N = g.E.N();
  auto tri = g.E.tri();
  Report rep;
  for (Gen x : {Gen::E, Gen::F, Gen::Kh, Gen::Khi, Gen::Lh, Gen::Lhi}) {
    std::string nm = gen_name(x);
    auto d = coproduct_word(N, x);
    auto lhs = evaluate(g, apply_coproduct(d, 0));
    auto rhs = evaluate(g, apply_coproduct(d, 1));
    rep.push_back({"coassociativity " + nm, (lhs - rhs).is_zero(), ""});

    // counit on either side
    TorusElement left, right;
    for (auto& [c, w] : d.terms) {
      bool e0 = true, e1 = true;
      for (Gen l : w[0]) e0 = e0 && counit_letter(l);
      for (Gen l : w[1]) e1 = e1 && counit_letter(l);
      if (e0) left += g.eval(w[1]).scaled(c);
      if (e1) right += g.eval(w[0]).scaled(c);
    }
    rep.push_back({"counit (eps x id) " + nm, (left - g.get(x)).is_zero(), ""});
    rep.push_back({"counit (id x eps) " + nm, (right - g.get(x)).is_zero(), ""});

    // m(S x id) Delta and m(id x S) Delta against eps(x) 1
    TorusElement ls, rs;
    for (auto& [c, w] : d.terms) {
      auto [s0, w0] = antipode_word(w[0]);
      auto [s1, w1] = antipode_word(w[1]);
      Word a = w0;
      a.insert(a.end(), w[1].begin(), w[1].end());
      Word b = w[0];
      b.insert(b.end(), w1.begin(), w1.end());
      ls += g.eval(a).scaled(c * ExactScalar::integer(N, s0));
      rs += g.eval(b).scaled(c * ExactScalar::integer(N, s1));
    }
    auto eps1 = TorusElement::scalar(tri, N, ExactScalar::integer(N, counit_letter(x) ? 1 : 0));
    rep.push_back({"antipode m(S x id)Delta " + nm, (ls - eps1).is_zero(), ""});
    rep.push_back({"antipode m(id x S)Delta " + nm, (rs - eps1).is_zero(), ""});
  }
  return rep;
}

Gen cartan(Gen g) {
  switch (g) {
    case Gen::E: return Gen::F;
    case Gen::F: return Gen::E;
    case Gen::Kh: return Gen::Lh;
    case Gen::Khi: return Gen::Lhi;
    case Gen::Lh: return Gen::Kh;
    case Gen::Lhi: return Gen::Khi;
  }
  return g;
}

Report cartan_involution_check(int N) {
  auto rels = presentation_relations(N);
  auto as_map = [](const Relation& r) {
    std::map<Word, ExactScalar> m;
    for (auto& [c, w] : r.terms) m.emplace(w, c);
    return m;
  };
  auto proportional = [](const std::map<Word, ExactScalar>& a, const std::map<Word, ExactScalar>& b) {
    if (a.size() != b.size()) return false;
    for (auto& [w, c] : a)
      if (!b.count(w)) return false;
    const auto& [w0, a0] = *a.begin();
    const auto& b0 = b.at(w0);
    for (auto& [w, c] : a)
      if (!(c * b0 - b.at(w) * a0).is_zero()) return false;
    return true;
  };
  Report rep;
  bool involutive = true;
  for (Gen x : {Gen::E, Gen::F, Gen::Kh, Gen::Khi, Gen::Lh, Gen::Lhi}) involutive = involutive && cartan(cartan(x)) == x;
  rep.push_back({"Theta^2 = id", involutive, ""});
  for (auto& r : rels) {
    Relation img{r.id, {}};
    for (auto& [c, w] : r.terms) {
      Word w2;
      for (Gen l : w) w2.push_back(cartan(l));
      img.terms.push_back({c, w2});
    }
    auto im = as_map(img);
    std::string hit;
    for (auto& s : rels)
      if (proportional(im, as_map(s))) hit = s.id;
    rep.push_back({"Theta(" + r.id + ")", !hit.empty(), hit});
  }
  return rep;
}

}  // namespace qtt
