// Copyright 2026 The Castellan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zstab/witness.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"

namespace castellan {

namespace {

std::int64_t FloorOf(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

BigInt GeometricSum(std::size_t base, std::int64_t terms) {
  BigInt sum = 0, power = 1;
  for (std::int64_t i = 0; i < terms; ++i) {
    sum += power;
    power *= static_cast<unsigned long>(base);
  }
  return sum;
}

std::int64_t LambdaIndex(const ParamTable& table) {
  std::int64_t n = 1;
  for (const auto& row : table) n *= row.index();  // distinct primes
  return n;
}

// Y_0: equivariance defect of φ on Λ_0, plus the t with φ(t) in some Λ_γ.
std::vector<std::int64_t> DefectSet(const SectionData& section,
                                    const ParamTable& table,
                                    const std::vector<LambdaElem>& lambda0) {
  const std::int64_t n = section.quotient_size;
  std::vector<std::int64_t> out;
  for (std::int64_t t = 0; t < n; ++t) {
    const LambdaElem phi = section.phi[static_cast<std::size_t>(t)];
    bool bad = false;
    for (LambdaElem lam : lambda0) {
      bad = bad ||
            lam + phi != section.phi[static_cast<std::size_t>(Mod(lam + t, n))];
    }
    for (const auto& row : table) bad = bad || Mod(phi, row.index()) == 0;
    if (bad) out.push_back(t);
  }
  return out;
}

WreathElem LampAt(std::size_t d, LambdaElem pos, std::int64_t value) {
  ZdVector v = ZdVector::Zero(d);
  v[0] = value;
  return {LampConfig({{pos, v}}), 0};
}

std::string UnitName(std::int64_t i, std::int64_t j) {
  return "e_" + std::to_string(i) + std::to_string(j);
}

}  // namespace

std::int64_t OrderZeroWitness::RowOf(State x) const {
  const std::int64_t l = piece_l[x];
  return l < spec.n * c ? l % spec.n : -1;
}

namespace {

// Fields that depend on the spec alone.
OrderZeroWitness Prepare(const WitnessSpec& spec) {
  Require(spec.n >= 2, ErrorCode::kInvalidArgument, "n must be at least 2");
  Require(spec.eps > 0 && spec.eps < 1, ErrorCode::kInvalidArgument,
          "epsilon must lie in (0, 1)");
  Require(spec.d >= 1, ErrorCode::kInvalidArgument, "d must be positive");
  OrderZeroWitness w;
  w.spec = spec;
  std::set<LambdaElem> lam;
  for (LambdaElem l : spec.lambda0) {
    if (l == 0) continue;
    lam.insert(l);
    lam.insert(-l);
  }
  Require(!lam.empty(), ErrorCode::kInvalidArgument, "Lambda_0 is empty");
  w.lambda0.assign(lam.begin(), lam.end());

  w.f_table = ChooseParams(spec.f_gammas, spec.d, spec.f_prime_floor);
  std::vector<std::int64_t> f_primes;
  for (const auto& row : w.f_table) {
    w.p_mult *= row.p;
    f_primes.push_back(row.p);
  }

  w.m = FloorOf(2 / spec.eps) + 1;
  const BigInt ball = GeometricSum(w.lambda0.size(), w.m);
  w.eta = spec.eps / Rational(2 * ball + 1);
  return w;
}

// Everything downstream of E, φ, Y_0 and f.
void Assemble(OrderZeroWitness& w) {
  const WitnessSpec& spec = w.spec;
  auto x_e = std::make_shared<QuotientSpace>(w.e_table, spec.d, spec.state_cap);
  w.x_f = std::make_shared<QuotientSpace>(w.f_table, spec.d, spec.state_cap);
  const std::int64_t n_e = x_e->lambda_index();
  Require(w.section.quotient_size == n_e &&
              static_cast<std::int64_t>(w.section.phi.size()) == n_e &&
              static_cast<std::int64_t>(w.cake.level.size()) == n_e,
          ErrorCode::kInvalidArgument,
          "section or wedding-cake data does not match [Lambda : Lambda_E]");
  for (auto t : w.y0) {
    Require(t >= 0 && t < n_e, ErrorCode::kInvalidArgument,
            "Y_0 entry out of range");
  }
  w.q = x_e->prime_product();
  w.c = w.q / spec.n;
  w.r = w.q % spec.n;
  Require(w.c >= 1, ErrorCode::kPrecondition, "Q is smaller than n");

  const FinAction& act = x_e->action();
  const auto wset = WSet(*x_e).Members();
  w.w_size = wset.size();
  w.piece_t.assign(act.size(), -1);
  w.piece_l.assign(act.size(), -1);
  for (std::int64_t t = 0; t < n_e; ++t) {
    const LambdaElem phi = w.section.phi[static_cast<std::size_t>(t)];
    for (std::int64_t l = 0; l < w.q; ++l) {
      const WreathElem mover = LampAt(spec.d, phi, l * w.p_mult);
      for (State x : wset) {
        const State y = act.Act(mover, act.Shift(x, phi));
        Require(w.piece_t[y] < 0, ErrorCode::kPipeline,
                "translates of W overlap");
        w.piece_t[y] = t;
        w.piece_l[y] = l;
      }
    }
  }
  w.x_r = StateSubset(act.size());
  for (State x = 0; x < act.size(); ++x) {
    Require(w.piece_t[x] >= 0, ErrorCode::kPipeline,
            "translates of W miss a state");
    if (w.piece_l[x] >= spec.n * w.c) w.x_r.Insert(x);
  }

  const auto n = static_cast<std::size_t>(spec.n);
  w.psi.assign(n, std::vector<FormalElement>(n, FormalElement(act)));
  w.rho = w.psi;
  // Group element P(i−j)ξ_1^{φ(t)}, indexed by t and i − j + n − 1.
  std::vector<std::vector<WreathElem>> mover(static_cast<std::size_t>(n_e));
  for (std::int64_t t = 0; t < n_e; ++t) {
    for (std::int64_t k = -(spec.n - 1); k < spec.n; ++k) {
      mover[static_cast<std::size_t>(t)].push_back(LampAt(
          spec.d, w.section.phi[static_cast<std::size_t>(t)], w.p_mult * k));
    }
  }
  for (State x = 0; x < act.size(); ++x) {
    const std::int64_t i = w.RowOf(x);
    if (i < 0) continue;
    const auto t = static_cast<std::size_t>(w.piece_t[x]);
    const Rational f = w.cake.Value(static_cast<State>(t));
    for (std::int64_t j = 0; j < spec.n; ++j) {
      const WreathElem& g = mover[t][static_cast<std::size_t>(i - j + spec.n - 1)];
      w.psi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].AddTerm(
          g, x, 1);
      w.rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].AddTerm(
          g, x, f);
    }
  }
  w.x_e = std::move(x_e);
}

}  // namespace

OrderZeroWitness BuildWitness(const WitnessSpec& spec) {
  OrderZeroWitness w = Prepare(spec);
  std::vector<std::int64_t> f_primes;
  for (const auto& row : w.f_table) f_primes.push_back(row.p);

  std::vector<WreathElem> candidates;
  for (LambdaElem s = 1;
       static_cast<int>(candidates.size()) < spec.max_gammas; ++s) {
    const WreathElem g = ShiftElem(s);
    if (std::find(spec.f_gammas.begin(), spec.f_gammas.end(), g) ==
        spec.f_gammas.end()) {
      candidates.push_back(g);
    }
  }

  // Primes must exceed 2n/ε.
  std::int64_t floor = FloorOf(Rational(2 * spec.n) / spec.eps);
  bool found = false;
  while (!found) {
    Require(floor <= spec.prime_cap, ErrorCode::kCapExceeded,
            "no admissible E below the prime cap");
    std::int64_t next_floor = floor + 1;
    for (int count = 1; count <= spec.max_gammas && !found; ++count) {
      const ParamTable table =
          ChooseParams({candidates.begin(), candidates.begin() + count},
                       spec.d, floor, MakeRational(1, 4), {}, f_primes);
      if (count == 1) next_floor = table[0].p;
      BigInt size = 1;
      for (const auto& row : table) {
        size *= static_cast<long>(row.index());
        for (std::int64_t k = 0; k < row.l * static_cast<std::int64_t>(spec.d);
             ++k) {
          size *= static_cast<long>(row.p);
        }
      }
      if (size > BigInt(std::to_string(spec.state_cap))) break;
      const std::int64_t n_e = LambdaIndex(table);
      SectionData section = CanonicalSection(n_e, w.lambda0);
      const auto y0 = DefectSet(section, table, w.lambda0);
      if (Rational(static_cast<long>(y0.size())) < w.eta * n_e) {
        w.e_table = table;
        w.section = std::move(section);
        w.y0 = y0;
        found = true;
      }
    }
    floor = next_floor;
  }

  const std::int64_t n_e = LambdaIndex(w.e_table);
  const SchreierGraph graph(FinAction::Cyclic(static_cast<std::size_t>(n_e)),
                            ShiftSet(w.lambda0));
  std::vector<State> y0_states;
  for (auto t : w.y0) y0_states.push_back(static_cast<State>(t));
  w.cake = WeddingCake(
      graph,
      StateSubset::FromStates(static_cast<std::size_t>(n_e), y0_states), w.m);
  Assemble(w);
  return w;
}

OrderZeroWitness AssembleWitness(const WitnessSpec& spec,
                                 const WitnessChoice& choice) {
  OrderZeroWitness w = Prepare(spec);
  w.e_table = choice.e_table;
  Require(!w.e_table.empty(), ErrorCode::kInvalidArgument, "E is empty");
  const std::int64_t n_e = LambdaIndex(w.e_table);
  w.section.quotient_size = n_e;
  w.section.phi = choice.phi;
  w.section.k = w.lambda0;
  w.section.eps = spec.eps;
  w.y0 = choice.y0;
  w.cake.n = w.m;
  w.cake.level = choice.cake_levels;
  for (auto v : w.cake.level) {
    Require(v >= 0 && v <= w.m, ErrorCode::kInvalidArgument,
            "wedding-cake level out of range");
  }
  Assemble(w);
  return w;
}

StructureReport CheckWitnessStructure(const OrderZeroWitness& w) {
  StructureReport rep;
  auto note = [&rep](const std::string& s) {
    if (rep.detail.empty()) rep.detail = s;
  };
  const Rational& eps = w.spec.eps;
  rep.m_ok = Rational(w.m) > 2 / eps && Rational(w.m - 1) <= 2 / eps;
  if (!rep.m_ok) note("m is not the least integer above 2/eps");
  const BigInt ball = GeometricSum(w.lambda0.size(), w.m);
  rep.eta_ok = w.eta > 0 && w.eta < eps / Rational(2 * ball);
  if (!rep.eta_ok) note("eta too large");

  const std::int64_t n_e = w.x_e->lambda_index();
  std::set<std::int64_t> f_primes;
  for (const auto& row : w.f_table) f_primes.insert(row.p);
  bool primes_ok = !w.e_table.empty();
  for (const auto& row : w.e_table) {
    primes_ok = primes_ok && Rational(row.p) > Rational(2 * w.spec.n) / eps &&
                !f_primes.count(row.p) &&
                std::find(w.spec.f_gammas.begin(), w.spec.f_gammas.end(),
                          row.gamma) == w.spec.f_gammas.end();
  }
  primes_ok = primes_ok &&
              CheckConditions(w.e_table, w.spec.d, MakeRational(1, 4)).all() &&
              CheckConditions(w.f_table, w.spec.d, MakeRational(1, 4)).all();
  bool phi_ok = w.section.quotient_size == n_e &&
                static_cast<std::int64_t>(w.section.phi.size()) == n_e;
  for (std::int64_t t = 0; phi_ok && t < n_e; ++t) {
    phi_ok = Mod(w.section.phi[static_cast<std::size_t>(t)], n_e) == t;
  }
  const auto y0 = phi_ok ? DefectSet(w.section, w.e_table, w.lambda0)
                         : std::vector<std::int64_t>{};
  rep.section_ok = primes_ok && phi_ok && y0 == w.y0 &&
                   Rational(static_cast<long>(y0.size())) < w.eta * n_e;
  if (!rep.section_ok) note("E, the section or Y_0 fails its conditions");

  // (i) f = 0 on Y_0; (ii) 1/m-Lipschitz along Λ_0; (iii) ball bound.
  bool cake = static_cast<std::int64_t>(w.cake.level.size()) == n_e &&
              w.cake.n == w.m;
  for (auto t : w.y0) {
    cake = cake && w.cake.Value(static_cast<State>(t)) == 0;
  }
  for (std::int64_t t = 0; cake && t < n_e; ++t) {
    const Rational ft = w.cake.Value(static_cast<State>(t));
    cake = ft >= 0 && ft <= 1;
    for (LambdaElem lam : w.lambda0) {
      const Rational diff =
          w.cake.Value(static_cast<State>(Mod(t + lam, n_e))) - ft;
      cake = cake && abs(diff) <= Rational(1, w.m);
    }
  }
  cake = cake && BigInt(static_cast<long>(w.cake.CountNotOne())) <=
                     WeddingCakeBound(w.lambda0.size(), w.m, w.y0.size());
  rep.cake_ok = cake;
  if (!cake) note("wedding-cake function fails a property");

  // Every piece has |W| states and the pieces cover X_E once.
  const std::size_t total = w.x_e->size();
  std::vector<std::size_t> piece_size(
      static_cast<std::size_t>(n_e * w.q), 0);
  bool dec = w.w_size * static_cast<std::size_t>(n_e * w.q) == total &&
             w.q == w.spec.n * w.c + w.r && w.r >= 0 && w.r < w.spec.n;
  for (State x = 0; dec && x < total; ++x) {
    dec = w.piece_t[x] >= 0 && w.piece_l[x] >= 0 && w.piece_l[x] < w.q;
    if (dec) {
      ++piece_size[static_cast<std::size_t>(w.piece_t[x] * w.q + w.piece_l[x])];
    }
    dec = dec && (w.x_r.Contains(x) == (w.RowOf(x) < 0));
  }
  for (auto s : piece_size) dec = dec && s == w.w_size;
  rep.decomposition_ok = dec;
  if (!dec) note("decomposition of X_E is not an exact partition");

  rep.cut_small =
      MakeRational(static_cast<std::int64_t>(w.cake.CountNotOne()), n_e) <
          eps / 2 &&
      MakeRational(w.spec.n, w.q) < eps / 2;
  if (!rep.cut_small) note("cut measure is not below eps/2");
  return rep;
}

RelationReport VerifyPsiHomomorphism(const OrderZeroWitness& w) {
  RelationReport rep;
  rep.ok = true;
  const auto n = static_cast<std::size_t>(w.spec.n);
  const FormalElement zero(w.x_e->action());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ++rep.checked;
      if (!(w.psi[i][j].Adjoint() == w.psi[j][i])) {
        rep.ok = false;
        if (rep.detail.empty()) {
          rep.detail = "adjoint of psi(" + UnitName(static_cast<std::int64_t>(i),
                                                    static_cast<std::int64_t>(j)) +
                       ") is wrong";
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          ++rep.checked;
          const FormalElement prod = w.psi[i][j] * w.psi[k][l];
          const bool good = j == k ? prod == w.psi[i][l] : prod == zero;
          if (!good) {
            rep.ok = false;
            if (rep.detail.empty()) {
              rep.detail = "psi(" + UnitName(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) + ") psi(" +
                           UnitName(static_cast<std::int64_t>(k), static_cast<std::int64_t>(l)) + ") is wrong";
            }
          }
        }
      }
    }
  }
  return rep;
}

RelationReport VerifyOrderZero(const OrderZeroWitness& w) {
  RelationReport rep;
  rep.ok = true;
  const auto n = static_cast<std::size_t>(w.spec.n);
  FormalElement rho1(w.x_e->action());
  for (std::size_t i = 0; i < n; ++i) rho1 += w.rho[i][i];
  ++rep.checked;
  if (!rho1.IsFunction()) {
    rep.ok = false;
    rep.detail = "rho(1) is not a function";
    return rep;
  }
  // ρ(1) = Σ_t f(t)·1_{⊔_j X_{E,j,t}}, pointwise in [0, 1].
  const CoeffFn empty;
  const CoeffFn& fn = rho1.IsZero() ? empty : rho1.terms().begin()->second;
  for (State x = 0; x < w.x_e->size(); ++x) {
    const auto it = fn.find(x);
    const Rational v = it == fn.end() ? Rational(0) : it->second;
    const Rational expect =
        w.RowOf(x) < 0 ? Rational(0)
                       : w.cake.Value(static_cast<State>(w.piece_t[x]));
    if (v != expect || v < 0 || v > 1) {
      rep.ok = false;
      rep.detail = "rho(1) wrong at state " + std::to_string(x);
      return rep;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rep.checked += 2;
      if (!(rho1 * w.psi[i][j] == w.rho[i][j]) ||
          !(w.psi[i][j] * rho1 == w.rho[i][j])) {
        rep.ok = false;
        if (rep.detail.empty()) {
          rep.detail = "order-zero identity fails at " +
                       UnitName(static_cast<std::int64_t>(i),
                                static_cast<std::int64_t>(j));
        }
      }
    }
  }
  return rep;
}

TraceGapReport VerifyTraceGap(const OrderZeroWitness& w) {
  TraceGapReport rep;
  const auto xf_size = static_cast<std::int64_t>(w.x_f->size());
  std::set<State> a(w.spec.a_states.begin(), w.spec.a_states.end());
  for (State s : a) {
    Require(s < w.x_f->size(), ErrorCode::kInvalidArgument,
            "a refers to a state outside X_F");
  }
  rep.supp_a = a.empty() ? Rational(1)
                         : MakeRational(static_cast<std::int64_t>(a.size()),
                                        xf_size);
  Require(rep.supp_a > w.spec.eps, ErrorCode::kPrecondition,
          "mu(supp a) = " + FormatRational(rep.supp_a) +
              " does not exceed epsilon");

  const auto n = static_cast<std::size_t>(w.spec.n);
  FormalElement rho1(w.x_e->action());
  for (std::size_t i = 0; i < n; ++i) rho1 += w.rho[i][i];
  const CoeffFn empty;
  const CoeffFn& fn = rho1.IsFunction() && !rho1.IsZero()
                          ? rho1.terms().begin()->second
                          : empty;
  const auto total = static_cast<std::int64_t>(w.x_e->size());
  std::int64_t supp = 0, xr = 0, cut = 0;
  bool matches = rho1.IsFunction();
  for (State x = 0; x < w.x_e->size(); ++x) {
    const auto it = fn.find(x);
    const Rational v = it == fn.end() ? Rational(0) : it->second;
    const bool in_supp = v != 1;
    const bool in_xr = w.x_r.Contains(x);
    const bool in_cut =
        !in_xr && !w.cake.IsOne(static_cast<State>(w.piece_t[x]));
    supp += in_supp ? 1 : 0;
    xr += in_xr ? 1 : 0;
    cut += in_cut ? 1 : 0;
    matches = matches && in_supp == (in_xr || in_cut);
  }
  rep.support_matches = matches;
  rep.gap = MakeRational(supp, total);
  rep.measure_xr = MakeRational(xr, total);
  rep.measure_cut = MakeRational(cut, total);
  const auto n_e = w.x_e->lambda_index();
  const auto not_one = static_cast<std::int64_t>(w.cake.CountNotOne());
  rep.formula_xr = MakeRational(w.r, w.q);
  rep.formula_cut =
      Rational(BigInt(not_one) * w.spec.n * w.c) / Rational(BigInt(n_e) * w.q);
  rep.bound = MakeRational(w.spec.n, w.q) + MakeRational(not_one, n_e);
  rep.certified = matches && rep.gap == rep.measure_xr + rep.measure_cut &&
                  rep.measure_xr == rep.formula_xr &&
                  rep.measure_cut == rep.formula_cut && rep.gap <= rep.bound &&
                  rep.bound < w.spec.eps && w.spec.eps <= rep.supp_a;
  return rep;
}

std::string SpecElement::Name() const {
  switch (kind) {
    case SpecKind::kIndicator:
      return "indicator";
    case SpecKind::kLamp:
      return "xi_" + std::to_string(lamp);
    case SpecKind::kShift:
      return "shift " + std::to_string(shift);
  }
  return "?";
}

std::vector<SpecElement> SpecElements(const OrderZeroWitness& w) {
  std::vector<SpecElement> out;
  out.push_back({SpecKind::kIndicator, 1, 0});
  for (std::size_t k = 1; k <= w.spec.d; ++k) {
    out.push_back({SpecKind::kLamp, k, 0});
  }
  for (LambdaElem lam : w.lambda0) out.push_back({SpecKind::kShift, 1, lam});
  return out;
}

DefectReport CommutatorDefect(const OrderZeroWitness& w,
                              const SpecElement& s) {
  DefectReport rep;
  rep.element = s;
  rep.worst.exact = true;
  const auto n = static_cast<std::size_t>(w.spec.n);
  const FinAction& act = w.x_e->action();

  std::unique_ptr<QuotientSpace> joint;
  std::vector<std::vector<State>> preimage;
  std::unique_ptr<FormalElement> probe;
  if (s.kind == SpecKind::kIndicator) {
    ParamTable table = w.f_table;
    table.insert(table.end(), w.e_table.begin(), w.e_table.end());
    joint = std::make_unique<QuotientSpace>(table, w.spec.d, w.spec.state_cap);
    const auto to_e = RefinementMap(*joint, *w.x_e);
    const auto to_f = RefinementMap(*joint, *w.x_f);
    preimage.resize(w.x_e->size());
    const std::set<State> s0(w.spec.s0_states.begin(), w.spec.s0_states.end());
    StateSubset h(joint->size());
    for (State x = 0; x < joint->size(); ++x) {
      preimage[to_e[x]].push_back(x);
      if (s0.count(to_f[x])) h.Insert(x);
    }
    probe = std::make_unique<FormalElement>(
        FormalElement::Indicator(joint->action(), h));
    rep.analytic_bound = 0;
  } else if (s.kind == SpecKind::kLamp) {
    probe = std::make_unique<FormalElement>(
        FormalElement::Unitary(act, XiGenerator(w.spec.d, s.lamp, 0)));
    rep.analytic_bound = 0;
  } else {
    probe = std::make_unique<FormalElement>(
        FormalElement::Unitary(act, ShiftElem(s.shift)));
    const auto n_e = w.x_e->lambda_index();
    Rational worst_f = 0;
    for (auto t : w.y0) {
      worst_f = std::max(
          worst_f, w.cake.Value(static_cast<State>(Mod(t + s.shift, n_e))));
    }
    rep.analytic_bound = Rational(1, w.m) + worst_f;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      FormalElement unit = w.rho[i][j];
      if (joint) {
        FormalElement lifted(joint->action());
        for (const auto& [g, a] : unit.terms()) {
          for (const auto& [x, c] : a) {
            for (State y : preimage[x]) lifted.AddTerm(g, y, c);
          }
        }
        unit = std::move(lifted);
      }
      const FormalElement comm = *probe * unit - unit * *probe;
      const NormBound nb = FormalNormBound(comm);
      rep.per_unit.push_back(nb);
      rep.worst.exact = rep.worst.exact && nb.exact;
      rep.worst.value = std::max(rep.worst.value, nb.value);
    }
  }
  rep.within = rep.worst.exact && rep.worst.value <= rep.analytic_bound &&
               rep.worst.value <= w.spec.eps;
  return rep;
}

}  // namespace castellan
