// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check pairs a library result with an oracle written
// here or in oracles.hpp from plain permutation iteration and counting.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "castellan/castellan.h"
#include "castles/castle.hpp"
#include "castles/multiscale.hpp"
#include "common/error.hpp"
#include "common/rational.hpp"
#include "dynamics/action.hpp"
#include "dynamics/action_json.hpp"
#include "dynamics/density.hpp"
#include "dynamics/schreier.hpp"
#include "joseph/joseph.hpp"
#include "oracles.hpp"
#include "report/certificate.hpp"
#include "report/config.hpp"
#include "report/inputs.hpp"
#include "report/serialize.hpp"
#include "test_support.hpp"

using namespace castellan;
using namespace castellan::oracles;
using castellan::testing::Rng;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Certificates produced by criteria 1, 5 and 6, mutated by criterion 9.
std::map<std::string, Json> g_certs;

std::string ConfigPath(const std::string& name) {
  return std::string(CASTELLAN_CONFIG_DIR) + "/" + name;
}

// Raw permutation powers with a precomputed inverse.
struct RawPerm {
  Perm fwd, inv;
  explicit RawPerm(const Perm& p) : fwd(p), inv(p.size()) {
    for (State x = 0; x < p.size(); ++x) inv[p[x]] = x;
  }
  State Pow(State x, std::int64_t k) const {
    for (; k > 0; --k) x = fwd[x];
    for (; k < 0; ++k) x = inv[x];
    return x;
  }
};

// (f, λ)·x = f·(λ·x), lamp at position pos conjugated by the shift.
State OracleAct(const RawPerm& shift, const RawPerm& lamp, const WreathElem& g,
                State x) {
  x = shift.Pow(x, g.shift);
  for (const auto& [pos, v] : g.lamps.entries()) {
    x = shift.Pow(lamp.Pow(shift.Pow(x, -pos), v[0]), pos);
  }
  return x;
}

bool OraclePrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

// x ∈ Γ_E by definition: shift in Λ_E and every tracked coset sum ≡ 0 mod p.
bool OracleInGammaE(const WreathElem& x, const ParamTable& table,
                    std::int64_t n_e) {
  if (x.shift % n_e != 0) return false;
  for (const auto& row : table) {
    std::int64_t m = 1;
    for (std::int64_t i = 0; i < row.a; ++i) m *= row.p;
    for (std::int64_t c : row.e_cosets) {
      std::int64_t sum = 0;
      for (const auto& [pos, v] : x.lamps.entries()) {
        if (((pos % m) + m) % m == c) sum += v[0];
      }
      if (sum % row.p != 0) return false;
    }
  }
  return true;
}

Outcome Criterion1() {
  const std::size_t n = 1024;
  const FinAction act = FinAction::Cyclic(n);
  MultiscaleParams params;
  params.k = ShiftSet({-1, 1});
  params.eps = MakeRational(1, 8);
  const MultiscaleResult r = BuildCastleT34(act, params);
  const CheckOutcome check = AfmCheck(r.castle, r.certificate, act);
  const bool oracle = OracleAfm(r.castle, r.certificate, n);
  const bool eps_ok = r.certificate.eps == MakeRational(1, 8) &&
                      r.certificate.delta == MakeRational(1, 8);
  const Rational lower = BanachLower(r.castle.Footprint(act), act);
  const bool density_ok =
      lower == r.certificate.density && lower >= MakeRational(7, 8);

  const Json cert = RunConfig(ExperimentConfig::Load(
      ConfigPath("castle_t34_odometer.ini")));
  g_certs["castle-t34"] = cert;
  const bool cert_ok = cert.at("passed").get<bool>() &&
                       VerifyCertificate(cert).ok();
  return {check.ok && oracle && eps_ok && density_ok && cert_ok,
          "towers=" + std::to_string(r.castle.towers.size()) +
              " density=" + FormatRational(lower) +
              " afm=" + (check.ok ? "ok" : check.reason) +
              " oracle=" + (oracle ? "ok" : "fail") +
              " certificate=" + (cert_ok ? "ok" : "fail")};
}

Outcome Criterion2() {
  Rng rng(20260202);
  const Rational eps_choices[] = {MakeRational(1, 4), MakeRational(1, 3)};
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.Int(1, 512));
    const Perm p = rng.Permutation(n);
    std::vector<std::vector<State>> cells;
    std::vector<std::size_t> cell(n, 0);
    const std::size_t k = static_cast<std::size_t>(rng.Int(1, 4));
    cells.assign(k, {});
    for (State x = 0; x < n; ++x) {
      cell[x] = static_cast<std::size_t>(
          rng.Int(0, static_cast<std::int64_t>(k) - 1));
      cells[cell[x]].push_back(x);
    }
    cells.erase(std::remove_if(cells.begin(), cells.end(),
                               [](const auto& v) { return v.empty(); }),
                cells.end());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (State x : cells[c]) cell[x] = c;
    }
    const FinAction act(1, p, {}, cells);
    std::vector<std::int64_t> shifts;
    const int size = static_cast<int>(rng.Int(1, 8));
    for (int i = 0; i < size; ++i) shifts.push_back(rng.Int(-6, 6));
    const ElemSet s = ShiftSet(shifts);
    const Rational eps = eps_choices[rng.Int(0, 1)];

    std::set<State> z, y, nonfree;
    for (State x = 0; x < n; ++x) {
      std::set<State> images;
      for (const auto& g : s) images.insert(OracleShift(p, g.shift, x));
      if (images.size() < s.size()) nonfree.insert(x);
      if (images.size() < s.size() || rng.Int(0, 19) == 0) z.insert(x);
      if (rng.Int(0, 9) == 0) y.insert(x);
    }
    const StateSubset zs = StateSubset::FromStates(n, {z.begin(), z.end()});
    const StateSubset ys = StateSubset::FromStates(n, {y.begin(), y.end()});
    const bool nonfree_ok =
        AsSet(NonfreePart(s, act)) == nonfree &&
        std::includes(z.begin(), z.end(), nonfree.begin(), nonfree.end());
    const Castle c = BuildCastleL33(act, s, eps, ys, zs);
    if (!nonfree_ok || !CheckL33(c, act, s, eps, ys, zs).all() ||
        !OracleL33(c, p, cell, s, eps, y, z)) {
      ++failures;
    }
  }
  return {failures == 0, "100 trials, " + std::to_string(failures) +
                             " with a violated postcondition"};
}

Outcome Criterion3() {
  Rng rng(20260303);
  int failures = 0;
  std::int64_t max_vertices = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.Int(1, 2000));
    max_vertices = std::max<std::int64_t>(max_vertices, n);
    const FinAction act =
        RandomIntegerAction(n, static_cast<std::uint64_t>(rng.Int(0, 1 << 30)));
    const RawPerm raw(act.shift_perm().image());
    std::vector<std::int64_t> gens;
    const std::int64_t a = rng.Int(1, 5);
    gens = {a, -a};
    if (rng.Coin()) {
      std::int64_t b = rng.Int(1, 5);
      while (b == a) b = rng.Int(1, 5);
      gens.push_back(b);
      gens.push_back(-b);
    }
    const ElemSet labels = ShiftSet(gens);
    const std::int64_t m = rng.Int(1, 6);
    std::vector<State> y0;
    const int y0_size = static_cast<int>(rng.Int(0, 5));
    for (int i = 0; i < y0_size; ++i) {
      y0.push_back(static_cast<State>(
          rng.Int(0, static_cast<std::int64_t>(n) - 1)));
    }
    const StateSubset y0s = StateSubset::FromStates(n, y0);
    const SchreierGraph graph(act, labels);
    const WeddingCakeFn f = WeddingCake(graph, y0s, m);

    // BFS by raw permutation powers.
    std::vector<std::int64_t> dist(n, -1);
    std::vector<State> queue;
    for (State x : y0s.Members()) {
      dist[x] = 0;
      queue.push_back(x);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const State x = queue[head];
      for (const auto& g : labels) {
        const State y = raw.Pow(x, g.shift);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    bool ok = true;
    std::int64_t not_one = 0;
    for (State x = 0; x < n; ++x) {
      const std::int64_t level = dist[x] < 0 ? m : std::min(dist[x], m);
      ok = ok && f.Value(x) == MakeRational(level, m);
      if (y0s.Contains(x)) ok = ok && f.Value(x) == 0;  // (1)
      for (const auto& g : labels) {                    // (2)
        const Rational diff = f.Value(raw.Pow(x, g.shift)) - f.Value(x);
        ok = ok && abs(diff) <= MakeRational(1, m);
      }
      not_one += f.IsOne(x) ? 0 : 1;
    }
    std::int64_t geometric = 0, power = 1;
    for (std::int64_t i = 0; i < m; ++i) {
      geometric += power;
      power *= static_cast<std::int64_t>(labels.size());
    }
    const std::int64_t bound =
        geometric * static_cast<std::int64_t>(y0s.Count());
    ok = ok && static_cast<std::int64_t>(f.CountNotOne()) == not_one &&
         not_one <= bound &&  // (3)
         WeddingCakeBound(labels.size(), m, y0s.Count()) == BigInt(bound);
    failures += ok ? 0 : 1;
  }
  return {failures == 0, "50 graphs up to " + std::to_string(max_vertices) +
                             " vertices, " + std::to_string(failures) +
                             " failures"};
}

Outcome Criterion4() {
  const std::vector<LambdaElem> k = {-2, -1, 1, 2};
  const Rational eps_list[] = {MakeRational(1, 2), MakeRational(1, 4),
                               MakeRational(1, 10), MakeRational(1, 50)};
  int failures = 0, eps_cases = 0;
  for (std::int64_t n = 1; n <= 600; ++n) {
    const SectionData s = CanonicalSection(n, k);
    std::vector<std::int64_t> oracle;
    for (std::int64_t t = 0; t < n; ++t) {
      bool bad = false;
      for (auto lam : k) bad = bad || Mod(t + lam, n) != t + lam;
      if (bad) oracle.push_back(t);
    }
    const Rational frac = MakeRational(static_cast<std::int64_t>(oracle.size()), n);
    bool ok = s.defect == oracle && s.DefectFraction() == frac &&
              CheckSection(s) &&
              frac <= MakeRational(2 * static_cast<std::int64_t>(k.size()), n);
    for (const auto& eps : eps_list) {
      if (Rational(n) > Rational(2 * static_cast<long>(k.size())) / eps) {
        ++eps_cases;
        ok = ok && frac < eps &&
             EquivariantSection(n, k, eps).DefectFraction() == frac;
      }
    }
    failures += ok ? 0 : 1;
  }
  return {failures == 0, "N = 1..600, " + std::to_string(eps_cases) +
                             " (N, eps) cases above 2|K|/eps, " +
                             std::to_string(failures) + " failures"};
}

Outcome Criterion5() {
  const ExperimentConfig cfg =
      ExperimentConfig::Load(ConfigPath("joseph_two_primes.ini"));
  const Json cert = RunConfig(cfg);
  g_certs["joseph-build"] = cert;
  const bool cert_ok = cert.at("passed").get<bool>() &&
                       VerifyCertificate(cert).ok();

  const ParamTable table = ChooseParams({ShiftElem(1), ShiftElem(2)}, 1, 10);
  const QuotientSpace q(table, 1);
  std::set<std::int64_t> primes;
  std::int64_t n_e = 1;
  for (const auto& row : table) {
    primes.insert(row.p);
    std::int64_t m = 1;
    for (std::int64_t i = 0; i < row.a; ++i) m *= row.p;
    n_e = std::lcm(n_e, m);
  }
  const bool shape_ok = primes == std::set<std::int64_t>{11, 13} &&
                        table[0].l == 1 && table[1].l == 1 &&
                        q.lambda_index() == n_e;
  const bool size_ok =
      static_cast<std::int64_t>(q.size()) == n_e * 11 * 13;

  // Right-multiplication oracle.
  Rng rng(20260505);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const WreathElem x = rng.Elem(1, 4, 40, 30);
    const WreathElem z = RandomInGammaE(rng, q);
    if (!OracleInGammaE(z, table, n_e)) ++violations;
    if (!(q.LabelOf(x) == q.LabelOf(WreathMul(x, z)))) ++violations;
    const WreathElem y = rng.Coin() ? WreathMul(WreathMul(x, z), rng.Elem(1, 1, 3, 1))
                                    : rng.Elem(1, 4, 40, 30);
    const bool same = OracleInGammaE(WreathMul(WreathInv(x), y), table, n_e);
    if ((q.LabelOf(x) == q.LabelOf(y)) != same) ++violations;
  }
  const LabelTrialReport lib = LabelTrials(q, 1000, 5);
  const bool labels_ok = violations == 0 && lib.constant_violations == 0 &&
                         lib.separation_violations == 0;

  // Exhaustive partition through raw generator permutations.
  const SectionData section = CanonicalSection(q.lambda_index(), {1, -1});
  const PartitionReport part = PartitionCheck(q, section, 1);
  const RawPerm shift(q.action().shift_perm().image());
  const RawPerm lamp(q.action().lamp_perms()[0].image());
  const auto w = WSet(q).Members();
  std::vector<int> hits(q.size(), 0);
  const std::int64_t big_q = q.prime_product();
  for (std::int64_t t = 0; t < q.lambda_index(); ++t) {
    const auto phi = section.phi[static_cast<std::size_t>(t)];
    for (std::int64_t j = 0; j < big_q; ++j) {
      for (State x : w) {
        const State y = shift.Pow(lamp.Pow(x, j), phi);
        ++hits[y];
      }
    }
  }
  const bool oracle_partition =
      std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }) &&
      static_cast<std::int64_t>(w.size()) * q.lambda_index() * big_q ==
          static_cast<std::int64_t>(q.size());
  return {shape_ok && size_ok && labels_ok && part.partition &&
              oracle_partition && cert_ok,
          "|X_E|=" + std::to_string(q.size()) + " = " + std::to_string(n_e) +
              "*11*13, label violations " + std::to_string(violations) + "+" +
              std::to_string(lib.constant_violations +
                             lib.separation_violations) +
              ", partition " + (part.partition && oracle_partition ? "ok" : "fail") +
              ", certificate " + (cert_ok ? "ok" : "fail")};
}

Outcome Criterion6() {
  const Json cert = RunConfig(ExperimentConfig::Load(ConfigPath("zstab_n2.ini")));
  g_certs["zstab-witness"] = cert;
  const VerifyReport v = VerifyCertificate(cert);
  const Json& d = cert.at("derived");
  const Json& m = d.at("measures");
  const std::int64_t n = d.at("n").get<std::int64_t>();
  const std::int64_t q = d.at("prime_product").get<std::int64_t>();
  const std::int64_t n_e = d.at("lambda_index").get<std::int64_t>();
  const std::int64_t size = d.at("quotient_size").get<std::int64_t>();
  const std::int64_t mm = d.at("m").get<std::int64_t>();

  bool ok = n == 2 && cert.at("passed").get<bool>() && v.ok();
  for (const auto& p : d.at("primes")) {
    ok = ok && OraclePrime(p.get<std::int64_t>()) && p.get<std::int64_t>() > 8;
  }
  // |X_E| from the recorded table.
  std::int64_t expect_size = n_e;
  for (const auto& row : cert.at("claim").at("e_table")) {
    const std::int64_t p = row.at("p").get<std::int64_t>();
    for (std::size_t i = 0; i < row.at("e_cosets").size(); ++i) expect_size *= p;
  }
  ok = ok && size == expect_size && size <= 100000;
  const std::int64_t c = q / n, r = q % n;
  ok = ok && d.at("c").get<std::int64_t>() == c &&
       d.at("r").get<std::int64_t>() == r;

  // Wedding cake on Λ/Λ_E = ℤ/N_E with Λ_0 = {±1}: f ≠ 1 within distance m.
  std::set<std::int64_t> y0;
  for (const auto& y : cert.at("claim").at("y0")) {
    y0.insert(Mod(y.get<std::int64_t>(), n_e));
  }
  std::int64_t not_one = 0;
  for (std::int64_t t = 0; t < n_e; ++t) {
    std::int64_t best = mm;
    for (auto y : y0) {
      const std::int64_t diff = Mod(t - y, n_e);
      best = std::min({best, diff, n_e - diff});
    }
    not_one += best < mm ? 1 : 0;
  }
  const Rational xr = MakeRational(r, q);
  const Rational cut = MakeRational(not_one * n * c, n_e * q);
  const Rational gap = RationalFromJson(m.at("gap"));
  ok = ok && d.at("cake_not_one").get<std::int64_t>() == not_one &&
       RationalFromJson(m.at("measure_xr")) == xr &&
       RationalFromJson(m.at("measure_cut")) == cut && gap == xr + cut &&
       gap <= xr + MakeRational(not_one, n_e) && gap < MakeRational(1, 2) &&
       m.at("certified").get<bool>();
  ok = ok && d.at("psi_relations") == "exact-pass" &&
       d.at("order_zero") == "exact-pass";
  std::string defects;
  int shifts = 0;
  for (const auto& e : d.at("defects")) {
    const std::string name = e.at("element").get<std::string>();
    const Rational b = RationalFromJson(e.at("bound"));
    ok = ok && e.at("exact").get<bool>();
    if (name == "indicator" || name == "xi_1") {
      ok = ok && b == 0;
    } else {
      ++shifts;
      ok = ok && b <= MakeRational(1, 2);
    }
    defects += " " + name + "=" + FormatRational(b);
  }
  ok = ok && shifts == 2;
  return {ok, "Q=" + std::to_string(q) + " |X_E|=" + std::to_string(size) +
                  " gap=" + FormatRational(gap) + " (" + FormatRational(xr) +
                  " + " + FormatRational(cut) + ")" + defects +
                  (v.ok() ? " verify=ok" : " verify=fail")};
}

Outcome Criterion7() {
  const std::vector<WreathElem> gammas = {
      ShiftElem(1), XiGenerator(1, 1, 0), ShiftElem(3)};
  std::vector<QuotientSpace> levels;
  for (std::size_t i = 1; i <= gammas.size(); ++i) {
    levels.emplace_back(
        ChooseParams({gammas.begin(), gammas.begin() + static_cast<long>(i)},
                     1, 1),
        1);
  }
  Rng rng(20260707);
  int violations = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const WreathElem g = rng.Elem(1, 3, 5, 3);
    Rational prev = 2;
    for (const auto& q : levels) {
      const RawPerm shift(q.action().shift_perm().image());
      const RawPerm lamp(q.action().lamp_perms()[0].image());
      std::int64_t fixed = 0;
      for (State x = 0; x < q.size(); ++x) {
        fixed += OracleAct(shift, lamp, g, x) == x ? 1 : 0;
      }
      const Rational frac =
          MakeRational(fixed, static_cast<std::int64_t>(q.size()));
      if (frac != FixedFraction(g, q) || frac > prev) ++violations;
      prev = frac;
    }
  }

  // Bound on the criterion-1 castle for g = +1.
  const FinAction act = FinAction::Cyclic(1024);
  MultiscaleParams params;
  params.k = ShiftSet({-1, 1});
  params.eps = MakeRational(1, 8);
  const Castle castle = BuildCastleT34(act, params).castle;
  const Rational eps_prime = MakeRational(1, 8);
  const EssfreeReport rep =
      EssfreeBoundFromCastle(castle, ShiftElem(1), eps_prime, act);
  std::int64_t fixed = 0;
  for (std::int64_t x = 0; x < 1024; ++x) fixed += Mod(x + 1, 1024) == x;
  const Rational fix_measure = MakeRational(fixed, 1024);
  const Rational bound = 1 - (1 - eps_prime) * (1 - eps_prime);
  bool ess_ok = rep.certified && rep.bound == bound &&
                !rep.fix_measures.empty();
  for (const auto& f : rep.fix_measures) {
    ess_ok = ess_ok && f == fix_measure && f <= bound;
  }
  return {violations == 0 && ess_ok,
          "20 probes x 3 levels (" + std::to_string(levels[0].size()) + "/" +
              std::to_string(levels[1].size()) + "/" +
              std::to_string(levels[2].size()) + " states), " +
              std::to_string(violations) + " violations; fix(+1)=" +
              FormatRational(fix_measure) + " <= " + FormatRational(bound)};
}

Outcome Criterion8() {
  Rng rng(20260808);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.Int(1, 400));
    // Alternate between +1 and a random single n-cycle.
    Perm p(n);
    if (trial % 2 == 0) {
      p = CyclicShift(n);
    } else {
      const Perm order = rng.Permutation(n);
      for (std::size_t i = 0; i < n; ++i) p[order[i]] = order[(i + 1) % n];
    }
    const FinAction act(1, p);
    const std::int64_t density = rng.Int(0, 10);
    std::vector<State> members;
    for (State x = 0; x < n; ++x) {
      if (rng.Int(0, 9) < density) members.push_back(x);
    }
    const StateSubset a = StateSubset::FromStates(n, members);
    std::vector<std::int64_t> window;
    for (std::size_t i = 0; i < n; ++i) window.push_back(static_cast<std::int64_t>(i));
    const Rational banach = BanachLower(a, act);
    const Rational folner = LowerDensityF(ShiftSet(window), a, act);
    const Rational oracle = MakeRational(static_cast<std::int64_t>(members.size()),
                                         static_cast<std::int64_t>(n));
    failures += banach == folner && folner == oracle ? 0 : 1;
  }
  return {failures == 0, "50 (N, A) pairs, " + std::to_string(failures) +
                             " disagreements"};
}

// Leaves eligible for mutation, as JSON pointers.
void CollectLeaves(const Json& j, const std::string& path,
                   std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (path.empty() && (key == "seal" || key == "timing_ms")) continue;
      if (path == "/inputs" && IsResourceKey(key)) continue;
      CollectLeaves(value, path + "/" + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      CollectLeaves(j[i], path + "/" + std::to_string(i), out);
    }
  } else {
    out.push_back(path);
  }
}

Json Mutate(const Json& leaf, std::mt19937_64& rng) {
  if (leaf.is_null()) return 1;
  if (leaf.is_boolean()) return !leaf.get<bool>();
  if (leaf.is_number_integer()) {
    return leaf.get<std::int64_t>() + (rng() % 2 == 0 ? 1 : -1);
  }
  if (leaf.is_number()) return leaf.get<double>() + 1;
  const std::string s = leaf.get<std::string>();
  try {
    if (FormatRational(ParseRational(s)) == s) {
      return FormatRational(ParseRational(s) + MakeRational(1, 7));
    }
  } catch (const Error&) {
  }
  return s.empty() ? std::string("x") : s + "x";
}

Outcome Criterion9() {
  const std::vector<std::string> sources = {"castle-t34", "joseph-build",
                                            "zstab-witness"};
  for (const auto& s : sources) {
    if (!g_certs.count(s)) return {false, "certificate from " + s + " missing"};
  }
  std::mt19937_64 rng(20260909);
  int detected = 0, seal_flagged = 0;
  std::string missed;
  for (int i = 0; i < 50; ++i) {
    const std::string& source = sources[rng() % sources.size()];
    Json cert = g_certs[source];
    std::vector<std::string> leaves;
    CollectLeaves(cert, "", leaves);
    const std::string path = leaves[rng() % leaves.size()];
    const Json::json_pointer ptr(path);
    cert[ptr] = Mutate(cert[ptr], rng);

    // As tampered, the seal no longer matches.
    cst_verify_result raw{};
    if (cst_verify_json(cert.dump().c_str(), &raw, nullptr) == CST_OK &&
        !raw.seal_ok) {
      ++seal_flagged;
    }
    // Re-sealed, so only the schema and semantic layers can object.
    cert["seal"] = Sha256Hex(CanonicalPayload(cert));
    cst_verify_result res{};
    const cst_status st = cst_verify_json(cert.dump().c_str(), &res, nullptr);
    const bool caught =
        st != CST_OK || !res.schema_ok || !res.semantic_ok || !res.passed;
    if (caught) {
      ++detected;
    } else {
      missed += " " + source + path;
    }
  }
  return {detected == 50,
          std::to_string(detected) + "/50 detected after re-sealing, " +
              std::to_string(seal_flagged) + "/50 flagged by the seal" +
              (missed.empty() ? "" : "; missed:" + missed)};
}

struct Entry {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Entry> entries = {
      {1, 10, Criterion1}, {2, 60, Criterion2},  {3, 30, Criterion3},
      {4, 5, Criterion4},  {5, 60, Criterion5},  {6, 300, Criterion6},
      {7, 120, Criterion7}, {8, 10, Criterion8}, {9, 0, Criterion9}};
  int failed = 0;
  for (const auto& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (e.limit_s > 0 && secs >= e.limit_s) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(static_cast<int>(e.limit_s)) +
                    " s limit";
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", e.id,
                out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
