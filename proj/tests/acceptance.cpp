// Acceptance run: one PASS/FAIL line per checked item, grouped by criterion.
//
//   acceptance                    exit 1 if any item fails
//   acceptance --require-complete exit 0 once every item has produced a verdict
//   acceptance --jobs N           worker threads for the sweeps

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "schur/barhom.hpp"
#include "schur/catalog.hpp"
#include "schur/enumerate.hpp"
#include "schur/multiplier.hpp"

using namespace schur;
using namespace schur::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  int pass = 0;
  int fail = 0;
  int error = 0;
  std::map<int, bool> criterion_ok;
};

Tally tally;
int jobs = 1;

void verdict(int criterion, bool ok, const std::string& what, double secs) {
  char t[32];
  std::snprintf(t, sizeof t, "%.2f s", secs);
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << criterion << "] " << what << "  (" << t << ")" << std::endl;
  (ok ? tally.pass : tally.fail)++;
  auto it = tally.criterion_ok.find(criterion);
  tally.criterion_ok[criterion] = (it == tally.criterion_ok.end() ? true : it->second) && ok;
}

/// Runs one item; exceptions count as failures with their message.
void item(int criterion, const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
  const auto t0 = Clock::now();
  try {
    auto [ok, detail] = fn();
    verdict(criterion, ok, name + (detail.empty() ? "" : ": " + detail), seconds_since(t0));
  } catch (const std::exception& e) {
    ++tally.error;
    verdict(criterion, false, name + ": error: " + e.what(), seconds_since(t0));
  }
}

std::string clause_summary(const VerificationReport& r) {
  std::ostringstream os;
  os << r.groups_checked << " groups, " << r.violation_count << " violations";
  if (!r.violations_by_clause.empty()) {
    os << " {";
    bool first = true;
    for (const auto& [clause, n] : r.violations_by_clause) {
      os << (first ? "" : ", ") << clause << ": " << n;
      first = false;
    }
    os << "}";
  }
  if (!r.violations.empty())
    os << "; first at candidate " << r.violations.front().candidate << " (" << r.violations.front().clause << ")";
  return os.str();
}

EnumerationTask make_task(int p, int d, std::optional<Sampling> s = std::nullopt, bool dedupe = false) {
  EnumerationTask t;
  t.p = p;
  t.d = d;
  t.sampling = s;
  t.dedupe = dedupe;
  t.jobs = jobs;
  return t;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  auto order_item = [](const std::string& name, const Presentation& P, int expected, bool need_elem = false) {
    item(1, "|M(" + name + ")| = p^" + std::to_string(expected), [&]() -> std::pair<bool, std::string> {
      const auto t0 = Clock::now();
      const auto inv = multiplier_invariants(P);
      const double secs = seconds_since(t0);
      bool ok = inv.order_exponent == expected && secs < 1.0;
      if (need_elem)
        ok = ok && inv.elementary_abelian;
      return {ok, "got p^" + std::to_string(inv.order_exponent) + (inv.elementary_abelian ? ", elementary" : "")};
    });
  };
  order_item("Q8", catalog::q8(), 0);
  order_item("D8", catalog::d8(), 1);
  for (int p : {3, 5, 7})
    order_item("Phi4(1^5), p=" + std::to_string(p), catalog::phi4_1_5(p), 6, true);
  for (int p : {3, 5}) {
    order_item("Phi12(1^6), p=" + std::to_string(p), catalog::phi12_1_6(p), 8);
    order_item("Phi13(1^6), p=" + std::to_string(p), catalog::phi13_1_6(p), 8);
    order_item("Phi15(1^6), p=" + std::to_string(p), catalog::phi15_1_6(p), 8);
    order_item("T, p=" + std::to_string(p), catalog::t_group(p), 9);
    item(1, "dim X(T) = 9, p=" + std::to_string(p), [p]() -> std::pair<bool, std::string> {
      const int dx = multiplier_invariants(catalog::t_group(p)).dim_X;
      return {dx == 9, "got " + std::to_string(dx)};
    });
  }
  for (int p : {3, 5, 7}) {
    item(1, "dim X1(Phi4(1^5)) = 1, p=" + std::to_string(p), [p]() -> std::pair<bool, std::string> {
      const int v = multiplier_invariants(catalog::phi4_1_5(p)).dim_X1;
      return {v == 1, "got " + std::to_string(v)};
    });
    item(1, "dim X(Phi12(1^6)) = 4, p=" + std::to_string(p), [p]() -> std::pair<bool, std::string> {
      const int v = multiplier_invariants(catalog::phi12_1_6(p)).dim_X;
      return {v == 4, "got " + std::to_string(v)};
    });
  }
}

// Criteria 2-4 share one sweep per (p, d).
void criteria_2_3_4() {
  double x2_time = 0;
  double ganea_time = 0;
  // catalog groups: every subspace of W
  item(3, "Ganea identity on catalog groups, every Z <= W", [&]() -> std::pair<bool, std::string> {
    const auto t0 = Clock::now();
    int bad = 0, checked = 0;
    std::vector<Presentation> groups = {catalog::q8(), catalog::d8(), catalog::es2(2, 0), catalog::es2(2, 1)};
    for (int p : {3, 5, 7}) {
      groups.push_back(catalog::es_odd(p, 1, 1));
      groups.push_back(catalog::es_odd(p, 1, 2));
      for (const char* name : {"phi4_1_5", "phi12_1_6", "phi13_1_6", "phi15_1_6", "t_group"})
        groups.push_back(make_named(name, {p}));
    }
    for (const Presentation& P : groups) {
      const BlackburnEvens be(P);
      const auto inv = be.invariants();
      for (const Subspace& Z : all_subspaces(P.modulus(), P.k())) {
        const GaneaRecord g = ganea_check(P, Z, inv, be.X());
        ++checked;
        bad += g.lhs_exponent != g.rhs_exponent;
      }
    }
    ganea_time += seconds_since(t0);
    return {bad == 0, std::to_string(checked) + " (group, Z) pairs, " + std::to_string(bad) + " mismatches"};
  });

  for (auto [p, d] : {std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 3}}) {
    const std::string where = "(p,d)=(" + std::to_string(p) + "," + std::to_string(d) + ") exhaustive";
    const auto t0 = Clock::now();
    IdentityReport r;
    std::string err;
    try {
      r = check_identities(make_task(p, d));
    } catch (const std::exception& e) {
      err = e.what();
    }
    const double secs = seconds_since(t0);
    x2_time += secs;
    ganea_time += secs;
    if (!err.empty()) {
      for (int c : {2, 3, 4})
        verdict(c, false, where + ": error: " + err, secs);
      continue;
    }
    std::string dims;
    for (const auto& [k, v] : r.x2_by_r)
      dims += (dims.empty() ? "" : ", ") + k + ": " + std::to_string(v);
    verdict(2, r.x2_mismatches == 0,
            "dim X2 = r d - r(r-1)/2 at " + where + ": " + std::to_string(r.groups) + " groups, " +
                std::to_string(r.x2_mismatches) + " mismatches {" + dims + "}",
            secs);
    verdict(3, r.ganea_mismatches == 0,
            "Ganea lhs = rhs for every Z <= W at " + where + ": " + std::to_string(r.groups) + " groups, " +
                std::to_string(r.ganea_mismatches) + " mismatches",
            0);
    verdict(4, r.eq1_mismatches == 0,
            "order formula = structural order at " + where + ": " + std::to_string(r.groups) + " groups, " +
                std::to_string(r.eq1_mismatches) + " mismatches",
            0);
  }
  verdict(2, x2_time < 300, "X2 sweep time under 5 min", x2_time);
  verdict(3, ganea_time < 600, "Ganea sweep time under 10 min", ganea_time);
}

void criterion_5() {
  const auto t0 = Clock::now();
  const Sampling big{100000, 0xC0FFEE};
  auto suite = [](TheoremId id, EnumerationTask task) {
    const std::string label = std::string(to_string(id)) + " at (" + std::to_string(task.p) + "," +
                              std::to_string(task.d) + ") " +
                              (task.exhaustive() ? "exhaustive" : std::to_string(task.sampling->count) + " samples") +
                              (task.dedupe ? " +dedupe" : "");
    VerificationReport rep;
    item(5, label, [&]() -> std::pair<bool, std::string> {
      rep = verify_theorem(id, task);
      return {rep.ok(), clause_summary(rep)};
    });
    return rep;
  };
  suite(TheoremId::S1, make_task(2, 3));
  suite(TheoremId::S1, make_task(2, 4));
  suite(TheoremId::S1, make_task(3, 3));
  suite(TheoremId::S1, make_task(3, 4, big));
  suite(TheoremId::S1, make_task(5, 3, big));

  suite(TheoremId::S2, make_task(3, 3));
  suite(TheoremId::S2, make_task(3, 4, big));
  item(5, "S2 stream at p=2 (r = 1) is empty for d = 3, 4", []() -> std::pair<bool, std::string> {
    std::size_t n = 0;
    for (int d : {3, 4}) {
      EnumerationTask t;
      t.p = 2;
      t.d = d;
      t.gp_mode = GpMode::cyclic;
      n += stream_candidates(t).size();
    }
    return {n == 0, std::to_string(n) + " candidates"};
  });

  const VerificationReport s3 = suite(TheoremId::S3, make_task(3, 3, std::nullopt, true));
  item(5, "S3 (3,3) capable classes are exactly {Phi4(1^5)}", [&]() -> std::pair<bool, std::string> {
    const CandidateSpace space(3, 3);
    const auto phi4 = space.encode(catalog::phi4_1_5(3));
    const DedupeResult dd = dedupe_classes(3, 3, GpMode::trivial);
    const auto cls = dd.find(phi4);
    std::vector<std::uint64_t> capable;
    for (const ClassSummary& c : s3.classes)
      if (c.capable)
        capable.push_back(c.representative);
    const bool ok = cls && capable.size() == 1 && capable[0] == dd.classes[*cls].representative;
    return {ok, std::to_string(s3.classes.size()) + " classes, " + std::to_string(capable.size()) + " capable"};
  });
  const VerificationReport s34 = suite(TheoremId::S3, make_task(3, 4, big));
  for (const CatalogCheck& c : s34.catalog)
    verdict(5, c.ok,
            "S3 catalog " + c.name + " at p=3: capable=" + (c.capable ? "yes" : "no") + ", |M| = p^" +
                std::to_string(c.order_exponent),
            0);
  item(5, "T capable with |M| = p^(d(d-1)/2 - 1) = p^9, p=3", []() -> std::pair<bool, std::string> {
    const Presentation T = catalog::t_group(3);
    const int e = multiplier_invariants(T).order_exponent;
    const bool cap = epicenter(T).capable;
    return {cap && e == 9, std::string("capable=") + (cap ? "yes" : "no") + ", |M| = p^" + std::to_string(e)};
  });

  suite(TheoremId::p2, make_task(2, 3));
  suite(TheoremId::p2, make_task(2, 4));
  const double secs = seconds_since(t0);
  verdict(5, secs <= 1800, "theorem suites within 30 min", secs);
}

void criterion_6() {
  auto cc_item = [](const std::string& name, const Presentation& P, long long cap, long long expect_h2) {
    item(6, "cross_check " + name, [&]() -> std::pair<bool, std::string> {
      OracleOptions opt;
      opt.cap = cap;
      opt.jobs = jobs;
      const CrossCheckResult cc = cross_check(P, opt);
      const bool ok = cc.ok && (expect_h2 < 0 || cc.report.h2_dim == expect_h2);
      return {ok, "h2 = " + std::to_string(cc.report.h2_dim) + ", s + t + d = " + std::to_string(cc.expected_h2)};
    });
  };
  cc_item("Q8", catalog::q8(), OracleOptions::kDefaultCap, -1);
  cc_item("D8", catalog::d8(), OracleOptions::kDefaultCap, -1);
  cc_item("Z2^2", catalog::elem_abelian(2, 2), OracleOptions::kDefaultCap, -1);
  cc_item("Z3^2", catalog::elem_abelian(3, 2), OracleOptions::kDefaultCap, -1);
  cc_item("D8 x Z2", direct_product(catalog::d8(), catalog::elem_abelian(2, 1)), OracleOptions::kDefaultCap, -1);
  item(6, "cross_check every special rank-2 group of order 32", []() -> std::pair<bool, std::string> {
    EnumerationTask t;
    t.p = 2;
    t.d = 3;
    long long n = 0, bad = 0;
    for (const Candidate& c : stream_candidates(t)) {
      ++n;
      bad += !cross_check(c.P).ok;
    }
    return {n == 2688 && bad == 0, std::to_string(n) + " groups, " + std::to_string(bad) + " disagreements"};
  });
  cc_item("Phi4(1^5), p=3 (cap 243), h2 = 9", catalog::phi4_1_5(3), 243, 9);
}

void criterion_7() {
  auto property = [](const std::string& name, std::uint64_t seed, int trials,
                     const std::function<bool(std::mt19937_64&, int)>& trial_fn) {
    item(7, name + " (" + std::to_string(trials) + " trials, seed " + std::to_string(seed) + ")",
         [&]() -> std::pair<bool, std::string> {
           std::mt19937_64 rng(seed);
           int bad = 0;
           for (int i = 0; i < trials; ++i)
             bad += !trial_fn(rng, i);
           return {bad == 0, std::to_string(bad) + " failures"};
         });
  };
  auto prime = [](int i) { return i % 3 == 0 ? 2 : (i % 3 == 1 ? 3 : 5); };

  property("sigma well defined modulo X", 701, 1000, [&](std::mt19937_64& rng, int i) {
    const Modulus mod(prime(i));
    const int d = 2 + i % 4;
    const Presentation P = random_derived_full(rng, mod, d, 1 + i % 2);
    const BlackburnEvens be(P);
    const Vector u = random_vector(rng, mod, static_cast<std::size_t>(d));
    const Vector u2 = random_vector(rng, mod, static_cast<std::size_t>(d));
    const Vector v = random_vector(rng, mod, static_cast<std::size_t>(d));
    Vector w(mod, Presentation::pair_count(d));
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        w.set(Presentation::pair_index(a, b, d), static_cast<long long>(u[a]) * v[b] - static_cast<long long>(u[b]) * v[a]);
    const Subspace& X = be.X();
    return X.contains(be.sigma_lift(v, v)) && X.contains(be.sigma_lift(u, v) + be.sigma_lift(v, u)) &&
           X.contains(be.sigma_lift(u + u2, v) - be.sigma_lift(u, v) - be.sigma_lift(u2, v)) &&
           X.contains(be.sigma_lift(u, v) - be.sigma_on_wedge(w));
  });
  property("polarization f(u+v) = f(u) + f(v) + C(u,v) at p=2", 702, 1000, [](std::mt19937_64& rng, int i) {
    const Modulus mod(2);
    const Presentation P = random_presentation(rng, mod, 2 + i % 5, 1 + i % 3);
    const Vector u = random_vector(rng, mod, static_cast<std::size_t>(P.d()));
    const Vector v = random_vector(rng, mod, static_cast<std::size_t>(P.d()));
    return eval_f(P, u + v) == eval_f(P, u) + eval_f(P, v) + commutator(P, u, v);
  });
  property("associativity of elem_mul", 703, 1000, [&](std::mt19937_64& rng, int i) {
    const Presentation P = random_presentation(rng, Modulus(prime(i)), 1 + i % 4, i % 3);
    const Element x = random_element(rng, P), y = random_element(rng, P), z = random_element(rng, P);
    return elem_mul(P, elem_mul(P, x, y), z) == elem_mul(P, x, elem_mul(P, y, z));
  });
  property("recognize is invariant under GL(V) x GL(W)", 704, 1000, [&](std::mt19937_64& rng, int i) {
    const Modulus mod(prime(i));
    const int d = 2 + i % 4;
    const Presentation P = random_presentation(rng, mod, d, 1);
    const Presentation Q = transform(P, random_invertible(rng, mod, d), random_invertible(rng, mod, 1));
    return recognize(P) == recognize(Q);
  });
  property("multiplier invariants are invariant under GL(V) x GL(W)", 705, 1000, [&](std::mt19937_64& rng, int i) {
    const Modulus mod(prime(i));
    const int d = 2 + i % 4, k = 1 + i % 2;
    const Presentation P = random_derived_full(rng, mod, d, k);
    const Presentation Q = transform(P, random_invertible(rng, mod, d), random_invertible(rng, mod, k));
    return multiplier_invariants(P) == multiplier_invariants(Q);
  });
  property("dim(A+B) + dim(A n B) = dim A + dim B", 706, 1000, [&](std::mt19937_64& rng, int i) {
    const Modulus mod(i % 4 == 3 ? 7 : prime(i));
    const std::size_t n = 1 + i % 6;
    const Subspace A = Subspace::span(mod, n, random_rows(rng, mod, n, rng() % (n + 2)));
    const Subspace B = Subspace::span(mod, n, random_rows(rng, mod, n, rng() % (n + 2)));
    return sum(A, B).dim() + intersect(A, B).dim() == A.dim() + B.dim();
  });
}

void criterion_8() {
  item(8, "ES_{p^2}(27) has |M| = 1; X2 from e_i (x) f(e_i) alone would give p", []() -> std::pair<bool, std::string> {
    const Presentation P = catalog::es_odd(3, 1, 2);
    const auto inv = multiplier_invariants(P);
    std::vector<Vector> diag;
    for (int i = 0; i < P.d(); ++i)
      diag.push_back(tensor_unit(P, i, P.power(i)));
    const Subspace bad_X = sum(x1_subspace(P), Subspace::span(P.modulus(), 2, diag));
    const int bad_order = static_cast<int>(rho_kernel(P).dim()) + 2 - static_cast<int>(bad_X.dim());
    return {inv.order_exponent == 0 && bad_order == 1,
            "|M| = p^" + std::to_string(inv.order_exponent) + ", basis-only span gives p^" + std::to_string(bad_order)};
  });
}

} // namespace

int main(int argc, char** argv) {
  bool require_complete = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--require-complete") == 0)
      require_complete = true;
    else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc)
      jobs = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--require-complete] [--jobs N]\n";
      return 2;
    }
  }
  const auto t0 = Clock::now();
  criterion_1();
  criteria_2_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  std::cout << "\nsummary by criterion:\n";
  for (const auto& [c, ok] : tally.criterion_ok)
    std::cout << "  criterion " << c << ": " << (ok ? "PASS" : "FAIL") << "\n";
  std::cout << tally.pass << " items passed, " << tally.fail << " failed (" << tally.error << " with errors), "
            << seconds_since(t0) << " s\n";
  if (require_complete)
    return tally.error == 0 && tally.criterion_ok.size() == 8 ? 0 : 1;
  return tally.fail == 0 ? 0 : 1;
}
