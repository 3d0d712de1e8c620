#pragma once

// Enumeration of special p-groups of rank 2 for small (p, d), orbit dedupe
// under GL(d, p) x GL(2, p), and mechanical checks of the structure theorems
// S1 (G^p = G'), S2 (G^p of order p), S3 (G^p = 1, p odd) and p2 (p = 2).
//
// A candidate is a pair (C, f): the commutator vectors c_ij (pairs i < j in
// lexicographic order, 2 digits each) followed by the power vectors f_i
// (2 digits each). Its code reads these base-p digits most significant first.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "schur/catalog.hpp"
#include "schur/errors.hpp"
#include "schur/fplin.hpp"
#include "schur/multiplier.hpp"
#include "schur/presentation.hpp"

namespace schur {

enum class GpMode { full, cyclic, trivial, all };

inline std::string_view to_string(GpMode m) {
  switch (m) {
  case GpMode::full:
    return "full";
  case GpMode::cyclic:
    return "cyclic";
  case GpMode::trivial:
    return "trivial";
  case GpMode::all:
    return "all";
  }
  return "?";
}

/// r = dim G^p demanded by a mode, or -1 for any.
inline int required_r(GpMode m) {
  switch (m) {
  case GpMode::full:
    return 2;
  case GpMode::cyclic:
    return 1;
  case GpMode::trivial:
    return 0;
  case GpMode::all:
    return -1;
  }
  return -1;
}

struct Sampling {
  long long count = 100000;
  std::uint64_t seed = 0xC0FFEE;
};

struct EnumerationTask {
  int p = 2;
  int d = 3;
  GpMode gp_mode = GpMode::all;
  std::optional<Sampling> sampling; // empty: exhaustive
  bool dedupe = false;
  int jobs = 1;

  bool exhaustive() const { return !sampling.has_value(); }
};

// ---------------------------------------------------------------------------
// Budgets

inline constexpr std::uint64_t kCandidateBudget = 1ULL << 28;
inline constexpr long long kSampleBudget = 10000000;

/// SCHUR_BUDGET_OVERRIDE set to anything but "" or "0" lifts every guard.
inline bool budget_override() {
  const char* e = std::getenv("SCHUR_BUDGET_OVERRIDE");
  return e != nullptr && *e != '\0' && std::string_view(e) != "0";
}

inline bool dedupe_in_scope(int p, int d) {
  return (p == 2 && (d == 3 || d == 4)) || (p == 3 && d == 3);
}

// ---------------------------------------------------------------------------
// Counter-based generator: the stream for sample i depends only on (p, d, seed, i)

class CounterRng {
public:
  CounterRng(int p, int d, std::uint64_t seed, std::uint64_t index) {
    state_ = seed;
    state_ = mix(state_ ^ static_cast<std::uint64_t>(p));
    state_ = mix(state_ ^ (static_cast<std::uint64_t>(d) << 32));
    state_ = mix(state_ ^ index);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, n).
  int below(int n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x = next();
    while (x >= limit)
      x = next();
    return static_cast<int>(x % un);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_ = 0;
};

// ---------------------------------------------------------------------------
// Candidate space

class CandidateSpace {
public:
  static constexpr int kRank = 2;

  CandidateSpace(int p, int d) : mod_(p), d_(d) {
    if (d < 2)
      throw ValidationError("enumeration needs d >= 2");
    if (d + kRank > Presentation::kMaxRank)
      throw ValidationError("d + 2 exceeds the presentation size limit");
    c_digits_ = static_cast<int>(Presentation::pair_count(d)) * kRank;
    f_digits_ = d * kRank;
    c_count_ = saturating_pow(p, c_digits_);
    f_count_ = saturating_pow(p, f_digits_);
  }

  const Modulus& modulus() const { return mod_; }
  int p() const { return mod_.value(); }
  int d() const { return d_; }
  int digits() const { return c_digits_ + f_digits_; }
  std::uint64_t c_count() const { return c_count_; }
  std::uint64_t f_count() const { return f_count_; }

  /// p^digits, saturated at UINT64_MAX.
  std::uint64_t size() const {
    if (c_count_ != 0 && f_count_ > UINT64_MAX / c_count_)
      return UINT64_MAX;
    return c_count_ * f_count_;
  }

  std::uint64_t code(std::uint64_t c_code, std::uint64_t f_code) const { return c_code * f_count_ + f_code; }

  Presentation decode(std::uint64_t code) const {
    Presentation P(mod_, d_, kRank);
    std::uint64_t f_code = code % f_count_;
    std::uint64_t c_code = code / f_count_;
    const int p = mod_.value();
    // least significant digit is the last coordinate of f_d
    for (int i = d_ - 1; i >= 0; --i) {
      Vector v(mod_, kRank);
      for (int l = kRank - 1; l >= 0; --l, f_code /= p)
        v.set(l, static_cast<long long>(f_code % p));
      P.set_power(i, v);
    }
    for (int i = d_ - 2; i >= 0; --i)
      for (int j = d_ - 1; j > i; --j) {
        Vector v(mod_, kRank);
        for (int l = kRank - 1; l >= 0; --l, c_code /= p)
          v.set(l, static_cast<long long>(c_code % p));
        P.set_comm(i, j, v);
      }
    return P;
  }

  std::uint64_t encode(const Presentation& P) const {
    if (P.p() != p() || P.d() != d_ || P.k() != kRank)
      throw DimensionMismatch("presentation does not belong to this candidate space");
    std::uint64_t x = 0;
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j)
        for (int l = 0; l < kRank; ++l)
          x = x * static_cast<std::uint64_t>(p()) + P.comm(i, j)[l];
    for (int i = 0; i < d_; ++i)
      for (int l = 0; l < kRank; ++l)
        x = x * static_cast<std::uint64_t>(p()) + P.power(i)[l];
    return x;
  }

  /// C spans W and has trivial common radical.
  static bool valid_commutators(const Presentation& P) {
    return commutator_span(P).dim() == static_cast<std::size_t>(kRank) && common_radical(P).dim() == 0;
  }

  /// Sorted list of C-codes passing valid_commutators.
  const std::vector<std::uint64_t>& valid_c_codes() const {
    if (!valid_c_) {
      std::vector<std::uint64_t> out;
      for (std::uint64_t c = 0; c < c_count_; ++c)
        if (valid_commutators(decode(code(c, 0))))
          out.push_back(c);
      valid_c_ = std::move(out);
    }
    return *valid_c_;
  }

  /// dim G^p. For odd p this is the rank of the 2 x d matrix of f.
  static int power_rank(const Presentation& P) { return static_cast<int>(power_span(P).dim()); }

private:
  static std::uint64_t saturating_pow(int p, int e) {
    std::uint64_t x = 1;
    for (int i = 0; i < e; ++i) {
      if (x > UINT64_MAX / static_cast<std::uint64_t>(p))
        return UINT64_MAX;
      x *= static_cast<std::uint64_t>(p);
    }
    return x;
  }

  Modulus mod_;
  int d_;
  int c_digits_ = 0;
  int f_digits_ = 0;
  std::uint64_t c_count_ = 0;
  std::uint64_t f_count_ = 0;
  mutable std::optional<std::vector<std::uint64_t>> valid_c_;
};

struct Candidate {
  std::uint64_t code = 0;
  Presentation P;
  int r = 0;
};

inline void check_task_budget(const EnumerationTask& task, const CandidateSpace& space) {
  if (budget_override())
    return;
  if (task.exhaustive()) {
    if (space.size() > kCandidateBudget)
      throw BudgetExceeded("exhaustive enumeration at p = " + std::to_string(task.p) + ", d = " +
                           std::to_string(task.d) + " has more than 2^28 candidates; use sampling");
  } else if (task.sampling->count > kSampleBudget || task.sampling->count < 0) {
    throw BudgetExceeded("sample count " + std::to_string(task.sampling->count) + " outside [0, " +
                         std::to_string(kSampleBudget) + "]");
  }
  if (task.dedupe && !dedupe_in_scope(task.p, task.d))
    throw BudgetExceeded("orbit dedupe is limited to (p, d) in {(2,3), (2,4), (3,3)}");
}

/// Number of work units: valid C-codes when exhaustive, sample indices otherwise.
inline std::uint64_t unit_count(const EnumerationTask& task, const CandidateSpace& space) {
  return task.exhaustive() ? space.valid_c_codes().size() : static_cast<std::uint64_t>(task.sampling->count);
}

namespace detail {

/// Draws a random f of the mode's rank (odd p), or uniform f (p = 2, mode all).
inline void sample_powers(Presentation& P, GpMode mode, CounterRng& rng) {
  const int p = P.p();
  const int d = P.d();
  const Modulus& mod = P.modulus();
  auto uniform = [&] {
    for (int i = 0; i < d; ++i) {
      Vector v(mod, CandidateSpace::kRank);
      for (int l = 0; l < CandidateSpace::kRank; ++l)
        v.set(l, rng.below(p));
      P.set_power(i, v);
    }
  };
  if (p == 2 || mode == GpMode::all) {
    uniform();
    return;
  }
  switch (mode) {
  case GpMode::trivial:
    for (int i = 0; i < d; ++i)
      P.set_power(i, P.zero_w());
    return;
  case GpMode::cyclic: {
    // w lambda^T with w, lambda nonzero: uniform over rank-1 matrices
    Vector w(mod, CandidateSpace::kRank);
    while (w.is_zero())
      for (int l = 0; l < CandidateSpace::kRank; ++l)
        w.set(l, rng.below(p));
    Vector lambda(mod, static_cast<std::size_t>(d));
    while (lambda.is_zero())
      for (int i = 0; i < d; ++i)
        lambda.set(i, rng.below(p));
    for (int i = 0; i < d; ++i)
      P.set_power(i, w.scaled(lambda[i]));
    return;
  }
  case GpMode::full:
    do
      uniform();
    while (power_span(P).dim() != CandidateSpace::kRank);
    return;
  case GpMode::all:
    return;
  }
}

inline int worker_count(int jobs, std::uint64_t units) {
  return static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(1, jobs)), 1,
                                                    std::max<std::uint64_t>(units, 1)));
}

/// Splits [0, units) into contiguous slices, one per worker; rethrows the first failure.
inline void run_partitioned(std::uint64_t units, int jobs,
                            const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
  std::vector<std::string> failures(static_cast<std::size_t>(jobs));
  auto work = [&](int w) {
    try {
      const std::uint64_t b = units * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(jobs);
      const std::uint64_t e = units * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(jobs);
      fn(w, b, e);
    } catch (const std::exception& ex) {
      failures[static_cast<std::size_t>(w)] = ex.what();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w)
      threads.emplace_back(work, w);
    for (std::thread& t : threads)
      t.join();
  }
  for (const std::string& f : failures)
    if (!f.empty())
      throw Error(f);
}

} // namespace detail

/// Candidates of one task, restricted to the work units [unit_begin, unit_end).
/// Exhaustive streams visit codes in increasing order.
class CandidateStream {
public:
  CandidateStream(const EnumerationTask& task, const CandidateSpace& space, std::uint64_t unit_begin,
                  std::uint64_t unit_end)
      : task_(task), space_(space), unit_(unit_begin), unit_end_(unit_end) {}

  CandidateStream(const EnumerationTask& task, const CandidateSpace& space)
      : CandidateStream(task, space, 0, unit_count(task, space)) {}

  std::optional<Candidate> next() {
    const int want = required_r(task_.gp_mode);
    if (task_.exhaustive()) {
      const auto& cs = space_.valid_c_codes();
      while (unit_ < unit_end_) {
        if (f_ >= space_.f_count()) {
          ++unit_;
          f_ = 0;
          continue;
        }
        const std::uint64_t code = space_.code(cs[unit_], f_++);
        Presentation P = space_.decode(code);
        const int r = CandidateSpace::power_rank(P);
        if (want < 0 || r == want)
          return Candidate{code, std::move(P), r};
      }
      return std::nullopt;
    }
    while (unit_ < unit_end_) {
      CounterRng rng(space_.p(), space_.d(), task_.sampling->seed, unit_++);
      Presentation P(space_.modulus(), space_.d(), CandidateSpace::kRank);
      do {
        for (int i = 0; i < space_.d(); ++i)
          for (int j = i + 1; j < space_.d(); ++j) {
            Vector v(space_.modulus(), CandidateSpace::kRank);
            for (int l = 0; l < CandidateSpace::kRank; ++l)
              v.set(l, rng.below(space_.p()));
            P.set_comm(i, j, v);
          }
      } while (!CandidateSpace::valid_commutators(P));
      detail::sample_powers(P, task_.gp_mode, rng);
      const int r = CandidateSpace::power_rank(P);
      if (want < 0 || r == want)
        return Candidate{space_.encode(P), std::move(P), r};
    }
    return std::nullopt;
  }

private:
  EnumerationTask task_;
  const CandidateSpace& space_;
  std::uint64_t unit_;
  std::uint64_t unit_end_;
  std::uint64_t f_ = 0;
};

/// Every candidate of the task, in stream order.
inline std::vector<Candidate> stream_candidates(const EnumerationTask& task) {
  const CandidateSpace space(task.p, task.d);
  check_task_budget(task, space);
  CandidateStream s(task, space);
  std::vector<Candidate> out;
  while (auto c = s.next())
    out.push_back(std::move(*c));
  return out;
}

// ---------------------------------------------------------------------------
// GL(V) x GL(W) action

/// Generators of GL(n, p): a transvection, an n-cycle, a transposition and
/// diag(w, 1, ..., 1) with w a primitive root. Each entry lists the images of e_i.
inline std::vector<std::vector<Vector>> gl_generators(const Modulus& mod, int n) {
  auto identity_images = [&] {
    std::vector<Vector> s;
    for (int i = 0; i < n; ++i)
      s.push_back(Vector::unit(mod, static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
    return s;
  };
  std::vector<std::vector<Vector>> gens;
  if (n >= 2) {
    auto t = identity_images();
    t[0].set(1, 1);
    gens.push_back(t);
    auto cyc = identity_images();
    for (int i = 0; i < n; ++i)
      cyc[i] = Vector::unit(mod, static_cast<std::size_t>(n), static_cast<std::size_t>((i + 1) % n));
    gens.push_back(cyc);
    if (n > 2) {
      auto sw = identity_images();
      std::swap(sw[0], sw[1]);
      gens.push_back(sw);
    }
  }
  const int p = mod.value();
  if (p > 2) {
    int w = 2;
    for (;; ++w) {
      int order = 1;
      for (long long x = w; x % p != 1; x = x * w % p)
        ++order;
      if (order == p - 1)
        break;
    }
    auto dg = identity_images();
    dg[0].set(0, w);
    gens.push_back(dg);
  }
  return gens;
}

/// (S, T) pairs generating GL(d, p) x GL(2, p).
inline std::vector<std::pair<std::vector<Vector>, std::vector<Vector>>> action_generators(const Modulus& mod, int d,
                                                                                          int k) {
  std::vector<Vector> idV, idW;
  for (int i = 0; i < d; ++i)
    idV.push_back(Vector::unit(mod, static_cast<std::size_t>(d), static_cast<std::size_t>(i)));
  for (int l = 0; l < k; ++l)
    idW.push_back(Vector::unit(mod, static_cast<std::size_t>(k), static_cast<std::size_t>(l)));
  std::vector<std::pair<std::vector<Vector>, std::vector<Vector>>> out;
  for (auto& S : gl_generators(mod, d))
    out.emplace_back(std::move(S), idW);
  for (auto& T : gl_generators(mod, k))
    out.emplace_back(idV, std::move(T));
  return out;
}

/// |GL(n, p)|.
inline std::uint64_t gl_order(int p, int n) {
  std::uint64_t pn = 1;
  for (int i = 0; i < n; ++i)
    pn *= static_cast<std::uint64_t>(p);
  std::uint64_t out = 1, pi = 1;
  for (int i = 0; i < n; ++i) {
    out *= pn - pi;
    pi *= static_cast<std::uint64_t>(p);
  }
  return out;
}

struct OrbitClass {
  std::uint64_t representative = 0; // least code in the orbit
  std::uint64_t orbit_size = 0;
};

struct DedupeResult {
  std::vector<OrbitClass> classes;
  std::vector<std::int32_t> class_of; // indexed by code, -1 outside the mode

  std::optional<std::size_t> find(std::uint64_t code) const {
    if (code >= class_of.size() || class_of[code] < 0)
      return std::nullopt;
    return static_cast<std::size_t>(class_of[code]);
  }
};

/// Orbit decomposition of the candidates of a mode under GL(d, p) x GL(2, p).
inline DedupeResult dedupe_classes(int p, int d, GpMode mode) {
  if (!dedupe_in_scope(p, d) && !budget_override())
    throw BudgetExceeded("orbit dedupe is limited to (p, d) in {(2,3), (2,4), (3,3)}");
  const CandidateSpace space(p, d);
  if (space.size() > kCandidateBudget && !budget_override())
    throw BudgetExceeded("candidate space too large for orbit dedupe");
  const auto gens = action_generators(space.modulus(), d, CandidateSpace::kRank);
  const int want = required_r(mode);
  DedupeResult res;
  res.class_of.assign(static_cast<std::size_t>(space.size()), -1);
  EnumerationTask task;
  task.p = p;
  task.d = d;
  task.gp_mode = mode;
  CandidateStream stream(task, space);
  while (auto c = stream.next()) {
    if (res.class_of[c->code] >= 0)
      continue;
    const auto id = static_cast<std::int32_t>(res.classes.size());
    OrbitClass cls{c->code, 0};
    std::deque<Presentation> queue;
    res.class_of[c->code] = id;
    queue.push_back(std::move(c->P));
    while (!queue.empty()) {
      const Presentation cur = std::move(queue.front());
      queue.pop_front();
      ++cls.orbit_size;
      for (const auto& [S, T] : gens) {
        Presentation img = transform(cur, S, T);
        const std::uint64_t code = space.encode(img);
        if (res.class_of[code] < 0) {
          res.class_of[code] = id;
          if (want >= 0 && CandidateSpace::power_rank(img) != want)
            throw Error("internal: GL action changed the power rank");
          queue.push_back(std::move(img));
        }
      }
    }
    res.classes.push_back(cls);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Per-group audit

struct LineQuotient {
  Subspace line;
  IsoType type;
  MultiplierInvariants invariants;
};

struct GaneaEntry {
  Subspace Z;
  GaneaRecord record;
};

struct GroupAudit {
  PresentationDiagnostics diag;
  MultiplierInvariants invariants;
  int eq1 = 0;
  Subspace epicenter{Modulus(2), 0};
  bool capable = false;
  Subspace power_span{Modulus(2), 0};
  std::vector<LineQuotient> lines;
  std::vector<GaneaEntry> ganea;
};

/// Invariants that must not depend on the chosen generators.
struct Fingerprint {
  int dim_X1 = 0;
  int dim_X2 = 0;
  int dim_X = 0;
  int s = 0;
  int t = 0;
  int epicenter_dim = 0;
  std::vector<std::string> quotient_types; // sorted

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

inline GroupAudit audit_group(const Presentation& P) {
  GroupAudit a;
  a.diag = validate(P);
  const BlackburnEvens be(P);
  a.invariants = be.invariants();
  a.power_span = power_span(P);
  a.eq1 = a.diag.is_special_rank2 ? eq1_order(P, be.X()) : a.invariants.order_exponent;
  a.epicenter = Subspace(P.modulus(), static_cast<std::size_t>(P.k()));
  if (a.diag.is_special) {
    EpicenterReport er = epicenter(P, be.X());
    a.epicenter = std::move(er.epicenter);
    a.capable = er.capable;
  }
  for (Subspace& Z : all_subspaces(P.modulus(), P.k())) {
    MultiplierInvariants qinv;
    if (Z.dim() == 0) {
      qinv = a.invariants;
    } else {
      const Presentation Q = central_quotient(P, Z);
      qinv = multiplier_invariants(Q);
      if (Z.dim() == 1 && Q.k() <= 1)
        a.lines.push_back({Z, recognize(Q), qinv});
    }
    GaneaRecord rec = ganea_check(P, Z, a.invariants, be.X(), qinv);
    a.ganea.push_back({std::move(Z), rec});
  }
  return a;
}

inline Fingerprint fingerprint(const GroupAudit& a) {
  Fingerprint fp;
  fp.dim_X1 = a.invariants.dim_X1;
  fp.dim_X2 = a.invariants.dim_X2;
  fp.dim_X = a.invariants.dim_X;
  fp.s = a.invariants.s;
  fp.t = a.invariants.t;
  fp.epicenter_dim = static_cast<int>(a.epicenter.dim());
  for (const LineQuotient& q : a.lines)
    fp.quotient_types.push_back(describe(q.type));
  std::sort(fp.quotient_types.begin(), fp.quotient_types.end());
  return fp;
}

// ---------------------------------------------------------------------------
// Theorem checks

enum class TheoremId { S1, S2, S3, p2 };

inline std::string_view to_string(TheoremId t) {
  switch (t) {
  case TheoremId::S1:
    return "S1";
  case TheoremId::S2:
    return "S2";
  case TheoremId::S3:
    return "S3";
  case TheoremId::p2:
    return "p2";
  }
  return "?";
}

inline TheoremId parse_theorem(std::string_view s) {
  if (s == "S1")
    return TheoremId::S1;
  if (s == "S2")
    return TheoremId::S2;
  if (s == "S3")
    return TheoremId::S3;
  if (s == "p2")
    return TheoremId::p2;
  throw ParseError("unknown theorem '" + std::string(s) + "' (expected S1, S2, S3 or p2)");
}

inline GpMode theorem_mode(TheoremId t) {
  switch (t) {
  case TheoremId::S1:
    return GpMode::full;
  case TheoremId::S2:
    return GpMode::cyclic;
  case TheoremId::S3:
    return GpMode::trivial;
  case TheoremId::p2:
    return GpMode::all;
  }
  return GpMode::all;
}

struct Violation {
  std::uint64_t candidate = 0;
  std::string clause;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ClassSummary {
  std::uint64_t representative = 0;
  std::uint64_t orbit_size = 0;
  bool capable = false;
  int order_exponent = 0;
  std::string pencil; // d = 4 only

  friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
};

struct CatalogCheck {
  std::string name;
  int order_exponent = 0;
  bool capable = false;
  bool ok = false;

  friend bool operator==(const CatalogCheck&, const CatalogCheck&) = default;
};

struct VerificationReport {
  static constexpr std::size_t kMaxListed = 1000;

  std::string theorem;
  int p = 0;
  int d = 0;
  std::string mode; // "exhaustive" or "sampled"
  long long samples = 0;
  std::uint64_t seed = 0;
  bool dedupe = false;

  long long groups_checked = 0;
  long long violation_count = 0;
  std::map<std::string, long long> violations_by_clause;
  std::vector<Violation> violations; // first kMaxListed, in stream order
  std::map<int, long long> order_exponents;
  std::map<int, long long> s_values;
  std::map<int, long long> r_values;
  std::map<int, long long> epicenter_dims;
  std::map<std::string, long long> quotient_types;
  long long capable_count = 0;
  std::vector<ClassSummary> classes;
  std::vector<CatalogCheck> catalog;

  bool ok() const { return violation_count == 0; }

  void add_violation(Violation v) {
    ++violation_count;
    ++violations_by_clause[v.clause];
    if (violations.size() < kMaxListed)
      violations.push_back(std::move(v));
  }

  /// Appends the statistics of a later slice of the same task.
  void merge(const VerificationReport& o) {
    groups_checked += o.groups_checked;
    violation_count += o.violation_count;
    for (const auto& [k, v] : o.violations_by_clause)
      violations_by_clause[k] += v;
    for (const Violation& v : o.violations)
      if (violations.size() < kMaxListed)
        violations.push_back(v);
    for (const auto& [k, v] : o.order_exponents)
      order_exponents[k] += v;
    for (const auto& [k, v] : o.s_values)
      s_values[k] += v;
    for (const auto& [k, v] : o.r_values)
      r_values[k] += v;
    for (const auto& [k, v] : o.epicenter_dims)
      epicenter_dims[k] += v;
    for (const auto& [k, v] : o.quotient_types)
      quotient_types[k] += v;
    capable_count += o.capable_count;
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

class ClauseSink {
public:
  ClauseSink(VerificationReport& rep, std::uint64_t code) : rep_(rep), code_(code) {}

  void require(bool cond, std::string_view clause, const std::function<std::string()>& detail) {
    if (!cond)
      rep_.add_violation({code_, std::string(clause), detail()});
  }

private:
  VerificationReport& rep_;
  std::uint64_t code_;
};

inline std::string dims_text(const GroupAudit& a) {
  return "e=" + std::to_string(a.invariants.order_exponent) + " s=" + std::to_string(a.invariants.s) +
         " epicenter_dim=" + std::to_string(a.epicenter.dim()) + " capable=" + (a.capable ? "1" : "0");
}

/// Engine identities checked alongside every theorem over special groups.
inline void check_common(const Presentation& P, const GroupAudit& a, ClauseSink& sink) {
  (void)P;
  sink.require(a.diag.is_special_rank2, "special-rank-2", [] { return std::string("candidate is not special"); });
  sink.require(a.eq1 == a.invariants.order_exponent, "order-formula", [&] {
    return "formula " + std::to_string(a.eq1) + " vs engine " + std::to_string(a.invariants.order_exponent);
  });
  for (const GaneaEntry& g : a.ganea)
    sink.require(g.record.lhs_exponent == g.record.rhs_exponent, "ganea", [&] {
      return "dim Z = " + std::to_string(g.Z.dim()) + ": lhs " + std::to_string(g.record.lhs_exponent) + " rhs " +
             std::to_string(g.record.rhs_exponent);
    });
}

inline bool is_es_odd(const IsoType& t, int exponent, int min_m, int max_m, int d) {
  const ESodd* e = std::get_if<ESodd>(&t);
  return e != nullptr && e->exponent == exponent && e->m >= min_m && e->m <= max_m && e->a == d - 2 * e->m;
}

inline void check_s1(const Presentation& P, const GroupAudit& a, ClauseSink& sink) {
  const int d = P.d();
  const int C = d * (d - 1) / 2;
  const int e = a.invariants.order_exponent;
  const int epi = static_cast<int>(a.epicenter.dim());
  sink.require(a.diag.r == 2, "hypothesis", [&] { return "r = " + std::to_string(a.diag.r); });
  sink.require(e == C - 2 || e == C - 1, "order-range", [&] { return dims_text(a); });
  sink.require(epi == 0 || epi == 2, "epicenter-values", [&] { return dims_text(a); });
  sink.require((a.invariants.s == 0 && e == C - 2) == (epi == 2), "elementary-iff-full-epicenter",
               [&] { return dims_text(a); });
  sink.require((e == C - 1) == a.capable, "capable-iff-order", [&] { return dims_text(a); });
  sink.require(!a.capable || d <= 5, "capable-order-bound", [&] { return dims_text(a); });
  sink.require(a.lines.size() == static_cast<std::size_t>(P.p() + 1), "line-count",
               [&] { return std::to_string(a.lines.size()) + " lines"; });
  for (const LineQuotient& q : a.lines) {
    bool ok = false;
    if (P.p() == 2) {
      if (const ES2* t = std::get_if<ES2>(&q.type))
        ok = t->a == d - 2 * t->m && (t->m >= 2 || t->arf == 1);
    } else {
      ok = is_es_odd(q.type, 2, 1, d / 2, d);
    }
    sink.require(ok, "line-quotients", [&] { return "G/Z recognized as " + describe(q.type); });
  }
}

inline void check_s2(const Presentation& P, const GroupAudit& a, ClauseSink& sink) {
  const int d = P.d();
  const int C = d * (d - 1) / 2;
  const int e = a.invariants.order_exponent;
  const int epi = static_cast<int>(a.epicenter.dim());
  sink.require(a.diag.r == 1, "hypothesis", [&] { return "r = " + std::to_string(a.diag.r); });
  const bool epi_is_W = epi == 2;
  const bool epi_is_power = epi == 1 && a.epicenter == a.power_span;
  sink.require(!a.capable, "not-capable", [&] { return dims_text(a); });
  sink.require(epi_is_W || epi_is_power, "epicenter-values", [&] { return dims_text(a); });
  sink.require(a.invariants.s == 0, "elementary", [&] { return dims_text(a); });
  const IsoType top = recognize(central_quotient(P, a.power_span));
  const bool top_big = is_es_odd(top, 1, 2, d / 2, d);
  const bool top_small = is_es_odd(top, 1, 1, 1, d);
  sink.require(e == C - 2 || e == C, "order-values", [&] { return dims_text(a); });
  sink.require((e == C - 2) == epi_is_W && epi_is_W == top_big, "small-order-equivalences",
               [&] { return dims_text(a) + ", G/G^p = " + describe(top); });
  sink.require((e == C) == epi_is_power && epi_is_power == top_small, "large-order-equivalences",
               [&] { return dims_text(a) + ", G/G^p = " + describe(top); });
}

/// For r = 0 the isomorphism classes named in the capability list are decided
/// by structure: every special group with d = 3 is the Phi_4 class, and the
/// d = 4 ones are the three pencil types of the Phi_12/13/15 classes.
inline bool in_phi4_class(const Presentation& P, const GroupAudit& a) {
  return P.d() == 3 && a.diag.r == 0 && a.diag.is_special_rank2;
}

inline bool in_phi12_13_15_classes(const Presentation& P, const GroupAudit& a) {
  return P.d() == 4 && a.diag.r == 0 && a.diag.is_special_rank2 && pencil_type(P) != PencilType::degenerate;
}

inline void check_s3(const Presentation& P, const GroupAudit& a, ClauseSink& sink) {
  const int d = P.d();
  const int C = d * (d - 1) / 2;
  const int e = a.invariants.order_exponent;
  const int epi = static_cast<int>(a.epicenter.dim());
  sink.require(a.diag.r == 0, "hypothesis", [&] { return "r = " + std::to_string(a.diag.r); });
  sink.require(a.invariants.s == 0, "elementary", [&] { return dims_text(a); });
  sink.require(C - 2 <= e && e <= C + 3, "order-bounds", [&] { return dims_text(a); });
  sink.require(a.capable || e == C - 2 || e == C, "non-capable-orders", [&] { return dims_text(a); });
  sink.require(!a.capable || (3 <= d && d <= 5), "capable-order-bound", [&] { return dims_text(a); });
  const bool phi4 = in_phi4_class(P, a);
  const bool phi6 = in_phi12_13_15_classes(P, a);
  sink.require(!phi4 || a.capable, "capable-list", [&] { return "Phi_4 class not capable"; });
  sink.require(!phi6 || a.capable, "capable-list", [&] { return "Phi_12/13/15 class not capable"; });
  sink.require(!a.capable || phi4 || phi6 || d == 5, "capable-list", [&] { return dims_text(a); });
  sink.require((e == C + 3) == phi4, "top-order-iff-phi4", [&] { return dims_text(a); });
  sink.require((e == C + 2) == phi6, "order-c+2-iff-phi12-13-15", [&] { return dims_text(a); });
  sink.require(e != C - 1 || (a.capable && d == 5), "order-c-1-only-t", [&] { return dims_text(a); });
  sink.require(!(a.capable && d == 5) || e == C - 1, "order-c-1-only-t", [&] { return dims_text(a); });
  sink.require((e == C - 2) == (epi == 2), "min-order-iff-full-epicenter", [&] { return dims_text(a); });
  if (epi == 2)
    for (const LineQuotient& q : a.lines)
      sink.require(is_es_odd(q.type, 1, 2, d / 2, d), "min-order-line-quotients",
                   [&] { return "G/Z recognized as " + describe(q.type); });
  sink.require((e == C) == (epi == 1), "order-c-iff-line-epicenter", [&] { return dims_text(a); });
  if (epi == 1) {
    const IsoType q = recognize(central_quotient(P, a.epicenter));
    sink.require(is_es_odd(q, 1, 1, 1, d), "line-epicenter-quotient",
                 [&] { return "G/Z* recognized as " + describe(q); });
  }
}

inline void check_p2(const GroupAudit& a, ClauseSink& sink) {
  sink.require(a.diag.r == 2, "squares-generate-derived", [&] { return "r = " + std::to_string(a.diag.r); });
}

inline void record_stats(const GroupAudit& a, VerificationReport& rep) {
  ++rep.groups_checked;
  ++rep.order_exponents[a.invariants.order_exponent];
  ++rep.s_values[a.invariants.s];
  ++rep.r_values[a.diag.r];
  ++rep.epicenter_dims[static_cast<int>(a.epicenter.dim())];
  for (const LineQuotient& q : a.lines)
    ++rep.quotient_types[describe(q.type)];
  if (a.capable)
    ++rep.capable_count;
}

inline void check_group(TheoremId id, const Presentation& P, const GroupAudit& a, ClauseSink& sink) {
  check_common(P, a, sink);
  switch (id) {
  case TheoremId::S1:
    check_s1(P, a, sink);
    break;
  case TheoremId::S2:
    check_s2(P, a, sink);
    break;
  case TheoremId::S3:
    check_s3(P, a, sink);
    break;
  case TheoremId::p2:
    check_p2(a, sink);
    break;
  }
}

/// Catalog groups of the S3 capability list that live at this d.
inline void check_s3_catalog(int p, int d, VerificationReport& rep) {
  const int C = d * (d - 1) / 2;
  std::vector<std::pair<std::string, int>> expected; // name, order exponent
  if (d == 3)
    expected = {{"phi4_1_5", C + 3}};
  if (d == 4)
    expected = {{"phi12_1_6", C + 2}, {"phi13_1_6", C + 2}, {"phi15_1_6", C + 2}};
  if (d == 5)
    expected = {{"t_group", C - 1}};
  for (const auto& [name, e] : expected) {
    const Presentation P = make_named(name, {p});
    const GroupAudit a = audit_group(P);
    CatalogCheck cc{name, a.invariants.order_exponent, a.capable, false};
    cc.ok = a.capable && a.invariants.order_exponent == e && a.invariants.s == 0;
    VerificationReport scratch;
    ClauseSink sink(scratch, 0);
    check_group(TheoremId::S3, P, a, sink);
    cc.ok = cc.ok && scratch.ok();
    if (!cc.ok)
      rep.add_violation({0, "catalog-" + name, dims_text(a)});
    rep.catalog.push_back(cc);
  }
}

} // namespace detail

/// Runs every decidable clause of a theorem over the task's candidates.
/// The task's gp_mode is replaced by the theorem's hypothesis.
inline VerificationReport verify_theorem(TheoremId id, EnumerationTask task) {
  if (id == TheoremId::S3 && task.p == 2)
    throw ValidationError("S3 concerns odd p");
  if (id == TheoremId::p2 && task.p != 2)
    throw ValidationError("p2 concerns p = 2");
  task.gp_mode = theorem_mode(id);
  const CandidateSpace space(task.p, task.d);
  check_task_budget(task, space);

  VerificationReport rep;
  rep.theorem = std::string(to_string(id));
  rep.p = task.p;
  rep.d = task.d;
  rep.mode = task.exhaustive() ? "exhaustive" : "sampled";
  if (task.sampling) {
    rep.samples = task.sampling->count;
    rep.seed = task.sampling->seed;
  }
  rep.dedupe = task.dedupe;

  const std::uint64_t units = unit_count(task, space);
  std::vector<VerificationReport> parts(static_cast<std::size_t>(detail::worker_count(task.jobs, units)));
  detail::run_partitioned(units, static_cast<int>(parts.size()), [&](int w, std::uint64_t b, std::uint64_t e) {
    CandidateStream stream(task, space, b, e);
    VerificationReport& part = parts[static_cast<std::size_t>(w)];
    while (auto c = stream.next()) {
      if (id == TheoremId::p2) {
        // only the power rank matters; the stream is already every valid (C, f)
        detail::ClauseSink sink(part, c->code);
        sink.require(c->r == 2, "squares-generate-derived", [&] { return "r = " + std::to_string(c->r); });
        ++part.groups_checked;
        ++part.r_values[c->r];
        continue;
      }
      const GroupAudit a = audit_group(c->P);
      detail::ClauseSink sink(part, c->code);
      detail::check_group(id, c->P, a, sink);
      detail::record_stats(a, part);
    }
  });
  for (const VerificationReport& part : parts)
    rep.merge(part);

  if (id == TheoremId::S3) {
    detail::check_s3_catalog(task.p, task.d, rep);
    if (task.dedupe) {
      const DedupeResult dd = dedupe_classes(task.p, task.d, GpMode::trivial);
      std::vector<std::uint64_t> capable;
      for (const OrbitClass& oc : dd.classes) {
        const Presentation P = space.decode(oc.representative);
        const GroupAudit a = audit_group(P);
        ClassSummary cs{oc.representative, oc.orbit_size, a.capable, a.invariants.order_exponent, ""};
        if (task.d == 4)
          cs.pencil = std::string(to_string(pencil_type(P)));
        rep.classes.push_back(cs);
        if (a.capable)
          capable.push_back(oc.representative);
      }
      // capable classes must be exactly the listed ones at this d
      std::vector<std::uint64_t> expected;
      if (task.d == 3) {
        const auto cls = dd.find(space.encode(catalog::phi4_1_5(task.p)));
        if (cls)
          expected.push_back(dd.classes[*cls].representative);
      } else if (task.d == 4) {
        for (const char* name : {"phi12_1_6", "phi13_1_6", "phi15_1_6"}) {
          const auto cls = dd.find(space.encode(make_named(name, {task.p})));
          if (cls)
            expected.push_back(dd.classes[*cls].representative);
        }
      } else if (task.d == 5) {
        const auto cls = dd.find(space.encode(catalog::t_group(task.p)));
        if (cls)
          expected.push_back(dd.classes[*cls].representative);
      }
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
      if (capable != expected) {
        std::string got;
        for (std::uint64_t c : capable)
          got += (got.empty() ? "" : ",") + std::to_string(c);
        std::string want;
        for (std::uint64_t c : expected)
          want += (want.empty() ? "" : ",") + std::to_string(c);
        rep.add_violation({0, "capable-classes", "capable {" + got + "} expected {" + want + "}"});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Engine identities over a whole candidate family

struct IdentityReport {
  int p = 0;
  int d = 0;
  long long groups = 0;
  long long x2_mismatches = 0;    // dim X2 != r d - r(r-1)/2
  long long ganea_mismatches = 0; // some Z with lhs != rhs
  long long eq1_mismatches = 0;   // order formula != engine order
  std::map<int, long long> r_values;
  std::map<std::string, long long> x2_by_r; // "r=<r> dim=<dim>" -> count
  std::vector<Violation> examples;          // first few of each kind

  bool ok() const { return x2_mismatches == 0 && ganea_mismatches == 0 && eq1_mismatches == 0; }

  void merge(const IdentityReport& o) {
    groups += o.groups;
    x2_mismatches += o.x2_mismatches;
    ganea_mismatches += o.ganea_mismatches;
    eq1_mismatches += o.eq1_mismatches;
    for (const auto& [k, v] : o.r_values)
      r_values[k] += v;
    for (const auto& [k, v] : o.x2_by_r)
      x2_by_r[k] += v;
    for (const Violation& v : o.examples)
      if (examples.size() < 30)
        examples.push_back(v);
  }
};

/// X2 dimension, Ganea and order-formula identities over every candidate of the task.
inline IdentityReport check_identities(EnumerationTask task) {
  task.gp_mode = GpMode::all;
  const CandidateSpace space(task.p, task.d);
  check_task_budget(task, space);
  const std::uint64_t units = unit_count(task, space);
  std::vector<IdentityReport> parts(static_cast<std::size_t>(detail::worker_count(task.jobs, units)));
  detail::run_partitioned(units, static_cast<int>(parts.size()), [&](int w, std::uint64_t b, std::uint64_t e) {
    IdentityReport& part = parts[static_cast<std::size_t>(w)];
    CandidateStream stream(task, space, b, e);
    auto note = [&](std::uint64_t code, const char* what, std::string detail) {
      if (part.examples.size() < 30)
        part.examples.push_back({code, what, std::move(detail)});
    };
    while (auto c = stream.next()) {
      const GroupAudit a = audit_group(c->P);
      const int r = a.diag.r;
      const int d = c->P.d();
      ++part.groups;
      ++part.r_values[r];
      ++part.x2_by_r["r=" + std::to_string(r) + " dim=" + std::to_string(a.invariants.dim_X2)];
      if (a.invariants.dim_X2 != r * d - r * (r - 1) / 2) {
        ++part.x2_mismatches;
        note(c->code, "x2-dimension", "r=" + std::to_string(r) + " dim X2=" + std::to_string(a.invariants.dim_X2));
      }
      if (a.eq1 != a.invariants.order_exponent) {
        ++part.eq1_mismatches;
        note(c->code, "order-formula", std::to_string(a.eq1) + " vs " + std::to_string(a.invariants.order_exponent));
      }
      for (const GaneaEntry& g : a.ganea)
        if (g.record.lhs_exponent != g.record.rhs_exponent) {
          ++part.ganea_mismatches;
          note(c->code, "ganea", "dim Z=" + std::to_string(g.Z.dim()));
          break;
        }
    }
  });
  IdentityReport rep;
  rep.p = task.p;
  rep.d = task.d;
  for (const IdentityReport& part : parts)
    rep.merge(part);
  return rep;
}

} // namespace schur
