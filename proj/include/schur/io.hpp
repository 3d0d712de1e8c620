#pragma once

// JSON forms of presentations and reports, and catalog descriptors.
//
// Presentation file:
//   {"p":3,"d":3,"k":2,
//    "commutators":[{"i":1,"j":2,"value":[2,0]}, ...],
//    "powers":[[0,0],[0,0],[0,0]]}
// Generator indices are 1-based with i < j; omitted pairs are zero; unknown
// fields are rejected. Malformed JSON or wrong shapes raise ParseError, values
// outside their ranges raise ValidationError.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "schur/barhom.hpp"
#include "schur/catalog.hpp"
#include "schur/enumerate.hpp"
#include "schur/errors.hpp"
#include "schur/multiplier.hpp"
#include "schur/presentation.hpp"

namespace schur {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, std::string_view what, const std::set<std::string>& required,
                         const std::set<std::string>& optional = {}) {
  if (!j.is_object())
    throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw ParseError("unknown field '" + key + "' in " + std::string(what));
  for (const std::string& key : required)
    if (!j.contains(key))
      throw ParseError("missing field '" + key + "' in " + std::string(what));
}

inline long long get_int(const json& j, std::string_view what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline Vector residue_vector(const Modulus& mod, const json& j, int len, std::string_view what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array");
  if (static_cast<int>(j.size()) != len)
    throw ValidationError(std::string(what) + " must have length " + std::to_string(len) + ", got " +
                          std::to_string(j.size()));
  std::vector<Residue> out;
  for (const json& x : j) {
    const long long v = get_int(x, what);
    if (v < 0 || v >= mod.value())
      throw ValidationError(std::string(what) + " entries must lie in [0, " + std::to_string(mod.value()) + ")");
    out.push_back(static_cast<Residue>(v));
  }
  return Vector(mod, std::move(out));
}

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (Residue r : v.coords())
    a.push_back(static_cast<int>(r));
  return a;
}

inline json subspace_json(const Subspace& s) {
  json rows = json::array();
  for (const Vector& v : s.basis())
    rows.push_back(vector_json(v));
  return rows;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Presentations

inline Presentation presentation_from_json(const json& j) {
  detail::require_keys(j, "presentation", {"p", "d", "k", "commutators", "powers"});
  const long long p = detail::get_int(j.at("p"), "p");
  const long long d = detail::get_int(j.at("d"), "d");
  const long long k = detail::get_int(j.at("k"), "k");
  if (p < 2 || p > 97)
    throw ValidationError("p must be a prime in [2, 97]");
  if (d < 0 || k < 0 || d + k > Presentation::kMaxRank)
    throw ValidationError("need d, k >= 0 and d + k <= " + std::to_string(Presentation::kMaxRank));
  const Modulus mod(static_cast<int>(p));
  Presentation P(mod, static_cast<int>(d), static_cast<int>(k));

  const json& comms = j.at("commutators");
  if (!comms.is_array())
    throw ParseError("commutators must be an array");
  std::set<std::pair<long long, long long>> seen;
  for (const json& c : comms) {
    detail::require_keys(c, "commutator entry", {"i", "j", "value"});
    const long long i = detail::get_int(c.at("i"), "commutator i");
    const long long jj = detail::get_int(c.at("j"), "commutator j");
    if (i < 1 || jj < 1 || i > d || jj > d)
      throw ValidationError("commutator indices must lie in [1, d]");
    if (i >= jj)
      throw ValidationError("commutator entries need i < j, got (" + std::to_string(i) + ", " +
                            std::to_string(jj) + ")");
    if (!seen.insert({i, jj}).second)
      throw ValidationError("duplicate commutator entry (" + std::to_string(i) + ", " + std::to_string(jj) + ")");
    P.set_comm(static_cast<int>(i - 1), static_cast<int>(jj - 1),
               detail::residue_vector(mod, c.at("value"), static_cast<int>(k), "commutator value"));
  }

  const json& pows = j.at("powers");
  if (!pows.is_array())
    throw ParseError("powers must be an array");
  if (static_cast<long long>(pows.size()) != d)
    throw ValidationError("powers must list d = " + std::to_string(d) + " vectors");
  for (long long i = 0; i < d; ++i)
    P.set_power(static_cast<int>(i), detail::residue_vector(mod, pows[static_cast<std::size_t>(i)],
                                                             static_cast<int>(k), "power vector"));
  validate(P);
  return P;
}

inline Presentation presentation_from_string(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return presentation_from_json(j);
}

inline Presentation presentation_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return presentation_from_string(ss.str());
}

inline json presentation_to_json(const Presentation& P) {
  json comms = json::array();
  for (int i = 0; i < P.d(); ++i)
    for (int j = i + 1; j < P.d(); ++j)
      if (!P.comm(i, j).is_zero())
        comms.push_back({{"i", i + 1}, {"j", j + 1}, {"value", detail::vector_json(P.comm(i, j))}});
  json pows = json::array();
  for (int i = 0; i < P.d(); ++i)
    pows.push_back(detail::vector_json(P.power(i)));
  return {{"p", P.p()}, {"d", P.d()}, {"k", P.k()}, {"commutators", comms}, {"powers", pows}};
}

/// catalog:<name>[:<p>][:<params>...]
inline Presentation parse_descriptor(std::string_view desc) {
  constexpr std::string_view prefix = "catalog:";
  if (desc.substr(0, prefix.size()) != prefix)
    throw ParseError("input descriptor must start with 'catalog:', got '" + std::string(desc) + "'");
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : desc.substr(prefix.size())) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  const std::string& name = parts.front();
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ParseError("unknown catalog group '" + name + "'");
  std::vector<int> args;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& s = parts[i];
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size())
      throw ParseError("catalog parameter '" + s + "' is not an integer");
    args.push_back(v);
  }
  return make_named(name, args);
}

// ---------------------------------------------------------------------------
// IsoType

inline json isotype_to_json(const IsoType& t) {
  json j;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ElementaryAbelian>)
          j = {{"kind", "ElementaryAbelian"}, {"n", x.n}};
        else if constexpr (std::is_same_v<T, Zp2TimesElem>)
          j = {{"kind", "Zp2TimesElem"}, {"a", x.a}};
        else if constexpr (std::is_same_v<T, ESodd>)
          j = {{"kind", "ESodd"}, {"exponent", x.exponent}, {"m", x.m}, {"a", x.a}};
        else if constexpr (std::is_same_v<T, ES2>)
          j = {{"kind", "ES2"}, {"arf", x.arf}, {"m", x.m}, {"a", x.a}};
        else
          j = {{"kind", "Other"}, {"description", x.description}};
      },
      t);
  j["text"] = describe(t);
  return j;
}

inline IsoType isotype_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseError("isomorphism type needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  auto I = [&](const char* key) { return static_cast<int>(detail::get_int(j.at(key), key)); };
  if (kind == "ElementaryAbelian") {
    detail::require_keys(j, "type", {"kind", "n"}, {"text"});
    return ElementaryAbelian{I("n")};
  }
  if (kind == "Zp2TimesElem") {
    detail::require_keys(j, "type", {"kind", "a"}, {"text"});
    return Zp2TimesElem{I("a")};
  }
  if (kind == "ESodd") {
    detail::require_keys(j, "type", {"kind", "exponent", "m", "a"}, {"text"});
    return ESodd{I("exponent"), I("m"), I("a")};
  }
  if (kind == "ES2") {
    detail::require_keys(j, "type", {"kind", "arf", "m", "a"}, {"text"});
    return ES2{I("arf"), I("m"), I("a")};
  }
  if (kind == "Other") {
    detail::require_keys(j, "type", {"kind", "description"}, {"text"});
    return OtherType{j.at("description").get<std::string>()};
  }
  throw ParseError("unknown isomorphism type kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// RunReport

struct QuotientRow {
  std::vector<std::vector<int>> Z; // basis of the central line
  IsoType type;
  int order_exponent = 0; // log_p |M(G/Z)|

  friend bool operator==(const QuotientRow&, const QuotientRow&) = default;
};

struct GaneaRow {
  std::vector<std::vector<int>> Z;
  GaneaRecord record;

  friend bool operator==(const GaneaRow&, const GaneaRow&) = default;
};

struct EpicenterRow {
  std::vector<std::vector<int>> basis;
  bool capable = false;

  friend bool operator==(const EpicenterRow&, const EpicenterRow&) = default;
};

struct OracleRow {
  BarHomologyReport report;
  long long expected_h2 = 0;
  bool cross_check = false;

  friend bool operator==(const OracleRow&, const OracleRow&) = default;
};

struct RunReport {
  std::string input;
  int p = 0;
  int d = 0;
  int k = 0;
  PresentationDiagnostics diagnostics;
  MultiplierInvariants invariants;
  std::vector<long long> abelian_invariants;
  std::optional<EpicenterRow> epicenter; // special groups only
  std::optional<std::vector<QuotientRow>> quotients;
  std::optional<std::vector<GaneaRow>> ganea;
  std::optional<OracleRow> oracle;
  std::optional<double> wall_time;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

namespace detail {

inline std::vector<std::vector<int>> rows_of(const Subspace& s) {
  std::vector<std::vector<int>> out;
  for (const Vector& v : s.basis()) {
    std::vector<int> row;
    for (Residue r : v.coords())
      row.push_back(r);
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::vector<int>> rows_from_json(const json& j, std::string_view what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const json& row : j) {
    if (!row.is_array())
      throw ParseError(std::string(what) + " rows must be arrays");
    std::vector<int> r;
    for (const json& x : row)
      r.push_back(static_cast<int>(get_int(x, what)));
    out.push_back(std::move(r));
  }
  return out;
}

inline json ganea_record_json(const GaneaRecord& g) {
  return {{"lhs_exponent", g.lhs_exponent}, {"rhs_exponent", g.rhs_exponent}, {"im_lambda_dim", g.im_lambda_dim}};
}

inline GaneaRecord ganea_record_from_json(const json& j) {
  require_keys(j, "ganea record", {"lhs_exponent", "rhs_exponent", "im_lambda_dim"});
  GaneaRecord g;
  g.lhs_exponent = static_cast<int>(get_int(j.at("lhs_exponent"), "lhs_exponent"));
  g.rhs_exponent = static_cast<int>(get_int(j.at("rhs_exponent"), "rhs_exponent"));
  g.im_lambda_dim = static_cast<int>(get_int(j.at("im_lambda_dim"), "im_lambda_dim"));
  return g;
}

} // namespace detail

inline json bar_report_to_json(const BarHomologyReport& r) {
  return {{"group_order", r.group_order}, {"dim_B2", r.dim_B2},   {"dim_B3", r.dim_B3},
          {"rank_d2", r.rank_d2},         {"rank_d3", r.rank_d3}, {"h2_dim", r.h2_dim}};
}

inline BarHomologyReport bar_report_from_json(const json& j) {
  detail::require_keys(j, "oracle report", {"group_order", "dim_B2", "dim_B3", "rank_d2", "rank_d3", "h2_dim"});
  BarHomologyReport r;
  r.group_order = detail::get_int(j.at("group_order"), "group_order");
  r.dim_B2 = detail::get_int(j.at("dim_B2"), "dim_B2");
  r.dim_B3 = detail::get_int(j.at("dim_B3"), "dim_B3");
  r.rank_d2 = detail::get_int(j.at("rank_d2"), "rank_d2");
  r.rank_d3 = detail::get_int(j.at("rank_d3"), "rank_d3");
  r.h2_dim = detail::get_int(j.at("h2_dim"), "h2_dim");
  return r;
}

inline json oracle_row_json(const OracleRow& o) {
  return {{"report", bar_report_to_json(o.report)}, {"expected_h2", o.expected_h2}, {"cross_check", o.cross_check}};
}

inline json to_json(const RunReport& r) {
  json j;
  j["input"] = r.input;
  j["group"] = {{"p", r.p}, {"d", r.d}, {"k", r.k}};
  j["diagnostics"] = {{"commutator_rank", r.diagnostics.commutator_rank},
                      {"common_radical_dim", r.diagnostics.common_radical_dim},
                      {"r", r.diagnostics.r},
                      {"is_special_rank2", r.diagnostics.is_special_rank2},
                      {"is_special", r.diagnostics.is_special}};
  const MultiplierInvariants& m = r.invariants;
  j["multiplier"] = {{"dim_X1", m.dim_X1},
                     {"dim_X2", m.dim_X2},
                     {"dim_X", m.dim_X},
                     {"dim_kerRho", m.dim_kerRho},
                     {"dim_N", m.dim_N},
                     {"s", m.s},
                     {"t", m.t},
                     {"order_exponent", m.order_exponent},
                     {"elementary_abelian", m.elementary_abelian},
                     {"abelian_invariants", r.abelian_invariants}};
  if (r.epicenter)
    j["epicenter"] = {{"basis", r.epicenter->basis},
                      {"dim", r.epicenter->basis.size()},
                      {"capable", r.epicenter->capable}};
  else
    j["epicenter"] = nullptr;
  if (r.quotients) {
    json rows = json::array();
    for (const QuotientRow& q : *r.quotients)
      rows.push_back({{"Z", q.Z}, {"type", isotype_to_json(q.type)}, {"order_exponent", q.order_exponent}});
    j["quotients"] = rows;
  }
  if (r.ganea) {
    json rows = json::array();
    for (const GaneaRow& g : *r.ganea) {
      json row = detail::ganea_record_json(g.record);
      row["Z"] = g.Z;
      rows.push_back(row);
    }
    j["ganea"] = rows;
  }
  if (r.oracle)
    j["oracle"] = oracle_row_json(*r.oracle);
  if (r.wall_time)
    j["wall_time"] = *r.wall_time;
  return j;
}

inline RunReport run_report_from_json(const json& j) {
  detail::require_keys(j, "run report", {"input", "group", "diagnostics", "multiplier", "epicenter"},
                       {"quotients", "ganea", "oracle", "wall_time"});
  RunReport r;
  if (!j.at("input").is_string())
    throw ParseError("input must be a string");
  r.input = j.at("input").get<std::string>();
  const json& g = j.at("group");
  detail::require_keys(g, "group", {"p", "d", "k"});
  r.p = static_cast<int>(detail::get_int(g.at("p"), "p"));
  r.d = static_cast<int>(detail::get_int(g.at("d"), "d"));
  r.k = static_cast<int>(detail::get_int(g.at("k"), "k"));
  const json& dg = j.at("diagnostics");
  detail::require_keys(dg, "diagnostics",
                       {"commutator_rank", "common_radical_dim", "r", "is_special_rank2", "is_special"});
  r.diagnostics.commutator_rank = static_cast<int>(detail::get_int(dg.at("commutator_rank"), "commutator_rank"));
  r.diagnostics.common_radical_dim =
      static_cast<int>(detail::get_int(dg.at("common_radical_dim"), "common_radical_dim"));
  r.diagnostics.r = static_cast<int>(detail::get_int(dg.at("r"), "r"));
  r.diagnostics.is_special_rank2 = dg.at("is_special_rank2").get<bool>();
  r.diagnostics.is_special = dg.at("is_special").get<bool>();
  const json& m = j.at("multiplier");
  detail::require_keys(m, "multiplier",
                       {"dim_X1", "dim_X2", "dim_X", "dim_kerRho", "dim_N", "s", "t", "order_exponent",
                        "elementary_abelian", "abelian_invariants"});
  auto I = [&](const char* key) { return static_cast<int>(detail::get_int(m.at(key), key)); };
  r.invariants.dim_X1 = I("dim_X1");
  r.invariants.dim_X2 = I("dim_X2");
  r.invariants.dim_X = I("dim_X");
  r.invariants.dim_kerRho = I("dim_kerRho");
  r.invariants.dim_N = I("dim_N");
  r.invariants.s = I("s");
  r.invariants.t = I("t");
  r.invariants.order_exponent = I("order_exponent");
  r.invariants.elementary_abelian = m.at("elementary_abelian").get<bool>();
  r.abelian_invariants = m.at("abelian_invariants").get<std::vector<long long>>();
  const json& e = j.at("epicenter");
  if (!e.is_null()) {
    detail::require_keys(e, "epicenter", {"basis", "dim", "capable"});
    r.epicenter = EpicenterRow{detail::rows_from_json(e.at("basis"), "epicenter basis"), e.at("capable").get<bool>()};
  }
  if (j.contains("quotients")) {
    std::vector<QuotientRow> rows;
    for (const json& q : j.at("quotients")) {
      detail::require_keys(q, "quotient row", {"Z", "type", "order_exponent"});
      rows.push_back({detail::rows_from_json(q.at("Z"), "Z"), isotype_from_json(q.at("type")),
                      static_cast<int>(detail::get_int(q.at("order_exponent"), "order_exponent"))});
    }
    r.quotients = std::move(rows);
  }
  if (j.contains("ganea")) {
    std::vector<GaneaRow> rows;
    for (const json& q : j.at("ganea")) {
      detail::require_keys(q, "ganea row", {"Z", "lhs_exponent", "rhs_exponent", "im_lambda_dim"});
      json rec = q;
      rec.erase("Z");
      rows.push_back({detail::rows_from_json(q.at("Z"), "Z"), detail::ganea_record_from_json(rec)});
    }
    r.ganea = std::move(rows);
  }
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    detail::require_keys(o, "oracle", {"report", "expected_h2", "cross_check"});
    r.oracle = OracleRow{bar_report_from_json(o.at("report")), detail::get_int(o.at("expected_h2"), "expected_h2"),
                         o.at("cross_check").get<bool>()};
  }
  if (j.contains("wall_time"))
    r.wall_time = j.at("wall_time").get<double>();
  return r;
}

struct RunOptions {
  bool quotients = false;
  bool ganea = false;
  bool oracle = false;
  OracleOptions oracle_options;
  bool timing = false;
};

/// Everything the multiplier command reports for one group.
inline RunReport build_run_report(const std::string& input, const Presentation& P, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.input = input;
  r.p = P.p();
  r.d = P.d();
  r.k = P.k();
  r.diagnostics = validate(P);
  const BlackburnEvens be(P);
  r.invariants = be.invariants();
  r.abelian_invariants = abelian_invariants(r.invariants, P.p());
  if (r.diagnostics.is_special) {
    const EpicenterReport er = epicenter(P, be.X());
    r.epicenter = EpicenterRow{detail::rows_of(er.epicenter), er.capable};
  }
  if (opt.quotients) {
    if (P.k() > 2)
      throw Unsupported("quotient table needs k <= 2 (quotients must have k <= 1)");
    std::vector<QuotientRow> rows;
    for (const Subspace& Z : all_lines(P.modulus(), P.k())) {
      const Presentation Q = central_quotient(P, Z);
      rows.push_back({detail::rows_of(Z), recognize(Q), multiplier_invariants(Q).order_exponent});
    }
    r.quotients = std::move(rows);
  }
  if (opt.ganea) {
    std::vector<GaneaRow> rows;
    for (const Subspace& Z : all_subspaces(P.modulus(), P.k()))
      rows.push_back({detail::rows_of(Z), ganea_check(P, Z, r.invariants, be.X())});
    r.ganea = std::move(rows);
  }
  if (opt.oracle) {
    const CrossCheckResult cc = cross_check(P, opt.oracle_options);
    r.oracle = OracleRow{cc.report, cc.expected_h2, cc.ok};
  }
  if (opt.timing)
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Tab-separated quotient table: Z basis, recognized type, log_p |M(G/Z)|.
inline std::string quotients_tsv(const RunReport& r) {
  std::string out = "Z\ttype\torder_exponent\n";
  if (!r.quotients)
    return out;
  for (const QuotientRow& q : *r.quotients) {
    std::string z;
    for (const auto& row : q.Z) {
      z += "(";
      for (std::size_t i = 0; i < row.size(); ++i)
        z += (i ? "," : "") + std::to_string(row[i]);
      z += ")";
    }
    out += z + "\t" + describe(q.type) + "\t" + std::to_string(q.order_exponent) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// VerificationReport

namespace detail {

inline json int_map_json(const std::map<int, long long>& m) {
  json j = json::object();
  for (const auto& [k, v] : m)
    j[std::to_string(k)] = v;
  return j;
}

inline std::map<int, long long> int_map_from_json(const json& j, std::string_view what) {
  if (!j.is_object())
    throw ParseError(std::string(what) + " must be an object");
  std::map<int, long long> m;
  for (const auto& [k, v] : j.items())
    m[std::stoi(k)] = get_int(v, what);
  return m;
}

} // namespace detail

inline json to_json(const VerificationReport& r) {
  json viol = json::array();
  for (const Violation& v : r.violations)
    viol.push_back({{"candidate", v.candidate}, {"clause", v.clause}, {"detail", v.detail}});
  json classes = json::array();
  for (const ClassSummary& c : r.classes) {
    json row = {{"representative", c.representative},
                {"orbit_size", c.orbit_size},
                {"capable", c.capable},
                {"order_exponent", c.order_exponent}};
    if (!c.pencil.empty())
      row["pencil"] = c.pencil;
    classes.push_back(row);
  }
  json cat = json::array();
  for (const CatalogCheck& c : r.catalog)
    cat.push_back({{"name", c.name}, {"order_exponent", c.order_exponent}, {"capable", c.capable}, {"ok", c.ok}});
  json quot = json::object();
  for (const auto& [k, v] : r.quotient_types)
    quot[k] = v;
  json by_clause = json::object();
  for (const auto& [k, v] : r.violations_by_clause)
    by_clause[k] = v;
  return {{"theorem", r.theorem},
          {"p", r.p},
          {"d", r.d},
          {"mode", r.mode},
          {"samples", r.samples},
          {"seed", r.seed},
          {"dedupe", r.dedupe},
          {"groups_checked", r.groups_checked},
          {"violation_count", r.violation_count},
          {"violations_by_clause", by_clause},
          {"violations", viol},
          {"ok", r.ok()},
          {"statistics",
           {{"order_exponents", detail::int_map_json(r.order_exponents)},
            {"s_values", detail::int_map_json(r.s_values)},
            {"r_values", detail::int_map_json(r.r_values)},
            {"epicenter_dims", detail::int_map_json(r.epicenter_dims)},
            {"quotient_types", quot},
            {"capable_count", r.capable_count}}},
          {"classes", classes},
          {"catalog", cat}};
}

inline VerificationReport verification_report_from_json(const json& j) {
  detail::require_keys(j, "verification report",
                       {"theorem", "p", "d", "mode", "samples", "seed", "dedupe", "groups_checked", "violation_count",
                        "violations_by_clause", "violations", "ok", "statistics", "classes", "catalog"});
  VerificationReport r;
  r.theorem = j.at("theorem").get<std::string>();
  r.p = static_cast<int>(detail::get_int(j.at("p"), "p"));
  r.d = static_cast<int>(detail::get_int(j.at("d"), "d"));
  r.mode = j.at("mode").get<std::string>();
  r.samples = detail::get_int(j.at("samples"), "samples");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.dedupe = j.at("dedupe").get<bool>();
  r.groups_checked = detail::get_int(j.at("groups_checked"), "groups_checked");
  r.violation_count = detail::get_int(j.at("violation_count"), "violation_count");
  for (const auto& [k, v] : j.at("violations_by_clause").items())
    r.violations_by_clause[k] = detail::get_int(v, "violations_by_clause");
  for (const json& v : j.at("violations")) {
    detail::require_keys(v, "violation", {"candidate", "clause", "detail"});
    r.violations.push_back({v.at("candidate").get<std::uint64_t>(), v.at("clause").get<std::string>(),
                            v.at("detail").get<std::string>()});
  }
  const json& st = j.at("statistics");
  detail::require_keys(st, "statistics",
                       {"order_exponents", "s_values", "r_values", "epicenter_dims", "quotient_types", "capable_count"});
  r.order_exponents = detail::int_map_from_json(st.at("order_exponents"), "order_exponents");
  r.s_values = detail::int_map_from_json(st.at("s_values"), "s_values");
  r.r_values = detail::int_map_from_json(st.at("r_values"), "r_values");
  r.epicenter_dims = detail::int_map_from_json(st.at("epicenter_dims"), "epicenter_dims");
  for (const auto& [k, v] : st.at("quotient_types").items())
    r.quotient_types[k] = detail::get_int(v, "quotient_types");
  r.capable_count = detail::get_int(st.at("capable_count"), "capable_count");
  for (const json& c : j.at("classes")) {
    detail::require_keys(c, "class", {"representative", "orbit_size", "capable", "order_exponent"}, {"pencil"});
    ClassSummary cs{c.at("representative").get<std::uint64_t>(), c.at("orbit_size").get<std::uint64_t>(),
                    c.at("capable").get<bool>(),
                    static_cast<int>(detail::get_int(c.at("order_exponent"), "order_exponent")),
                    c.contains("pencil") ? c.at("pencil").get<std::string>() : std::string()};
    r.classes.push_back(cs);
  }
  for (const json& c : j.at("catalog")) {
    detail::require_keys(c, "catalog check", {"name", "order_exponent", "capable", "ok"});
    r.catalog.push_back({c.at("name").get<std::string>(),
                         static_cast<int>(detail::get_int(c.at("order_exponent"), "order_exponent")),
                         c.at("capable").get<bool>(), c.at("ok").get<bool>()});
  }
  return r;
}

} // namespace schur
