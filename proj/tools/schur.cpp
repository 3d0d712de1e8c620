// schur: multipliers, capability and verification sweeps for special p-groups.
//
// Exit codes: 0 ok, 1 verification found violations (or oracle disagreed),
// 2 parse error, 3 validation error, 4 budget exceeded, 5 internal error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "schur/barhom.hpp"
#include "schur/enumerate.hpp"
#include "schur/errors.hpp"
#include "schur/io.hpp"

namespace {

struct InputArgs {
  std::string descriptor;
  std::string file;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("descriptor", in.descriptor, "catalog:<name>[:<p>][:<params>]");
  cmd->add_option("--input", in.file, "presentation JSON file");
}

std::pair<std::string, schur::Presentation> load_input(const InputArgs& in) {
  if (!in.descriptor.empty() && !in.file.empty())
    throw schur::ParseError("give either a catalog descriptor or --input, not both");
  if (!in.file.empty())
    return {in.file, schur::presentation_from_file(in.file)};
  if (in.descriptor.empty())
    throw schur::ParseError("no input: give catalog:<name>[:<p>] or --input <file>");
  return {in.descriptor, schur::parse_descriptor(in.descriptor)};
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size())
    throw schur::ParseError("seed '" + s + "' is not an unsigned integer");
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{"Schur multipliers and capability of special p-groups"};
  app.require_subcommand(1);

  // multiplier
  InputArgs m_in;
  schur::RunOptions m_opt;
  std::string m_format = "json";
  int m_cap = schur::OracleOptions::kDefaultCap;
  int m_jobs = 1;
  auto* mult = app.add_subcommand("multiplier", "multiplier invariants, epicenter and optional tables");
  add_input(mult, m_in);
  mult->add_flag("--quotients", m_opt.quotients, "recognize G/Z for every central line Z in G'");
  mult->add_flag("--ganea", m_opt.ganea, "Ganea sequence check for every subspace of G'");
  mult->add_flag("--oracle", m_opt.oracle, "cross-check against bar-resolution homology");
  mult->add_option("--cap", m_cap, "largest group order the oracle accepts");
  mult->add_option("--jobs", m_jobs, "oracle worker threads");
  mult->add_option("--format", m_format, "json, or tsv for the quotient table")
      ->check(CLI::IsMember({"json", "tsv"}));
  mult->add_flag("--timing", m_opt.timing, "include wall_time");

  // verify
  std::string v_theorem;
  int v_p = 0;
  int v_d = 0;
  bool v_exhaustive = false;
  long long v_samples = 0;
  std::string v_seed = "0xC0FFEE";
  bool v_dedupe = false;
  int v_jobs = 1;
  auto* ver = app.add_subcommand("verify", "sweep a family of groups and check a theorem's clauses");
  ver->add_option("theorem", v_theorem, "S1, S2, S3 or p2")->required();
  ver->add_option("--p", v_p, "prime")->required();
  ver->add_option("--d", v_d, "rank of G/G'")->required();
  auto* ex = ver->add_flag("--exhaustive", v_exhaustive, "enumerate every candidate");
  auto* sm = ver->add_option("--samples", v_samples, "number of random candidates");
  ver->add_option("--seed", v_seed, "sampling seed (decimal or 0x hex)");
  ver->add_flag("--dedupe", v_dedupe, "collapse GL(d) x GL(2) orbits");
  ver->add_option("--jobs", v_jobs, "worker threads");
  ex->excludes(sm);

  // oracle
  InputArgs o_in;
  schur::OracleOptions o_opt;
  bool o_dense = false;
  auto* ora = app.add_subcommand("oracle", "H_2(G, F_p) from the bar resolution");
  add_input(ora, o_in);
  ora->add_option("--cap", o_opt.cap, "largest group order accepted");
  ora->add_option("--jobs", o_opt.jobs, "worker threads");
  ora->add_flag("--dense", o_dense, "dense elimination (orders up to 64)");

  // presentation
  InputArgs p_in;
  auto* pres = app.add_subcommand("presentation", "print the presentation in file format");
  add_input(pres, p_in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (mult->parsed()) {
    auto [name, P] = load_input(m_in);
    m_opt.oracle_options.cap = m_cap;
    m_opt.oracle_options.jobs = m_jobs;
    const schur::RunReport r = schur::build_run_report(name, P, m_opt);
    if (m_format == "tsv") {
      if (!r.quotients)
        throw schur::ParseError("--format tsv prints the quotient table; add --quotients");
      std::cout << schur::quotients_tsv(r);
    } else {
      std::cout << schur::to_json(r).dump(2) << "\n";
    }
    return r.oracle && !r.oracle->cross_check ? 1 : 0;
  }

  if (ver->parsed()) {
    if (!v_exhaustive && v_samples <= 0)
      throw schur::ParseError("verify needs --exhaustive or --samples N with N > 0");
    const schur::TheoremId id = schur::parse_theorem(v_theorem);
    schur::EnumerationTask task;
    task.p = v_p;
    task.d = v_d;
    task.dedupe = v_dedupe;
    task.jobs = v_jobs;
    if (!v_exhaustive)
      task.sampling = schur::Sampling{v_samples, parse_seed(v_seed)};
    const schur::VerificationReport rep = schur::verify_theorem(id, task);
    std::cout << schur::to_json(rep).dump(2) << "\n";
    return rep.ok() ? 0 : 1;
  }

  if (ora->parsed()) {
    auto [name, P] = load_input(o_in);
    schur::json j;
    j["input"] = name;
    if (o_dense) {
      j["report"] = schur::bar_report_to_json(schur::h2_dim_mod_p_dense(P, o_opt));
    } else {
      const schur::CrossCheckResult cc = schur::cross_check(P, o_opt);
      j["report"] = schur::bar_report_to_json(cc.report);
      j["expected_h2"] = cc.expected_h2;
      j["cross_check"] = cc.ok;
      std::cout << j.dump(2) << "\n";
      return cc.ok ? 0 : 1;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (pres->parsed()) {
    auto [name, P] = load_input(p_in);
    std::cout << schur::presentation_to_json(P).dump(2) << "\n";
    return 0;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const schur::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const schur::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const schur::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const schur::DimensionMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
