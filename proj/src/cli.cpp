#include "npc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "npc/codes.hpp"
#include "npc/error.hpp"
#include "npc/scenario.hpp"

namespace npc::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << contents) || !file.flush()) {
    throw Error(ErrorCode::InvalidParameters, "cannot write " + path);
  }
}

std::string summary(const codes::ProtectionCode& code) {
  std::ostringstream s;
  s << code.n() << ' ' << code.k() << ' ' << code.d_min() << ' '
    << codes::to_string(code.distance_status());
  return s.str();
}

struct CodegenArgs {
  std::string family;
  std::size_t n = 0;
  unsigned mu = 0;
  unsigned t = 0;
  std::string out;
};

int codegen(const CodegenArgs& a, std::ostream& out, std::ostream& err) {
  codes::ProtectionCode code = [&] {
    if (a.family == "parity") return codes::single_parity_code(a.n);
    if (a.family == "hamming") return codes::hamming_code(a.mu);
    return codes::bch_code(a.n, a.t);
  }();
  const std::string file = codes::to_code_file(code);
  if (a.out.empty()) {
    out << file;
    err << summary(code) << '\n';
  } else {
    write_file(a.out, file);
    out << summary(code) << '\n';
  }
  return kExitOk;
}

int verify(const std::string& path, std::size_t t, std::ostream& out, std::ostream& err) {
  const codes::ProtectionCode code = codes::parse_code_file(read_file(path));
  const codes::ProtectionReport report = codes::verify_protection(code, t);
  for (const codes::ErasurePattern& p : report.failing_patterns) {
    std::string line;
    for (std::size_t e : p.erased()) {
      if (!line.empty()) line += ',';
      line += std::to_string(e);
    }
    out << line << '\n';
  }
  err << report.patterns_checked << " patterns of size " << t << ", "
      << report.failing_patterns.size() << " unrecoverable\n";
  return report.recoverable ? kExitOk : kExitViolated;
}

int simulate(const std::string& path, const std::string& out_flag, std::ostream& out) {
  const scenario::ScenarioConfig config = scenario::parse_config(read_file(path));
  const codes::ProtectionCode code =
      scenario::build_code(config, std::filesystem::path(path).parent_path());
  const protocol::SimulationResult result = scenario::run_scenario(config, code);

  std::ostringstream report;
  scenario::write_report(report, result, code.n());
  const std::string target = !out_flag.empty() ? out_flag : config.output.value_or("");
  if (target.empty()) {
    out << report.str();
  } else {
    write_file(target, report.str());
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network protection codes: build, verify and simulate", "npc"};
  app.require_subcommand(1);

  CodegenArgs gen;
  auto* cg = app.add_subcommand("codegen", "Build a code and write it in code file format");
  cg->add_option("--family", gen.family, "parity | hamming | bch")
      ->required()
      ->check(CLI::IsMember({"parity", "hamming", "bch"}));
  cg->add_option("--n", gen.n, "Code length (parity, bch)");
  cg->add_option("--mu", gen.mu, "Hamming parameter");
  cg->add_option("--t", gen.t, "BCH design parameter");
  cg->add_option("--out", gen.out, "Output path (default: stdout)");

  std::string verify_path;
  std::size_t verify_t = 0;
  auto* vf = app.add_subcommand("verify", "Check every t-erasure pattern of a code file");
  vf->add_option("file", verify_path, "Code file")->required();
  vf->add_option("--t", verify_t, "Number of erasures")->required();

  std::string config_path;
  std::string sim_out;
  auto* sm = app.add_subcommand("simulate", "Run a scenario and write its report");
  sm->add_option("config", config_path, "Scenario file")->required();
  sm->add_option("--out", sim_out, "Report path (overrides the scenario's output key)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cg->parsed()) {
      if (gen.family != "hamming" && !cg->count("--n")) {
        err << "codegen: --n is required for " << gen.family << '\n';
        return kExitUsage;
      }
      if (gen.family == "hamming" && !cg->count("--mu")) {
        err << "codegen: --mu is required for hamming\n";
        return kExitUsage;
      }
      if (gen.family == "bch" && !cg->count("--t")) {
        err << "codegen: --t is required for bch\n";
        return kExitUsage;
      }
      return codegen(gen, out, err);
    }
    if (vf->parsed()) return verify(verify_path, verify_t, out, err);
    return simulate(config_path, sim_out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace npc::cli
