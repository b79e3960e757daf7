#include "afdg/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "afdg/diagram_io.hpp"
#include "afdg/dimension_group.hpp"
#include "afdg/duality.hpp"
#include "afdg/models.hpp"
#include "afdg/words.hpp"

namespace afdg {

namespace {

// Ordered command echo plus result rows; both output styles print the
// same rows so reports stay byte-deterministic.
class Report {
public:
  void add(std::string key, std::string value) {
    rows_.emplace_back(std::move(key), std::move(value));
  }
  void print(std::ostream& out, bool porcelain) const {
    for (const auto& [key, value] : rows_)
      out << key << (porcelain ? "=" : ": ") << value << '\n';
  }

private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::parse_error, "cannot open file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

IntVector parse_csv_ints(const std::string& text) {
  IntVector values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) raise(errc::usage_error, "empty integer in list");
    values.push_back(Int(token));
  }
  if (values.empty()) raise(errc::usage_error, "empty integer list");
  return values;
}

// LEVEL:[v1,v2,...]
LimitElement parse_element(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos || text.size() < colon + 3 ||
      text[colon + 1] != '[' || text.back() != ']')
    raise(errc::usage_error,
          "element literal must look like LEVEL:[v1,v2,...]: " + text);
  std::size_t level = std::stoul(text.substr(0, colon));
  return LimitElement{
      level, parse_csv_ints(text.substr(colon + 2, text.size() - colon - 3))};
}

DirectLimitGroup group_from_file(const DiagramFile& file, std::size_t levels) {
  DiagramPtr diagram = materialize(file, levels);
  return from_system(canonical_system(diagram, levels), levels);
}

int cmd_validate(const std::string& path, Report& report) {
  std::string text = read_file(path);
  try {
    DiagramFile file = parse_diagram(text);
    report.add("result", "ok");
    report.add("levels", std::to_string(file.diagram->num_levels()));
    return 0;
  } catch (const Error& e) {
    if (e.code() != errc::invalid_diagram) throw;
    report.add("result", "invalid");
    report.add("reason", e.what());
    return 1;
  }
}

int cmd_k0(const DiagramFile& file, std::size_t levels, Report& report) {
  if (levels < 1) raise(errc::usage_error, "--levels must be at least 1");
  DirectLimitGroup group = group_from_file(file, levels - 1);
  report.add("levels", std::to_string(levels));
  for (std::size_t n = 0; n + 1 < levels; ++n)
    report.add("matrix." + std::to_string(n), group.connecting(n).to_string());
  for (std::size_t n = 0; n < levels; ++n)
    report.add("unit." + std::to_string(n), to_string(group.unit(n)));
  report.add("injective_forever",
             group.injective_forever() ? "true" : "false");
  return 0;
}

int cmd_eq(const DiagramFile& file, const LimitElement& a,
           const LimitElement& b, std::size_t horizon, Report& report) {
  std::size_t levels =
      file.extend_repeat ? horizon
                         : std::min(horizon, file.diagram->num_levels());
  DirectLimitGroup group = group_from_file(file, levels);
  Verdict v = equal(group, a, b, horizon);
  report.add("verdict", v.to_string());
  return v.kind == Verdict::Kind::Equal ? 0 : 1;
}

int cmd_pos(const DiagramFile& file, const LimitElement& e,
            std::size_t horizon, Report& report) {
  std::size_t levels =
      file.extend_repeat ? horizon
                         : std::min(horizon, file.diagram->num_levels());
  DirectLimitGroup group = group_from_file(file, levels);
  Verdict v = positive(group, e, horizon);
  report.add("verdict", v.to_string());
  return (v.kind == Verdict::Kind::Positive || v.kind == Verdict::Kind::Zero)
             ? 0
             : 1;
}

int cmd_check_af(const GeneratorFamily& family, std::size_t word_len,
                 std::size_t depth, Report& report) {
  SearchOutcome outcome = find_non_af_certificate(family, word_len, depth);
  report.add("word_len", std::to_string(word_len));
  report.add("depth", std::to_string(depth));
  if (!outcome.found()) {
    report.add("result", "not-found");
    return 0;
  }
  const NonAFCertificate& cert = *outcome.certificate;
  report.add("result", "certificate");
  report.add("word", word_to_string(cert.word));
  report.add("b_set", cert.b_set.to_string());
  report.add("witness", cert.witness.to_string());
  report.add("witness_image", cert.witness_image.to_string());
  report.add("revalidates",
             validate_certificate(family, cert) ? "true" : "false");
  return 1;
}

int cmd_gicar_lemma(std::size_t n, Report& report) {
  IntMatrix a = gicar_basis_change(n);
  bool all = true;
  for (std::size_t r = 1; r <= n + 1; ++r) {
    IntVector closed = gicar_binomial_column(n, r);
    IntVector column = a.column(r - 1);
    bool match = closed == column;
    all = all && match;
    report.add("column." + std::to_string(r),
               to_string(closed) + (match ? " match" : " MISMATCH"));
  }
  report.add("all_match", all ? "true" : "false");
  return all ? 0 : 1;
}

int cmd_gicar_cone(std::size_t n, const IntVector& beta, Report& report) {
  bool member = gicar_cone_member(n, beta);
  report.add("member", member ? "true" : "false");
  if (member)
    report.add("alpha", to_string(gicar_recover_alpha(n, beta)));
  return member ? 0 : 1;
}

int cmd_gicar_phi(std::size_t n, const IntVector& alpha, Report& report) {
  XminFunction beta = gicar_phi(n, alpha);
  report.add("beta", beta.to_string());
  report.add("alpha_roundtrip",
             to_string(gicar_recover_alpha(n, beta.padded(n + 1))));
  return 0;
}

int cmd_dual(const SupernaturalScale& scale, std::size_t depth, bool verify,
             Report& report) {
  GeneratorSystem system = build_dual_system(scale, depth);
  for (std::size_t n = 1; n <= depth; ++n)
    report.add("quotient." + std::to_string(n), scale.ratio(n).str());
  for (std::size_t n = 0; n <= depth; ++n)
    report.add("unit." + std::to_string(n), scale.unit(n).str());
  ConditionsReport conditions = check_conditions(system, depth);
  report.add("conditions", conditions.pass() ? "pass" : "fail");
  if (!conditions.pass()) {
    report.add("violation", conditions.violation->message);
    return 1;
  }
  if (verify) {
    bool ok = verify_reconstruction(scale, depth);
    report.add("reconstruction", ok ? "true" : "false");
    if (!ok) return 1;
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact dimension-group and groupoid calculator"};
  app.require_subcommand(1);
  bool porcelain = false;
  app.add_flag("--porcelain", porcelain,
               "stable key=value output for scripts");

  auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
  std::string validate_path;
  validate_cmd->add_option("file", validate_path, "diagram file")->required();

  auto* k0_cmd =
      app.add_subcommand("k0", "dimension group of a diagram's system");
  std::string k0_path;
  std::size_t k0_levels = 0;
  k0_cmd->add_option("file", k0_path)->required();
  k0_cmd->add_option("--levels", k0_levels, "number of levels to materialize")
      ->required();

  auto* eq_cmd = app.add_subcommand("eq", "decide equality of two elements");
  std::string eq_path, eq_a, eq_b;
  std::size_t eq_horizon = 0;
  eq_cmd->add_option("file", eq_path)->required();
  eq_cmd->add_option("--a", eq_a, "element LEVEL:[v1,v2,...]")->required();
  eq_cmd->add_option("--b", eq_b, "element LEVEL:[v1,v2,...]")->required();
  eq_cmd->add_option("--horizon", eq_horizon)->required();

  auto* pos_cmd = app.add_subcommand("pos", "decide positivity of an element");
  std::string pos_path, pos_e;
  std::size_t pos_horizon = 0;
  pos_cmd->add_option("file", pos_path)->required();
  pos_cmd->add_option("--e", pos_e, "element LEVEL:[v1,v2,...]")->required();
  pos_cmd->add_option("--horizon", pos_horizon)->required();

  auto* af_cmd =
      app.add_subcommand("check-af", "search for a non-AF certificate");
  std::string af_target;
  std::size_t af_base = 0, af_word_len = 0, af_depth = 0, af_levels = 0;
  std::string af_bases;
  af_cmd->add_option("target", af_target, "'odometer' or a diagram file")
      ->required();
  af_cmd->add_option("--base", af_base, "uniform odometer digit base");
  af_cmd->add_option("--bases", af_bases, "comma-separated odometer bases");
  af_cmd->add_option("--word-len", af_word_len)->required();
  af_cmd->add_option("--depth", af_depth)->required();
  af_cmd->add_option("--levels", af_levels,
                     "system levels for a diagram target (default: depth)");

  auto* gicar_cmd = app.add_subcommand("gicar", "Pascal-diagram machinery");
  std::size_t gicar_lemma = 0, gicar_cone = 0, gicar_phi_n = 0;
  std::string gicar_beta, gicar_alpha;
  auto* lemma_opt = gicar_cmd->add_option(
      "--lemma", gicar_lemma, "compare closed-form and product columns");
  auto* cone_opt =
      gicar_cmd->add_option("--cone", gicar_cone, "cone membership at level n");
  gicar_cmd->add_option("--beta", gicar_beta, "comma-separated coefficients");
  auto* phi_opt =
      gicar_cmd->add_option("--phi", gicar_phi_n, "evaluate phi_n at alpha");
  gicar_cmd->add_option("--alpha", gicar_alpha, "comma-separated coefficients");

  auto* dual_cmd =
      app.add_subcommand("dual", "character-group system of a scale");
  std::string dual_scale;
  std::size_t dual_depth = 0;
  bool dual_verify = false;
  dual_cmd->add_option("--scale", dual_scale, "units u_1,u_2,...")->required();
  dual_cmd->add_option("--depth", dual_depth)->required();
  dual_cmd->add_flag("--verify", dual_verify,
                     "verify the round trip back to the scale");

  std::vector<const char*> argv;
  argv.push_back("afdg");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  Report report;
  int status = 0;
  try {
    if (*validate_cmd) {
      report.add("command", "validate");
      status = cmd_validate(validate_path, report);
    } else if (*k0_cmd) {
      report.add("command", "k0");
      status = cmd_k0(parse_diagram(read_file(k0_path)), k0_levels, report);
    } else if (*eq_cmd) {
      report.add("command", "eq");
      status = cmd_eq(parse_diagram(read_file(eq_path)), parse_element(eq_a),
                      parse_element(eq_b), eq_horizon, report);
    } else if (*pos_cmd) {
      report.add("command", "pos");
      status = cmd_pos(parse_diagram(read_file(pos_path)),
                       parse_element(pos_e), pos_horizon, report);
    } else if (*af_cmd) {
      report.add("command", "check-af");
      if (af_target == "odometer") {
        std::vector<std::size_t> bases;
        if (!af_bases.empty()) {
          for (const Int& b : parse_csv_ints(af_bases))
            bases.push_back(static_cast<std::size_t>(b));
        } else if (af_base >= 2) {
          bases.assign(af_depth, af_base);
        } else {
          raise(errc::usage_error,
                "odometer target needs --base or --bases");
        }
        if (bases.size() < af_depth)
          raise(errc::usage_error, "--bases shorter than --depth");
        status = cmd_check_af(GeneratorFamily::odometer(bases), af_word_len,
                              af_depth, report);
      } else {
        std::size_t levels = af_levels ? af_levels : af_depth;
        DiagramFile file = parse_diagram(read_file(af_target));
        GeneratorFamily family = GeneratorFamily::of_system(
            canonical_system(materialize(file, levels), levels));
        status = cmd_check_af(family, af_word_len, af_depth, report);
      }
    } else if (*gicar_cmd) {
      report.add("command", "gicar");
      if (lemma_opt->count()) {
        status = cmd_gicar_lemma(gicar_lemma, report);
      } else if (cone_opt->count()) {
        status = cmd_gicar_cone(gicar_cone, parse_csv_ints(gicar_beta), report);
      } else if (phi_opt->count()) {
        status = cmd_gicar_phi(gicar_phi_n, parse_csv_ints(gicar_alpha), report);
      } else {
        raise(errc::usage_error, "gicar needs --lemma, --cone or --phi");
      }
    } else if (*dual_cmd) {
      report.add("command", "dual");
      SupernaturalScale scale =
          SupernaturalScale::from_tail(parse_csv_ints(dual_scale));
      status = cmd_dual(scale, dual_depth, dual_verify, report);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  report.print(out, porcelain);
  return status;
}

} // namespace afdg
