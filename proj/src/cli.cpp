#include "sqwell/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sqwell/error.hpp"

namespace sqwell::cli {

namespace {

const char* verb_name(Verb v) {
  switch (v) {
    case Verb::Spectrum: return "spectrum";
    case Verb::Params: return "params";
    case Verb::Audit: return "audit";
    case Verb::Compare: return "compare";
    case Verb::Figure1: return "figure1";
  }
  return "?";
}

void require_finite(double x, const char* flag) {
  if (!std::isfinite(x)) throw UsageError(std::string("--") + flag + " must be finite");
}

void validate(const Command& cmd) {
  require_finite(cmd.params.a, "a");
  require_finite(cmd.params.b, "b");
  require_finite(cmd.config.c, "c");
  require_finite(cmd.config.mass, "mass");
  if (!(cmd.config.c > 0.0)) throw UsageError("--c must be positive");
  if (!(cmd.config.mass > 0.0)) throw UsageError("--mass must be positive");
  if (cmd.levels < 1) throw UsageError("--levels must be at least 1");
  if (cmd.verb == Verb::Figure1) {
    require_finite(cmd.sweep.start, "sweep-start");
    require_finite(cmd.sweep.stop, "sweep-stop");
    if (cmd.sweep.variable != 'a' && cmd.sweep.variable != 'b') {
      throw UsageError("--sweep-var must be a or b");
    }
    if (!(cmd.sweep.start <= cmd.sweep.stop)) {
      throw UsageError("--sweep-start must not exceed --sweep-stop");
    }
    if (cmd.sweep.steps < 2) throw UsageError("--sweep-steps must be at least 2");
  }
  if (cmd.verb == Verb::Audit) {
    if (cmd.k && !(std::isfinite(*cmd.k) && *cmd.k > 0.0)) {
      throw UsageError("--k must be positive and finite");
    }
    if (cmd.level < 1) throw UsageError("--level must be at least 1");
  }
}

std::string complex_text(Complex z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (!std::signbit(im)) out += '+';
  out += format_double(im);
  out += 'i';
  return out;
}

std::string record_value(const AuditRecord& r, Complex v) {
  return r.complex_valued ? complex_text(v) : format_double(v.real());
}

nlohmann::json record_value_json(const AuditRecord& r, Complex v) {
  if (!r.complex_valued) return v.real();
  return {{"re", v.real()}, {"im", v.imag()}};
}

Complex record_value_from_json(const nlohmann::json& j) {
  if (j.is_null()) return 0.0;
  if (j.is_object()) return {j.at("re").get<double>(), j.at("im").get<double>()};
  return j.get<double>();
}

nlohmann::json input_json(const Command& cmd) {
  return {{"a", cmd.params.a},
          {"b", cmd.params.b},
          {"c", cmd.config.c},
          {"mass", cmd.config.mass},
          {"levels", cmd.levels}};
}

double audit_k(const Command& cmd) {
  if (cmd.k) return *cmd.k;
  return find_levels(cmd.params, cmd.config, cmd.level).back().k;
}

std::string serialize(const Command& cmd) {
  const bool csv = cmd.format == Format::Csv;
  nlohmann::json doc = {{"command", verb_name(cmd.verb)}, {"input", input_json(cmd)}};
  switch (cmd.verb) {
    case Verb::Spectrum: {
      const auto rows = find_levels(cmd.params, cmd.config, cmd.levels);
      if (csv) return to_csv(rows);
      doc["rows"] = rows;
      break;
    }
    case Verb::Params: {
      const auto rows = level_map_table(cmd.params, cmd.config, cmd.levels);
      if (csv) return to_csv(rows);
      doc["rows"] = rows;
      break;
    }
    case Verb::Compare: {
      const auto rows = compare_models(cmd.params, cmd.config, cmd.levels);
      if (csv) return to_csv(rows);
      doc["rows"] = rows;
      break;
    }
    case Verb::Audit: {
      validate_matching(cmd.params, cmd.config);
      const AuditReport report = audit_at(cmd.params, cmd.config, audit_k(cmd));
      if (csv) return to_csv(report);
      doc["report"] = report;
      break;
    }
    case Verb::Figure1: {
      const auto rows = figure1_sweep(cmd);
      if (csv) return to_csv(rows, cmd.levels);
      doc["input"]["sweep"] = {{"variable", std::string(1, cmd.sweep.variable)},
                               {"start", cmd.sweep.start},
                               {"stop", cmd.sweep.stop},
                               {"steps", cmd.sweep.steps}};
      doc["rows"] = rows;
      break;
    }
  }
  return doc.dump(2) + "\n";
}

void add_common(CLI::App* sub, Command& cmd) {
  sub->add_option("--a", cmd.params.a, "delta coupling a")->capture_default_str();
  sub->add_option("--b", cmd.params.b, "delta' coupling b")->capture_default_str();
  sub->add_option("--c", cmd.config.c, "well half-width c")->capture_default_str();
  sub->add_option("--mass", cmd.config.mass, "particle mass")->capture_default_str();
  sub->add_option("--levels", cmd.levels, "number of levels")->capture_default_str();
  sub->add_option("--format", cmd.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}))
      ->default_str("csv");
  sub->add_option("--output", cmd.output_path, "write data to this file instead of stdout");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::optional<Command> parse_args(const std::vector<std::string>& args, std::string* help) {
  Command cmd;
  CLI::App app{"Bound states of the infinite square well with a delta/delta' point interaction"};
  app.name("sqwell");
  app.require_subcommand(1, 1);

  struct VerbEntry {
    Verb verb;
    const char* description;
  };
  const VerbEntry verbs[] = {
      {Verb::Spectrum, "levels k_n, E_n from the quantization condition"},
      {Verb::Params, "wall-side parameters (m1, phi, m0, m3) per level"},
      {Verb::Audit, "residual of every equation of the parameter chain"},
      {Verb::Compare, "quantization roots vs. Dirichlet-wall oracle roots"},
      {Verb::Figure1, "first energy levels over a coupling sweep"},
  };
  std::vector<std::pair<CLI::App*, Verb>> subs;
  std::string sweep_var = "a";
  for (const auto& entry : verbs) {
    CLI::App* sub = app.add_subcommand(verb_name(entry.verb), entry.description);
    add_common(sub, cmd);
    if (entry.verb == Verb::Audit) {
      sub->add_option("--k", cmd.k, "wavenumber (default: root number --level)");
      sub->add_option("--level", cmd.level, "root of the quantization condition to audit at")
          ->capture_default_str();
    }
    if (entry.verb == Verb::Figure1) {
      sub->add_option("--sweep-var", sweep_var, "swept coupling, a or b")->capture_default_str();
      sub->add_option("--sweep-start", cmd.sweep.start)->capture_default_str();
      sub->add_option("--sweep-stop", cmd.sweep.stop)->capture_default_str();
      sub->add_option("--sweep-steps", cmd.sweep.steps)->capture_default_str();
    }
    subs.emplace_back(sub, entry.verb);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [sub, verb] : subs) {
    if (sub->parsed()) cmd.verb = verb;
  }
  if (sweep_var.size() != 1) throw UsageError("--sweep-var must be a or b");
  cmd.sweep.variable = sweep_var[0];
  validate(cmd);
  return cmd;
}

std::vector<SweepRow> figure1_sweep(const Command& cmd) {
  const SweepSpec& sw = cmd.sweep;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(sw.steps));
  const double width = sw.stop - sw.start;
  for (int i = 0; i < sw.steps; ++i) {
    const double value =
        i == sw.steps - 1 ? sw.stop : sw.start + width * static_cast<double>(i) / (sw.steps - 1);
    MatchingParams p = cmd.params;
    (sw.variable == 'a' ? p.a : p.b) = value;
    SweepRow row{value, {}};
    for (const SpectralLevel& level : find_levels(p, cmd.config, cmd.levels)) {
      row.energies.push_back(level.energy);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ExecResult execute(const Command& cmd) {
  ExecResult result;
  try {
    validate(cmd);
    result.output = serialize(cmd);
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.error = e.what();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::SingularCoupling: result.exit_code = kExitSingularCoupling; break;
      case ErrorCode::InvalidConfig:
      case ErrorCode::InvalidArgument: result.exit_code = kExitUsage; break;
      default: result.exit_code = kExitNumeric; break;
    }
    result.error = e.what();
  }
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<Command> cmd;
  try {
    std::string help;
    cmd = parse_args(args, &help);
    if (!cmd) {
      out << help;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  const ExecResult result = execute(*cmd);
  if (result.exit_code != kExitOk) {
    err << "error: " << result.error << "\n";
    return result.exit_code;
  }
  if (cmd->output_path) {
    std::ofstream file(*cmd->output_path, std::ios::binary);
    file << result.output;
    if (!file) {
      err << "error: cannot write " << *cmd->output_path << "\n";
      return kExitUsage;
    }
  } else {
    out << result.output;
  }
  return kExitOk;
}

std::string csv_header(Verb verb, int levels) {
  switch (verb) {
    case Verb::Spectrum: return "n,k,E";
    case Verb::Params: return "n,k,m1,phi,m0,m3";
    case Verb::Audit: return "eq,lhs,rhs,residual";
    case Verb::Compare: return "n,k_eq62,k_dirichlet,diff";
    case Verb::Figure1: {
      std::string h = "sweep_value";
      for (int n = 1; n <= levels; ++n) h += ",E" + std::to_string(n);
      return h;
    }
  }
  return {};
}

std::string to_csv(const std::vector<SpectralLevel>& rows) {
  std::ostringstream os;
  os << csv_header(Verb::Spectrum) << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.k) << ',' << format_double(r.energy) << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<LevelMapRow>& rows) {
  std::ostringstream os;
  os << csv_header(Verb::Params) << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.k) << ',' << format_double(r.m1) << ','
       << format_double(r.phi) << ',' << format_double(r.m0) << ',' << format_double(r.m3)
       << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<ModelComparisonRow>& rows) {
  std::ostringstream os;
  os << csv_header(Verb::Compare) << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_double(r.k_eq62) << ',' << format_double(r.k_dirichlet) << ','
       << format_double(r.diff) << '\n';
  }
  return os.str();
}

std::string to_csv(const AuditReport& report) {
  std::ostringstream os;
  os << csv_header(Verb::Audit) << '\n';
  for (const auto& r : report.records) {
    os << r.eq << ',' << record_value(r, r.lhs) << ',';
    if (r.defined) {
      os << record_value(r, r.rhs) << ',' << format_double(r.residual);
    } else {
      os << "undefined,undefined";
    }
    os << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<SweepRow>& rows, int levels) {
  std::ostringstream os;
  os << csv_header(Verb::Figure1, levels) << '\n';
  for (const auto& r : rows) {
    os << format_double(r.sweep_value);
    for (double e : r.energies) os << ',' << format_double(e);
    os << '\n';
  }
  return os.str();
}

void to_json(nlohmann::json& j, const SweepRow& v) {
  j = {{"sweep_value", v.sweep_value}, {"energies", v.energies}};
}

void from_json(const nlohmann::json& j, SweepRow& v) {
  j.at("sweep_value").get_to(v.sweep_value);
  j.at("energies").get_to(v.energies);
}

}  // namespace sqwell::cli

namespace sqwell {

void to_json(nlohmann::json& j, const SpectralLevel& v) {
  j = {{"n", v.n}, {"k", v.k}, {"E", v.energy}};
}

void from_json(const nlohmann::json& j, SpectralLevel& v) {
  j.at("n").get_to(v.n);
  j.at("k").get_to(v.k);
  j.at("E").get_to(v.energy);
}

void to_json(nlohmann::json& j, const LevelMapRow& v) {
  j = {{"n", v.n}, {"k", v.k}, {"m1", v.m1}, {"phi", v.phi}, {"m0", v.m0}, {"m3", v.m3}};
}

void from_json(const nlohmann::json& j, LevelMapRow& v) {
  j.at("n").get_to(v.n);
  j.at("k").get_to(v.k);
  j.at("m1").get_to(v.m1);
  j.at("phi").get_to(v.phi);
  j.at("m0").get_to(v.m0);
  j.at("m3").get_to(v.m3);
}

void to_json(nlohmann::json& j, const ModelComparisonRow& v) {
  j = {{"n", v.n}, {"k_eq62", v.k_eq62}, {"k_dirichlet", v.k_dirichlet}, {"diff", v.diff}};
}

void from_json(const nlohmann::json& j, ModelComparisonRow& v) {
  j.at("n").get_to(v.n);
  j.at("k_eq62").get_to(v.k_eq62);
  j.at("k_dirichlet").get_to(v.k_dirichlet);
  j.at("diff").get_to(v.diff);
}

void to_json(nlohmann::json& j, const AuditRecord& v) {
  j = {{"eq", v.eq},
       {"lhs", cli::record_value_json(v, v.lhs)},
       {"rhs", v.defined ? cli::record_value_json(v, v.rhs) : nlohmann::json(nullptr)},
       {"residual", v.defined ? nlohmann::json(v.residual) : nlohmann::json(nullptr)},
       {"complex", v.complex_valued},
       {"defined", v.defined}};
}

void from_json(const nlohmann::json& j, AuditRecord& v) {
  j.at("eq").get_to(v.eq);
  j.at("complex").get_to(v.complex_valued);
  j.at("defined").get_to(v.defined);
  v.lhs = cli::record_value_from_json(j.at("lhs"));
  v.rhs = cli::record_value_from_json(j.at("rhs"));
  const auto& res = j.at("residual");
  v.residual = res.is_null() ? 0.0 : res.get<double>();
}

void to_json(nlohmann::json& j, const AuditReport& v) {
  j = {{"input",
        {{"a", v.input.a}, {"b", v.input.b}, {"mass", v.input.mass}, {"c", v.input.c},
         {"k", v.input.k}}},
       {"ext",
        {{"phi", v.ext.phi}, {"m0", v.ext.m0}, {"m1", v.ext.m1}, {"m2", v.ext.m2},
         {"m3", v.ext.m3}}},
       {"records", v.records}};
}

void from_json(const nlohmann::json& j, AuditReport& v) {
  const auto& in = j.at("input");
  v.input = {in.at("a").get<double>(), in.at("b").get<double>(), in.at("mass").get<double>(),
             in.at("c").get<double>(), in.at("k").get<double>()};
  const auto& e = j.at("ext");
  v.ext = {e.at("phi").get<double>(), e.at("m0").get<double>(), e.at("m1").get<double>(),
           e.at("m2").get<double>(), e.at("m3").get<double>()};
  j.at("records").get_to(v.records);
}

}  // namespace sqwell
