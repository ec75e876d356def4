// Command-line front end for the agcheck library. Uses only the public C
// API (agcheck/agcheck.h).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "agcheck/agcheck.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CliError{"cannot open " + path};
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  agc_string_free(s);
  return out;
}

// Deleters so handles are released on every exit path.
using ModelPtr = std::unique_ptr<agc_model, decltype(&agc_model_free)>;
using PerrPtr = std::unique_ptr<agc_perr, decltype(&agc_perr_free)>;
using InfoPtr = std::unique_ptr<agc_info, decltype(&agc_info_free)>;
using LtsPtr = std::unique_ptr<agc_lts, decltype(&agc_lts_free)>;
using AssumptionPtr =
    std::unique_ptr<agc_assumption, decltype(&agc_assumption_free)>;

ModelPtr load_model(const std::string& path, bool allow_unknown) {
  ModelPtr m(agc_model_parse(read_file(path).c_str()), agc_model_free);
  if (!m) throw CliError{path + ": " + agc_last_error()};
  char* diags = nullptr;
  int rc = agc_model_check(m.get(), allow_unknown ? 1 : 0, &diags);
  if (rc < 0) throw CliError{path + ": " + agc_last_error()};
  std::string text = take_string(diags);
  if (rc != 0) throw CliError{path + ": ill-formed model\n" + text};
  return m;
}

// Component and interface-actor files legitimately send to several actors
// declared elsewhere (the open system), so they are loaded without the
// unknown-receiver check; composition reports genuinely unknown actors.
ModelPtr load_model_fragment(const std::string& path) {
  ModelPtr m(agc_model_parse(read_file(path).c_str()), agc_model_free);
  if (!m) throw CliError{path + ": " + agc_last_error()};
  return m;
}

PerrPtr load_perr(const std::string& path) {
  PerrPtr p(agc_perr_parse(read_file(path).c_str()), agc_perr_free);
  if (!p) throw CliError{path + ": " + agc_last_error()};
  return p;
}

InfoPtr load_info(const std::string& path, const agc_model* open_model) {
  InfoPtr i(agc_info_parse(read_file(path).c_str(), open_model),
            agc_info_free);
  if (!i) throw CliError{path + ": " + agc_last_error()};
  std::string warnings = take_string(agc_info_warnings(i.get()));
  if (!warnings.empty()) std::cerr << warnings;
  return i;
}

agc_options make_options(size_t state_cap, long infm_capacity,
                         bool trace_pipeline, const std::string& trace_dir) {
  agc_options opt{};
  opt.state_cap = state_cap;
  opt.infm_capacity = infm_capacity;
  opt.trace_pipeline = trace_pipeline ? 1 : 0;
  opt.trace_dir = trace_dir.empty() ? nullptr : trace_dir.c_str();
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assume-guarantee verification of actor systems with one "
               "unspecified component"};
  app.require_subcommand(1);

  size_t state_cap = 0;
  if (const char* env = std::getenv("AGCHECK_STATE_CAP"))
    state_cap = static_cast<size_t>(std::strtoull(env, nullptr, 10));
  app.add_option("--state-cap", state_cap,
                 "Maximum number of explored states");

  // parse
  std::string parse_path;
  bool parse_open = false;
  auto* cmd_parse = app.add_subcommand("parse", "Parse and check a model");
  cmd_parse->add_option("model", parse_path, "AML model file")->required();
  cmd_parse->add_flag("--open", parse_open,
                      "Allow one undeclared receiver (open system)");

  // assume
  std::string as_open, as_info, as_perr, as_infm, as_out = "assumption.aut";
  std::string as_trace_dir;
  long as_infm_cap = 0;
  bool as_trace = false;
  auto* cmd_assume = app.add_subcommand("assume", "Generate the assumption");
  cmd_assume->add_option("--open", as_open, "Open-system model")->required();
  cmd_assume->add_option("--info", as_info, "Interface spec")->required();
  cmd_assume->add_option("--perr", as_perr, "Safety error DFA")->required();
  cmd_assume->add_option("--infm", as_infm, "Interface-actor override model");
  cmd_assume->add_option("--out", as_out, "Assumption output (.aut)");
  cmd_assume->add_option("--infm-capacity", as_infm_cap,
                         "Mailbox capacity of the synthesized interface actor");
  cmd_assume->add_flag("--trace-pipeline", as_trace,
                       "Record intermediate LTSs");
  cmd_assume->add_option("--trace-dir", as_trace_dir,
                         "Directory for recorded intermediates");

  // check
  std::string ck_component, ck_open, ck_info, ck_assumption;
  auto* cmd_check =
      app.add_subcommand("check", "Check a component against an assumption");
  cmd_check->add_option("--component", ck_component, "Candidate component")
      ->required();
  cmd_check->add_option("--open", ck_open, "Open-system model")->required();
  cmd_check->add_option("--info", ck_info, "Interface spec")->required();
  cmd_check->add_option("--assumption", ck_assumption, "Assumption .aut")
      ->required();

  // verify
  std::string vf_model, vf_perr;
  auto* cmd_verify =
      app.add_subcommand("verify", "Verify a closed model monolithically");
  cmd_verify->add_option("--model", vf_model, "Closed model")->required();
  cmd_verify->add_option("--perr", vf_perr, "Safety error DFA")->required();

  // lts
  std::string lt_model, lt_out, lt_dot;
  bool lt_open = false;
  auto* cmd_lts = app.add_subcommand("lts", "Export the coarse state space");
  cmd_lts->add_option("model", lt_model, "AML model file")->required();
  cmd_lts->add_option("--out", lt_out, "Write .aut here");
  cmd_lts->add_option("--dot", lt_dot, "Write DOT here");
  cmd_lts->add_flag("--open", lt_open,
                    "Allow one undeclared receiver (open system)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_parse->parsed()) {
      ModelPtr m = load_model(parse_path, parse_open);
      std::string pretty = take_string(agc_model_pretty(m.get()));
      std::cout << pretty;
      return kExitOk;
    }

    if (cmd_assume->parsed()) {
      ModelPtr open_model = load_model(as_open, true);
      InfoPtr info = load_info(as_info, open_model.get());
      PerrPtr perr = load_perr(as_perr);
      ModelPtr infm(nullptr, agc_model_free);
      if (!as_infm.empty()) infm = load_model_fragment(as_infm);
      agc_options opt =
          make_options(state_cap, as_infm_cap, as_trace, as_trace_dir);
      AssumptionPtr a(agc_assume(open_model.get(), info.get(), perr.get(),
                                 infm.get(), &opt),
                      agc_assumption_free);
      if (!a) throw CliError{agc_last_error()};
      switch (agc_assumption_kind(a.get())) {
        case AGC_ASSUME_ALWAYS_HOLDS:
          std::cout << "ALWAYS_HOLDS\n";
          return kExitOk;
        case AGC_ASSUME_NEVER_HOLDS:
          std::cout << "NEVER_HOLDS\n";
          return kExitVerdict;
        default:
          if (agc_assumption_write(a.get(), as_out.c_str()) != 0)
            throw CliError{agc_last_error()};
          std::cout << "ASSUMPTION states=" << agc_assumption_num_states(a.get())
                    << " transitions=" << agc_assumption_num_transitions(a.get())
                    << " out=" << as_out << "\n";
          return kExitOk;
      }
    }

    if (cmd_check->parsed()) {
      ModelPtr open_model = load_model(ck_open, true);
      ModelPtr component = load_model_fragment(ck_component);
      InfoPtr info = load_info(ck_info, open_model.get());
      AssumptionPtr a(agc_assumption_load(ck_assumption.c_str()),
                      agc_assumption_free);
      if (!a) throw CliError{ck_assumption + ": " + agc_last_error()};
      agc_options opt = make_options(state_cap, 0, false, "");
      char* detail = nullptr;
      int rc = agc_check(component.get(), open_model.get(), info.get(), a.get(),
                         &opt, &detail);
      std::string text = take_string(detail);
      if (rc < 0) throw CliError{agc_last_error()};
      if (rc == AGC_CHECK_ACCEPTED) {
        std::cout << "ACCEPTED\n";
        return kExitOk;
      }
      if (rc == AGC_CHECK_REJECTED_NONCOMPLIANT)
        std::cout << "REJECTED non-compliant: " << text << "\n";
      else
        std::cout << "REJECTED trace-escape: " << text << "\n";
      return kExitVerdict;
    }

    if (cmd_verify->parsed()) {
      ModelPtr model = load_model(vf_model, false);
      PerrPtr perr = load_perr(vf_perr);
      agc_options opt = make_options(state_cap, 0, false, "");
      char* witness = nullptr;
      int rc = agc_verify(model.get(), perr.get(), &opt, &witness);
      std::string text = take_string(witness);
      if (rc < 0) throw CliError{agc_last_error()};
      if (rc == 0) {
        std::cout << "HOLDS\n";
        return kExitOk;
      }
      std::cout << "VIOLATED witness: " << text << "\n";
      return kExitVerdict;
    }

    if (cmd_lts->parsed()) {
      ModelPtr m = load_model(lt_model, lt_open);
      agc_options opt = make_options(state_cap, 0, false, "");
      LtsPtr l(agc_lts_explore(m.get(), &opt), agc_lts_free);
      if (!l) throw CliError{agc_last_error()};
      if (!lt_out.empty() && agc_lts_write_aut(l.get(), lt_out.c_str()) != 0)
        throw CliError{agc_last_error()};
      if (!lt_dot.empty() && agc_lts_write_dot(l.get(), lt_dot.c_str()) != 0)
        throw CliError{agc_last_error()};
      std::cout << "LTS states=" << agc_lts_num_states(l.get())
                << " transitions=" << agc_lts_num_transitions(l.get()) << "\n";
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  }
  return kExitError;
}
