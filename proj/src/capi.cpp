// The extern-C surface: opaque handles over the C++ core, with exceptions
// mapped to a thread-local error message.
#include "agcheck/agcheck.h"

#include <cstring>
#include <string>

#include "assume.hpp"
#include "mcheck.hpp"

using namespace agc;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs `fn`, converting any thrown error into a last-error message.
// Returns the fallback value on failure.
template <typename T, typename Fn>
T guarded(T fallback, Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const AmlError& e) {
    set_error(e.what());
  } catch (const PerrError& e) {
    set_error(e.what());
  } catch (const InfoError& e) {
    set_error(e.what());
  } catch (const StateCapExceeded& e) {
    set_error(e.what());
  } catch (const std::exception& e) {
    set_error(e.what());
  }
  return fallback;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

AssumeConfig to_config(const agc_options* opt) {
  AssumeConfig c;
  if (!opt) return c;
  if (opt->state_cap > 0) c.state_cap = opt->state_cap;
  if (opt->infm_capacity > 0) c.infm_capacity = opt->infm_capacity;
  c.trace_pipeline = opt->trace_pipeline != 0;
  if (opt->trace_dir) c.trace_dir = opt->trace_dir;
  return c;
}

}  // namespace

struct agc_model {
  Model model;
};
struct agc_perr {
  ErrDfa dfa;
};
struct agc_info {
  InfoSpec spec;
};
struct agc_lts {
  Lts lts;
};
struct agc_assumption {
  AssumptionOutcome outcome;
};

extern "C" {

const char* agc_last_error(void) { return g_last_error.c_str(); }

void agc_string_free(char* s) { delete[] s; }

/* --- models --------------------------------------------------------------- */

agc_model* agc_model_parse(const char* source) {
  return guarded<agc_model*>(nullptr, [&] {
    if (!source) throw std::runtime_error("source is NULL");
    return new agc_model{parse_model(source)};
  });
}

void agc_model_free(agc_model* m) { delete m; }

int agc_model_check(const agc_model* m, int allow_unknown, char** diagnostics) {
  return guarded<int>(-1, [&]() -> int {
    if (!m) throw std::runtime_error("model is NULL");
    std::string allow;
    if (allow_unknown) {
      auto unknown = unknown_receivers(m->model);
      if (unknown.size() > 1)
        throw std::runtime_error("more than one undeclared receiver");
      if (!unknown.empty()) allow = unknown[0];
    }
    auto diags = check_wellformed(m->model, allow);
    if (diagnostics) *diagnostics = dup_string(format_diagnostics(diags));
    return diags.empty() ? 0 : 1;
  });
}

char* agc_model_pretty(const agc_model* m) {
  return guarded<char*>(nullptr, [&] {
    if (!m) throw std::runtime_error("model is NULL");
    return dup_string(pretty_print(m->model));
  });
}

/* --- properties and interface specs --------------------------------------- */

agc_perr* agc_perr_parse(const char* text) {
  return guarded<agc_perr*>(nullptr, [&] {
    if (!text) throw std::runtime_error("text is NULL");
    return new agc_perr{parse_perr(text)};
  });
}

void agc_perr_free(agc_perr* p) { delete p; }

agc_info* agc_info_parse(const char* text, const agc_model* open_model) {
  return guarded<agc_info*>(nullptr, [&] {
    if (!text || !open_model) throw std::runtime_error("argument is NULL");
    return new agc_info{parse_info(text, open_model->model)};
  });
}

void agc_info_free(agc_info* i) { delete i; }

char* agc_info_warnings(const agc_info* i) {
  return guarded<char*>(nullptr, [&] {
    if (!i) throw std::runtime_error("info is NULL");
    std::string out;
    for (const auto& w : i->spec.warnings) out += w + "\n";
    return dup_string(out);
  });
}

/* --- transition systems ---------------------------------------------------- */

agc_lts* agc_lts_explore(const agc_model* m, const agc_options* opt) {
  return guarded<agc_lts*>(nullptr, [&] {
    if (!m) throw std::runtime_error("model is NULL");
    return new agc_lts{explore(m->model, to_config(opt).state_cap)};
  });
}

agc_lts* agc_lts_compose(const agc_model* m, const agc_perr* p,
                         const agc_options* opt) {
  return guarded<agc_lts*>(nullptr, [&] {
    if (!m || !p) throw std::runtime_error("argument is NULL");
    return new agc_lts{
        compose_property_lts(m->model, p->dfa, to_config(opt).state_cap)};
  });
}

agc_lts* agc_lts_read_aut(const char* path) {
  return guarded<agc_lts*>(nullptr, [&] {
    if (!path) throw std::runtime_error("path is NULL");
    return new agc_lts{read_aut(path)};
  });
}

void agc_lts_free(agc_lts* l) { delete l; }

long agc_lts_num_states(const agc_lts* l) {
  return guarded<long>(-1, [&]() -> long {
    if (!l) throw std::runtime_error("lts is NULL");
    return static_cast<long>(l->lts.num_states());
  });
}

long agc_lts_num_transitions(const agc_lts* l) {
  return guarded<long>(-1, [&]() -> long {
    if (!l) throw std::runtime_error("lts is NULL");
    return static_cast<long>(l->lts.num_transitions());
  });
}

int agc_lts_write_aut(const agc_lts* l, const char* path) {
  return guarded<int>(-1, [&]() -> int {
    if (!l || !path) throw std::runtime_error("argument is NULL");
    write_aut(l->lts, path);
    return 0;
  });
}

int agc_lts_write_dot(const agc_lts* l, const char* path) {
  return guarded<int>(-1, [&]() -> int {
    if (!l || !path) throw std::runtime_error("argument is NULL");
    write_dot(l->lts, path);
    return 0;
  });
}

/* --- assumption generation -------------------------------------------------- */

agc_assumption* agc_assume(const agc_model* open_model, const agc_info* info,
                           const agc_perr* perr, const agc_model* infm_override,
                           const agc_options* opt) {
  return guarded<agc_assumption*>(nullptr, [&] {
    if (!open_model || !info || !perr)
      throw std::runtime_error("argument is NULL");
    std::optional<ActorDef> override_actor;
    if (infm_override) {
      if (infm_override->model.actors.empty())
        throw std::runtime_error("interface override has no actors");
      override_actor = infm_override->model.actors.front();
    }
    return new agc_assumption{generate_assumption(
        open_model->model, info->spec, perr->dfa, override_actor,
        to_config(opt))};
  });
}

void agc_assumption_free(agc_assumption* a) { delete a; }

int agc_assumption_kind(const agc_assumption* a) {
  return guarded<int>(-1, [&]() -> int {
    if (!a) throw std::runtime_error("assumption is NULL");
    switch (a->outcome.kind) {
      case AssumptionOutcome::Kind::AlwaysHolds:
        return AGC_ASSUME_ALWAYS_HOLDS;
      case AssumptionOutcome::Kind::NeverHolds:
        return AGC_ASSUME_NEVER_HOLDS;
      case AssumptionOutcome::Kind::Assumption:
        return AGC_ASSUME_ASSUMPTION;
    }
    return -1;
  });
}

long agc_assumption_num_states(const agc_assumption* a) {
  return guarded<long>(-1, [&]() -> long {
    if (!a) throw std::runtime_error("assumption is NULL");
    return static_cast<long>(a->outcome.ta.num_states());
  });
}

long agc_assumption_num_transitions(const agc_assumption* a) {
  return guarded<long>(-1, [&]() -> long {
    if (!a) throw std::runtime_error("assumption is NULL");
    return static_cast<long>(a->outcome.ta.num_transitions());
  });
}

int agc_assumption_write(const agc_assumption* a, const char* path) {
  return guarded<int>(-1, [&]() -> int {
    if (!a || !path) throw std::runtime_error("argument is NULL");
    if (a->outcome.kind != AssumptionOutcome::Kind::Assumption)
      throw std::runtime_error("no assumption automaton to write");
    write_aut_with_alphabet(a->outcome.ta, path, a->outcome.alphabet);
    return 0;
  });
}

agc_assumption* agc_assumption_load(const char* aut_path) {
  return guarded<agc_assumption*>(nullptr, [&] {
    if (!aut_path) throw std::runtime_error("path is NULL");
    AssumptionOutcome out;
    out.kind = AssumptionOutcome::Kind::Assumption;
    out.ta = read_aut(aut_path);
    out.alphabet = read_meta_alphabet(aut_path);
    if (out.alphabet.empty())
      throw std::runtime_error("missing alphabet metadata for " +
                               std::string(aut_path));
    return new agc_assumption{std::move(out)};
  });
}

/* --- component checking ------------------------------------------------------ */

int agc_check(const agc_model* component_model, const agc_model* open_model,
              const agc_info* info, const agc_assumption* assumption,
              const agc_options* opt, char** detail) {
  return guarded<int>(-1, [&]() -> int {
    if (!component_model || !open_model || !info || !assumption)
      throw std::runtime_error("argument is NULL");
    if (component_model->model.actors.empty())
      throw std::runtime_error("component model has no actors");
    ComponentVerdict v = check_component(
        component_model->model.actors.front(), open_model->model, info->spec,
        assumption->outcome, to_config(opt).state_cap);
    switch (v.kind) {
      case ComponentVerdict::Kind::Accepted:
        if (detail) *detail = dup_string("");
        return AGC_CHECK_ACCEPTED;
      case ComponentVerdict::Kind::RejectedNonCompliant:
        if (detail) *detail = dup_string(v.violation.text());
        return AGC_CHECK_REJECTED_NONCOMPLIANT;
      case ComponentVerdict::Kind::RejectedTraceEscape:
        if (detail) *detail = dup_string(format_trace(v.counterexample));
        return AGC_CHECK_REJECTED_TRACE_ESCAPE;
    }
    return -1;
  });
}

int agc_verify(const agc_model* closed_model, const agc_perr* perr,
               const agc_options* opt, char** witness) {
  return guarded<int>(-1, [&]() -> int {
    if (!closed_model || !perr) throw std::runtime_error("argument is NULL");
    VerifyResult r =
        verify_monolithic(closed_model->model, perr->dfa, to_config(opt).state_cap);
    if (r.holds) return 0;
    if (witness) *witness = dup_string(format_trace(r.witness));
    return 1;
  });
}

} /* extern "C" */
