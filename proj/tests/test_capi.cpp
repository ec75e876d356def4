// Smoke tests of the shared-library C API, exercised exclusively through the
// public header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "agcheck/agcheck.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct Owned {
  char* s = nullptr;
  ~Owned() { agc_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

agc_model* load_model(const std::string& path) {
  agc_model* m = agc_model_parse(slurp(path).c_str());
  REQUIRE(m != nullptr);
  return m;
}

}  // namespace

TEST_CASE("model parse, check, and pretty-print") {
  agc_model* m = agc_model_parse(
      "actor a(1){ m{ b!x; } } actor b(1){ x{} } main { a!m; }");
  REQUIRE(m != nullptr);
  CHECK(agc_model_check(m, 0, nullptr) == 0);
  Owned pretty{agc_model_pretty(m)};
  CHECK(pretty.str().find("actor a(1)") != std::string::npos);
  // pretty output re-parses
  agc_model* again = agc_model_parse(pretty.s);
  CHECK(again != nullptr);
  agc_model_free(again);
  agc_model_free(m);
}

TEST_CASE("parse failures surface through agc_last_error") {
  CHECK(agc_model_parse("actor a(1){ m{ x = ; } } main {}") == nullptr);
  CHECK(std::strlen(agc_last_error()) > 0);
  agc_model* ok = agc_model_parse("actor a(1){ m{} } main {}");
  REQUIRE(ok != nullptr);
  CHECK(agc_last_error()[0] == '\0');  // cleared by the successful call
  agc_model_free(ok);
}

TEST_CASE("open models need allow_unknown to pass the check") {
  agc_model* open = load_model(FIXTURES_DIR "/mutex/open.aml");
  Owned diag;
  CHECK(agc_model_check(open, 0, &diag.s) == 1);
  CHECK(diag.str().find("mutex") != std::string::npos);
  CHECK(agc_model_check(open, 1, nullptr) == 0);
  agc_model_free(open);
}

TEST_CASE("property and interface parsing") {
  agc_perr* p = agc_perr_parse(slurp(FIXTURES_DIR "/mutex/property.perr").c_str());
  REQUIRE(p != nullptr);
  CHECK(agc_perr_parse("perr\nnonsense\nend\n") == nullptr);
  CHECK(std::strlen(agc_last_error()) > 0);

  agc_model* open = load_model(FIXTURES_DIR "/mutex/open.aml");
  agc_info* info =
      agc_info_parse(slurp(FIXTURES_DIR "/mutex/interface.info").c_str(), open);
  REQUIRE(info != nullptr);
  Owned warn{agc_info_warnings(info)};
  CHECK(warn.str().empty());
  CHECK(agc_info_parse("info\nreqL -> ghost: [x]\nend\n", open) == nullptr);

  agc_info_free(info);
  agc_model_free(open);
  agc_perr_free(p);
}

TEST_CASE("exploration and aut round trip") {
  agc_model* m = load_model(FIXTURES_DIR "/clientserver.aml");
  agc_lts* l = agc_lts_explore(m, nullptr);
  REQUIRE(l != nullptr);
  long n = agc_lts_num_states(l);
  long t = agc_lts_num_transitions(l);
  CHECK(n > 1);
  CHECK(t >= n - 1);

  std::string path = std::string(FIXTURES_DIR) + "/../build/capi-smoke.aut";
  REQUIRE(agc_lts_write_aut(l, path.c_str()) == 0);
  agc_lts* back = agc_lts_read_aut(path.c_str());
  REQUIRE(back != nullptr);
  CHECK(agc_lts_num_states(back) == n);
  CHECK(agc_lts_num_transitions(back) == t);
  agc_lts_free(back);
  std::remove(path.c_str());

  agc_lts_free(l);
  agc_model_free(m);
}

TEST_CASE("assumption generation, persistence, and component checking") {
  agc_model* open = load_model(FIXTURES_DIR "/mutex/open.aml");
  agc_info* info =
      agc_info_parse(slurp(FIXTURES_DIR "/mutex/interface.info").c_str(), open);
  agc_perr* perr =
      agc_perr_parse(slurp(FIXTURES_DIR "/mutex/property.perr").c_str());
  REQUIRE(info != nullptr);
  REQUIRE(perr != nullptr);

  agc_assumption* a = agc_assume(open, info, perr, nullptr, nullptr);
  REQUIRE(a != nullptr);
  CHECK(agc_assumption_kind(a) == AGC_ASSUME_ASSUMPTION);
  CHECK(agc_assumption_num_states(a) == 14);
  CHECK(agc_assumption_num_transitions(a) == 68);

  std::string path = std::string(FIXTURES_DIR) + "/../build/capi-ta.aut";
  REQUIRE(agc_assumption_write(a, path.c_str()) == 0);
  agc_assumption* loaded = agc_assumption_load(path.c_str());
  REQUIRE(loaded != nullptr);
  CHECK(agc_assumption_num_states(loaded) == 14);
  CHECK(agc_assumption_num_transitions(loaded) == 68);

  // accepted component
  agc_model* good = load_model(FIXTURES_DIR "/mutex/component.aml");
  CHECK(agc_check(good, open, info, loaded, nullptr, nullptr) ==
        AGC_CHECK_ACCEPTED);
  agc_model_free(good);

  // rejected component with a detail report
  agc_model* bad = agc_model_parse(
      "actor mutex(3){ reqL{ left!permitL; right!permitR; }"
      " reqR{ right!permitR; } release{} } main {}");
  REQUIRE(bad != nullptr);
  Owned detail;
  CHECK(agc_check(bad, open, info, loaded, nullptr, &detail.s) ==
        AGC_CHECK_REJECTED_NONCOMPLIANT);
  CHECK(!detail.str().empty());
  agc_model_free(bad);

  agc_assumption_free(loaded);
  std::remove(path.c_str());
  std::remove((path + ".meta").c_str());
  agc_assumption_free(a);
  agc_perr_free(perr);
  agc_info_free(info);
  agc_model_free(open);
}

TEST_CASE("monolithic verification verdicts") {
  agc_perr* p = agc_perr_parse(slurp(FIXTURES_DIR "/mutex/property.perr").c_str());
  REQUIRE(p != nullptr);
  agc_model* safe = load_model(FIXTURES_DIR "/mutex/closed.aml");
  CHECK(agc_verify(safe, p, nullptr, nullptr) == 0);
  agc_model_free(safe);
  agc_perr_free(p);

  agc_perr* q =
      agc_perr_parse(slurp(FIXTURES_DIR "/quadricopter/property.perr").c_str());
  REQUIRE(q != nullptr);
  agc_model* unsafe = load_model(FIXTURES_DIR "/quadricopter/closed-multi.aml");
  Owned witness;
  CHECK(agc_verify(unsafe, q, nullptr, &witness.s) == 1);
  CHECK(!witness.str().empty());
  agc_model_free(unsafe);
  agc_perr_free(q);
}
