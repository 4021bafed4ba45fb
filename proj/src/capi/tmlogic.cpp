#include "tmlogic/tmlogic.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/error.hpp"
#include "driver/driver.hpp"
#include "logic/parser.hpp"

struct tml_session {
  tmlogic::driver::Session impl;
  explicit tml_session(tmlogic::driver::Config c) : impl(c) {}
};

struct tml_automaton {
  tmlogic::automata::Automaton impl;
};

struct tml_linrep {
  tmlogic::linrep::LinearRepresentation impl;
};

namespace {

using namespace tmlogic;

thread_local std::string last_error;

tml_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return TML_ERR_INVALID_ARGUMENT;
    case ErrorCode::OutOfRange: return TML_ERR_OUT_OF_RANGE;
    case ErrorCode::ResourceExhausted: return TML_ERR_RESOURCE_EXHAUSTED;
    case ErrorCode::Parse: return TML_ERR_PARSE;
    case ErrorCode::UnknownPredicate: return TML_ERR_UNKNOWN_PREDICATE;
    case ErrorCode::Rebinding: return TML_ERR_REBINDING;
    case ErrorCode::ArityMismatch: return TML_ERR_ARITY_MISMATCH;
    case ErrorCode::UnboundVariable: return TML_ERR_UNBOUND_VARIABLE;
    case ErrorCode::UnknownTrack: return TML_ERR_UNKNOWN_TRACK;
    case ErrorCode::TrackMismatch: return TML_ERR_TRACK_MISMATCH;
    case ErrorCode::NotDeterministic: return TML_ERR_NOT_DETERMINISTIC;
    case ErrorCode::StateCapExceeded: return TML_ERR_STATE_CAP_EXCEEDED;
    case ErrorCode::Noncountable: return TML_ERR_NONCOUNTABLE;
    case ErrorCode::Insufficient: return TML_ERR_INSUFFICIENT;
    case ErrorCode::Ambiguous: return TML_ERR_AMBIGUOUS;
    case ErrorCode::Disagreement: return TML_ERR_DISAGREEMENT;
    case ErrorCode::Io: return TML_ERR_IO;
    case ErrorCode::Internal: return TML_ERR_INTERNAL;
  }
  return TML_ERR_INTERNAL;
}

template <class F>
tml_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return TML_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TML_ERR_RESOURCE_EXHAUSTED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TML_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

automata::DigitOrder order_of(tml_digit_order o) {
  if (o != TML_LSD && o != TML_MSD) fail(ErrorCode::InvalidArgument, "unknown digit order");
  return o == TML_MSD ? automata::DigitOrder::Msd : automata::DigitOrder::Lsd;
}

tml_pattern pattern_of(tm::PatternClass c) { return static_cast<tml_pattern>(static_cast<int>(c)); }

tml_linrep* wrap(linrep::LinearRepresentation r) { return new tml_linrep{std::move(r)}; }

automata::Automaton compile_with_prelude(tml_session* s, const char* prelude, const char* formula) {
  require(s, "session");
  require(formula, "formula");
  logic::ProofReport env;
  if (prelude) env = s->impl.run(prelude);
  const auto f = logic::parse_formula(formula);
  const auto free = logic::free_variables(*f);
  logic::Compiler compiler(env.env, s->impl.compile_options());
  return automata::align_tracks(compiler.compile(*f), {free.begin(), free.end()});
}

}  // namespace

extern "C" {

const char* tml_version(void) { return "1.0.0"; }

const char* tml_status_name(tml_status status) {
  switch (status) {
    case TML_OK: return "ok";
    case TML_ERR_INVALID_ARGUMENT: return error_code_name(ErrorCode::InvalidArgument);
    case TML_ERR_OUT_OF_RANGE: return error_code_name(ErrorCode::OutOfRange);
    case TML_ERR_RESOURCE_EXHAUSTED: return error_code_name(ErrorCode::ResourceExhausted);
    case TML_ERR_PARSE: return error_code_name(ErrorCode::Parse);
    case TML_ERR_UNKNOWN_PREDICATE: return error_code_name(ErrorCode::UnknownPredicate);
    case TML_ERR_REBINDING: return error_code_name(ErrorCode::Rebinding);
    case TML_ERR_ARITY_MISMATCH: return error_code_name(ErrorCode::ArityMismatch);
    case TML_ERR_UNBOUND_VARIABLE: return error_code_name(ErrorCode::UnboundVariable);
    case TML_ERR_UNKNOWN_TRACK: return error_code_name(ErrorCode::UnknownTrack);
    case TML_ERR_TRACK_MISMATCH: return error_code_name(ErrorCode::TrackMismatch);
    case TML_ERR_NOT_DETERMINISTIC: return error_code_name(ErrorCode::NotDeterministic);
    case TML_ERR_STATE_CAP_EXCEEDED: return error_code_name(ErrorCode::StateCapExceeded);
    case TML_ERR_NONCOUNTABLE: return error_code_name(ErrorCode::Noncountable);
    case TML_ERR_INSUFFICIENT: return error_code_name(ErrorCode::Insufficient);
    case TML_ERR_AMBIGUOUS: return error_code_name(ErrorCode::Ambiguous);
    case TML_ERR_DISAGREEMENT: return error_code_name(ErrorCode::Disagreement);
    case TML_ERR_IO: return error_code_name(ErrorCode::Io);
    case TML_ERR_INTERNAL: return error_code_name(ErrorCode::Internal);
  }
  return "unknown";
}

const char* tml_last_error(void) { return last_error.c_str(); }

void tml_string_free(char* s) { std::free(s); }

const char* tml_pattern_name(tml_pattern p) {
  if (p < TML_TM_AS_A || p > TML_INSUFFICIENT) return "unknown";
  return tm::pattern_name(static_cast<tm::PatternClass>(p));
}

void tml_config_default(tml_config* config) {
  if (!config) return;
  const driver::Config d;
  config->window = d.window;
  config->min_occurrences = d.min_occurrences;
  config->state_cap = d.state_cap;
  config->corrupt_tm_dfao = 0;
}

tml_status tml_session_create(const tml_config* config, tml_session** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    driver::Config c;
    if (config) {
      c.window = config->window;
      c.min_occurrences = config->min_occurrences;
      c.state_cap = config->state_cap;
      c.corrupt_tm_dfao = config->corrupt_tm_dfao != 0;
    }
    *out = new tml_session(c);
  });
}

void tml_session_destroy(tml_session* session) { delete session; }

tml_status tml_embedded_file(const char* name, char** out_text) {
  return guarded([&] {
    require(name, "name");
    require(out_text, "out_text");
    *out_text = copy_string(std::string(driver::embedded_file(name)));
  });
}

tml_status tml_prove(tml_session* session, const char* script, const char* expectations, tml_output format,
                     int* out_ok, char** out_report) {
  return guarded([&] {
    require(session, "session");
    require(script, "script");
    const auto r = driver::prove(session->impl, script, expectations ? expectations : "");
    if (out_ok) *out_ok = r.pass;
    emit(out_report, format == TML_MACHINE ? driver::format_key_values(driver::prove_key_values(r))
                                           : driver::format_prove(r));
  });
}

tml_status tml_classify(tml_session* session, uint64_t i, uint64_t n, tml_output format, int* out_ok,
                        char** out_report) {
  return guarded([&] {
    require(session, "session");
    const auto r = driver::classify(session->impl, i, n);
    if (out_ok) *out_ok = r.ok();
    emit(out_report, format == TML_MACHINE ? driver::format_key_values(driver::classify_key_values(r))
                                           : driver::format_classify(r));
  });
}

tml_status tml_count(tml_session* session, uint64_t n_max, tml_output format, int* out_ok, char** out_report) {
  return guarded([&] {
    require(session, "session");
    const auto rows = driver::count_table(session->impl, n_max);
    if (out_ok) {
      *out_ok = std::none_of(rows.begin(), rows.end(), [](const auto& r) { return r.flagged; });
    }
    emit(out_report, format == TML_MACHINE ? driver::format_key_values(driver::count_key_values(rows))
                                           : driver::format_count(rows));
  });
}

tml_status tml_selftest(tml_session* session, int* out_ok, char** out_report) {
  return guarded([&] {
    require(session, "session");
    const auto r = driver::selftest(session->impl);
    if (out_ok) *out_ok = r.pass;
    emit(out_report, driver::format_selftest(r));
  });
}

tml_status tml_pattern_automaton(tml_session* session, const char* name, tml_automaton** out) {
  return guarded([&] {
    require(session, "session");
    require(name, "name");
    require(out, "out");
    *out = new tml_automaton{session->impl.pattern(name)};
  });
}

tml_status tml_classify_oracle(tml_session* session, uint64_t i, uint64_t n, tml_pattern* out) {
  return guarded([&] {
    require(session, "session");
    require(out, "out");
    const auto occ = tm::scan_occurrences(session->impl.prefix(), {i, n});
    *out = pattern_of(tm::classify_pattern(occ, session->impl.config().min_occurrences));
  });
}

tml_status tml_classify_automaton(tml_session* session, uint64_t i, uint64_t n, tml_pattern* out) {
  return guarded([&] {
    require(session, "session");
    require(out, "out");
    *out = pattern_of(driver::automaton_class(session->impl, i, n));
  });
}

tml_status tml_compile(tml_session* session, const char* prelude, const char* formula, tml_automaton** out) {
  return guarded([&] {
    require(out, "out");
    *out = new tml_automaton{compile_with_prelude(session, prelude, formula)};
  });
}

tml_status tml_decide(tml_session* session, const char* prelude, const char* sentence, int* out_truth) {
  return guarded([&] {
    require(out_truth, "out_truth");
    require(session, "session");
    require(sentence, "sentence");
    logic::ProofReport env;
    if (prelude) env = session->impl.run(prelude);
    *out_truth = logic::decide(*logic::parse_formula(sentence), env.env, session->impl.compile_options());
  });
}

void tml_automaton_destroy(tml_automaton* a) { delete a; }

tml_status tml_automaton_state_count(const tml_automaton* a, uint64_t* out) {
  return guarded([&] {
    require(a, "automaton");
    require(out, "out");
    *out = a->impl.state_count();
  });
}

tml_status tml_automaton_arity(const tml_automaton* a, uint64_t* out) {
  return guarded([&] {
    require(a, "automaton");
    require(out, "out");
    *out = a->impl.arity();
  });
}

tml_status tml_automaton_track(const tml_automaton* a, uint64_t index, char** out_name) {
  return guarded([&] {
    require(a, "automaton");
    require(out_name, "out_name");
    if (index >= a->impl.arity()) fail(ErrorCode::OutOfRange, "track index out of range");
    *out_name = copy_string(a->impl.tracks()[index]);
  });
}

tml_status tml_automaton_accepts(const tml_automaton* a, const uint64_t* values, size_t count, int* out) {
  return guarded([&] {
    require(a, "automaton");
    require(out, "out");
    if (count && !values) fail(ErrorCode::InvalidArgument, "values must not be NULL");
    *out = automata::accepts(a->impl, std::span<const std::uint64_t>(values, count));
  });
}

tml_status tml_automaton_dot(const tml_automaton* a, tml_digit_order order, char** out_dot) {
  return guarded([&] {
    require(a, "automaton");
    require(out_dot, "out_dot");
    *out_dot = copy_string(automata::export_dot(a->impl, order_of(order)));
  });
}

tml_status tml_automaton_text(const tml_automaton* a, tml_digit_order order, char** out_text) {
  return guarded([&] {
    require(a, "automaton");
    require(out_text, "out_text");
    const auto o = order_of(order);
    *out_text = copy_string(automata::to_text(o == automata::DigitOrder::Msd ? automata::reverse(a->impl)
                                                                              : a->impl));
  });
}

tml_status tml_counting_representation(tml_session* session, const char* name, tml_linrep** out) {
  return guarded([&] {
    require(session, "session");
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    if (n != "mab" && n != "mabba") fail(ErrorCode::InvalidArgument, "expected 'mab' or 'mabba'");
    *out = wrap(session->impl.counting_report().find(n)->representation.value());
  });
}

tml_status tml_builtin_representation(const char* name, tml_linrep** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const std::string n = name;
    if (n == "a006165") *out = wrap(linrep::from_recurrence_a006165());
    else if (n == "a060973") *out = wrap(linrep::from_recurrence_a060973());
    else if (n == "f_shifted") *out = wrap(linrep::printed_f_shifted());
    else if (n == "g_shifted") *out = wrap(linrep::printed_g_shifted());
    else fail(ErrorCode::InvalidArgument, "unknown representation '" + n + "'");
  });
}

tml_status tml_linrep_parse(const char* text, tml_linrep** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(linrep::from_text(text));
  });
}

void tml_linrep_destroy(tml_linrep* r) { delete r; }

tml_status tml_linrep_text(const tml_linrep* r, char** out_text) {
  return guarded([&] {
    require(r, "representation");
    require(out_text, "out_text");
    *out_text = copy_string(linrep::to_text(r->impl));
  });
}

tml_status tml_linrep_dim(const tml_linrep* r, uint64_t* out) {
  return guarded([&] {
    require(r, "representation");
    require(out, "out");
    *out = r->impl.dim;
  });
}

tml_status tml_linrep_order(const tml_linrep* r, tml_digit_order* out) {
  return guarded([&] {
    require(r, "representation");
    require(out, "out");
    *out = r->impl.order == automata::DigitOrder::Msd ? TML_MSD : TML_LSD;
  });
}

tml_status tml_linrep_evaluate(const tml_linrep* r, uint64_t n, char** out_value) {
  return guarded([&] {
    require(r, "representation");
    require(out_value, "out_value");
    *out_value = copy_string(linrep::to_string(linrep::evaluate(r->impl, n)));
  });
}

tml_status tml_linrep_scale(const tml_linrep* r, int64_t numerator, int64_t denominator, tml_linrep** out) {
  return guarded([&] {
    require(r, "representation");
    require(out, "out");
    if (denominator == 0) fail(ErrorCode::InvalidArgument, "denominator must be nonzero");
    linrep::Rational c(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
    c.canonicalize();
    *out = wrap(linrep::scale(r->impl, c));
  });
}

tml_status tml_linrep_subtract(const tml_linrep* a, const tml_linrep* b, tml_linrep** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = wrap(linrep::subtract(a->impl, a->impl.order == b->impl.order ? b->impl : linrep::reverse(b->impl)));
  });
}

tml_status tml_linrep_reverse(const tml_linrep* r, tml_linrep** out) {
  return guarded([&] {
    require(r, "representation");
    require(out, "out");
    *out = wrap(linrep::reverse(r->impl));
  });
}

tml_status tml_linrep_minimize(const tml_linrep* r, tml_linrep** out) {
  return guarded([&] {
    require(r, "representation");
    require(out, "out");
    *out = wrap(linrep::minimize_rep(r->impl));
  });
}

tml_status tml_linrep_equal(const tml_linrep* a, const tml_linrep* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = linrep::equal_reps(a->impl, b->impl);
  });
}

}  // extern "C"
