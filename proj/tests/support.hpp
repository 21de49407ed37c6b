#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rvaft/compiler.hpp"
#include "rvaft/engine.hpp"
#include "rvaft/format.hpp"
#include "rvaft/term.hpp"

#ifndef RVAFT_DATA_DIR
#error "RVAFT_DATA_DIR must point at the data/ directory"
#endif

namespace testing {

using rvaft::term::Env;
using rvaft::term::Event;
using rvaft::term::EventAnnotation;
using rvaft::term::Guard;
using rvaft::term::Matcher;
using rvaft::term::Term;
using rvaft::term::Value;
using rvaft::engine::Verdict;

inline std::string data_path(const std::string& relative) {
  return std::string(RVAFT_DATA_DIR) + "/" + relative;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline rvaft::model::RvaftTree case_study_tree() {
  return rvaft::format::load_tree(data_path("trees/remote_inspection.rvaft.json"));
}

inline std::vector<Event> fixture(const std::string& name) {
  return rvaft::format::load_trace(data_path("traces/" + name + ".trace.jsonl"));
}

inline Guard guard(const std::string& text) { return rvaft::format::parse_guard(text); }

/// Atom on `topic` with literal and bind entries given as (key, value)
/// pairs; a value starting with an uppercase letter or '_' binds.
inline Term atom(const std::string& name, const std::string& topic,
                 std::vector<std::pair<std::string, std::string>> fields = {},
                 const std::string& guard_text = "") {
  EventAnnotation a;
  a.name = name;
  a.pattern.emplace_back("topic", Matcher::literal(Value(topic)));
  for (auto& [key, value] : fields) {
    bool bind = !value.empty() && (std::isupper(static_cast<unsigned char>(value[0])) || value[0] == '_');
    a.pattern.emplace_back(key, bind ? Matcher::bind(value) : Matcher::literal(Value(value)));
  }
  if (!guard_text.empty()) a.guard = guard(guard_text);
  return Term::atom(std::move(a));
}

inline Event event(const std::string& topic) { return Event{{"topic", topic}}; }

inline std::string verdicts_string(const std::vector<Verdict>& verdicts) {
  std::string out;
  for (auto v : verdicts) out += rvaft::engine::symbol(v);
  return out;
}

// ---------------------------------------------------------------------------
// Test-local language oracles over distinct single-event atoms. Index
// sequences refer to positions in an events vector where event i is the
// only event matching atom i.

using Word = std::vector<std::size_t>;
using Language = std::set<Word>;

inline Language all_orderings(std::vector<std::size_t> symbols) {
  Language out;
  std::sort(symbols.begin(), symbols.end());
  do out.insert(symbols);
  while (std::next_permutation(symbols.begin(), symbols.end()));
  return out;
}

/// Every word made of at least k distinct symbols from `symbols`, where the
/// first k are any k-permutation and nothing follows (the unrolled k-of-n
/// gate stops after k observations).
inline Language k_permutations(const std::vector<std::size_t>& symbols, std::size_t k) {
  Language out;
  std::function<void(Word&, std::vector<bool>&)> rec = [&](Word& w, std::vector<bool>& used) {
    if (w.size() == k) {
      out.insert(w);
      return;
    }
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      w.push_back(symbols[i]);
      rec(w, used);
      w.pop_back();
      used[i] = false;
    }
  };
  Word w;
  std::vector<bool> used(symbols.size(), false);
  rec(w, used);
  return out;
}

// ---------------------------------------------------------------------------
// Random (term, trace) instances for engine/oracle agreement.

struct RandomInstance {
  Term term = Term::empty();
  std::vector<Event> trace;
};

class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  RandomInstance next() {
    alphabet_ = 1 + pick(4);
    variables_ = 0;
    RandomInstance instance;
    instance.term = term(3);
    std::size_t length = pick(9);
    for (std::size_t i = 0; i < length; ++i) instance.trace.push_back(random_event());
    return instance;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::string topic() { return "t" + std::to_string(pick(alphabet_)); }

  Event random_event() {
    return Event{{"topic", topic()}, {"v", static_cast<int>(pick(3))}};
  }

  Term leaf() {
    std::size_t roll = pick(20);
    if (roll == 0) return Term::epsilon();
    if (roll == 1) return Term::empty();
    if (roll <= 3 && variables_ > 0) {
      // Check over an earlier variable.
      std::string x = "X" + std::to_string(pick(variables_));
      return Term::check(guard(x + (pick(2) ? " >= 1" : " == 0")));
    }
    EventAnnotation a;
    a.name = "e" + std::to_string(pick(100));
    a.pattern.emplace_back("topic", Matcher::literal(Value(topic())));
    switch (pick(4)) {
      case 0:
        break;
      case 1:
        a.pattern.emplace_back("v", Matcher::literal(Value(static_cast<int>(pick(3)))));
        break;
      default: {
        std::string x = variables_ < 3 && (variables_ == 0 || pick(2))
                            ? "X" + std::to_string(variables_++)
                            : "X" + std::to_string(pick(variables_));
        a.pattern.emplace_back("v", Matcher::bind(x));
        switch (pick(4)) {
          case 1:
            a.guard = guard(x + " >= 1");
            break;
          case 2: {
            std::string y = "X" + std::to_string(pick(variables_));
            if (y != x) a.guard = guard(x + " != " + y);
            break;
          }
          case 3:
            a.guard = guard(x + " <= 1");
            a.on_guard_fail = pick(2) ? rvaft::term::GuardPolicy::kSkip
                                      : rvaft::term::GuardPolicy::kViolate;
            break;
          default:
            break;
        }
        break;
      }
    }
    return Term::atom(std::move(a));
  }

  Term term(int depth) {
    if (depth == 0 || pick(3) == 0) return leaf();
    switch (pick(3)) {
      case 0: return Term::seq(term(depth - 1), term(depth - 1));
      case 1: return Term::either(term(depth - 1), term(depth - 1));
      default: return Term::shuffle(term(depth - 1), term(depth - 1));
    }
  }

  std::mt19937_64 rng_;
  std::size_t alphabet_ = 1;
  std::size_t variables_ = 0;
};

/// The engine's verdicts with topic filtering disabled (raw term stepping).
inline std::vector<Verdict> engine_verdicts(const Term& t, const std::vector<Event>& trace,
                                            const rvaft::engine::StepOptions& options = {}) {
  auto state = rvaft::engine::init(t);
  std::vector<Verdict> out;
  for (const auto& e : trace) {
    rvaft::engine::advance(state, e, options, nullptr);
    out.push_back(state.verdict);
  }
  return out;
}

}  // namespace testing
