#include "run_semantics.hpp"

#include <algorithm>

#include "rvaft/error.hpp"

namespace rvaft::term::detail {

IndexedTerm::IndexedTerm(Term term) : term_(std::move(term)) {
  build(term_);
}

int IndexedTerm::build(const Term& term) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{term.kind()});
  nodes_[index].lo = occurrence_count();
  switch (term.kind()) {
    case TermKind::kAtom:
      nodes_[index].occurrence = occurrence_count();
      nodes_[index].atom = &term.annotation();
      atom_nodes_.push_back(index);
      break;
    case TermKind::kCheck:
      nodes_[index].guard = &term.guard();
      break;
    case TermKind::kLet: {
      int body = build(term.body());
      nodes_[index].first = body;
      break;
    }
    case TermKind::kSeq:
    case TermKind::kUnion:
    case TermKind::kShuffle: {
      int first = build(term.left());
      int second = build(term.right());
      nodes_[index].first = first;
      nodes_[index].second = second;
      break;
    }
    default:
      break;
  }
  nodes_[index].hi = occurrence_count();
  return index;
}

bool RunChecker::owns(int node, const Run& run, int item) const {
  const auto& n = term_.node(node);
  const int occ = run[item].occurrence;
  return occ >= n.lo && occ < n.hi;
}

bool RunChecker::split(int node, const Items& items, const Run& run,
                       Items& left, Items& right) const {
  const int first = term_.node(node).first;
  for (int item : items) {
    (owns(first, run, item) ? left : right).push_back(item);
  }
  return true;
}

bool RunChecker::prefix(int node, const Items& items, const Run& run) const {
  const auto& n = term_.node(node);
  switch (n.kind) {
    case TermKind::kEmpty:
      return false;
    case TermKind::kEpsilon:
    case TermKind::kCheck:
      return items.empty();
    case TermKind::kAtom:
      return items.empty() ||
             (items.size() == 1 && run[items[0]].occurrence == n.occurrence);
    case TermKind::kLet:
      return prefix(n.first, items, run);
    case TermKind::kUnion: {
      if (items.empty()) return prefix(n.first, items, run) ||
                                prefix(n.second, items, run);
      Items left, right;
      split(node, items, run, left, right);
      if (right.empty()) return prefix(n.first, left, run);
      if (left.empty()) return prefix(n.second, right, run);
      return false;
    }
    case TermKind::kSeq: {
      Items left, right;
      split(node, items, run, left, right);
      if (right.empty()) {
        return prefix(n.first, left, run) && prefix(n.second, {}, run);
      }
      if (!left.empty() && left.back() > right.front()) return false;
      return complete(n.first, left, run, env_before(run, right.front())) &&
             prefix(n.second, right, run);
    }
    case TermKind::kShuffle: {
      Items left, right;
      split(node, items, run, left, right);
      return prefix(n.first, left, run) && prefix(n.second, right, run);
    }
  }
  return false;
}

bool RunChecker::complete(int node, const Items& items, const Run& run,
                          const Env& pass_env) const {
  const auto& n = term_.node(node);
  switch (n.kind) {
    case TermKind::kEmpty:
      return false;
    case TermKind::kEpsilon:
      return items.empty();
    case TermKind::kCheck:
      if (!items.empty()) return false;
      try {
        return eval_guard(*n.guard, pass_env);
      } catch (const Error&) {
        return false;
      }
    case TermKind::kAtom:
      return items.size() == 1 && run[items[0]].occurrence == n.occurrence;
    case TermKind::kLet:
      return complete(n.first, items, run, pass_env);
    case TermKind::kUnion: {
      if (items.empty()) return complete(n.first, items, run, pass_env) ||
                                complete(n.second, items, run, pass_env);
      Items left, right;
      split(node, items, run, left, right);
      if (right.empty()) return complete(n.first, left, run, pass_env);
      if (left.empty()) return complete(n.second, right, run, pass_env);
      return false;
    }
    case TermKind::kSeq: {
      Items left, right;
      split(node, items, run, left, right);
      if (right.empty()) {
        return complete(n.first, left, run, pass_env) &&
               complete(n.second, {}, run, pass_env);
      }
      if (!left.empty() && left.back() > right.front()) return false;
      return complete(n.first, left, run, env_before(run, right.front())) &&
             complete(n.second, right, run, pass_env);
    }
    case TermKind::kShuffle: {
      Items left, right;
      split(node, items, run, left, right);
      return complete(n.first, left, run, pass_env) &&
             complete(n.second, right, run, pass_env);
    }
  }
  return false;
}

namespace {

std::vector<int> all_items(const Run& run) {
  std::vector<int> items(run.size());
  for (std::size_t i = 0; i < run.size(); ++i) items[i] = static_cast<int>(i);
  return items;
}

}  // namespace

bool RunChecker::prefix_ok(const Run& run) const {
  return prefix(term_.root(), all_items(run), run);
}

bool RunChecker::complete_ok(const Run& run) const {
  return complete(term_.root(), all_items(run), run, env_of(run));
}

std::vector<int> RunChecker::frontier(const Run& run, std::size_t now) const {
  std::vector<int> out;
  Run extended = run;
  extended.push_back(Consumption{now, -1, env_of(run)});
  for (int occ = 0; occ < term_.occurrence_count(); ++occ) {
    bool used = std::any_of(run.begin(), run.end(), [occ](const auto& c) {
      return c.occurrence == occ;
    });
    if (used) continue;
    extended.back().occurrence = occ;
    if (prefix_ok(extended)) out.push_back(occ);
  }
  return out;
}

}  // namespace rvaft::term::detail
