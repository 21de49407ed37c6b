#include <algorithm>

#include "rvaft/compiler.hpp"

namespace rvaft::compiler {

namespace {

using Spine = std::vector<Term>;

void flatten(const Term& t, Spine& out) {
  if (t.is(term::TermKind::kSeq)) {
    flatten(t.left(), out);
    flatten(t.right(), out);
  } else if (!t.is(term::TermKind::kEpsilon)) {
    out.push_back(t);
  }
}

struct Entry {
  Spine spine;
  std::size_t first_index;
};

std::size_t common_prefix(const Spine& a, const Spine& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

std::size_t common_suffix(const Spine& a, const Spine& b, std::size_t prefix) {
  std::size_t limit = std::min(a.size(), b.size()) - prefix;
  std::size_t n = 0;
  while (n < limit && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
  return n;
}

Spine merge2(const Spine& a, const Spine& b) {
  if (a == b) return a;
  std::size_t p = common_prefix(a, b);
  std::size_t s = common_suffix(a, b, p);
  Spine mid_a(a.begin() + p, a.end() - s);
  Spine mid_b(b.begin() + p, b.end() - s);
  Spine out(a.begin(), a.begin() + p);
  out.push_back(Term::either(term::fold_seq(mid_a), term::fold_seq(mid_b)));
  out.insert(out.end(), a.end() - s, a.end());
  return out;
}

}  // namespace

Term merge(const std::vector<BranchProperty>& properties) {
  if (properties.empty()) return Term::empty();
  if (properties.size() == 1) return properties.front().term;

  std::vector<Entry> entries;
  std::vector<Term> bodies;
  for (std::size_t i = 0; i < properties.size(); ++i) {
    Entry entry{{}, i};
    flatten(properties[i].unfolded, entry.spine);
    entries.push_back(std::move(entry));
    bodies.push_back(properties[i].unfolded);
  }

  while (entries.size() > 1) {
    std::size_t best_i = 0, best_j = 1, best_score = 0;
    bool found = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const auto& a = entries[i].spine;
        const auto& b = entries[j].spine;
        std::size_t p = common_prefix(a, b);
        std::size_t score = p + common_suffix(a, b, p);
        auto key = std::make_pair(std::min(entries[i].first_index, entries[j].first_index),
                                  std::max(entries[i].first_index, entries[j].first_index));
        auto best_key = std::make_pair(
            std::min(entries[best_i].first_index, entries[best_j].first_index),
            std::max(entries[best_i].first_index, entries[best_j].first_index));
        if (!found || score > best_score || (score == best_score && key < best_key)) {
          best_i = i;
          best_j = j;
          best_score = score;
          found = true;
        }
      }
    }
    Entry& a = entries[best_i];
    Entry& b = entries[best_j];
    const Entry& lower = a.first_index < b.first_index ? a : b;
    const Entry& upper = a.first_index < b.first_index ? b : a;
    Entry combined{merge2(lower.spine, upper.spine), lower.first_index};
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(best_j));
    entries[best_i] = std::move(combined);
  }

  Term body = term::fold_seq(entries.front().spine);
  return Term::let(term::bound_variables(term::fold_union(bodies)), fold_guards(body));
}

}  // namespace rvaft::compiler
