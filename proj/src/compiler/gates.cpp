#include <algorithm>

#include "rvaft/compiler.hpp"
#include "rvaft/error.hpp"

namespace rvaft::compiler {

Term translate_or(const std::vector<Term>& children) {
  return term::fold_union(children);
}

Term translate_and(const std::vector<Term>& children) {
  return term::fold_shuffle(children);
}

Term translate_sand(const std::vector<Term>& children,
                    SandDirection direction) {
  if (direction == SandDirection::kLeftToRight) return term::fold_seq(children);
  std::vector<Term> reversed(children.rbegin(), children.rend());
  return term::fold_seq(reversed);
}

namespace {

Term vot(int k, const std::vector<Term>& children) {
  std::vector<Term> options;
  options.reserve(children.size());
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (k == 1) {
      options.push_back(children[i]);
      continue;
    }
    std::vector<Term> rest;
    for (std::size_t j = 0; j < children.size(); ++j) {
      if (j != i) rest.push_back(children[j]);
    }
    options.push_back(Term::seq(children[i], vot(k - 1, rest)));
  }
  return term::fold_union(options);
}

}  // namespace

Term translate_vot(int k, const std::vector<Term>& children) {
  const int n = static_cast<int>(children.size());
  if (k < 1 || k > n) {
    throw Error(ErrorKind::kInvalidK, "VOT needs 1 <= k <= n (k=" +
                                          std::to_string(k) + ", n=" +
                                          std::to_string(n) + ")");
  }
  return vot(k, children);
}

namespace {

void flatten_seq(const Term& t, std::vector<Term>& out) {
  if (t.is(term::TermKind::kSeq)) {
    flatten_seq(t.left(), out);
    flatten_seq(t.right(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

Term fold_guards(const Term& t) {
  using term::TermKind;
  switch (t.kind()) {
    case TermKind::kSeq: {
      std::vector<Term> spine;
      flatten_seq(t, spine);
      std::vector<Term> folded;
      for (const auto& element : spine) {
        Term current = fold_guards(element);
        if (current.is(TermKind::kCheck) && !folded.empty() &&
            folded.back().is(TermKind::kAtom)) {
          term::EventAnnotation atom = folded.back().annotation();
          atom.guard = atom.guard ? term::conjunction(*atom.guard, current.guard())
                                  : current.guard();
          folded.back() = Term::atom(std::move(atom));
          continue;
        }
        folded.push_back(std::move(current));
      }
      return term::fold_seq(folded);
    }
    case TermKind::kUnion:
      return Term::either(fold_guards(t.left()), fold_guards(t.right()));
    case TermKind::kShuffle:
      return Term::shuffle(fold_guards(t.left()), fold_guards(t.right()));
    case TermKind::kLet:
      return Term::let(t.let_variables(), fold_guards(t.body()));
    default:
      return t;
  }
}

}  // namespace rvaft::compiler
