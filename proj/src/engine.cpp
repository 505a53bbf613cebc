#include "arrcoh/engine.hpp"

#include <string>

namespace arrcoh {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::theorem: return "theorem";
    case Method::lemma: return "lemma";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

CdoViolation::CdoViolation(std::vector<DenseEdgeReport> violations)
    : std::runtime_error("local system violates the CDO condition on " +
                         std::to_string(violations.size()) + " dense edge(s) at infinity"),
      violations_(std::move(violations)) {}

std::vector<Integer> beta_sequence(const std::vector<Integer>& betti) {
  if (betti.empty() || betti[0] != 1) {
    throw std::invalid_argument("beta_sequence: b_0 must be 1");
  }
  std::vector<Integer> beta;
  Integer partial = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    partial += (k % 2 == 0) ? betti[k] : Integer(-betti[k]);
    beta.push_back(abs(partial));
  }
  return beta;
}

std::vector<AbelianGroup> formula_groups(const std::vector<Integer>& betti) {
  const auto beta = beta_sequence(betti);
  const std::size_t n = betti.size() - 1;
  // beta_{-1} = 0, so degree 0 falls in the "otherwise" branch.
  auto twos = [&](std::size_t i) {
    return i == 0 ? std::size_t{0} : beta[i - 1].convert_to<std::size_t>();
  };
  std::vector<AbelianGroup> groups(n + 1);
  for (std::size_t i = 1; i < n; ++i) groups[i] = AbelianGroup::free_plus_z2(0, twos(i));
  if (n >= 1) {
    groups[n] = AbelianGroup::free_plus_z2(beta[n].convert_to<std::size_t>(), twos(n));
  } else {
    groups[0] = AbelianGroup::free(beta[0].convert_to<std::size_t>());
  }
  return groups;
}

CohomologyProfile theorem_cohomology(const Arrangement& arr, const SignLocalSystem& ls,
                                     bool force) {
  auto verdict = cdo_check(arr, ls);
  if (!verdict.satisfied && !force) throw CdoViolation(std::move(verdict.violations));
  CohomologyProfile p;
  p.method = Method::theorem;
  p.cdo_verdict = verdict.satisfied;
  p.groups = formula_groups(betti_numbers(IntersectionPoset(arr)));
  return p;
}

CohomologyProfile lemma_central_cohomology(const Arrangement& central,
                                           const SignLocalSystem& ls) {
  if (!central.is_central()) {
    throw ArrangementError("lemma method needs a central arrangement");
  }
  if (ls.size() != central.size()) {
    throw ArrangementError("local system length does not match the hyperplane count");
  }
  if (ls.t0() != -1) {
    throw ArrangementError("lemma method needs the product of all signs to be -1");
  }
  const auto projective = projective_betti(central);
  CohomologyProfile p;
  p.method = Method::lemma;
  p.cdo_verdict = cdo_check(central, ls).satisfied;
  p.groups.resize(central.dimension() + 1);
  for (std::size_t i = 1; i <= central.dimension(); ++i) {
    p.groups[i] = AbelianGroup::free_plus_z2(0, projective[i - 1].convert_to<std::size_t>());
  }
  return p;
}

}  // namespace arrcoh
