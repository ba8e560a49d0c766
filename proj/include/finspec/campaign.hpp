#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "finspec/dixmier.hpp"
#include "finspec/exponential.hpp"
#include "finspec/norm_ladder.hpp"
#include "finspec/omega_form.hpp"
#include "finspec/random.hpp"
#include "finspec/trace.hpp"

namespace finspec {

// Randomized verification campaigns over one or more triples. Every property
// reduces to a margin: the slack remaining before its tolerance is violated,
// so nonnegative margins mean pass. Reports are deterministic for a fixed
// seed; nothing time- or platform-dependent enters the body.

struct PropertyResult {
  std::string property;
  int instances = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool pass = true;
  std::string worst_instance;  // serialized instance at the worst margin
};

struct VerificationReport {
  std::string campaign;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_pass() const {
    for (const auto& p : properties)
      if (!p.pass) return false;
    return true;
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

inline std::string format_operator(const Operator& a) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out += i ? ";" : "";
    out += "[";
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%s%.9g%+.9gi", j ? "," : "",
                    a(i, j).real(), a(i, j).imag());
      out += buf;
    }
    out += "]";
  }
  return out + "]";
}

// Collects margins for one property; keeps the worst instance only.
class PropertyAccumulator {
 public:
  explicit PropertyAccumulator(std::string name) : name_(std::move(name)) {}

  void add(double margin, const std::function<std::string()>& describe = {}) {
    ++count_;
    if (margin < worst_) {
      worst_ = margin;
      worst_desc_ = describe ? describe() : std::string();
    }
  }

  void commit(VerificationReport& report) const {
    PropertyResult r;
    r.property = name_;
    r.instances = count_;
    r.worst_margin = count_ ? worst_ : 0.0;
    r.pass = r.worst_margin >= 0.0;
    r.worst_instance = worst_desc_;
    report.properties.push_back(std::move(r));
  }

 private:
  std::string name_;
  int count_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  std::string worst_desc_;
};

inline void print_report(std::ostream& os, const VerificationReport& report) {
  os << "campaign: " << report.campaign << "\n";
  os << "seed: " << report.seed << "\n";
  for (const auto& p : report.properties) {
    os << (p.pass ? "pass" : "FAIL") << "  " << p.property << "  instances="
       << p.instances << "  worst_margin=" << format_double(p.worst_margin)
       << "\n";
    if (!p.pass && !p.worst_instance.empty())
      os << "      worst: " << p.worst_instance << "\n";
  }
  os << "result: " << (report.all_pass() ? "PASS" : "FAIL") << " ("
     << [&] {
          int n = 0;
          for (const auto& p : report.properties) n += p.pass ? 1 : 0;
          return n;
        }()
     << "/" << report.properties.size() << " properties)\n";
}

inline nlohmann::json report_json(const VerificationReport& report) {
  nlohmann::json out;
  out["campaign"] = report.campaign;
  out["seed"] = report.seed;
  out["properties"] = nlohmann::json::array();
  for (const auto& p : report.properties) {
    nlohmann::json jp;
    jp["property"] = p.property;
    jp["instances"] = p.instances;
    jp["worst_margin"] = format_double(p.worst_margin);
    jp["pass"] = p.pass;
    if (!p.worst_instance.empty()) jp["worst_instance"] = p.worst_instance;
    out["properties"].push_back(std::move(jp));
  }
  out["pass"] = report.all_pass();
  return out;
}

// ---------------------------------------------------------------------------
// Norm ladder suite: submultiplicativity, involution invariance, the level
// recursion, and monotonicity of the ladder norms, on random pairs.

inline void append_ladder_suite(VerificationReport& report,
                                const std::vector<FiniteSpectralTriple>& triples,
                                int pairs, Rng& rng, int depth) {
  PropertyAccumulator submult("ladder.submultiplicative");
  PropertyAccumulator star("ladder.star_invariance");
  PropertyAccumulator recursion("ladder.recursion");
  PropertyAccumulator monotone("ladder.monotone");

  for (int i = 0; i < pairs; ++i) {
    const FiniteSpectralTriple& t = triples[i % triples.size()];
    const int n = std::min(depth, t.max_ladder_depth());
    const Operator a = random_algebra_element(t.algebra(), rng);
    const Operator b = random_algebra_element(t.algebra(), rng);
    const auto ra = norm_ladder(t, a, n);
    const auto rb = norm_ladder(t, b, n);
    const auto rab = norm_ladder(t, Operator(a * b), n);
    const auto rastar = norm_ladder(t, finspec::adjoint(a), n);
    auto describe = [&a, &b] {
      return "a=" + format_operator(a) + " b=" + format_operator(b);
    };
    for (int k = 0; k <= n; ++k) {
      const std::size_t ks = static_cast<std::size_t>(k);
      submult.add(ra.norms[ks] * rb.norms[ks] * (1.0 + 1e-9) - rab.norms[ks],
                  describe);
      star.add(1e-10 * ra.norms[ks] - std::abs(rastar.norms[ks] - ra.norms[ks]),
               describe);
      if (k > 0) {
        recursion.add(1e-12 * (1.0 + ra.norms[ks]) -
                          std::abs(ra.norms[ks] - ra.norms[ks - 1] -
                                   ra.seminorms[ks]),
                      describe);
        monotone.add(ra.norms[ks] - ra.norms[ks - 1], describe);
      }
    }
  }
  submult.commit(report);
  star.commit(report);
  recursion.commit(report);
  monotone.commit(report);
}

// ---------------------------------------------------------------------------
// Product bound suite: the one-sided inequality with its constructive
// constants, plus the fixed hand-checked instance.

inline void append_product_bound_suite(
    VerificationReport& report,
    const std::vector<FiniteSpectralTriple>& triples, int instances, Rng& rng,
    int max_level = 4) {
  PropertyAccumulator bound("product_bound.inequality");
  for (int i = 0; i < instances; ++i) {
    const FiniteSpectralTriple& t = triples[i % triples.size()];
    const int level_cap = std::min(max_level, t.max_ladder_depth());
    const int n = 1 + static_cast<int>(rng.uniform() * level_cap);
    const int level = std::min(n, level_cap);
    const Operator a = random_algebra_element(t.algebra(), rng);
    const Operator x = random_algebra_element(t.algebra(), rng);
    const auto check = check_product_bound(t, a, x, level);
    bound.add(check.rhs * (1.0 + 1e-9) - check.lhs, [&] {
      return "level=" + std::to_string(level) + " a=" + format_operator(a) +
             " x=" + format_operator(x);
    });
  }
  bound.commit(report);
}

// ---------------------------------------------------------------------------
// Exponential suite: flow equation, first-order derivative decay, local
// round trips, third-order remainder decay, and the homomorphism property on
// commuting arguments. Elements are drawn from the triples' algebras.

inline void append_exp_suite(VerificationReport& report,
                             const std::vector<FiniteSpectralTriple>& triples,
                             int instances, Rng& rng) {
  PropertyAccumulator ode("exp.ode_residual");
  PropertyAccumulator decay("exp.derivative_first_order");
  PropertyAccumulator roundtrip("exp.roundtrip");
  PropertyAccumulator bch("exp.bch_decay");
  PropertyAccumulator hom("exp.homomorphism_commuting");

  for (int i = 0; i < instances; ++i) {
    const FiniteSpectralTriple& t = triples[i % triples.size()];
    const StarAlgebra& alg = t.algebra();
    const Operator v = random_algebra_element(alg, rng, 0.2 + 0.8 * rng.uniform());
    const Operator w = random_algebra_element(alg, rng);
    auto describe = [&v, &w] {
      return "v=" + format_operator(v) + " w=" + format_operator(w);
    };

    ode.add(1e-7 - ode_residual(v, {0.0, 0.25, 0.5, 1.0}), describe);

    {
      const Operator d = exp_derivative(v, w);
      auto error_at = [&](double h) {
        return op_norm(Operator(
            (exp_map(Operator(v + h * w)) - exp_map(v)) / h - d));
      };
      const double e4 = error_at(1e-4);
      const double e5 = error_at(1e-5);
      if (e4 < 1e-13) {
        decay.add(1.0, describe);  // error at round-off; decay is vacuous
      } else {
        const double ratio = e4 / e5;
        decay.add(std::min(ratio - 8.0, 12.0 - ratio), describe);
      }
    }

    {
      Operator small = v;
      small *= 0.3 / std::max(op_norm(small), 1e-12);
      const double err =
          op_norm(Operator(log_near_identity(exp_map(small)) - small));
      roundtrip.add(1e-8 - err, describe);
    }

    {
      const Operator u2 = random_algebra_element(alg, rng, 0.5);
      const Operator v2 = random_algebra_element(alg, rng, 0.5);
      auto remainder = [&](double s) {
        const Operator su = s * u2, sv = s * v2;
        const Operator g = exp_map(su) * exp_map(sv);
        return op_norm(Operator(log_near_identity(g) - su - sv -
                                0.5 * commutator(su, sv)));
      };
      const double e1 = remainder(0.2);
      const double e2 = remainder(0.1);
      const double e3 = remainder(0.05);
      if (e1 < 1e-12) {
        bch.add(1.0, describe);  // commuting draw, remainder vanishes
      } else {
        bch.add(std::min({e1 / e2 - 5.0, 12.0 - e1 / e2, e2 / e3 - 5.0,
                          12.0 - e2 / e3}),
                describe);
      }
    }

    {
      // v and its polynomials commute.
      const Operator p = 0.4 * v * v + 0.6 * v;
      const Operator lhs = exp_map(Operator(v + p));
      const Operator rhs = exp_map(v) * exp_map(p);
      hom.add(1e-9 * (1.0 + op_norm(rhs)) - op_norm(Operator(lhs - rhs)),
              describe);
    }
  }
  ode.commit(report);
  decay.commit(report);
  roundtrip.commit(report);
  bch.commit(report);
  hom.commit(report);
}

// ---------------------------------------------------------------------------
// Omega suite: involution identities, exponentials landing in the group,
// agreement between the block characterizations and the membership tests,
// and the real-form split.

struct OmegaCase {
  std::string label;
  OmegaForm form;
  Family family;
  Eigen::Index p = -1, q = -1;
  bool has_blocks = true;
};

inline std::vector<OmegaCase> standard_omega_cases() {
  auto full = [](Eigen::Index d) {
    std::vector<Operator> gens;
    for (Eigen::Index k = 0; k + 1 < d; ++k)
      gens.push_back(matrix_unit(d, k, k + 1));
    return StarAlgebra::close_from_generators(d, gens);
  };
  std::vector<OmegaCase> cases;
  cases.push_back({"unitary_2",
                   OmegaForm::make(family_omega(Family::unitary, 2), full(2)),
                   Family::unitary, -1, -1, true});
  cases.push_back({"unitary_4",
                   OmegaForm::make(family_omega(Family::unitary, 4), full(4)),
                   Family::unitary, -1, -1, true});
  cases.push_back(
      {"symplectic_2",
       OmegaForm::make(family_omega(Family::symplectic, 2), full(2)),
       Family::symplectic, -1, -1, true});
  cases.push_back(
      {"symplectic_4",
       OmegaForm::make(family_omega(Family::symplectic, 4), full(4)),
       Family::symplectic, -1, -1, true});
  cases.push_back(
      {"pseudo_unitary_1_1",
       OmegaForm::make(family_omega(Family::pseudo_unitary, 2, 1, 1), full(2)),
       Family::pseudo_unitary, 1, 1, true});
  cases.push_back(
      {"pseudo_unitary_2_1",
       OmegaForm::make(family_omega(Family::pseudo_unitary, 3, 2, 1), full(3)),
       Family::pseudo_unitary, 2, 1, true});
  return cases;
}

inline void append_omega_suite(VerificationReport& report,
                               const std::vector<OmegaCase>& cases,
                               int instances, Rng& rng) {
  PropertyAccumulator involution("omega.involution_identities");
  PropertyAccumulator landing("omega.exp_in_group");
  PropertyAccumulator agreement("omega.block_agreement");
  PropertyAccumulator split("omega.real_form_split");
  PropertyAccumulator route("omega.lie_route_agreement");

  for (const OmegaCase& c : cases) {
    const OmegaForm& f = c.form;
    for (int i = 0; i < instances; ++i) {
      const Operator x = random_matrix(f.dim(), rng);
      const Operator y = random_matrix(f.dim(), rng);
      const Complex lambda = rng.unit_disc();
      auto describe = [&] { return c.label + " x=" + format_operator(x); };

      {
        const double d1 =
            op_norm(Operator(f.involution(f.involution(x)) - x));
        const double d2 = op_norm(Operator(
            f.involution(Operator(x + lambda * y)) - f.involution(x) -
            std::conj(lambda) * f.involution(y)));
        const double d3 =
            op_norm(Operator(f.involution(commutator(x, y)) -
                             commutator(f.involution(x), f.involution(y))));
        const double d4 = op_norm(Operator(f.involution(finspec::adjoint(x)) -
                                           finspec::adjoint(f.involution(x))));
        const double scale =
            1.0 + op_norm(x) + op_norm(y) + op_norm(x) * op_norm(y);
        involution.add(1e-9 * scale - std::max({d1, d2, d3, d4}), describe);
      }

      {
        const Operator u = random_lie_element(f, rng, 2.0 * rng.uniform());
        const auto membership = f.group_membership(exp_map(u));
        landing.add(1e-7 - membership.residual,
                    [&] { return c.label + " u=" + format_operator(u); });
      }

      {
        const auto r = f.lie_algebra_membership(x);
        route.add(1e-10 * (1.0 + r.residual) -
                      std::abs(r.residual - r.cross_check),
                  describe);
      }

      if (c.has_blocks) {
        // Alternate clean members and broken perturbations; the block
        // equations and the defining-relation tests must agree on both.
        const bool member = i % 2 == 0;
        Operator lie_probe = random_lie_element(f, rng);
        Operator group_probe = exp_map(lie_probe);
        if (!member) {
          const Operator noise = 0.1 * random_matrix(f.dim(), rng);
          lie_probe += noise + noise.adjoint();
          group_probe += 0.1 * random_matrix(f.dim(), rng);
        }
        const bool lie_blocks =
            classify_blocks(c.family, lie_probe, MembershipKind::lie_algebra,
                            c.p, c.q)
                .pass;
        const bool lie_form = f.lie_algebra_membership(lie_probe).inside;
        const bool group_blocks =
            classify_blocks(c.family, group_probe, MembershipKind::group, c.p,
                            c.q)
                .pass;
        const bool group_form = f.group_membership(group_probe).inside;
        agreement.add(
            (lie_blocks == lie_form && group_blocks == group_form) ? 1.0
                                                                   : -1.0,
            [&] {
              return c.label + " lie=" + format_operator(lie_probe) +
                     " group=" + format_operator(group_probe);
            });
      }

      {
        const auto [u, w] = f.real_form_split(x);
        const double scale = 1.0 + op_norm(x);
        const double reconstruction =
            op_norm(Operator(u + Complex(0, 1) * w - x));
        const double fixed =
            std::max(op_norm(Operator(f.involution(u) - u)),
                     op_norm(Operator(f.involution(w) - w)));
        split.add(
            std::min(1e-12 * scale - reconstruction, 1e-10 * scale - fixed),
            describe);
      }
    }
  }
  involution.commit(report);
  landing.commit(report);
  agreement.commit(report);
  split.commit(report);
  route.commit(report);
}

// ---------------------------------------------------------------------------
// Trace suite: the trace axioms for the normalized trace and an
// amplification, the kernel projection, commutators in the kernel, the
// separation witness over a two-summand direct sum, and the two-condition
// membership in the traceless form algebra.

inline double trace_axiom_defect(const TraceFunctional& t, Rng& rng,
                                 int draws) {
  const StarAlgebra& alg = t.algebra();
  double worst = std::abs(t(alg.unit()) - 1.0);
  for (int i = 0; i < draws; ++i) {
    const Operator a = random_algebra_element(alg, rng);
    const Operator b = random_algebra_element(alg, rng);
    worst = std::max(worst, std::abs(t(Operator(a * b)) - t(Operator(b * a))));
    worst = std::max(worst,
                     std::abs(t(finspec::adjoint(a)) - std::conj(t(a))));
    const Complex positive = t(Operator(finspec::adjoint(a) * a));
    worst = std::max(worst, std::abs(positive.imag()));
    worst = std::max(worst, std::max(0.0, -positive.real()));
  }
  return worst;
}

inline void append_trace_suite(VerificationReport& report,
                               const std::vector<FiniteSpectralTriple>& triples,
                               int instances, Rng& rng) {
  PropertyAccumulator axioms("trace.axioms");
  PropertyAccumulator kernel("trace.kernel_projection");
  PropertyAccumulator derived("trace.commutator_kernel");
  PropertyAccumulator separation("trace.separation");
  PropertyAccumulator conjunction("trace.unimodular_conjunction");

  const int draws_per_triple = std::max(instances / 10, 3);
  for (const FiniteSpectralTriple& t : triples) {
    const TraceFunctional base = normalized_matrix_trace(t.algebra());
    axioms.add(1e-10 - trace_axiom_defect(base, rng, draws_per_triple));
    const FiniteSpectralTriple doubled = amplify(t, 2);
    const TraceFunctional lifted =
        amplified_trace(base, doubled.algebra(), 2);
    axioms.add(1e-10 - trace_axiom_defect(lifted, rng, draws_per_triple));

    const StarAlgebra& alg = t.algebra();
    const OmegaForm unit_form = OmegaForm::make(alg.unit(), alg);
    for (int i = 0; i < draws_per_triple; ++i) {
      const Operator a = random_algebra_element(alg, rng);
      const auto [traceless, value] = base.kernel_project(a);
      const double scale = 1.0 + op_norm(a);
      const double rebuilt =
          op_norm(Operator(traceless + value * alg.unit() - a));
      kernel.add(std::min(1e-12 - std::abs(base(traceless)),
                          1e-14 * scale - rebuilt),
                 [&] { return format_operator(a); });

      const Operator b = random_algebra_element(alg, rng);
      derived.add(1e-10 - std::abs(base(commutator(a, b))));

      // Conjunction shape of the traceless form-algebra membership:
      // rotate through a clean member, a fixed point with nonzero trace,
      // and a non-fixed point.
      const Operator fixed = 0.5 * (a + unit_form.involution(a));
      Operator candidate;
      if (i % 3 == 0) {
        candidate = base.kernel_project(fixed).first;
      } else if (i % 3 == 1) {
        candidate = fixed + Complex(0.0, 0.3) * alg.unit();
      } else {
        candidate = fixed + 0.3 * alg.unit();
      }
      const auto member =
          unimodular_lie_membership(base, unit_form, candidate);
      const bool lie_alone =
          unit_form.lie_algebra_membership(candidate).inside;
      const bool trace_alone =
          std::abs(base(candidate)) <=
          tol::group_membership * (1.0 + op_norm(candidate));
      conjunction.add(member.inside == (lie_alone && trace_alone) ? 1.0 : -1.0,
                      [&] { return format_operator(candidate); });
    }
  }

  // Separation of convex combinations over a two-summand direct sum.
  if (triples.size() >= 1) {
    const FiniteSpectralTriple& first = triples.front();
    const FiniteSpectralTriple& second =
        triples.size() >= 2 ? triples[1] : triples.front();
    const DirectSum sum = direct_sum({first, second});
    const std::vector<TraceFunctional> parts = {
        normalized_matrix_trace(first.algebra()),
        normalized_matrix_trace(second.algebra())};
    for (int ui = 0; ui <= 10; ++ui) {
      for (int vi = 0; vi <= 10; ++vi) {
        if (std::abs(ui - vi) < 1) continue;  // need |u - v| >= 0.1
        const double u = ui / 10.0, v = vi / 10.0;
        const TraceFunctional tu =
            convex_combination(sum, parts, {u, 1.0 - u});
        const TraceFunctional tv =
            convex_combination(sum, parts, {v, 1.0 - v});
        const auto witness = separation_witness(tu, tv);
        if (!witness.found) {
          separation.add(-1.0, [&] {
            return "u=" + format_double(u) + " v=" + format_double(v);
          });
          continue;
        }
        separation.add(
            std::min(std::abs(witness.second_value) - 1e-8,
                     1e-12 - std::abs(witness.first_value)),
            [&] { return "u=" + format_double(u) + " v=" + format_double(v); });
      }
    }
  }

  axioms.commit(report);
  kernel.commit(report);
  derived.commit(report);
  separation.commit(report);
  conjunction.commit(report);
}

// ---------------------------------------------------------------------------
// Amplification suite: ladder norms are unchanged under the diagonal
// embedding, and the ladder/product-bound suites hold on the amplified
// triple.

inline void append_amplify_suite(VerificationReport& report,
                                 const FiniteSpectralTriple& base,
                                 Eigen::Index n, int instances, Rng& rng) {
  const FiniteSpectralTriple amp = amplify(base, n);
  PropertyAccumulator invariance("amplify.norm_invariance");
  const Operator eye = Operator::Identity(n, n);
  for (int i = 0; i < instances; ++i) {
    const Operator a = random_algebra_element(base.algebra(), rng);
    const Operator lifted = kron(eye, a);
    for (int k = 0; k <= std::min(3, base.max_ladder_depth()); ++k) {
      const double lhs = ladder_norm(amp, lifted, k);
      const double rhs = ladder_norm(base, a, k);
      invariance.add(1e-10 * (1.0 + rhs) - std::abs(lhs - rhs),
                     [&] { return format_operator(a); });
    }
  }
  invariance.commit(report);
  append_ladder_suite(report, {amp}, instances, rng,
                      std::min(3, amp.max_ladder_depth()));
  append_product_bound_suite(report, {amp}, instances, rng, 3);
}

}  // namespace finspec
