#include "plt/separate.hpp"

#include <cmath>

namespace plt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Terms are built in mixed-index form as w * U^mu V_nu and mapped to the
// lower-index product A_{mu nu} = w n_mu m_nu, which flips the spatial parts.
DecompositionTerm make_term(double w, const FourVector& u, const FourVector& v,
                            std::string source) {
  return {w, flip_spatial(u), flip_spatial(v), std::move(source)};
}

}  // namespace

SeparableDecomposition separable_decomposition(const LsvdResult& raw,
                                               bool pure_products,
                                               const Tolerances& tol) {
  const Verdict v = verdict_from_lsvd(raw, tol);
  if (v.status != VerdictStatus::Separable)
    throw DecompositionRefused(
        v.status, v.margin,
        v.status == VerdictStatus::Entangled
            ? "entangled state: SEC margin " + std::to_string(v.margin)
            : "input is not a state: " + v.detail);

  SeparableDecomposition d;
  const double drop = 1e-14;

  switch (raw.state_type) {
    case StateType::TypeI: {
      const LsvdResult c = canonicalize_signs(raw, false, nullptr, tol);
      const auto& e = c.left.v;
      const auto& E = c.right.v;
      const bool negative = c.sign_class == SignClass::Negative;
      d.provenance = negative ? "type-I canonical frames, negative octant"
                              : "type-I canonical frames, positive octant";
      double weight_spent = 0.0;
      const char* axis_name[4] = {"t", "x", "y", "z"};
      for (int k = 1; k < 4; ++k) {
        const double w = std::abs(c.mu[k]);
        if (w <= drop * std::max(c.mu[0], 1e-300)) {
          if (c.mu[k] != 0.0) ++d.dropped_zero_terms;
          continue;
        }
        weight_spent += w;
        const FourVector Ep = kInvSqrt2 * (E[0] + E[k]);
        const FourVector Em = kInvSqrt2 * (E[0] - E[k]);
        const FourVector ep = kInvSqrt2 * (e[0] + e[k]);
        const FourVector em = kInvSqrt2 * (e[0] - e[k]);
        if (negative) {
          d.terms.push_back(make_term(w, Ep, ep, std::string(axis_name[k]) + "+ x " + axis_name[k] + "+"));
          d.terms.push_back(make_term(w, Em, em, std::string(axis_name[k]) + "- x " + axis_name[k] + "-"));
        } else {
          d.terms.push_back(make_term(w, Ep, em, std::string(axis_name[k]) + "+ x " + axis_name[k] + "-"));
          d.terms.push_back(make_term(w, Em, ep, std::string(axis_name[k]) + "- x " + axis_name[k] + "+"));
        }
      }
      const double wt = c.mu[0] - weight_spent;  // SEC margin
      if (wt > drop * std::max(c.mu[0], 1e-300)) {
        if (!pure_products) {
          d.terms.push_back(make_term(wt, E[0], e[0], "t x t"));
        } else {
          for (int k = 1; k < 4; ++k) {
            const FourVector Ep = kInvSqrt2 * (E[0] + E[k]);
            const FourVector Em = kInvSqrt2 * (E[0] - E[k]);
            const FourVector ep = kInvSqrt2 * (e[0] + e[k]);
            const FourVector em = kInvSqrt2 * (e[0] - e[k]);
            const std::string a = axis_name[k];
            d.terms.push_back(make_term(wt / 6.0, Ep, ep, "t-split " + a + "+ x " + a + "+"));
            d.terms.push_back(make_term(wt / 6.0, Em, em, "t-split " + a + "- x " + a + "-"));
            d.terms.push_back(make_term(wt / 6.0, Ep, em, "t-split " + a + "+ x " + a + "-"));
            d.terms.push_back(make_term(wt / 6.0, Em, ep, "t-split " + a + "- x " + a + "+"));
          }
        }
      } else if (wt != 0.0) {
        ++d.dropped_zero_terms;
      }
      break;
    }
    case StateType::TypeII: {
      // Separable stratum: mu2 = mu3 = 0, leaving the null-dust form
      // mu0 (X-' X+ + X+' X-) + x X+' X+.
      const auto& e = raw.left.v;
      const auto& E = raw.right.v;
      d.provenance = "type-II null frames";
      d.terms.push_back(make_term(raw.mu[0], E[0], e[1], "X+' x X-"));
      d.terms.push_back(make_term(raw.mu[0], E[1], e[0], "X-' x X+"));
      if (raw.jordan_x > drop * std::max(raw.mu[0], 1e-300))
        d.terms.push_back(make_term(raw.jordan_x, E[0], e[0], "X+' x X+"));
      if (std::abs(raw.mu[2]) > 0.0 || std::abs(raw.mu[3]) > 0.0)
        d.dropped_zero_terms += 2;  // boundary-band legs
      break;
    }
    case StateType::TypeII0a:
      d.provenance = "type-II0a rank-1 form";
      d.terms.push_back(make_term(raw.jordan_x, raw.right.v[0], raw.left.v[0], "t x l"));
      break;
    case StateType::TypeII0b:
      d.provenance = "type-II0b rank-1 form";
      d.terms.push_back(make_term(raw.jordan_x, raw.right.v[0], raw.left.v[0], "l x t"));
      break;
    case StateType::TypeII0c:
      d.provenance = "type-II0c rank-1 form";
      d.terms.push_back(make_term(raw.jordan_x, raw.right.v[0], raw.left.v[0], "l2 x l1"));
      break;
  }
  return d;
}

VerificationReport verify_decomposition(const SeparableDecomposition& d,
                                        const DensityMatrix& rho,
                                        const Tolerances& tol) {
  VerificationReport rep;
  CMat4 assembled{};
  double min_eig = 0.0;
  bool first = true;
  for (const DecompositionTerm& t : d.terms) {
    if (!(t.weight > 0.0)) rep.weights_positive = false;
    if (!is_future_causal(t.left, tol.lightlike) ||
        !is_future_causal(t.right, tol.lightlike))
      rep.factors_causal = false;
    // Eigenvalues of u^mu sigma_mu are u0 +- |u|.
    for (const FourVector* f : {&t.left, &t.right}) {
      const double r = std::sqrt((*f)[1] * (*f)[1] + (*f)[2] * (*f)[2] +
                                 (*f)[3] * (*f)[3]);
      const double lo = (*f)[0] - r;
      if (first || lo < min_eig) {
        min_eig = lo;
        first = false;
      }
    }
    const CMat4 prod = kron(vector_to_single_qubit(t.left),
                            vector_to_single_qubit(t.right));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        assembled[i][j] += 0.25 * t.weight * prod[i][j];
  }
  rep.min_factor_eigenvalue = min_eig;

  double dist2 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dist2 += std::norm(assembled[i][j] - rho.matrix()[i][j]);
  rep.residual = std::sqrt(dist2) / rho.trace();

  double w00 = 0.0;
  for (const DecompositionTerm& t : d.terms) w00 += t.weight * t.left[0] * t.right[0];
  rep.weight_identity_defect = std::abs(w00 - rho.trace()) / rho.trace();
  return rep;
}

}  // namespace plt
