#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzyframes/cli_io.hpp"
#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/frame_transforms.hpp"
#include "fuzzyframes/operator_algebra.hpp"
#include "fuzzyframes/perturbation.hpp"
#include "fuzzyframes/random.hpp"

namespace fuzzyframes::cli {

namespace {

constexpr std::size_t kDefaultReconstructSamples = 10;
constexpr std::size_t kDefaultAxiomSamples = 1000;
constexpr std::size_t kDefaultFamilySamples = 1000;

// What a command handler hands back before the envelope is added.
struct Evaluation {
  Json result = Json::object();
  Verdict verdict = Verdict::fail;
  Json errata = Json::array();
};

Json witness_json(std::span<const Scalar> v, Field field) { return encode(canonical_direction(v), field); }

Json certificate_json(const BoundCertificate& c, Field field) {
  Json out{{"kind", to_string(c.kind)},
           {"lower", encode_number(c.lower)},
           {"upper", encode_number(c.upper)},
           {"alpha_independent", c.alpha_independent},
           {"convention", to_string(c.convention)},
           {"lower_is_equality", c.lower_is_equality}};
  if (c.lower_witness) out["lower_witness"] = witness_json(*c.lower_witness, field);
  if (c.upper_witness) out["upper_witness"] = witness_json(*c.upper_witness, field);
  return out;
}

Json verification_json(const BoundVerification& v, Field field) {
  Json out{{"passed", v.passed}, {"alphas", v.alphas}};
  if (v.violation) {
    out["violation"] = {{"alpha", v.violation->alpha},
                        {"side", v.violation->side},
                        {"min_eigenvalue", encode_number(v.violation->min_eigenvalue)},
                        {"witness", witness_json(v.violation->witness, field)}};
  }
  return out;
}

Json derived_json(const DerivedBound& d, Field field) {
  Json sources = Json::array();
  for (const auto& [a, b] : d.source_bounds) sources.push_back(Json::array({encode_number(a), encode_number(b)}));
  return {{"formula", d.formula_tag},
          {"source_bounds", sources},
          {"lower", encode_number(d.lower)},
          {"upper", encode_number(d.upper)},
          {"verification", verification_json(d.verification, field)}};
}

Json sampled_json(const SampledCheck& s, Field field) {
  Json out{{"status", s.status()},
           {"verified", s.verified},
           {"max_violation", encode_number(s.max_violation)},
           {"tolerance", encode_number(s.tolerance)},
           {"evaluations", s.evaluations}};
  if (!s.witness.empty()) out["witness"] = witness_json(s.witness, field);
  return out;
}

Json per_alpha_bounds(const FrameFamily& family, const Matrix& k, std::span<const AlphaLevel> alphas,
                      FrameSumConvention convention) {
  Json out = Json::array();
  for (const auto& alpha : alphas) {
    const auto c = optimal_kframe_bounds_at(family, k, alpha, convention);
    out.push_back({{"alpha", alpha.value()}, {"lower", encode_number(c.lower)}, {"upper", encode_number(c.upper)}});
  }
  return out;
}

const Matrix& require(const std::optional<Matrix>& m, const char* name) {
  if (!m) throw InputError(std::string(name) + " is required for this command");
  return *m;
}

Matrix operator_or_identity(const ProblemFile& p) {
  return p.operator_k ? *p.operator_k : Matrix::identity(p.dimension);
}

std::vector<Vector> sample_vectors(const ProblemFile& p, std::size_t default_count) {
  if (!p.vectors.empty()) return p.vectors;
  Rng rng(p.seed);
  std::vector<Vector> out;
  const std::size_t count = p.samples.value_or(default_count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(rng.vector(p.dimension, p.field));
  return out;
}

Verdict from_bool(bool passed) { return passed ? Verdict::pass : Verdict::fail; }

Evaluation check_bounds(const ProblemFile& p, const Matrix& k, bool kframe) {
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  const BoundCertificate optimal = kframe ? optimal_kframe_bounds(family, k) : optimal_frame_bounds(family);
  const double lower = p.bounds ? p.bounds->first : optimal.lower;
  const double upper = p.bounds ? p.bounds->second : optimal.upper;
  const auto verification = verify_bounds(family, k, lower, upper, alphas, p.convention);

  Evaluation e;
  e.result["optimal"] = certificate_json(optimal, p.field);
  e.result["checked_bounds"] = Json::array({encode_number(lower), encode_number(upper)});
  e.result["bounds_source"] = p.bounds ? "file" : "optimal";
  e.result["verification"] = verification_json(verification, p.field);
  if (p.convention == FrameSumConvention::squared_per_alpha)
    e.result["optimal_per_alpha"] = per_alpha_bounds(family, k, alphas, p.convention);
  const bool has_lower = lower > 0.0;
  if (!has_lower) {
    e.result["reason"] = "no positive lower bound";
    if (optimal.lower_witness) e.result["witness"] = witness_json(*optimal.lower_witness, p.field);
  }
  e.verdict = from_bool(verification.passed && has_lower);
  return e;
}

Evaluation cmd_check_frame(const ProblemFile& p) { return check_bounds(p, Matrix::identity(p.dimension), false); }

Evaluation cmd_check_kframe(const ProblemFile& p) { return check_bounds(p, require(p.operator_k, "operator_K"), true); }

Evaluation cmd_bounds(const ProblemFile& p) {
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  Evaluation e;
  const auto frame = optimal_frame_bounds(family);
  e.result["frame"] = certificate_json(frame, p.field);
  const BoundCertificate* relevant = &frame;
  BoundCertificate kframe;
  if (p.operator_k) {
    kframe = optimal_kframe_bounds(family, *p.operator_k);
    e.result["kframe"] = certificate_json(kframe, p.field);
    relevant = &kframe;
  }
  if (p.convention == FrameSumConvention::squared_per_alpha)
    e.result["kframe_per_alpha"] = per_alpha_bounds(family, operator_or_identity(p), alphas, p.convention);
  if (!relevant->has_lower_bound() && relevant->lower_witness)
    e.result["witness"] = witness_json(*relevant->lower_witness, p.field);
  e.verdict = from_bool(relevant->has_lower_bound());
  return e;
}

Evaluation cmd_atomic(const ProblemFile& p) {
  const auto& k = require(p.operator_k, "operator_K");
  const FrameFamily family(p.model(), p.family);
  const auto eq = atomic_system_equivalence_check(family, k);
  const auto canonical = atomic_system_from_operator(p.model(), k);

  Evaluation e;
  e.result["kframe"] = certificate_json(eq.kframe, p.field);
  e.result["is_kframe"] = eq.is_kframe;
  e.result["coefficients_exist"] = eq.coefficients_exist;
  e.result["bound_constant"] = encode_number(eq.bound_constant);
  e.result["inclusion_residual"] = encode_number(eq.inclusion_residual);
  e.result["constant_consistent"] = eq.constant_consistent;
  e.result["equivalence_consistent"] = eq.consistent();
  Json members = Json::array();
  for (const auto& v : canonical.family.vectors()) members.push_back(encode(v, p.field));
  e.result["canonical_atomic_system"] = {{"family", members},
                                         {"certificate", certificate_json(canonical.certificate, p.field)}};
  if (!eq.is_kframe && eq.kframe.lower_witness) e.result["witness"] = witness_json(*eq.kframe.lower_witness, p.field);
  e.verdict = from_bool(eq.consistent() && eq.is_kframe);
  return e;
}

Evaluation cmd_transform(const ProblemFile& p) {
  const auto& t = require(p.operator_t, "operator_T");
  const Matrix k = operator_or_identity(p);
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  const std::string variant = p.variant.value_or("invertible");

  Evaluation e;
  e.result["variant"] = variant;
  try {
    if (variant == "transfer") {
      const auto r = operator_transfer(family, k, t, alphas);
      e.result["lambda"] = encode_number(r.lambda);
      e.result["derived"] = derived_json(r.derived, p.field);
      e.result["optimal"] = certificate_json(r.optimal, p.field);
      e.verdict = from_bool(r.derived.verification.passed);
    } else if (variant == "invertible" || variant == "coisometry") {
      const auto kind = variant == "invertible" ? TransformVariant::invertible : TransformVariant::coisometry;
      const auto r = transform_family(family, t, k, kind, alphas);
      e.result["commutation_residual"] = encode_number(r.commutation_residual);
      e.result["derived"] = derived_json(r.derived, p.field);
      e.result["optimal"] = certificate_json(r.optimal, p.field);
      e.verdict = from_bool(r.derived.verification.passed);
    } else {
      throw InputError("variant: expected invertible, coisometry or transfer");
    }
  } catch (const HypothesisError& error) {
    e.result["hypothesis"] = {{"holds", false}, {"message", error.what()}, {"residual", encode_number(error.residual())}};
    if (!error.witness().empty()) e.result["witness"] = witness_json(error.witness(), p.field);
    e.verdict = Verdict::fail;
  }
  return e;
}

Evaluation cmd_perturb_operator(const ProblemFile& p) {
  const auto& k1 = require(p.operator_k, "operator_K");
  if (!p.lambdas) throw InputError("lambdas is required for this command");
  const auto [lambda1, lambda2] = *p.lambdas;
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  const PerturbationSampling sampling{.seed = p.seed};

  Evaluation e;
  e.result["lambdas"] = Json::array({lambda1, lambda2});
  if (!p.operator_k2) {
    const auto r = identity_perturbation_check(family, k1, lambda1, lambda2, alphas, sampling);
    e.result["case"] = "identity";
    e.result["hypothesis"] = sampled_json(r.hypothesis, p.field);
    e.result["certified"] = r.certified;
    if (r.certified) {
      e.result["derived_frame_bounds"] = Json::array({encode_number(r.lower), encode_number(r.upper)});
      if (r.verification) e.result["verification"] = verification_json(*r.verification, p.field);
    }
    if (!r.hypothesis.verified) e.result["witness"] = witness_json(r.hypothesis.witness, p.field);
    e.verdict = from_bool(r.certified && r.verification && r.verification->passed);
    return e;
  }

  const Matrix& k2 = *p.operator_k2;
  const auto source = optimal_kframe_bounds(family, k1);
  e.result["case"] = "operator";
  e.result["source"] = certificate_json(source, p.field);
  if (!source.has_lower_bound()) throw PreconditionError("family is not a K-frame for operator_K");
  const auto r = check_operator_perturbation(k1, k2, lambda1, lambda2, p.field, sampling);
  e.result["hypothesis"] = sampled_json(r.hypothesis, p.field);
  if (r.spectral_lambda1) e.result["spectral_lambda1"] = encode_number(*r.spectral_lambda1);
  e.result["spectrally_certified"] = r.spectrally_certified;
  if (!r.hypothesis.verified) {
    e.result["witness"] = witness_json(r.hypothesis.witness, p.field);
    e.verdict = Verdict::fail;
    return e;
  }
  const auto [lower, upper] = derive_operator_perturbed_bounds(source.lower, source.upper, lambda1, lambda2);
  const auto verification = verify_bounds(family, k2, lower, upper, alphas, p.convention);
  e.result["derived_bounds"] = Json::array({encode_number(lower), encode_number(upper)});
  e.result["verification"] = verification_json(verification, p.field);
  e.verdict = from_bool(verification.passed);
  return e;
}

Evaluation cmd_perturb_family(const ProblemFile& p) {
  if (!p.family_g) throw InputError("family_G is required for this command");
  const Matrix k = operator_or_identity(p);
  const FrameFamily f(p.model(), p.family);
  const FrameFamily g(p.model(), *p.family_g);
  const auto alphas = make_alphas(p.alphas);

  Evaluation e;
  const auto source = optimal_kframe_bounds(f, k);
  e.result["source"] = certificate_json(source, p.field);
  const auto m = family_perturbation_constant(f, g);
  e.result["constant"] = {{"value", encode_number(m.constant)},
                          {"versus_first", encode_number(m.versus_first)},
                          {"versus_second", encode_number(m.versus_second)},
                          {"stronger_than_hypothesis", m.stronger_than_hypothesis}};
  if (!m.witness.empty()) e.result["constant"]["witness"] = witness_json(m.witness, p.field);

  if (f.size() > 0) {
    const auto frame_f = optimal_frame_bounds(f);
    const auto frame_g = optimal_frame_bounds(g);
    if (frame_f.has_lower_bound() && frame_g.has_lower_bound()) {
      const auto eq = frame_equivalence_constant(f, g, p.samples.value_or(kDefaultFamilySamples), p.seed);
      e.result["frame_equivalence"] = {
          {"constant", encode_number(eq.constant)},
          {"first_bounds", Json::array({encode_number(eq.first_bounds.first), encode_number(eq.first_bounds.second)})},
          {"second_bounds",
           Json::array({encode_number(eq.second_bounds.first), encode_number(eq.second_bounds.second)})},
          {"hypothesis", sampled_json(eq.hypothesis, p.field)}};
    }
  }
  if (!source.has_lower_bound()) throw PreconditionError("family is not a K-frame for operator_K");
  if (!std::isfinite(m.constant)) {
    e.result["witness"] = witness_json(m.witness, p.field);
    e.verdict = Verdict::fail;
    return e;
  }
  const auto hypothesis = check_family_perturbation(f, g, m.constant, p.samples.value_or(kDefaultFamilySamples), p.seed);
  e.result["hypothesis"] = sampled_json(hypothesis, p.field);
  const auto [lower, upper] = derive_family_perturbed_bounds(source.lower, source.upper, m.constant);
  const auto verification = verify_bounds(g, k, lower, upper, alphas, p.convention);
  e.result["derived_bounds"] = Json::array({encode_number(lower), encode_number(upper)});
  e.result["verification"] = verification_json(verification, p.field);
  e.verdict = from_bool(hypothesis.verified && verification.passed);
  return e;
}

Evaluation cmd_reconstruct(const ProblemFile& p) {
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  const auto vectors = sample_vectors(p, kDefaultReconstructSamples);

  Evaluation e;
  try {
    Json per_alpha = Json::array();
    double worst = 0.0;
    for (const auto& alpha : alphas) {
      double analysis = 0.0;
      double synthesis = 0.0;
      for (const auto& f : vectors) {
        const auto r = reconstruct(family, f, alpha);
        const double scale = 1.0 + norm(f);
        analysis = std::max(analysis, r.analysis_residual / scale);
        synthesis = std::max(synthesis, r.synthesis_residual / scale);
      }
      worst = std::max({worst, analysis, synthesis});
      per_alpha.push_back({{"alpha", alpha.value()},
                           {"dual_analysis_residual", encode_number(analysis)},
                           {"dual_synthesis_residual", encode_number(synthesis)}});
    }
    e.result["vectors"] = vectors.size();
    e.result["per_alpha"] = per_alpha;
    e.result["max_relative_residual"] = encode_number(worst);
    e.verdict = from_bool(worst <= p.tolerance);
  } catch (const SingularOperatorError& error) {
    e.result["frame_operator_invertible"] = false;
    e.result["reason"] = error.what();
    e.result["witness"] = witness_json(error.witness(), p.field);
    e.verdict = Verdict::not_applicable;
  }
  return e;
}

Evaluation cmd_douglas(const ProblemFile& p) {
  const auto& m = require(p.operator_t, "operator_T");
  const auto& n = require(p.operator_k, "operator_K");

  Evaluation e;
  const double residual = range_inclusion_residual(m, n);
  const bool included = douglas_range_inclusion(m, n);
  e.result["range_included"] = included;
  e.result["inclusion_residual"] = encode_number(residual);
  if (!included) {
    try {
      douglas_lambda(m, n);
    } catch (const HypothesisError& error) {
      if (!error.witness().empty()) e.result["witness"] = witness_json(error.witness(), p.field);
    }
    e.verdict = Verdict::fail;
    return e;
  }
  const auto factorization = douglas_factorize(m, n);
  const double lambda = factorization.lambda;
  Matrix majorant = n * conj_transpose(n);
  majorant *= Scalar(lambda * lambda);
  const auto order = psd_order_check(m * conj_transpose(m), majorant);
  e.result["lambda"] = encode_number(lambda);
  e.result["factorization_residual"] = encode_number(factorization.residual);
  e.result["factor_W"] = encode(factorization.w, p.field);
  e.result["majorization"] = {{"holds", order.holds},
                              {"min_eigenvalue", encode_number(order.min_eigenvalue)},
                              {"tolerance", encode_number(order.tolerance)}};
  const bool factored = factorization.residual <= range_inclusion_tolerance(m);
  if (!order.holds) e.result["witness"] = witness_json(order.witness, p.field);
  e.verdict = from_bool(order.holds && factored);
  return e;
}

Evaluation cmd_axioms(const ProblemFile& p) {
  const auto model = p.model();
  const auto alphas = make_alphas(p.alphas);
  const std::size_t samples = p.samples.value_or(kDefaultAxiomSamples);

  Evaluation e;
  const auto report = check_fip_axioms(model, samples, p.seed);
  Json counts = Json::object();
  for (const auto& [axiom, count] : report.violation_counts) counts[axiom] = count;
  Json witnesses = Json::array();
  for (const auto& v : report.first_violations) {
    Json points = Json::array();
    for (const auto& x : v.points) points.push_back(encode(x, p.field));
    Json parameters = Json::array();
    for (const auto& t : v.parameters) parameters.push_back(Json::array({encode_number(t.real()), encode_number(t.imag())}));
    witnesses.push_back({{"axiom", v.axiom},
                         {"points", points},
                         {"parameters", parameters},
                         {"lhs", encode_number(v.lhs)},
                         {"rhs", encode_number(v.rhs)}});
  }
  e.result["fip"] = {{"samples", report.samples}, {"violation_counts", counts}, {"passed", report.passed()}};
  if (!witnesses.empty()) e.result["fip"]["witnesses"] = witnesses;

  // Closed-form alpha-norms against bisection, inner products against polarization.
  Rng rng(p.seed);
  const std::size_t pairs = std::min<std::size_t>(samples, 100);
  double norm_gap = 0.0;
  double inner_gap = 0.0;
  Json norm_witness;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Vector x = rng.vector(p.dimension, p.field);
    const Vector y = rng.vector(p.dimension, p.field);
    for (const auto& alpha : alphas) {
      const double closed = alpha_norm(model, x, alpha);
      const double gap = std::abs(closed - alpha_norm_bisection(model, x, alpha));
      if (gap > norm_gap) {
        norm_gap = gap;
        norm_witness = {{"alpha", alpha.value()}, {"x", encode(x, p.field)}};
      }
      const Scalar direct = alpha_inner(model, x, y, alpha);
      const double relative =
          std::abs(direct - alpha_inner_polarization(model, x, y, alpha)) / std::max(1.0, std::abs(direct));
      inner_gap = std::max(inner_gap, relative);
    }
  }
  const bool norms_agree = norm_gap <= 1e-9;
  const bool inners_agree = inner_gap <= 1e-8;
  e.result["alpha_norm"] = {{"pairs", pairs}, {"max_abs_gap", encode_number(norm_gap)}, {"agree", norms_agree}};
  if (!norms_agree) e.result["alpha_norm"]["witness"] = norm_witness;
  e.result["polarization"] = {{"max_relative_gap", encode_number(inner_gap)}, {"agree", inners_agree}};
  e.verdict = from_bool(report.passed() && norms_agree && inners_agree);
  return e;
}

// Recomputes each printed claim and records contradictions.
void audit_claims(const ProblemFile& p, Evaluation& e) {
  if (p.claims.empty()) return;
  const FrameFamily family(p.model(), p.family);
  const auto alphas = make_alphas(p.alphas);
  bool premise_broken = false;
  Json audited = Json::array();
  for (const auto& claim : p.claims) {
    Json entry{{"kind", claim.kind}, {"claimed", encode_number(claim.value)}};
    if (!claim.text.empty()) entry["text"] = claim.text;
    bool contradicted = false;
    if (claim.kind == "frame_sum") {
      Json recomputed = Json::array();
      for (const auto& alpha : alphas) {
        const double value = frame_sum(family, *claim.vector, alpha, p.convention);
        recomputed.push_back({{"alpha", alpha.value()},
                              {"value", encode_number(value)},
                              {"value_over_scale", encode_number(value / family.model().scale(alpha))}});
        if (std::abs(value - claim.value) > p.tolerance * (1.0 + std::abs(claim.value))) contradicted = true;
      }
      entry["vector"] = encode(*claim.vector, p.field);
      entry["recomputed"] = recomputed;
    } else {
      const auto certificate = optimal_frame_bounds(family);
      const auto verification =
          verify_bounds(family, Matrix::identity(p.dimension), claim.value, certificate.upper, alphas, p.convention);
      entry["recomputed"] = {{"optimal_lower", encode_number(certificate.lower)},
                             {"verification", verification_json(verification, p.field)}};
      contradicted = !verification.passed;
    }
    entry["contradicted"] = contradicted;
    entry["premise_of_verdict"] = claim.premise_of_verdict;
    audited.push_back(entry);
    if (contradicted) {
      e.errata.push_back(entry);
      premise_broken = premise_broken || claim.premise_of_verdict;
    }
  }
  e.result["claims"] = audited;
  if (premise_broken) {
    e.result["computed_verdict"] = to_string(e.verdict);
    e.result["verdict_withheld"] = "a premise of the printed verdict does not hold on recomputation";
    e.verdict = Verdict::not_applicable;
  }
}

Evaluation dispatch(const std::string& command, const ProblemFile& p) {
  if (command == "check-frame") return cmd_check_frame(p);
  if (command == "check-kframe") return cmd_check_kframe(p);
  if (command == "bounds") return cmd_bounds(p);
  if (command == "atomic") return cmd_atomic(p);
  if (command == "transform") return cmd_transform(p);
  if (command == "perturb-operator") return cmd_perturb_operator(p);
  if (command == "perturb-family") return cmd_perturb_family(p);
  if (command == "reconstruct") return cmd_reconstruct(p);
  if (command == "douglas") return cmd_douglas(p);
  if (command == "axioms") return cmd_axioms(p);
  throw InputError("unknown command: " + command);
}

Json envelope(const std::string& command) {
  return {{"command", command}, {"tool", {{"name", kToolName}, {"version", kToolVersion}}}};
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
    case Verdict::error: return "error";
  }
  return "error";
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail:
    case Verdict::not_applicable: return 1;
    case Verdict::error: return 2;
  }
  return 2;
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands = {"check-frame",      "check-kframe",   "bounds",     "atomic",
                                                    "transform",        "perturb-operator", "perturb-family",
                                                    "reconstruct",      "douglas",        "axioms"};
  return commands;
}

CommandOutcome error_outcome(const std::string& command, const std::string& kind, const std::string& message) {
  CommandOutcome out;
  out.report = envelope(command);
  out.report["verdict"] = to_string(Verdict::error);
  out.report["error"] = {{"kind", kind}, {"message", message}};
  out.verdict = Verdict::error;
  out.exit_code = exit_code(Verdict::error);
  return out;
}

CommandOutcome run_command(const std::string& command, const ProblemFile& problem) {
  Evaluation e;
  try {
    const auto& known = known_commands();
    if (std::find(known.begin(), known.end(), command) == known.end())
      return error_outcome(command, "usage", "unknown command: " + command);
    try {
      e = dispatch(command, problem);
    } catch (const PreconditionError& error) {
      e.result["precondition"] = error.what();
      e.verdict = Verdict::not_applicable;
    }
    audit_claims(problem, e);
  } catch (const InputError& error) {
    return error_outcome(command, "input", error.what());
  } catch (const std::exception& error) {
    return error_outcome(command, "internal", error.what());
  }

  CommandOutcome out;
  out.report = envelope(command);
  out.report["input_digest"] = input_digest(problem);
  out.report["verdict"] = to_string(e.verdict);
  out.report["alphas"] = problem.alphas;
  out.report["convention"] = to_string(problem.convention);
  out.report["seed"] = problem.seed;
  out.report["tolerance"] = problem.tolerance;
  out.report["result"] = e.result;
  out.report["errata"] = e.errata;
  out.verdict = e.verdict;
  out.exit_code = exit_code(e.verdict);
  return out;
}

CommandOutcome run_file(const std::string& command, const std::filesystem::path& path, const Overrides& overrides) {
  ProblemFile problem;
  try {
    problem = load_problem(path);
    apply(overrides, problem);
  } catch (const InputError& error) {
    auto out = error_outcome(command, "input", error.what());
    out.report["file"] = path.generic_string();
    return out;
  }
  return run_command(command, problem);
}

}  // namespace fuzzyframes::cli
