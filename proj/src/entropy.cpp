#include "frobent/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "frobent/error.hpp"

namespace frobent {

GeneratorSpec GeneratorSpec::canonical(const RingSpec& ring) {
  GeneratorSpec g;
  if (ring.is_regular()) {
    g.kind = GeneratorKind::Ring;
  } else if (ring.dim() == 1) {
    g.kind = GeneratorKind::Canonical;
    g.x = annihilator_element(ring);
  } else {
    g.kind = GeneratorKind::RingPlusResidue;
  }
  return g;
}

GradedModule GeneratorSpec::module(const RingSpec& ring) const {
  switch (kind) {
    case GeneratorKind::Ring:
      return GradedModule::ring(ring);
    case GeneratorKind::Canonical:
      return GradedModule::ring(ring)
          .direct_sum(GradedModule::principal_quotient(ring, x))
          .direct_sum(GradedModule::residue_field(ring));
    case GeneratorKind::RingPlusResidue:
      return GradedModule::ring(ring).direct_sum(GradedModule::residue_field(ring));
  }
  throw Error("unknown generator kind");
}

std::string GeneratorSpec::to_string() const {
  std::string s;
  switch (kind) {
    case GeneratorKind::Ring:
      s = "R";
      break;
    case GeneratorKind::Canonical:
      s = "R + R/t^" + frobent::to_string(x) + "R + k";
      break;
    case GeneratorKind::RingPlusResidue:
      s = "R + k";
      break;
  }
  for (const auto& e : extra) s += " + " + e;
  return s;
}

double BoundTerm::value(double t) const { return coefficient * std::exp(shift * t); }

double UpperBound::value(double t) const {
  double v = 0.0;
  for (const auto& term : terms) v += term.value(t);
  return v;
}

UpperBound UpperBound::shifted(int n) const {
  UpperBound out = *this;
  for (auto& term : out.terms) term.shift += n;
  return out;
}

LowerBound lower_bound(const BoundConstants& constants, std::uint64_t residue_power, std::uint64_t L_e, double t) {
  if (constants.B == 0) throw DomainError("lower bound needs B > 0");
  LowerBound lb;
  lb.B = constants.B;
  lb.N = constants.N;
  lb.t = t;
  lb.D_t = static_cast<double>(constants.B) * std::exp(constants.N * std::abs(t));
  lb.residue_power = residue_power;
  lb.L_e = L_e;
  lb.value = static_cast<double>(residue_power) * static_cast<double>(L_e) / lb.D_t;
  return lb;
}

UpperBound upper_bound(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator,
                       const UpperInputs& in) {
  UpperBound ub;
  ub.experimental = phi.kind == EndomorphismKind::Scale;
  const auto rp = static_cast<double>(in.residue_power);
  switch (generator.kind) {
    case GeneratorKind::Ring: {
      // eR is free of rank [phi_* k : k]^e u^{de}
      const std::int64_t rank = checked_power(phi.base, static_cast<int>(ring.dim()) * in.e);
      ub.terms.push_back({"rank(eR)", rp * static_cast<double>(rank), 0});
      return ub;
    }
    case GeneratorKind::Canonical: {
      if (in.betti.size() != 3) throw Error("canonical upper bound needs beta_0..beta_2 of eR");
      const double ql = static_cast<double>(in.quotient_length);
      ub.terms.push_back({"tower u^e * l(e(R/xR))", static_cast<double>(in.tower_factor) * rp * ql, -1});
      for (int i = 0; i <= 2; ++i) {
        ub.terms.push_back({"beta_" + std::to_string(i) + "(eR)", static_cast<double>(in.betti[static_cast<std::size_t>(i)]),
                            -2 + i});
      }
      ub.terms.push_back({"ek", rp, 0});
      ub.terms.push_back({"e(R/xR)", rp * ql, 0});
      return ub;
    }
    case GeneratorKind::RingPlusResidue:
      break;
  }
  throw UnsupportedError("upper bounds for non-regular rings of dimension " + std::to_string(ring.dim()) +
                         " are not supported");
}

UpperInputs upper_inputs(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator, int e,
                         const TruncationWindow& window, unsigned workers) {
  UpperInputs in;
  in.e = e;
  for (int i = 0; i < e; ++i) in.residue_power *= phi.residue_degree;
  in.tower_factor = checked_power(phi.base, e);
  if (generator.kind == GeneratorKind::Canonical) {
    in.quotient_length = complement_count(ring.monoid(), ExponentSet(ring.monoid(), {generator.x})).value;
    const BettiTable t = minimal_resolution(pushforward(GradedModule::ring(ring), phi, e), 2, window, workers);
    if (!t.stabilized()) {
      throw WindowError("Betti numbers of eR did not stabilize at e = " + std::to_string(e));
    }
    for (int i = 0; i <= 2; ++i) in.betti.push_back(t.beta(static_cast<std::size_t>(i)));
  }
  return in;
}

BoundCertificate certify(const RingSpec& ring, const EndomorphismSpec& phi, const GeneratorSpec& generator, int e,
                         double t, const TruncationWindow& window) {
  const BoundConstants constants =
      bound_constants(generator.module(ring), KoszulComplex::on_maximal_ideal(ring), window);
  const Count L = complement_count(ring.monoid(), phi_power_ideal(ring, phi, e));
  BoundCertificate cert;
  cert.e = e;
  cert.t = t;
  const UpperInputs in = generator.kind == GeneratorKind::RingPlusResidue
                             ? UpperInputs{e, 1, checked_power(phi.base, e), 0, {}}
                             : upper_inputs(ring, phi, generator, e, window);
  std::uint64_t rp = 1;
  for (int i = 0; i < e; ++i) rp *= phi.residue_degree;
  cert.lower = lower_bound(constants, rp, L.value, t);
  if (generator.kind != GeneratorKind::RingPlusResidue) {
    cert.upper = upper_bound(ring, phi, generator, in);
    cert.upper_value = cert.upper->value(t);
  }
  return cert;
}

std::string to_string(Growth g) {
  switch (g) {
    case Growth::O:
      return "O";
    case Growth::Omega:
      return "Omega";
    case Growth::Theta:
      return "Theta";
    case Growth::Inconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

}  // namespace

double fitted_rate(const std::vector<double>& values, int first_e, int* tail_start) {
  if (values.size() < 2) throw DomainError("a rate fit needs at least two values");
  const std::size_t from = std::min(values.size() / 2, values.size() - 2);
  std::vector<double> x, y;
  for (std::size_t i = from; i < values.size(); ++i) {
    if (!(values[i] > 0)) throw DomainError("rate fits need positive values");
    x.push_back(first_e + static_cast<double>(i));
    y.push_back(std::log(values[i]));
  }
  if (tail_start != nullptr) *tail_start = first_e + static_cast<int>(from);
  return slope(x, y);
}

GrowthReport growth_classify(const std::vector<double>& values, double u, int first_e, const GrowthOptions& options) {
  GrowthReport r;
  r.values = values;
  r.first_e = first_e;
  r.target = std::log(u);
  if (values.size() < 6) {
    r.note = "fewer than 6 values";
    return r;
  }
  if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0); })) {
    r.note = "sequence is not positive";
    return r;
  }
  r.rate = fitted_rate(values, first_e, &r.tail_start);

  const std::size_t from = std::min(values.size() / 2, values.size() - 3);
  std::vector<double> es, logs, ratios;
  for (std::size_t i = from; i < values.size(); ++i) {
    const double e = first_e + static_cast<double>(i);
    const double ratio = values[i] / std::pow(u, e);
    es.push_back(e);
    ratios.push_back(ratio);
    logs.push_back(std::log(ratio));
  }
  r.tail_start = first_e + static_cast<int>(from);
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  bool increasing = true, decreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    increasing = increasing && ratios[i] > ratios[i - 1];
    decreasing = decreasing && ratios[i] < ratios[i - 1];
  }
  const double drift = slope(es, logs);
  if (increasing && drift > options.drift) {
    r.growth = Growth::Omega;
    r.c_low = lo;
    r.note = "ratio to u^e increases along the tail";
  } else if (decreasing && drift < -options.drift) {
    r.growth = Growth::O;
    r.c_high = hi;
    r.note = "ratio to u^e decreases along the tail";
  } else if (hi / lo <= options.ratio_bound) {
    r.growth = Growth::Theta;
    r.c_low = lo;
    r.c_high = hi;
  } else {
    r.note = "tail ratios spread beyond the ratio bound";
  }

  // a_{m+n} <= a_m a_n wherever all three indices are available
  r.submultiplicative = true;
  const int last = first_e + static_cast<int>(values.size()) - 1;
  for (int m = std::max(first_e, 1); m <= last; ++m) {
    for (int n = m; m + n <= last; ++n) {
      const double amn = values[static_cast<std::size_t>(m + n - first_e)];
      if (amn > values[static_cast<std::size_t>(m - first_e)] * values[static_cast<std::size_t>(n - first_e)]) {
        r.submultiplicative = false;
      }
    }
  }
  return r;
}

LocalEntropy local_entropy(const RingSpec& ring, const EndomorphismSpec& phi, int e_max, unsigned workers,
                           const GrowthOptions& options) {
  if (e_max < 4) throw ConfigError("local_entropy needs e_max >= 4");
  LocalEntropy out;
  out.lengths = length_sequence(ring, phi, e_max, workers);
  std::vector<double> tail(out.lengths.begin() + 1, out.lengths.end());
  const double u = std::pow(static_cast<double>(phi.base), static_cast<double>(ring.dim()));
  out.report = growth_classify(tail, u, 1, options);
  out.report.name = "L_e";
  out.report.rate = fitted_rate(tail, 1, &out.report.tail_start);
  for (int e = 1; e <= e_max; ++e) out.sandwich = out.sandwich && sandwich_check(ring, phi, e);
  return out;
}

std::string to_string(Functor f) {
  switch (f) {
    case Functor::PushforwardDb:
      return "pushforward_Db";
    case Functor::PushforwardDbfl:
      return "pushforward_Dbfl";
    case Functor::PullbackDpf:
      return "pullback_Dpf";
    case Functor::PullbackDpffl:
      return "pullback_Dpffl";
  }
  return "?";
}

ClosedForm closed_form(Functor functor, const RingSpec& ring, const EndomorphismSpec& phi) {
  const auto d = static_cast<double>(ring.dim());
  if (phi.kind == EndomorphismKind::Scale) return {d * std::log(static_cast<double>(phi.base)), true};
  const double logp = std::log(static_cast<double>(ring.characteristic()));
  const double logk = std::log(static_cast<double>(p_degree(ring.field())));
  switch (functor) {
    case Functor::PushforwardDb:
      return {d * logp + logk, false};
    case Functor::PushforwardDbfl:
      return {logk, false};
    case Functor::PullbackDpf:
      return {0.0, false};
    case Functor::PullbackDpffl:
      return {d * logp, false};
  }
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      break;
  }
  return "INCONCLUSIVE";
}

EntropyEstimate entropy_estimate(const std::vector<BoundCertificate>& certificates, double closed,
                                 double tolerance) {
  std::vector<const BoundCertificate*> usable;
  for (const auto& c : certificates) {
    if (c.e >= 1) usable.push_back(&c);
  }
  std::sort(usable.begin(), usable.end(), [](auto* a, auto* b) { return a->e < b->e; });
  EntropyEstimate est;
  est.closed_form = closed;
  est.tolerance = tolerance;
  est.points = usable.size();
  if (!usable.empty()) est.t = usable.front()->t;
  if (usable.size() < 2) return est;
  for (std::size_t i = 1; i < usable.size(); ++i) {
    if (usable[i]->e != usable[i - 1]->e + 1 || usable[i]->t != est.t) {
      throw DomainError("entropy_estimate needs consecutive e at a single t");
    }
  }
  std::vector<double> lower, upper;
  bool have_upper = true;
  for (const auto* c : usable) {
    lower.push_back(c->lower.value);
    have_upper = have_upper && c->upper.has_value();
    upper.push_back(c->upper_value);
  }
  est.alpha_low = fitted_rate(lower, usable.front()->e);
  if (have_upper) est.alpha_high = fitted_rate(upper, usable.front()->e);
  if (usable.size() < 4) return est;
  const bool above = closed >= est.alpha_low - tolerance;
  const bool below = !est.alpha_high || closed <= *est.alpha_high + tolerance;
  est.verdict = above && below ? Verdict::Pass : Verdict::Fail;
  return est;
}

}  // namespace frobent
