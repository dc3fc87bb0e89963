#include "binci/aux_sources.hpp"

#include <cstdio>
#include <stdexcept>

namespace binci {

bool in_range(RangeConvention convention, double x) {
  switch (convention) {
    case RangeConvention::OpenOpen:
      return x > 0.0 && x < 1.0;
    case RangeConvention::ClosedOpen:
      return x >= 0.0 && x < 1.0;
    case RangeConvention::OpenClosed:
      return x > 0.0 && x <= 1.0;
  }
  return false;
}

double weyl(double lambda, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("weyl index starts at 1");
  const long double x = static_cast<long double>(k) * static_cast<long double>(lambda);
  double frac = static_cast<double>(x - std::floor(x));
  // Rounding to double can land on 1.0 when the fractional part is within
  // half an ulp of 1.
  if (frac >= 1.0) frac = 0.0;
  return frac;
}

double van_der_corput(std::uint64_t k, int base) {
  if (k < 1) throw std::invalid_argument("van der Corput index starts at 1");
  if (base < 2) throw std::invalid_argument("van der Corput base must be >= 2");
  const auto b = static_cast<std::uint64_t>(base);
  double result = 0.0;
  double scale = 1.0 / base;
  while (k != 0) {
    result += scale * static_cast<double>(k % b);
    k /= b;
    scale /= base;
  }
  return result;
}

void validate_permutation(std::span<const int> perm) {
  const auto n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("periodic sequence needs period N >= 2");
  std::vector<bool> seen(perm.size() + 1, false);
  for (int p : perm) {
    if (p < 1 || p > n || seen[p]) {
      throw std::invalid_argument("periodic sequence levels must be a permutation of 1..N");
    }
    seen[p] = true;
  }
}

PeriodicValue periodic_perm(std::span<const int> perm, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("periodic sequence index starts at 1");
  validate_permutation(perm);
  const auto n = perm.size();
  return PeriodicValue{perm[(k - 1) % n], static_cast<int>(n)};
}

double uniform_open01(std::mt19937_64& engine) {
  for (;;) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

AuxSource::AuxSource(AuxParams params) : params_(std::move(params)) {}

AuxSource AuxSource::seeded_uniform(std::uint64_t seed) {
  AuxSource s(SeededUniformParams{seed});
  s.engine_.seed(seed);
  return s;
}

AuxSource AuxSource::weyl(double lambda) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("weyl lambda must be finite");
  return AuxSource(WeylParams{lambda});
}

AuxSource AuxSource::van_der_corput(int base) {
  if (base < 2) throw std::invalid_argument("van der Corput base must be >= 2");
  return AuxSource(VanDerCorputParams{base});
}

AuxSource AuxSource::periodic_perm(std::vector<int> perm) {
  validate_permutation(perm);
  return AuxSource(PeriodicPermParams{std::move(perm)});
}

RangeConvention AuxSource::convention() const {
  struct Visitor {
    RangeConvention operator()(const SeededUniformParams&) const {
      return RangeConvention::OpenOpen;
    }
    RangeConvention operator()(const WeylParams&) const { return RangeConvention::ClosedOpen; }
    RangeConvention operator()(const VanDerCorputParams&) const {
      return RangeConvention::ClosedOpen;
    }
    RangeConvention operator()(const PeriodicPermParams&) const {
      return RangeConvention::OpenClosed;
    }
  };
  return std::visit(Visitor{}, params_);
}

AuxDraw AuxSource::next() {
  ++k_;
  AuxDraw draw{};
  if (std::holds_alternative<SeededUniformParams>(params_)) {
    const double v = uniform_open01(engine_);
    draw = {v, v};
  } else if (auto* w = std::get_if<WeylParams>(&params_)) {
    const double v = binci::weyl(w->lambda, k_);
    draw = {v, v};
  } else if (auto* c = std::get_if<VanDerCorputParams>(&params_)) {
    const double v = binci::van_der_corput(k_, c->base);
    draw = {v, v};
  } else {
    const auto& p = std::get<PeriodicPermParams>(params_);
    const auto n = p.perm.size();
    const PeriodicValue pv{p.perm[(k_ - 1) % n], static_cast<int>(n)};
    draw = {pv.w(), pv.w_tilde()};
    if (!in_range(RangeConvention::ClosedOpen, draw.lower)) {
      throw std::logic_error("periodic companion value left [0,1)");
    }
  }
  if (!in_range(convention(), draw.upper)) {
    throw std::logic_error(describe() + " emitted a value outside its declared range");
  }
  return draw;
}

std::string AuxSource::kind_name() const {
  struct Visitor {
    std::string operator()(const SeededUniformParams&) const { return "uniform"; }
    std::string operator()(const WeylParams&) const { return "weyl"; }
    std::string operator()(const VanDerCorputParams&) const { return "vdc"; }
    std::string operator()(const PeriodicPermParams&) const { return "perm"; }
  };
  return std::visit(Visitor{}, params_);
}

std::string AuxSource::describe() const {
  char buf[64];
  if (auto* u = std::get_if<SeededUniformParams>(&params_)) {
    return "uniform(generator=mt19937_64,seed=" + std::to_string(u->seed) + ")";
  }
  if (auto* w = std::get_if<WeylParams>(&params_)) {
    std::snprintf(buf, sizeof buf, "%.12g", w->lambda);
    return std::string("weyl(lambda=") + buf + ")";
  }
  if (auto* c = std::get_if<VanDerCorputParams>(&params_)) {
    return "vdc(base=" + std::to_string(c->base) + ")";
  }
  const auto& p = std::get<PeriodicPermParams>(params_);
  std::string s = "perm(N=" + std::to_string(p.perm.size()) + ",perm=";
  for (std::size_t i = 0; i < p.perm.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p.perm[i]);
  }
  return s + ")";
}

double uniform_draw(AuxSource& source) {
  if (!std::holds_alternative<SeededUniformParams>(source.params())) {
    throw std::invalid_argument("uniform_draw needs a seeded uniform source");
  }
  return source.next().upper;
}

}  // namespace binci
