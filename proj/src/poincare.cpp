#include "thetaper/poincare.hpp"

#include <cmath>
#include <vector>

#include "thetaper/fourier.hpp"
#include "thetaper/spectral.hpp"

namespace thetaper {

PoincareCase poincare_case(const ThetaSpec& spec) {
  PoincareCase pc;
  double d2 = 0.0;
  Mode nearest{0, 0};
  for (int j = 0; j < spec.dim(); ++j) {
    const Complex v = Complex(0.0, 1.0) * spec.log(j) / kTwoPi;
    pc.v[j] = v;
    nearest[j] = static_cast<int>(std::lround(v.real()));
    const double dr = v.real() - nearest[j];
    d2 += dr * dr + v.imag() * v.imag();
  }
  pc.distance = std::sqrt(d2);
  const double scale = kTwoPi / spec.period();
  if (pc.distance < kCriticalTol) {
    pc.critical_mode = nearest;
    pc.constant = scale;
    pc.near_critical = pc.distance > 0.0;
  } else {
    pc.constant = scale * pc.distance;
  }
  return pc;
}

CoeffTable project_admissible(const CoeffTable& c, const PoincareCase& pc) {
  CoeffTable out = c;
  if (pc.critical_mode && out.contains(*pc.critical_mode)) out[*pc.critical_mode] = 0.0;
  return out;
}

Mode sharp_mode(const PoincareCase& pc, int dim) {
  Mode xi{0, 0};
  for (int j = 0; j < dim; ++j) xi[j] = static_cast<int>(std::lround(pc.v[j].real()));
  if (pc.critical_mode) xi[0] += 1;
  return xi;
}

PoincareReport poincare_verify(const CoeffTable& table) {
  const PoincareCase pc = poincare_case(table.spec());
  const CoeffTable c = project_admissible(table, pc);
  const double scale = kTwoPi / c.spec().period();
  std::vector<double> grad(c.size()), mass(c.size());
  for (Index i = 0; i < c.size(); ++i) {
    const Mode xi = c.mode_at(i);
    double factor = 0.0;
    for (int j = 0; j < c.dim(); ++j) factor += std::norm(Complex(xi[j]) - pc.v[j]);
    const double e = std::norm(c.entries()[i]);
    grad[i] = scale * scale * factor * e;
    mass[i] = e;
  }
  PoincareReport r;
  r.grad_norm = std::sqrt(spectral::compensated_sum(grad));
  r.f_norm = std::sqrt(spectral::compensated_sum(mass));
  r.constant = pc.constant;
  r.near_critical = pc.near_critical;
  if (r.f_norm > 0.0) r.ratio = r.grad_norm / (r.constant * r.f_norm);
  r.holds = r.ratio >= 1.0 - 1e-12;
  return r;
}

PoincareReport poincare_verify(const SampledField& f) {
  return poincare_verify(analyze(f, f.size() / 2 - 1));
}

}  // namespace thetaper
