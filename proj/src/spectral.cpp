#include "thetaper/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace thetaper::spectral {

namespace {

Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

// (e^{zT} - 1) / z without cancellation near z = 0.
Complex exp_integral(Complex z, double period) {
  const Complex zt = z * period;
  if (std::abs(zt) < 1e-4) {
    return period * (1.0 + zt / 2.0 + zt * zt / 6.0 + zt * zt * zt / 24.0);
  }
  return (std::exp(zt) - 1.0) / z;
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

ComplexVector dft(const ComplexVector& v) {
  ComplexVector out(v.size());
  if (v.size() == 0) return out;
  engine().fwd(out.data(), v.data(), v.size());
  return out;
}

ComplexVector idft(const ComplexVector& c) {
  ComplexVector out(c.size());
  if (c.size() == 0) return out;
  engine().inv(out.data(), c.data(), c.size());
  return out;
}

ComplexVector dft_axis(const ComplexVector& v, int n, int axis) {
  ComplexVector out(v.size());
  ComplexVector line(n), res(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k)
      line[k] = axis == 1 ? v[Index(r) * n + k] : v[Index(k) * n + r];
    engine().fwd(res.data(), line.data(), n);
    for (int k = 0; k < n; ++k) {
      if (axis == 1)
        out[Index(r) * n + k] = res[k];
      else
        out[Index(k) * n + r] = res[k];
    }
  }
  return out;
}

ComplexVector idft_axis(const ComplexVector& c, int n, int axis) {
  ComplexVector out(c.size());
  ComplexVector line(n), res(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k)
      line[k] = axis == 1 ? c[Index(r) * n + k] : c[Index(k) * n + r];
    engine().inv(res.data(), line.data(), n);
    for (int k = 0; k < n; ++k) {
      if (axis == 1)
        out[Index(r) * n + k] = res[k];
      else
        out[Index(k) * n + r] = res[k];
    }
  }
  return out;
}

ComplexVector dft2(const ComplexVector& v, int n) {
  return dft_axis(dft_axis(v, n, 1), n, 0);
}

ComplexVector idft2(const ComplexVector& c, int n) {
  return idft_axis(idft_axis(c, n, 1), n, 0);
}

ComplexVector periodic_coefficients(const ComplexVector& samples) {
  return dft(samples) / double(samples.size());
}

Complex interpolate(const ComplexVector& c, double y) {
  const int n = static_cast<int>(c.size());
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const int nu = frequency(j, n);
    if (n % 2 == 0 && j == n / 2) {
      acc += c[j] * std::cos(nu * y);
    } else {
      acc += c[j] * std::polar(1.0, nu * y);
    }
  }
  return acc;
}

ComplexVector exp_weighted_weights(Complex beta, int n, double period) {
  ComplexVector moments(n);
  const double omega = kTwoPi / period;
  for (int j = 0; j < n; ++j) {
    const int nu = frequency(j, n);
    if (n % 2 == 0 && j == n / 2) {
      const Complex up = exp_integral(-beta + Complex(0, omega * nu), period);
      const Complex down = exp_integral(-beta - Complex(0, omega * nu), period);
      moments[j] = 0.5 * (up + down);
    } else {
      moments[j] = exp_integral(-beta + Complex(0, omega * nu), period);
    }
  }
  return dft(moments) / double(n);
}

Antiderivative cumulative_integral(const ComplexVector& samples,
                                   double period) {
  const int n = static_cast<int>(samples.size());
  const ComplexVector c = periodic_coefficients(samples);
  ComplexVector d = ComplexVector::Zero(n);
  Complex at_zero = 0.0;
  const double omega = kTwoPi / period;
  for (int j = 1; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) continue;
    d[j] = c[j] / Complex(0, omega * frequency(j, n));
    at_zero += d[j];
  }
  ComplexVector g = idft(d);
  g.array() -= at_zero;
  return {c[0], g};
}

ComplexVector derivative(const ComplexVector& samples, double period) {
  const int n = static_cast<int>(samples.size());
  ComplexVector c = dft(samples);
  const double omega = kTwoPi / period;
  for (int j = 0; j < n; ++j) {
    if (n % 2 == 0 && j == n / 2) {
      c[j] = 0.0;
    } else {
      c[j] *= Complex(0, omega * frequency(j, n));
    }
  }
  return idft(c) / double(n);
}

ComplexVector resample(const ComplexVector& samples, int m) {
  const int n = static_cast<int>(samples.size());
  if (n == m) return samples;
  const ComplexVector c = periodic_coefficients(samples);
  ComplexVector d = ComplexVector::Zero(m);
  for (int j = 0; j < n; ++j) {
    const int nu = frequency(j, n);
    if (2 * std::abs(nu) < m) {
      if (n % 2 == 0 && j == n / 2) {
        // split the cosine between +nu and -nu
        d[bin(nu, m)] += 0.5 * c[j];
        d[bin(-nu, m)] += 0.5 * c[j];
      } else {
        d[bin(nu, m)] += c[j];
      }
    } else if (2 * std::abs(nu) == m) {
      d[m / 2] += c[j];
    }
  }
  return idft(d);
}

double high_frequency_fraction(const ComplexVector& samples) {
  const int n = static_cast<int>(samples.size());
  const ComplexVector c = dft(samples);
  double total = 0.0, high = 0.0;
  for (int j = 0; j < n; ++j) {
    const double e = std::norm(c[j]);
    total += e;
    if (4 * std::abs(frequency(j, n)) >= n) high += e;
  }
  return total > 0.0 ? high / total : 0.0;
}

double compensated_sum(std::span<const double> terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

ComplexVector circular_convolve(const ComplexVector& w,
                                const ComplexVector& p) {
  if (w.size() != p.size())
    throw std::invalid_argument("circular_convolve: length mismatch");
  const ComplexVector prod = (dft(w).array() * dft(p).array()).matrix();
  return idft(prod) / double(w.size());
}

}  // namespace thetaper::spectral
