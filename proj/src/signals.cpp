#include "bladedisk/signals.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>

#include "bladedisk/errors.hpp"

namespace bladedisk {

bool TimeSeries::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw ValidationError("unknown channel: " + name);
}

std::vector<double> radial(const std::vector<double>& u_y, const std::vector<double>& u_z) {
  if (u_y.size() != u_z.size())
    throw ValidationError("radial: channel lengths differ");
  std::vector<double> r(u_y.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = std::hypot(u_y[i], u_z[i]);
  return r;
}

namespace {

std::vector<std::complex<double>> forward_fft(const std::vector<double>& x) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.fwd(out, x);
  return out;
}

double wrapped_phase(const std::complex<double>& z) {
  double p = std::atan2(z.imag(), z.real());
  if (p <= -pi) p = pi;  // land exactly on (-pi, pi]
  return p;
}

}  // namespace

Spectrum spectrum(const std::vector<double>& channel, double dt) {
  const size_t n = channel.size();
  if (n < 2) throw ValidationError("spectrum needs at least two samples");
  if (dt <= 0) throw ValidationError("spectrum dt must be positive");
  const auto bins = forward_fft(channel);
  const size_t half = n / 2;
  Spectrum s;
  s.frequencies.resize(half + 1);
  s.amplitude.resize(half + 1);
  s.phase.resize(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    s.frequencies[k] = double(k) / (double(n) * dt);
    const double mag = std::abs(bins[k]);
    const bool edge = (k == 0) || (n % 2 == 0 && k == half);
    s.amplitude[k] = (edge ? 1.0 : 2.0) * mag / double(n);
    s.phase[k] = wrapped_phase(bins[k]);
  }
  return s;
}

std::vector<double> hann_window(int length) {
  if (length < 1) throw ValidationError("window length must be positive");
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * pi * i / length));
  return w;
}

Spectrogram stft(const std::vector<double>& channel, double dt, int window_length, int hop) {
  const int n = int(channel.size());
  if (window_length < 2) throw ValidationError("stft window must span at least two samples");
  if (window_length > n) throw ValidationError("stft window exceeds the signal length");
  if (hop < 1 || hop > window_length)
    throw ValidationError("stft hop must lie in [1, window_length]");
  Spectrogram out;
  out.window_length = window_length;
  out.hop = hop;
  out.window = hann_window(window_length);
  double wsum = 0;
  for (double w : out.window) wsum += w;

  const int half = window_length / 2;
  out.frequencies.resize(half + 1);
  for (int k = 0; k <= half; ++k)
    out.frequencies[k] = double(k) / (double(window_length) * dt);

  const int slices = (n - window_length) / hop + 1;
  out.times.resize(slices);
  out.grid.setZero(half + 1, slices);
  std::vector<double> seg(window_length);
  for (int si = 0; si < slices; ++si) {
    const int start = si * hop;
    out.times[si] = (start + 0.5 * window_length) * dt;
    for (int i = 0; i < window_length; ++i) seg[i] = channel[start + i] * out.window[i];
    const auto bins = forward_fft(seg);
    for (int k = 0; k <= half; ++k) {
      const bool edge = (k == 0) || (window_length % 2 == 0 && k == half);
      out.grid(k, si) = (edge ? 1.0 : 2.0) * std::abs(bins[k]) / wsum;
    }
  }
  return out;
}

Spectrum stage_difference_spectrum(const std::vector<double>& stage1_radial,
                                   const std::vector<double>& stage2_radial, double dt) {
  if (stage1_radial.size() != stage2_radial.size())
    throw ValidationError("stage_difference_spectrum: channel lengths differ");
  std::vector<double> diff(stage1_radial.size());
  for (size_t i = 0; i < diff.size(); ++i) diff[i] = stage2_radial[i] - stage1_radial[i];
  return spectrum(diff, dt);
}

}  // namespace bladedisk
