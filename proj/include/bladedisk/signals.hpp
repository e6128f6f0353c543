#pragma once

#include <string>
#include <vector>

#include "bladedisk/types.hpp"

namespace bladedisk {

struct TimeSeries {
  double dt = 0;
  double start = 0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // one sequence per name, equal lengths
  size_t samples() const { return values.empty() ? 0 : values.front().size(); }
  double time(size_t k) const { return start + dt * double(k); }
  bool has(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
};

std::vector<double> radial(const std::vector<double>& u_y, const std::vector<double>& u_z);

struct Spectrum {
  std::vector<double> frequencies;  // Hz, 0..Nyquist
  std::vector<double> amplitude;    // single-sided, sinusoid-calibrated
  std::vector<double> phase;        // radians in (-pi, pi]
};

Spectrum spectrum(const std::vector<double>& channel, double dt);

struct Spectrogram {
  int window_length = 0;
  int hop = 0;
  std::vector<double> window;       // taper weights
  std::vector<double> times;        // window centers, s
  std::vector<double> frequencies;  // Hz
  Matrix grid;                      // frequencies.size() x times.size()
};

std::vector<double> hann_window(int length);

Spectrogram stft(const std::vector<double>& channel, double dt, int window_length, int hop);

Spectrum stage_difference_spectrum(const std::vector<double>& stage1_radial,
                                   const std::vector<double>& stage2_radial, double dt);

}  // namespace bladedisk
