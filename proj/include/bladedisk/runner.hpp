#pragma once

#include <string>

#include "bladedisk/scenario.hpp"
#include "bladedisk/signals.hpp"

namespace bladedisk {

TimeSeries read_timeseries_csv(const std::string& path);
void write_timeseries_csv(const std::string& path, const TimeSeries& series);

// Runs the scenario and writes timeseries.csv, radial_stage<k>.csv per stage,
// and the run.json manifest into out_dir.
void simulate_to_directory(const Scenario& scenario, const std::string& out_dir);

void run_simulate(const std::string& config_path, const std::string& out_dir);
// JSON text of the modal report for one of the cases blade, shaft, assembly.
std::string modal_report_text(const Scenario& scenario, const std::string& case_name, int count);
void run_modal(const std::string& config_path, const std::string& case_name, int count,
               const std::string& out_path);
void run_spectrum(const std::string& input_csv, const std::string& channel, bool use_stft,
                  double window_seconds, double overlap, const std::string& out_path);

// Returns the number of failed runs (0 = full success).
int run_sweep(const std::string& sweep_path, int jobs, const std::string& out_dir);

}  // namespace bladedisk
