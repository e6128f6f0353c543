#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bladedisk/errors.hpp"
#include "bladedisk/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reduced-order bladed-disk rotor simulator: transient response, "
               "modal analysis, and spectral post-processing"};
  app.require_subcommand(1);

  std::string config_path, out_path, case_name = "assembly", input_path, channel;
  int count = 5, jobs = 1;
  bool use_stft = false;
  double window_seconds = 0.1, overlap = 0.5;

  CLI::App* sim = app.add_subcommand("simulate", "Run a transient scenario");
  sim->add_option("--config", config_path, "Scenario config (JSON)")->required();
  sim->add_option("--out", out_path, "Output directory")->required();

  CLI::App* modal = app.add_subcommand("modal", "Natural frequencies of a sub-system");
  modal->add_option("--config", config_path, "Scenario config (JSON)")->required();
  modal->add_option("--case", case_name, "blade, shaft, or assembly")
      ->check(CLI::IsMember({"blade", "shaft", "assembly"}));
  modal->add_option("--count", count, "Number of modes to report");
  modal->add_option("--out", out_path, "Output JSON path")->required();

  CLI::App* spec = app.add_subcommand("spectrum", "Fourier spectrum of a recorded channel");
  spec->add_option("--input", input_path, "timeseries CSV")->required();
  spec->add_option("--channel", channel, "Channel name from the CSV header")->required();
  spec->add_flag("--stft", use_stft, "Moving-window spectrogram instead of one spectrum");
  spec->add_option("--window", window_seconds, "STFT window length in seconds");
  spec->add_option("--overlap", overlap, "STFT window overlap fraction in [0, 1)");
  spec->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep dataset");
  sweep->add_option("--config", config_path, "Sweep spec (JSON with base + axes)")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs");
  sweep->add_option("--out", out_path, "Dataset output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      bladedisk::run_simulate(config_path, out_path);
    } else if (modal->parsed()) {
      bladedisk::run_modal(config_path, case_name, count, out_path);
    } else if (spec->parsed()) {
      bladedisk::run_spectrum(input_path, channel, use_stft, window_seconds, overlap,
                              out_path);
    } else if (sweep->parsed()) {
      const int failed = bladedisk::run_sweep(config_path, jobs, out_path);
      if (failed > 0) {
        std::cerr << "error: " << failed << " sweep run(s) failed; see index.csv\n";
        return 1;
      }
    }
  } catch (const bladedisk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bladedisk::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
