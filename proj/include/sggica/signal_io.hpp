#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sggica/density.hpp"

namespace sggica {

// n samples by d channels; channels are columns.
struct SignalMatrix {
  Eigen::MatrixXd data;
  std::vector<std::string> channel_names;  // empty when unnamed
  std::optional<double> sample_rate;       // audio
  std::optional<int> image_width;          // single-channel images
  std::optional<int> image_height;
};

// Delimited text matrix, comma or whitespace separated, optional header row
// (detected by a non-numeric first row).  Writing uses shortest round-trip
// decimals, so write-then-read is exact.
SignalMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const SignalMatrix& m, const std::filesystem::path& path);

// PGM (P2 ascii or P5 binary, maxval <= 65535); pixels scaled to [0,1] and
// returned row-major as one channel.  Writing emits 8-bit P5 with clamping
// and round-half-up.
SignalMatrix read_pgm(const std::filesystem::path& path);
void write_pgm(const Eigen::VectorXd& pixels, int width, int height,
               const std::filesystem::path& path);

// WAV PCM16 mono or stereo, samples scaled to [-1,1] by 1/32768.
SignalMatrix read_wav(const std::filesystem::path& path);
void write_wav(const SignalMatrix& m, int sample_rate, const std::filesystem::path& path);

// mixed_i = A source_i per sample.
SignalMatrix mix(const SignalMatrix& sources, const Eigen::MatrixXd& A);

// Column j drawn i.i.d. from spec[j]; channel streams are independent and
// seeded from (seed, j).
SignalMatrix generate_sources(const std::vector<UnivariateSgg>& channel_spec, Eigen::Index n,
                              std::uint64_t seed);

struct MixingExperiment {
  SignalMatrix sources;
  Eigen::MatrixXd mixing;
  SignalMatrix mixed;
  bool ground_truth_available = false;
};

MixingExperiment make_mixing_experiment(SignalMatrix sources, const Eigen::MatrixXd& A);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Atomic text/binary file write (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace sggica
