#include "sggica/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sggica/errors.hpp"
#include "sggica/rng.hpp"
#include "sggica/sampling.hpp"

namespace sggica {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw ParseError("failed reading " + path.string());
  return std::move(buf).str();
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string_view> split_line(std::string_view line, bool comma) {
  std::vector<std::string_view> cells;
  if (comma) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      std::string_view cell = line.substr(start, pos == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : pos - start);
      while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
      cells.push_back(cell);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) cells.push_back(line.substr(start, i - start));
    }
  }
  return cells;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw DomainError("format_double: unrepresentable value");
  return std::string(buf, ptr);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.good()) throw ParseError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ParseError("cannot move " + tmp.string() + " to " + path.string());
}

SignalMatrix read_matrix_csv(const fs::path& path) {
  const std::string text = read_file(path);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    std::string_view line(text.data() + start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = pos + 1;
  }
  if (lines.empty()) throw ParseError(path.string() + ": empty file");

  const bool comma = lines.front().find(',') != std::string_view::npos;
  SignalMatrix m;
  std::size_t first_data_row = 0;

  const auto first_cells = split_line(lines.front(), comma);
  if (first_cells.empty()) throw ParseError(path.string() + ":1: blank row");
  double probe;
  bool numeric_header = true;
  for (const auto& cell : first_cells) {
    if (!parse_double(cell, probe)) {
      numeric_header = false;
      break;
    }
  }
  if (!numeric_header) {
    for (const auto& cell : first_cells) m.channel_names.emplace_back(cell);
    first_data_row = 1;
    if (lines.size() == 1) throw ParseError(path.string() + ": header but no data rows");
  }

  const std::size_t n = lines.size() - first_data_row;
  const std::size_t d = first_cells.size();
  m.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t line_no = first_data_row + r + 1;
    const auto cells = split_line(lines[first_data_row + r], comma);
    if (cells.size() != d) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(d) + " cells, got " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      double value;
      if (!parse_double(cells[j], value)) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": non-numeric cell '" + std::string(cells[j]) + "'");
      }
      m.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = value;
    }
  }
  return m;
}

void write_matrix_csv(const SignalMatrix& m, const fs::path& path) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.data.size()) * 12);
  if (!m.channel_names.empty()) {
    for (std::size_t j = 0; j < m.channel_names.size(); ++j) {
      if (j > 0) out += ',';
      out += m.channel_names[j];
    }
    out += '\n';
  }
  for (Eigen::Index i = 0; i < m.data.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.data.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m.data(i, j));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

namespace {

// Whitespace/comment-aware token scanner for the PGM header.
struct PnmScanner {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space_and_comments() {
    while (pos < text.size()) {
      const char ch = text[pos];
      if (ch == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
        ++pos;
      } else {
        break;
      }
    }
  }

  long next_int(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw ParseError(std::string("PGM: missing ") + what);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
    if (ec != std::errc() || ptr != text.data() + pos) {
      throw ParseError(std::string("PGM: bad ") + what);
    }
    return value;
  }
};

}  // namespace

SignalMatrix read_pgm(const fs::path& path) {
  const std::string text = read_file(path);
  if (text.size() < 2 || text[0] != 'P' || (text[1] != '2' && text[1] != '5')) {
    throw ParseError(path.string() + ": not a P2/P5 PGM file");
  }
  const bool binary = text[1] == '5';
  PnmScanner scan{text, 2};
  const long width = scan.next_int("width");
  const long height = scan.next_int("height");
  const long maxval = scan.next_int("maxval");
  if (width <= 0 || height <= 0) throw ParseError(path.string() + ": bad dimensions");
  if (maxval <= 0 || maxval > 65535) throw ParseError(path.string() + ": bad maxval");
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (count > (1u << 26)) throw ParseError(path.string() + ": image too large");

  Eigen::VectorXd pixels(static_cast<Eigen::Index>(count));
  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    if (scan.pos >= text.size()) throw ParseError(path.string() + ": truncated header");
    ++scan.pos;
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    if (text.size() - scan.pos < count * bytes_per) {
      throw ParseError(path.string() + ": truncated pixel payload");
    }
    const auto* raw = reinterpret_cast<const unsigned char*>(text.data() + scan.pos);
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned value = bytes_per == 1
                                 ? raw[i]
                                 : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
      if (value > static_cast<unsigned>(maxval)) {
        throw ParseError(path.string() + ": sample above maxval");
      }
      pixels[static_cast<Eigen::Index>(i)] = static_cast<double>(value) / static_cast<double>(maxval);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long value = scan.next_int("pixel");
      if (value > maxval) throw ParseError(path.string() + ": sample above maxval");
      pixels[static_cast<Eigen::Index>(i)] = static_cast<double>(value) / static_cast<double>(maxval);
    }
  }

  SignalMatrix m;
  m.data = pixels;
  m.image_width = static_cast<int>(width);
  m.image_height = static_cast<int>(height);
  return m;
}

void write_pgm(const Eigen::VectorXd& pixels, int width, int height, const fs::path& path) {
  if (width <= 0 || height <= 0 ||
      static_cast<long>(width) * height != static_cast<long>(pixels.size())) {
    throw DomainError("write_pgm: width*height must match the pixel count");
  }
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(pixels.size()));
  for (Eigen::Index i = 0; i < pixels.size(); ++i) {
    const double q = std::floor(pixels[i] * 255.0 + 0.5);
    const double clamped = std::min(255.0, std::max(0.0, q));
    out += static_cast<char>(static_cast<unsigned char>(clamped));
  }
  write_file_atomic(path, out);
}

namespace {

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void append_u32le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

void append_u16le(std::string& out, std::uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
}

}  // namespace

SignalMatrix read_wav(const fs::path& path) {
  const std::string text = read_file(path);
  const auto* raw = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t size = text.size();
  if (size < 12 || std::memcmp(raw, "RIFF", 4) != 0 || std::memcmp(raw + 8, "WAVE", 4) != 0) {
    throw ParseError(path.string() + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_offset = 0, data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const char* tag = text.data() + pos;
    const std::uint32_t chunk = read_u32le(raw + pos + 4);
    const std::size_t body = pos + 8;
    if (body + chunk > size) throw ParseError(path.string() + ": truncated chunk");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk < 16) throw ParseError(path.string() + ": short fmt chunk");
      const std::uint16_t format = read_u16le(raw + body);
      if (format != 1) {
        throw UnsupportedFormatError(path.string() + ": only PCM WAV is supported");
      }
      channels = read_u16le(raw + body + 2);
      sample_rate = read_u32le(raw + body + 4);
      bits = read_u16le(raw + body + 14);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data_offset = body;
      data_size = chunk;
    }
    pos = body + chunk + (chunk % 2);  // chunks are word aligned
  }

  if (!have_fmt || data_offset == 0) throw ParseError(path.string() + ": missing fmt/data chunk");
  if (bits != 16) throw UnsupportedFormatError(path.string() + ": only 16-bit PCM is supported");
  if (channels != 1 && channels != 2) {
    throw UnsupportedFormatError(path.string() + ": only mono or stereo supported");
  }
  const std::size_t frame = 2u * channels;
  const std::size_t n = data_size / frame;
  if (n == 0) throw ParseError(path.string() + ": empty data chunk");

  SignalMatrix m;
  m.sample_rate = static_cast<double>(sample_rate);
  m.data.resize(static_cast<Eigen::Index>(n), channels);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint16_t ch = 0; ch < channels; ++ch) {
      const auto* p = raw + data_offset + i * frame + 2 * ch;
      const auto sample = static_cast<std::int16_t>(read_u16le(p));
      m.data(static_cast<Eigen::Index>(i), ch) = static_cast<double>(sample) / 32768.0;
    }
  }
  return m;
}

void write_wav(const SignalMatrix& m, int sample_rate, const fs::path& path) {
  const Eigen::Index n = m.data.rows();
  const Eigen::Index channels = m.data.cols();
  if (channels != 1 && channels != 2) throw DomainError("write_wav: mono or stereo only");
  if (sample_rate <= 0) throw DomainError("write_wav: sample rate must be positive");

  const std::uint32_t data_bytes = static_cast<std::uint32_t>(n * channels * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  append_u32le(out, 36 + data_bytes);
  out += "WAVEfmt ";
  append_u32le(out, 16);
  append_u16le(out, 1);  // PCM
  append_u16le(out, static_cast<std::uint16_t>(channels));
  append_u32le(out, static_cast<std::uint32_t>(sample_rate));
  append_u32le(out, static_cast<std::uint32_t>(sample_rate * channels * 2));
  append_u16le(out, static_cast<std::uint16_t>(channels * 2));
  append_u16le(out, 16);
  out += "data";
  append_u32le(out, data_bytes);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index ch = 0; ch < channels; ++ch) {
      const double scaled = std::floor(m.data(i, ch) * 32768.0 + 0.5);
      const double clamped = std::min(32767.0, std::max(-32768.0, scaled));
      append_u16le(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(clamped)));
    }
  }
  write_file_atomic(path, out);
}

SignalMatrix mix(const SignalMatrix& sources, const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() != sources.data.cols()) {
    throw DomainError("mix: mixing matrix must be d x d for d channels");
  }
  SignalMatrix out;
  out.data = sources.data * A.transpose();
  out.sample_rate = sources.sample_rate;
  out.image_width = sources.image_width;
  out.image_height = sources.image_height;
  return out;
}

SignalMatrix generate_sources(const std::vector<UnivariateSgg>& channel_spec, Eigen::Index n,
                              std::uint64_t seed) {
  if (channel_spec.empty()) throw DomainError("generate_sources: empty channel spec");
  if (n < 1) throw DomainError("generate_sources: n must be >= 1");
  SignalMatrix m;
  m.data.resize(n, static_cast<Eigen::Index>(channel_spec.size()));
  for (std::size_t j = 0; j < channel_spec.size(); ++j) {
    m.data.col(static_cast<Eigen::Index>(j)) =
        sample_sgg(channel_spec[j], n, mix_seed(seed, j));
  }
  return m;
}

MixingExperiment make_mixing_experiment(SignalMatrix sources, const Eigen::MatrixXd& A) {
  MixingExperiment exp;
  exp.mixed = mix(sources, A);
  exp.sources = std::move(sources);
  exp.mixing = A;
  exp.ground_truth_available = true;
  return exp;
}

}  // namespace sggica
