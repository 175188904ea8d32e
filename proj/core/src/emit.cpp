// Copyright 2026 The nqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nqca/emit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "nqca/error.hpp"

namespace nqca {
namespace {

std::string num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string short_num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

template <typename T>
T parse_field(std::string_view field, int line) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("run CSV line " + std::to_string(line) +
                             ": bad field '" + std::string(field) + "'");
  }
  return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError(path.string(), "write failed");
}

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void write_run_csv(std::ostream& out, const RunRecord& record) {
  out << kRunCsvHeader << '\n';
  for (const RunEvent& e : record.events) {
    out << e.time << ',' << num(e.rho_rr) << ',' << num(e.p_abs_inst) << ','
        << num(e.p_tot) << ',' << num(e.trace) << '\n';
  }
}

RunRecord read_run_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader) {
    throw std::runtime_error("run CSV: unexpected header '" + line + "'");
  }
  RunRecord record;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::array<std::string_view, 5> fields;
    std::string_view rest = line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (i + 1 == fields.size())) {
        throw std::runtime_error("run CSV line " + std::to_string(number) +
                                 ": expected 5 fields");
      }
      fields[i] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest = rest.substr(comma + 1);
    }
    RunEvent e;
    e.time = parse_field<long>(fields[0], number);
    e.rho_rr = parse_field<double>(fields[1], number);
    e.p_abs_inst = parse_field<double>(fields[2], number);
    e.p_tot = parse_field<double>(fields[3], number);
    e.trace = parse_field<double>(fields[4], number);
    record.events.push_back(e);
  }
  return record;
}

void write_svg(std::ostream& out, const std::vector<SeriesResult>& series,
               std::string_view title) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 60, kRight = 170, kTop = 36, kBottom = 48;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  long t_end = 1;
  for (const SeriesResult& s : series) {
    if (!s.record.events.empty()) t_end = std::max(t_end, s.record.events.back().time);
  }
  auto x_of = [&](long t) { return kLeft + plot_w * static_cast<double>(t) / t_end; };
  auto y_of = [&](double p) { return kTop + plot_h * (1.0 - p); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"22\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double p = i / 4.0;
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(p) + 4
        << "\" text-anchor=\"end\">" << short_num(p) << "</text>\n";
    const long t = t_end * i / 4;
    out << "<text x=\"" << x_of(t) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">step</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
      << ")\" text-anchor=\"middle\">P_tot</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const SeriesResult& s = series[i];
    const char* colour = kPalette[i % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.5\"";
    if (s.model == "classical") out << " stroke-dasharray=\"6 3\"";
    out << " points=\"";
    for (const RunEvent& e : s.record.events) {
      out << short_num(x_of(e.time)) << ',' << short_num(y_of(e.p_tot)) << ' ';
    }
    out << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << kWidth - kRight + 36 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 42 << "\" y=\"" << ly << "\">"
        << (s.model == "classical" ? std::string("Class") : "xi=" + short_num(s.xi))
        << "</text>\n";
  }
  out << "</svg>\n";
}

std::vector<std::filesystem::path> emit(const std::vector<SeriesResult>& series,
                                        const std::filesystem::path& out_dir,
                                        const std::string& name,
                                        const EmitOptions& options) {
  if (series.empty()) throw std::invalid_argument("emit: no series to write");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(out_dir.string(), ec.message());

  std::vector<std::filesystem::path> written;
  const std::filesystem::path index_path = out_dir / (name + "_index.csv");
  std::ofstream index = open_out(index_path);
  index << "file,model,xi\n";
  for (const SeriesResult& s : series) {
    const std::string file = name + "_" + s.label() + ".csv";
    const std::filesystem::path path = out_dir / file;
    std::ofstream out = open_out(path);
    write_run_csv(out, s.record);
    close_out(out, path);
    written.push_back(path);
    index << file << ',' << s.model << ',' << num(s.xi) << '\n';
  }
  close_out(index, index_path);
  written.push_back(index_path);

  if (options.svg) {
    const std::filesystem::path path = out_dir / (name + ".svg");
    std::ofstream out = open_out(path);
    write_svg(out, series, name);
    close_out(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace nqca
