#include "cnls/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cnls/error.hpp"

namespace cnls {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              const std::filesystem::path& path, std::size_t line_no) {
  std::vector<double> values;
  values.reserve(expected);
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p <= end) {
    double v = 0.0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc()) break;
    values.push_back(v);
    if (next == end) break;
    if (*next != ',') break;
    p = next + 1;
  }
  if (values.size() != expected) {
    throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
  }
  return values;
}

void check_header(std::istream& in, const char* header, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw IoError(path.string() + ": expected header '" + header + "'");
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_snapshot_csv(const std::filesystem::path& path, const FieldPair& pair,
                        const GridSpec& grid) {
  if (pair.size() != grid.size()) throw ContractViolation("snapshot: field size mismatch");
  auto out = open_for_writing(path);
  out << kSnapshotHeader << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_double(grid.node(k)) << ',' << format_double(pair.u1[k].real()) << ','
        << format_double(pair.u1[k].imag()) << ',' << format_double(pair.u2[k].real()) << ','
        << format_double(pair.u2[k].imag()) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SnapshotFile read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  check_header(in, kSnapshotHeader, path);
  SnapshotFile out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto v = parse_row(line, 5, path, line_no);
    out.x.push_back(v[0]);
    out.fields.u1.emplace_back(v[1], v[2]);
    out.fields.u2.emplace_back(v[3], v[4]);
  }
  return out;
}

DiagnosticsCsvWriter::DiagnosticsCsvWriter(const std::filesystem::path& path)
    : path_(path), out_(open_for_writing(path)) {
  out_ << kDiagnosticsHeader << '\n';
}

void DiagnosticsCsvWriter::write(const DiagnosticsRecord& r) {
  out_ << format_double(r.t) << ',' << format_double(r.M1) << ',' << format_double(r.M2) << ','
       << format_double(r.E) << ',' << format_double(r.P) << ',' << format_double(r.Ploc1)
       << ',' << format_double(r.Ploc2) << '\n';
  if (!out_) throw IoError("failed writing '" + path_.string() + "'");
}

void DiagnosticsCsvWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("failed closing '" + path_.string() + "'");
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  check_header(in, kDiagnosticsHeader, path);
  std::vector<DiagnosticsRecord> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto v = parse_row(line, 7, path, line_no);
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return rows;
}

std::string report_to_json(const CollisionReport& r) {
  nlohmann::ordered_json j;
  j["t_final"] = r.t_final;
  for (int c : {0, 1}) {
    const std::string s = "_" + std::to_string(c + 1);
    j["left_mass" + s] = r.left_masses[c];
    j["right_mass" + s] = r.right_masses[c];
    j["peak_position" + s] = r.peak_positions[c];
    j["peak_height" + s] = r.peak_heights[c];
    j["velocity_estimate" + s] = r.velocity_estimates[c];
  }
  if (r.ground_state) {
    const auto& g = *r.ground_state;
    for (int c : {0, 1}) {
      const std::string s = "_" + std::to_string(c + 1);
      j["ground_state_target_mass" + s] = g.target_masses[c];
      j["ground_state_omega" + s] = g.omegas[c];
      j["ground_state_sup_error" + s] = g.sup_density_errors[c];
      j["ground_state_peak_density" + s] = g.peak_densities[c];
    }
    j["ground_state_iterations"] = g.iterations;
  }
  if (r.elastic) {
    const auto& e = *r.elastic;
    for (int c : {0, 1}) {
      const std::string s = "_" + std::to_string(c + 1);
      j["manakov_tau" + s] = e.predicted_shifts[c];
      j["fitted_shift" + s] = e.fitted_shifts[c];
      j["elastic_sup_error" + s] = e.sup_density_errors[c];
      j["elastic_peak_density" + s] = e.peak_densities[c];
    }
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_writing(path);
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

BackgroundWriter::BackgroundWriter() : worker_([this] { run(); }) {}

BackgroundWriter::~BackgroundWriter() {
  try {
    finish();
  } catch (...) {
    // finish() already reported through the normal path when called explicitly.
  }
}

void BackgroundWriter::submit(std::function<void()> job) {
  {
    std::lock_guard lock(mutex_);
    if (failure_) {
      auto f = failure_;
      failure_ = nullptr;
      std::rethrow_exception(f);
    }
    jobs_.push_back(std::move(job));
  }
  wake_.notify_one();
}

void BackgroundWriter::finish() {
  {
    std::lock_guard lock(mutex_);
    closing_ = true;
  }
  wake_.notify_one();
  if (worker_.joinable()) worker_.join();
  rethrow_if_failed();
}

void BackgroundWriter::rethrow_if_failed() {
  std::exception_ptr f;
  {
    std::lock_guard lock(mutex_);
    f = failure_;
    failure_ = nullptr;
  }
  if (f) std::rethrow_exception(f);
}

void BackgroundWriter::run() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [this] { return closing_ || !jobs_.empty(); });
      if (jobs_.empty()) return;
      job = std::move(jobs_.front());
      jobs_.pop_front();
    }
    try {
      job();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!failure_) failure_ = std::current_exception();
    }
  }
}

}  // namespace cnls
