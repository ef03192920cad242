#pragma once

#include <condition_variable>
#include <deque>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "cnls/analysis.hpp"
#include "cnls/diagnostics.hpp"
#include "cnls/field_pair.hpp"
#include "cnls/grid.hpp"

namespace cnls {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

inline constexpr const char* kSnapshotHeader = "x,re_u1,im_u1,re_u2,im_u2";
inline constexpr const char* kDiagnosticsHeader = "t,M1,M2,E,P,Ploc1,Ploc2";

/// Throws IoError if the file cannot be written.
void write_snapshot_csv(const std::filesystem::path& path, const FieldPair& pair,
                        const GridSpec& grid);

struct SnapshotFile {
  RealField x;
  FieldPair fields;
};

/// Reads a file written by write_snapshot_csv (fields.t is left at 0).
SnapshotFile read_snapshot_csv(const std::filesystem::path& path);

/// Streams DiagnosticsRecord rows to a CSV file.
class DiagnosticsCsvWriter {
 public:
  explicit DiagnosticsCsvWriter(const std::filesystem::path& path);
  void write(const DiagnosticsRecord& record);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path);

/// Flat JSON object with full-precision numbers.
std::string report_to_json(const CollisionReport& report);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Runs file-writing jobs on one background thread in submission order.
/// The first failure is rethrown from finish() (or the next submit()).
class BackgroundWriter {
 public:
  BackgroundWriter();
  ~BackgroundWriter();
  BackgroundWriter(const BackgroundWriter&) = delete;
  BackgroundWriter& operator=(const BackgroundWriter&) = delete;

  void submit(std::function<void()> job);
  /// Drains the queue, joins the worker, and rethrows any job failure.
  void finish();

 private:
  void run();
  void rethrow_if_failed();

  std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<std::function<void()>> jobs_;
  std::exception_ptr failure_;
  bool closing_ = false;
  std::thread worker_;
};

}  // namespace cnls
