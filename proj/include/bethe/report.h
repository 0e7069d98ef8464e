#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace bethe {

extern const char* const kToolVersion;

struct ReportItem {
  std::string item;
  bool residual_zero = true;
  // Short rendering of a nonzero residual; empty when zero.
  std::string residual;
};

// Outcome of one verification run.
struct Report {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  std::vector<ReportItem> details;
  std::int64_t runtime_ms = 0;
  std::map<std::string, std::string> conventions;
  std::vector<std::string> notes;

  void add(std::string item, bool zero, std::string residual = {});
  bool passed() const;
  std::size_t failures() const;
  // With reproducible set, runtime_ms is written as 0.
  nlohmann::json to_json(bool reproducible = false) const;
  std::string to_text() const;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Cuts long residual renderings for reports.
std::string clip(const std::string& s, std::size_t limit = 200);

}  // namespace bethe
