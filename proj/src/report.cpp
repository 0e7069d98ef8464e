#include "bethe/report.h"

#include <sstream>

namespace bethe {

const char* const kToolVersion = "1.0.0";

void Report::add(std::string item, bool zero, std::string residual) {
  details.push_back({std::move(item), zero, zero ? std::string() : clip(residual)});
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& d : details) n += d.residual_zero ? 0 : 1;
  return n;
}

nlohmann::json Report::to_json(bool reproducible) const {
  nlohmann::json j;
  j["check"] = check;
  j["params"] = params;
  j["result"] = passed() ? "pass" : "fail";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& d : details) {
    nlohmann::json row{{"item", d.item}, {"residual_zero", d.residual_zero}};
    if (!d.residual_zero) row["residual"] = d.residual;
    rows.push_back(std::move(row));
  }
  j["details"] = std::move(rows);
  j["runtime_ms"] = reproducible ? 0 : runtime_ms;
  j["conventions"] = nlohmann::json(conventions);
  j["version"] = kToolVersion;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << check << ": " << (passed() ? "pass" : "fail") << " (" << details.size() - failures() << "/"
     << details.size() << " items zero)\n";
  for (const auto& d : details) {
    if (!d.residual_zero) os << "  nonzero " << d.item << ": " << d.residual << "\n";
  }
  for (const auto& [k, v] : conventions) os << "  " << k << " = " << v << "\n";
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

std::string clip(const std::string& s, std::size_t limit) {
  return s.size() <= limit ? s : s.substr(0, limit) + "...";
}

}  // namespace bethe
