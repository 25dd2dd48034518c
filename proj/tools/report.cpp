// Copyright 2026 The nlgames Authors
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

#include "report.hpp"

#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

namespace nlg::cli {

std::string format_double(double value) {
  std::ostringstream os;
  os << std::setprecision(15) << value;
  return os.str();
}

namespace {
std::string format_tol(double tol) {
  std::ostringstream os;
  os << "tol " << std::setprecision(3) << tol;
  return os.str();
}
}  // namespace

void RunReport::exact(const std::string& name, const Rational& value) {
  results.push_back({name, to_string(value), "exact"});
}

void RunReport::exact(const std::string& name, std::size_t value) {
  results.push_back({name, std::to_string(value), "exact"});
}

void RunReport::approx(const std::string& name, double value, double tol) {
  results.push_back({name, format_double(value), format_tol(tol)});
}

void RunReport::fact(const std::string& name, const std::string& value) {
  results.push_back({name, value, ""});
}

std::string RunReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r.value;
  return "";
}

std::string RunReport::render_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  for (const auto& in : inputs) os << "input: " << in.path << " sha256:" << in.sha256 << "\n";
  if (!results.empty()) os << "results:\n";
  for (const auto& r : results) {
    os << "  " << r.name << " = " << r.value;
    if (!r.annotation.empty()) os << " [" << r.annotation << "]";
    os << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  for (const auto& d : diagnostics) os << "diagnostic: " << d << "\n";
  for (const auto& a : artifacts) os << "wrote: " << a << "\n";
  for (const auto& t : timings) {
    os << "time: " << t.phase << " " << std::fixed << std::setprecision(6) << t.seconds
       << " s\n";
    os.unsetf(std::ios::floatfield);
  }
  if (!error.empty()) os << "error: " << error << "\n";
  os << "exit: " << exit_code << "\n";
  return os.str();
}

std::string RunReport::render_structured() const {
  using json = nlohmann::ordered_json;
  json root = json::object();
  root["command"] = command;
  json in = json::array();
  for (const auto& i : inputs) in.push_back({{"path", i.path}, {"sha256", i.sha256}});
  root["inputs"] = std::move(in);
  json res = json::array();
  for (const auto& r : results) {
    res.push_back({{"name", r.name}, {"value", r.value}, {"annotation", r.annotation}});
  }
  root["results"] = std::move(res);
  root["notes"] = notes;
  root["diagnostics"] = diagnostics;
  root["artifacts"] = artifacts;
  json times = json::array();
  for (const auto& t : timings) times.push_back({{"phase", t.phase}, {"seconds", t.seconds}});
  root["timings"] = std::move(times);
  root["exit_code"] = exit_code;
  if (!error.empty()) root["error"] = error;
  return root.dump(2) + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    return "unavailable";
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

}  // namespace nlg::cli
