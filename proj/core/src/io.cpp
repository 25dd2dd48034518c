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

#include "nlgames/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "nlgames/errors.hpp"

namespace nlg {

using json = nlohmann::json;
// Writers keep fields in insertion order.
using ojson = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

namespace {

// ---------------------------------------------------------------------------
// JSON with source positions.

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') starts_.push_back(i + 1);
  }
  Location locate(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    const std::size_t line = static_cast<std::size_t>(it - starts_.begin());
    return {line, offset - starts_[line - 1] + 1};
  }

 private:
  std::vector<std::size_t> starts_;
};

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + escape_pointer(key);
}
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

// Input iterator that counts consumed characters.
struct CountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  std::size_t* consumed = nullptr;

  reference operator*() const { return *p; }
  CountingIterator& operator++() {
    ++p;
    ++*consumed;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) {
    return a.p == b.p;
  }
};

// Records where each value starts (approximately: the lexer reads at most one
// character ahead) and the raw text of numbers.
class Locator : public nlohmann::json_sax<json> {
 public:
  explicit Locator(const std::size_t* consumed) : consumed_(consumed) {}

  std::unordered_map<std::string, std::size_t> offsets;
  std::unordered_map<std::string, std::string> numbers;

  bool null() override { return scalar(4); }
  bool boolean(bool v) override { return scalar(v ? 4 : 5); }
  bool number_integer(number_integer_t v) override {
    return number(std::to_string(v));
  }
  bool number_unsigned(number_unsigned_t v) override {
    return number(std::to_string(v));
  }
  bool number_float(number_float_t, const string_t& s) override { return number(s); }
  bool string(string_t& s) override { return scalar(s.size() + 2); }
  bool binary(binary_t&) override { return scalar(0); }
  bool start_object(std::size_t) override { return open(false); }
  bool key(string_t& k) override {
    stack_.back().key = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(true); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    std::string path;
    bool array;
    std::size_t index = 0;
    std::string key;
  };

  std::string current_path() const {
    if (stack_.empty()) return "";
    const Frame& f = stack_.back();
    return f.array ? child(f.path, f.index) : child(f.path, f.key);
  }
  void advance() {
    if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
  }
  bool scalar(std::size_t length) {
    const std::size_t end = *consumed_;
    offsets[current_path()] = end >= length ? end - length : 0;
    advance();
    return true;
  }
  bool number(const std::string& raw) {
    numbers[current_path()] = raw;
    // One character of lookahead past the number.
    const std::size_t end = *consumed_ > 0 ? *consumed_ - 1 : 0;
    offsets[current_path()] = end >= raw.size() ? end - raw.size() : 0;
    advance();
    return true;
  }
  bool open(bool array) {
    const std::string path = current_path();
    offsets[path] = *consumed_ > 0 ? *consumed_ - 1 : 0;
    stack_.push_back({path, array, 0, {}});
    return true;
  }
  bool close() {
    stack_.pop_back();
    advance();
    return true;
  }

  const std::size_t* consumed_;
  std::vector<Frame> stack_;
};

class Document {
 public:
  explicit Document(std::string_view text) : lines_(text) {
    try {
      root_ = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      const Location loc = lines_.locate(e.byte > 0 ? e.byte - 1 : 0);
      std::string what = e.what();
      // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..."
      // prefix up to the detail message.
      const auto colon = what.rfind(": ");
      if (colon != std::string::npos) what = what.substr(colon + 2);
      throw ParseError("invalid JSON: " + what, loc.line, loc.column);
    }
    std::size_t consumed = 0;
    Locator locator(&consumed);
    CountingIterator first{text.data(), &consumed};
    CountingIterator last{text.data() + text.size(), &consumed};
    json::sax_parse(first, last, &locator);
    offsets_ = std::move(locator.offsets);
    numbers_ = std::move(locator.numbers);
  }

  const json& root() const { return root_; }

  Location at(const std::string& path) const {
    auto it = offsets_.find(path);
    if (it == offsets_.end()) return {};
    return lines_.locate(it->second);
  }

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    const Location loc = at(path);
    throw ParseError(what, loc.line, loc.column);
  }

  // Text of a number as written in the file.
  std::string raw_number(const std::string& path, const json& value) const {
    auto it = numbers_.find(path);
    return it != numbers_.end() ? it->second : value.dump();
  }

  const json& member(const json& object, const std::string& path,
                     const std::string& key) const {
    if (!object.is_object()) fail(path, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
  }

  std::vector<std::string> labels(const json& value, const std::string& path) const {
    if (!value.is_array()) fail(path, "expected an array of labels");
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string p = child(path, i);
      if (!value[i].is_string()) fail(p, "labels must be strings");
      const std::string label = value[i].get<std::string>();
      if (!seen.insert(label).second) fail(p, "duplicate label \"" + label + "\"");
      out.push_back(label);
    }
    if (out.empty()) fail(path, "label list is empty");
    return out;
  }

  std::size_t positive_integer(const json& value, const std::string& path) const {
    if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0) {
      fail(path, "expected a positive integer");
    }
    return value.get<std::size_t>();
  }

 private:
  LineIndex lines_;
  json root_;
  std::unordered_map<std::string, std::size_t> offsets_;
  std::unordered_map<std::string, std::string> numbers_;
};

std::string format_location(const Location& loc) {
  if (loc.line == 0) return "";
  return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column);
}

// ---------------------------------------------------------------------------
// Exact probabilities.

std::optional<Rational> parse_rational(std::string text) {
  auto strip = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  strip(text);
  auto integer = [](const std::string& s) -> std::optional<BigInt> {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    // cpp_int reads a leading 0 as octal.
    std::size_t first = i;
    while (first + 1 < s.size() && s[first] == '0') ++first;
    BigInt value(s.substr(first));
    return s[0] == '-' ? BigInt(-value) : value;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    strip(num);
    strip(den);
    auto n = integer(num);
    auto d = integer(den);
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
  }
  // Decimal with optional exponent.
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    const std::string exp_text = text.substr(e + 1);
    auto exp_value = integer(exp_text);
    if (!exp_value || abs(*exp_value) > 1000) return std::nullopt;
    exponent = exp_value->convert_to<long>();
  }
  std::string digits = mantissa;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    if (dot == 0 || dot + 1 == mantissa.size() ||
        (dot == 1 && (mantissa[0] == '-' || mantissa[0] == '+'))) {
      // Accept ".5" and "5." forms only when digits remain.
      if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
    }
  }
  auto n = integer(digits);
  if (!n) return std::nullopt;
  Rational value(*n);
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  if (exponent >= 0) return Rational(value * scale);
  return Rational(value / scale);
}

// ---------------------------------------------------------------------------
// Output layout: arrays short enough stay on one line, everything else is
// indented.

void pretty(std::ostream& os, const ojson& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (v.is_array() && !v.empty()) {
    const std::string compact = v.dump();
    if (compact.size() <= 100) {
      os << compact;
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << pad;
      pretty(os, v[i], indent + 2);
      os << (i + 1 < v.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else if (v.is_object() && !v.empty()) {
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : v.items()) {
      os << pad << ojson(key).dump() << ": ";
      pretty(os, value, indent + 2);
      os << (++i < v.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else {
    os << v.dump();
  }
}

std::string pretty(const ojson& v) {
  std::ostringstream os;
  pretty(os, v, 0);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Matrices as rows of [re, im] pairs.

ojson matrix_to_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(ojson::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex entry_from_json(const Document& doc, const json& v, const std::string& path) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  doc.fail(path, "matrix entry must be a number or a [re, im] pair");
}

Matrix matrix_from_json(const Document& doc, const json& v, const std::string& path,
                        std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows) {
    doc.fail(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " matrix (" + std::to_string(rows) + " rows)");
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = child(path, i);
    const json& row = v[i];
    if (!row.is_array() || row.size() != cols) {
      doc.fail(row_path, "row " + std::to_string(i) + " must have " +
                             std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          entry_from_json(doc, row[j], child(row_path, j));
    }
  }
  return m;
}

ojson measurements_to_json(const Measurements& m,
                          const std::vector<std::string>& questions,
                          const std::vector<std::string>& answers) {
  ojson out = ojson::object();
  for (std::size_t q = 0; q < m.size(); ++q) {
    ojson per_answer = ojson::object();
    for (std::size_t a = 0; a < m[q].size(); ++a) {
      if (m[q][a].isZero(0.0)) continue;
      per_answer[answers[a]] = matrix_to_json(m[q][a]);
    }
    out[questions[q]] = std::move(per_answer);
  }
  return out;
}

// Every question must be present; absent answers get the zero matrix.
Measurements measurements_from_json(const Document& doc, const json& v,
                                    const std::string& path,
                                    const std::vector<std::string>& questions,
                                    const std::vector<std::string>& answers,
                                    std::size_t dim) {
  if (!v.is_object()) doc.fail(path, "expected an object keyed by question label");
  std::unordered_map<std::string, std::size_t> q_index, a_index;
  for (std::size_t i = 0; i < questions.size(); ++i) q_index[questions[i]] = i;
  for (std::size_t i = 0; i < answers.size(); ++i) a_index[answers[i]] = i;
  const auto d = static_cast<Eigen::Index>(dim);
  Measurements out(questions.size(), std::vector<Matrix>(answers.size(), Matrix::Zero(d, d)));
  std::vector<bool> seen(questions.size(), false);
  for (const auto& [q_label, per_answer] : v.items()) {
    const std::string q_path = child(path, q_label);
    auto q = q_index.find(q_label);
    if (q == q_index.end()) doc.fail(q_path, "unknown question \"" + q_label + "\"");
    seen[q->second] = true;
    if (!per_answer.is_object()) doc.fail(q_path, "expected an object keyed by answer label");
    for (const auto& [a_label, matrix] : per_answer.items()) {
      const std::string a_path = child(q_path, a_label);
      auto a = a_index.find(a_label);
      if (a == a_index.end()) doc.fail(a_path, "unknown answer \"" + a_label + "\"");
      out[q->second][a->second] = matrix_from_json(doc, matrix, a_path, dim, dim);
    }
  }
  for (std::size_t q = 0; q < questions.size(); ++q) {
    if (!seen[q]) doc.fail(path, "no measurement for question \"" + questions[q] + "\"");
  }
  return out;
}

void require_kind(const Document& doc, const std::string& expected) {
  const json& root = doc.root();
  if (!root.is_object()) doc.fail("", "expected a JSON object");
  auto it = root.find("kind");
  if (it == root.end()) return;
  if (!it->is_string() || it->get<std::string>() != expected) {
    doc.fail("/kind", "expected kind \"" + expected + "\"");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Games.

NonlocalGame parse_game(std::string_view text) {
  const Document doc(text);
  const json& root = doc.root();
  if (!root.is_object()) doc.fail("", "game file must be a JSON object");

  std::vector<std::string> aq, bq, aa, ba;
  const bool shorthand = root.contains("questions") || root.contains("answers");
  if (shorthand) {
    aq = doc.labels(doc.member(root, "", "questions"), "/questions");
    aa = doc.labels(doc.member(root, "", "answers"), "/answers");
    bq = aq;
    ba = aa;
  } else {
    aq = doc.labels(doc.member(root, "", "alice_questions"), "/alice_questions");
    bq = doc.labels(doc.member(root, "", "bob_questions"), "/bob_questions");
    aa = doc.labels(doc.member(root, "", "alice_answers"), "/alice_answers");
    ba = doc.labels(doc.member(root, "", "bob_answers"), "/bob_answers");
  }
  auto indexer = [](const std::vector<std::string>& labels) {
    std::unordered_map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < labels.size(); ++i) m[labels[i]] = i;
    return m;
  };
  const auto qi = indexer(aq), ri = indexer(bq), ai = indexer(aa), bi = indexer(ba);
  auto lookup = [&](const std::unordered_map<std::string, std::size_t>& m,
                    const json& v, const std::string& path, const char* what) {
    if (!v.is_string()) doc.fail(path, std::string(what) + " label must be a string");
    auto it = m.find(v.get<std::string>());
    if (it == m.end()) {
      doc.fail(path, std::string("unknown ") + what + " \"" + v.get<std::string>() + "\"");
    }
    return it->second;
  };

  const std::size_t nq = aq.size(), nr = bq.size(), na = aa.size(), nb = ba.size();
  std::vector<Rational> distribution;
  const json& dist = doc.member(root, "", "distribution");
  if (dist.is_string() && dist.get<std::string>() == "uniform") {
    distribution = uniform_distribution(nq, nr);
  } else if (dist.is_array()) {
    distribution.assign(nq * nr, Rational(0));
    std::vector<std::string> entry_path(nq * nr);
    Rational total = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const std::string p = child("/distribution", i);
      const json& e = dist[i];
      if (!e.is_array() || e.size() != 3) doc.fail(p, "distribution entry must be [q, r, p]");
      const std::size_t q = lookup(qi, e[0], child(p, 0), "question");
      const std::size_t r = lookup(ri, e[1], child(p, 1), "question");
      const std::string pp = child(p, 2);
      std::optional<Rational> value;
      if (e[2].is_string()) value = parse_rational(e[2].get<std::string>());
      else if (e[2].is_number()) value = parse_rational(doc.raw_number(pp, e[2]));
      if (!value) doc.fail(pp, "probability must be an exact number such as 0.25 or \"1/4\"");
      if (*value < 0) doc.fail(pp, "negative probability " + to_string(*value));
      if (!entry_path[q * nr + r].empty()) {
        doc.fail(p, "duplicate entry for (" + aq[q] + ", " + bq[r] + "), first given at " +
                        format_location(doc.at(entry_path[q * nr + r])));
      }
      entry_path[q * nr + r] = p;
      distribution[q * nr + r] = *value;
      total += *value;
    }
    if (total != 1) {
      std::ostringstream os;
      os << "distribution sums to " << to_string(total) << ", not 1; entries:";
      std::size_t listed = 0;
      for (std::size_t k = 0; k < entry_path.size(); ++k) {
        if (entry_path[k].empty()) continue;
        if (listed++ == 8) {
          os << " ...";
          break;
        }
        os << " (" << aq[k / nr] << ", " << bq[k % nr] << ") = "
           << to_string(distribution[k]) << " at " << format_location(doc.at(entry_path[k]))
           << ";";
      }
      doc.fail("/distribution", os.str());
    }
  } else {
    doc.fail("/distribution", "distribution must be \"uniform\" or a list of [q, r, p]");
  }

  const json& pred = doc.member(root, "", "predicate");
  if (!pred.is_object()) doc.fail("/predicate", "predicate must be an object");
  const bool zeros = pred.contains("zeros");
  const bool ones = pred.contains("ones");
  if (zeros == ones) {
    doc.fail("/predicate", "predicate needs exactly one of \"zeros\" or \"ones\"");
  }
  const std::string key = zeros ? "zeros" : "ones";
  const std::string list_path = child("/predicate", key);
  const json& cells = pred.at(key);
  if (!cells.is_array()) doc.fail(list_path, "expected a list of [a, b, q, r]");
  std::vector<std::uint8_t> predicate(na * nb * nq * nr, zeros ? 1 : 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string p = child(list_path, i);
    const json& c = cells[i];
    if (!c.is_array() || c.size() != 4) doc.fail(p, "predicate cell must be [a, b, q, r]");
    const std::size_t a = lookup(ai, c[0], child(p, 0), "answer");
    const std::size_t b = lookup(bi, c[1], child(p, 1), "answer");
    const std::size_t q = lookup(qi, c[2], child(p, 2), "question");
    const std::size_t r = lookup(ri, c[3], child(p, 3), "question");
    predicate[((a * nb + b) * nq + q) * nr + r] = zeros ? 0 : 1;
  }
  try {
    return NonlocalGame(std::move(aq), std::move(bq), std::move(aa), std::move(ba),
                        std::move(distribution), std::move(predicate));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

std::string write_game(const NonlocalGame& game) {
  ojson root = ojson::object();
  const bool same = game.alice_questions() == game.bob_questions() &&
                    game.alice_answers() == game.bob_answers();
  if (same) {
    root["questions"] = game.alice_questions();
    root["answers"] = game.alice_answers();
  } else {
    root["alice_questions"] = game.alice_questions();
    root["bob_questions"] = game.bob_questions();
    root["alice_answers"] = game.alice_answers();
    root["bob_answers"] = game.bob_answers();
  }
  const std::size_t nq = game.num_alice_questions(), nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers(), nb = game.num_bob_answers();
  if (game.has_uniform_distribution()) {
    root["distribution"] = "uniform";
  } else {
    ojson dist = ojson::array();
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t r = 0; r < nr; ++r)
        if (game.probability(q, r) != 0)
          dist.push_back({game.alice_questions()[q], game.bob_questions()[r],
                          to_string(game.probability(q, r))});
    root["distribution"] = std::move(dist);
  }
  std::size_t losing = 0;
  const std::size_t cells = na * nb * nq * nr;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t r = 0; r < nr; ++r) losing += game.wins(a, b, q, r) ? 0 : 1;
  const bool write_zeros = losing * 2 <= cells;
  ojson list = ojson::array();
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t r = 0; r < nr; ++r)
          if (game.wins(a, b, q, r) != write_zeros)
            list.push_back({game.alice_answers()[a], game.bob_answers()[b],
                            game.alice_questions()[q], game.bob_questions()[r]});
  root["predicate"] = ojson::object({{write_zeros ? "zeros" : "ones", std::move(list)}});
  return pretty(root);
}

// ---------------------------------------------------------------------------
// Graphs.

namespace {

std::vector<std::pair<std::string, std::size_t>> tokenize(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;  // token, column
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.emplace_back(std::string(line.substr(start, i - start)), start + 1);
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

Graph parse_dimacs(const std::vector<std::string_view>& lines) {
  std::optional<Graph> graph;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tokens = tokenize(lines[ln]);
    if (tokens.empty() || tokens[0].first == "c") continue;
    const std::size_t line = ln + 1;
    auto number = [&](std::size_t k) {
      const auto& [tok, col] = tokens[k];
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("expected a non-negative integer, got \"" + tok + "\"", line, col);
      }
      return value;
    };
    if (tokens[0].first == "p") {
      if (graph) throw ParseError("second problem line", line, tokens[0].second);
      if (tokens.size() != 4) {
        throw ParseError("problem line must be \"p edge N M\"", line, tokens[0].second);
      }
      const std::size_t n = number(2);
      std::vector<std::string> labels;
      for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
      graph.emplace(std::move(labels));
    } else if (tokens[0].first == "e") {
      if (!graph) throw ParseError("edge before the problem line", line, tokens[0].second);
      if (tokens.size() != 3) throw ParseError("edge line must be \"e i j\"", line, tokens[0].second);
      const std::size_t u = number(1), v = number(2);
      const std::size_t n = graph->num_vertices();
      if (u < 1 || u > n) throw ParseError("vertex out of range", line, tokens[1].second);
      if (v < 1 || v > n) throw ParseError("vertex out of range", line, tokens[2].second);
      graph->add_edge(u - 1, v - 1);
    } else {
      throw ParseError("unexpected line in DIMACS input", line, tokens[0].second);
    }
  }
  if (!graph) throw ParseError("missing problem line");
  return std::move(*graph);
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const auto lines = split_lines(text);
  for (const auto& l : lines) {
    const auto tokens = tokenize(l);
    if (tokens.empty() || tokens[0].first == "c") continue;
    if (tokens[0].first == "p") return parse_dimacs(lines);
    break;
  }

  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  bool declared = false;
  struct PendingEdge {
    std::string u, v;
    std::size_t line, col_u, col_v;
  };
  struct PendingBlock {
    std::string name;
    std::vector<std::pair<std::string, std::size_t>> members;
    std::size_t line, col;
  };
  std::vector<PendingEdge> edges;
  std::vector<PendingBlock> blocks;
  auto note = [&](const std::string& label, std::size_t line, std::size_t col) {
    if (index.count(label)) return;
    if (declared) throw ParseError("vertex \"" + label + "\" not declared", line, col);
    index[label] = labels.size();
    labels.push_back(label);
  };
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line = ln + 1;
    auto tokens = tokenize(lines[ln]);
    if (tokens.empty()) continue;
    if (tokens[0].first == "vertices:") {
      if (declared || !labels.empty()) {
        throw ParseError("vertices: must come first and only once", line, tokens[0].second);
      }
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (index.count(tokens[k].first)) {
          throw ParseError("duplicate vertex \"" + tokens[k].first + "\"", line, tokens[k].second);
        }
        note(tokens[k].first, line, tokens[k].second);
      }
      declared = true;
      continue;
    }
    if (tokens[0].first == "block") {
      if (tokens.size() < 2 || tokens[1].first.back() != ':') {
        throw ParseError("block line must be \"block NAME: v ...\"", line, tokens[0].second);
      }
      PendingBlock block{tokens[1].first.substr(0, tokens[1].first.size() - 1), {}, line,
                         tokens[0].second};
      for (std::size_t k = 2; k < tokens.size(); ++k) block.members.push_back(tokens[k]);
      blocks.push_back(std::move(block));
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError("edge line must name exactly two vertices", line, tokens[0].second);
    }
    note(tokens[0].first, line, tokens[0].second);
    note(tokens[1].first, line, tokens[1].second);
    edges.push_back({tokens[0].first, tokens[1].first, line, tokens[0].second, tokens[1].second});
  }
  Graph graph(labels);
  for (const auto& e : edges) graph.add_edge(index.at(e.u), index.at(e.v));
  if (!blocks.empty()) {
    std::vector<CliqueBlock> partition;
    for (const auto& b : blocks) {
      CliqueBlock block{b.name, {}};
      for (const auto& [label, col] : b.members) {
        auto it = index.find(label);
        if (it == index.end()) throw ParseError("unknown vertex \"" + label + "\"", b.line, col);
        block.vertices.push_back(it->second);
      }
      partition.push_back(std::move(block));
    }
    try {
      graph.set_clique_partition(std::move(partition));
    } catch (const InvalidInput& e) {
      throw ParseError(std::string("bad clique partition: ") + e.what(), blocks.front().line,
                       blocks.front().col);
    }
  }
  return graph;
}

std::string write_graph(const Graph& graph) {
  auto check = [](const std::string& label) {
    const bool bad = label.empty() || label == "block" || label == "vertices:" ||
                     label.find_first_of(" \t\r\n#") != std::string::npos;
    if (bad) throw InvalidInput("label \"" + label + "\" cannot be written as a graph token");
  };
  std::ostringstream os;
  os << "# " << graph.num_vertices() << " vertices, " << graph.num_edges() << " edges\n";
  os << "vertices:";
  for (const auto& label : graph.labels()) {
    check(label);
    os << ' ' << label;
  }
  os << '\n';
  for (const auto& [u, v] : graph.edges()) os << graph.label(u) << ' ' << graph.label(v) << '\n';
  if (graph.clique_partition()) {
    for (const auto& block : *graph.clique_partition()) {
      check(block.name);
      if (block.name.find(':') != std::string::npos) {
        throw InvalidInput("block name \"" + block.name + "\" cannot contain ':'");
      }
      os << "block " << block.name << ':';
      for (std::size_t v : block.vertices) os << ' ' << graph.label(v);
      os << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Strategies and packings.

PMEStrategy parse_pme_strategy(std::string_view text, const NonlocalGame& game) {
  const Document doc(text);
  require_kind(doc, "pme");
  const json& root = doc.root();
  PMEStrategy s;
  s.dimension = doc.positive_integer(doc.member(root, "", "dimension"), "/dimension");
  s.alice = measurements_from_json(doc, doc.member(root, "", "alice"), "/alice",
                                   game.alice_questions(), game.alice_answers(), s.dimension);
  if (root.contains("bob")) {
    s.bob = measurements_from_json(doc, root.at("bob"), "/bob", game.bob_questions(),
                                   game.bob_answers(), s.dimension);
  } else if (game.alice_questions() != game.bob_questions() ||
             game.alice_answers() != game.bob_answers()) {
    doc.fail("", "\"bob\" is required unless both players share question and answer labels");
  }
  return s;
}

GeneralStrategy parse_general_strategy(std::string_view text, const NonlocalGame& game) {
  const Document doc(text);
  require_kind(doc, "general");
  const json& root = doc.root();
  GeneralStrategy s;
  s.alice_dimension =
      doc.positive_integer(doc.member(root, "", "alice_dimension"), "/alice_dimension");
  s.bob_dimension = doc.positive_integer(doc.member(root, "", "bob_dimension"), "/bob_dimension");
  const json& state = doc.member(root, "", "state");
  const std::size_t n = s.alice_dimension * s.bob_dimension;
  if (!state.is_array() || state.size() != n) {
    doc.fail("/state", "state must have d_A * d_B = " + std::to_string(n) + " entries");
  }
  s.state.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    s.state(static_cast<Eigen::Index>(i)) = entry_from_json(doc, state[i], child("/state", i));
  }
  s.alice = measurements_from_json(doc, doc.member(root, "", "alice"), "/alice",
                                   game.alice_questions(), game.alice_answers(),
                                   s.alice_dimension);
  s.bob = measurements_from_json(doc, doc.member(root, "", "bob"), "/bob", game.bob_questions(),
                                 game.bob_answers(), s.bob_dimension);
  return s;
}

std::string write_strategy(const NonlocalGame& game, const PMEStrategy& strategy) {
  ojson root = ojson::object();
  root["kind"] = "pme";
  root["dimension"] = strategy.dimension;
  root["alice"] = measurements_to_json(strategy.alice, game.alice_questions(),
                                       game.alice_answers());
  if (strategy.bob) {
    root["bob"] = measurements_to_json(*strategy.bob, game.bob_questions(), game.bob_answers());
  }
  return pretty(root);
}

std::string write_strategy(const NonlocalGame& game, const GeneralStrategy& strategy) {
  ojson root = ojson::object();
  root["kind"] = "general";
  root["alice_dimension"] = strategy.alice_dimension;
  root["bob_dimension"] = strategy.bob_dimension;
  ojson state = ojson::array();
  for (Eigen::Index i = 0; i < strategy.state.size(); ++i) {
    state.push_back(ojson::array({strategy.state(i).real(), strategy.state(i).imag()}));
  }
  root["state"] = std::move(state);
  root["alice"] = measurements_to_json(strategy.alice, game.alice_questions(),
                                       game.alice_answers());
  root["bob"] = measurements_to_json(strategy.bob, game.bob_questions(), game.bob_answers());
  return pretty(root);
}

ProjectivePacking parse_packing(std::string_view text, const Graph& graph) {
  const Document doc(text);
  require_kind(doc, "packing");
  const json& root = doc.root();
  ProjectivePacking p;
  p.dimension = doc.positive_integer(doc.member(root, "", "dimension"), "/dimension");
  const auto d = static_cast<Eigen::Index>(p.dimension);
  p.projectors.assign(graph.num_vertices(), Matrix::Zero(d, d));
  const json& projectors = doc.member(root, "", "projectors");
  if (!projectors.is_object()) doc.fail("/projectors", "expected an object keyed by vertex");
  for (const auto& [label, matrix] : projectors.items()) {
    const std::string path = child("/projectors", label);
    auto v = graph.index_of(label);
    if (!v) doc.fail(path, "unknown vertex \"" + label + "\"");
    p.projectors[*v] = matrix_from_json(doc, matrix, path, p.dimension, p.dimension);
  }
  return p;
}

std::string write_packing(const Graph& graph, const ProjectivePacking& packing) {
  if (packing.projectors.size() != graph.num_vertices()) {
    throw InvalidInput("packing does not match the graph");
  }
  ojson root = ojson::object();
  root["kind"] = "packing";
  root["dimension"] = packing.dimension;
  ojson projectors = ojson::object();
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    if (packing.projectors[v].isZero(0.0)) continue;
    projectors[graph.label(v)] = matrix_to_json(packing.projectors[v]);
  }
  root["projectors"] = std::move(projectors);
  return pretty(root);
}

std::string write_provenance(const NonlocalGame& game, const ReductionArtifact& artifact) {
  const auto& p = artifact.provenance;
  const auto& ext = artifact.extended_game;
  auto origin = [&](const Origin& o, bool question) {
    const bool alice = o.side == Origin::Side::kAlice;
    const auto& labels = question ? (alice ? game.alice_questions() : game.bob_questions())
                                  : (alice ? game.alice_answers() : game.bob_answers());
    return ojson::object({{"side", alice ? "alice" : "bob"}, {"original", labels[o.index]}});
  };
  ojson questions = ojson::array();
  for (std::size_t x = 0; x < p.extended_questions.size(); ++x) {
    ojson entry = origin(p.extended_questions[x], true);
    entry["extended"] = ext.questions()[x];
    questions.push_back(std::move(entry));
  }
  ojson answers = ojson::array();
  for (std::size_t y = 0; y < p.extended_answers.size(); ++y) {
    ojson entry = origin(p.extended_answers[y], false);
    entry["extended"] = ext.answers()[y];
    answers.push_back(std::move(entry));
  }
  ojson root = ojson::object();
  root["target_t"] = artifact.target_t;
  root["graph_vertices"] = artifact.game_graph.num_vertices();
  root["graph_edges"] = artifact.game_graph.num_edges();
  root["vertex_order"] = "question-major: vertex = question * |answers| + answer";
  root["questions"] = std::move(questions);
  root["answers"] = std::move(answers);
  return pretty(root);
}

ArtifactPaths write_artifact(const std::filesystem::path& dir, const NonlocalGame& game,
                             const ReductionArtifact& artifact) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  ArtifactPaths paths{dir / "extended_game.json", dir / "game_graph.txt", dir / "provenance.json"};
  write_text_file(paths.game, write_game(artifact.extended_game.game()));
  write_text_file(paths.graph, write_graph(artifact.game_graph));
  write_text_file(paths.provenance, write_provenance(game, artifact));
  return paths;
}

}  // namespace nlg
