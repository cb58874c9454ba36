#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffb/errors.hpp"

namespace ffb {

// Floating-point values in machine-readable outputs are always printed with
// 17 significant digits, so identical runs produce byte-identical files.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

// Minimal JSON emitter for the flat result schemas: objects, arrays, numbers
// printed via fmt_g17, no nesting helpers beyond what the outputs need.
class JsonWriter {
 public:
  JsonWriter& begin_object() { open("{"); return *this; }
  JsonWriter& end_object() { close("}"); return *this; }
  JsonWriter& begin_array(const std::string& key) { key_(key); open("["); return *this; }
  JsonWriter& begin_array() { open("["); return *this; }
  JsonWriter& end_array() { close("]"); return *this; }
  JsonWriter& begin_object(const std::string& key) { key_(key); open("{"); return *this; }

  JsonWriter& field(const std::string& key, double v) { key_(key); raw(fmt_g17(v)); return *this; }
  JsonWriter& field(const std::string& key, int v) { key_(key); raw(std::to_string(v)); return *this; }
  JsonWriter& field(const std::string& key, long v) { key_(key); raw(std::to_string(v)); return *this; }
  JsonWriter& field(const std::string& key, unsigned long v) { key_(key); raw(std::to_string(v)); return *this; }
  JsonWriter& field(const std::string& key, unsigned long long v) { key_(key); raw(std::to_string(v)); return *this; }
  JsonWriter& field(const std::string& key, bool v) { key_(key); raw(v ? "true" : "false"); return *this; }
  JsonWriter& field(const std::string& key, const std::string& v) { key_(key); raw(quote(v)); return *this; }
  JsonWriter& field(const std::string& key, const char* v) { key_(key); raw(quote(v)); return *this; }
  JsonWriter& null_field(const std::string& key) { key_(key); raw("null"); return *this; }
  JsonWriter& element(double v) { sep(); raw_nosep(fmt_g17(v)); return *this; }
  JsonWriter& element(int v) { sep(); raw_nosep(std::to_string(v)); return *this; }

  std::string str() const { return out_; }

 private:
  void open(const char* c) { sep(); out_ += c; fresh_ = true; }
  void close(const char* c) { out_ += c; fresh_ = false; }
  void key_(const std::string& k) { sep(); out_ += quote(k); out_ += ":"; fresh_ = true; }
  void raw(const std::string& s) { out_ += s; fresh_ = false; }
  void raw_nosep(const std::string& s) { out_ += s; fresh_ = false; }
  void sep() {
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
        out_.back() != ':')
      out_ += ",";
    fresh_ = false;
  }
  static std::string quote(const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      switch (c) {
        case '"': q += "\\\""; break;
        case '\\': q += "\\\\"; break;
        case '\n': q += "\\n"; break;
        case '\t': q += "\\t"; break;
        default: q += c;
      }
    }
    q += "\"";
    return q;
  }

  std::string out_;
  bool fresh_ = true;
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* s = tok.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  if (end == s) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return true;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      toks.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  toks.push_back(cur);
  return toks;
}

}  // namespace detail

// Comma-delimited numeric columns; a single leading non-numeric row is
// treated as a header and skipped.
inline std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                         std::size_t expected_cols) {
  const std::string text = read_text_file(path);
  std::vector<std::vector<double>> cols(expected_cols);
  std::istringstream in(text);
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto toks = detail::split_csv_line(line);
    if (toks.size() != expected_cols)
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(expected_cols) + " columns");
    std::vector<double> vals(expected_cols);
    bool ok = true;
    for (std::size_t c = 0; c < expected_cols; ++c)
      ok = ok && detail::parse_double(toks[c], vals[c]);
    if (!ok) {
      if (first) { first = false; continue; }  // header row
      throw FormatError(path + ":" + std::to_string(lineno) + ": non-numeric value");
    }
    first = false;
    for (std::size_t c = 0; c < expected_cols; ++c) {
      if (!std::isfinite(vals[c]))
        throw FormatError(path + ":" + std::to_string(lineno) + ": non-finite value");
      cols[c].push_back(vals[c]);
    }
  }
  if (cols[0].empty()) throw FormatError(path + ": no data rows");
  return cols;
}

inline std::vector<double> read_csv_column(const std::string& path) {
  return read_csv_columns(path, 1)[0];
}

inline void write_csv_column(const std::string& path, const std::vector<double>& v,
                             const std::string& header = "") {
  std::string out;
  if (!header.empty()) out += header + "\n";
  for (double x : v) out += fmt_g17(x) + "\n";
  write_text_file(path, out);
}

}  // namespace ffb
