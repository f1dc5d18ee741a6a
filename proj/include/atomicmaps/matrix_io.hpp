// Copyright 2026 The atomicmaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Plain-text matrix files:
//
//   CMAT <rows> <cols>
//   <re>,<im> <re>,<im> ...      (rows x cols tokens, row-major)
//
// Numbers are written in shortest round-trip form, so parse(format(M))
// reproduces M bit for bit.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "atomicmaps/numkernel.hpp"

namespace atomicmaps {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_cmat(const CMat& m) {
  if (!all_finite(m)) throw Error("format_cmat: matrix has non-finite entries");
  std::string out = "CMAT " + std::to_string(m.rows()) + " " + std::to_string(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += '\n';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_double(m(r, c).real());
      out += ',';
      out += format_double(m(r, c).imag());
    }
  }
  return out;
}

namespace detail {

struct Token {
  std::string_view text;
  int line;
  int column;
};

/// Splits on whitespace, tracking 1-based line/column of each token.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view src) : src_(src) {}

  bool next(Token& tok) {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
    if (pos_ >= src_.size()) return false;
    const std::size_t start = pos_;
    tok.line = line_;
    tok.column = column_;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
    tok.text = src_.substr(start, pos_ - start);
    return true;
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

inline double parse_number(std::string_view text, const Token& tok) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
    throw ParseError("invalid number '" + std::string(text) + "'", tok.line,
                     tok.column);
  return v;
}

inline long parse_extent(const Token& tok) {
  long v = 0;
  const auto res =
      std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size() || v < 1)
    throw ParseError("invalid matrix extent '" + std::string(tok.text) + "'",
                     tok.line, tok.column);
  return v;
}

}  // namespace detail

inline CMat parse_cmat(std::string_view text) {
  detail::Tokenizer lex(text);
  detail::Token tok{};
  if (!lex.next(tok) || tok.text != "CMAT")
    throw ParseError("expected header 'CMAT <rows> <cols>'", tok.line ? tok.line : 1,
                     tok.column ? tok.column : 1);
  detail::Token rows_tok{}, cols_tok{};
  if (!lex.next(rows_tok) || !lex.next(cols_tok))
    throw ParseError("truncated header", lex.line(), lex.column());
  const long rows = detail::parse_extent(rows_tok);
  const long cols = detail::parse_extent(cols_tok);

  CMat m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) {
      if (!lex.next(tok))
        throw ParseError("expected " + std::to_string(rows * cols) +
                             " entries, found " + std::to_string(r * cols + c),
                         lex.line(), lex.column());
      const auto comma = tok.text.find(',');
      if (comma == std::string_view::npos)
        throw ParseError("entry '" + std::string(tok.text) + "' is not <re>,<im>",
                         tok.line, tok.column);
      m(r, c) = Complex(detail::parse_number(tok.text.substr(0, comma), tok),
                        detail::parse_number(tok.text.substr(comma + 1), tok));
    }
  if (lex.next(tok))
    throw ParseError("trailing data '" + std::string(tok.text) + "'", tok.line,
                     tok.column);
  return m;
}

inline CMat read_cmat(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_cmat: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read_cmat: read failed for '" + path + "'");
  return parse_cmat(buf.str());
}

inline void write_cmat(const std::string& path, const CMat& m) {
  const std::string text = format_cmat(m) + '\n';
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_cmat: cannot open '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write_cmat: write failed for '" + path + "'");
}

}  // namespace atomicmaps
