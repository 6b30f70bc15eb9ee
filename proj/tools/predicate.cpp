// Copyright 2026 The privcalc Authors
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

#include "predicate.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "privcalc/error.hpp"

namespace privcalc::tools {
namespace {

enum class TokKind { kIdent, kNumber, kString, kBool, kOp, kAnd, kOr, kLParen, kRParen, kEnd };

struct Token {
  TokKind kind;
  std::string text;
  double number = 0.0;
  bool boolean = false;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::kInvalidArgument,
                "predicate syntax error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      current_ = {TokKind::kEnd, ""};
      return;
    }
    char c = src_[pos_];
    if (c == '(') { ++pos_; current_ = {TokKind::kLParen, "("}; return; }
    if (c == ')') { ++pos_; current_ = {TokKind::kRParen, ")"}; return; }
    if (c == '\'' || c == '"') {
      char quote = c;
      size_t end = src_.find(quote, pos_ + 1);
      if (end == std::string::npos) fail("unterminated string literal");
      current_ = {TokKind::kString, src_.substr(pos_ + 1, end - pos_ - 1)};
      pos_ = end + 1;
      return;
    }
    if (c == '=' || c == '!' || c == '<' || c == '>') {
      std::string op(1, c);
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') op += '=';
      if (op == "=" || op == "!") fail("unknown operator '" + op + "'");
      pos_ += op.size();
      current_ = {TokKind::kOp, op};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      size_t start = pos_;
      if (c == '-' || c == '+') ++pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' ||
              src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '-' || src_[pos_] == '+') &&
               (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      std::string text = src_.substr(start, pos_ - start);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail("bad numeric literal '" + text + "'");
      }
      current_ = {TokKind::kNumber, text, value};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        ++pos_;
      }
      std::string word = src_.substr(start, pos_ - start);
      if (word == "AND" || word == "and") { current_ = {TokKind::kAnd, word}; return; }
      if (word == "OR" || word == "or") { current_ = {TokKind::kOr, word}; return; }
      if (word == "true") { current_ = {TokKind::kBool, word, 0.0, true}; return; }
      if (word == "false") { current_ = {TokKind::kBool, word, 0.0, false}; return; }
      current_ = {TokKind::kIdent, word};
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  size_t pos_ = 0;
  Token current_;
};

int sign_of(int cmp) { return cmp < 0 ? -1 : cmp > 0 ? 1 : 0; }

bool op_accepts(const std::string& op, int sign) {
  if (op == "==") return sign == 0;
  if (op == "!=") return sign != 0;
  if (op == "<") return sign < 0;
  if (op == "<=") return sign <= 0;
  if (op == ">") return sign > 0;
  return sign >= 0;  // ">="
}

class Parser {
 public:
  Parser(const std::string& src, const Schema& schema) : lexer_(src), schema_(schema) {}

  RecordPred parse() {
    RecordPred pred = expr();
    if (lexer_.peek().kind != TokKind::kEnd) {
      throw Error(ErrorKind::kInvalidArgument,
                  "predicate syntax error: trailing input '" + lexer_.peek().text + "'");
    }
    return pred;
  }

 private:
  RecordPred expr() {
    RecordPred left = term();
    while (lexer_.peek().kind == TokKind::kOr) {
      lexer_.take();
      RecordPred right = term();
      left = [l = std::move(left), r = std::move(right)](const Record& rec) {
        return l(rec) || r(rec);
      };
    }
    return left;
  }

  RecordPred term() {
    RecordPred left = atom();
    while (lexer_.peek().kind == TokKind::kAnd) {
      lexer_.take();
      RecordPred right = atom();
      left = [l = std::move(left), r = std::move(right)](const Record& rec) {
        return l(rec) && r(rec);
      };
    }
    return left;
  }

  RecordPred atom() {
    if (lexer_.peek().kind == TokKind::kLParen) {
      lexer_.take();
      RecordPred inner = expr();
      if (lexer_.peek().kind != TokKind::kRParen) {
        throw Error(ErrorKind::kInvalidArgument, "predicate syntax error: expected ')'");
      }
      lexer_.take();
      return inner;
    }
    return comparison();
  }

  RecordPred comparison() {
    Token col = lexer_.take();
    if (col.kind != TokKind::kIdent) {
      throw Error(ErrorKind::kInvalidArgument,
                  "predicate syntax error: expected a column name, got '" + col.text + "'");
    }
    int index = schema_.index_of(col.text);
    if (index < 0) {
      throw Error(ErrorKind::kInvalidSchema, "unknown column '" + col.text + "'");
    }
    Token op = lexer_.take();
    if (op.kind != TokKind::kOp) {
      throw Error(ErrorKind::kInvalidArgument,
                  "predicate syntax error: expected a comparison operator after '" +
                      col.text + "'");
    }
    Token lit = lexer_.take();
    size_t i = static_cast<size_t>(index);
    CellKind kind = schema_.at(i).kind;
    std::string opname = op.text;

    switch (kind) {
      case CellKind::kInt64:
      case CellKind::kFloat64: {
        if (lit.kind != TokKind::kNumber) {
          throw Error(ErrorKind::kInvalidArgument,
                      "column '" + col.text + "' is numeric; literal '" + lit.text +
                          "' is not");
        }
        double target = lit.number;
        return [i, kind, target, opname](const Record& rec) {
          double v = kind == CellKind::kInt64
                         ? static_cast<double>(std::get<int64_t>(rec[i]))
                         : std::get<double>(rec[i]);
          return op_accepts(opname, sign_of(v < target ? -1 : v > target ? 1 : 0));
        };
      }
      case CellKind::kBool: {
        if (lit.kind != TokKind::kBool) {
          throw Error(ErrorKind::kInvalidArgument,
                      "column '" + col.text + "' is bool; use true or false");
        }
        if (opname != "==" && opname != "!=") {
          throw Error(ErrorKind::kInvalidArgument,
                      "bool columns support only == and !=");
        }
        bool target = lit.boolean;
        return [i, target, opname](const Record& rec) {
          bool v = std::get<bool>(rec[i]);
          return opname == "==" ? v == target : v != target;
        };
      }
      case CellKind::kString: {
        if (lit.kind != TokKind::kString && lit.kind != TokKind::kIdent) {
          throw Error(ErrorKind::kInvalidArgument,
                      "column '" + col.text + "' is a string; quote the literal");
        }
        std::string target = lit.text;
        return [i, target, opname](const Record& rec) {
          const std::string& v = std::get<std::string>(rec[i]);
          return op_accepts(opname, sign_of(v.compare(target)));
        };
      }
    }
    throw Error(ErrorKind::kInvalidArgument, "unsupported column kind");
  }

  Lexer lexer_;
  const Schema& schema_;
};

}  // namespace

RecordPred parse_predicate(const std::string& expr, const Schema& schema) {
  return Parser(expr, schema).parse();
}

}  // namespace privcalc::tools
