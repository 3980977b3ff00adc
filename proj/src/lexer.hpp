#pragma once

// Shared tokenizer for formulas, structures, sequents, and rule files.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace lei::detail {

enum class Tok { LPar, RPar, Comma, Turnstile, And, Or, Colon, At, Hash, Word, End };

struct Token {
  Tok kind;
  std::string text;  // Word/At/Hash payload (without sigil)
  size_t pos = 0;
};

inline bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error(msg + " at position " + std::to_string(i));
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    size_t start = i;
    if (c == '(') { out.push_back({Tok::LPar, "", start}); ++i; }
    else if (c == ')') { out.push_back({Tok::RPar, "", start}); ++i; }
    else if (c == ',') { out.push_back({Tok::Comma, "", start}); ++i; }
    else if (c == ':') { out.push_back({Tok::Colon, "", start}); ++i; }
    else if (c == '|') {
      if (i + 1 >= s.size() || s[i + 1] != '-') fail("expected |-");
      out.push_back({Tok::Turnstile, "", start});
      i += 2;
    } else if (c == '/') {
      if (i + 1 >= s.size() || s[i + 1] != '\\') fail("expected /\\");
      out.push_back({Tok::And, "", start});
      i += 2;
    } else if (c == '\\') {
      if (i + 1 >= s.size() || s[i + 1] != '/') fail("expected \\/");
      out.push_back({Tok::Or, "", start});
      i += 2;
    } else if (c == '@' || c == '#') {
      ++i;
      size_t ws = i;
      while (i < s.size() && word_char(s[i])) ++i;
      if (i == ws) fail("expected name after sigil");
      out.push_back({c == '@' ? Tok::At : Tok::Hash, s.substr(ws, i - ws), start});
    } else if (word_char(c)) {
      while (i < s.size() && word_char(s[i])) ++i;
      out.push_back({Tok::Word, s.substr(start, i - start), start});
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", i});
  return out;
}

struct TokenStream {
  std::vector<Token> toks;
  size_t at = 0;

  const Token& peek() const { return toks[at]; }
  Token next() { return toks[at++]; }
  bool eat(Tok k) {
    if (toks[at].kind == k) { ++at; return true; }
    return false;
  }
  void expect(Tok k, const std::string& what) {
    if (!eat(k))
      throw std::runtime_error("expected " + what + " at position " +
                               std::to_string(toks[at].pos));
  }
};

}  // namespace lei::detail
