// Copyright 2026 The multifault Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multifault/extractor.hpp"

#include <algorithm>
#include <set>

namespace multifault {
namespace {

enum class Tok { Ident, Literal, Symbol };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
  int line;

  bool is(char c) const { return kind == Tok::Symbol && text.size() == 1 && text[0] == c; }
  bool is_ident(std::string_view s) const { return kind == Tok::Ident && text == s; }
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_char(unsigned char c) { return ident_start(c) || std::isdigit(c); }

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  const std::size_t n = src.size();
  auto fail = [&](const std::string& what, int at) {
    throw SourceParseError(what + " starting at line " + std::to_string(at));
  };
  while (i < n) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const int at = line;
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= n) fail("unterminated block comment", at);
      i += 2;
      continue;
    }
    if (src.substr(i, 3) == R"(""")") {
      const int at = line;
      const std::size_t start = i;
      i += 3;
      while (i < n && src.substr(i, 3) != R"(""")") {
        if (src[i] == '\\') ++i;
        else if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= n) fail("unterminated text block", at);
      i += 3;
      out.push_back({Tok::Literal, src.substr(start, i - start), start, at});
      continue;
    }
    if (c == '"' || c == '\'') {
      const std::size_t start = i;
      ++i;
      while (i < n && src[i] != c) {
        if (src[i] == '\n') fail("unterminated literal", line);
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) fail("unterminated literal", line);
      ++i;
      out.push_back({Tok::Literal, src.substr(start, i - start), start, line});
      continue;
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < n && ident_char(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Ident, src.substr(start, i - start), start, line});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < n && (ident_char(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      out.push_back({Tok::Literal, src.substr(start, i - start), start, line});
      continue;
    }
    out.push_back({Tok::Symbol, src.substr(i, 1), i, line});
    ++i;
  }
  return out;
}

// Index of the matching '}' for every '{' token.
std::vector<std::size_t> match_braces(const std::vector<Token>& toks) {
  std::vector<std::size_t> match(toks.size(), std::string::npos);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].is('{')) {
      stack.push_back(i);
    } else if (toks[i].is('}')) {
      if (stack.empty())
        throw SourceParseError("unbalanced '}' at line " + std::to_string(toks[i].line));
      match[stack.back()] = i;
      stack.pop_back();
    }
  }
  if (!stack.empty())
    throw SourceParseError("unclosed '{' opened at line " +
                           std::to_string(toks[stack.back()].line));
  return match;
}

bool is_type_keyword(std::string_view s) {
  return s == "class" || s == "interface" || s == "enum" || s == "record";
}

bool is_statement_keyword(std::string_view s) {
  static const std::set<std::string_view> kw = {
      "if", "for", "while", "switch", "catch", "synchronized", "return", "new",
      "try", "do", "else", "assert", "throw"};
  return kw.count(s) != 0;
}

struct TypeDecl {
  std::string name;
  bool is_public = false;
  std::size_t open = 0;
  std::size_t close = 0;
};

struct RawMethod {
  std::string name;
  std::size_t first_token = 0;
  std::size_t close = 0;
  std::vector<std::string> annotations;
};

struct Level {
  std::vector<TypeDecl> types;
  std::vector<RawMethod> methods;
  std::vector<std::pair<std::size_t, std::size_t>> imports;  // [first, ';']
  std::optional<std::size_t> package_token;
};

class Scanner {
 public:
  Scanner(std::string_view src, std::vector<Token> toks)
      : src_(src), toks_(std::move(toks)), match_(match_braces(toks_)) {}

  const std::vector<Token>& tokens() const { return toks_; }

  // Classifies the members found between [begin, end) at one nesting level.
  Level scan(std::size_t begin, std::size_t end) const {
    Level level;
    std::size_t member = begin;
    int parens = 0;
    std::size_t i = begin;
    while (i < end) {
      const Token& t = toks_[i];
      if (t.is('(')) ++parens;
      if (t.is(')')) parens = std::max(0, parens - 1);
      if (t.is(';') && parens == 0) {
        if (member < i && toks_[member].is_ident("import"))
          level.imports.emplace_back(member, i);
        else if (member < i && toks_[member].is_ident("package"))
          level.package_token = member;
        else if (member < i)
          classify(member, i, i, level);  // bodiless declaration
        member = ++i;
        continue;
      }
      if (t.is('{')) {
        const std::size_t close = match_[i];
        if (parens > 0) {
          // Array initializer inside annotation arguments.
          i = close + 1;
          continue;
        }
        classify(member, i, close, level);
        i = close + 1;
        member = i;
        parens = 0;
        continue;
      }
      ++i;
    }
    return level;
  }

 private:
  void classify(std::size_t begin, std::size_t open, std::size_t close,
                Level& level) const {
    int parens = 0;
    std::vector<std::string> annotations;
    std::optional<std::size_t> call_paren;
    for (std::size_t k = begin; k < open; ++k) {
      const Token& t = toks_[k];
      if (t.is('@') && k + 1 < open && toks_[k + 1].kind == Tok::Ident &&
          !toks_[k + 1].is_ident("interface") && parens == 0) {
        std::string name(toks_[k + 1].text);
        k += 1;
        while (k + 2 < open && toks_[k + 1].is('.') && toks_[k + 2].kind == Tok::Ident) {
          name += "." + std::string(toks_[k + 2].text);
          k += 2;
        }
        if (k + 1 < open && toks_[k + 1].is('(')) {
          int depth = 0;
          for (++k; k < open; ++k) {
            if (toks_[k].is('(')) ++depth;
            if (toks_[k].is(')') && --depth == 0) break;
          }
        }
        annotations.push_back(std::move(name));
        continue;
      }
      if (parens == 0) {
        const bool after_dot = k > begin && toks_[k - 1].is('.');
        if (t.kind == Tok::Ident && is_type_keyword(t.text) && !after_dot) {
          if (open == close) return;
          TypeDecl decl;
          for (std::size_t j = k + 1; j < open; ++j) {
            if (toks_[j].kind == Tok::Ident) {
              decl.name = std::string(toks_[j].text);
              break;
            }
          }
          for (std::size_t j = begin; j < k; ++j)
            if (toks_[j].is_ident("public")) decl.is_public = true;
          decl.open = open;
          decl.close = close;
          level.types.push_back(std::move(decl));
          return;
        }
        if (t.is('=') || t.is_ident("new")) return;  // initializer expression
        if (t.is('(') && !call_paren) call_paren = k;
      }
      if (t.is('(')) ++parens;
      if (t.is(')')) --parens;
    }
    if (!call_paren || *call_paren == begin) return;  // initializer block
    const Token& name = toks_[*call_paren - 1];
    if (name.kind != Tok::Ident || is_statement_keyword(name.text)) return;
    level.methods.push_back({std::string(name.text), begin, close, std::move(annotations)});
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::vector<std::size_t> match_;
};

std::vector<std::string_view> split_lines(std::string_view src) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (true) {
    auto pos = src.find('\n', start);
    if (pos == std::string_view::npos) {
      lines.push_back(src.substr(start));
      return lines;
    }
    lines.push_back(src.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

ImportDecl ImportDecl::parse(std::string_view raw) {
  raw = trim(raw);
  auto toks = tokenize(raw);
  ImportDecl decl;
  decl.raw = std::string(raw);
  std::size_t k = 0;
  if (k < toks.size() && toks[k].is_ident("import")) ++k;
  if (k < toks.size() && toks[k].is_ident("static")) {
    decl.is_static = true;
    ++k;
  }
  for (; k < toks.size() && !toks[k].is(';'); ++k) decl.path += toks[k].text;
  return decl;
}

SourceOutline outline_source(std::string_view source) {
  Scanner scanner(source, tokenize(source));
  const auto& toks = scanner.tokens();
  Level top = scanner.scan(0, toks.size());

  SourceOutline outline;
  if (top.package_token) outline.package_line = toks[*top.package_token].line;
  for (auto [first, semi] : top.imports) {
    auto raw = source.substr(toks[first].offset, toks[semi].offset + 1 - toks[first].offset);
    outline.imports.push_back(ImportDecl::parse(raw));
    outline.import_end_lines.push_back(toks[semi].line);
  }

  std::vector<RawMethod> methods = std::move(top.methods);
  if (!top.types.empty()) {
    auto primary = std::find_if(top.types.begin(), top.types.end(),
                                [](const TypeDecl& t) { return t.is_public; });
    if (primary == top.types.end()) primary = top.types.begin();
    outline.class_name = primary->name;
    outline.class_close_offset = toks[primary->close].offset;
    methods = scanner.scan(primary->open + 1, primary->close).methods;
  }

  const auto lines = split_lines(source);
  for (auto& m : methods) {
    if (!outline.class_name.empty() && m.name == outline.class_name) continue;  // constructor
    MethodSpan span;
    span.name = std::move(m.name);
    span.start_line = toks[m.first_token].line;
    span.end_line = toks[m.close].line;
    span.annotations = std::move(m.annotations);
    const std::size_t from = lines[span.start_line - 1].data() - source.data();
    const auto& last = lines[span.end_line - 1];
    const std::size_t to = last.data() - source.data() + last.size();
    span.text = std::string(source.substr(from, to - from));
    outline.methods.push_back(std::move(span));
  }
  return outline;
}

MethodSpan locate_method(std::string_view source, std::string_view method_name) {
  auto outline = outline_source(source);
  const MethodSpan* hit = nullptr;
  int count = 0;
  for (const auto& m : outline.methods) {
    if (m.name == method_name) {
      hit = &m;
      ++count;
    }
  }
  if (count == 0) throw MethodNotFound("method '" + std::string(method_name) + "' not found");
  if (count > 1)
    throw AmbiguousMethod("method '" + std::string(method_name) + "' is declared " +
                          std::to_string(count) + " times");
  return *hit;
}

std::vector<ImportDecl> extract_imports(std::string_view source) {
  std::vector<ImportDecl> out;
  std::set<std::string> seen;
  for (auto& decl : outline_source(source).imports)
    if (seen.insert(decl.raw).second) out.push_back(std::move(decl));
  return out;
}

std::vector<std::string> list_methods(std::string_view source) {
  std::vector<std::string> out;
  for (auto& m : outline_source(source).methods) out.push_back(std::move(m.name));
  return out;
}

}  // namespace multifault
