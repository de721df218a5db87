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

// Lexical outline of brace-delimited test sources (Java and friends).
//
// The scanner understands just enough of the language to find method
// boundaries: it skips line comments, block comments, string literals, text
// blocks and character literals, tracks brace depth, and recognises
// `package`, `import`, annotations and type declarations. Everything else is
// an opaque token.
//
// When the source has no top-level type declaration it is treated as a bare
// class body, so a method snippet produced by locate_method() can be scanned
// again on its own.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multifault/errors.hpp"

namespace multifault {

class ExtractError : public DomainError {
 public:
  using DomainError::DomainError;
};
class MethodNotFound : public ExtractError {
 public:
  using ExtractError::ExtractError;
};
class AmbiguousMethod : public ExtractError {
 public:
  using ExtractError::ExtractError;
};
class SourceParseError : public ExtractError {
 public:
  using ExtractError::ExtractError;
};

struct MethodSpan {
  std::string name;
  int start_line = 0;  // first annotation, or signature when unannotated
  int end_line = 0;    // closing brace
  std::string text;    // source lines start_line..end_line joined by '\n'
  std::vector<std::string> annotations;

  friend bool operator==(const MethodSpan&, const MethodSpan&) = default;
};

struct ImportDecl {
  std::string raw;  // "import static a.b.C.d;" as written, whitespace trimmed
  bool is_static = false;
  std::string path;  // "a.b.C.d"

  static ImportDecl parse(std::string_view raw);
  friend bool operator==(const ImportDecl&, const ImportDecl&) = default;
};

struct SourceOutline {
  std::optional<int> package_line;
  std::vector<ImportDecl> imports;  // file order, duplicates kept
  std::vector<int> import_end_lines;
  std::string class_name;  // empty in snippet mode
  // Offset of the closing brace of the primary class; npos in snippet mode.
  std::size_t class_close_offset = std::string::npos;
  std::vector<MethodSpan> methods;
};

// Throws SourceParseError on unbalanced braces or unterminated literals.
SourceOutline outline_source(std::string_view source);

// Throws MethodNotFound, AmbiguousMethod (overloads) or SourceParseError.
MethodSpan locate_method(std::string_view source, std::string_view method_name);

// Import declarations in file order, deduplicated by raw text.
std::vector<ImportDecl> extract_imports(std::string_view source);

// Method names of the primary top-level class, file order.
std::vector<std::string> list_methods(std::string_view source);

}  // namespace multifault
