// Copyright 2026 The codemeta Authors.
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace codemeta {

enum class ErrorCode {
  InvalidIdentifier,
  UnsupportedFileType,
  ParseError,
  ConfigError,
  UnknownProvider,
  UnsupportedLanguage,
  ProviderUnavailable,
  IoError,
  FormatError,
  UnknownTarget,
  InvalidAnnotation,
  SchemaError,
  InvalidRequest,
  InvalidArgument,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIdentifier: return "InvalidIdentifier";
    case ErrorCode::UnsupportedFileType: return "UnsupportedFileType";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownProvider: return "UnknownProvider";
    case ErrorCode::UnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::InvalidAnnotation: return "InvalidAnnotation";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// that the CLI and the HTTP service can map it to an exit code or status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace codemeta
