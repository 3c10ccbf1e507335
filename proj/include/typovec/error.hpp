#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace typovec {

enum class Errc {
  invalid_argument,
  io,
  parse,
  invalid_utf8,
  empty_input,
  too_small,
  mismatch,
  missing_value,
  missing_artifact,
  config,
  numeric,
};

std::string_view to_string(Errc code) noexcept;

// All toolkit failures surface as this exception; the CLI prints
// `error[<code>]: <message>` on one line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace typovec
