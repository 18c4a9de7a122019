#pragma once

#include <optional>

#include "qsl/error.hpp"

// Error code thrown by f(), or nullopt if it returned normally.
template <class F>
std::optional<qsl::Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const qsl::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_ERRC(expr, errc) CHECK(thrown_code([&] { (void)(expr); }) == std::optional<qsl::Errc>(errc))
