#pragma once

#include <string>
#include <utility>

#include "pfet/error.hpp"

namespace pfet::protocol {

/// Runs `body`, prefixing any library error with the protocol block label.
template <typename F>
decltype(auto) in_block(const char* label, F&& body) {
  try {
    return std::forward<F>(body)();
  } catch (Error& e) {
    e.add_context(label);
    throw;
  }
}

}  // namespace pfet::protocol
