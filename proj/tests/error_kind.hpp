#pragma once

#include <gtest/gtest.h>

#include "dblrot/error.hpp"

namespace dblrot::testing {

/// The kind of the Error thrown by f; a test failure if nothing is thrown.
template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace dblrot::testing
