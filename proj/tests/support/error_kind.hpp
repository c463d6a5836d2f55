#pragma once

#include <gtest/gtest.h>

#include "frustra/error.hpp"

/// Kind of the frustra::Error thrown by fn; records a failure if nothing is thrown.
template <typename Fn>
frustra::ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const frustra::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a frustra::Error";
  return frustra::ErrorKind::Parse;
}
