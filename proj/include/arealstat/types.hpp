#pragma once

#include <string>

#include "arealstat/errors.hpp"

namespace arealstat {

enum class Tail { TwoSided, Left, Right };

inline const char* tail_name(Tail t) {
  switch (t) {
    case Tail::TwoSided: return "two";
    case Tail::Left: return "left";
    case Tail::Right: return "right";
  }
  return "?";
}

inline Tail parse_tail(const std::string& s) {
  if (s == "two") return Tail::TwoSided;
  if (s == "left") return Tail::Left;
  if (s == "right") return Tail::Right;
  throw DomainError("unknown tail '" + s + "' (expected two|left|right)");
}

}  // namespace arealstat
