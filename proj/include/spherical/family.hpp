#pragma once

#include <string>

#include "errors.hpp"

namespace spherical {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return Family::A;
      case 'B': case 'b': return Family::B;
      case 'C': case 'c': return Family::C;
      case 'D': case 'd': return Family::D;
      case 'E': case 'e': return Family::E;
      case 'F': case 'f': return Family::F;
      case 'G': case 'g': return Family::G;
      default: break;
    }
  }
  throw InvalidArgument("unknown Cartan type '" + s + "'");
}

inline char family_char(Family f) { return static_cast<char>(f); }

/// Throws unless (f, rank) names an irreducible reduced root system.
inline void check_type(Family f, int rank) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok)
    throw InvalidArgument(std::string("no root system of type ") + family_char(f) +
                          std::to_string(rank));
}

}  // namespace spherical
