#pragma once

#include <string>

#include "eqsurf/surfaces.hpp"

namespace eqsurf {

/// Parses the surface DSL:
///
///   surface := "S(2,0)" | "S(2,1)" | "S(2,2)" | "S2a" | "T1anti"
///            | "triv(" noneq ")" | "free(" noneq "," bits ")"
///            | "doub(" noneq "," ("S10" | "S11") ")"
///            | surface "#" noneq | surface "+S10AT" | surface "+S11AT" | surface "+FM"
///   noneq   := "M" int | "N" int
///
/// Suffix operators are left-associative; whitespace is ignored. Syntax and
/// semantic errors are reported as ParseError with the offset of the offending
/// token in the original text.
SurfacePtr parse_surface(const std::string& text);

/// "T1anti": the orientation double cover of the Klein bottle.
SurfacePtr t1_anti();

}  // namespace eqsurf
