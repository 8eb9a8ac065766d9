#pragma once

#include <string>
#include <string_view>

#include "kuperberg/hopf.hpp"

namespace kuperberg {

/// Reads the line-oriented .hopf format:
///
///   name sweedler_h4
///   dim 4
///   field rational            (or "prime 7", "cyclotomic 3")
///   basis 1 g x gx
///   unit 0 1                  unit coordinate: index, coefficient
///   counit 0 1
///   mult 1 1 0 1              e_1 e_1 = 1 e_0
///   comult 2 2 0 1            Delta(e_2) has 1 e_2 (x) e_0
///   antipode 2 3 1            S(e_2) has 1 e_3
///
/// Coefficients are "a/b" or, over cyclotomic fields, "[c0,c1,...]". Unless `verify` is false
/// the result must pass check_hopf_axioms, otherwise axiom_failure is thrown.
HopfAlgebra parse_hopf(std::string_view text, bool verify = true);
HopfAlgebra load_hopf(const std::string& path, bool verify = true);

/// Canonical text in the same format; parse_hopf(serialize_hopf(H)) reproduces H.
std::string serialize_hopf(const HopfAlgebra& H);

}  // namespace kuperberg
