#pragma once

#include <string>

#include "bv/poly.hpp"

namespace bv {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// Canonical text form. Grammar:
//   expression := "0" | rational | factor | "(+ " expression+ ")"
//               | "(* " rational? factor+ ")"
//   factor     := generator ("^" integer)?      (integer may be negative)
//   generator  := NAME | "(D" jet " " NAME ")"  with jet >= 1
//   NAME       := field name, plus its component spelled with the field's
//                 separator ('_', '^' or '.') for multi-component fields
//   rational   := integer ("/" positive-integer)?  in lowest terms
// Terms are emitted in the canonical monomial order, so serialization is
// bit-exact reproducible.
std::string serialize(const Poly& f);
Poly parse(const ModelAlgebra& model, const std::string& text);

} // namespace bv
