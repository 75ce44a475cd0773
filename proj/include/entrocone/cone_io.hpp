#pragma once

// JSON and plaintext forms of H- and V-representations.
//
// JSON: {"dimension": d, "labels": [...], "equalities": [[...]], "inequalities": [[...]]}
// or    {"dimension": d, "labels": [...], "rays": [[...]], "lineality": [[...]]}.
// Entries are integers, or strings holding an integer or a fraction "p/q";
// a row with fractions is scaled to its primitive integer multiple.

#include <string>

#include "entrocone/polyhedra.hpp"

namespace entrocone::poly {

std::string to_json(const HRep& h);
std::string to_json(const VRep& v);

// PORTA-like sections: DIM, LABELS, EQUALITIES / INEQUALITIES or RAYS / LINEALITY.
std::string to_text(const HRep& h);
std::string to_text(const VRep& v);

// Detects the kind from the keys present; throws FormatError naming the field.
Cone cone_from_json(const std::string& text);

}  // namespace entrocone::poly
