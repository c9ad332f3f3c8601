#pragma once

#include <string>

#include "mu/molecule.hpp"

namespace mu {

// TRIPOS mol2: @<TRIPOS>MOLECULE, @<TRIPOS>ATOM and @<TRIPOS>BOND sections.
// Coordinates are read as decimal Angstrom, atom ids re-based to 0 and bond
// type codes mapped as 1/2/3/ar/am. Unknown sections are skipped with a
// warning on stderr. Ring membership is annotated before returning.
Molecule parse_mol2(const std::string& text);

// MDL molfile (V2000 counts/atom/bond block), same contract as parse_mol2.
Molecule parse_mol(const std::string& text);

}  // namespace mu
