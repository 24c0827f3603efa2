#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "fourneg/lattice.hpp"
#include "fourneg/logic.hpp"

namespace fourneg {

// `catalog:NAME` or a lattice file path. Throws on unreadable or malformed input.
std::shared_ptr<const FiniteOrthoLattice> load_lattice(const std::string& uri);
// Also accepts `subclop:NAME` (NAME a catalog name or a lattice file) and `chain:N`.
AlgebraModel load_model(const std::string& uri, std::size_t max_subclop);

// Runs one command line (without the program name). Exit codes: 0 clean,
// 1 some claim VIOLATED or an internal library error, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fourneg
