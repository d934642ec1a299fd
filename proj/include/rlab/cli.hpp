#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rlab/hypergraph.hpp"

namespace rlab {

// Runs `removal-lab` with args[0] as the program name. Reports go to `out`
// (or --out), diagnostics to `err`. Returns 0 on success, 1 on a verification
// failure, 2 on bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A motif name (see MotifSpec::named) or "v0;a b;c d;..." with 0-based labels.
MotifSpec parse_motif(const std::string& text);

std::string event_grammar_help();

}  // namespace rlab
