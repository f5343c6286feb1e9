//==============================================================================
// cli.hpp
// Command-line driver. Subcommands: run, convergence, blowup-probe,
// energy-audit, lemma-check. Exit codes: 0 success, 2 configuration error,
// 3 numerical divergence (truncated outputs are still written).
//==============================================================================
#pragma once

#include <string>
#include <vector>

namespace pga {

int run_cli(const std::vector<std::string>& args);

}  // namespace pga
