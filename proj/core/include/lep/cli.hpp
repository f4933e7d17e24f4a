#pragma once

#include <string>
#include <vector>

namespace lep {

/// Command dispatcher behind the `lep` tool. Exit codes: 0 success / all
/// verdicts pass, 1 verdict failure (invalid complex, failed check, failed
/// hypothesis), 2 usage or parse errors.
int run_command(const std::vector<std::string>& args);

}  // namespace lep
