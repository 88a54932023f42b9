#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cosupp/cli/report.hpp"

namespace cosupp {

struct RunOptions {
    std::optional<Window> window;  // replaces the scene windows
    DegreeRange degrees;
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok/certified, 2 error, 3 failed, 4 inconclusive
    Json report;
};

const std::vector<std::string>& command_names();

// An empty command runs the scene's own `command.run`. Errors never escape;
// they become exit code 2 with an "error" field.
RunOutcome run_command(const std::string& command, const Scene& s, const RunOptions& o);
RunOutcome run_scene_text(const std::string& command, const std::string& text, const RunOptions& o);
RunOutcome run_scene_file(const std::string& command, const std::string& path, const RunOptions& o);

int exit_code_for(const std::string& status);

// Deterministic JSON text: the timing field is zeroed when strip_timing is set.
std::string report_dump(const Json& report, bool strip_timing = false);

struct SelftestScene {
    std::string file;  // name under scenes/
    std::string text;
};
const std::vector<SelftestScene>& selftest_scenes();

// Replays the bundled examples; returns the exit code (0 when all pass).
int run_selftest(std::ostream& os, bool json);

} // namespace cosupp
