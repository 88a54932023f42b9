#include <CLI11.hpp>

#include <iostream>

#include "cosupp/cli/commands.hpp"

using namespace cosupp;

int main(int argc, char** argv) {
    CLI::App app{"Localization functors with cosupport in finite fragments of Spec R"};
    app.require_subcommand(1);

    std::string scene_path, window_text, degree_text;
    bool json = false;

    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name, "run " + name + " on a scene");
        sub->add_option("--scene", scene_path, "scene file (YAML)")->required();
        sub->add_option("--window", window_text, "window a,b,g");
        sub->add_option("--degree-range", degree_text, "only degrees LO..HI");
        sub->add_flag("--json", json, "print the JSON report");
    }
    auto* self = app.add_subcommand("selftest", "replay the bundled examples");
    self->add_flag("--json", json, "print the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == self) return run_selftest(std::cout, json);

    RunOptions opt;
    try {
        if (!window_text.empty()) {
            auto parts = CLI::detail::split(window_text, ',');
            if (parts.size() != 3) fail(ErrorKind::Validation, "--window expects a,b,g");
            opt.window = Window{std::stoi(parts[0]), std::stoi(parts[1]), std::stoi(parts[2])};
        }
        if (!degree_text.empty()) opt.degrees = parse_degree_range(degree_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    RunOutcome out = run_scene_file(chosen->get_name(), scene_path, opt);
    if (json)
        std::cout << out.report.dump(2) << "\n";
    else
        std::cout << render_text(out.report);
    return out.exit_code;
}
