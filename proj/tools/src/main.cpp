#include "ffgs_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const auto report = ffgs::cli::run({argv + 1, argv + argc});
    if (!report.json.empty() && report.exit_code != ffgs::cli::Invalid)
        std::cout << report.json;
    else if (report.exit_code == ffgs::cli::Ok || report.exit_code == ffgs::cli::Indeterminate)
        std::cout << report.text;
    else
        std::cerr << report.text;
    return report.exit_code;
}
