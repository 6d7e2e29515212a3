// Command line entry point. Exit codes: 0 all checks passed, 1 at least one
// check failed, 2 configuration error.

#include <fstream>
#include <iostream>

#include "report.hpp"
#include "runconfig.hpp"
#include "suites.hpp"

int main(int argc, char** argv) {
  using namespace qkzr::cli;

  RunConfig cfg;
  try {
    cfg = parse_config(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ReportDocument doc;
  const int code = run_suites(cfg, doc);
  const std::string text = render_report(doc);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot write output file '" << cfg.output << "'\n";
      return 2;
    }
    out << text;
    std::cout << summary_line(doc) << "; report written to " << cfg.output << "\n";
  }
  return code;
}
