#include <CLI11.hpp>

#include <iostream>

#include "singlet/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "1..15, all when omitted");
  CLI11_PARSE(app, argc, argv);

  namespace acc = singlet::acceptance;
  std::vector<acc::CriterionResult> results;
  try {
    if (criterion) results.push_back(acc::run_criterion(criterion));
    else results = acc::run_all();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  int failed = 0;
  for (auto& r : results) {
    std::cout << acc::format_line(r) << "\n";
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
