// limitp: constants and empirical checks for shifted k-free tuples on primes.

#include <exception>
#include <iostream>

#include "limitp/report.hpp"
#include "limitp/run_config.hpp"

int main(int argc, char** argv) {
  limitp::RunConfig config;
  try {
    config = limitp::parse_config(argc, argv);
  } catch (const limitp::HelpRequested& help) {
    std::cout << help.what();
    return limitp::kExitOk;
  } catch (const limitp::UsageError& e) {
    std::cerr << "limitp: " << e.what() << "\n\n" << e.usage();
    return limitp::kExitUsage;
  }
  try {
    return limitp::emit_report(limitp::run_command(config), config.format, config.output);
  } catch (const std::exception& e) {
    std::cerr << "limitp: " << e.what() << '\n';
    return limitp::exit_code_for(e);
  }
}
