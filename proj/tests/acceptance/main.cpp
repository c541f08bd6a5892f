#include <cstdio>
#include <cstdlib>
#include <string>

#include "acceptance.hpp"

// Usage: acceptance [criterion ...]; no arguments runs all ten.
int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= acceptance::criterion_count; ++id) ids.push_back(id);
  bool all_pass = true;
  for (int id : ids) {
    if (id < 1 || id > acceptance::criterion_count) {
      std::fprintf(stderr, "no criterion %s\n", std::to_string(id).c_str());
      return 2;
    }
    auto r = acceptance::run_criterion(id);
    std::printf("%s\n", acceptance::format_line(r).c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.verdict == moonshine::Verdict::pass;
  }
  return all_pass ? 0 : 1;
}
