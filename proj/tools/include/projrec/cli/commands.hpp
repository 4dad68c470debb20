#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "projrec/cli/scene.hpp"

namespace projrec::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseError = 2, kInternalError = 3 };

// Accumulates named checks next to the report body; `pass` is the
// conjunction of all checks.
class Report {
 public:
  explicit Report(std::string command);

  Json& body() { return body_; }
  bool below(const std::string& name, double value, double threshold);
  bool above(const std::string& name, double value, double threshold);
  bool equal(const std::string& name, long long value, long long expected);
  bool holds(const std::string& name, bool value);

  bool pass() const { return pass_; }
  Json finish() const;

 private:
  void add(Json check);

  Json body_;
  Json checks_ = Json::array();
  bool pass_ = true;
};

struct RunOptions {
  int order = 0;         // fundamental: 0 for all orders
  int trials = 20;       // kruppa-solve
  int fibers = 200;      // reconstruct
  std::string fundamental_path;  // recover from an F file instead of a scene
};

Report cmd_generate(const Scene& s);
Report cmd_fundamental(const Scene& s, const RunOptions& o);
Report cmd_kruppa_check(const Scene& s);
Report cmd_kruppa_solve(const Scene& s, const RunOptions& o);
Report cmd_recover(const Scene& s);
Report cmd_recover(const FundamentalMatrix& f, const RunOptions& o);
Report cmd_reconstruct(const Scene& s, const RunOptions& o);
Report cmd_diagnose(int m, int c_total);

// Full command line dispatch; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projrec::cli
