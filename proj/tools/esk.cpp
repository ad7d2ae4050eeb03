// Command-line surface: decide / threshold / realize / decompose / minimize /
// census / compare / verify / svg / emit-dimacs / emit-smt2 / solve-dimacs.
// Problem parameters use the generator's key=value convention, e.g.
//   esk decide nc1=0 tr2=0 n=13
//   esk realize nc1=0 tr2=0 n=13 xgrid=1
//   esk verify points.json tr1=0 tr2=0 n=9

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "esk/driver.hpp"

using namespace esk;

namespace {

int usage() {
  std::cerr <<
      "usage: esk <command> [key=value...]\n"
      "commands:\n"
      "  decide <spec>                 SAT/UNSAT for the spec (engine=embedded|CMD)\n"
      "  threshold <spec> nmin=A nmax=B   locate the Sat/Unsat boundary\n"
      "  realize <spec> xgrid=C        find an integer realization on the grid\n"
      "  decompose <spec> prefix=K [runrule=M | runrule_i=M] [out=FILE]\n"
      "  run-decomposed <spec> prefix=K [workers=W] [manifest=FILE]\n"
      "  minimize n=N kind=3|4|5       minimum empty k-gon count\n"
      "  census n=N kind=4 xgrid=C     realizable minimizing signotopes\n"
      "  compare n=N a=3 b=4           minimizer set differences\n"
      "  verify FILE <spec>            check a point-set file against the spec\n"
      "  svg FILE [out=FILE]           render a point-set file\n"
      "  emit-dimacs <spec>            print the CNF\n"
      "  emit-smt2 <spec> xgrid=C      print the SMT-LIB script\n"
      "  solve-dimacs                  read DIMACS on stdin, print s/v lines\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  std::vector<std::string> args(argv + 2, argv + argc);
  std::string cmd = argv[1];
  try {
    return run_cli(cmd, args, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
