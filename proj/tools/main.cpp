#include <iostream>
#include <string>
#include <vector>

#include "sextic/errors.hpp"
#include "sextic/runner.hpp"
#include "sextic/version.hpp"

namespace {

void print_usage(std::ostream& out) {
  out << "usage: sextic <command> [--key value | --key=value | --flag] ...\n"
         "\n"
         "commands:\n"
         "  potential-info   classify V(lambda, x) and report its stationary points\n"
         "  series           exact-rational perturbation series (energy or moments)\n"
         "  sum              Pade and Borel-Pade resummation vs a variational reference\n"
         "  fit-large-order  large-order growth constants of the series coefficients\n"
         "  fit-splitting    ground-state splitting law A |lambda|^B exp(-C/|lambda|)\n"
         "  solve            variational spectrum at a single lambda\n"
         "  scan             spectrum over a lambda grid (CSV table)\n"
         "  crossings        avoided-crossing detection and refinement over a grid\n"
         "  deltax           Delta x trace of one level with jump annotations\n"
         "  reproduce        canonical figure pipelines (--figure fig1|fig2|fig3|fig4|fig7|fig8)\n"
         "\n"
         "common options:\n"
         "  --format csv|json    output format where the command supports both\n"
         "  --output PATH        output file (relative paths land in the output dir)\n"
         "  --output-dir DIR     output directory (default $SEXTIC_OUTPUT_DIR, then .)\n"
         "  --no-timestamp       omit the generated-at line for byte-reproducible output\n"
         "  --help, --version\n"
         "\n"
         "examples:\n"
         "  sextic series --state 1 --order 5\n"
         "  sextic solve --lambda 0 --levels 3\n"
         "  sextic scan --lambda-min -0.03 --lambda-max -0.002 --count 60 --log\n"
         "  sextic reproduce --figure fig3\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sextic;
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    print_usage(std::cerr);
    return 1;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    print_usage(std::cout);
    return 0;
  }
  if (args[0] == "--version") {
    std::cout << "sextic " << version_string << "\n";
    return 0;
  }

  RunConfig cfg;
  try {
    cfg.command = parse_command(args[0]);
    for (size_t i = 1; i < args.size(); ++i) {
      const std::string& arg = args[i];
      if (arg == "--help" || arg == "-h") {
        print_usage(std::cout);
        return 0;
      }
      if (arg.rfind("--", 0) != 0)
        throw UsageError("unexpected argument '" + arg + "' (options start with --)");
      std::string body = arg.substr(2);
      if (body.empty()) throw UsageError("empty option name");
      std::string key, value;
      const size_t eq = body.find('=');
      if (eq != std::string::npos) {
        key = body.substr(0, eq);
        value = body.substr(eq + 1);
      } else {
        key = body;
        if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0)
          value = args[++i];
        else
          value = "true";  // bare flag
      }
      if (key == "no-timestamp") {
        if (value != "true") throw UsageError("--no-timestamp takes no value");
        cfg.emit_timestamp = false;
        continue;
      }
      if (cfg.params.count(key)) throw UsageError("duplicate option --" + key);
      cfg.params[key] = value;
    }

    const RunOutput out = run(cfg);
    if (!out.message.empty()) std::cout << out.message << "\n";
    for (const std::string& f : out.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::usage) std::cerr << "run 'sextic --help' for usage\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
