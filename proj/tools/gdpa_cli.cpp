#include <CLI11.hpp>

#include <iostream>

#include "gdpa/commands.hpp"

using namespace gdpa;

int main(int argc, char** argv) {
  CLI::App app{"Generalized divided power algebras: exact computations"};
  app.require_subcommand(1);
  CommandOptions o;
  std::string chosen;
  for (const auto& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--ring", o.ring, "Z, Q, Z/n, GF(p), Z_(p) or Z[q]");
    sub->add_option("--family", o.family, "classical, all_ones, cyclotomic, cyclotomic_at, custom, gcd_morphic, fibonacci");
    sub->add_option("--values", o.values, "custom values as a JSON object, or a gcd-morphic sequence as a JSON array");
    sub->add_option("--q0", o.q0, "evaluation point for cyclotomic_at");
    sub->add_option("--input", o.input, "JSON input: inline, a file path, or - for stdin");
    sub->add_option("--out", o.out, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--up-to", o.up_to, "index bound");
    sub->add_option("--n", o.n);
    sub->add_option("--m", o.m);
    sub->add_option("--h", o.h, "transform or block degree");
    sub->add_option("--p", o.p, "prime");
    sub->add_option("--r", o.r, "exponent");
    sub->add_option("--horizon", o.horizon, "degree horizon");
    sub->add_option("--max-i", o.max_i, "largest homological degree");
    sub->add_option("--mode", o.mode, "class mode: full, rank or plus");
    sub->add_option("--ideal", o.ideal, "ideal generators as a JSON array");
    sub->add_option("--limit", o.limit, "search limit");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--count", o.count, "number of random instances");
    sub->add_option("--max-d", o.max_d, "largest generator degree of random ideals");
    sub->callback([&chosen, name = c.name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }
  try {
    CommandResult r = run_command(chosen, o);
    if (o.out == "json")
      std::cout << r.json.dump(2) << "\n";
    else
      std::cout << r.text;
    return r.code;
  } catch (const SchemaError& e) {
    if (o.out == "json")
      std::cout << Json{{"error", "schema"}, {"pointer", e.pointer}, {"message", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "schema error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    if (o.out == "json")
      std::cout << Json{{"error", "precondition"}, {"message", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
