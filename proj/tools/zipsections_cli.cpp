#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zipsections/acceptance.hpp"

namespace {

using zipsections::json;

json load_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return json::parse(text);
}

struct Flags {
  std::string input;
  std::string format;
  long long seed = -1;
  int field_degree = 0;
};

// Flag overrides win over whatever the document carries.
void apply_flags(json& doc, const std::string& task, const Flags& f) {
  if (!doc.is_object()) throw std::runtime_error("input must be a JSON object");
  if (!doc.contains("schema")) doc["schema"] = 1;
  if (doc.contains("task")) {
    if (doc["task"] != task)
      throw std::runtime_error("input file has task '" +
                               doc["task"].get<std::string>() +
                               "' but the subcommand is '" + task + "'");
  } else {
    doc["task"] = task;
  }
  if (!f.format.empty()) doc["options"]["format"] = f.format;
  if (f.seed >= 0) doc["options"]["seed"] = f.seed;
  if (f.field_degree > 0) doc["options"]["field_degree"] = f.field_degree;
}

int run(const std::string& task, const Flags& f) {
  json doc;
  if (task == "selftest") {
    if (!f.input.empty()) doc = load_input(f.input);
    apply_flags(doc, "selftest", f);
  } else {
    if (f.input.empty()) throw std::runtime_error("--input is required for " + task);
    doc = load_input(f.input);
    apply_flags(doc, task, f);
  }
  std::string format = doc.contains("options") && doc["options"].contains("format")
                           ? doc["options"]["format"].get<std::string>()
                           : "json";
  if (format != "json" && format != "table")
    throw std::runtime_error("--format must be json or table");
  json out = zipsections::run_task(doc);
  std::cout << zipsections::emit(out, format);
  if (task == "selftest" && !out.value("all_pass", false)) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact section spaces of automorphic vector bundles on stacks of G-zips"};
  app.require_subcommand(1);

  Flags flags;
  std::string chosen;
  for (const std::string task :
       {"describe", "h0", "hom", "orbits", "cone", "selftest"}) {
    CLI::App* sub = app.add_subcommand(
        task, task == "describe"  ? "print the derived zip-datum data"
              : task == "h0"      ? "compute the section space of a representation"
              : task == "hom"     ? "compute the hom space between two bundles"
              : task == "orbits"  ? "enumerate the orbit poset"
              : task == "cone"    ? "test membership in the section cone (u21)"
                                  : "run the built-in verification suite");
    sub->add_option("--input", flags.input, "path to a JSON problem document ('-' for stdin)");
    sub->add_option("--format", flags.format, "output format: json or table");
    sub->add_option("--seed", flags.seed, "seed for randomized checks");
    sub->add_option("--field-degree", flags.field_degree,
                    "compute over F_{p^e} with this e (multiple of the datum's k)");
    sub->callback([&chosen, task] { chosen = task; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run(chosen, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
