#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace dgdef;
  cli::Options opts;
  std::string field, format = "text";
  CLI::App app{"Deformations of DGLA pairs: validation, cohomology, Maurer–Cartan, obstructions", "dgdef"};
  app.add_option("command", opts.command, "validate | cohomology | mc | orbit | obstruct | probe | functor-iso | "
                                          "annihilate | semiregularity")
      ->required()
      ->check(CLI::IsMember(cli::commands()));
  app.add_option("file", opts.file, "Input document")->required();
  app.add_option("--field", field, "Override the [field] declaration (Q or F<p>)");
  app.add_option("--degree", opts.degree, "Restrict cohomology to one degree");
  app.add_option("--depth", opts.depth, "Highest curvilinear order for probe")->check(CLI::Range(2u, 64u));
  app.add_option("--seed", opts.seed, "Seed for randomized trials and lift choices");
  app.add_option("--format", format, "text or tree")->check(CLI::IsMember({"text", "tree"}));
  app.add_option("--trials", opts.trials, "Randomized trials per check");
  app.add_option("--limit", opts.limit, "Cap on exhaustive enumeration sizes");
  app.add_flag("--parallel", opts.parallel, "Run randomized trials on all cores");
  app.add_flag("--timing", opts.timing, "Include elapsed time in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }
  try {
    std::optional<Field> f;
    if (!field.empty()) f = Field::parse(field);
    const io::Model model = io::load_file(opts.file, f);
    cli::Outcome out = cli::run(opts, model);
    if (format == "tree")
      std::cout << out.report.dump(2) << "\n";
    else
      std::cout << cli::render_text(out.report);
    return out.status;
  } catch (const io::ParseError& e) {
    std::cerr << opts.file << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << opts.file << ": " << e.what() << "\n";
    return 2;
  }
}
