#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhat/freeomega.hpp"
#include "dhat/homology.hpp"
#include "dhat/nerves.hpp"
#include "dhat/precubical.hpp"
#include "dhat/pvlang.hpp"
#include "dhat/render.hpp"

namespace {

constexpr const char* kVersion = "1.0";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_pv(const std::string& path) {
  return path.size() >= 3 && path.substr(path.size() - 3) == ".pv";
}

// either a PV model or a raw precubical set
dhat::PrecubicalSet load_complex(const std::string& path) {
  if (is_pv(path)) {
    auto prog = dhat::parse_pv(slurp(path));
    return dhat::build_model(prog).complex;
  }
  return dhat::PrecubicalSet::from_json(nlohmann::json::parse(slurp(path)));
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
  }
}

long default_max_cells() {
  if (const char* e = std::getenv("DHAT_MAX_CELLS")) return std::atol(e);
  return 20000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directed-topology analyzer for PV programs and precubical sets"};
  app.require_subcommand(1);

  std::string file, out, format = "json", theory = "gl", aug = "full";
  std::vector<int> degrees{0, 1};
  int max_dim = 8;
  long max_cells = default_max_cells();
  bool allow_trunc = false, normalized = false;

  auto add_limits = [&](CLI::App* c) {
    c->add_option("--max-dim", max_dim, "cell dimension cap");
    c->add_option("--max-cells", max_cells, "cell count cap (env DHAT_MAX_CELLS)");
    c->add_flag("--allow-truncation", allow_trunc, "permit truncated tables");
  };

  auto* c_an = app.add_subcommand("analyze", "deadlock/unsafe analysis of a PV program");
  c_an->add_option("file", file)->required();
  c_an->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  c_an->add_option("--out", out, "output path, - for stdout");

  auto* c_ho = app.add_subcommand("homology", "directed homology report");
  c_ho->add_option("file", file)->required();
  c_ho->add_option("--theory", theory, "gl|gl-|gl+|cube")
      ->check(CLI::IsMember({"gl", "gl-", "gl+", "cube"}));
  c_ho->add_option("--degrees", degrees, "degrees to report");
  c_ho->add_option("--augmentation", aug, "full|realized")
      ->check(CLI::IsMember({"full", "realized"}));
  c_ho->add_option("--out", out);
  add_limits(c_ho);

  auto* c_ce = app.add_subcommand("cells", "cell table of the free omega-category");
  c_ce->add_option("file", file)->required();
  c_ce->add_option("--out", out);
  add_limits(c_ce);

  auto* c_ex = app.add_subcommand("export", "precubical JSON or sparse chain matrices");
  c_ex->add_option("file", file)->required();
  c_ex->add_option("--format", format, "json|sparse")
      ->check(CLI::IsMember({"json", "sparse"}));
  c_ex->add_option("--out", out);

  auto* c_re = app.add_subcommand("render", "SVG picture of a 2-process program");
  c_re->add_option("file", file)->required();
  c_re->add_option("--svg", out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    if (c_an->parsed()) {
      auto rep = dhat::analyze(dhat::parse_pv(slurp(file)));
      if (format == "text") {
        emit(out, rep.to_text());
      } else {
        nlohmann::json j = rep.to_json();
        j["version"] = kVersion;
        emit(out, j.dump(2) + "\n");
      }
      return rep.deadlocks.empty() ? 0 : 2;
    }
    if (c_ho->parsed()) {
      dhat::GenerationLimits lim{max_dim, max_cells, allow_trunc};
      dhat::NerveOptions no;
      no.aug = aug == "full" ? dhat::NerveOptions::Aug::full
                             : dhat::NerveOptions::Aug::realized;
      (void)normalized;
      dhat::Theory th = theory == "gl"    ? dhat::Theory::globular
                        : theory == "gl-" ? dhat::Theory::branching
                        : theory == "gl+" ? dhat::Theory::merging
                                          : dhat::Theory::cubical;
      dhat::TheoryReport rep;
      if (is_pv(file)) {
        rep = dhat::homology_of_program(dhat::parse_pv(slurp(file)), th, degrees, lim, no);
      } else {
        auto k = load_complex(file);
        if (th == dhat::Theory::cubical) {
          auto c = dhat::chain_from_precubical(k);
          for (int n : degrees) rep.groups[n] = dhat::homology(c, n);
        } else {
          auto r = dhat::realize(k, lim);
          rep = th == dhat::Theory::globular
                    ? dhat::globular_homology(r.table, degrees, no)
                : th == dhat::Theory::branching
                    ? dhat::branching_homology(r.table, degrees, no)
                    : dhat::merging_homology(r.table, degrees, no);
        }
      }
      nlohmann::json j;
      j["version"] = kVersion;
      j["theory"] = theory;
      j["truncated"] = rep.truncated;
      nlohmann::json gs = nlohmann::json::array();
      for (const auto& [n, g] : rep.groups) gs.push_back(g.to_json(n));
      j["groups"] = gs;
      emit(out, j.dump(2) + "\n");
      return 0;
    }
    if (c_ce->parsed()) {
      auto k = load_complex(file);
      auto r = dhat::realize(k, {max_dim, max_cells, allow_trunc});
      nlohmann::json j = r.table.to_json();
      j["version"] = kVersion;
      emit(out, j.dump(2) + "\n");
      return 0;
    }
    if (c_ex->parsed()) {
      auto k = load_complex(file);
      if (format == "sparse") {
        emit(out, dhat::chain_from_precubical(k).to_sparse_triplets());
      } else {
        nlohmann::json j = k.to_json();
        j["version"] = kVersion;
        emit(out, j.dump(2) + "\n");
      }
      return 0;
    }
    if (c_re->parsed()) {
      auto rep = dhat::analyze(dhat::parse_pv(slurp(file)));
      emit(out, dhat::render_svg(rep));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
