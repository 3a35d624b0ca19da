// Command-line front end. Every operation goes through the C API in
// hgdecomp.h; this file only reads files, formats output and maps answers to
// exit codes (0 yes/success, 1 no, 2 fail or error).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hgdecomp.h"

using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool json_output = false;
  long long seed = 0;
  std::size_t budget = 2000000;
  int cap = 10;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("cannot write '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

void check(hgd_status s) {
  if (s != HGD_OK) throw CliError(hgd_last_error());
}

// Owns a string handed out by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  hgd_string_free(s);
  return out;
}

struct HypergraphDeleter {
  void operator()(hgd_hypergraph* h) const { hgd_hypergraph_free(h); }
};
using HypergraphPtr = std::unique_ptr<hgd_hypergraph, HypergraphDeleter>;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

HypergraphPtr load_hypergraph(const std::string& path) {
  const std::string text = read_file(path);
  hgd_hypergraph* h = nullptr;
  check(ends_with(path, ".json") ? hgd_hypergraph_from_json(text.c_str(), &h) : hgd_hypergraph_parse(text.c_str(), &h));
  return HypergraphPtr(h);
}

std::string serialize(const hgd_hypergraph* h) {
  char* text = nullptr;
  check(hgd_hypergraph_serialize(h, &text));
  return take(text);
}

int exit_for(hgd_answer a) {
  switch (a) {
    case HGD_YES: return kExitYes;
    case HGD_NO: return kExitNo;
    default: return kExitError;
  }
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

void print_solve(const json& r, const GlobalOptions& g) {
  if (g.json_output) {
    std::cout << r.dump(2) << '\n';
    return;
  }
  std::cout << r["answer"].get<std::string>() << '\n';
  if (!r["width"].is_null()) std::cout << "width " << r["width"].get<std::string>() << '\n';
  if (r["answer"] == "no") std::cout << "certificate " << r["certificate"].get<std::string>() << '\n';
  if (r["diagnostics"].contains("reason")) std::cout << r["diagnostics"]["reason"].get<std::string>() << '\n';
}

void write_witness(const json& r, const std::string& path) {
  if (path.empty()) return;
  if (r.contains("decomposition") && !r["decomposition"].is_null()) write_file(path, r["decomposition"].dump(2));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized and fractional hypertree decompositions"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_flag("--json", g.json_output, "Print machine-readable JSON");
  app.add_option("--seed", g.seed, "Seed for randomized harness runs (no subcommand is randomized)");
  app.add_option("--budget", g.budget, "Maximum number of candidate bags")->check(CLI::PositiveNumber);
  app.add_option("--cap", g.cap, "Vertex cap for the exact oracle")->check(CLI::PositiveNumber);

  std::string input, second, output, k_text, eps_text = "1/3", mode, kind, variant = "fine-bip", subset;
  int c = 2, i = -1, d = -1, r = -1, c_frac = 2, cmax = 3;
  bool frac = false, integral = false, with_vc = false;
  std::vector<std::string> outputs;

  auto* stats = app.add_subcommand("stats", "Structural parameters of a hypergraph");
  stats->add_option("input", input, "Hypergraph file")->required();
  stats->add_option("--cmax", cmax, "Largest c for c-miwidth")->check(CLI::Range(2, 8));
  stats->add_flag("--vc", with_vc, "Also compute the VC dimension");

  auto* cover = app.add_subcommand("cover", "Optimal edge cover of a vertex set");
  cover->add_option("input", input, "Hypergraph file")->required();
  auto* frac_flag = cover->add_flag("--frac", frac, "Fractional cover (default)");
  cover->add_flag("--int", integral, "Integral cover")->excludes(frac_flag);
  cover->add_option("--subset", subset, "Comma-separated vertices (default: all)");

  auto* bags = app.add_subcommand("bags", "Generate candidate bags");
  bags->add_option("input", input, "Hypergraph file")->required();
  bags->add_option("--mode", mode, "coarse-bip, fine-bip, bmip (GHD); bdp, bip, rank, bmip-approx (FHD)")->required();
  bags->add_option("--kind", kind, "ghd or fhd; inferred from the mode when omitted");
  bags->add_option("-k", k_text, "Width bound")->required();
  bags->add_option("-c", c, "Multi-intersection arity");
  bags->add_option("-i", i, "Intersection bound (measured when omitted)");
  bags->add_option("-d", d, "Degree bound (measured when omitted)");
  bags->add_option("-r", r, "Rank bound (measured when omitted)");
  bags->add_option("--c-frac", c_frac, "Extra unit edges per bip bag");
  bags->add_option("--eps", eps_text, "Approximation slack for bmip-approx");
  bags->add_option("-o", output, "Write the bag array here");

  auto* ctd = app.add_subcommand("ctd", "Candidate tree decomposition over given bags");
  ctd->add_option("input", input, "Hypergraph file")->required();
  ctd->add_option("--bags", second, "JSON array of vertex arrays")->required();
  ctd->add_option("-o", output, "Write the tree decomposition here");

  auto* validate = app.add_subcommand("validate", "Validate a decomposition");
  validate->add_option("input", input, "Hypergraph file")->required();
  validate->add_option("decomposition", second, "Decomposition JSON")->required();
  validate->add_option("--kind", kind, "td, ghd, fhd or hd (default: as stored)");
  validate->add_option("-k", k_text, "Width bound");

  auto* check_ghd = app.add_subcommand("check-ghd", "Decide ghw <= k");
  check_ghd->add_option("input", input, "Hypergraph file")->required();
  check_ghd->add_option("-k", k_text, "Integer width bound")->required();
  check_ghd->add_option("--variant", variant, "coarse-bip, fine-bip or bmip");
  check_ghd->add_option("-c", c, "Multi-intersection arity for bmip");
  check_ghd->add_option("-i", i, "Intersection bound (measured when omitted)");
  check_ghd->add_option("-o", output, "Write the witness GHD here");

  auto* check_fhd = app.add_subcommand("check-fhd", "Decide fhw <= k");
  check_fhd->add_option("input", input, "Hypergraph file")->required();
  check_fhd->add_option("-k", k_text, "Rational width bound")->required();
  check_fhd->add_option("--mode", mode, "auto, rank, bdp or bip")->default_val("auto");
  check_fhd->add_option("-d", d, "Degree bound");
  check_fhd->add_option("-i", i, "Intersection bound");
  check_fhd->add_option("-r", r, "Rank bound");
  check_fhd->add_option("--c-frac", c_frac, "Extra unit edges per bip bag");
  check_fhd->add_option("-o", output, "Write the witness FHD here");

  auto* approx = app.add_subcommand("approx-fhd", "FHD of width <= k(1+eps) when fhw <= k");
  approx->add_option("input", input, "Hypergraph file")->required();
  approx->add_option("-k", k_text, "Rational width bound")->required();
  approx->add_option("--eps", eps_text, "Relative slack in (0,1]");
  approx->add_option("-c", c, "Multi-intersection arity");
  approx->add_option("-i", i, "c-miwidth bound");
  approx->add_option("-o", output, "Write the witness FHD here");

  auto* opt = app.add_subcommand("fhw-opt", "Approximate fhw within an additive eps");
  opt->add_option("input", input, "Hypergraph file")->required();
  opt->add_option("-K", k_text, "Upper bound on fhw")->required();
  opt->add_option("--eps", eps_text, "Additive precision");
  opt->add_option("-c", c, "Multi-intersection arity");
  opt->add_option("-i", i, "c-miwidth bound");
  opt->add_option("-o", output, "Write the best FHD here");

  auto* oracle = app.add_subcommand("oracle", "Exact ghw or fhw of a small hypergraph");
  oracle->add_option("input", input, "Hypergraph file")->required();
  oracle->add_option("--kind", kind, "ghw or fhw")->required();
  oracle->add_option("-o", output, "Write the optimal decomposition here");

  auto* reduce = app.add_subcommand("reduce", "Hypergraph of the 3SAT reduction");
  reduce->add_option("input", input, "DIMACS CNF with three literals per clause")->required();
  reduce->add_option("--witness", second, "Satisfying assignment JSON {\"x1\":true,...}");
  reduce->add_option("-o", outputs, "Output hypergraph, then the witness GHD")->required()->expected(1, 2);

  auto* lift = app.add_subcommand("lift", "Raise the width by a fixed shift");
  lift->add_option("input", input, "Hypergraph file")->required();
  lift->add_option("--shift", k_text, "Integer l or rational r/q with r > q")->required();
  lift->add_option("-o", output, "Output hypergraph (default: stdout)");

  std::string to_format, fhd_file, normalize_file, compnf_file;
  auto* convert = app.add_subcommand("convert", "Format conversion and decomposition transforms");
  convert->add_option("input", input, "Hypergraph file")->required();
  convert->add_option("--to", to_format, "hg or json");
  convert->add_option("--fhd-to-ghd", fhd_file, "Turn an FHD into a GHD with integral covers");
  convert->add_option("--normalize", normalize_file, "Bring a GHD into component normal form");
  convert->add_option("--compnf", compnf_file, "Check component normal form");
  convert->add_option("-o", output, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  auto emit = [&](const std::string& text) {
    if (output.empty()) std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
    else write_file(output, text);
  };

  try {
    if (stats->parsed()) {
      auto h = load_hypergraph(input);
      char* out = nullptr;
      check(hgd_stats(h.get(), cmax, with_vc ? 1 : 0, &out));
      json j = json::parse(take(out));
      if (g.json_output) {
        std::cout << j.dump(2) << '\n';
      } else {
        for (const char* key : {"vertices", "edges", "rank", "degree", "iwidth"})
          std::cout << std::left << std::setw(10) << key << j[key] << '\n';
        for (auto it = j["miwidth"].begin(); it != j["miwidth"].end(); ++it)
          std::cout << std::left << std::setw(10) << (it.key() + "-miwidth") << it.value() << '\n';
        if (j.contains("vc")) std::cout << std::left << std::setw(10) << "vc" << j["vc"] << '\n';
      }
      return kExitYes;
    }
    if (cover->parsed()) {
      auto h = load_hypergraph(input);
      std::string subset_json;
      if (!subset.empty()) subset_json = json(split_names(subset)).dump();
      char* out = nullptr;
      check(hgd_cover(h.get(), subset.empty() ? nullptr : subset_json.c_str(), integral ? 0 : 1, &out));
      json j = json::parse(take(out));
      if (g.json_output) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << j["value"].get<std::string>() << '\n';
        for (auto it = j["weights"].begin(); it != j["weights"].end(); ++it)
          std::cout << "  " << it.key() << ' ' << it.value().get<std::string>() << '\n';
      }
      return kExitYes;
    }
    if (bags->parsed()) {
      auto h = load_hypergraph(input);
      if (kind.empty()) kind = (mode == "coarse-bip" || mode == "fine-bip" || mode == "bmip") ? "ghd" : "fhd";
      json params{{"kind", kind}, {"k", k_text}, {"mode", mode}, {"c", c}, {"i", i}, {"d", d}, {"r", r},
                  {"c_frac", c_frac}, {"eps", eps_text}, {"budget", g.budget}};
      char* out = nullptr;
      check(hgd_bags(h.get(), params.dump().c_str(), &out));
      json j = json::parse(take(out));
      if (!output.empty()) write_file(output, j["bags"].dump(1));
      if (g.json_output) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << j["count"] << " bags (" << j["generator"].get<std::string>() << ", " << j["sub_size"]
                  << " building blocks)\n";
      }
      return kExitYes;
    }
    if (ctd->parsed()) {
      auto h = load_hypergraph(input);
      const std::string bag_text = read_file(second);
      hgd_answer a;
      char* out = nullptr;
      check(hgd_ctd(h.get(), bag_text.c_str(), &a, &out));
      json j = json::parse(take(out));
      write_witness(j, output);
      if (g.json_output) std::cout << j.dump(2) << '\n';
      else std::cout << j["answer"].get<std::string>() << '\n';
      return exit_for(a);
    }
    if (validate->parsed()) {
      auto h = load_hypergraph(input);
      const std::string dtext = read_file(second);
      hgd_answer a;
      char* out = nullptr;
      check(hgd_validate(h.get(), dtext.c_str(), kind.empty() ? nullptr : kind.c_str(),
                         k_text.empty() ? nullptr : k_text.c_str(), &a, &out));
      json j = json::parse(take(out));
      if (g.json_output) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << (j["valid"].get<bool>() ? "valid" : "invalid") << ' ' << j["kind"].get<std::string>()
                  << " width " << j["width"].get<std::string>() << '\n';
        for (const auto& v : j["violations"]) std::cout << "  " << v.get<std::string>() << '\n';
      }
      return exit_for(a);
    }
    if (check_ghd->parsed()) {
      auto h = load_hypergraph(input);
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(k_text, &used);
        if (used != k_text.size()) throw std::invalid_argument(k_text);
      } catch (const std::exception&) {
        throw CliError("check-ghd needs an integer -k, got '" + k_text + "'");
      }
      json options{{"variant", variant}, {"c", c}, {"i", i}, {"budget", g.budget}};
      hgd_answer a;
      char* out = nullptr;
      check(hgd_check_ghd(h.get(), k, options.dump().c_str(), &a, &out));
      json j = json::parse(take(out));
      write_witness(j, output);
      print_solve(j, g);
      return exit_for(a);
    }
    if (check_fhd->parsed()) {
      auto h = load_hypergraph(input);
      json options{{"mode", mode}, {"d", d}, {"i", i}, {"r", r}, {"c_frac", c_frac}, {"budget", g.budget}};
      hgd_answer a;
      char* out = nullptr;
      check(hgd_check_fhd(h.get(), k_text.c_str(), options.dump().c_str(), &a, &out));
      json j = json::parse(take(out));
      write_witness(j, output);
      print_solve(j, g);
      return exit_for(a);
    }
    if (approx->parsed() || opt->parsed()) {
      auto h = load_hypergraph(input);
      json options{{"c", c}, {"i", i}, {"budget", g.budget}};
      hgd_answer a;
      char* out = nullptr;
      if (approx->parsed())
        check(hgd_approx_fhd(h.get(), k_text.c_str(), eps_text.c_str(), options.dump().c_str(), &a, &out));
      else
        check(hgd_fhw_opt(h.get(), k_text.c_str(), eps_text.c_str(), options.dump().c_str(), &a, &out));
      json j = json::parse(take(out));
      write_witness(j, output);
      print_solve(j, g);
      if (!g.json_output && j.contains("iterations"))
        std::cout << "rounds " << j["iterations"] << " (bound " << j["iteration_bound"] << ")\n";
      return exit_for(a);
    }
    if (oracle->parsed()) {
      auto h = load_hypergraph(input);
      char* out = nullptr;
      check(hgd_oracle(h.get(), kind.c_str(), g.cap, &out));
      json j = json::parse(take(out));
      write_witness(j, output);
      if (g.json_output) std::cout << j.dump(2) << '\n';
      else std::cout << j["width"].get<std::string>() << '\n';
      return kExitYes;
    }
    if (reduce->parsed()) {
      const std::string cnf = read_file(input);
      hgd_hypergraph* raw = nullptr;
      char* layout = nullptr;
      check(hgd_reduce_3sat(cnf.c_str(), &raw, &layout));
      HypergraphPtr h(raw);
      json lay = json::parse(take(layout));
      write_file(outputs.front(), serialize(h.get()));
      json report{{"layout", lay}};
      if (!second.empty()) {
        if (outputs.size() < 2) throw CliError("--witness needs a second -o for the GHD");
        const std::string sigma = read_file(second);
        char* ghd = nullptr;
        check(hgd_intended_ghd(cnf.c_str(), sigma.c_str(), &ghd));
        json wj = json::parse(take(ghd));
        write_file(outputs[1], wj["decomposition"].dump(2));
        report["witness"] = {{"z", wj["z"]}, {"chosen_literals", wj["chosen_literals"]},
                             {"valid", wj["valid"]}, {"width", wj["width"]}};
      } else if (outputs.size() > 1) {
        throw CliError("a second -o is only meaningful with --witness");
      }
      if (g.json_output) {
        std::cout << report.dump(2) << '\n';
      } else {
        std::cout << lay["vertices"] << " vertices, " << lay["edges"] << " edges, |S| = " << lay["s_size"] << '\n';
        if (report.contains("witness"))
          std::cout << "witness GHD " << (report["witness"]["valid"].get<bool>() ? "valid" : "INVALID")
                    << " width " << report["witness"]["width"].get<std::string>() << '\n';
      }
      return kExitYes;
    }
    if (lift->parsed()) {
      auto h = load_hypergraph(input);
      hgd_hypergraph* raw = nullptr;
      check(hgd_lift(h.get(), k_text.c_str(), &raw));
      HypergraphPtr lifted(raw);
      if (g.json_output) {
        char* out = nullptr;
        check(hgd_hypergraph_to_json(lifted.get(), &out));
        emit(take(out));
      } else {
        emit(serialize(lifted.get()));
      }
      return kExitYes;
    }
    if (convert->parsed()) {
      auto h = load_hypergraph(input);
      const int transforms = !fhd_file.empty() + !normalize_file.empty() + !compnf_file.empty();
      if (transforms > 1) throw CliError("convert takes at most one of --fhd-to-ghd, --normalize, --compnf");
      char* out = nullptr;
      if (!fhd_file.empty()) {
        const std::string text = read_file(fhd_file);
        check(hgd_fhd_to_ghd(h.get(), text.c_str(), &out));
        json j = json::parse(take(out));
        if (!output.empty()) write_file(output, j["decomposition"].dump(2));
        if (g.json_output) {
          std::cout << j.dump(2) << '\n';
        } else {
          std::cout << "fhd width " << j["fhd_width"].get<std::string>() << ", ghd width " << j["ghd_width"] << '\n';
          for (auto it = j["ratios"].begin(); it != j["ratios"].end(); ++it)
            std::cout << "  " << it.key() << " ratio " << it.value().get<std::string>() << '\n';
          if (!j["vc"].is_null())
            std::cout << "vc " << j["vc"] << ", ceiling (log2) " << j["ceiling_log2"] << ", ceiling (ln) "
                      << j["ceiling_ln"] << '\n';
        }
        return kExitYes;
      }
      if (!normalize_file.empty()) {
        const std::string text = read_file(normalize_file);
        check(hgd_normalize_ghd(h.get(), text.c_str(), &out));
        emit(take(out));
        return kExitYes;
      }
      if (!compnf_file.empty()) {
        const std::string text = read_file(compnf_file);
        hgd_answer a;
        check(hgd_check_compnf(h.get(), text.c_str(), &a, &out));
        json j = json::parse(take(out));
        if (g.json_output) {
          std::cout << j.dump(2) << '\n';
        } else {
          std::cout << (j["compnf"].get<bool>() ? "compnf" : "not compnf") << '\n';
          for (const auto& v : j["violations"]) std::cout << "  " << v.get<std::string>() << '\n';
        }
        return exit_for(a);
      }
      const std::string format = to_format.empty() ? (ends_with(input, ".json") ? "hg" : "json") : to_format;
      if (format == "json") {
        check(hgd_hypergraph_to_json(h.get(), &out));
        emit(take(out));
      } else if (format == "hg") {
        emit(serialize(h.get()));
      } else {
        throw CliError("--to must be 'hg' or 'json', got '" + format + "'");
      }
      return kExitYes;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
