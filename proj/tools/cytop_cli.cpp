// cytop: Hodge numbers, integral homology and K-groups of Calabi-Yau
// threefolds from reflexive polytopes.

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cytop/cytop.hpp"

namespace {

using namespace cytop;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return 1;
    case ErrorKind::NotFullDimensional:
    case ErrorKind::OriginNotInterior:
    case ErrorKind::NotReflexive:
    case ErrorKind::WrongDimension:
      return 2;
    case ErrorKind::NotAPartition:
    case ErrorKind::NotLinearOnFacet:
    case ErrorKind::NonIntegralSupport:
    case ErrorKind::NotConcave:
    case ErrorKind::NotAmple:
      return 3;
    default:
      return 4;
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return in;
}

int run_analyze(const std::string& path, const std::optional<std::string>& nef_path) {
  auto in = open_input(path);
  const auto points = read_polytope(in);
  std::optional<std::vector<std::vector<std::size_t>>> parts;
  if (nef_path) {
    auto nin = open_input(*nef_path);
    parts = read_partition(nin);
  }
  std::cout << format_report(analyze_report(points, parts));
  return 0;
}

std::string batch_entry(const PolytopeRecord& rec, std::size_t index, bool summary) {
  std::optional<Error> failure;
  Json report;
  if (rec.error) {
    failure = Error(ErrorKind::Parse, *rec.error);
  } else {
    try {
      report = analyze_report(rec.points);
    } catch (const Error& e) {
      failure = e;
    }
  }
  if (summary) {
    if (failure) return "#" + std::to_string(index) + " error " + failure->what();
    return "#" + std::to_string(index) + " ok " + summary_line(report);
  }
  Json line;
  line["record"] = index;
  line["line"] = rec.line;
  if (failure)
    line["error"] = error_json(*failure);
  else
    line["report"] = report;
  return line.dump();
}

int run_batch(const std::string& path, std::size_t jobs, bool summary) {
  auto in = open_input(path);
  const auto records = read_polytope_records(in);
  std::vector<std::string> out(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) out[i] = batch_entry(records[i], i, summary);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, records.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& line : out) std::cout << line << '\n';
  return 0;
}

int run_face_lab(const std::string& path, std::size_t face, std::size_t flips, std::uint64_t seed,
                 const std::optional<std::string>& dump) {
  auto in = open_input(path);
  const auto points = read_polytope(in);
  Triangulation2D scratch({}, {});
  const Json report = face_lab_report(points, face, flips, seed, &scratch);
  std::cout << format_report(report);
  if (dump) {
    std::ofstream out(*dump);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + *dump);
    for (const auto& t : scratch.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  return 0;
}

int run_polar(const std::string& path) {
  auto in = open_input(path);
  const Polytope p = Polytope::from_points(read_polytope(in));
  write_polytope(std::cout, polar(p).vertices());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge numbers, integral homology and K-groups of Calabi-Yau threefolds from reflexive polytopes"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> nef;
  auto* analyze = app.add_subcommand("analyze", "full report for one polytope");
  analyze->add_option("file", file, "polytope file")->required();
  analyze->add_option("--nef", nef, "NEF partition file (complete-intersection mode)");

  std::size_t jobs = 1;
  bool summary = false;
  auto* batch = app.add_subcommand("batch", "one report per record of a polytope list");
  batch->add_option("file", file, "file of concatenated polytope records")->required();
  batch->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  batch->add_flag("--summary", summary, "one summary line per record");

  std::size_t face = 0, flips = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> dump;
  auto* lab = app.add_subcommand("face-lab", "triangulation, dual complex and shelling of a two-face");
  lab->add_option("file", file, "polytope file")->required();
  lab->add_option("--face", face, "index of the two-face")->required();
  lab->add_option("--flips", flips, "random diagonal flips to apply");
  lab->add_option("--seed", seed, "seed for the flips");
  lab->add_option("--dump", dump, "write the final triangles, one index triple per line");

  auto* polar_cmd = app.add_subcommand("polar", "print the polar polytope");
  polar_cmd->add_option("file", file, "polytope file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*analyze) return run_analyze(file, nef);
    if (*batch) return run_batch(file, jobs, summary);
    if (*lab) return run_face_lab(file, face, flips, seed, dump);
    if (*polar_cmd) return run_polar(file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return 0;
}
