// Command-line harness: verification suites, demos and basis export.
//
// Exit codes: 0 pass, 1 failure (check failed or I/O error), 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "latmorph/io.hpp"
#include "latmorph/nets.hpp"
#include "latmorph/rational.hpp"
#include "latmorph/suites.hpp"

using namespace latmorph;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& csv, const char* what) {
  std::vector<Rational> v;
  for (const auto& t : split_csv(csv)) v.push_back(parse_rational(t));
  if (v.empty()) throw UsageError(std::string(what) + ": empty list");
  return v;
}

void write_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials, const std::string& json_out) {
  std::vector<std::string> ids;
  if (suite == "all") {
    ids = suite_ids();
  } else {
    if (std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
      throw UsageError("unknown suite '" + suite + "'");
    ids = {suite};
  }
  json reports = json::array();
  bool ok = true;
  for (const auto& id : ids) {
    const SuiteReport r = run_suite(id, seed, trials);
    ok = ok && r.passed();
    std::cout << (r.passed() ? "PASS " : "FAIL ") << id << "  checks=" << r.checks << " failures=" << r.failure_count
              << "\n";
    for (const auto& f : r.failures)
      std::cout << "  " << f.case_description << ": expected " << f.expected << ", got " << f.actual << "\n";
    reports.push_back(to_json(r));
  }
  if (!json_out.empty()) write_json(json_out, ids.size() == 1 ? reports.front() : reports);
  return ok ? 0 : 1;
}

struct DemoParams {
  std::string pipeline;
  std::string input;
  std::string out;
  int levels = 3;
  Index stride = 2;
  double epsilon = 0.0;
  std::string kernel;
};

KernelD smoothing_kernel(int dims) {
  const KernelD k1 = binomial_kernel<double>();
  if (dims == 1) return k1;
  std::vector<KernelD::Entry> e;
  for (const auto& [p, w] : k1.entries())
    for (const auto& [q, v] : k1.entries()) e.emplace_back(Point{p[0], q[0]}, w * v);
  return KernelD(std::move(e));
}

int run_demo(const DemoParams& p) {
  const SignalD f = read_any(p.input);
  const bool image = f.dims() == 2;
  std::filesystem::create_directories(p.out);
  json summary = {{"pipeline", p.pipeline}, {"input", p.input}, {"extents", f.extents().n}, {"dims", f.dims()}};
  double recon = 0.0;

  if (p.pipeline == "uresnet") {
    UNetConfig cfg;
    cfg.levels = p.levels;
    cfg.stride = p.stride;
    cfg.b = {SF::flat(Window::box(p.stride, f.dims()))};
    cfg.skip = SkipMode::tophat;
    const UNetTrace t = unet_forward(cfg, f);
    recon = sup_distance(t.output, f);
    UNetConfig skel = cfg;
    skel.skip = SkipMode::none;
    const SignalD once = unet_forward(skel, f).output;
    summary["idempotency_defect"] = sup_distance(unet_forward(skel, once).output, once);
    summary["levels_used"] = t.levels_used;
    export_trace(t, p.out);
    if (image) write_pgm(std::filesystem::path(p.out) / "output.pgm", t.output);
  } else if (p.pipeline == "laplacian") {
    const KernelD k = smoothing_kernel(f.dims());
    const auto levels = laplacian_pyramid(f, k, p.levels, p.stride);
    const SignalD back = laplacian_reconstruct(levels, k, p.stride);
    recon = sup_distance(back, f);
    std::vector<std::pair<std::string, SignalD>> s;
    for (std::size_t i = 0; i < levels.size(); ++i) s.emplace_back("residue_" + std::to_string(i), levels[i].detail);
    s.emplace_back("approximation", levels.back().approximation);
    s.emplace_back("reconstruction", back);
    write_manifest(p.out, s, {{"levels", p.levels}, {"stride", p.stride}});
  } else if (p.pipeline == "type2") {
    KernelD k = KernelD::identity();
    if (!p.kernel.empty()) {
      std::vector<double> w;
      for (const auto& r : parse_rationals(p.kernel, "--kernel")) w.push_back(scalar_cast<double>(r));
      k = KernelD::line(w);
    }
    const layer::Type2 spec{k, p.epsilon};
    const SignalD out = type2_apply(f, k, p.epsilon);
    recon = sup_distance(out, f);
    summary["idempotency_defect"] = idempotency_defect(spec, f);
    summary["epsilon"] = p.epsilon;
    summary["kernel"] = to_json(k);
    write_manifest(p.out, {{"output", out}});
    if (image) write_pgm(std::filesystem::path(p.out) / "output.pgm", out);
  } else {
    throw UsageError("unknown pipeline '" + p.pipeline + "' (uresnet|laplacian|type2)");
  }
  summary["reconstruction_error"] = recon;
  write_json(std::filesystem::path(p.out) / "summary.json", summary);
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_basis(const std::string& kernel, const std::string& alphabet, const std::string& out_path) {
  const auto w = parse_rationals(kernel, "--kernel");
  auto lv = parse_rationals(alphabet, "--alphabet");
  std::sort(lv.begin(), lv.end());
  const Kernel<Rational> k = Kernel<Rational>::line(w);
  if (k.has_negative() || k.sum() != Rational(1))
    throw UsageError("--kernel: weights must be non-negative and sum to 1");
  const auto v = virtual_basis(k, Alphabet<Rational>(lv));
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  for (std::size_t j = 0; j < v.support.size(); ++j) out << (j ? "," : "") << "g" << v.support[j][0];
  out << "\n";
  for (const auto& g : v.elements) {
    for (Index j = 0; j < g.size(); ++j) out << (j ? "," : "") << format_sample(scalar_cast<double>(g[j]));
    out << "\n";
  }
  std::cout << v.size() << " basis elements written to " << out_path << "\n";
  return 0;
}

int run_layer(const std::string& spec_path, const std::string& input, const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw std::runtime_error("cannot open " + spec_path);
  const LayerSpec spec = layer_spec_from_json(json::parse(in));
  const SignalD f = read_any(input);
  const SignalD out = layer_apply(spec, f);
  write_signal_file(out_path, out);
  std::cout << json{{"idempotency_defect", idempotency_defect(spec, f)}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latmorph: lattice morphology operators and verification suites"};
  app.require_subcommand(1);

  std::string suite, json_out;
  std::uint64_t seed = 1;
  int trials = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite (or 'all')");
  verify->add_option("--suite", suite, "Suite id or 'all'")->required();
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--trials", trials, "Trial count (0 = suite default)");
  verify->add_option("--json", json_out, "Write the JSON report here");
  auto* list = app.add_subcommand("list", "List suite ids");

  DemoParams demo_params;
  auto* demo = app.add_subcommand("demo", "Run a demo pipeline on a PGM or text signal");
  demo->add_option("pipeline", demo_params.pipeline, "uresnet|laplacian|type2")->required();
  demo->add_option("--input", demo_params.input, "Input file")->required()->check(CLI::ExistingFile);
  demo->add_option("--out", demo_params.out, "Output directory")->required();
  demo->add_option("--levels", demo_params.levels, "Pyramid / network levels")->check(CLI::Range(1, 16));
  demo->add_option("--stride", demo_params.stride, "Resampling factor R")->check(CLI::Range(1, 16));
  demo->add_option("--epsilon", demo_params.epsilon, "Type-II regulariser")->check(CLI::NonNegativeNumber);
  demo->add_option("--kernel", demo_params.kernel, "Type-II kernel weights, csv, first offset 0");

  std::string kernel, alphabet, basis_out;
  auto* basis = app.add_subcommand("basis", "Export the virtual basis of a normalised kernel");
  basis->add_option("--kernel", kernel, "Weights csv (rationals allowed), offsets 0..N-1")->required();
  basis->add_option("--alphabet", alphabet, "Alphabet levels csv")->required();
  basis->add_option("--out", basis_out, "Output csv")->required();

  std::string spec_path, layer_in, layer_out;
  auto* lay = app.add_subcommand("layer", "Apply a layer described by a JSON spec");
  lay->add_option("--spec", spec_path, "Layer JSON")->required()->check(CLI::ExistingFile);
  lay->add_option("--input", layer_in, "Input file")->required()->check(CLI::ExistingFile);
  lay->add_option("--out", layer_out, "Output signal file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return run_verify(suite, seed, trials, json_out);
    if (*list) {
      for (const auto& id : suite_ids()) std::cout << id << "\n";
      return 0;
    }
    if (*demo) return run_demo(demo_params);
    if (*basis) return run_basis(kernel, alphabet, basis_out);
    if (*lay) return run_layer(spec_path, layer_in, layer_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
