#include "latmorph/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace latmorph {

namespace fs = std::filesystem;

std::string format_sample(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) throw std::invalid_argument("format_sample: NaN is not a signal value");
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_sample(std::string_view t) {
  if (t == "-inf") return bottom<double>();
  if (t == "+inf" || t == "inf") return top<double>();
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("signal text: bad sample '" + std::string(t) + "'");
  return v;
}

std::string format_signal(const SignalD& f) {
  const Extents& e = f.extents();
  std::ostringstream os;
  os << "d " << e.dims << "\n";
  os << e.n[0];
  if (e.dims == 2) os << " " << e.n[1];
  os << "\n";
  const Index per_line = e.dims == 2 ? e.n[1] : e.n[0];
  for (Index i = 0; i < f.size(); ++i) {
    os << format_sample(f[i]);
    os << ((i + 1) % per_line == 0 ? "\n" : " ");
  }
  return os.str();
}

SignalD parse_signal(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tag;
  int dims = 0;
  if (!(is >> tag >> dims) || tag != "d") throw std::invalid_argument("signal text: expected 'd <dims>' header");
  if (dims != 1 && dims != 2) throw std::invalid_argument("signal text: dims must be 1 or 2");
  std::vector<Index> ext(std::size_t(dims), 0);
  for (auto& n : ext)
    if (!(is >> n)) throw std::invalid_argument("signal text: missing extents");
  std::vector<double> samples;
  std::string tok;
  while (is >> tok) samples.push_back(parse_sample(tok));
  return make_signal<double>(dims, ext, samples);
}

namespace {
std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << data;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Skips whitespace and '#' comments in a PGM header.
void skip_pgm_space(std::istream& is) {
  while (is) {
    const int c = is.peek();
    if (c == '#') {
      std::string line;
      std::getline(is, line);
    } else if (std::isspace(c)) {
      is.get();
    } else {
      return;
    }
  }
}
}  // namespace

SignalD read_signal_file(const fs::path& path) { return parse_signal(slurp(path)); }

void write_signal_file(const fs::path& path, const SignalD& f) { spit(path, format_signal(f)); }

SignalD read_pgm(const fs::path& path) {
  std::istringstream is(slurp(path));
  std::string magic;
  is >> magic;
  if (magic != "P5") throw std::invalid_argument("pgm: only binary P5 is supported");
  Index w = 0, h = 0, maxval = 0;
  skip_pgm_space(is);
  is >> w;
  skip_pgm_space(is);
  is >> h;
  skip_pgm_space(is);
  is >> maxval;
  if (!is || w < 1 || h < 1 || maxval < 1 || maxval > 255) throw std::invalid_argument("pgm: bad header");
  is.get();
  std::vector<unsigned char> px(std::size_t(w * h));
  if (!is.read(reinterpret_cast<char*>(px.data()), std::streamsize(px.size())))
    throw std::invalid_argument("pgm: truncated pixel data");
  Eigen::ArrayXd a(w * h);
  for (Index i = 0; i < w * h; ++i) a[i] = px[std::size_t(i)];
  return SignalD(Extents::image(h, w), std::move(a));
}

void write_pgm(const fs::path& path, const SignalD& f) {
  if (f.dims() != 2) throw std::invalid_argument("pgm: signal must be 2-D");
  std::string data = "P5\n" + std::to_string(f.extents().n[1]) + " " + std::to_string(f.extents().n[0]) + "\n255\n";
  for (Index i = 0; i < f.size(); ++i) {
    const double v = std::isnan(f[i]) ? 0.0 : std::clamp(std::round(f[i]), 0.0, 255.0);
    data.push_back(static_cast<char>(static_cast<unsigned char>(v)));
  }
  spit(path, data);
}

SignalD read_any(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char m[2] = {0, 0};
  in.read(m, 2);
  if (m[0] == 'P' && m[1] == '5') return read_pgm(path);
  return read_signal_file(path);
}

void write_manifest(const fs::path& dir, const std::vector<std::pair<std::string, SignalD>>& signals,
                    const nlohmann::json& extra) {
  fs::create_directories(dir);
  nlohmann::json manifest = extra;
  manifest["signals"] = nlohmann::json::array();
  for (const auto& [name, f] : signals) {
    const std::string file = name + ".txt";
    write_signal_file(dir / file, f);
    nlohmann::json ext = {f.extents().n[0]};
    if (f.dims() == 2) ext.push_back(f.extents().n[1]);
    manifest["signals"].push_back({{"name", name}, {"file", file}, {"dims", f.dims()}, {"extents", ext}});
  }
  spit(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace latmorph
