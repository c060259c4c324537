#include "pcasmote/model_io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace pcasmote {

namespace {

class BlockWriter {
 public:
  explicit BlockWriter(std::string_view kind) {
    out_ << "pcasmote-model " << kModelFormatVersion << "\nkind " << kind << "\n";
  }
  void scalar(std::string_view key, std::string_view value) { out_ << key << ' ' << value << '\n'; }
  void names(std::string_view key, const std::vector<std::string>& names) {
    out_ << "names " << key << ' ' << names.size() << '\n';
    for (const auto& n : names) out_ << n << '\n';
  }
  void vector(std::string_view key, const VectorXr& v) {
    out_ << "vector " << key << ' ' << v.size() << '\n';
    write_row(v.data(), v.size());
  }
  void matrix(std::string_view key, const MatrixXr& m) {
    out_ << "matrix " << key << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) write_row(m.row(r).data(), m.cols());
  }
  std::string finish() {
    out_ << "end\n";
    return out_.str();
  }

 private:
  void write_row(const double* p, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) out_ << (i ? " " : "") << format_double(p[i]);
    out_ << '\n';
  }
  std::ostringstream out_;
};

struct Block {
  std::string kind;
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::vector<std::string>> names;
  std::map<std::string, VectorXr> vectors;
  std::map<std::string, MatrixXr> matrices;

  const std::string& scalar(const std::string& key) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) throw ParseError("model: missing field '" + key + "'");
    return it->second;
  }
  double number(const std::string& key) const {
    const auto& s = scalar(key);
    double v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("model: field '" + key + "' is not a number");
    return v;
  }
  template <typename Map>
  static const auto& get(const Map& m, const std::string& key) {
    const auto it = m.find(key);
    if (it == m.end()) throw ParseError("model: missing block '" + key + "'");
    return it->second;
  }
};

double read_value(std::istringstream& in, std::size_t line) {
  std::string tok;
  if (!(in >> tok)) throw ParseError("model: row too short", line);
  double v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError("model: bad number '" + tok + "'", line);
  return v;
}

Block parse_block(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t ln = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("model: unexpected end of input", ln);
    ++ln;
    return std::istringstream(line);
  };

  {
    auto hdr = next_line();
    std::string magic;
    int version = 0;
    hdr >> magic >> version;
    if (magic != "pcasmote-model") throw ParseError("model: missing 'pcasmote-model' header", 1);
    if (version != kModelFormatVersion)
      throw ParseError("model: unsupported format version " + std::to_string(version), 1);
  }
  Block b;
  while (true) {
    auto ls = next_line();
    std::string tag;
    ls >> tag;
    if (tag.empty()) continue;
    if (tag == "end") break;
    if (tag == "names") {
      std::string key;
      std::size_t n = 0;
      ls >> key >> n;
      auto& dst = b.names[key];
      for (std::size_t i = 0; i < n; ++i) {
        next_line();
        dst.push_back(line);
      }
    } else if (tag == "vector") {
      std::string key;
      Eigen::Index n = 0;
      if (!(ls >> key >> n)) throw ParseError("model: bad vector header", ln);
      VectorXr v(n);
      auto row = next_line();
      for (Eigen::Index i = 0; i < n; ++i) v(i) = read_value(row, ln);
      b.vectors[key] = std::move(v);
    } else if (tag == "matrix") {
      std::string key;
      Eigen::Index r = 0, c = 0;
      if (!(ls >> key >> r >> c)) throw ParseError("model: bad matrix header", ln);
      MatrixXr m(r, c);
      for (Eigen::Index i = 0; i < r; ++i) {
        auto row = next_line();
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = read_value(row, ln);
      }
      b.matrices[key] = std::move(m);
    } else {
      std::string value;
      std::getline(ls >> std::ws, value);
      if (tag == "kind") b.kind = value;
      else b.scalars[tag] = value;
    }
  }
  return b;
}

}  // namespace

std::string serialize(const PcaModel& model) {
  BlockWriter w("pca");
  w.scalar("mode", to_string(model.mode));
  w.scalar("variance_threshold", format_double(model.variance_threshold));
  w.scalar("retained", std::to_string(model.retained));
  w.vector("mean", model.mean);
  w.vector("scale", model.scale);
  w.vector("eigenvalues", model.eigenvalues);
  w.matrix("components", model.components);
  return w.finish();
}

std::string serialize(const NbModel& model) {
  BlockWriter w("naive_bayes");
  w.scalar("std_floor", format_double(model.std_floor));
  w.names("classes", model.class_names);
  w.vector("priors", model.priors);
  w.matrix("means", model.means);
  w.matrix("stds", model.stds);
  return w.finish();
}

PcaModel parse_pca_model(std::string_view text) {
  const Block b = parse_block(text);
  if (b.kind != "pca") throw ParseError("model: expected kind 'pca', found '" + b.kind + "'");
  PcaModel m;
  const auto mode = parse_pca_mode(b.scalar("mode"));
  if (!mode) throw ParseError("model: unknown PCA mode '" + b.scalar("mode") + "'");
  m.mode = *mode;
  m.variance_threshold = b.number("variance_threshold");
  m.retained = static_cast<int>(b.number("retained"));
  m.mean = Block::get(b.vectors, "mean");
  m.scale = Block::get(b.vectors, "scale");
  m.eigenvalues = Block::get(b.vectors, "eigenvalues");
  m.components = Block::get(b.matrices, "components");
  if (m.scale.size() != m.mean.size() || m.components.rows() != m.mean.size() || m.components.cols() != m.retained)
    throw ParseError("model: inconsistent PCA block shapes");
  return m;
}

NbModel parse_nb_model(std::string_view text) {
  const Block b = parse_block(text);
  if (b.kind != "naive_bayes") throw ParseError("model: expected kind 'naive_bayes', found '" + b.kind + "'");
  NbModel m;
  m.std_floor = b.number("std_floor");
  m.class_names = Block::get(b.names, "classes");
  m.priors = Block::get(b.vectors, "priors");
  m.means = Block::get(b.matrices, "means");
  m.stds = Block::get(b.matrices, "stds");
  const auto k = static_cast<Eigen::Index>(m.class_names.size());
  if (m.priors.size() != k || m.means.rows() != k || m.stds.rows() != k || m.means.cols() != m.stds.cols())
    throw ParseError("model: inconsistent naive Bayes block shapes");
  return m;
}

void save_model(const PcaModel& model, const std::filesystem::path& path) { write_file(path, serialize(model)); }
void save_model(const NbModel& model, const std::filesystem::path& path) { write_file(path, serialize(model)); }

}  // namespace pcasmote
