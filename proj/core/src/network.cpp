#include "rqa/network.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rqa/rng.hpp"

namespace rqa {

Eigen::Index MlpParams::parameter_count() const {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += weights[l].size() + biases[l].size();
  return n;
}

Eigen::VectorXd MlpParams::to_flat() const {
  Eigen::VectorXd theta(parameter_count());
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto& W = weights[l];
    for (Eigen::Index r = 0; r < W.rows(); ++r)
      for (Eigen::Index c = 0; c < W.cols(); ++c) theta(pos++) = W(r, c);
    for (Eigen::Index r = 0; r < biases[l].size(); ++r)
      theta(pos++) = biases[l](r);
  }
  return theta;
}

void MlpParams::set_flat(const Eigen::VectorXd& theta) {
  if (theta.size() != parameter_count())
    throw std::invalid_argument("flat parameter vector has wrong length");
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    auto& W = weights[l];
    for (Eigen::Index r = 0; r < W.rows(); ++r)
      for (Eigen::Index c = 0; c < W.cols(); ++c) W(r, c) = theta(pos++);
    for (Eigen::Index r = 0; r < biases[l].size(); ++r)
      biases[l](r) = theta(pos++);
  }
}

bool MlpParams::finite() const {
  for (std::size_t l = 0; l < weights.size(); ++l)
    if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
  return true;
}

namespace {

double truncated_normal(Rng& rng) {
  double z;
  do {
    z = rng.normal();
  } while (std::abs(z) > 3.0);
  return z;
}

}  // namespace

MlpParams init_mlp(std::uint64_t seed, int d, bool time_dependent, int width) {
  if (width < 1 || d < 1) throw std::invalid_argument("width and d must be >= 1");
  MlpParams p;
  p.spatial_dim = d;
  p.time_dependent = time_dependent;
  p.width = width;
  p.seed = seed;

  Rng rng = Rng::substream(seed, Stream::kNetworkInit, 0);
  std::vector<int> dims;
  dims.push_back(p.input_dim());
  for (int l = 0; l < kHiddenLayers; ++l) dims.push_back(width);
  dims.push_back(1);

  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    int fan_in = dims[l];
    int fan_out = dims[l + 1];
    double scale = std::sqrt(2.0 / (15.0 * fan_in));
    Eigen::MatrixXd W(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) W(r, c) = scale * truncated_normal(rng);
    p.weights.push_back(std::move(W));
    p.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return p;
}

double mlp_forward(const MlpParams& params, const Eigen::VectorXd& x, double t) {
  Eigen::VectorXd a(params.input_dim());
  a.head(params.spatial_dim) = x;
  if (params.time_dependent) a(params.spatial_dim) = t;
  for (int l = 0; l < kHiddenLayers; ++l) {
    Eigen::VectorXd z = params.weights[l] * a + params.biases[l];
    a = z.unaryExpr([](double v) { return cubic_relu(v); });
  }
  return (params.weights[kHiddenLayers] * a + params.biases[kHiddenLayers])(0);
}

void save_checkpoint(const std::filesystem::path& path, const MlpParams& params) {
  static_assert(std::endian::native == std::endian::little,
                "checkpoint format is little-endian");
  nlohmann::json header;
  header["spatial_dim"] = params.spatial_dim;
  header["time_dependent"] = params.time_dependent;
  header["width"] = params.width;
  header["seed"] = params.seed;
  std::vector<std::vector<Eigen::Index>> shapes;
  for (const auto& W : params.weights) shapes.push_back({W.rows(), W.cols()});
  header["layer_shapes"] = shapes;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
  out << header.dump() << '\n';
  Eigen::VectorXd flat = params.to_flat();
  out.write(reinterpret_cast<const char*>(flat.data()),
            static_cast<std::streamsize>(sizeof(double)) * flat.size());
}

MlpParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
  std::string line;
  std::getline(in, line);
  nlohmann::json header = nlohmann::json::parse(line);

  MlpParams p;
  p.spatial_dim = header.at("spatial_dim").get<int>();
  p.time_dependent = header.at("time_dependent").get<bool>();
  p.width = header.at("width").get<int>();
  p.seed = header.at("seed").get<std::uint64_t>();
  for (const auto& shape : header.at("layer_shapes")) {
    Eigen::Index rows = shape[0].get<Eigen::Index>();
    Eigen::Index cols = shape[1].get<Eigen::Index>();
    p.weights.emplace_back(Eigen::MatrixXd::Zero(rows, cols));
    p.biases.emplace_back(Eigen::VectorXd::Zero(rows));
  }
  Eigen::VectorXd flat(p.parameter_count());
  in.read(reinterpret_cast<char*>(flat.data()),
          static_cast<std::streamsize>(sizeof(double)) * flat.size());
  if (!in) throw std::runtime_error("truncated checkpoint: " + path.string());
  p.set_flat(flat);
  return p;
}

}  // namespace rqa
