#include "grs/bundle.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "grs/linear.hpp"
#include "grs/mlp.hpp"
#include "grs/oracle.hpp"

namespace grs {
namespace {

using nlohmann::json;

constexpr int kBundleVersion = 1;

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"data", std::vector<double>(m.data(), m.data() + m.size())}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != rows * cols) {
    throw std::runtime_error("bundle corrupted: matrix length mismatch");
  }
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

}  // namespace

void save_bundle(const Predictor& model, const std::filesystem::path& path) {
  json j;
  j["format"] = "grs-bundle";
  j["version"] = kBundleVersion;
  j["kind"] = model.kind();
  j["input_dim"] = model.input_dim();
  j["output_dim"] = model.output_dim();

  if (const auto* linear = dynamic_cast<const LinearModel*>(&model)) {
    j["weights"] = matrix_to_json(linear->weights());
    j["bias"] = linear->bias();
  } else if (const auto* mlp = dynamic_cast<const MlpModel*>(&model)) {
    json layers = json::array();
    for (const auto& layer : mlp->layers()) {
      layers.push_back(json{{"w", matrix_to_json(layer.w)}, {"b", layer.b}});
    }
    j["layers"] = std::move(layers);
    j["x_mean"] = mlp->x_mean();
    j["x_std"] = mlp->x_std();
    j["y_mean"] = mlp->y_mean();
    j["y_std"] = mlp->y_std();
    j["squash_targets"] = mlp->squash_targets();
    j["trained_loss"] = to_string(mlp->trained_loss());
  } else if (const auto* oracle = dynamic_cast<const QuadraticOracle*>(&model)) {
    switch (oracle->root_sign()) {
      case RootSign::plus: j["root_sign"] = "plus"; break;
      case RootSign::minus: j["root_sign"] = "minus"; break;
      case RootSign::both: j["root_sign"] = "both"; break;
    }
  } else {
    throw std::runtime_error("cannot serialize model kind '" + model.kind() + "'");
  }

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write bundle: " + path.string());
  out << j.dump(1) << '\n';
  if (!out) throw std::runtime_error("bundle write failed: " + path.string());
}

std::unique_ptr<Predictor> load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bundle: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("bundle corrupted (" + path.string() + "): " + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != "grs-bundle") {
      throw std::runtime_error("not a grs bundle: " + path.string());
    }
    if (j.at("version").get<int>() != kBundleVersion) {
      throw std::runtime_error("unsupported bundle version in " + path.string());
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
      return std::make_unique<LinearModel>(matrix_from_json(j.at("weights")),
                                           j.at("bias").get<std::vector<double>>());
    }
    if (kind == "mlp") {
      std::vector<MlpModel::Layer> layers;
      for (const auto& lj : j.at("layers")) {
        layers.push_back(MlpModel::Layer{matrix_from_json(lj.at("w")),
                                         lj.at("b").get<std::vector<double>>()});
      }
      return std::make_unique<MlpModel>(
          std::move(layers), j.at("x_mean").get<std::vector<double>>(),
          j.at("x_std").get<std::vector<double>>(),
          j.at("y_mean").get<std::vector<double>>(),
          j.at("y_std").get<std::vector<double>>(), j.at("squash_targets").get<bool>(),
          parse_loss_kind(j.at("trained_loss").get<std::string>()));
    }
    if (kind == "quadratic-oracle") {
      const auto sign = j.at("root_sign").get<std::string>();
      RootSign rs = RootSign::both;
      if (sign == "plus") rs = RootSign::plus;
      else if (sign == "minus") rs = RootSign::minus;
      else if (sign != "both") throw std::runtime_error("bad root_sign '" + sign + "'");
      return std::make_unique<QuadraticOracle>(rs);
    }
    throw std::runtime_error("unsupported model kind '" + kind + "' in " + path.string());
  } catch (const json::exception& e) {
    throw std::runtime_error("bundle corrupted (" + path.string() + "): " + e.what());
  }
}

}  // namespace grs
