#pragma once

#include <filesystem>
#include <memory>

#include "grs/predictor.hpp"

namespace grs {

// Versioned JSON container for trained models (linear, mlp, quadratic-oracle).
// Doubles survive the round trip bit-exactly, so a loaded model predicts
// identically to the saved one.
void save_bundle(const Predictor& model, const std::filesystem::path& path);
std::unique_ptr<Predictor> load_bundle(const std::filesystem::path& path);

}  // namespace grs
