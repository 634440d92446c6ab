#pragma once

#include <span>
#include <string>

#include "grs/matrix.hpp"

namespace grs {

enum class LossKind { mse, mae, logistic, zero_one };

LossKind parse_loss_kind(const std::string& name);
std::string to_string(LossKind kind);

// Per-row loss, averaged over the m output components.
double row_loss(std::span<const double> prediction, std::span<const double> target,
                LossKind kind);

// Mean over rows of row_loss. logistic and zero-one require targets in {0,1}.
double empirical_loss(const Matrix& predictions, const Matrix& targets, LossKind kind);

void check_classification_targets(const Matrix& targets, LossKind kind);

}  // namespace grs
