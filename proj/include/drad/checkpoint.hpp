#pragma once

#include <filesystem>
#include <string>

#include "drad/lstm.hpp"

namespace drad {

enum class InputDomain : std::uint8_t { Time = 0, Autocorrelation = 1 };

InputDomain input_domain_from_name(const std::string& name);
const char* input_domain_name(InputDomain d) noexcept;

struct Checkpoint {
  Model<float> model;
  InputDomain domain = InputDomain::Time;
};

// Little-endian layout:
//   "DRLM" | format_version u16 | flags u16 (bit 0 swapped gating,
//   bit 1 autocorrelation input) | n_layers u32 | input_dim u32 |
//   n_classes u32 | hidden u32 x n_layers |
//   f32 tensors: per layer weights (4h x (h + d), gate blocks c,u,f,o) then
//   bias (4h); head weights (n_classes x h_last); head bias (n_classes)
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace drad
