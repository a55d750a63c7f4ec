#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "monowave/ensemble.hpp"

namespace monowave {

inline constexpr std::string_view kWaveSampleSchema = "monowave.wave_sample/1";

std::string_view to_string(FieldKind kind);
FieldKind field_kind_from_string(std::string_view name);
std::string_view to_string(DirectionScheme scheme);
DirectionScheme direction_scheme_from_string(std::string_view name);

nlohmann::json to_json(const FieldSpec& spec);
/// Strict: unknown keys and type mismatches raise kValidation.
FieldSpec field_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WaveSample& sample);
WaveSample wave_sample_from_json(const nlohmann::json& j);

/// Raises kValidation if `j` is not an object or has a key outside `allowed`.
void require_keys(const nlohmann::json& j,
                  std::initializer_list<std::string_view> allowed,
                  std::string_view context);

}  // namespace monowave
