#include "monowave/serialize.hpp"

#include <algorithm>
#include <string>

#include "monowave/error.hpp"

namespace monowave {
namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& message) {
  throw Error(ErrorKind::kValidation, message);
}

template <class T>
T get_as(const json& j, const char* key, std::string_view context) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    reject(std::string(context) + "." + key + ": " + e.what());
  }
}

}  // namespace

void require_keys(const json& j, std::initializer_list<std::string_view> allowed,
                  std::string_view context) {
  if (!j.is_object()) reject(std::string(context) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      reject("unknown key '" + item.key() + "' in " + std::string(context));
    }
  }
}

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::kP1Truncated: return "p1_truncated";
    case FieldKind::kPlaneWave: return "plane_wave";
    case FieldKind::kSphere: return "sphere";
  }
  return "";
}

FieldKind field_kind_from_string(std::string_view name) {
  if (name == "p1_truncated") return FieldKind::kP1Truncated;
  if (name == "plane_wave") return FieldKind::kPlaneWave;
  if (name == "sphere") return FieldKind::kSphere;
  reject("unknown field kind '" + std::string(name) + "'");
}

std::string_view to_string(DirectionScheme scheme) {
  return scheme == DirectionScheme::kEquidistributed ? "equidistributed"
                                                     : "iid_random";
}

DirectionScheme direction_scheme_from_string(std::string_view name) {
  if (name == "equidistributed") return DirectionScheme::kEquidistributed;
  if (name == "iid_random") return DirectionScheme::kIidRandom;
  reject("unknown direction scheme '" + std::string(name) + "'");
}

json to_json(const FieldSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case FieldKind::kP1Truncated:
      j["max_degree"] = spec.max_degree;
      break;
    case FieldKind::kPlaneWave:
      j["direction_count"] = spec.direction_count;
      j["alpha"] = spec.alpha;
      j["directions"] = to_string(spec.directions);
      break;
    case FieldKind::kSphere:
      j["degree"] = spec.degree;
      break;
  }
  j["seed"] = spec.seed;
  j["stream"] = spec.stream;
  return j;
}

FieldSpec field_spec_from_json(const json& j) {
  constexpr std::string_view ctx = "field spec";
  require_keys(j,
               {"dim", "kind", "max_degree", "direction_count", "alpha",
                "directions", "degree", "seed", "stream"},
               ctx);
  FieldSpec spec;
  spec.kind = field_kind_from_string(get_as<std::string>(j, "kind", ctx));
  spec.dim = j.contains("dim") ? get_as<int>(j, "dim", ctx) : 2;
  auto misplaced = [&](const char* key) {
    if (j.contains(key)) {
      reject(std::string("key '") + key + "' does not apply to kind " +
             std::string(to_string(spec.kind)));
    }
  };
  switch (spec.kind) {
    case FieldKind::kP1Truncated:
      spec.max_degree = get_as<int>(j, "max_degree", ctx);
      for (const char* k : {"direction_count", "alpha", "directions", "degree"}) misplaced(k);
      break;
    case FieldKind::kPlaneWave:
      spec.direction_count = get_as<int>(j, "direction_count", ctx);
      if (j.contains("alpha")) spec.alpha = get_as<double>(j, "alpha", ctx);
      if (j.contains("directions")) {
        spec.directions = direction_scheme_from_string(
            get_as<std::string>(j, "directions", ctx));
      }
      for (const char* k : {"max_degree", "degree"}) misplaced(k);
      break;
    case FieldKind::kSphere:
      spec.degree = get_as<int>(j, "degree", ctx);
      for (const char* k : {"max_degree", "direction_count", "alpha", "directions"}) misplaced(k);
      break;
  }
  if (j.contains("seed")) spec.seed = get_as<std::uint64_t>(j, "seed", ctx);
  if (j.contains("stream")) spec.stream = get_as<std::uint64_t>(j, "stream", ctx);
  try {
    validate(spec);
  } catch (const Error& e) {
    reject(e.what());
  }
  return spec;
}

json to_json(const WaveSample& s) {
  json j;
  j["schema"] = kWaveSampleSchema;
  j["spec"] = to_json(s.spec);
  if (s.spec.kind == FieldKind::kPlaneWave) {
    j["antipodal_pairs"] = true;
    json dirs = json::array();
    for (const Point& p : s.directions) {
      json v = json::array();
      for (int a = 0; a < s.spec.dim; ++a) v.push_back(p[a]);
      dirs.push_back(std::move(v));
    }
    j["directions"] = std::move(dirs);
  }
  j["coefficients"] = s.coefficients;
  return j;
}

WaveSample wave_sample_from_json(const json& j) {
  constexpr std::string_view ctx = "wave sample";
  require_keys(j, {"schema", "spec", "antipodal_pairs", "directions", "coefficients"},
               ctx);
  if (get_as<std::string>(j, "schema", ctx) != kWaveSampleSchema) {
    reject("unsupported wave sample schema '" +
           j.at("schema").get<std::string>() + "'");
  }
  WaveSample s;
  s.spec = field_spec_from_json(j.at("spec"));
  s.coefficients = get_as<std::vector<double>>(j, "coefficients", ctx);
  if (s.spec.kind == FieldKind::kPlaneWave) {
    const auto dirs = get_as<std::vector<std::vector<double>>>(j, "directions", ctx);
    for (const auto& v : dirs) {
      if (static_cast<int>(v.size()) != s.spec.dim) {
        reject("direction vector has wrong dimension");
      }
      Point p{};
      for (int a = 0; a < s.spec.dim; ++a) p[a] = v[a];
      s.directions.push_back(p);
    }
  } else if (j.contains("directions") || j.contains("antipodal_pairs")) {
    reject("directions only apply to plane_wave samples");
  }
  try {
    validate(s);
  } catch (const Error& e) {
    reject(e.what());
  }
  return s;
}

}  // namespace monowave
