#include "triup/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "triup/errors.hpp"
#include "triup/json_writer.hpp"
#include "triup/rng.hpp"

namespace triup {

namespace {

using njson = nlohmann::json;

// Seed stream offsets: operator i draws from derive_seed(seed, 1000+i),
// the state from derive_seed(seed, 2000). Keeps the streams independent
// of each other and of optimizer restarts (which use indices 0..R-1).
constexpr std::uint64_t kOperatorSeedOffset = 1000;
constexpr std::uint64_t kStateSeedOffset = 2000;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& message) {
  throw ParseError(origin + ": " + (path.empty() ? "" : path + ": ") + message);
}

void check_keys(const njson& obj, std::initializer_list<const char*> allowed,
                const std::string& origin, const std::string& path) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(origin, path, "unknown key \"" + item.key() + "\"");
  }
}

double get_number(const njson& v, const std::string& origin,
                  const std::string& path) {
  if (!v.is_number()) fail(origin, path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(origin, path, "number must be finite");
  return d;
}

std::vector<double> get_number_array(const njson& v, const std::string& origin,
                                     const std::string& path) {
  if (!v.is_array()) fail(origin, path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_number(v[i], origin, path + "[" + std::to_string(i) + "]"));
  return out;
}

SpaceSpec parse_space(const njson& v, const std::string& origin) {
  if (!v.is_object()) fail(origin, "space", "expected an object");
  check_keys(v, {"dimension", "weights", "label"}, origin, "space");
  if (!v.contains("dimension"))
    fail(origin, "space", "missing required key \"dimension\"");
  SpaceSpec spec;
  const njson& dim = v["dimension"];
  if (!dim.is_number_unsigned() || dim.get<std::uint64_t>() == 0)
    fail(origin, "space.dimension", "expected a positive integer");
  spec.dimension = dim.get<std::size_t>();
  if (v.contains("weights")) {
    const njson& w = v["weights"];
    if (w.is_string()) {
      if (w.get<std::string>() != "unit")
        fail(origin, "space.weights", "string form must be \"unit\"");
    } else {
      std::vector<double> weights = get_number_array(w, origin, "space.weights");
      if (weights.size() != spec.dimension)
        fail(origin, "space.weights",
             "length " + std::to_string(weights.size()) +
                 " does not match dimension " + std::to_string(spec.dimension));
      for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] <= 0.0)
          fail(origin, "space.weights[" + std::to_string(i) + "]",
               "must be > 0");
      spec.weights = std::move(weights);
    }
  }
  if (v.contains("label")) {
    if (!v["label"].is_string()) fail(origin, "space.label", "expected a string");
    spec.label = v["label"].get<std::string>();
  }
  return spec;
}

OperatorSpec parse_operator(const njson& v, std::size_t dimension,
                            const std::string& origin,
                            const std::string& path) {
  if (!v.is_object() || v.size() != 1)
    fail(origin, path,
         "expected exactly one of \"diagonal\", \"dense\", \"random_diagonal\"");
  check_keys(v, {"diagonal", "dense", "random_diagonal"}, origin, path);
  OperatorSpec spec;
  if (v.contains("diagonal")) {
    spec.kind = OperatorSpec::Kind::kDiagonal;
    spec.diagonal = get_number_array(v["diagonal"], origin, path + ".diagonal");
    if (spec.diagonal.size() != dimension)
      fail(origin, path + ".diagonal",
           "length " + std::to_string(spec.diagonal.size()) +
               " does not match dimension " + std::to_string(dimension));
  } else if (v.contains("dense")) {
    spec.kind = OperatorSpec::Kind::kDense;
    const njson& rows = v["dense"];
    if (!rows.is_array() || rows.size() != dimension)
      fail(origin, path + ".dense",
           "expected " + std::to_string(dimension) + " rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<double> row = get_number_array(
          rows[r], origin, path + ".dense[" + std::to_string(r) + "]");
      if (row.size() != dimension)
        fail(origin, path + ".dense[" + std::to_string(r) + "]",
             "row length " + std::to_string(row.size()) +
                 " does not match dimension " + std::to_string(dimension));
      spec.dense.insert(spec.dense.end(), row.begin(), row.end());
    }
  } else {
    spec.kind = OperatorSpec::Kind::kRandomDiagonal;
    const njson& r = v["random_diagonal"];
    if (!r.is_object()) fail(origin, path + ".random_diagonal", "expected an object");
    check_keys(r, {"low", "high"}, origin, path + ".random_diagonal");
    if (!r.contains("low") || !r.contains("high"))
      fail(origin, path + ".random_diagonal", "needs both \"low\" and \"high\"");
    spec.random_low = get_number(r["low"], origin, path + ".random_diagonal.low");
    spec.random_high =
        get_number(r["high"], origin, path + ".random_diagonal.high");
    if (spec.random_low > spec.random_high)
      fail(origin, path + ".random_diagonal", "low exceeds high");
  }
  return spec;
}

StateSpec parse_state(const njson& v, std::size_t dimension,
                      const std::string& origin) {
  if (!v.is_object()) fail(origin, "state", "expected an object");
  check_keys(v, {"coords"}, origin, "state");
  if (!v.contains("coords"))
    fail(origin, "state", "missing required key \"coords\"");
  StateSpec spec;
  const njson& coords = v["coords"];
  if (coords.is_string()) {
    if (coords.get<std::string>() != "random")
      fail(origin, "state.coords", "string form must be \"random\"");
    spec.random = true;
  } else {
    spec.coords = get_number_array(coords, origin, "state.coords");
    if (spec.coords.size() != dimension)
      fail(origin, "state.coords",
           "length " + std::to_string(spec.coords.size()) +
               " does not match dimension " + std::to_string(dimension));
  }
  return spec;
}

OptimizeSpec parse_optimize(const njson& v, const std::string& origin) {
  if (!v.is_object()) fail(origin, "optimize", "expected an object");
  check_keys(v,
             {"mode", "bounds", "restarts", "max_iterations", "initial_step",
              "step_shrink", "convergence_tol", "fd_step_base", "delta_floor",
              "falsify_tol", "record_trace"},
             origin, "optimize");
  OptimizeSpec spec;
  if (v.contains("mode")) {
    if (!v["mode"].is_string()) fail(origin, "optimize.mode", "expected a string");
    spec.mode = v["mode"].get<std::string>();
    if (spec.mode != "state" && spec.mode != "joint")
      fail(origin, "optimize.mode", "must be \"state\" or \"joint\"");
  }
  if (v.contains("bounds")) {
    std::vector<double> b = get_number_array(v["bounds"], origin, "optimize.bounds");
    if (b.size() != 2 || !(b[0] < b[1]))
      fail(origin, "optimize.bounds", "expected [low, high] with low < high");
    spec.bounds = {b[0], b[1]};
  }
  auto positive = [&](const char* key, double& slot) {
    if (!v.contains(key)) return;
    const double d = get_number(v[key], origin, std::string("optimize.") + key);
    if (d <= 0.0) fail(origin, std::string("optimize.") + key, "must be > 0");
    slot = d;
  };
  if (v.contains("restarts")) {
    const njson& r = v["restarts"];
    if (!r.is_number_unsigned() || r.get<std::uint64_t>() == 0)
      fail(origin, "optimize.restarts", "expected a positive integer");
    spec.config.restarts = r.get<int>();
  }
  if (v.contains("max_iterations")) {
    const njson& m = v["max_iterations"];
    if (!m.is_number_unsigned() || m.get<std::uint64_t>() == 0)
      fail(origin, "optimize.max_iterations", "expected a positive integer");
    spec.config.max_iterations = m.get<int>();
  }
  positive("initial_step", spec.config.initial_step);
  positive("step_shrink", spec.config.step_shrink);
  positive("convergence_tol", spec.config.convergence_tol);
  positive("fd_step_base", spec.config.fd_step_base);
  positive("delta_floor", spec.config.delta_floor);
  positive("falsify_tol", spec.config.falsify_tol);
  if (v.contains("record_trace")) {
    if (!v["record_trace"].is_boolean())
      fail(origin, "optimize.record_trace", "expected a boolean");
    spec.config.record_trace = v["record_trace"].get<bool>();
  }
  if (spec.config.step_shrink >= 1.0)
    fail(origin, "optimize.step_shrink", "must be < 1");
  return spec;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

InstanceFile InstanceFile::parse_string(const std::string& text,
                                        const std::string& origin) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const njson::parse_error& e) {
    fail(origin + ":" + locate(text, e.byte), "", e.what());
  }
  if (!root.is_object()) fail(origin, "", "top level must be a JSON object");
  check_keys(root, {"space", "operators", "state", "tolerances", "seed",
                    "optimize"},
             origin, "");
  if (!root.contains("space"))
    fail(origin, "", "missing required key \"space\"");

  InstanceFile file;
  file.space = parse_space(root["space"], origin);

  if (root.contains("operators")) {
    const njson& ops = root["operators"];
    if (!ops.is_array()) fail(origin, "operators", "expected an array");
    if (ops.size() != 2 && ops.size() != 3)
      fail(origin, "operators",
           "expected 2 (classical) or 3 operator specs, got " +
               std::to_string(ops.size()));
    for (std::size_t i = 0; i < ops.size(); ++i)
      file.operators.push_back(
          parse_operator(ops[i], file.space.dimension, origin,
                         "operators[" + std::to_string(i) + "]"));
  }

  if (root.contains("state"))
    file.state = parse_state(root["state"], file.space.dimension, origin);

  if (root.contains("tolerances")) {
    const njson& t = root["tolerances"];
    if (!t.is_object()) fail(origin, "tolerances", "expected an object");
    check_keys(t, {"absolute", "relative"}, origin, "tolerances");
    if (t.contains("absolute")) {
      file.tolerances.absolute = get_number(t["absolute"], origin,
                                            "tolerances.absolute");
      if (file.tolerances.absolute <= 0.0)
        fail(origin, "tolerances.absolute", "must be > 0");
    }
    if (t.contains("relative")) {
      file.tolerances.relative = get_number(t["relative"], origin,
                                            "tolerances.relative");
      if (file.tolerances.relative <= 0.0)
        fail(origin, "tolerances.relative", "must be > 0");
    }
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer())
      fail(origin, "seed", "expected an integer");
    file.seed = root["seed"].get<std::int64_t>();
  }

  if (root.contains("optimize"))
    file.optimize = parse_optimize(root["optimize"], origin);

  return file;
}

InstanceFile InstanceFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

TriProductSpace InstanceFile::make_space() const {
  if (space.weights)
    return TriProductSpace::pointwise(*space.weights, space.label);
  return TriProductSpace::unit(space.dimension, space.label);
}

std::uint64_t InstanceFile::require_seed(const char* needed_for) const {
  if (!seed)
    throw ParseError(std::string("seed: required for ") + needed_for +
                     " but missing from the instance file");
  return static_cast<std::uint64_t>(*seed);
}

LinearOperator InstanceFile::make_operator(std::size_t index,
                                           const TriProductSpace& sp) const {
  if (index >= operators.size())
    throw ParseError("operators: instance file has " +
                     std::to_string(operators.size()) +
                     " operators, need at least " + std::to_string(index + 1));
  const OperatorSpec& spec = operators[index];
  switch (spec.kind) {
    case OperatorSpec::Kind::kDiagonal:
      return LinearOperator::diagonal(spec.diagonal);
    case OperatorSpec::Kind::kDense:
      return LinearOperator::dense(sp.dimension(), spec.dense);
    case OperatorSpec::Kind::kRandomDiagonal: {
      Sampler rng(derive_seed(require_seed("random_diagonal operators"),
                              kOperatorSeedOffset + index));
      std::vector<double> entries(sp.dimension());
      for (double& e : entries)
        e = rng.uniform(spec.random_low, spec.random_high);
      return LinearOperator::diagonal(std::move(entries));
    }
  }
  throw Error("unreachable operator kind");
}

StateVector InstanceFile::make_cube_state(const TriProductSpace& sp) const {
  if (!state)
    throw ParseError("state: required for this command but missing");
  if (!state->random) return sp.cube_normalize(sp.state(state->coords));

  Sampler rng(derive_seed(require_seed("a random state"), kStateSeedOffset));
  std::vector<double> coords(sp.dimension());
  constexpr int kAttemptCap = 10000;
  for (int attempt = 0; attempt < kAttemptCap; ++attempt) {
    for (double& c : coords) c = rng.signed_unit();
    const StateVector candidate = sp.state(coords);
    if (std::abs(candidate.cube_sum()) < kNullCubeEpsilon) continue;
    return sp.cube_normalize(candidate);
  }
  throw Error("state: no random draw cleared the null-cube cone");
}

std::vector<double> InstanceFile::make_euclidean_state(
    std::size_t dimension) const {
  if (!state)
    throw ParseError("state: required for this command but missing");
  std::vector<double> coords;
  if (state->random) {
    Sampler rng(derive_seed(require_seed("a random state"), kStateSeedOffset));
    coords.resize(dimension);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (double& c : coords) {
        c = rng.signed_unit();
        norm_sq += c * c;
      }
    } while (norm_sq < 1e-12);
  } else {
    coords = state->coords;
  }
  double norm_sq = 0.0;
  for (double c : coords) norm_sq += c * c;
  if (norm_sq <= 0.0)
    throw PreconditionError("state: cannot Euclidean-normalize the zero vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& c : coords) c *= inv;
  return coords;
}

std::string InstanceFile::canonical_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("space").begin_object();
  w.field("dimension", space.dimension);
  if (space.weights)
    w.number_array_field("weights", *space.weights);
  else
    w.field("weights", "unit");
  w.field("label", space.label);
  w.end_object();

  w.key("operators").begin_array();
  for (const OperatorSpec& op : operators) {
    w.begin_object();
    switch (op.kind) {
      case OperatorSpec::Kind::kDiagonal:
        w.number_array_field("diagonal", op.diagonal);
        break;
      case OperatorSpec::Kind::kDense:
        w.number_array_field("dense", op.dense);
        break;
      case OperatorSpec::Kind::kRandomDiagonal:
        w.key("random_diagonal").begin_object();
        w.field("low", op.random_low);
        w.field("high", op.random_high);
        w.end_object();
        break;
    }
    w.end_object();
  }
  w.end_array();

  w.key("state");
  if (!state) {
    w.null();
  } else if (state->random) {
    w.value("random");
  } else {
    w.begin_array();
    for (double c : state->coords) w.value(c);
    w.end_array();
  }

  w.key("tolerances").begin_object();
  w.field("absolute", tolerances.absolute);
  w.field("relative", tolerances.relative);
  w.end_object();

  w.key("seed");
  if (seed)
    w.value(static_cast<std::int64_t>(*seed));
  else
    w.null();

  w.key("optimize");
  if (!optimize) {
    w.null();
  } else {
    w.begin_object();
    w.field("mode", optimize->mode);
    if (optimize->bounds)
      w.number_array_field("bounds", *optimize->bounds);
    w.field("restarts", optimize->config.restarts);
    w.field("max_iterations", optimize->config.max_iterations);
    w.field("initial_step", optimize->config.initial_step);
    w.field("step_shrink", optimize->config.step_shrink);
    w.field("convergence_tol", optimize->config.convergence_tol);
    w.field("fd_step_base", optimize->config.fd_step_base);
    w.field("delta_floor", optimize->config.delta_floor);
    w.field("falsify_tol", optimize->config.falsify_tol);
    w.field("record_trace", optimize->config.record_trace);
    w.end_object();
  }

  w.end_object();
  return w.str();
}

std::string InstanceFile::digest() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_json())));
  return buf;
}

}  // namespace triup
