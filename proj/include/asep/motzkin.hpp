#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "asep/core.hpp"
#include "asep/transfer.hpp"

namespace asep::motzkin {

/// North and South are diagonal steps. EastFilled and EastEmpty are the two
/// flat colors (filled and hollow glyph). An occupied site is encoded by North
/// or EastEmpty, an empty site by South or EastFilled; with this assignment
/// the path sum reproduces the stationary law of the generator.
enum class Step : std::uint8_t { North, EastFilled, EastEmpty, South };

using StepSequence = std::vector<Step>;

bool occupies(Step s);

/// Prefix heights h_0 = 0, ..., h_n.
std::vector<int> heights(const StepSequence& omega);

/// Non-negative prefix heights ending at 0.
bool is_motzkin(const StepSequence& omega);

/// Configuration encoded by a path.
Config config_of(const StepSequence& omega);

/// Weight of one step. h_base is the lower endpoint height for North and
/// South and the step height for East steps.
double step_weight(Step s, int h_base, const ModelParams& p);

/// Product of step weights; throws if a prefix height goes negative.
double total_weight(const StepSequence& omega, const ModelParams& p);

/// Sum of total_weight over all paths encoding eta (len sites).
double basic_weight(Config eta, int len, const ModelParams& p);

/// Z_n by transfer contraction, as mantissa * exp(log_scale). Negative
/// mantissas are possible in the shock region.
ScaledValue partition_function(int n, const ModelParams& p);

/// Number of weighted paths at q = 0, u = v = 0 counted exactly.
boost::multiprecision::cpp_int partition_count_exact(int n);

boost::multiprecision::cpp_int catalan(int m);

/// mu(eta) = B(eta) / Z_n over the full configuration space.
ConfigDist stationary_via_paths(const ModelParams& p, bool parallel = true);

/// Smallest k >= 0 with |u v q^k - 1| <= 1e-10, if any.
std::optional<int> finite_height_cap(const ModelParams& p);

struct TransferOptions {
  int h_max = -1;  // -1: ceil(n/2), or k when uv q^k = 1
  bool signed_mode = false;
  bool parallel = true;
};

/// Resolves the height cap and validates it against the path length.
int resolve_height_cap(const ModelParams& p, int h_max);

/// Exact projection of the length-n stationary law onto `interval`.
ConfigDist projected_stationary_transfer(const ModelParams& p, Interval interval, const TransferOptions& opts = {});

/// Probabilities of all 2^|I| patterns on the interval, in any real type.
/// The double overload above wraps this; extended precision is needed when
/// the quantities of interest fall below double resolution.
template <class Real>
std::vector<Real> projected_law(const ModelParams& p, Interval interval, const TransferOptions& opts);

/// Max relative residual of the three defining relations of a basic weight
/// function over all words of total length <= n.
double verify_basic_relations(const ModelParams& p, int n);

}  // namespace asep::motzkin

#include "asep/motzkin_impl.hpp"
