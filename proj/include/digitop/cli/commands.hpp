#pragma once

#include <optional>
#include <string>

#include "digitop/cli/spec.hpp"
#include "digitop/search.hpp"

namespace digitop::cli {

/// Process exit codes. These are a stable contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,  // a check came out false, a certificate was rejected, or the suite failed
  kExitParse = 2,
  kExitDiscontinuous = 3,
  kExitFails = 10,
  kExitNoAfp = 11,
  kExitUndecided = 20,
};

struct CommandResult {
  Json certificate;
  int exit_code = kExitOk;
  /// One-line human summary (written to stderr by the tool).
  std::string summary;

  /// The certificate as written to stdout: two-space indented JSON plus a
  /// trailing newline.
  std::string text() const { return certificate.dump(2) + "\n"; }
};

inline constexpr const char* kCertificateFormat = "digitop-certificate-v1";

CommandResult cmd_decide_afpp(const Json& image_spec, const SearchBudget& budget);

/// finder: "auto", "tree", "box", "product" or "search".
CommandResult cmd_find_afp(const Json& image_spec, const Json& map, const std::string& finder);

/// what: "continuity" or "retraction". The codomain defaults to the domain.
CommandResult cmd_check(const Json& domain_spec, const std::optional<Json>& codomain_spec,
                        const Json& map, const std::string& what);

CommandResult cmd_enumerate(const Json& image_spec, const SearchBudget& budget, bool list_maps);

/// Compares NP(c_p, c_q) with c_(p+q) on left x right.
CommandResult cmd_np_equals_cu(const Json& left_spec, const Json& right_spec);
/// Compares the two groupings of X x [0,n]^k x [0,n].
CommandResult cmd_np_assoc(const Json& image_spec, int k, Coord n);

/// Re-checks every claim a certificate makes that does not require a search.
CommandResult cmd_verify_certificate(const Json& certificate);

CommandResult cmd_random_map(const Json& image_spec, std::uint64_t seed);

/// Runs `body`, turning library errors into error certificates with the
/// matching exit code.
template <typename Body>
CommandResult guarded(const std::string& command, Body&& body);

CommandResult error_result(const std::string& command, int code, const std::string& kind,
                           const std::string& message);

template <typename Body>
CommandResult guarded(const std::string& command, Body&& body) {
  try {
    return body();
  } catch (const SpecError& e) {
    return error_result(command, kExitParse, "parse", e.what());
  } catch (const InvalidArgument& e) {
    return error_result(command, kExitParse, "invalid-argument", e.what());
  } catch (const DiscontinuousMap& e) {
    return error_result(command, kExitDiscontinuous, "discontinuous-map", e.what());
  } catch (const NoApproximateFixedPoint& e) {
    return error_result(command, kExitNoAfp, "no-approximate-fixed-point", e.what());
  } catch (const BudgetExceeded& e) {
    return error_result(command, kExitUndecided, "budget-exceeded", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_result(command, kExitParse, "parse", e.what());
  }
}

}  // namespace digitop::cli
