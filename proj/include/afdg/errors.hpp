#ifndef AFDG_ERRORS_HPP
#define AFDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace afdg {

enum class errc {
  level_out_of_range,
  vertex_out_of_range,
  depth_too_shallow,
  diagram_mismatch,
  invalid_diagram,
  invalid_path,
  conditions_violated,
  basis_assumption_unverified,
  level_unavailable,
  index_out_of_range,
  length_mismatch,
  divisibility_violated,
  undefined_on_cylinder,
  unknown_generator,
  parse_error,
  usage_error,
};

const char* errc_name(errc code);

/// All library preconditions surface as this exception; violations that
/// are data (validation reports, checker verdicts) are returned as values
/// instead.
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

} // namespace afdg

#endif
