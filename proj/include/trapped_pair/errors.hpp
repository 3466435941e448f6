#ifndef TPAIR_ERRORS_HPP
#define TPAIR_ERRORS_HPP

#include <cmath>
#include <string>
#include <utility>

namespace tpair {

enum class errc {
  ok = 0,
  domain_error,       // argument outside the function's domain
  pole_error,         // evaluation within guard distance of a pole
  no_root,            // bracket contains no sign change
  convergence_error,  // iteration/series budget exhausted before tolerance
  invalid_argument,   // malformed request (bad branch index, empty grid, ...)
  unit_error          // unit conversion not possible (missing trap scale)
};

const char* errc_name(errc c) noexcept;

struct error {
  errc code = errc::ok;
  // location of the offending pole / argument, when meaningful
  double where = std::nan("");
};

// Minimal value-or-error carrier. Solvers and evaluators return this instead
// of throwing so sweeps can skip singular grid points quietly.
template <class T>
class expected {
 public:
  expected(T v) : val_(std::move(v)), err_{errc::ok} {}
  expected(error e) : err_(e) {}
  expected(errc c, double where = std::nan("")) : err_{c, where} {}

  bool ok() const noexcept { return err_.code == errc::ok; }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const { return val_; }
  T& value() { return val_; }
  const error& err() const noexcept { return err_; }
  errc code() const noexcept { return err_.code; }

  // value or fallback, never throws
  T value_or(T alt) const { return ok() ? val_ : alt; }

 private:
  T val_{};
  error err_{};
};

}  // namespace tpair

#endif
