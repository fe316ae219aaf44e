#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

// Base of every library error. Each subclass corresponds to one failure
// category surfaced by the CLI as a structured error record.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* category() const noexcept { return "error"; }
};

class input_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "input"; }
};

class precondition_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "precondition"; }
};

class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double last_residual)
      : error(what), last_residual_(last_residual) {}
  const char* category() const noexcept override { return "convergence"; }
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class evaluation_error : public error {
 public:
  evaluation_error(const std::string& what, std::size_t coordinate)
      : error(what), coordinate_(coordinate) {}
  const char* category() const noexcept override { return "evaluation"; }
  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

class composability_error : public error {
 public:
  composability_error(const std::string& what, double mismatch)
      : error(what), mismatch_(mismatch) {}
  const char* category() const noexcept override { return "composability"; }
  double mismatch() const noexcept { return mismatch_; }

 private:
  double mismatch_;
};

class orbit_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "orbit"; }
};

class degenerate_interpolation_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "degenerate-interpolation"; }
};

class internal_consistency_error : public error {
 public:
  internal_consistency_error(const std::string& what, double residual_aba, double residual_bab)
      : error(what), residual_aba_(residual_aba), residual_bab_(residual_bab) {}
  const char* category() const noexcept override { return "internal-consistency"; }
  double residual_aba() const noexcept { return residual_aba_; }
  double residual_bab() const noexcept { return residual_bab_; }

 private:
  double residual_aba_;
  double residual_bab_;
};

class parse_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "parse"; }
};

class validation_error : public error {
 public:
  using error::error;
  const char* category() const noexcept override { return "validation"; }
};

}  // namespace ginv
