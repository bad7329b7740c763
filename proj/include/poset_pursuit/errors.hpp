#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ContinuityViolation : public Error {
 public:
  ContinuityViolation(std::string msg, int junction)
      : Error(std::move(msg)), junction_(junction) {}
  int junction() const { return junction_; }

 private:
  int junction_;
};

class NonMonotoneTimes : public Error {
 public:
  using Error::Error;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace pursuit

namespace pursuit {

// A construction's hypotheses do not hold. `condition` names the failed one.
class ConditionFailed : public Error {
 public:
  ConditionFailed(std::string condition, const std::string& detail)
      : Error(condition + ": " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

}  // namespace pursuit
