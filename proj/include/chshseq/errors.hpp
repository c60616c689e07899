#pragma once

#include <stdexcept>
#include <string>

namespace chshseq {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class HermiticityError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue outside the +-1 bands of a dichotomic observable.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class ProjectorError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Collapse requested onto an outcome whose Born probability is (numerically) zero.
class ZeroProbabilityCollapse : public Error {
 public:
  using Error::Error;
};

/// Two independent computation routes disagreed. Always an implementation bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Scenario ingestion failure, located by a JSON-pointer-like path.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace chshseq
