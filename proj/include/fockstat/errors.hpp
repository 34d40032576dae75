#pragma once

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace fockstat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (negative factorial, odd order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Truncated Fock basis too small for the requested state or operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The requested state is the zero vector (e.g. a^2 |1>).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// A series failed to settle within SeriesControl::max_terms.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> partial, int terms_summed)
      : Error(what), partial_(partial), terms_summed_(terms_summed) {}

  std::complex<double> partial() const noexcept { return partial_; }
  int terms_summed() const noexcept { return terms_summed_; }

 private:
  std::complex<double> partial_;
  int terms_summed_;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::filesystem::path path)
      : Error(what + ": " + path.string()), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fockstat
