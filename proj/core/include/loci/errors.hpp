#pragma once

#include <stdexcept>
#include <string>

namespace loci {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is malformed, empty, or mathematically degenerate.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A mandatory column is missing from a CSV header.
class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

/// Rows were present but none survived validation.
class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

/// Operation is undefined for the given input (empty track, zero variance, ...).
class DomainError : public DataError {
 public:
  using DataError::DataError;
};

/// Temperature-influenced features requested but no point carries a temperature.
class EmptyFeatureError : public DataError {
 public:
  using DataError::DataError;
};

/// A caller-supplied parameter violates its precondition (k > n, eps <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The weather-station provider failed (network, HTTP status, bad payload).
class ProviderError : public Error {
 public:
  using Error::Error;
};

/// No station with overlapping hourly coverage was found near the query point.
class NoStationError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

}  // namespace loci
