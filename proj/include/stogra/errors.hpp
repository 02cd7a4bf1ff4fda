#pragma once

#include <stdexcept>

namespace stogra {

// Base for all toolkit errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error { public: using Error::Error; };
class MetricError : public Error { public: using Error::Error; };
class SymmetryError : public Error { public: using Error::Error; };
class PerturbationTooLargeError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class StepSizeError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class GridError : public Error { public: using Error::Error; };
class RangeError : public Error { public: using Error::Error; };
class SampleSizeError : public Error { public: using Error::Error; };
class DistributionError : public Error { public: using Error::Error; };

}  // namespace stogra
