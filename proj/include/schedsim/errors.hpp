#pragma once

#include <stdexcept>
#include <string>

namespace schedsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Workload text could not be parsed; message names the line and field.
struct ParseError : Error {
  using Error::Error;
};

// Workload parsed but violates a model invariant; message names task ids.
struct ValidationError : Error {
  using Error::Error;
};

// Generator spec cannot produce the requested load with the given ranges.
struct InfeasibleSpec : Error {
  using Error::Error;
};

// A policy broke the engine contract (selected or aborted a job that is not
// eligible, or granted an empty budget).
struct PolicyContractViolation : Error {
  using Error::Error;
};

// Ready-table misuse.
struct DuplicateJob : Error {
  using Error::Error;
};
struct EmptyTable : Error {
  using Error::Error;
};
struct StaleIndex : Error {
  using Error::Error;
};

// Metrics over a run that never reached quiescence.
struct IncompleteTrace : Error {
  using Error::Error;
};

// Comparison over reports that do not cover the same workloads.
struct MismatchedSuites : Error {
  using Error::Error;
};

}  // namespace schedsim
