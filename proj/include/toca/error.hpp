#pragma once

#include <stdexcept>
#include <string>

namespace toca {

/// Base class for every error raised by the pipeline.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pre-tagged input violates the surface_TAG grammar.
struct TagFormatError : Error {
  using Error::Error;
};

/// The selected tagger backend cannot be used (e.g. missing lexicon file).
struct BackendUnavailableError : Error {
  using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

/// Model or prompts file is syntactically broken or missing required fields.
struct CorruptFileError : Error {
  using Error::Error;
};

/// Model file carries a format version this reader does not understand.
struct VersionMismatchError : Error {
  using Error::Error;
};

/// An operation that needs a populated model was given an empty one.
struct EmptyModelError : Error {
  using Error::Error;
};

/// Every slot of a template became infeasible under the current model.
struct AllSlotsDroppedError : Error {
  using Error::Error;
};

/// An attempt budget ran out before the requested amount was produced.
struct BudgetExhaustedError : Error {
  using Error::Error;
};

/// The endpoint kept failing after all retries, or refused the request.
struct EndpointError : Error {
  using Error::Error;
};

/// The endpoint answered but the body is not a usable chat completion.
struct MalformedResponseError : Error {
  using Error::Error;
};

/// Invalid configuration value (bad tau, template without placeholder, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace toca
