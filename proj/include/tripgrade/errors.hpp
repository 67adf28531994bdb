#pragma once

#include <stdexcept>
#include <string>

namespace tripgrade {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* ---- plan text / keyed form ---- */

struct ParseError : Error {
  ParseError(int line_, std::string expected_, std::string found_)
      : Error("parse error at line " + std::to_string(line_) + ": expected " + expected_ +
              ", found " + (found_.empty() ? std::string("nothing") : found_)),
        line(line_), expected(std::move(expected_)), found(std::move(found_)) {}
  int line;  // 0 when the input has no line structure (keyed form)
  std::string expected;
  std::string found;
};

/* ---- sandbox loading ---- */

struct SandboxError : Error {
  using Error::Error;
};

struct MissingFileError : SandboxError {
  explicit MissingFileError(const std::string& name)
      : SandboxError("missing sandbox file: " + name), file(name) {}
  std::string file;
};

struct SchemaError : SandboxError {
  SchemaError(std::string file_, int line_, int column_, const std::string& what_)
      : SandboxError(file_ + ":" + std::to_string(line_) + ":" + std::to_string(column_) +
                     ": " + what_),
        file(std::move(file_)), line(line_), column(column_) {}
  std::string file;
  int line;
  int column;
};

struct DanglingReferenceError : SandboxError {
  DanglingReferenceError(std::string entity_, std::string city_, const std::string& what_)
      : SandboxError(what_), entity(std::move(entity_)), city(std::move(city_)) {}
  std::string entity;
  std::string city;
};

/* ---- lookups ---- */

struct NotFoundError : Error {
  using Error::Error;
};

struct AmbiguousNameError : Error {
  using Error::Error;
};

struct NoTransitDataError : Error {
  using Error::Error;
};

/* ---- params / metrics ---- */

struct InsufficientDataError : Error {
  using Error::Error;
};

struct SingularCovarianceError : Error {
  using Error::Error;
};

struct NoMealsError : Error {
  using Error::Error;
};

struct EmptyPlanError : Error {
  using Error::Error;
};

struct DayCountMismatchError : Error {
  using Error::Error;
};

struct UnknownTravelerTypeError : Error {
  using Error::Error;
};

/* ---- embedding ---- */

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct RemoteUnavailableError : Error {
  explicit RemoteUnavailableError(const std::string& what_, int status_ = 0)
      : Error(what_), status(status_) {}
  int status;  // last HTTP status, 0 when no response at all
};

/* ---- queries / cli / datagen ---- */

struct QueryError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct QueryMismatchError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

struct InsufficientSandboxError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

struct NotApplicableError : Error {
  using Error::Error;
};

}  // namespace tripgrade
