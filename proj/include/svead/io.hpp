#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "svead/core.hpp"

namespace svead {

enum class IngestionErrorKind {
  Io,
  Empty,
  Ragged,
  NonNumeric,
  NonFinite,
  NonBinaryLabel,
  BadLabelColumn,
};

/// A CSV file that could not be turned into a Dataset. `row` and `column`
/// are 1-based file line and field numbers (0 when not applicable).
class IngestionError : public std::runtime_error {
 public:
  IngestionError(IngestionErrorKind kind, std::size_t row, std::size_t column,
                 const std::string& message);

  IngestionErrorKind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  IngestionErrorKind kind_;
  std::size_t row_;
  std::size_t column_;
};

/// Which column, if any, carries the 0/1 label.
struct LabelColumn {
  enum class Where { None, First, Last, Index } where = Where::None;
  std::size_t index = 0;  // 1-based, used with Where::Index

  static LabelColumn none() { return {}; }
  static LabelColumn first() { return {Where::First, 0}; }
  static LabelColumn last() { return {Where::Last, 0}; }
  static LabelColumn at(std::size_t one_based) { return {Where::Index, one_based}; }
  /// "none", "first", "last" or a 1-based column number.
  static LabelColumn parse(std::string_view text);
};

struct CsvOptions {
  bool has_header = false;
  LabelColumn label = LabelColumn::none();
};

/// Locale-independent %g-style formatting with `significant` significant
/// digits, as used by every CSV this library writes.
std::string format_real(double value, int significant = 12);

/// Comma-separated numeric rows of uniform width. Blank lines are skipped,
/// CR before LF is tolerated, fields may carry surrounding spaces.
Dataset read_csv(std::istream& in, const CsvOptions& options,
                 std::string name = "stdin");
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

/// Header `index,score,contributions[,label]`, one row per point in dataset
/// order, scores with 12 significant digits.
void write_scores(std::ostream& out, const ScoreVector& scores,
                  const Dataset& dataset);
void write_scores(const std::filesystem::path& path, const ScoreVector& scores,
                  const Dataset& dataset);

/// Features with 17 significant digits (exact round trip), label appended as
/// the last column when present. No header.
void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);

}  // namespace svead
