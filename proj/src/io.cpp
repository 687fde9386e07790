#include "svead/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace svead {

namespace {

std::string where(std::size_t row, std::size_t column) {
  std::string s = "line " + std::to_string(row);
  if (column > 0) s += ", column " + std::to_string(column);
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

double parse_number(std::string_view field, std::size_t row, std::size_t column) {
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  const bool consumed = !digits.empty() && ptr == digits.data() + digits.size();
  if (consumed && ec == std::errc::result_out_of_range) {
    // Overflow is non-finite; underflow rounds to the nearest representable value.
    value = std::strtod(std::string(digits).c_str(), nullptr);
  } else if (!consumed || ec != std::errc()) {
    throw IngestionError(IngestionErrorKind::NonNumeric, row, column,
                         where(row, column) + ": '" + std::string(field) +
                             "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw IngestionError(IngestionErrorKind::NonFinite, row, column,
                         where(row, column) + ": non-finite value '" +
                             std::string(field) + "'");
  }
  return value;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_real(double value, int significant) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

IngestionError::IngestionError(IngestionErrorKind kind, std::size_t row,
                               std::size_t column, const std::string& message)
    : std::runtime_error(message), kind_(kind), row_(row), column_(column) {}

LabelColumn LabelColumn::parse(std::string_view text) {
  if (text == "none") return none();
  if (text == "first") return first();
  if (text == "last") return last();
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec != std::errc() || ptr != text.data() + text.size() || idx == 0) {
    throw ConfigError("label column must be none, first, last or a 1-based "
                      "column number, got '" + std::string(text) + "'");
  }
  return at(idx);
}

Dataset read_csv(std::istream& in, const CsvOptions& options, std::string name) {
  std::vector<double> features;
  std::vector<std::uint8_t> labels;
  const bool labeled = options.label.where != LabelColumn::Where::None;
  std::size_t width = 0;
  std::size_t label_pos = 0;  // 0-based field index of the label
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line);
    if (width == 0) {
      width = fields.size();
      if (labeled) {
        switch (options.label.where) {
          case LabelColumn::Where::First:
            label_pos = 0;
            break;
          case LabelColumn::Where::Last:
            label_pos = width - 1;
            break;
          default:
            label_pos = options.label.index - 1;
        }
        if (label_pos >= width) {
          throw IngestionError(IngestionErrorKind::BadLabelColumn, line_no, 0,
                               "label column " + std::to_string(label_pos + 1) +
                                   " does not exist in rows of width " +
                                   std::to_string(width));
        }
        if (width < 2) {
          throw IngestionError(IngestionErrorKind::BadLabelColumn, line_no, 0,
                               "a labeled file needs at least one feature column");
        }
      }
    } else if (fields.size() != width) {
      throw IngestionError(IngestionErrorKind::Ragged, line_no, 0,
                           where(line_no, 0) + ": expected " +
                               std::to_string(width) + " fields, found " +
                               std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      const double v = parse_number(fields[c], line_no, c + 1);
      if (labeled && c == label_pos) {
        if (v != 0.0 && v != 1.0) {
          throw IngestionError(IngestionErrorKind::NonBinaryLabel, line_no, c + 1,
                               where(line_no, c + 1) + ": label '" +
                                   std::string(fields[c]) + "' is not 0 or 1");
        }
        labels.push_back(v == 1.0 ? 1 : 0);
      } else {
        features.push_back(v);
      }
    }
    ++rows;
  }
  if (in.bad()) {
    throw IngestionError(IngestionErrorKind::Io, line_no, 0,
                         "read error in '" + name + "'");
  }
  if (rows == 0) {
    throw IngestionError(IngestionErrorKind::Empty, 0, 0,
                         "'" + name + "' contains no data rows");
  }
  const std::size_t cols = labeled ? width - 1 : width;
  std::optional<std::vector<std::uint8_t>> label_vec;
  if (labeled) label_vec = std::move(labels);
  return Dataset(std::move(features), rows, cols, std::move(label_vec),
                 std::move(name));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestionError(IngestionErrorKind::Io, 0, 0,
                         "cannot open '" + path.string() + "'");
  }
  return read_csv(in, options, path.stem().string());
}

void write_scores(std::ostream& out, const ScoreVector& scores,
                  const Dataset& dataset) {
  if (scores.scores.size() != dataset.rows() ||
      scores.contributions.size() != dataset.rows()) {
    throw ConfigError("score vector length does not match the dataset");
  }
  const bool labeled = dataset.has_labels();
  out << (labeled ? "index,score,contributions,label\n" : "index,score,contributions\n");
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    out << i << ',' << format_real(scores.scores[i], 12) << ','
        << scores.contributions[i];
    if (labeled) out << ',' << static_cast<int>(dataset.labels()[i]);
    out << '\n';
  }
}

void write_scores(const std::filesystem::path& path, const ScoreVector& scores,
                  const Dataset& dataset) {
  auto out = open_output(path);
  write_scores(out, scores, dataset);
  check_written(out, path);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (std::size_t i = 0; i < dataset.rows(); ++i) {
    auto r = dataset.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k > 0) out << ',';
      out << format_real(r[k], 17);
    }
    if (dataset.has_labels()) out << ',' << static_cast<int>(dataset.labels()[i]);
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  auto out = open_output(path);
  write_dataset(out, dataset);
  check_written(out, path);
}

}  // namespace svead
